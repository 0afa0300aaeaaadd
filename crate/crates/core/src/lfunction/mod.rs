//! L-polynomials of the characters of a tower.

pub mod kernel;
pub mod lpoly;

pub use kernel::{power_sum, ExponentData, PowerSumCache};
pub use lpoly::{
    l_polynomial, l_polynomial_with, l_value_valuation, newton_coefficients, orbit_l_value_valuation,
    unit_root_count, LOptions, LPolynomial,
};
