//! Stability laws and slope statistics across the levels of a tower.

pub mod fit;
pub mod slopes;

pub use fit::{fit_stability, format_poly, FitResult, Term};
pub use slopes::{slope_statistics, SlopeStats};
