//! Zeta functions of the layers of a tower.

pub mod adams;
pub mod level;
pub mod oracle;

pub use adams::{adams, from_reciprocal_power_sums, reciprocal_power_sums, root_of_unity_product};
pub use level::{
    class_number_valuation, constant_tower_valuation, orbit_records, p_rank, ramified_orbits, zeta_level,
    zeta_level_with, OrbitRecord, ZetaLevel, ZetaOptions,
};
pub use oracle::{oracle_zeta, point_count_oracle};
