//! Tower descriptions, characters, ramification and genus.

pub mod characters;
pub mod parse;
pub mod spec;
pub mod swan;

pub use characters::{characters, galois_orbits, units, CharacterIndex, InteriorPartition, Orbit};
pub use parse::parse_ratfunc;
pub use spec::{tower_validate, TowerSpec, TowerSpecFile};
pub use swan::{asw_reduce_at, combined_vector, conductor_degree, genus, l_degree, swan_conductor};
