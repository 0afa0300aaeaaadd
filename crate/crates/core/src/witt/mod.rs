//! Witt vector arithmetic.

pub mod galois_ring;
pub mod universal;
pub mod vector;

pub use galois_ring::TraceTable;
pub use universal::{set_disk_cache, MPoly, WittPolys, DEFAULT_MAX_LENGTH};
pub use vector::{
    raw_pole_orders, witt_arith, witt_frobenius_trace, witt_pole_order, witt_residue, ResidueInt, WittOp, WittRing,
    WittVec,
};
