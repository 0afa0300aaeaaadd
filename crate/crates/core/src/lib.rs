//! Exact zeta functions, class-number valuations and p-ranks along abelian
//! p-adic towers of function fields built from Artin–Schreier–Witt data.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod iwasawa;
pub mod lfunction;
pub mod tower;
pub mod tadic;
pub mod witt;
pub mod zeta;

pub use error::{Error, Result};
