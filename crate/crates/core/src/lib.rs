//! Exact computations with rational mixed Hodge structures whose Hodge
//! filtrations are defined over ℚ(i).

pub mod error;
pub mod json;
pub mod linalg;
pub mod mhs;
pub mod loci;
pub mod radical;
pub mod sample;
pub mod triple;

pub use error::{Error, Result};
pub use linalg::{GaussRat, Matrix, Poly, Rat, Scalar, Subspace};
pub use mhs::{Filtration, Mhs};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
