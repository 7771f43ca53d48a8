pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod subspace;

pub use matrix::Matrix;
pub use poly::Poly;
pub use scalar::{GaussRat, Rat, Scalar};
pub use subspace::{QuotientMap, Subspace};
