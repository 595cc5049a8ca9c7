//! Hilbert coefficients of filtrations on cyclic modules `R/K` over
//! polynomial rings, minimal reductions, and depth certificates for the
//! associated graded module built from length sums.

pub mod certify;
pub mod error;
pub mod filtration;
pub mod groebner;
pub mod hilbert;
pub mod locallen;
pub mod polyring;
pub mod reduction;

pub use error::Error;
