//! Exponent lattices of polynomial roots, Q-triviality of Galois pairs and the
//! supporting exact algebra: polynomials over Z, integer lattices, permutation
//! groups, rational permutation modules and small-degree Galois groups.

pub mod bench;
pub mod drivers;
pub mod error;
pub mod galois;
pub mod galoislike;
pub mod lattice;
pub mod linalg;
pub mod numeric;
pub mod numtests;
pub mod permgroup;
pub mod qmodule;
pub mod poly;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use poly::Poly;
