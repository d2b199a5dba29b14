//! Exact linear algebra over GF(2) and the extension fields used to build
//! cyclic codes.

mod field;
mod matrix;
mod poly;
mod word;

pub use field::{cyclotomic_coset, min_poly, Gf2m, RootsOfUnity};
pub use matrix::{BinaryMatrix, SystematicForm};
pub use poly::Gf2Poly;
pub use word::BitWord;
