//! Linear algebra over GF(2).

mod incidence;
mod kernel;
mod matrix;

pub use incidence::IncidenceMatrix;
pub use kernel::{convenient_basis, kernel_basis, CombinationSpace, Constrained, KernelBasis};
pub use matrix::{independent, rank_of_words, Gf2Matrix, Gf2Vector};
