//! Enumeration of weak pseudo-manifolds over GF(2) and classification of
//! toric colorable seeds of Picard number four.

pub mod charmap;
pub mod classify;
pub mod complex;
pub mod cyclic;
pub mod error;
pub mod format;
pub mod gf2;
pub mod oracle;
pub mod rcurves;
pub mod scalar;
pub mod search;
pub mod vertex_set;

pub use complex::PureComplex;
pub use error::{Error, Result};
pub use scalar::IntScalar;
pub use vertex_set::VertexSet;

pub type CharMatrixI64 = charmap::CharMatrixZ<i64>;
pub type CharMatrixI128 = charmap::CharMatrixZ<i128>;
