use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("facets must all have {expected} vertices, found one with {found}")]
    Purity { expected: usize, found: usize },

    #[error("vertex {vertex} is outside the label range 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("{0:?} is not a face of the complex")]
    NotAFace(crate::VertexSet),

    #[error("{0} is not a vertex of the complex")]
    NotAVertex(usize),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("matrix does not have full row rank over GF(2)")]
    RankDeficient,

    #[error("no injective map from {m} vertices into the nonzero vectors of GF(2)^{p}")]
    NoInjectiveMap { m: usize, p: usize },

    #[error("combination space of {size:.3e} candidates exceeds the cap of 2^{cap_bits}")]
    CapExceeded { size: f64, cap_bits: u32 },

    #[error("seed database has no stratum for n = {n}, Picard number {p}")]
    MissingStratum { n: usize, p: usize },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
