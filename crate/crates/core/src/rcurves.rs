//! Primitive collections, the degree inequality and optimal partitions.

use crate::charmap::{CharMatrixZ, CharMatrixZ2};
use crate::complex::PureComplex;
use crate::scalar::IntScalar;
use crate::vertex_set::VertexSet;

/// A minimal non-face together with the images of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveCollection<T> {
    pub set: VertexSet,
    pub images: Vec<Vec<T>>,
}

impl<T> PrimitiveCollection<T> {
    pub fn cardinality(&self) -> usize {
        self.set.len()
    }
}

/// A partition of the vertex set into minimal non-faces, parts ascending.
pub type Partition = Vec<VertexSet>;

/// Minimal non-faces whose images under `lambda` sum to zero.
pub fn zero_sum_collections<T: IntScalar>(k: &PureComplex, lambda: &CharMatrixZ<T>) -> Vec<PrimitiveCollection<T>> {
    k.minimal_nonfaces()
        .into_iter()
        .filter(|&s| lambda.column_sum(s).is_some_and(|sum| sum.iter().all(|x| x.is_zero())))
        .map(|s| PrimitiveCollection { set: s, images: s.iter().map(|v| lambda.column(v)).collect() })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeInequality {
    /// Total cardinality of the zero-sum collections.
    pub lhs: usize,
    /// The number of vertices.
    pub rhs: usize,
    /// The zero-sum collections partition the vertex set.
    pub tight: bool,
}

pub fn degree_inequality<T: IntScalar>(k: &PureComplex, lambda: &CharMatrixZ<T>) -> DegreeInequality {
    let collections = zero_sum_collections(k, lambda);
    let lhs = collections.iter().map(|c| c.cardinality()).sum();
    let covered = collections.iter().fold(VertexSet::EMPTY, |acc, c| acc.union(c.set));
    let rhs = k.m();
    DegreeInequality { lhs, rhs, tight: lhs == rhs && covered == VertexSet::range(rhs) }
}

/// All partitions of `1..=m` into pairwise disjoint minimal non-faces.
pub fn mnf_vertex_partitions(k: &PureComplex) -> Vec<Partition> {
    partitions_from(k.m(), &k.minimal_nonfaces())
}

pub(crate) fn partitions_from(m: usize, mnfs: &[VertexSet]) -> Vec<Partition> {
    // candidates indexed by their smallest vertex
    let mut by_min: Vec<Vec<VertexSet>> = vec![Vec::new(); m + 1];
    for &s in mnfs {
        if let Some(v) = s.min() {
            by_min[v].push(s);
        }
    }
    let mut out = Vec::new();
    let mut parts = Vec::new();
    cover(VertexSet::range(m), &by_min, &mut parts, &mut out);
    out
}

fn cover(uncovered: VertexSet, by_min: &[Vec<VertexSet>], parts: &mut Vec<VertexSet>, out: &mut Vec<Partition>) {
    let Some(v) = uncovered.min() else {
        out.push(parts.clone());
        return;
    };
    for &s in &by_min[v] {
        if s.is_subset(uncovered) {
            parts.push(s);
            cover(uncovered.difference(s), by_min, parts, out);
            parts.pop();
        }
    }
}

/// A partition into minimal non-faces each of which sums to zero under `lambda`.
pub fn optimal_partition<T: IntScalar>(k: &PureComplex, lambda: &CharMatrixZ<T>) -> Option<Partition> {
    let zero = |s: VertexSet| lambda.column_sum(s).is_some_and(|sum| sum.iter().all(|x| x.is_zero()));
    mnf_vertex_partitions(k).into_iter().find(|p| p.iter().all(|&s| zero(s)))
}

/// Partitions into minimal non-faces each of which sums to zero mod 2.
pub fn weakly_optimal_partitions(k: &PureComplex, lambda: &CharMatrixZ2) -> Vec<Partition> {
    let zero = |s: VertexSet| s.iter().fold(0u64, |acc, v| acc ^ lambda.column(v)) == 0;
    mnf_vertex_partitions(k).into_iter().filter(|p| p.iter().all(|&s| zero(s))).collect()
}
