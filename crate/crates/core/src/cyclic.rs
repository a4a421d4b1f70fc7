//! Boundary complexes of cyclic polytopes via Gale's evenness condition.

use crate::complex::PureComplex;
use crate::vertex_set::{k_subsets, VertexSet};

/// Gale's evenness condition: every two vertices outside `s` are separated by an
/// even number of vertices of `s`.
pub fn satisfies_gale_evenness(s: VertexSet, m: usize) -> bool {
    let outside: Vec<usize> = VertexSet::range(m).difference(s).iter().collect();
    outside.windows(2).all(|w| (w[0] + 1..w[1]).filter(|&v| s.contains(v)).count() % 2 == 0)
}

/// Boundary of the cyclic `d`-polytope with `m` vertices; facets have `d` vertices.
pub fn cyclic_polytope_boundary(d: usize, m: usize) -> PureComplex {
    assert!(d >= 2 && m > d, "cyclic polytope needs m > d >= 2");
    let facets = k_subsets(m, d).into_iter().filter(|&s| satisfies_gale_evenness(s, m));
    PureComplex::new(m, d, facets).expect("cyclic polytope is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclic_polytopes() {
        assert_eq!(cyclic_polytope_boundary(2, 6), PureComplex::polygon(6));
        assert_eq!(cyclic_polytope_boundary(3, 4), PureComplex::simplex_boundary(4));
        let c47 = cyclic_polytope_boundary(4, 7);
        assert_eq!(c47.facet_count(), 14);
        assert!(c47.is_weak_pseudomanifold());
        // neighborly: every pair is an edge
        assert_eq!(c47.f_vector()[1], 21);
    }
}
