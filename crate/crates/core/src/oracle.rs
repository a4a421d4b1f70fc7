//! Brute-force references for the enumeration and isomorphism code.

use std::collections::HashMap;

use crate::complex::{ridges_of, PureComplex};
use crate::search::{AffineProperty, Weights};

/// Every nonempty facet subset of `universe` that is a weak pseudo-manifold and
/// satisfies `properties`, by walking all `2^M` subsets in Gray-code order.
pub fn brute_force_wpm(universe: &PureComplex, properties: &[AffineProperty]) -> Vec<PureComplex> {
    let facets = universe.facets();
    let big_m = facets.len();
    assert!(big_m <= 30, "brute force is limited to 30 facets");
    if big_m == 0 {
        return Vec::new();
    }
    let ridges = ridges_of(facets).expect("universe is pure");
    let index: HashMap<_, usize> = ridges.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let cols: Vec<Vec<usize>> = facets.iter().map(|f| f.ridges().map(|r| index[&r]).collect()).collect();
    let weight = |p: &AffineProperty, j: usize| match &p.weights {
        Weights::Uniform(w) => *w,
        Weights::PerFacet(ws) => ws[j],
    };

    let mut counts = vec![0u32; ridges.len()];
    let mut bad = 0usize;
    let mut sums: Vec<i64> = properties.iter().map(|p| p.constant).collect();
    let mut current: u64 = 0;
    let mut out = Vec::new();
    for step in 1u64..1 << big_m {
        let j = step.trailing_zeros() as usize;
        let adding = current >> j & 1 == 0;
        current ^= 1 << j;
        for &r in &cols[j] {
            let before = counts[r];
            let after = if adding { before + 1 } else { before - 1 };
            let ok = |c: u32| c == 0 || c == 2;
            match (ok(before), ok(after)) {
                (true, false) => bad += 1,
                (false, true) => bad -= 1,
                _ => {}
            }
            counts[r] = after;
        }
        for (s, p) in sums.iter_mut().zip(properties) {
            let w = weight(p, j);
            *s += if adding { w } else { -w };
        }
        if bad == 0 && sums.iter().all(|&s| s > 0) {
            let chosen = (0..big_m).filter(|&i| current >> i & 1 == 1).map(|i| facets[i]);
            out.push(PureComplex::embedded(universe.m(), universe.n(), chosen).expect("subset of a pure universe"));
        }
    }
    out.sort();
    out
}

/// Tries every permutation of `1..=m`.
pub fn brute_force_isomorphic(k: &PureComplex, l: &PureComplex) -> bool {
    if k.m() != l.m() || k.n() != l.n() || k.facet_count() != l.facet_count() {
        return false;
    }
    let m = k.m();
    assert!(m <= 10, "brute force isomorphism is limited to 10 vertices");
    let mut perm: Vec<usize> = (0..=m).collect();
    let mut c = vec![1usize; m + 1];
    if k.relabel(&perm, m) == *l {
        return true;
    }
    // Heap's algorithm on perm[1..=m]
    let mut i = 1;
    while i < m {
        if c[i] <= i {
            if i % 2 == 0 {
                perm.swap(1, i + 1);
            } else {
                perm.swap(c[i], i + 1);
            }
            if k.relabel(&perm, m) == *l {
                return true;
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 1;
            i += 1;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex_set::{k_subsets, VertexSet};

    #[test]
    fn four_vertex_edges() {
        let u = PureComplex::embedded(4, 2, k_subsets(4, 2)).unwrap();
        assert_eq!(brute_force_wpm(&u, &[]).len(), 7);
    }

    #[test]
    fn permutation_oracle() {
        let p = PureComplex::polygon(5);
        let q = p.relabel(&[0, 3, 1, 4, 2, 5], 5);
        assert!(brute_force_isomorphic(&p, &q));
        let path = PureComplex::from_lists(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 3]]).unwrap();
        assert!(!brute_force_isomorphic(&p, &path));
    }

    #[test]
    fn every_permutation_is_reached() {
        let edge = PureComplex::embedded(4, 2, [VertexSet::from_iter([1, 2])]).unwrap();
        for other in k_subsets(4, 2) {
            let l = PureComplex::embedded(4, 2, [other]).unwrap();
            assert!(brute_force_isomorphic(&edge, &l));
        }
    }
}
