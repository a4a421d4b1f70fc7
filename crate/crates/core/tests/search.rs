use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_seeds::gf2::{convenient_basis, kernel_basis, Gf2Matrix, Gf2Vector, IncidenceMatrix, KernelBasis};
use toric_seeds::oracle::brute_force_wpm;
use toric_seeds::search::{cyclic_facet_bound, ubt_property, SearchJob};
use toric_seeds::vertex_set::k_subsets;
use toric_seeds::{PureComplex, VertexSet};

fn full(m: usize, n: usize) -> PureComplex {
    PureComplex::embedded(m, n, k_subsets(m, n)).unwrap()
}

fn random_universe(rng: &mut ChaCha8Rng, m: usize, n: usize, size: usize) -> PureComplex {
    let mut all = k_subsets(m, n);
    all.shuffle(rng);
    all.truncate(size);
    PureComplex::embedded(m, n, all).unwrap()
}

#[test]
fn kernel_dimension_of_full_universes() {
    for (m, n, dim) in [(6, 2, 10), (7, 3, 20), (8, 4, 35)] {
        let a = IncidenceMatrix::new(&k_subsets(m, n)).unwrap();
        assert_eq!(kernel_basis(&a).len(), dim, "m={m} n={n}");
    }
}

#[test]
fn basis_lies_in_the_kernel_and_spans_every_wpm() {
    for (m, n) in [(5, 2), (6, 2), (5, 3), (6, 3)] {
        let u = full(m, n);
        let a = IncidenceMatrix::new(u.facets()).unwrap();
        let raw = kernel_basis(&a);
        let kb = convenient_basis(raw.clone(), &a);
        let product = a.to_matrix().mul(&kb.matrix());
        assert!(product.is_zero());
        let raw_rank = Gf2Matrix::from_columns(u.facet_count(), &raw).rank();
        assert_eq!(kb.matrix().rank(), raw_rank);
        for k in brute_force_wpm(&u, &[]) {
            let x = a.characteristic(k.facets()).unwrap();
            assert!(kb.coordinates(&x).is_some(), "{k:?} outside the span");
        }
    }
}

#[test]
fn no_output_uses_three_columns_of_a_block() {
    for (m, n) in [(6, 2), (6, 3), (7, 3)] {
        let job = SearchJob::new(&full(m, n)).unwrap();
        let kb = job.basis();
        for k in job.run().unwrap() {
            let x = job.incidence().characteristic(k.facets()).unwrap();
            let coords = kb.coordinates(&x).unwrap();
            for block in kb.blocks() {
                assert!(block.iter().filter(|&&g| coords.get(g)).count() <= 2);
            }
        }
    }
}

/// Every vector `B X` with `X` ranging over all of GF(2)^s.
fn span(kb: &KernelBasis) -> BTreeSet<Vec<u64>> {
    let gens = kb.generators();
    assert!(gens.len() <= 16);
    (0u32..1 << gens.len())
        .map(|mask| {
            let mut v = Gf2Vector::zeros(kb.facet_count());
            for (i, g) in gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    v.xor_assign(g);
                }
            }
            v.words().to_vec()
        })
        .collect()
}

#[test]
fn constrained_space_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let size = rng.gen_range(8..=15);
        let u = random_universe(&mut rng, 6, 2, size);
        let a = IncidenceMatrix::new(u.facets()).unwrap();
        let kb = convenient_basis(kernel_basis(&a), &a);
        let facets = u.facets();
        let required: Vec<VertexSet> = facets.choose_multiple(&mut rng, 2).copied().collect();
        let forbidden: Vec<VertexSet> =
            facets.iter().copied().filter(|f| !required.contains(f)).take(2).collect();
        let wanted = |v: &Vec<u64>| {
            let x = Gf2Vector::from_words(facets.len(), v.clone());
            required.iter().all(|&f| x.get(a.facet_index(f).unwrap()))
                && forbidden.iter().all(|&f| !x.get(a.facet_index(f).unwrap()))
        };
        let expected: BTreeSet<Vec<u64>> = span(&kb).into_iter().filter(wanted).collect();
        match kb.apply_link_constraints(&a, &required, &forbidden).unwrap().feasible() {
            None => assert!(expected.is_empty()),
            Some(c) => {
                let offset = c.offset();
                let free = c.pinned_ones() + c.pinned_zeros();
                let gens = &c.generators()[free..];
                let got: BTreeSet<Vec<u64>> = (0u32..1 << gens.len())
                    .map(|mask| {
                        let mut v = offset.clone();
                        for (i, g) in gens.iter().enumerate() {
                            if mask >> i & 1 == 1 {
                                v.xor_assign(g);
                            }
                        }
                        v.words().to_vec()
                    })
                    .collect();
                assert_eq!(got, expected);
            }
        }
    }
}

#[test]
fn vertex_link_pinning_is_complete() {
    let u = full(6, 3);
    let all = SearchJob::new(&u).unwrap().run().unwrap();
    let links: BTreeSet<PureComplex> = all.iter().map(|k| k.vertex_link(1).unwrap_or_else(|_| PureComplex::embedded(6, 2, []).unwrap())).collect();
    for link in links.iter().filter(|l| !l.is_empty()) {
        let expected: Vec<PureComplex> =
            all.iter().filter(|k| k.vertex_link(1).is_ok_and(|l| &l == link)).cloned().collect();
        let job = SearchJob::new(&u).unwrap().with_vertex_link(1, link).unwrap();
        let got = job.map(|j| j.run().unwrap()).unwrap_or_default();
        assert_eq!(got, expected, "link {link:?}");
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let u = full(7, 3);
    let max = std::thread::available_parallelism().map_or(4, |n| n.get());
    let reference = SearchJob::new(&u).unwrap().with_threads(1).run().unwrap();
    for t in [2, max] {
        assert_eq!(SearchJob::new(&u).unwrap().with_threads(t).run().unwrap(), reference);
    }
}

#[test]
fn ubt_filter_bounds_the_facet_count() {
    for n in 2..=3 {
        let u = full(n + 4, n);
        let found = SearchJob::new(&u).unwrap().with_property(ubt_property(n)).run().unwrap();
        assert!(!found.is_empty());
        assert!(found.iter().all(|k| k.facet_count() as u64 <= cyclic_facet_bound(n)));
    }
}
