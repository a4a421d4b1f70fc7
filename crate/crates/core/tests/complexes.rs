use proptest::prelude::*;

use toric_seeds::classify::{are_isomorphic, betti_z2};
use toric_seeds::complex::ridges_of;
use toric_seeds::gf2::IncidenceMatrix;
use toric_seeds::search::evaluate_incidence;
use toric_seeds::vertex_set::k_subsets;
use toric_seeds::{PureComplex, VertexSet};

/// A pure complex on `1..=m` with every vertex used.
fn complex() -> impl Strategy<Value = PureComplex> {
    (3usize..=7)
        .prop_flat_map(|m| (Just(m), 1usize..m))
        .prop_flat_map(|(m, n)| {
            let all = k_subsets(m, n);
            let len = all.len();
            (Just(m), Just(n), proptest::sample::subsequence(all, 1..=len))
        })
        .prop_map(|(m, n, facets)| PureComplex::embedded(m, n, facets).unwrap().compacted().0)
}

fn same(a: &PureComplex, b: &PureComplex) -> bool {
    are_isomorphic(&a.compacted().0, &b.compacted().0).is_some()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn wedge_links_are_the_original(k in complex(), pick in any::<prop::sample::Index>()) {
        let v = pick.index(k.m()) + 1;
        let w = k.wedge(v).unwrap();
        prop_assert!(same(&w.vertex_link(v).unwrap(), &k));
        prop_assert!(same(&w.vertex_link(k.m() + 1).unwrap(), &k));
    }

    #[test]
    fn wedge_minimal_nonfaces(k in complex(), pick in any::<prop::sample::Index>()) {
        let v = pick.index(k.m()) + 1;
        let fresh = k.m() + 1;
        let mut expected: Vec<VertexSet> = k
            .minimal_nonfaces()
            .into_iter()
            .map(|s| if s.contains(v) { s.with(fresh) } else { s })
            .collect();
        expected.sort();
        let mut got = k.wedge(v).unwrap().minimal_nonfaces();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn join_multiplies_facet_counts(k in complex(), l in complex()) {
        prop_assume!(k.m() + l.m() <= 14);
        let j = k.join(&l);
        prop_assert_eq!(j.facet_count(), k.facet_count() * l.facet_count());
        prop_assert_eq!(j.n(), k.n() + l.n());
    }

    #[test]
    fn direct_and_matrix_criteria_agree(k in complex()) {
        let universe = k_subsets(k.m(), k.n());
        let a = IncidenceMatrix::new(&universe).unwrap();
        let x = a.characteristic(k.facets()).unwrap();
        let counts = evaluate_incidence(&x, &a);
        let matrix = counts.aborted_at.is_none() && counts.counts.iter().all(|&c| c == 0 || c == 2);
        prop_assert_eq!(k.is_weak_pseudomanifold(), matrix);
        if matrix {
            prop_assert_eq!(2 * ridges_of(k.facets()).unwrap().len(), k.n() * k.facet_count());
        }
    }

    #[test]
    fn euler_characteristic(k in complex()) {
        let alternate = |xs: &[usize]| xs.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
        prop_assert_eq!(alternate(&betti_z2(&k)), alternate(&k.f_vector()));
    }
}

#[test]
fn join_is_associative_up_to_relabeling() {
    let a = PureComplex::polygon(4);
    let b = PureComplex::s0();
    let c = PureComplex::polygon(5);
    assert!(same(&a.join(&b).join(&c), &a.join(&b.join(&c))));
}
