use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_seeds::charmap::{
    binary_matroid, find_integer_charmap, idcm_orbits, lift_to_integer, matroid_universe, mod2_charmaps,
    supports_dcm, DualCharMatrix,
};
use toric_seeds::classify::{
    are_isomorphic, canonical_form, is_pl_sphere, is_seed, is_suspension, pipeline, reduce_to_seed, wedge_depth,
    PipelineConfig, PipelineReport, SeedDatabase, PICARD,
};
use toric_seeds::cyclic::cyclic_polytope_boundary;
use toric_seeds::rcurves::{degree_inequality, optimal_partition, weakly_optimal_partitions, zero_sum_collections};
use toric_seeds::{CharMatrixI128, CharMatrixI64, Error, PureComplex, VertexSet};

struct Runs {
    db: SeedDatabase,
    reports: Vec<PipelineReport>,
}

fn runs() -> &'static Runs {
    static RUNS: OnceLock<Runs> = OnceLock::new();
    RUNS.get_or_init(|| {
        let mut db = SeedDatabase::bootstrap();
        let mut reports = Vec::new();
        for n in 2..=4 {
            let r = pipeline(n, &db, &PipelineConfig::default()).unwrap();
            db.insert_stratum(n, PICARD, r.all_seeds());
            reports.push(r);
        }
        Runs { db, reports }
    })
}

fn all_seeds() -> Vec<PureComplex> {
    runs().reports.iter().flat_map(|r| r.all_seeds()).collect()
}

#[test]
fn pipeline_outputs_are_colorable_sphere_seeds() {
    let db = &runs().db;
    for k in all_seeds() {
        assert!(k.is_weak_pseudomanifold());
        assert_eq!(k.picard(), PICARD);
        assert!(is_seed(&k));
        assert!(is_pl_sphere(&k, db).unwrap());
        assert!(supports_dcm(&k, PICARD, false).is_some());
    }
}

#[test]
fn pipeline_counts() {
    let totals: Vec<usize> = runs().reports.iter().map(|r| r.total()).collect();
    assert_eq!(totals, [1, 4, 21]);
    let n4 = &runs().reports[2];
    assert_eq!((n4.line15, n4.line19), (49, 20));
    assert_eq!(n4.suspensions, vec![canonical_form(&PureComplex::cross_polytope(4))]);
    assert_eq!(runs().reports[0].seeds, vec![canonical_form(&PureComplex::polygon(6))]);
}

#[test]
fn rejected_candidates_are_not_spheres() {
    let db = &runs().db;
    let n4 = &runs().reports[2];
    assert_eq!(n4.rejected.len(), 29);
    assert!(n4.rejected.iter().all(|k| !is_pl_sphere(k, db).unwrap()));
}

#[test]
fn wedges_reduce_to_their_seed() {
    let db = &runs().db;
    let mut seeds: Vec<PureComplex> = all_seeds();
    seeds.extend([PureComplex::polygon(5), PureComplex::cross_polytope(3), cyclic_polytope_boundary(4, 7)]);
    for k in &seeds {
        assert!(db.contains(k).unwrap());
        assert_eq!(wedge_depth(k), 0);
        for v in 1..=k.m() {
            let w = k.wedge(v).unwrap();
            assert!(!is_seed(&w));
            assert_eq!(wedge_depth(&w), 1);
            let back = reduce_to_seed(&w);
            assert!(are_isomorphic(&back.compacted().0, k).is_some());
        }
    }
}

#[test]
fn suspension_preserves_seedness_and_colorability() {
    for s in [PureComplex::polygon(5), PureComplex::cross_polytope(3), cyclic_polytope_boundary(4, 7)] {
        let t = s.suspension();
        assert_eq!(is_seed(&t), is_seed(&s));
        assert_eq!(supports_dcm(&t, 4, false).is_some(), supports_dcm(&s, 3, false).is_some());
        let found = is_suspension(&t).unwrap();
        assert!(are_isomorphic(&found.base, &s).is_some());
    }
}

#[test]
fn isomorphism_is_an_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let seeds = runs().reports[2].all_seeds();
    for k in seeds.iter().take(6) {
        let relabel = |k: &PureComplex, rng: &mut ChaCha8Rng| {
            let mut perm: Vec<usize> = (1..=k.m()).collect();
            perm.shuffle(rng);
            perm.insert(0, 0);
            k.relabel(&perm, k.m())
        };
        let a = relabel(k, &mut rng);
        let b = relabel(&a, &mut rng);
        assert!(are_isomorphic(k, k).is_some());
        let phi = are_isomorphic(k, &a).unwrap();
        assert_eq!(k.relabel(&phi, k.m()), a);
        assert!(are_isomorphic(&a, k).is_some());
        assert!(are_isomorphic(&a, &b).is_some() && are_isomorphic(k, &b).is_some());
        assert_eq!(canonical_form(&b), canonical_form(k));
    }
    for (i, k) in seeds.iter().enumerate() {
        for l in &seeds[i + 1..] {
            assert!(are_isomorphic(k, l).is_none());
        }
    }
}

#[test]
fn missing_strata_are_reported() {
    let err = pipeline(4, &SeedDatabase::new(), &PipelineConfig::default()).unwrap_err();
    assert!(matches!(err, Error::MissingStratum { .. }));
}

#[test]
fn lifts_are_unimodular_in_both_widths() {
    for k in all_seeds() {
        let (mod2, lambda): (_, CharMatrixI64) = find_integer_charmap(&k).unwrap();
        assert!(lambda.is_nonsingular(&k));
        assert_eq!(lambda.reduce_mod2(), mod2);
        let wide: CharMatrixI128 = lift_to_integer(&mod2, &k).unwrap();
        for &f in k.facets() {
            assert_eq!(lambda.minor(f).map(i128::from), wide.minor(f));
        }
    }
}

#[test]
fn wedges_stay_colorable() {
    let seeds: Vec<PureComplex> = runs().reports[..2].iter().flat_map(|r| r.all_seeds()).collect();
    for k in seeds.iter().chain([&PureComplex::polygon(5), &PureComplex::cross_polytope(3)]) {
        let p = k.picard();
        let w = k.wedge(1).unwrap();
        assert_eq!(supports_dcm(&w, p, false).is_some(), supports_dcm(k, p, false).is_some());
    }
}

#[test]
fn injective_maps_need_room() {
    // m = 16 vertices cannot map injectively into the 15 nonzero vectors of GF(2)^4
    assert!(matches!(idcm_orbits(12, 4), Err(Error::NoInjectiveMap { .. })));
    let k = PureComplex::cross_polytope(3);
    assert!(supports_dcm(&k, 3, true).is_none());
    assert!(supports_dcm(&k, 3, false).is_some());
}

#[test]
fn orbit_members_give_isomorphic_universes() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for d in idcm_orbits(3, 4).unwrap() {
        let reference = canonical_form(&matroid_universe(&d));
        for _ in 0..4 {
            // permute the M rows and the columns of the representative
            let mut rows: Vec<u64> = d.rows()[..3].to_vec();
            rows.shuffle(&mut rng);
            let mut cols: Vec<usize> = (0..4).collect();
            cols.shuffle(&mut rng);
            let moved: Vec<u64> =
                rows.iter().map(|&r| cols.iter().enumerate().filter(|(i, _)| r >> i & 1 == 1).fold(0, |acc, (_, &j)| acc | 1 << j)).collect();
            let other = DualCharMatrix::standard(4, &moved).unwrap();
            assert_eq!(canonical_form(&matroid_universe(&other)), reference);
            let via_lambda = binary_matroid(&other.char_matrix()).unwrap().into_complex();
            assert_eq!(via_lambda, matroid_universe(&other));
        }
    }
}

fn assert_disjoint_zero_sums(k: &PureComplex, lambda: &CharMatrixI64) {
    let zs = zero_sum_collections(k, lambda);
    for (i, a) in zs.iter().enumerate() {
        for b in &zs[i + 1..] {
            assert!(a.set.is_disjoint(b.set));
        }
    }
    assert!(degree_inequality(k, lambda).lhs <= k.m());
}

#[test]
fn fan_giving_maps_have_disjoint_zero_sums() {
    let hex = PureComplex::polygon(6);
    assert_disjoint_zero_sums(&hex, &CharMatrixI64::from_rows(&[vec![1, 0, -1, -1, 0, 1], vec![0, 1, 1, 0, -1, -1]]));
    let cross = PureComplex::cross_polytope(4);
    let pairs = cross.minimal_nonfaces();
    let mut lambda = CharMatrixI64::new(4, 8, vec![0; 32]);
    for (i, &p) in pairs.iter().enumerate() {
        lambda.set(i + 1, p.min().unwrap(), 1);
        lambda.set(i + 1, p.max().unwrap(), -1);
    }
    assert_disjoint_zero_sums(&cross, &lambda);
}

#[test]
fn optimal_partitions_are_weakly_optimal() {
    for k in all_seeds().iter().take(12) {
        for l in mod2_charmaps(k).iter().take(8) {
            let Some(lambda) = lift_to_integer::<i64>(l, k) else { continue };
            let d = degree_inequality(k, &lambda);
            if d.tight {
                assert!(optimal_partition(k, &lambda).is_some());
            }
            if let Some(p) = optimal_partition(k, &lambda) {
                assert!(weakly_optimal_partitions(k, &lambda.reduce_mod2()).contains(&p));
                let covered = p.iter().fold(VertexSet::EMPTY, |acc, s| acc.union(*s));
                assert_eq!(covered, VertexSet::range(k.m()));
            }
        }
    }
}
