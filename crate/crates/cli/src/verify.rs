//! Brute-force cross-checks behind `toric-seeds verify`.

use anyhow::bail;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_seeds::classify::{are_isomorphic, betti_z2, sphere_betti};
use toric_seeds::cyclic::cyclic_polytope_boundary;
use toric_seeds::oracle::{brute_force_isomorphic, brute_force_wpm};
use toric_seeds::search::{cyclic_facet_bound, ubt_property, SearchJob};
use toric_seeds::vertex_set::k_subsets;
use toric_seeds::PureComplex;

use crate::Suite;

struct Tally {
    failures: usize,
}

impl Tally {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        println!("{} {name}: {detail}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            self.failures += 1;
        }
    }
}

pub(crate) fn run(suite: Suite) -> anyhow::Result<()> {
    let mut t = Tally { failures: 0 };
    let all = suite == Suite::All;
    if all || suite == Suite::Wpm {
        wpm(&mut t)?;
    }
    if all || suite == Suite::Iso {
        iso(&mut t);
    }
    if all || suite == Suite::Cyclic {
        cyclic(&mut t);
    }
    if all || suite == Suite::Homology {
        homology(&mut t);
    }
    if t.failures > 0 {
        bail!("{} check(s) failed", t.failures);
    }
    Ok(())
}

fn wpm(t: &mut Tally) -> anyhow::Result<()> {
    let mut universes = vec![
        PureComplex::embedded(4, 2, k_subsets(4, 2))?,
        PureComplex::embedded(5, 2, k_subsets(5, 2))?,
        PureComplex::embedded(6, 2, k_subsets(6, 2))?,
        PureComplex::embedded(5, 3, k_subsets(5, 3))?,
        PureComplex::embedded(6, 3, k_subsets(6, 3))?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let mut all = k_subsets(7, 3);
        all.shuffle(&mut rng);
        all.truncate(rng.gen_range(12..=20));
        universes.push(PureComplex::embedded(7, 3, all)?);
    }
    for u in &universes {
        let fast = SearchJob::new(u)?.run()?;
        let slow = brute_force_wpm(u, &[]);
        let name = format!("wpm m={} n={} facets={}", u.m(), u.n(), u.facet_count());
        t.check(&name, fast == slow, format!("{} vs brute force {}", fast.len(), slow.len()));
        let ubt = ubt_property(u.n());
        let fast = SearchJob::new(u)?.with_property(ubt.clone()).run()?;
        let slow = brute_force_wpm(u, &[ubt]);
        t.check(&format!("{name} ubt"), fast == slow, format!("{} vs brute force {}", fast.len(), slow.len()));
    }
    Ok(())
}

fn random_complex(rng: &mut ChaCha8Rng) -> PureComplex {
    let m = rng.gen_range(3..=7);
    let n = rng.gen_range(1..m);
    let mut all = k_subsets(m, n);
    all.shuffle(rng);
    all.truncate(rng.gen_range(1..=all.len()));
    PureComplex::embedded(m, n, all).expect("subsets of a fixed size")
}

fn iso(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut agree = 0;
    let mut isomorphic = 0;
    let pairs = 200;
    for i in 0..pairs {
        let k = random_complex(&mut rng);
        let l = if i % 2 == 0 {
            let mut perm: Vec<usize> = (1..=k.m()).collect();
            perm.shuffle(&mut rng);
            perm.insert(0, 0);
            k.relabel(&perm, k.m())
        } else {
            let mut l = random_complex(&mut rng);
            while l.m() != k.m() {
                l = random_complex(&mut rng);
            }
            l
        };
        let fast = are_isomorphic(&k, &l).is_some();
        if fast == brute_force_isomorphic(&k, &l) {
            agree += 1;
        }
        isomorphic += usize::from(fast);
    }
    t.check("isomorphism", agree == pairs, format!("{agree}/{pairs} agree, {isomorphic} isomorphic"));
}

fn cyclic(t: &mut Tally) {
    for n in 2..=11 {
        let c = cyclic_polytope_boundary(n, n + 4);
        let bound = cyclic_facet_bound(n);
        t.check(&format!("cyclic n={n}"), bound == c.facet_count() as u64, format!("bound {bound}, facets {}", c.facet_count()));
    }
}

fn homology(t: &mut Tally) {
    for k in 1..=10 {
        let b = betti_z2(&PureComplex::simplex_boundary(k + 1));
        t.check(&format!("boundary of the {k}-simplex"), b == sphere_betti(k), format!("{b:?}"));
    }
    let rp2 = projective_plane();
    let b = betti_z2(&rp2);
    t.check("projective plane", b == [1, 1, 1], format!("{b:?}"));
    let b = betti_z2(&torus());
    t.check("torus", b == [1, 2, 1], format!("{b:?}"));
}

/// Six-vertex triangulation of the real projective plane.
pub(crate) fn projective_plane() -> PureComplex {
    PureComplex::from_lists(
        6,
        &[&[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[1, 5, 6], &[1, 2, 6], &[2, 3, 5], &[2, 4, 5], &[2, 4, 6], &[3, 4, 6], &[3, 5, 6]],
    )
    .expect("valid facets")
}

/// Seven-vertex torus.
pub(crate) fn torus() -> PureComplex {
    let facets: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| [[i, i + 1, i + 3], [i, i + 2, i + 3]])
        .map(|f| f.iter().map(|v| v % 7 + 1).collect())
        .collect();
    let refs: Vec<&[usize]> = facets.iter().map(|f| f.as_slice()).collect();
    PureComplex::from_lists(7, &refs).expect("valid facets")
}
