use std::collections::HashMap;

use crate::complex::PureComplex;
use crate::gf2::Gf2Matrix;
use crate::vertex_set::VertexSet;

/// `color_sequences(k)[v]` is the sorted list of sizes of the minimal non-faces
/// containing `v`. Index 0 is unused.
pub fn color_sequences(k: &PureComplex) -> Vec<Vec<usize>> {
    color_sequences_from(k.m(), &k.minimal_nonfaces())
}

pub(crate) fn color_sequences_from(m: usize, mnfs: &[VertexSet]) -> Vec<Vec<usize>> {
    let mut seqs = vec![Vec::new(); m + 1];
    for s in mnfs {
        for v in s.iter() {
            seqs[v].push(s.len());
        }
    }
    for s in &mut seqs {
        s.sort_unstable();
    }
    seqs
}

/// Edges of `k` as `(v, w)` with `v < w`, ascending.
pub fn edges(k: &PureComplex) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for f in k.facets() {
        let vs: Vec<usize> = f.iter().collect();
        for (i, &v) in vs.iter().enumerate() {
            for &w in &vs[i + 1..] {
                out.push((v, w));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Lexicographically smallest edge `{v, w}` such that every minimal non-face
/// contains both or neither of `v` and `w`.
pub fn seed_witness(k: &PureComplex) -> Option<(usize, usize)> {
    let mnfs = k.minimal_nonfaces();
    edges(k).into_iter().find(|&(v, w)| mnfs.iter().all(|s| s.contains(v) == s.contains(w)))
}

pub fn is_seed(k: &PureComplex) -> bool {
    seed_witness(k).is_none()
}

/// Undoes wedges: while a witness `{v, w}` exists, replaces the complex by the
/// link of `v` with its vertices relabeled to `1..`. The input is compacted first.
pub fn reduce_to_seed(k: &PureComplex) -> PureComplex {
    let (mut cur, _) = k.compacted();
    while let Some((v, _)) = seed_witness(&cur) {
        let link = cur.vertex_link(v).expect("witness vertex lies in a facet");
        cur = link.compacted().0;
    }
    cur
}

/// Number of de-wedging steps [`reduce_to_seed`] takes.
pub fn wedge_depth(k: &PureComplex) -> usize {
    let (mut cur, _) = k.compacted();
    let mut steps = 0;
    while let Some((v, _)) = seed_witness(&cur) {
        cur = cur.vertex_link(v).expect("witness vertex lies in a facet").compacted().0;
        steps += 1;
    }
    steps
}

/// Two poles of a suspension and the base complex (compacted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suspension {
    pub poles: (usize, usize),
    pub base: PureComplex,
}

/// Finds non-adjacent `v < w` such that every facet contains exactly one of them
/// and `Lk(v) = Lk(w)`.
pub fn is_suspension(k: &PureComplex) -> Option<Suspension> {
    if k.n() == 0 || k.is_empty() {
        return None;
    }
    let vs: Vec<usize> = k.vertex_set().iter().collect();
    for (i, &v) in vs.iter().enumerate() {
        for &w in &vs[i + 1..] {
            let split = k.facets().iter().all(|f| f.contains(v) != f.contains(w));
            if !split {
                continue;
            }
            let lv = k.link(VertexSet::singleton(v)).ok()?;
            let lw = k.link(VertexSet::singleton(w)).ok()?;
            if lv.facets() == lw.facets() {
                return Some(Suspension { poles: (v, w), base: lv.compacted().0 });
            }
        }
    }
    None
}

/// Unreduced mod-2 Betti numbers `b_0, ..., b_{n-1}`.
pub fn betti_z2(k: &PureComplex) -> Vec<usize> {
    let faces = k.faces_by_size();
    let n = k.n();
    // rank[d] is the rank of the boundary map from faces of size d + 1 to size d
    let mut rank = vec![0usize; n + 2];
    for d in 1..n {
        let lower = &faces[d];
        let upper = &faces[d + 1];
        let index: HashMap<VertexSet, usize> = lower.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut a = Gf2Matrix::zeros(lower.len(), upper.len());
        for (j, s) in upper.iter().enumerate() {
            for r in s.ridges() {
                a.set(index[&r], j, true);
            }
        }
        rank[d] = a.rank();
    }
    (0..n).map(|i| faces[i + 1].len() - rank[i] - rank[i + 1]).collect()
}

/// Betti numbers of the `(n-1)`-sphere: `(1, 0, ..., 0, 1)`, or `(2)` for `n = 1`.
pub fn sphere_betti(n: usize) -> Vec<usize> {
    let mut b = vec![0; n];
    if n > 0 {
        b[0] += 1;
        b[n - 1] += 1;
    }
    b
}
