use std::ops::ControlFlow;

use crate::charmap::matrix::{identity_rows, CharMatrixZ, CharMatrixZ2, DualCharMatrix};
use crate::complex::PureComplex;
use crate::gf2::rank_of_words;
use crate::scalar::IntScalar;
use crate::vertex_set::VertexSet;

/// Searches for a dual characteristic matrix of width `p` supporting `k`,
/// optionally with pairwise distinct rows.
///
/// The cofacet of the first facet is normalized to the identity; the other rows
/// are assigned in descending order of the number of cofacets they meet, and a
/// cofacet is checked for independence as soon as all its rows are set.
pub fn supports_dcm(k: &PureComplex, p: usize, injective: bool) -> Option<DualCharMatrix> {
    let m = k.m();
    if k.is_empty() || p == 0 || p > 20 || m != k.n() + p {
        return None;
    }
    if injective && m as u64 > (1u64 << p) - 1 {
        return None;
    }
    let all = VertexSet::range(m);
    let cofacets: Vec<VertexSet> = k.facets().iter().map(|f| all.difference(*f)).collect();
    let base = cofacets[0];
    let mut rows = vec![0u64; m + 1];
    for (v, r) in base.iter().zip(identity_rows(p)) {
        rows[v] = r;
    }
    let mut order: Vec<usize> = all.difference(base).iter().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(cofacets.iter().filter(|c| c.contains(v)).count()), v));
    let mut position = vec![usize::MAX; m + 1];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut checks: Vec<Vec<VertexSet>> = vec![Vec::new(); order.len()];
    for &c in &cofacets[1..] {
        if let Some(last) = c.iter().filter_map(|v| (position[v] != usize::MAX).then_some(position[v])).max() {
            checks[last].push(c);
        }
    }
    let mut search = DcmSearch { p, injective, order, checks, rows, used: Vec::new() };
    if injective {
        search.used = base.iter().map(|v| search.rows[v]).collect();
    }
    if search.assign(0) {
        DualCharMatrix::new(p, search.rows[1..].to_vec()).ok()
    } else {
        None
    }
}

struct DcmSearch {
    p: usize,
    injective: bool,
    order: Vec<usize>,
    checks: Vec<Vec<VertexSet>>,
    rows: Vec<u64>,
    used: Vec<u64>,
}

impl DcmSearch {
    fn assign(&mut self, level: usize) -> bool {
        if level == self.order.len() {
            return true;
        }
        let v = self.order[level];
        for value in 1..1u64 << self.p {
            if self.injective && self.used.contains(&value) {
                continue;
            }
            self.rows[v] = value;
            let ok = self.checks[level].iter().all(|c| {
                let rs: Vec<u64> = c.iter().map(|u| self.rows[u]).collect();
                rank_of_words(&rs) == self.p
            });
            if !ok {
                continue;
            }
            if self.injective {
                self.used.push(value);
            }
            if self.assign(level + 1) {
                return true;
            }
            if self.injective {
                self.used.pop();
            }
        }
        self.rows[v] = 0;
        false
    }
}

/// Calls `f` on every mod-2 characteristic map over `k` that is the identity on
/// the first facet. Vertices outside every facet get the zero column.
pub fn for_each_mod2_charmap<B>(k: &PureComplex, mut f: impl FnMut(&CharMatrixZ2) -> ControlFlow<B>) -> Option<B> {
    let n = k.n();
    if k.is_empty() || n == 0 || n > 20 {
        return None;
    }
    let m = k.m();
    let first = k.facets()[0];
    let mut cols = vec![0u64; m + 1];
    for (i, v) in first.iter().enumerate() {
        cols[v] = 1 << i;
    }
    let mut order: Vec<usize> = k.vertex_set().difference(first).iter().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(k.facets().iter().filter(|f| f.contains(v)).count()), v));
    let mut position = vec![usize::MAX; m + 1];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut checks: Vec<Vec<VertexSet>> = vec![Vec::new(); order.len()];
    for &facet in &k.facets()[1..] {
        if let Some(last) = facet.iter().filter_map(|v| (position[v] != usize::MAX).then_some(position[v])).max() {
            checks[last].push(facet);
        }
    }
    fn go<B>(
        level: usize,
        n: usize,
        order: &[usize],
        checks: &[Vec<VertexSet>],
        cols: &mut Vec<u64>,
        f: &mut impl FnMut(&CharMatrixZ2) -> ControlFlow<B>,
    ) -> Option<B> {
        if level == order.len() {
            let lambda = CharMatrixZ2::from_columns(n, cols[1..].to_vec());
            return match f(&lambda) {
                ControlFlow::Break(b) => Some(b),
                ControlFlow::Continue(()) => None,
            };
        }
        let v = order[level];
        for value in 1..1u64 << n {
            cols[v] = value;
            let ok = checks[level].iter().all(|facet| {
                let cs: Vec<u64> = facet.iter().map(|u| cols[u]).collect();
                rank_of_words(&cs) == n
            });
            if ok {
                if let Some(b) = go(level + 1, n, order, checks, cols, f) {
                    return Some(b);
                }
            }
        }
        cols[v] = 0;
        None
    }
    go(0, n, &order, &checks, &mut cols, &mut f)
}

/// All mod-2 characteristic maps over `k` normalized to the identity on the first facet.
pub fn mod2_charmaps(k: &PureComplex) -> Vec<CharMatrixZ2> {
    let mut out = Vec::new();
    for_each_mod2_charmap::<()>(k, |l| {
        out.push(l.clone());
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// Replaces some entries equal to 1 by −1 until every facet minor is ±1.
///
/// Columns are visited in ascending order and each entry tries −1 before +1. If
/// `lambda` is the identity on the first facet of `k`, those columns stay fixed.
pub fn lift_to_integer<T: IntScalar>(lambda: &CharMatrixZ2, k: &PureComplex) -> Option<CharMatrixZ<T>> {
    let n = lambda.n();
    let m = lambda.m();
    if k.n() != n || k.m() > m || !lambda.is_nonsingular(k) {
        return None;
    }
    let mut fixed = VertexSet::EMPTY;
    if let Some(&first) = k.facets().first() {
        if first.iter().enumerate().all(|(i, v)| lambda.column(v) == 1 << i) {
            fixed = first;
        }
    }
    let mut out = CharMatrixZ::new(n, m, vec![T::zero(); n * m]);
    let mut flippable: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
    for v in 1..=m {
        for i in 1..=n {
            if lambda.get(i, v) {
                out.set(i, v, T::one());
                if !fixed.contains(v) {
                    flippable[v].push(i);
                }
            }
        }
    }
    let mut checks: Vec<Vec<VertexSet>> = vec![Vec::new(); m + 1];
    for &facet in k.facets() {
        checks[facet.max().unwrap_or(0)].push(facet);
    }
    let lift = Lift { m, flippable, checks };
    lift.column(1, 0, &mut out).then_some(out)
}

struct Lift {
    m: usize,
    flippable: Vec<Vec<usize>>,
    checks: Vec<Vec<VertexSet>>,
}

impl Lift {
    fn column<T: IntScalar>(&self, v: usize, idx: usize, out: &mut CharMatrixZ<T>) -> bool {
        if v > self.m {
            return true;
        }
        let entries = &self.flippable[v];
        if idx == entries.len() {
            let ok = self.checks[v].iter().all(|&f| out.minor(f).is_some_and(|d| d.abs().is_one()));
            return ok && self.column(v + 1, 0, out);
        }
        let i = entries[idx];
        for sign in [-T::one(), T::one()] {
            out.set(i, v, sign);
            if self.column(v, idx + 1, out) {
                return true;
            }
        }
        false
    }
}

/// First mod-2 characteristic map over `k` that lifts, with its lift.
pub fn find_integer_charmap<T: IntScalar>(k: &PureComplex) -> Option<(CharMatrixZ2, CharMatrixZ<T>)> {
    for_each_mod2_charmap(k, |l| match lift_to_integer::<T>(l, k) {
        Some(z) => ControlFlow::Break((l.clone(), z)),
        None => ControlFlow::Continue(()),
    })
}
