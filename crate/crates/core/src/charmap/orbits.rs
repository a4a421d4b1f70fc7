use crate::charmap::matrix::DualCharMatrix;
use crate::charmap::matroid::{binary_matroid, dual_matroid};
use crate::complex::PureComplex;
use crate::error::{Error, Result};

/// Nonzero rows of width `p` that are not unit vectors, ascending.
fn free_rows(p: usize) -> Vec<u64> {
    (1..1u64 << p).filter(|r| r.count_ones() > 1).collect()
}

pub(crate) fn permutations(p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..p).collect();
    heap_permutations(p, &mut perm, &mut out);
    out.sort();
    out
}

fn heap_permutations(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(perm.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(k - 1, perm, out);
        if k % 2 == 0 {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

/// Moves bit `i` of a `p`-bit row to bit `perm[i]`.
fn permute_bits(row: u64, perm: &[usize]) -> u64 {
    perm.iter().enumerate().filter(|(i, _)| row >> i & 1 == 1).fold(0, |acc, (_, &j)| acc | 1 << j)
}

/// Lexicographically least sorted row list over all column permutations.
pub fn canonical_rows(rows: &[u64], p: usize) -> Vec<u64> {
    canonical_rows_with(rows, &permutations(p))
}

fn canonical_rows_with(rows: &[u64], perms: &[Vec<usize>]) -> Vec<u64> {
    let mut best: Option<Vec<u64>> = None;
    let mut buf = Vec::with_capacity(rows.len());
    for perm in perms {
        buf.clear();
        buf.extend(rows.iter().map(|&r| permute_bits(r, perm)));
        buf.sort_unstable();
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    best.unwrap_or_default()
}

/// Size of the orbit of an `n`-set of rows under column permutations.
pub fn set_orbit_size(rows: &[u64], p: usize) -> usize {
    let mut images: Vec<Vec<u64>> = permutations(p)
        .iter()
        .map(|perm| {
            let mut r: Vec<u64> = rows.iter().map(|&x| permute_bits(x, perm)).collect();
            r.sort_unstable();
            r
        })
        .collect();
    images.sort();
    images.dedup();
    images.len()
}

/// One representative `[M; I_p]` per orbit of injective dual characteristic
/// matrices under row permutations of `M` and column permutations. The rows of
/// `M` of each representative are the least sorted list in its orbit, and the
/// representatives are returned in ascending order.
pub fn idcm_orbits(n: usize, p: usize) -> Result<Vec<DualCharMatrix>> {
    if p == 0 || p > 6 {
        return Err(Error::Unsupported(format!("orbit enumeration for p = {p}")));
    }
    if n + p > (1 << p) - 1 {
        return Err(Error::NoInjectiveMap { m: n + p, p });
    }
    let rows = free_rows(p);
    let perms = permutations(p);
    let mut reps: Vec<Vec<u64>> = Vec::new();
    let mut pick = Vec::with_capacity(n);
    subsets(&rows, n, 0, &mut pick, &mut |set| {
        if canonical_rows_with(set, &perms) == set {
            reps.push(set.to_vec());
        }
    });
    reps.sort();
    reps.into_iter().map(|m_rows| DualCharMatrix::standard(p, &m_rows)).collect()
}

fn subsets(rows: &[u64], k: usize, start: usize, pick: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if pick.len() == k {
        f(pick);
        return;
    }
    let need = k - pick.len();
    for i in start..rows.len() {
        if rows.len() - i < need {
            break;
        }
        pick.push(rows[i]);
        subsets(rows, k, i + 1, pick, f);
        pick.pop();
    }
}

/// The facet universe of complexes supporting `d`: all `n`-sets whose
/// complementary rows of `d` form a basis.
pub fn matroid_universe(d: &DualCharMatrix) -> PureComplex {
    dual_matroid(&binary_matroid(&d.transpose()).expect("dual matrix has full rank")).into_complex()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_counts_for_small_n() {
        let counts: Vec<usize> = (2..=6).map(|n| idcm_orbits(n, 4).unwrap().len()).collect();
        assert_eq!(counts, vec![7, 16, 28, 35, 35]);
    }

    #[test]
    fn too_many_vertices() {
        assert!(matches!(idcm_orbits(12, 4), Err(Error::NoInjectiveMap { m: 16, p: 4 })));
    }

    #[test]
    fn orbits_cover_all_subsets() {
        for n in 1..=5 {
            let total: usize = idcm_orbits(n, 4)
                .unwrap()
                .iter()
                .map(|d| set_orbit_size(&d.rows()[..n], 4))
                .sum();
            let all = crate::search::binomial(11, n as u64) as usize;
            assert_eq!(total, all, "n = {n}");
        }
    }

    #[test]
    fn representatives_are_standard_and_injective() {
        for d in idcm_orbits(3, 4).unwrap() {
            assert!(d.is_standard());
            assert!(d.is_injective());
        }
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        let mut p = permutations(3);
        p.dedup();
        assert_eq!(p.len(), 6);
    }
}
