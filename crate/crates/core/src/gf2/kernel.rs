//! Kernel bases of ridge–facet incidence matrices and the block structure used
//! to prune the search.
//!
//! A generator set `g_1..g_s` spans `ker A`. A *block* is a set of generator
//! indices whose restrictions to the parents `P(r)` of one chosen ridge `r` are
//! in reduced column echelon form (every block column owns a pivot row nobody
//! else touches) while every other generator vanishes on `P(r)`. Any
//! combination using three or more columns of a block then puts at least three
//! facets on `r`, so at most two columns per block need to be tried.

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector, IncidenceMatrix};
use crate::vertex_set::VertexSet;

/// Raw kernel basis of `A` as generator vectors of length `M`.
pub fn kernel_basis(a: &IncidenceMatrix) -> Vec<Gf2Vector> {
    a.to_matrix().kernel()
}

/// Kernel generators plus the block partition and pinned coordinates.
///
/// Generators `0..pinned_ones` are forced into every combination,
/// `pinned_ones..pinned_ones + pinned_zeros` are forced out, and `blocks`
/// partitions the remaining indices.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    facet_count: usize,
    generators: Vec<Gf2Vector>,
    blocks: Vec<Vec<usize>>,
    chosen_ridges: Vec<usize>,
    pinned_ones: usize,
    pinned_zeros: usize,
}

/// Result of pinning coordinates of the characteristic vector.
#[derive(Clone, Debug)]
pub enum Constrained {
    Feasible(KernelBasis),
    Infeasible,
}

impl Constrained {
    pub fn feasible(self) -> Option<KernelBasis> {
        match self {
            Constrained::Feasible(kb) => Some(kb),
            Constrained::Infeasible => None,
        }
    }
}

/// Per-block candidate sets `X_1..X_l`; each candidate selects at most two
/// generators of its block.
#[derive(Clone, Debug)]
pub struct CombinationSpace {
    pub blocks: Vec<Vec<Vec<usize>>>,
    /// Generators forced into every combination.
    pub forced: Vec<usize>,
}

impl CombinationSpace {
    /// Number of combinations `prod |X_k|`, as a float to survive very large spaces.
    pub fn size(&self) -> f64 {
        self.blocks.iter().map(|b| b.len() as f64).product()
    }

    /// Exact size when it fits in a `u128`.
    pub fn size_exact(&self) -> Option<u128> {
        self.blocks
            .iter()
            .try_fold(1u128, |acc, b| acc.checked_mul(b.len() as u128))
    }
}

impl KernelBasis {
    /// Builds the block structure on a raw basis (see [`convenient_basis`]).
    pub fn new(generators: Vec<Gf2Vector>, a: &IncidenceMatrix) -> Self {
        convenient_basis(generators, a)
    }

    /// Dimension `s` of the kernel.
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn facet_count(&self) -> usize {
        self.facet_count
    }

    pub fn generators(&self) -> &[Gf2Vector] {
        &self.generators
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn chosen_ridges(&self) -> &[usize] {
        &self.chosen_ridges
    }

    pub fn pinned_ones(&self) -> usize {
        self.pinned_ones
    }

    pub fn pinned_zeros(&self) -> usize {
        self.pinned_zeros
    }

    /// The `M x s` matrix whose columns are the generators.
    pub fn matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_columns(self.facet_count, &self.generators)
    }

    /// Sum of the generators forced to one.
    pub fn offset(&self) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.facet_count);
        for g in &self.generators[..self.pinned_ones] {
            v.xor_assign(g);
        }
        v
    }

    /// `B X` for a set of selected generator indices.
    pub fn combine(&self, selected: &[usize]) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.facet_count);
        for &i in selected {
            v.xor_assign(&self.generators[i]);
        }
        v
    }

    pub fn combination_space(&self) -> CombinationSpace {
        let blocks = self
            .blocks
            .iter()
            .map(|cols| {
                let mut cands = vec![Vec::new()];
                cands.extend(cols.iter().map(|&c| vec![c]));
                for (i, &a) in cols.iter().enumerate() {
                    for &b in &cols[i + 1..] {
                        cands.push(vec![a, b]);
                    }
                }
                cands
            })
            .collect();
        CombinationSpace { blocks, forced: (0..self.pinned_ones).collect() }
    }

    /// Coordinates of `v` in the generator basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &Gf2Vector) -> Option<Gf2Vector> {
        let s = self.generators.len();
        // Solve B x = v by eliminating on the augmented rows [B | v].
        let rows: Vec<Gf2Vector> = (0..self.facet_count)
            .map(|j| {
                let mut r = Gf2Vector::zeros(s + 1);
                for (t, g) in self.generators.iter().enumerate() {
                    if g.get(j) {
                        r.set(t, true);
                    }
                }
                if v.get(j) {
                    r.set(s, true);
                }
                r
            })
            .collect();
        let mut red = Gf2Matrix::from_rows(s + 1, &rows);
        let pivots = red.rref();
        if pivots.last() == Some(&s) {
            return None;
        }
        let mut x = Gf2Vector::zeros(s);
        for (row, &p) in pivots.iter().enumerate() {
            if red.get(row, s) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Pins the characteristic vector: every facet of `required` must be
    /// selected and every facet of `forbidden` must not be.
    ///
    /// The generators are column-reduced on the constrained rows and reordered so
    /// that the first `pinned_ones` are forced to one, the next `pinned_zeros` to
    /// zero, and the rest are free and vanish on every constrained row. Blocks are
    /// rebuilt on the free generators.
    pub fn apply_link_constraints(
        &self,
        a: &IncidenceMatrix,
        required: &[VertexSet],
        forbidden: &[VertexSet],
    ) -> Result<Constrained> {
        if a.facet_count() != self.facet_count {
            return Err(Error::Unsupported("incidence matrix does not match the basis".into()));
        }
        let mut rows: Vec<(usize, bool)> = Vec::new();
        for &f in required {
            if forbidden.contains(&f) {
                return Ok(Constrained::Infeasible);
            }
            match a.facet_index(f) {
                Some(j) => rows.push((j, true)),
                None => return Ok(Constrained::Infeasible),
            }
        }
        for &f in forbidden {
            if let Some(j) = a.facet_index(f) {
                rows.push((j, false));
            }
        }
        rows.sort_unstable();
        rows.dedup();

        let mut gens = self.generators.clone();
        let restrict = |g: &Gf2Vector| {
            Gf2Vector::from_indices(rows.len(), (0..rows.len()).filter(|&t| g.get(rows[t].0)))
        };
        let mut restricted: Vec<Gf2Vector> = gens.iter().map(restrict).collect();

        // reduced column echelon form on the constrained rows
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (column, pivot row)
        for c in 0..gens.len() {
            for &(pc, pr) in &pivots {
                if restricted[c].get(pr) {
                    let (src_r, src_g) = (restricted[pc].clone(), gens[pc].clone());
                    restricted[c].xor_assign(&src_r);
                    gens[c].xor_assign(&src_g);
                }
            }
            let Some(pr) = restricted[c].first_one() else { continue };
            for &(pc, _) in &pivots {
                if restricted[pc].get(pr) {
                    let (src_r, src_g) = (restricted[c].clone(), gens[c].clone());
                    restricted[pc].xor_assign(&src_r);
                    gens[pc].xor_assign(&src_g);
                }
            }
            pivots.push((c, pr));
        }

        // pivot rows are exclusive, so x at a pivot column equals the target at its pivot row
        let target = Gf2Vector::from_indices(rows.len(), (0..rows.len()).filter(|&t| rows[t].1));
        let mut reached = Gf2Vector::zeros(rows.len());
        let mut ones = Vec::new();
        let mut zeros = Vec::new();
        for &(pc, pr) in &pivots {
            if target.get(pr) {
                reached.xor_assign(&restricted[pc]);
                ones.push(pc);
            } else {
                zeros.push(pc);
            }
        }
        if reached != target {
            return Ok(Constrained::Infeasible);
        }
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; gens.len()];
            for &(pc, _) in &pivots {
                v[pc] = true;
            }
            v
        };
        let free: Vec<usize> = (0..gens.len()).filter(|&c| !is_pivot[c]).collect();
        let order: Vec<usize> = ones.iter().chain(&zeros).chain(&free).copied().collect();
        let reordered: Vec<Gf2Vector> = order.into_iter().map(|c| gens[c].clone()).collect();

        let pinned_ones = ones.len();
        let pinned_zeros = zeros.len();
        let mut kb = KernelBasis {
            facet_count: self.facet_count,
            generators: reordered,
            blocks: Vec::new(),
            chosen_ridges: Vec::new(),
            pinned_ones,
            pinned_zeros,
        };
        kb.build_blocks(a);
        Ok(Constrained::Feasible(kb))
    }

    /// Greedy block construction over the unpinned generators.
    ///
    /// Ridges are tried by decreasing parent count (ties by index). A ridge is
    /// accepted when its parents avoid every previously chosen parent set and
    /// the forced offset, the unassigned generators reach rank at least three on
    /// its parents, and every earlier block column can be cleared there.
    fn build_blocks(&mut self, a: &IncidenceMatrix) {
        let start = self.pinned_ones + self.pinned_zeros;
        let s = self.generators.len();
        let offset = self.offset();
        let mut used = Gf2Vector::zeros(self.facet_count);
        let mut assigned = vec![false; s];
        self.blocks.clear();
        self.chosen_ridges.clear();

        let mut order: Vec<usize> = (0..a.ridge_count()).collect();
        order.sort_by_key(|&r| (std::cmp::Reverse(a.parents(r).count_ones()), r));

        for r in order {
            let parents = a.parents(r);
            let width = parents.count_ones();
            if width < 4 || width > 64 {
                // fewer than four parents cannot carry a block of width three
                continue;
            }
            if parents.and_count(&used) != 0 || parents.and_count(&offset) != 0 {
                continue;
            }
            let rows: Vec<usize> = parents.ones().collect();
            let restrict = |g: &Gf2Vector| -> u64 {
                rows.iter()
                    .enumerate()
                    .fold(0u64, |acc, (t, &j)| acc | (g.get(j) as u64) << t)
            };
            let mut res: Vec<u64> = self.generators.iter().map(restrict).collect();
            let mut ops: Vec<(usize, usize)> = Vec::new();
            let mut pivots: Vec<(usize, u32)> = Vec::new();
            for c in start..s {
                if assigned[c] {
                    continue;
                }
                for &(pc, pr) in &pivots {
                    if res[c] >> pr & 1 == 1 {
                        res[c] ^= res[pc];
                        ops.push((c, pc));
                    }
                }
                if res[c] == 0 {
                    continue;
                }
                let pr = res[c].trailing_zeros();
                for &(pc, _) in &pivots {
                    if res[pc] >> pr & 1 == 1 {
                        res[pc] ^= res[c];
                        ops.push((pc, c));
                    }
                }
                pivots.push((c, pr));
            }
            if pivots.len() < 3 {
                continue;
            }
            // earlier block columns must vanish on the new parents
            let mut ok = true;
            for block in &self.blocks {
                for &c in block {
                    for &(pc, pr) in &pivots {
                        if res[c] >> pr & 1 == 1 {
                            res[c] ^= res[pc];
                            ops.push((c, pc));
                        }
                    }
                    if res[c] != 0 {
                        ok = false;
                    }
                }
            }
            if !ok {
                continue;
            }
            for (dst, src) in ops {
                let g = self.generators[src].clone();
                self.generators[dst].xor_assign(&g);
            }
            let mut block: Vec<usize> = pivots.iter().map(|&(c, _)| c).collect();
            block.sort_unstable();
            for &c in &block {
                assigned[c] = true;
            }
            self.blocks.push(block);
            self.chosen_ridges.push(r);
            used.xor_assign(parents);
        }
        for c in start..s {
            if !assigned[c] {
                self.blocks.push(vec![c]);
            }
        }
    }
}

/// Column-transforms a raw kernel basis into block form.
pub fn convenient_basis(generators: Vec<Gf2Vector>, a: &IncidenceMatrix) -> KernelBasis {
    let mut kb = KernelBasis {
        facet_count: a.facet_count(),
        generators,
        blocks: Vec::new(),
        chosen_ridges: Vec::new(),
        pinned_ones: 0,
        pinned_zeros: 0,
    };
    kb.build_blocks(a);
    kb
}
