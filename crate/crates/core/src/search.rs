//! Enumeration of weak pseudo-manifolds inside a facet universe.
//!
//! The candidates are the combinations `B X` of a block-structured kernel basis.
//! Outer work items fix the candidates of the heaviest blocks; each item then
//! walks the remaining product depth-first with one running XOR per level.
//! Every candidate lies in `ker A`, so each ridge count is even and a weak
//! pseudo-manifold is exactly a nonzero candidate with no ridge count above two.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::complex::PureComplex;
use crate::error::{Error, Result};
use crate::gf2::{kernel_basis, CombinationSpace, Constrained, Gf2Vector, IncidenceMatrix, KernelBasis};
use crate::vertex_set::VertexSet;

/// Default refusal threshold for the combination space: 2^48 candidates.
pub const DEFAULT_CAP_BITS: u32 = 48;

/// Minimum number of outer work items before the remaining blocks go to the inner loop.
const OUTER_TARGET: usize = 256;

/// Coefficients of an affine property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weights {
    /// The same weight on every facet of the universe.
    Uniform(i64),
    /// One weight per facet, indexed like the universe.
    PerFacet(Vec<i64>),
}

/// `g(K) = constant + sum_j weights_j k_j`; a candidate passes when `g(K) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineProperty {
    pub weights: Weights,
    pub constant: i64,
}

impl AffineProperty {
    pub fn evaluate(&self, k: &Gf2Vector) -> i64 {
        self.evaluate_words(k.words())
    }

    #[inline]
    fn evaluate_words(&self, words: &[u64]) -> i64 {
        match &self.weights {
            Weights::Uniform(w) => {
                let ones: u32 = words.iter().map(|x| x.count_ones()).sum();
                self.constant + w * ones as i64
            }
            Weights::PerFacet(ws) => {
                let mut total = self.constant;
                for (wi, &x) in words.iter().enumerate() {
                    let mut x = x;
                    while x != 0 {
                        let b = x.trailing_zeros() as usize;
                        x &= x - 1;
                        total += ws[wi * 64 + b];
                    }
                }
                total
            }
        }
    }

    #[inline]
    fn accepts(&self, words: &[u64]) -> bool {
        self.evaluate_words(words) > 0
    }
}

/// Number of facets of the cyclic polytope `C^n(n + 4)`.
pub fn cyclic_facet_bound(n: usize) -> u64 {
    let c4 = |x: usize| binomial(x as u64, 4);
    c4(n + 4 - n.div_ceil(2)) + c4(n + 3 - n / 2)
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Upper bound theorem filter for Picard number four: at most `f_{n-1}(C^n(n+4))` facets.
pub fn ubt_property(n: usize) -> AffineProperty {
    assert!(n >= 1);
    AffineProperty {
        weights: Weights::Uniform(-1),
        constant: cyclic_facet_bound(n) as i64 + 1,
    }
}

/// Per-ridge counts of `A K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RidgeCounts {
    pub counts: Vec<u32>,
    /// Set when evaluation stopped because this ridge reached three.
    pub aborted_at: Option<usize>,
}

/// Accumulates `A K` column by column, stopping as soon as a ridge reaches three.
pub fn evaluate_incidence(k: &Gf2Vector, a: &IncidenceMatrix) -> RidgeCounts {
    assert_eq!(k.len(), a.facet_count());
    let mut counts = vec![0u32; a.ridge_count()];
    for j in k.ones() {
        for &r in a.column(j) {
            let c = &mut counts[r as usize];
            *c += 1;
            if *c >= 3 {
                return RidgeCounts { counts, aborted_at: Some(r as usize) };
            }
        }
    }
    RidgeCounts { counts, aborted_at: None }
}

/// Everything the engine needs for one enumeration.
#[derive(Clone, Debug)]
pub struct SearchJob {
    m: usize,
    n: usize,
    incidence: IncidenceMatrix,
    basis: KernelBasis,
    properties: Vec<AffineProperty>,
    threads: usize,
    cap_bits: u32,
}

impl SearchJob {
    /// Prepares a job over the facets of `universe` (ghost vertices allowed).
    pub fn new(universe: &PureComplex) -> Result<Self> {
        let incidence = IncidenceMatrix::new(universe.facets())?;
        let basis = KernelBasis::new(kernel_basis(&incidence), &incidence);
        Ok(SearchJob {
            m: universe.m(),
            n: universe.n(),
            incidence,
            basis,
            properties: Vec::new(),
            threads: 0,
            cap_bits: DEFAULT_CAP_BITS,
        })
    }

    pub fn with_property(mut self, p: AffineProperty) -> Self {
        if let Weights::PerFacet(w) = &p.weights {
            assert_eq!(w.len(), self.incidence.facet_count(), "one weight per facet");
        }
        self.properties.push(p);
        self
    }

    /// Worker count; `0` means the global rayon pool.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_cap_bits(mut self, bits: u32) -> Self {
        self.cap_bits = bits;
        self
    }

    /// Restricts the search to complexes containing `required` and avoiding
    /// `forbidden`. Returns `Ok(None)` when no combination can satisfy both.
    pub fn with_link_constraints(mut self, required: &[VertexSet], forbidden: &[VertexSet]) -> Result<Option<Self>> {
        match self.basis.apply_link_constraints(&self.incidence, required, forbidden)? {
            Constrained::Feasible(kb) => {
                self.basis = kb;
                Ok(Some(self))
            }
            Constrained::Infeasible => Ok(None),
        }
    }

    /// Pins the link of `vertex`: every facet `link ∪ {vertex}` is required and
    /// every other universe facet through `vertex` is forbidden.
    pub fn with_vertex_link(self, vertex: usize, link: &PureComplex) -> Result<Option<Self>> {
        let required: Vec<VertexSet> = link.facets().iter().map(|f| f.with(vertex)).collect();
        let forbidden: Vec<VertexSet> = self
            .incidence
            .facets()
            .iter()
            .copied()
            .filter(|f| f.contains(vertex) && !required.contains(f))
            .collect();
        self.with_link_constraints(&required, &forbidden)
    }

    pub fn incidence(&self) -> &IncidenceMatrix {
        &self.incidence
    }

    pub fn basis(&self) -> &KernelBasis {
        &self.basis
    }

    pub fn properties(&self) -> &[AffineProperty] {
        &self.properties
    }

    pub fn combination_space(&self) -> CombinationSpace {
        self.basis.combination_space()
    }

    /// Runs the enumeration. Output is sorted and independent of the thread count.
    pub fn run(&self) -> Result<Vec<PureComplex>> {
        self.run_with_progress(|_, _| {})
    }

    /// Like [`run`](Self::run), reporting `(completed, total)` outer work items.
    pub fn run_with_progress(&self, progress: impl Fn(usize, usize) + Sync) -> Result<Vec<PureComplex>> {
        let space = self.combination_space();
        let size = space.size();
        if size > 2f64.powi(self.cap_bits as i32) {
            return Err(Error::CapExceeded { size, cap_bits: self.cap_bits });
        }
        let plan = Plan::new(self, &space);
        if self.threads == 0 {
            Ok(plan.execute(&progress))
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.threads)
                .build()
                .map_err(|e| Error::Unsupported(e.to_string()))?;
            Ok(pool.install(|| plan.execute(&progress)))
        }
    }
}

/// Enumerates the weak pseudo-manifolds of `job`.
pub fn enumerate_wpm(job: &SearchJob) -> Result<Vec<PureComplex>> {
    job.run()
}

/// Flattened candidate vectors and parent masks for the hot loop.
struct Plan<'a> {
    job: &'a SearchJob,
    words: usize,
    offset: Vec<u64>,
    /// Outer blocks' candidates combined into work items.
    outer: Vec<Vec<u64>>,
    /// Inner blocks: candidate vectors, `words` per candidate.
    inner: Vec<Vec<u64>>,
    inner_len: Vec<usize>,
    parents: Vec<u64>,
}

impl<'a> Plan<'a> {
    fn new(job: &'a SearchJob, space: &CombinationSpace) -> Self {
        let basis = &job.basis;
        let words = basis.facet_count().div_ceil(64);
        let block_vectors: Vec<Vec<Gf2Vector>> = space
            .blocks
            .iter()
            .map(|cands| cands.iter().map(|sel| basis.combine(sel)).collect())
            .collect();

        // heaviest blocks first go to the outer layer
        let mut order: Vec<usize> = (0..block_vectors.len()).collect();
        order.sort_by_key(|&b| (std::cmp::Reverse(block_vectors[b].len()), b));
        let mut outer: Vec<Vec<u64>> = vec![vec![0u64; words]];
        let mut split = 0;
        while split < order.len() && outer.len() < OUTER_TARGET {
            let cands = &block_vectors[order[split]];
            let mut next = Vec::with_capacity(outer.len() * cands.len());
            for base in &outer {
                for c in cands {
                    next.push(base.iter().zip(c.words()).map(|(a, b)| a ^ b).collect());
                }
            }
            outer = next;
            split += 1;
        }
        let inner_blocks = &order[split..];
        let inner: Vec<Vec<u64>> = inner_blocks
            .iter()
            .map(|&b| block_vectors[b].iter().flat_map(|v| v.words().iter().copied()).collect())
            .collect();
        let inner_len = inner_blocks.iter().map(|&b| block_vectors[b].len()).collect();
        let parents = (0..job.incidence.ridge_count())
            .flat_map(|r| job.incidence.parents(r).words().to_vec())
            .collect();
        Plan {
            job,
            words,
            offset: basis.offset().words().to_vec(),
            outer,
            inner,
            inner_len,
            parents,
        }
    }

    fn execute(&self, progress: &(impl Fn(usize, usize) + Sync)) -> Vec<PureComplex> {
        let done = AtomicUsize::new(0);
        let total = self.outer.len();
        let buffers: Vec<Vec<Gf2Vector>> = self
            .outer
            .par_iter()
            .map(|item| {
                let mut found = Vec::new();
                let mut acc = vec![0u64; self.words * (self.inner.len() + 1)];
                for (a, (x, y)) in acc.iter_mut().zip(item.iter().zip(&self.offset)) {
                    *a = x ^ y;
                }
                self.walk(0, &mut acc, &mut found);
                let d = done.fetch_add(1, Ordering::Relaxed) + 1;
                progress(d, total);
                found
            })
            .collect();
        let facets = self.job.incidence.facets();
        let mut out: Vec<PureComplex> = buffers
            .into_iter()
            .flatten()
            .map(|k| {
                let fs = k.ones().map(|j| facets[j]);
                PureComplex::embedded(self.job.m, self.job.n, fs).expect("universe facets are pure")
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn walk(&self, level: usize, acc: &mut [u64], found: &mut Vec<Gf2Vector>) {
        let w = self.words;
        if level == self.inner.len() {
            let k = &acc[level * w..(level + 1) * w];
            if self.accepts(k) {
                found.push(Gf2Vector::from_words(self.job.incidence.facet_count(), k.to_vec()));
            }
            return;
        }
        let cands = &self.inner[level];
        for c in 0..self.inner_len[level] {
            let (head, tail) = acc.split_at_mut((level + 1) * w);
            let cur = &head[level * w..];
            let cand = &cands[c * w..(c + 1) * w];
            for i in 0..w {
                tail[i] = cur[i] ^ cand[i];
            }
            self.walk(level + 1, acc, found);
        }
    }

    #[inline]
    fn accepts(&self, k: &[u64]) -> bool {
        if k.iter().all(|&x| x == 0) {
            return false;
        }
        if !self.job.properties.iter().all(|p| p.accepts(k)) {
            return false;
        }
        let w = self.words;
        // counts are even on the kernel, so anything above two is at least four
        self.parents.chunks_exact(w).all(|p| {
            let c: u32 = p.iter().zip(k).map(|(a, b)| (a & b).count_ones()).sum();
            c <= 2
        })
    }
}
