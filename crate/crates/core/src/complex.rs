//! Pure simplicial complexes stored as canonical facet lists.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTEX};

/// A pure simplicial complex on the label range `1..=m` whose facets all have `n` vertices.
///
/// Facets are kept strictly increasing by bitmask value. A complex built with
/// [`PureComplex::new`] uses every label in `1..=m`; [`PureComplex::embedded`] lifts
/// that requirement for complexes that live inside a larger label set (links,
/// candidates drawn from a fixed facet universe).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureComplex {
    m: usize,
    n: usize,
    facets: Vec<VertexSet>,
}

impl PureComplex {
    /// Builds a complex that uses every vertex of `1..=m`.
    pub fn new(m: usize, n: usize, facets: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        let k = Self::embedded(m, n, facets)?;
        let used = k.vertex_set();
        if used != VertexSet::range(m) {
            let ghost = VertexSet::range(m).difference(used).min().unwrap_or(0);
            return Err(Error::NotAVertex(ghost));
        }
        Ok(k)
    }

    /// Builds a complex whose facets live in `1..=m` without requiring every label to be used.
    pub fn embedded(m: usize, n: usize, facets: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        if m > MAX_VERTEX {
            return Err(Error::VertexOutOfRange { vertex: m, m: MAX_VERTEX });
        }
        let range = VertexSet::range(m);
        let mut facets: Vec<VertexSet> = facets.into_iter().collect();
        for f in &facets {
            if f.len() != n {
                return Err(Error::Purity { expected: n, found: f.len() });
            }
            if !f.is_subset(range) {
                let bad = f.difference(range).min().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex: bad, m });
            }
        }
        facets.sort_unstable();
        facets.dedup();
        Ok(PureComplex { m, n, facets })
    }

    /// Convenience constructor from explicit label lists; the facet size is taken from the data.
    pub fn from_lists(m: usize, facets: &[&[usize]]) -> Result<Self> {
        let n = facets.first().map_or(0, |f| f.len());
        let sets = facets.iter().map(|f| f.iter().copied().collect::<VertexSet>());
        Self::new(m, n, sets)
    }

    /// The complex with a single empty facet: the link of a facet.
    pub fn empty_sphere_link(m: usize) -> Self {
        PureComplex { m, n: 0, facets: vec![VertexSet::EMPTY] }
    }

    /// The zero-sphere on labels `{1, 2}`.
    pub fn s0() -> Self {
        PureComplex { m: 2, n: 1, facets: vec![VertexSet::singleton(1), VertexSet::singleton(2)] }
    }

    /// Boundary of the simplex on `1..=m` (dimension `m - 2`).
    pub fn simplex_boundary(m: usize) -> Self {
        let all = VertexSet::range(m);
        let facets = all.iter().map(|v| all.without(v));
        Self::new(m, m - 1, facets).expect("simplex boundary is well formed")
    }

    /// The cycle `1-2-...-k-1` (the boundary of a `k`-gon).
    pub fn polygon(k: usize) -> Self {
        assert!(k >= 3);
        let facets = (1..=k).map(|i| VertexSet::singleton(i).with(i % k + 1));
        Self::new(k, 2, facets).expect("polygon is well formed")
    }

    /// Boundary of the `d`-dimensional cross polytope, antipodal pairs `{2i-1, 2i}`.
    pub fn cross_polytope(d: usize) -> Self {
        let mut k = Self::s0();
        for _ in 1..d {
            k = k.suspension();
        }
        k
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of vertices in every facet.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Labels that occur in some facet.
    pub fn vertex_set(&self) -> VertexSet {
        self.facets.iter().fold(VertexSet::EMPTY, |a, &f| a.union(f))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_set().len()
    }

    /// True if some label in `1..=m` is not used by any facet.
    pub fn is_embedded(&self) -> bool {
        self.vertex_set() != VertexSet::range(self.m)
    }

    /// Number of used vertices minus facet size.
    pub fn picard(&self) -> usize {
        self.vertex_count().saturating_sub(self.n)
    }

    pub fn contains_facet(&self, f: VertexSet) -> bool {
        self.facets.binary_search(&f).is_ok()
    }

    pub fn is_face(&self, sigma: VertexSet) -> bool {
        self.facets.iter().any(|f| sigma.is_subset(*f))
    }

    /// Ridges of this complex, canonically ordered.
    pub fn ridges(&self) -> Vec<VertexSet> {
        if self.n == 0 {
            return Vec::new();
        }
        ridges_of(&self.facets).expect("facets are pure")
    }

    /// `Lk(sigma) = { tau \ sigma : sigma ⊆ tau }`, labels unchanged.
    pub fn link(&self, sigma: VertexSet) -> Result<PureComplex> {
        let facets: Vec<VertexSet> = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset(**f))
            .map(|f| f.difference(sigma))
            .collect();
        if facets.is_empty() {
            return Err(Error::NotAFace(sigma));
        }
        Ok(PureComplex::embedded(self.m, self.n - sigma.len(), facets).expect("link is pure"))
    }

    pub fn vertex_link(&self, v: usize) -> Result<PureComplex> {
        if v == 0 || v > self.m || !self.vertex_set().contains(v) {
            return Err(Error::NotAVertex(v));
        }
        self.link(VertexSet::singleton(v))
    }

    /// Faces of the complex avoiding `v`, kept as a pure complex of the facets not containing `v`.
    pub fn facets_avoiding(&self, v: usize) -> impl Iterator<Item = VertexSet> + '_ {
        self.facets.iter().copied().filter(move |f| !f.contains(v))
    }

    /// `K * L` with `L` shifted by `m_K`.
    pub fn join(&self, other: &PureComplex) -> PureComplex {
        let shift = self.m;
        assert!(shift + other.m <= MAX_VERTEX, "join exceeds the label range");
        let shifted: Vec<VertexSet> = other
            .facets
            .iter()
            .map(|f| VertexSet::from_bits(f.bits() << shift).expect("shifted set"))
            .collect();
        let mut facets = Vec::with_capacity(self.facets.len() * shifted.len());
        for a in &self.facets {
            for b in &shifted {
                facets.push(a.union(*b));
            }
        }
        PureComplex::embedded(self.m + other.m, self.n + other.n, facets).expect("join is pure")
    }

    /// Join with a zero-sphere on the fresh labels `m + 1`, `m + 2`.
    pub fn suspension(&self) -> PureComplex {
        self.join(&PureComplex::s0())
    }

    /// Wedge at `v`: `v` is doubled into `v` and `m + 1`, every other label is unchanged.
    pub fn wedge(&self, v: usize) -> Result<PureComplex> {
        if v == 0 || v > self.m || !self.vertex_set().contains(v) {
            return Err(Error::NotAVertex(v));
        }
        let fresh = self.m + 1;
        if fresh > MAX_VERTEX {
            return Err(Error::VertexOutOfRange { vertex: fresh, m: MAX_VERTEX });
        }
        let mut facets = Vec::with_capacity(2 * self.facets.len());
        for &f in &self.facets {
            if f.contains(v) {
                facets.push(f.with(fresh));
            } else {
                facets.push(f.with(v));
                facets.push(f.with(fresh));
            }
        }
        PureComplex::embedded(self.m + 1, self.n + 1, facets)
    }

    /// Applies `perm[old] = new` and places the result in `1..=new_m`.
    pub fn relabel(&self, perm: &[usize], new_m: usize) -> PureComplex {
        let facets = self.facets.iter().map(|f| f.map(perm));
        PureComplex::embedded(new_m, self.n, facets).expect("relabeling keeps purity")
    }

    /// Relabels the used vertices to `1..=k` preserving their order. Returns the
    /// complex and the map `new label -> old label` (index 0 unused).
    pub fn compacted(&self) -> (PureComplex, Vec<usize>) {
        let used = self.vertex_set();
        let mut perm = vec![0usize; self.m + 1];
        let mut back = vec![0usize];
        for (i, v) in used.iter().enumerate() {
            perm[v] = i + 1;
            back.push(v);
        }
        (self.relabel(&perm, used.len()), back)
    }

    /// Every face, grouped by cardinality (`faces[k]` holds the `k`-element faces).
    pub fn faces_by_size(&self) -> Vec<Vec<VertexSet>> {
        let mut sets: Vec<HashSet<VertexSet>> = vec![HashSet::new(); self.n + 1];
        for &f in &self.facets {
            for s in f.subsets() {
                sets[s.len()].insert(s);
            }
        }
        sets.into_iter()
            .map(|s| {
                let mut v: Vec<_> = s.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// `f_vector()[i]` counts the faces of dimension `i` (cardinality `i + 1`).
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_size().into_iter().skip(1).map(|v| v.len()).collect()
    }

    /// Inclusion-minimal subsets of `1..=m` that are not faces, canonically ordered.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        let faces = FaceSet::new(self);
        let mut out = Vec::new();
        faces.for_each_face(|f| {
            let lo = f.max().unwrap_or(0) + 1;
            for v in lo..=self.m {
                let s = f.with(v);
                if faces.contains(s) {
                    continue;
                }
                if s.iter().all(|u| faces.contains(s.without(u))) {
                    out.push(s);
                }
            }
        });
        out.sort_unstable();
        out
    }

    /// Direct recount: every ridge lies in exactly two facets.
    pub fn is_weak_pseudomanifold(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut counts: HashMap<VertexSet, u32> = HashMap::new();
        for &f in &self.facets {
            for r in f.ridges() {
                *counts.entry(r).or_insert(0) += 1;
            }
        }
        counts.values().all(|&c| c == 2)
    }
}

impl fmt::Debug for PureComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PureComplex(m={}, n={}, ", self.m, self.n)?;
        f.debug_list().entries(self.facets.iter()).finish()?;
        f.write_str(")")
    }
}

/// All `(n-1)`-subsets of the given facets, deduplicated and canonically ordered.
pub fn ridges_of(facets: &[VertexSet]) -> Result<Vec<VertexSet>> {
    let Some(first) = facets.first() else {
        return Ok(Vec::new());
    };
    let n = first.len();
    let mut out = Vec::with_capacity(facets.len() * n);
    for f in facets {
        if f.len() != n {
            return Err(Error::Purity { expected: n, found: f.len() });
        }
        out.extend(f.ridges());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Membership oracle for the faces of a complex.
enum FaceSet {
    Bitmap { words: Vec<u64> },
    Hashed(HashSet<VertexSet>),
}

const BITMAP_MAX_M: usize = 22;

impl FaceSet {
    fn new(k: &PureComplex) -> Self {
        if k.m <= BITMAP_MAX_M {
            let size = 1usize << k.m;
            let mut words = vec![0u64; size.div_ceil(64)];
            for &f in &k.facets {
                for s in f.subsets() {
                    let i = (s.bits() >> 1) as usize;
                    words[i / 64] |= 1 << (i % 64);
                }
            }
            FaceSet::Bitmap { words }
        } else {
            let mut set = HashSet::new();
            for &f in &k.facets {
                set.extend(f.subsets());
            }
            FaceSet::Hashed(set)
        }
    }

    #[inline]
    fn contains(&self, s: VertexSet) -> bool {
        match self {
            FaceSet::Bitmap { words } => {
                let i = (s.bits() >> 1) as usize;
                words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
            }
            FaceSet::Hashed(set) => set.contains(&s),
        }
    }

    fn for_each_face(&self, mut f: impl FnMut(VertexSet)) {
        match self {
            FaceSet::Bitmap { words } => {
                for (wi, &w) in words.iter().enumerate() {
                    let mut w = w;
                    while w != 0 {
                        let b = w.trailing_zeros() as usize;
                        w &= w - 1;
                        let i = (wi * 64 + b) as u64;
                        f(VertexSet::from_bits(i << 1).expect("shifted index"));
                    }
                }
            }
            FaceSet::Hashed(set) => set.iter().for_each(|&s| f(s)),
        }
    }
}
