use std::fmt;

/// Largest vertex label representable in a [`VertexSet`].
pub const MAX_VERTEX: usize = 63;

/// A set of vertex labels drawn from `1..=MAX_VERTEX`, packed into a machine word.
///
/// Bit `i` encodes vertex `i`; bit 0 is never set. Ordering is by raw bitmask
/// value, which is the canonical facet order used throughout the crate.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// Builds a set from raw bits. Returns `None` if bit 0 is set.
    pub fn from_bits(bits: u64) -> Option<Self> {
        (bits & 1 == 0).then_some(VertexSet(bits))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    /// The full range `1..=m`.
    pub fn range(m: usize) -> Self {
        assert!(m <= MAX_VERTEX, "vertex label {m} out of range");
        if m == 0 {
            return Self::EMPTY;
        }
        VertexSet((u64::MAX >> (64 - m)) << 1)
    }

    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_VERTEX).contains(&v), "vertex label {v} out of range");
        VertexSet(1 << v)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v <= MAX_VERTEX && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, v: usize) -> VertexSet {
        self.union(VertexSet::singleton(v))
    }

    #[inline]
    pub fn without(self, v: usize) -> VertexSet {
        self.difference(VertexSet::singleton(v))
    }

    /// Largest label in the set, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Ascending iterator over the labels.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Applies a relabeling `perm[old] = new`; `perm[0]` is ignored.
    pub fn map(self, perm: &[usize]) -> VertexSet {
        let mut out = 0u64;
        for v in self.iter() {
            out |= 1 << perm[v];
        }
        VertexSet(out)
    }

    /// Every subset of `self` of cardinality `len() - 1`, in ascending bitmask order.
    pub fn ridges(self) -> impl Iterator<Item = VertexSet> {
        let mut out: Vec<VertexSet> = self.iter().map(|v| self.without(v)).collect();
        out.sort_unstable();
        out.into_iter()
    }

    /// Iterator over all subsets of `self` (including the empty set and `self`).
    pub fn subsets(self) -> Subsets {
        Subsets {
            set: self.0,
            cur: 0,
            done: false,
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.with(v))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

pub struct Subsets {
    set: u64,
    cur: u64,
    done: bool,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out = VertexSet(self.cur);
        // standard submask increment
        self.cur = self.cur.wrapping_sub(self.set) & self.set;
        if self.cur == 0 {
            self.done = true;
        }
        Some(out)
    }
}

/// All `k`-subsets of `1..=m`, in ascending bitmask order.
pub fn k_subsets(m: usize, k: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    if k == 0 {
        out.push(VertexSet::EMPTY);
        return out;
    }
    // Gosper's hack over the shifted range
    let mut x: u64 = (1u64 << k) - 1;
    let limit: u64 = 1u64 << m;
    while x < limit {
        out.push(VertexSet(x << 1));
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_and_len() {
        assert_eq!(VertexSet::range(4).len(), 4);
        assert_eq!(VertexSet::range(4).iter().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert_eq!(VertexSet::range(63).len(), 63);
        assert!(VertexSet::range(0).is_empty());
    }

    #[test]
    fn bit_zero_rejected() {
        assert!(VertexSet::from_bits(1).is_none());
        assert!(VertexSet::from_bits(0b110).is_some());
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s: VertexSet = [1, 3, 4].into_iter().collect();
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
    }

    #[test]
    fn k_subsets_counts() {
        assert_eq!(k_subsets(6, 2).len(), 15);
        assert_eq!(k_subsets(15, 11).len(), 1365);
        let v = k_subsets(5, 3);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert!(v.iter().all(|s| s.len() == 3 && s.is_subset(VertexSet::range(5))));
        assert_eq!(k_subsets(3, 0), vec![VertexSet::EMPTY]);
    }

    #[test]
    fn display_is_ascending_labels() {
        let s: VertexSet = [4, 1, 2].into_iter().collect();
        assert_eq!(s.to_string(), "1 2 4");
    }
}
