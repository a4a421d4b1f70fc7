use std::fmt;

use crate::complex::PureComplex;
use crate::error::{Error, Result};
use crate::gf2::{rank_of_words, Gf2Matrix, Gf2Vector};
use crate::scalar::{determinant, IntScalar};
use crate::vertex_set::VertexSet;

fn reverse_low_bits(x: u64, width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        x.reverse_bits() >> (64 - width)
    }
}

/// An `m x p` matrix over GF(2), one row per vertex.
///
/// Row `v` is stored as a `p`-bit word whose most significant bit is column 1,
/// so comparing rows as integers is the lexicographic order of their entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualCharMatrix {
    p: usize,
    rows: Vec<u64>,
}

impl DualCharMatrix {
    pub fn new(p: usize, rows: Vec<u64>) -> Result<Self> {
        if p == 0 || p > 63 || rows.iter().any(|&r| r >> p != 0) {
            return Err(Error::Unsupported(format!("rows do not fit in {p} columns")));
        }
        if rank_of_words(&rows) != p {
            return Err(Error::RankDeficient);
        }
        Ok(DualCharMatrix { p, rows })
    }

    /// `[M; I_p]` from the rows of `M`.
    pub fn standard(p: usize, m_rows: &[u64]) -> Result<Self> {
        let mut rows = m_rows.to_vec();
        rows.extend(identity_rows(p));
        Self::new(p, rows)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows.len() - self.p
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Row of vertex `v` (1-based).
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v - 1]
    }

    /// Entry at vertex `v`, column `j`, both 1-based.
    pub fn get(&self, v: usize, j: usize) -> bool {
        self.rows[v - 1] >> (self.p - j) & 1 == 1
    }

    /// Rows pairwise distinct and nonzero.
    pub fn is_injective(&self) -> bool {
        let mut sorted = self.rows.clone();
        sorted.sort_unstable();
        sorted[0] != 0 && sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Last `p` rows form the identity.
    pub fn is_standard(&self) -> bool {
        self.rows[self.n()..] == identity_rows(self.p)[..]
    }

    /// The `p x m` transpose as a mod-2 matrix.
    pub fn transpose(&self) -> CharMatrixZ2 {
        let cols = self.rows.iter().map(|&r| reverse_low_bits(r, self.p)).collect();
        CharMatrixZ2 { n: self.p, cols }
    }

    /// The Gale dual: an `n x m` matrix `λ` of rank `n` with `λ D = 0`, in reduced
    /// row echelon form. For `D = [M; I_p]` this is `[I_n | M]`.
    pub fn char_matrix(&self) -> CharMatrixZ2 {
        let dt = self.transpose();
        let kernel = dt.to_gf2().kernel();
        let mut lambda = Gf2Matrix::from_rows(self.m(), &kernel);
        lambda.rref();
        let n = self.n();
        let cols = (0..self.m())
            .map(|j| (0..n).filter(|&i| lambda.get(i, j)).fold(0u64, |acc, i| acc | 1 << i))
            .collect();
        CharMatrixZ2 { n, cols }
    }

    /// Every facet of `k` has a cofacet whose rows form a basis.
    pub fn supports(&self, k: &PureComplex) -> bool {
        let all = VertexSet::range(self.m());
        k.m() == self.m()
            && k.facets().iter().all(|f| {
                let rows: Vec<u64> = all.difference(*f).iter().map(|v| self.row(v)).collect();
                rank_of_words(&rows) == self.p
            })
    }
}

pub(crate) fn identity_rows(p: usize) -> Vec<u64> {
    (1..=p).map(|j| 1u64 << (p - j)).collect()
}

impl fmt::Debug for DualCharMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DualCharMatrix[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:0width$b}", r, width = self.p)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for DualCharMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = (1..=self.p).map(|j| ((r >> (self.p - j)) & 1).to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// An `n x m` matrix over GF(2); column `v` holds the image of vertex `v` with row 1 in bit 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharMatrixZ2 {
    n: usize,
    cols: Vec<u64>,
}

impl CharMatrixZ2 {
    pub fn from_columns(n: usize, cols: Vec<u64>) -> Self {
        assert!(n <= 63 && cols.iter().all(|&c| c >> n == 0), "column does not fit in {n} rows");
        CharMatrixZ2 { n, cols }
    }

    /// Builds from 0/1 rows of equal length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        let cols = (0..m)
            .map(|j| (0..n).filter(|&i| rows[i][j] & 1 == 1).fold(0u64, |acc, i| acc | 1 << i))
            .collect();
        CharMatrixZ2 { n, cols }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    /// Image of vertex `v` (1-based).
    pub fn column(&self, v: usize) -> u64 {
        self.cols[v - 1]
    }

    /// Entry at row `i`, vertex `v`, both 1-based.
    pub fn get(&self, i: usize, v: usize) -> bool {
        self.cols[v - 1] >> (i - 1) & 1 == 1
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (1..=self.n).map(|i| (1..=self.m()).map(|v| self.get(i, v) as u8).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        rank_of_words(&self.cols)
    }

    pub fn to_gf2(&self) -> Gf2Matrix {
        let cols: Vec<Gf2Vector> = self
            .cols
            .iter()
            .map(|&c| Gf2Vector::from_indices(self.n, (0..self.n).filter(|&i| c >> i & 1 == 1)))
            .collect();
        Gf2Matrix::from_columns(self.n, &cols)
    }

    /// The columns of `sigma` are linearly independent.
    pub fn independent_on(&self, sigma: VertexSet) -> bool {
        let cols: Vec<u64> = sigma.iter().map(|v| self.cols[v - 1]).collect();
        rank_of_words(&cols) == cols.len()
    }

    /// Every facet of `k` maps to a basis of GF(2)^n.
    pub fn is_nonsingular(&self, k: &PureComplex) -> bool {
        k.n() == self.n && k.m() <= self.m() && k.facets().iter().all(|&f| self.independent_on(f))
    }
}

impl fmt::Debug for CharMatrixZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharMatrixZ2{:?}", self.rows())
    }
}

impl fmt::Display for CharMatrixZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// An `n x m` integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharMatrixZ<T> {
    n: usize,
    m: usize,
    data: Vec<T>,
}

impl<T: IntScalar> CharMatrixZ<T> {
    pub fn new(n: usize, m: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), n * m);
        CharMatrixZ { n, m, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        CharMatrixZ { n, m, data: rows.concat() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Entry at row `i`, vertex `v`, both 1-based.
    pub fn get(&self, i: usize, v: usize) -> T {
        self.data[(i - 1) * self.m + v - 1]
    }

    pub fn set(&mut self, i: usize, v: usize, x: T) {
        self.data[(i - 1) * self.m + v - 1] = x;
    }

    /// Image of vertex `v`.
    pub fn column(&self, v: usize) -> Vec<T> {
        (1..=self.n).map(|i| self.get(i, v)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.m.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn reduce_mod2(&self) -> CharMatrixZ2 {
        let two = T::one() + T::one();
        let cols = (1..=self.m)
            .map(|v| (1..=self.n).filter(|&i| !(self.get(i, v) % two).is_zero()).fold(0u64, |acc, i| acc | 1 << (i - 1)))
            .collect();
        CharMatrixZ2 { n: self.n, cols }
    }

    /// Determinant of the columns of an `n`-element vertex set, `None` on overflow.
    pub fn minor(&self, sigma: VertexSet) -> Option<T> {
        assert_eq!(sigma.len(), self.n);
        let vs: Vec<usize> = sigma.iter().collect();
        let mut a = Vec::with_capacity(self.n * self.n);
        for i in 1..=self.n {
            for &v in &vs {
                a.push(self.get(i, v));
            }
        }
        determinant(a, self.n)
    }

    /// Every facet minor of `k` is `±1`. An overflowing minor counts as a failure.
    pub fn is_nonsingular(&self, k: &PureComplex) -> bool {
        k.n() == self.n
            && k.m() <= self.m
            && k.facets().iter().all(|&f| self.minor(f).is_some_and(|d| d.abs().is_one()))
    }

    /// Sum of the images of `sigma`, `None` on overflow.
    pub fn column_sum(&self, sigma: VertexSet) -> Option<Vec<T>> {
        (1..=self.n)
            .map(|i| sigma.iter().try_fold(T::zero(), |acc, v| acc.checked_add(&self.get(i, v))))
            .collect()
    }
}

impl<T: IntScalar> fmt::Debug for CharMatrixZ<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharMatrixZ{:?}", self.rows())
    }
}

impl<T: IntScalar> fmt::Display for CharMatrixZ<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
