use crate::charmap::matrix::CharMatrixZ2;
use crate::complex::PureComplex;
use crate::error::{Error, Result};
use crate::gf2::rank_of_words;
use crate::vertex_set::{k_subsets, VertexSet};

/// The bases of a binary matroid, kept as a pure complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryMatroid {
    complex: PureComplex,
}

impl BinaryMatroid {
    pub fn rank(&self) -> usize {
        self.complex.n()
    }

    pub fn ground_size(&self) -> usize {
        self.complex.m()
    }

    pub fn bases(&self) -> &[VertexSet] {
        self.complex.facets()
    }

    pub fn complex(&self) -> &PureComplex {
        &self.complex
    }

    pub fn into_complex(self) -> PureComplex {
        self.complex
    }

    /// Basis exchange: for bases `A`, `B` and `a ∈ A \ B` some `b ∈ B \ A`
    /// makes `A - a + b` a basis.
    pub fn satisfies_exchange(&self, a: VertexSet, b: VertexSet) -> bool {
        let k = &self.complex;
        a.difference(b).iter().all(|x| {
            b.difference(a).iter().any(|y| k.contains_facet(a.without(x).with(y)))
        })
    }
}

/// All `n`-sets of columns of `lambda` that are linearly independent.
pub fn binary_matroid(lambda: &CharMatrixZ2) -> Result<BinaryMatroid> {
    let n = lambda.n();
    if lambda.rank() != n {
        return Err(Error::RankDeficient);
    }
    let facets = k_subsets(lambda.m(), n).into_iter().filter(|&s| lambda.independent_on(s));
    let complex = PureComplex::embedded(lambda.m(), n, facets)?;
    Ok(BinaryMatroid { complex })
}

/// Complements every basis.
pub fn dual_matroid(m: &BinaryMatroid) -> BinaryMatroid {
    let ground = VertexSet::range(m.ground_size());
    let facets = m.bases().iter().map(|b| ground.difference(*b));
    let complex = PureComplex::embedded(m.ground_size(), m.ground_size() - m.rank(), facets)
        .expect("complements have equal size");
    BinaryMatroid { complex }
}

/// Rank of a set of columns.
pub fn column_rank(lambda: &CharMatrixZ2, sigma: VertexSet) -> usize {
    let cols: Vec<u64> = sigma.iter().map(|v| lambda.column(v)).collect();
    rank_of_words(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charmap::DualCharMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sets(l: &[&[usize]]) -> Vec<VertexSet> {
        l.iter().map(|f| f.iter().copied().collect()).collect()
    }

    #[test]
    fn small_matroids() {
        let all = CharMatrixZ2::from_columns(2, vec![0b01, 0b10, 0b11]);
        let m = binary_matroid(&all).unwrap();
        assert_eq!(m.bases(), sets(&[&[1, 2], &[1, 3], &[2, 3]]));
        let d = dual_matroid(&m);
        assert_eq!(d.bases(), sets(&[&[1], &[2], &[3]]));

        let repeated = CharMatrixZ2::from_columns(2, vec![0b01, 0b10, 0b01]);
        let m = binary_matroid(&repeated).unwrap();
        assert_eq!(m.bases(), sets(&[&[1, 2], &[2, 3]]));
        assert_eq!(dual_matroid(&m).bases(), sets(&[&[1], &[3]]));
    }

    #[test]
    fn rank_deficient() {
        let lambda = CharMatrixZ2::from_columns(2, vec![0b01, 0b01]);
        assert!(matches!(binary_matroid(&lambda), Err(Error::RankDeficient)));
    }

    #[test]
    fn double_dual_and_exchange() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 30 {
            let n = rng.gen_range(1..=4);
            let m = rng.gen_range(n..=8);
            let cols = (0..m).map(|_| rng.gen_range(0..1u64 << n)).collect();
            let lambda = CharMatrixZ2::from_columns(n, cols);
            let Ok(mat) = binary_matroid(&lambda) else { continue };
            assert_eq!(dual_matroid(&dual_matroid(&mat)), mat);
            for _ in 0..10 {
                let a = mat.bases()[rng.gen_range(0..mat.bases().len())];
                let b = mat.bases()[rng.gen_range(0..mat.bases().len())];
                assert!(mat.satisfies_exchange(a, b));
            }
            tested += 1;
        }
    }

    #[test]
    fn gale_duality_on_six_vertices() {
        let d = DualCharMatrix::standard(4, &[0b0111, 0b1011]).unwrap();
        let lambda = d.char_matrix();
        let primal = binary_matroid(&lambda).unwrap();
        let cofacets = binary_matroid(&d.transpose()).unwrap();
        assert_eq!(dual_matroid(&cofacets), primal);
    }

    #[test]
    fn all_fifteen_vectors() {
        let rows: Vec<u64> = (1..16).collect();
        let d = DualCharMatrix::new(4, rows).unwrap();
        let cofacets = binary_matroid(&d.transpose()).unwrap();
        let direct = k_subsets(15, 4)
            .into_iter()
            .filter(|s| rank_of_words(&s.iter().map(|v| v as u64).collect::<Vec<_>>()) == 4)
            .count();
        assert_eq!(cofacets.bases().len(), direct);
        assert_eq!(direct, 840);
    }
}
