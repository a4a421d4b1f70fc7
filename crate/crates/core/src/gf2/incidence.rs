use crate::complex::ridges_of;
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::vertex_set::VertexSet;

/// Ridge–facet incidence of a facet universe, stored column-sparse plus one
/// parent mask per ridge.
#[derive(Clone, Debug)]
pub struct IncidenceMatrix {
    facets: Vec<VertexSet>,
    ridges: Vec<VertexSet>,
    /// `cols[j]` lists the ridge indices contained in facet `j`, ascending.
    cols: Vec<Vec<u32>>,
    /// `parents[i]` marks the facets containing ridge `i`.
    parents: Vec<Gf2Vector>,
}

impl IncidenceMatrix {
    /// Builds the incidence matrix of a nonempty pure facet list. Facets are
    /// sorted and deduplicated first, so indices follow the canonical order.
    pub fn new(facets: &[VertexSet]) -> Result<Self> {
        let mut facets = facets.to_vec();
        facets.sort_unstable();
        facets.dedup();
        if facets.is_empty() {
            return Err(Error::Unsupported("empty facet universe".into()));
        }
        let ridges = ridges_of(&facets)?;
        if facets[0].is_empty() {
            return Err(Error::Unsupported("facets must have at least one vertex".into()));
        }
        let mut parents = vec![Gf2Vector::zeros(facets.len()); ridges.len()];
        let cols = facets
            .iter()
            .enumerate()
            .map(|(j, f)| {
                f.ridges()
                    .map(|r| {
                        let i = ridges.binary_search(&r).expect("ridge was collected");
                        parents[i].set(j, true);
                        i as u32
                    })
                    .collect::<Vec<u32>>()
            })
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Ok(IncidenceMatrix { facets, ridges, cols, parents })
    }

    /// Number of ridges (rows).
    pub fn ridge_count(&self) -> usize {
        self.ridges.len()
    }

    /// Number of facets (columns).
    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn ridges(&self) -> &[VertexSet] {
        &self.ridges
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.cols[j]
    }

    pub fn parents(&self, ridge: usize) -> &Gf2Vector {
        &self.parents[ridge]
    }

    pub fn facet_index(&self, f: VertexSet) -> Option<usize> {
        self.facets.binary_search(&f).ok()
    }

    pub fn to_matrix(&self) -> Gf2Matrix {
        let mut a = Gf2Matrix::zeros(self.ridges.len(), self.facets.len());
        for (j, col) in self.cols.iter().enumerate() {
            for &i in col {
                a.set(i as usize, j, true);
            }
        }
        a
    }

    /// Characteristic vector of a facet subset of the universe.
    pub fn characteristic(&self, facets: &[VertexSet]) -> Option<Gf2Vector> {
        let mut v = Gf2Vector::zeros(self.facets.len());
        for &f in facets {
            v.set(self.facet_index(f)?, true);
        }
        Some(v)
    }
}
