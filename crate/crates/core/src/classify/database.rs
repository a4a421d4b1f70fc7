use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use crate::classify::canon::canonical_form;
use crate::classify::predicates::{betti_z2, reduce_to_seed, sphere_betti};
use crate::complex::PureComplex;
use crate::cyclic::cyclic_polytope_boundary;
use crate::error::{Error, Result};
use crate::format::{parse_complexes, write_complexes};

/// Classified seeds keyed by `(n, Picard number)`, stored in canonical form.
#[derive(Clone, Debug, Default)]
pub struct SeedDatabase {
    strata: BTreeMap<(usize, usize), Stratum>,
}

#[derive(Clone, Debug, Default)]
struct Stratum {
    seeds: Vec<PureComplex>,
    lookup: HashSet<PureComplex>,
}

impl SeedDatabase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every stratum with Picard number at most 3 for `n` in `1..=11`, plus the
    /// empty stratum `(1, 4)`.
    pub fn bootstrap() -> Self {
        let mut db = Self::new();
        for p in 1..=3 {
            for n in 1..=11 {
                db.insert_stratum(n, p, Vec::new());
            }
        }
        let square = PureComplex::polygon(4);
        db.insert_stratum(1, 1, vec![PureComplex::s0()]);
        db.insert_stratum(2, 2, vec![square]);
        db.insert_stratum(2, 3, vec![PureComplex::polygon(5)]);
        db.insert_stratum(3, 3, vec![PureComplex::cross_polytope(3)]);
        db.insert_stratum(4, 3, vec![cyclic_polytope_boundary(4, 7)]);
        db.insert_stratum(1, 4, Vec::new());
        db
    }

    /// Replaces a stratum. Seeds are canonicalized and duplicates dropped.
    pub fn insert_stratum(&mut self, n: usize, p: usize, seeds: Vec<PureComplex>) {
        let mut stratum = Stratum::default();
        for s in seeds {
            stratum.insert(s);
        }
        stratum.seeds.sort();
        self.strata.insert((n, p), stratum);
    }

    /// Adds one seed to an existing or new stratum; returns false if it was already present.
    pub fn insert(&mut self, seed: PureComplex) -> bool {
        let key = (seed.n(), seed.picard());
        let stratum = self.strata.entry(key).or_default();
        let added = stratum.insert(seed);
        stratum.seeds.sort();
        added
    }

    pub fn has_stratum(&self, n: usize, p: usize) -> bool {
        self.strata.contains_key(&(n, p))
    }

    pub fn stratum(&self, n: usize, p: usize) -> Option<&[PureComplex]> {
        self.strata.get(&(n, p)).map(|s| s.seeds.as_slice())
    }

    /// `(n, p, count)` for every stratum, ascending.
    pub fn strata(&self) -> Vec<(usize, usize, usize)> {
        self.strata.iter().map(|(&(n, p), s)| (n, p, s.seeds.len())).collect()
    }

    /// Whether a seed is isomorphic to an entry of its stratum.
    pub fn contains(&self, seed: &PureComplex) -> Result<bool> {
        let (n, p) = (seed.n(), seed.picard());
        let stratum = self.strata.get(&(n, p)).ok_or(Error::MissingStratum { n, p })?;
        Ok(stratum.lookup.contains(&canonical_form(&seed.compacted().0)))
    }

    /// Writes `seeds_p{P}_n{N}.cplx` per stratum and an `index.txt`.
    pub fn save(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        let mut index = String::from("# p n count\n");
        for (&(n, p), s) in &self.strata {
            let mut text = format!("# seeds of dimension {} with Picard number {p}\n", n.saturating_sub(1));
            text.push_str(&write_complexes(&s.seeds));
            fs::write(dir.join(format!("seeds_p{p}_n{n}.cplx")), text)?;
            index.push_str(&format!("{p} {n} {}\n", s.seeds.len()));
        }
        fs::write(dir.join("index.txt"), index)?;
        Ok(())
    }

    /// Reads the strata listed in `index.txt`.
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let index = fs::read_to_string(dir.join("index.txt"))?;
        let mut db = Self::new();
        for (i, line) in index.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse { line: i + 1, msg: format!("bad index entry {t:?}") }))
                .collect::<Result<_>>()?;
            let [p, n, count] = nums[..] else {
                return Err(Error::Parse { line: i + 1, msg: "expected \"p n count\"".into() });
            };
            let seeds = parse_complexes(&fs::read_to_string(dir.join(format!("seeds_p{p}_n{n}.cplx")))?)?;
            if seeds.len() != count {
                return Err(Error::Parse { line: i + 1, msg: format!("stratum ({n}, {p}) lists {count} seeds, file has {}", seeds.len()) });
            }
            db.insert_stratum(n, p, seeds);
        }
        Ok(db)
    }
}

impl Stratum {
    fn insert(&mut self, seed: PureComplex) -> bool {
        let c = canonical_form(&seed.compacted().0);
        if self.lookup.insert(c.clone()) {
            self.seeds.push(c);
            true
        } else {
            false
        }
    }
}

/// PL-sphere test for a complex whose vertex links reduce to seeds of known strata.
///
/// The mod-2 Betti numbers must be those of a sphere, and for every vertex the
/// seed of its link must be isomorphic to a database entry. A link whose seed
/// falls in a stratum the database lacks is an error.
pub fn is_pl_sphere(k: &PureComplex, db: &SeedDatabase) -> Result<bool> {
    let (k, _) = k.compacted();
    let n = k.n();
    if n == 0 || k.is_empty() {
        return Ok(false);
    }
    if betti_z2(&k) != sphere_betti(n) {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    for v in 1..=k.m() {
        let link = k.vertex_link(v)?.compacted().0;
        if link.picard() == 0 {
            return Ok(false);
        }
        let seed = reduce_to_seed(&link);
        if seed.picard() == 0 || !db.contains(&seed)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octahedron_needs_only_square() {
        let mut db = SeedDatabase::new();
        db.insert_stratum(1, 1, vec![PureComplex::s0()]);
        db.insert_stratum(2, 2, vec![PureComplex::polygon(4)]);
        assert!(is_pl_sphere(&PureComplex::cross_polytope(3), &db).unwrap());
    }

    #[test]
    fn betti_rejects_before_links() {
        let two = PureComplex::from_lists(6, &[&[1, 2], &[2, 3], &[1, 3], &[4, 5], &[5, 6], &[4, 6]]).unwrap();
        assert!(!is_pl_sphere(&two, &SeedDatabase::new()).unwrap());
    }

    #[test]
    fn missing_stratum_is_an_error() {
        let db = SeedDatabase::new();
        let err = is_pl_sphere(&PureComplex::polygon(5), &db).unwrap_err();
        assert!(matches!(err, Error::MissingStratum { n: 1, p: 1 }));
    }

    #[test]
    fn bootstrap_contents() {
        let db = SeedDatabase::bootstrap();
        assert_eq!(db.stratum(4, 3).unwrap().len(), 1);
        assert_eq!(db.stratum(5, 3).unwrap().len(), 0);
        assert!(db.contains(&PureComplex::polygon(5)).unwrap());
        assert!(!db.contains(&PureComplex::polygon(4).suspension().wedge(1).unwrap()).unwrap_or(false));
        assert!(is_pl_sphere(&cyclic_polytope_boundary(4, 7), &db).unwrap());
        assert!(is_pl_sphere(&PureComplex::simplex_boundary(8), &db).unwrap());
    }

    #[test]
    fn save_and_load() {
        let dir = std::env::temp_dir().join(format!("toric-seeds-db-{}", std::process::id()));
        let db = SeedDatabase::bootstrap();
        db.save(&dir).unwrap();
        let back = SeedDatabase::load(&dir).unwrap();
        assert_eq!(back.strata(), db.strata());
        for (n, p, _) in db.strata() {
            assert_eq!(back.stratum(n, p), db.stratum(n, p));
        }
        fs::remove_dir_all(&dir).unwrap();
    }
}
