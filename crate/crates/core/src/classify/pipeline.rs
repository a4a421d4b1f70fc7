use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::charmap::{idcm_orbits, matroid_universe, supports_dcm};
use crate::classify::canon::canonical_form;
use crate::classify::database::{is_pl_sphere, SeedDatabase};
use crate::classify::predicates::is_seed;
use crate::complex::PureComplex;
use crate::error::{Error, Result};
use crate::search::{ubt_property, SearchJob, DEFAULT_CAP_BITS};

/// Picard number handled by the pipeline.
pub const PICARD: usize = 4;

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// Worker count; `0` uses the global rayon pool.
    pub threads: usize,
    pub cap_bits: u32,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { threads: 0, cap_bits: DEFAULT_CAP_BITS }
    }
}

/// Counts and outputs of one pipeline run.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub n: usize,
    /// Weak pseudo-manifolds found per orbit, in orbit order.
    pub per_orbit: Vec<usize>,
    /// Distinct labeled complexes in the union over all orbits.
    pub line7: usize,
    /// Of those, complexes on all `n + 4` vertices that pass the seed test.
    pub line13: usize,
    /// Isomorphism classes among them.
    pub line15: usize,
    /// Classes that are PL spheres.
    pub line19: usize,
    /// The PL-sphere seeds, canonical and sorted.
    pub seeds: Vec<PureComplex>,
    /// Classes dropped by the PL-sphere test.
    pub rejected: Vec<PureComplex>,
    /// Suspensions of Picard-3 seeds that admit a dual characteristic matrix but no injective one.
    pub suspensions: Vec<PureComplex>,
}

impl PipelineReport {
    pub fn total(&self) -> usize {
        self.seeds.len() + self.suspensions.len()
    }

    /// All seeds of the stratum `(n, 4)`.
    pub fn all_seeds(&self) -> Vec<PureComplex> {
        let mut all = self.seeds.clone();
        all.extend(self.suspensions.iter().cloned());
        all.sort();
        all
    }

    pub fn counts_line(&self) -> String {
        format!("COUNTS line7={} line13={} line15={} line19={}", self.line7, self.line13, self.line15, self.line19)
    }
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, Picard number {PICARD}", self.n)?;
        writeln!(f, "  orbits:                      {}", self.per_orbit.len())?;
        writeln!(f, "  labeled complexes (line 7):  {}", self.line7)?;
        writeln!(f, "  full seeds (line 13):        {}", self.line13)?;
        writeln!(f, "  up to isomorphism (line 15): {}", self.line15)?;
        writeln!(f, "  PL spheres (line 19):        {}", self.line19)?;
        writeln!(f, "  suspension completion:       {}", self.suspensions.len())?;
        writeln!(f, "  total seeds:                 {}", self.total())?;
        write!(f, "{}", self.counts_line())
    }
}

/// Enumerates the Picard-4 seeds of dimension `n - 1` that admit a mod-2 characteristic map.
///
/// Every IDCM orbit contributes the weak pseudo-manifolds of its facet universe
/// within the upper bound theorem's facet count. The union is filtered to
/// complexes on all vertices that pass the seed test, deduplicated up to
/// isomorphism and checked for PL-sphereness against `db`. Finally suspensions
/// of Picard-3 seeds that support a dual characteristic matrix but no injective
/// one are added.
pub fn pipeline(n: usize, db: &SeedDatabase, config: &PipelineConfig) -> Result<PipelineReport> {
    pipeline_with_progress(n, db, config, |_, _| {})
}

/// Like [`pipeline`], reporting `(finished orbits, total orbits)`.
pub fn pipeline_with_progress(
    n: usize,
    db: &SeedDatabase,
    config: &PipelineConfig,
    progress: impl Fn(usize, usize) + Sync,
) -> Result<PipelineReport> {
    if config.threads == 0 {
        run(n, db, config, &progress)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::Unsupported(e.to_string()))?;
        pool.install(|| run(n, db, config, &progress))
    }
}

fn run(n: usize, db: &SeedDatabase, config: &PipelineConfig, progress: &(impl Fn(usize, usize) + Sync)) -> Result<PipelineReport> {
    if n < 1 {
        return Err(Error::Unsupported("pipeline needs n >= 1".into()));
    }
    let m = n + PICARD;
    let orbits = idcm_orbits(n, PICARD)?;
    let mut union: BTreeSet<PureComplex> = BTreeSet::new();
    let mut per_orbit = Vec::with_capacity(orbits.len());
    for (i, d) in orbits.iter().enumerate() {
        let universe = matroid_universe(d);
        let found = SearchJob::new(&universe)?
            .with_property(ubt_property(n))
            .with_cap_bits(config.cap_bits)
            .run()?;
        per_orbit.push(found.len());
        union.extend(found);
        progress(i + 1, orbits.len());
    }
    let line7 = union.len();

    let union: Vec<PureComplex> = union.into_iter().collect();
    let full: Vec<PureComplex> = union.into_par_iter().filter(|k| k.vertex_count() == m && is_seed(k)).collect();
    let line13 = full.len();

    let mut classes: Vec<PureComplex> = full.par_iter().map(canonical_form).collect();
    classes.sort();
    classes.dedup();
    let line15 = classes.len();

    let verdicts: Vec<bool> = classes.par_iter().map(|k| is_pl_sphere(k, db)).collect::<Result<_>>()?;
    let mut seeds = Vec::new();
    let mut rejected = Vec::new();
    for (k, ok) in classes.into_iter().zip(verdicts) {
        if ok {
            seeds.push(k);
        } else {
            rejected.push(k);
        }
    }
    let line19 = seeds.len();

    let mut suspensions = Vec::new();
    if n >= 2 {
        let lower = db.stratum(n - 1, PICARD - 1).ok_or(Error::MissingStratum { n: n - 1, p: PICARD - 1 })?;
        for s in lower {
            let t = s.suspension();
            if supports_dcm(&t, PICARD, false).is_some() && supports_dcm(&t, PICARD, true).is_none() {
                let c = canonical_form(&t);
                if !seeds.contains(&c) {
                    suspensions.push(c);
                }
            }
        }
        suspensions.sort();
    }

    Ok(PipelineReport { n, per_orbit, line7, line13, line15, line19, seeds, rejected, suspensions })
}

/// Runs the pipeline for `2..=max_n`, adding each result to `db` before the next dimension.
pub fn extend_database(db: &mut SeedDatabase, max_n: usize, config: &PipelineConfig) -> Result<Vec<PipelineReport>> {
    let mut reports = Vec::new();
    for n in 2..=max_n {
        if db.has_stratum(n, PICARD) {
            continue;
        }
        let report = pipeline(n, db, config)?;
        db.insert_stratum(n, PICARD, report.all_seeds());
        reports.push(report);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_counts() {
        let db = SeedDatabase::bootstrap();
        let r = pipeline(2, &db, &PipelineConfig::default()).unwrap();
        assert_eq!(r.per_orbit.len(), 7);
        assert_eq!((r.line15, r.line19), (2, 1));
        assert_eq!(r.seeds, vec![canonical_form(&PureComplex::polygon(6))]);
        assert!(r.suspensions.is_empty());
    }
}
