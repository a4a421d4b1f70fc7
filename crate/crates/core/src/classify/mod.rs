//! Seeds, isomorphism, homology and the Picard-4 classification pipeline.

mod canon;
mod database;
mod pipeline;
mod predicates;

pub use canon::{are_isomorphic, canonical_form, canonical_labeling, fingerprint, Fingerprint};
pub use database::{is_pl_sphere, SeedDatabase};
pub use pipeline::{extend_database, pipeline, pipeline_with_progress, PipelineConfig, PipelineReport, PICARD};
pub use predicates::{
    betti_z2, color_sequences, edges, is_seed, is_suspension, reduce_to_seed, seed_witness, sphere_betti, wedge_depth,
    Suspension,
};
