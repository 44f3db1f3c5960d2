//! Simplicial complexes whose codimension-one homology carries a prescribed
//! abelian 2-group as its torsion subgroup.
//!
//! The crate is organised bottom-up:
//!
//! - [`complex`]: faces, complexes and the structural operations (closure,
//!   skeleta, degrees, disjoint union, vertex identification, suspension,
//!   boundary matrices).
//! - [`snf`] and [`homology`]: exact integer Smith normal form and the
//!   homology engine used to certify every construction.
//! - [`construction`]: the building blocks `P(d)`, the telescopes `X(d, t)`
//!   realising `Z/2^t`, and disjoint unions realising arbitrary 2-groups.
//! - [`coloring`] and [`refine`]: patterns, the block coloring, the
//!   local-lemma refinement and the pattern-complex quotient.
//! - [`census`]: partition counts and batch realisation of every abelian
//!   group of order `2^e`.
//! - [`pipeline`], [`format`] and [`report`]: end-to-end driver, file formats
//!   and the line-oriented report emitted by the CLI.

pub mod census;
pub mod coloring;
pub mod complex;
pub mod construction;
pub mod error;
pub mod format;
pub mod homology;
pub mod pipeline;
pub mod refine;
pub mod report;
pub mod snf;

pub use census::{
    asymptotic_report, log2_partition_estimate, partition_count, partitions_of, run_census, run_census_for_order,
    AsymptoticRow, CensusEntry, CensusReport, PartitionTable, EXACT_GROWTH_LIMIT,
};
pub use coloring::{
    block_coloring, is_proper, pattern_complex, pattern_of, patterns_distinct,
    verify_quotient_torsion, Color, Coloring, DistinctMode, Pattern,
};
pub use complex::{FVector, Face, IntegerMatrix, SimplicialComplex, VertexId};
pub use construction::{
    build_for_group, build_p, build_p2, build_telescope, check_bounds, identify_roles,
    realize_group, Block, BoundsReport, GroupComplex, Telescope, TwoGroup,
};
pub use error::{Error, Result};
pub use homology::{class_coordinates, homology, BoundaryTest, ClassCoordinates, HomologySummary, TorsionSignature};
pub use pipeline::{run_pipeline, PipelineReport};
pub use refine::{dependency_degree, refine_coloring, RefineConfig, Refinement, Strategy};
pub use snf::{smith_normal_form, smith_normal_form_with_transforms, SmithForm};
