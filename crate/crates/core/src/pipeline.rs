//! End-to-end run: build, block-color, refine, take the pattern complex and
//! certify that the codimension-one torsion survived.

use std::fmt;

use crate::coloring::{block_coloring_all, is_proper, pattern_complex, patterns_distinct, Coloring, DistinctMode};
use crate::complex::SimplicialComplex;
use crate::construction::{check_bounds, realize_group, TwoGroup};
use crate::error::Error;
use crate::homology::{torsion_in_dimension, TorsionSignature};
use crate::refine::{refine_coloring, RefineConfig, Refinement};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Build,
    Color,
    Refine,
    Quotient,
    Verify,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Build => "build",
            Stage::Color => "color",
            Stage::Refine => "refine",
            Stage::Quotient => "quotient",
            Stage::Verify => "verify",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{stage} stage failed: {source}")]
pub struct PipelineError {
    pub stage: Stage,
    pub source: Error,
}

fn at(stage: Stage) -> impl Fn(Error) -> PipelineError {
    move |source| PipelineError { stage, source }
}

/// Everything a pipeline run produced.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub d: usize,
    pub group: TwoGroup,
    pub initial: SimplicialComplex,
    pub block: Coloring,
    pub refinement: Refinement,
    pub quotient: SimplicialComplex,
    pub expected: TorsionSignature,
    pub initial_torsion: TorsionSignature,
    pub quotient_torsion: TorsionSignature,
    pub report: Report,
}

impl PipelineReport {
    /// Both complexes carry exactly the requested group.
    pub fn certified(&self) -> bool {
        self.initial_torsion == self.expected && self.quotient_torsion == self.expected
    }
}

/// Color-count estimate `(3d+3)(3e(2·2^d·d)^2)^{1/d}(log_2|G|)^{1/d}`, with
/// the vanishing term in the degree bound dropped.
pub fn asymptotic_color_estimate(d: usize, log2_order: u64) -> f64 {
    let d_f = d as f64;
    let l = 2.0 * 2f64.powf(d_f) * d_f;
    (3.0 * d_f + 3.0)
        * (3.0 * std::f64::consts::E * l * l).powf(1.0 / d_f)
        * (log2_order as f64).powf(1.0 / d_f)
}

pub fn run_pipeline(
    d: usize,
    group: &TwoGroup,
    seed: u64,
    max_resamples: usize,
) -> Result<PipelineReport, PipelineError> {
    if d < 2 {
        return Err(at(Stage::Build)(Error::Precondition(format!("d must be at least 2, got {d}"))));
    }
    let realization = realize_group(d, group).map_err(at(Stage::Build))?;
    let x = realization.complex;
    let bounds = check_bounds(&x, d, group).map_err(at(Stage::Build))?;
    let expected = group.invariant_factors();
    let initial_torsion = torsion_in_dimension(&x, d - 1);

    let block = block_coloring_all(&realization.telescopes);
    let block_proper = is_proper(&x, &block).map_err(at(Stage::Color))?;
    let block_intersecting =
        patterns_distinct(&x, &block, d - 1, DistinctMode::IntersectingOnly).map_err(at(Stage::Color))?;

    let l = x.delta_degree(0, d - 1);
    let cfg = RefineConfig { seed, max_resamples, ..RefineConfig::default() };
    let refinement = refine_coloring(&x, &block, l, &cfg).map_err(at(Stage::Refine))?;
    let refined = &refinement.coloring;
    let all_pairs = patterns_distinct(&x, refined, d - 1, DistinctMode::AllPairs).map_err(at(Stage::Refine))?;

    let quotient = pattern_complex(&x, refined).map_err(at(Stage::Quotient))?;
    let quotient_torsion = torsion_in_dimension(&quotient, d - 1);

    let palette = refinement.palette_size();
    let target = 25 * d;
    let mut report = Report::new();
    report
        .section("input")
        .entry("d", d)
        .entry("group", group)
        .entry("order_log2", group.log2_order())
        .entry("seed", seed)
        .entry("max_resamples", max_resamples);
    report
        .section("initial")
        .entry("vertices", x.num_vertices())
        .entry("f_vector", x.f_vector())
        .entry("torsion", &initial_torsion)
        .entry("vertex_formula", bounds.vertex_formula)
        .entry("vertex_bound", bounds.vertex_bound)
        .entry("vertex_bound_ok", bounds.vertex_bound_holds())
        .entry("degree", bounds.degree)
        .entry("degree_bound", bounds.degree_bound)
        .entry("degree_bound_ok", bounds.degree_bound_holds());
    report
        .section("block_coloring")
        .entry("palette", block.palette().len())
        .entry("palette_bound", 3 * (d + 1))
        .entry("palette_bound_ok", block.palette().len() <= 3 * (d + 1))
        .entry("proper", block_proper)
        .entry("intersecting_distinct", block_intersecting);
    report
        .section("refinement")
        .entry("L", refinement.l)
        .entry("n", refinement.n)
        .entry("second_palette", refinement.second_palette)
        .entry("bad_events", refinement.events)
        .entry("resamples", refinement.resamples)
        .entry("palette", palette)
        .entry("palette_bound", refinement.palette_bound)
        .entry("palette_bound_ok", palette <= refinement.palette_bound)
        .entry("all_pairs_distinct", all_pairs);
    report
        .section("quotient")
        .entry("vertices", quotient.num_vertices())
        .entry("f_vector", quotient.f_vector())
        .entry("torsion", &quotient_torsion);
    report
        .section("reference")
        .entry("vertex_target_25d", target)
        .entry("within_25d", quotient.num_vertices() <= target)
        .entry("asymptotic_color_estimate", format!("{:.3}", asymptotic_color_estimate(d, group.log2_order())));

    let preserved = initial_torsion == quotient_torsion;
    let certified = initial_torsion == expected && preserved;
    report
        .section("certificate")
        .entry("expected", &expected)
        .entry("initial_matches", initial_torsion == expected)
        .entry("quotient_preserved", preserved)
        .entry("certified", certified);

    Ok(PipelineReport {
        d,
        group: group.clone(),
        initial: x,
        block,
        refinement,
        quotient,
        expected,
        initial_torsion,
        quotient_torsion,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_sixteen() {
        let g = TwoGroup::cyclic(4).unwrap();
        let r = run_pipeline(2, &g, 7, 100_000).unwrap();
        assert!(r.certified());
        assert_eq!(r.quotient_torsion.to_string(), "(16)");
        assert_eq!(r.quotient.num_vertices(), r.refinement.palette_size());
    }

    #[test]
    fn projective_plane_path() {
        let g = TwoGroup::cyclic(1).unwrap();
        let r = run_pipeline(2, &g, 0, 100_000).unwrap();
        assert!(r.certified());
        assert_eq!(r.quotient_torsion.to_string(), "(2)");
    }

    #[test]
    fn reports_are_deterministic() {
        let g = TwoGroup::new(vec![2, 1]).unwrap();
        let a = run_pipeline(2, &g, 3, 100_000).unwrap().report.to_string();
        let b = run_pipeline(2, &g, 3, 100_000).unwrap().report.to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn stage_tagged_errors() {
        let g = TwoGroup::cyclic(1).unwrap();
        let e = run_pipeline(1, &g, 0, 10).unwrap_err();
        assert_eq!(e.stage, Stage::Build);
    }
}
