//! Local-lemma refinement of a coloring.
//!
//! Given a proper coloring `c` under which intersecting (d-1)-faces already
//! have distinct patterns, a second coloring `c2` drawn from
//! `⌈(3eL²n)^{1/d}⌉` colors is searched for so that the product `(c, c2)`
//! separates every pair of (d-1)-faces. The bad events are vertex-disjoint
//! pairs `(σ, τ)` with equal `c`-patterns; since `c` is proper such a pair
//! matches the vertices of `σ` and `τ` by color, and the event occurs when
//! `c2` agrees on every matched pair. The search resamples the vertices of
//! the lowest-indexed occurring event until none occurs.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{faces_intersect, pattern_classes, patterns_distinct, require_proper, Coloring, DistinctMode};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Resample only the vertices of the lowest-indexed occurring event; if
    /// the budget runs out, fall back to global restarts with a fresh budget.
    ResampleLocal,
    /// Redraw the whole second coloring while any event occurs.
    RestartGlobal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefineConfig {
    pub seed: u64,
    /// Budget for each search phase.
    pub max_resamples: usize,
    pub strategy: Strategy,
}

impl Default for RefineConfig {
    fn default() -> Self {
        RefineConfig { seed: 0, max_resamples: 100_000, strategy: Strategy::ResampleLocal }
    }
}

impl RefineConfig {
    pub fn with_seed(seed: u64) -> Self {
        RefineConfig { seed, ..Self::default() }
    }
}

/// A vertex-disjoint pair of equally patterned faces, with the vertex
/// matching induced by the colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadEvent {
    pub sigma: usize,
    pub tau: usize,
    /// Vertex index pairs `(v, φ(v))`.
    pub matching: Vec<(usize, usize)>,
}

impl BadEvent {
    pub fn occurs(&self, second: &[u32]) -> bool {
        self.matching.iter().all(|&(a, b)| second[a] == second[b])
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.matching.iter().flat_map(|&(a, b)| [a, b])
    }
}

/// All bad events among the k-faces under a proper coloring.
pub fn bad_events(x: &SimplicialComplex, c: &Coloring, k: usize) -> Result<Vec<BadEvent>> {
    require_proper(x, c)?;
    let colors = c.per_vertex(x)?;
    let faces = x.simplices(k);
    let by_color = |f: &[usize]| {
        let mut vs = f.to_vec();
        vs.sort_by_key(|&v| colors[v]);
        vs
    };
    let mut events = Vec::new();
    for class in pattern_classes(x, c, k)? {
        for (i, &s) in class.iter().enumerate() {
            for &t in &class[i + 1..] {
                if faces_intersect(&faces[s], &faces[t]) {
                    continue;
                }
                let matching = by_color(&faces[s]).into_iter().zip(by_color(&faces[t])).collect();
                events.push(BadEvent { sigma: s, tau: t, matching });
            }
        }
    }
    events.sort_by_key(|e| (e.sigma, e.tau));
    Ok(events)
}

/// `⌈(3eL²n)^{1/d}⌉`, the number of colors the second coloring draws from.
pub fn second_palette_size(l: usize, n: usize, d: usize) -> u32 {
    let x = 3.0 * std::f64::consts::E * (l as f64).powi(2) * n as f64;
    (x.powf(1.0 / d as f64).ceil() as u32).max(1)
}

/// Outcome of a successful refinement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    /// The product coloring `(c, c2)`.
    pub coloring: Coloring,
    /// `c2`, indexed like the complex's vertices.
    pub second: Vec<u32>,
    pub second_palette: u32,
    pub seed: u64,
    pub l: usize,
    pub n: usize,
    pub d: usize,
    pub events: usize,
    pub resamples: usize,
    /// `|palette(c)| * second_palette`
    pub palette_bound: usize,
}

impl Refinement {
    pub fn palette_size(&self) -> usize {
        self.coloring.palette().len()
    }
}

/// Refines `c` so that no two (d-1)-faces of `x` share a pattern, where
/// `d = dim x` and `l` bounds `Δ_{0,d-1}(x)`.
pub fn refine_coloring(x: &SimplicialComplex, c: &Coloring, l: usize, cfg: &RefineConfig) -> Result<Refinement> {
    let d = x
        .dim()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::Precondition("refinement needs a complex of dimension at least 1".into()))?;
    require_proper(x, c)?;
    if !patterns_distinct(x, c, d - 1, DistinctMode::IntersectingOnly)? {
        return Err(Error::Precondition(format!("two intersecting {}-faces share a pattern", d - 1)));
    }
    let degree = x.delta_degree(0, d - 1);
    if l < degree {
        return Err(Error::Precondition(format!("L = {l} is below the vertex degree {degree}")));
    }

    let n = x.num_vertices();
    let m = second_palette_size(l, n, d);
    let events = bad_events(x, c, d - 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut second = vec![1u32; n];
    let mut resamples = 0;
    if !events.is_empty() {
        for s in second.iter_mut() {
            *s = rng.gen_range(1..=m);
        }
        resamples = match cfg.strategy {
            Strategy::ResampleLocal => {
                match resample_local(&events, &mut second, m, &mut rng, cfg.max_resamples, n) {
                    Ok(r) => r,
                    Err(Error::SearchFailure { budget, .. }) => {
                        budget + restart_global(&events, &mut second, m, &mut rng, cfg.max_resamples)?
                    }
                    Err(e) => return Err(e),
                }
            }
            Strategy::RestartGlobal => restart_global(&events, &mut second, m, &mut rng, cfg.max_resamples)?,
        };
    }

    let coloring = c.product(|v| second[x.vertex_index(v).expect("coloring is total on the complex")]);
    let palette_bound = c.palette().len() * m as usize;
    Ok(Refinement {
        coloring,
        second,
        second_palette: m,
        seed: cfg.seed,
        l,
        n,
        d,
        events: events.len(),
        resamples,
        palette_bound,
    })
}

fn resample_local(
    events: &[BadEvent],
    second: &mut [u32],
    m: u32,
    rng: &mut ChaCha8Rng,
    budget: usize,
    n: usize,
) -> Result<usize> {
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in events.iter().enumerate() {
        for v in e.vertices() {
            touching[v].push(i);
        }
    }
    let mut occurring: BTreeSet<usize> = (0..events.len()).filter(|&i| events[i].occurs(second)).collect();
    let mut resamples = 0;
    while let Some(&i) = occurring.first() {
        if resamples == budget {
            return Err(Error::SearchFailure { budget, violated: occurring.len() });
        }
        resamples += 1;
        let vs: BTreeSet<usize> = events[i].vertices().collect();
        for &v in &vs {
            second[v] = rng.gen_range(1..=m);
        }
        let affected: BTreeSet<usize> = vs.iter().flat_map(|&v| touching[v].iter().copied()).collect();
        for j in affected {
            if events[j].occurs(second) {
                occurring.insert(j);
            } else {
                occurring.remove(&j);
            }
        }
    }
    Ok(resamples)
}

fn restart_global(
    events: &[BadEvent],
    second: &mut [u32],
    m: u32,
    rng: &mut ChaCha8Rng,
    budget: usize,
) -> Result<usize> {
    let mut resamples = 0;
    loop {
        let violated = events.iter().filter(|e| e.occurs(second)).count();
        if violated == 0 {
            return Ok(resamples);
        }
        if resamples == budget {
            return Err(Error::SearchFailure { budget, violated });
        }
        resamples += 1;
        for s in second.iter_mut() {
            *s = rng.gen_range(1..=m);
        }
    }
}

/// Exact dependency count for the face `sigma` together with the
/// local-lemma bound `2L²n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DependencyDegree {
    pub count: usize,
    pub bound: usize,
}

impl DependencyDegree {
    pub fn within_bound(&self) -> bool {
        self.count <= self.bound
    }
}

/// Number of ordered pairs `(σ', τ')` of distinct, vertex-disjoint faces of
/// the same dimension as `sigma` such that `σ' ∪ τ'` meets `sigma`.
///
/// An event `A_{σ,τ}` can only depend on events counted here for `σ` or for `τ`.
pub fn dependency_degree(x: &SimplicialComplex, sigma: &Face, l: usize, n: usize) -> DependencyDegree {
    let k = sigma.dim();
    let marked: Vec<bool> = x.vertices().iter().map(|v| sigma.contains(v)).collect();
    let faces = x.simplices(k);
    let meets: Vec<bool> = faces.iter().map(|f| f.iter().any(|&v| marked[v])).collect();
    let mut count = 0;
    for (i, a) in faces.iter().enumerate() {
        for (j, b) in faces.iter().enumerate() {
            if i != j && (meets[i] || meets[j]) && !faces_intersect(a, b) {
                count += 1;
            }
        }
    }
    DependencyDegree { count, bound: 2 * l * l * n }
}
