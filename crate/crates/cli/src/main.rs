//! `torsion`: build, color, refine, quotient and certify complexes with
//! prescribed 2-torsion.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 verification failure,
//! 3 parse error, 4 search failure (resampling budget exhausted).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use torsion_core::census::{asymptotic_report, run_census};
use torsion_core::coloring::{block_coloring_all, quotient_torsion, DistinctMode};
use torsion_core::construction::{check_bounds, realize_group};
use torsion_core::format::{parse_coloring, parse_facets, write_coloring, write_facets};
use torsion_core::homology::homology;
use torsion_core::pipeline::{run_pipeline, PipelineError};
use torsion_core::refine::{refine_coloring, RefineConfig};
use torsion_core::report::Report;
use torsion_core::{is_proper, pattern_complex, patterns_distinct, Coloring, Error, SimplicialComplex, TwoGroup};

#[derive(Parser)]
#[command(name = "torsion", version, about = "Simplicial complexes with prescribed 2-torsion in homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// Dimension of the complexes (at least 2).
    #[arg(long)]
    d: usize,
    /// Group as a sum of cyclic 2-power orders, e.g. `2^3+2^1`.
    #[arg(long, conflicts_with = "partition", required_unless_present = "partition")]
    group: Option<String>,
    /// Group as comma-separated exponents, e.g. `3,1`.
    #[arg(long, value_delimiter = ',')]
    partition: Option<Vec<u32>>,
}

impl GroupArgs {
    fn group(&self) -> Result<TwoGroup, Error> {
        match (&self.group, &self.partition) {
            (Some(g), _) => g.parse(),
            (None, Some(p)) => TwoGroup::new(p.clone()),
            (None, None) => Err(Error::Precondition("one of --group or --partition is required".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the initial complex for a group and write its facet list.
    Build {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute integral homology of a facet-list file.
    Homology { complex: PathBuf },
    /// Write the block coloring of the initial complex for a group.
    Color {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Refine a coloring so that all codimension-one faces get distinct patterns.
    Refine {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        max_resamples: usize,
        /// Degree bound; defaults to the maximum vertex degree in codimension-one faces.
        #[arg(long = "L")]
        l: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the pattern complex of a colored complex.
    Quotient {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the pattern complex keeps the codimension-one torsion.
    Verify {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Realise and certify every abelian group of order 2^e.
    Census {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        no_verify: bool,
        /// Also print the growth table of π(2^k) for k up to this value.
        #[arg(long)]
        table: Option<u32>,
        /// Directory for one facet file per complex plus a manifest.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full run: build, color, refine, quotient, certify.
    Pipeline {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        max_resamples: usize,
        /// Directory for the complexes, colorings, report and manifest.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Core(Error),
    Io(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        eprintln!("{} stage failed", e.stage);
        Failure::Core(e.source)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_)
            | Failure::Core(
                Error::ConstructionIntegrity(_)
                | Error::CensusIntegrity(_)
                | Error::ImproperColoring(_)
                | Error::PartialColoring(_),
            ) => 2,
            Failure::Core(Error::Parse { .. }) => 3,
            Failure::Core(Error::SearchFailure { .. }) => 4,
            Failure::Core(_) | Failure::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) | Failure::Verification(m) => m.clone(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, Failure> {
    Ok(parse_facets(&read(path)?)?)
}

fn load_coloring(path: &Path) -> Result<Coloring, Failure> {
    Ok(parse_coloring(&read(path)?)?.0)
}

/// Provenance record written next to every artifact. Kept out of reports so
/// that reports stay byte-identical across runs.
struct RunManifest<'a> {
    command: &'a str,
    parameters: Vec<(&'a str, String)>,
    inputs: Vec<&'a Path>,
    outputs: Vec<PathBuf>,
    started: Instant,
}

impl<'a> RunManifest<'a> {
    fn new(command: &'a str, started: Instant) -> Self {
        RunManifest { command, parameters: Vec::new(), inputs: Vec::new(), outputs: Vec::new(), started }
    }

    fn param(mut self, key: &'a str, value: impl ToString) -> Self {
        self.parameters.push((key, value.to_string()));
        self
    }

    fn input(mut self, path: &'a Path) -> Self {
        self.inputs.push(path);
        self
    }

    fn write(&self, path: &Path) -> Result<(), Failure> {
        let mut m = Report::new();
        m.section("manifest").entry("command", self.command).entry("tool_version", env!("CARGO_PKG_VERSION"));
        m.section("parameters");
        for (k, v) in &self.parameters {
            m.entry(k, v);
        }
        m.section("files");
        for p in &self.inputs {
            m.entry("input", p.display());
        }
        for p in &self.outputs {
            m.entry("output", p.display());
        }
        m.section("timing").entry("wall_time_ms", self.started.elapsed().as_millis());
        write(path, &m.to_string())
    }

    /// Writes a single artifact and its `<artifact>.manifest`, or prints the
    /// artifact when no path is given.
    fn emit(mut self, out: Option<&Path>, contents: &str) -> Result<(), Failure> {
        match out {
            Some(p) => {
                write(p, contents)?;
                self.outputs.push(p.to_path_buf());
                self.write(&manifest_path(p))
            }
            None => {
                print!("{contents}");
                Ok(())
            }
        }
    }
}

fn manifest_path(artifact: &Path) -> PathBuf {
    let mut s = artifact.as_os_str().to_owned();
    s.push(".manifest");
    PathBuf::from(s)
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let started = Instant::now();
    match cli.command {
        Command::Build { group, out } => {
            let g = group.group()?;
            let x = realize_group(group.d, &g)?.complex;
            RunManifest::new("build", started)
                .param("d", group.d)
                .param("group", &g)
                .emit(out.as_deref(), &write_facets(&x))
        }
        Command::Homology { complex } => {
            let x = load_complex(&complex)?;
            let h = homology(&x);
            let mut r = Report::new();
            r.section("complex")
                .entry("vertices", x.num_vertices())
                .entry("dim", x.dim().map_or(-1, |d| d as i64))
                .entry("f_vector", x.f_vector());
            r.section("homology");
            for k in 0..h.betti.len() {
                r.entry(&format!("betti_{k}"), h.betti[k]);
                r.entry(&format!("torsion_{k}"), &h.torsion[k]);
            }
            r.entry("euler_characteristic", h.euler_from_faces());
            print!("{r}");
            Ok(())
        }
        Command::Color { group, out } => {
            let g = group.group()?;
            let realization = realize_group(group.d, &g)?;
            let c = block_coloring_all(&realization.telescopes);
            let header = [("d", group.d.to_string()), ("group", g.to_string()), ("palette", c.palette().len().to_string())];
            RunManifest::new("color", started)
                .param("d", group.d)
                .param("group", &g)
                .emit(out.as_deref(), &write_coloring(&c, &header))
        }
        Command::Refine { complex, coloring, seed, max_resamples, l, out } => {
            let x = load_complex(&complex)?;
            let c = load_coloring(&coloring)?;
            let d = x.dim().ok_or_else(|| Error::Precondition("empty complex".into()))?;
            let l = l.unwrap_or_else(|| x.delta_degree(0, d.saturating_sub(1)));
            let cfg = RefineConfig { seed, max_resamples, ..RefineConfig::default() };
            let r = refine_coloring(&x, &c, l, &cfg)?;
            let header = [
                ("seed", r.seed.to_string()),
                ("L", r.l.to_string()),
                ("n", r.n.to_string()),
                ("d", r.d.to_string()),
                ("palette", r.palette_size().to_string()),
            ];
            RunManifest::new("refine", started)
                .param("seed", seed)
                .param("max_resamples", max_resamples)
                .param("L", l)
                .input(&complex)
                .input(&coloring)
                .emit(out.as_deref(), &write_coloring(&r.coloring, &header))
        }
        Command::Quotient { complex, coloring, out } => {
            let x = load_complex(&complex)?;
            let c = load_coloring(&coloring)?;
            RunManifest::new("quotient", started)
                .input(&complex)
                .input(&coloring)
                .emit(out.as_deref(), &write_facets(&pattern_complex(&x, &c)?))
        }
        Command::Verify { complex, coloring } => {
            let x = load_complex(&complex)?;
            let c = load_coloring(&coloring)?;
            let d = x.dim().unwrap_or(0);
            let mut r = Report::new();
            r.section("verify")
                .entry("proper", is_proper(&x, &c)?)
                .entry("all_pairs_distinct", patterns_distinct(&x, &c, d.saturating_sub(1), DistinctMode::AllPairs)?);
            let (a, b) = match quotient_torsion(&x, &c) {
                Ok(v) => v,
                Err(Error::Precondition(m)) => {
                    print!("{r}");
                    return Err(Failure::Verification(format!("hypothesis not met: {m}")));
                }
                Err(e) => return Err(e.into()),
            };
            r.entry("torsion", &a).entry("quotient_torsion", &b).entry("preserved", a == b);
            print!("{r}");
            if a == b {
                Ok(())
            } else {
                Err(Failure::Verification(format!("torsion {a} became {b} in the quotient")))
            }
        }
        Command::Census { d, e, no_verify, table, out } => {
            let report = run_census(d, e, !no_verify)?;
            let mut r = Report::new();
            r.section("census")
                .entry("d", d)
                .entry("e", e)
                .entry("group_count", &report.group_count)
                .entry("realized", report.realized.len())
                .entry("vertex_bound", report.vertex_bound())
                .entry("max_vertices", report.max_vertices())
                .entry("verified", !no_verify)
                .entry("distinct", report.distinctness_certified);
            r.section("complexes");
            for entry in &report.realized {
                let torsion = entry.torsion.as_ref().map_or("unverified".to_string(), |t| t.to_string());
                r.entry(&entry.group.to_string(), format!("vertices {} torsion {torsion}", entry.vertices));
            }
            if let Some(k) = table {
                r.section("growth");
                for row in asymptotic_report(k) {
                    r.entry(
                        &format!("d={}", row.d),
                        format!(
                            "n {} groups {} log2 {:.4} threshold {:.4} ratio {:.4} doubly_exponential {} exponent {:.5}",
                            row.n,
                            row.groups.as_ref().map_or("estimated".to_string(), |g| g.to_string()),
                            row.log2_groups,
                            row.threshold_log2,
                            row.ratio,
                            row.doubly_exponential,
                            row.implied_exponent
                        ),
                    );
                }
            }
            print!("{r}");
            if let Some(dir) = out {
                create_dir(&dir)?;
                let mut manifest = RunManifest::new("census", started)
                    .param("d", d)
                    .param("e", e)
                    .param("verify", !no_verify);
                for (i, entry) in report.realized.iter().enumerate() {
                    let tag = entry.group.exponents().iter().map(|x| x.to_string()).collect::<Vec<_>>().join("-");
                    let path = dir.join(format!("group_{i:04}_{tag}.facets"));
                    write(&path, &write_facets(&entry.complex))?;
                    manifest.outputs.push(path);
                }
                let path = dir.join("report.txt");
                write(&path, &r.to_string())?;
                manifest.outputs.push(path);
                manifest.write(&dir.join("manifest.txt"))?;
            }
            if !no_verify && !report.distinctness_certified {
                return Err(Failure::Verification("torsion signatures are not pairwise distinct".into()));
            }
            Ok(())
        }
        Command::Pipeline { group, seed, max_resamples, out } => {
            let g = group.group()?;
            let result = run_pipeline(group.d, &g, seed, max_resamples)?;
            let bounds = check_bounds(&result.initial, group.d, &g)?;
            print!("{}", result.report);
            if let Some(dir) = out {
                create_dir(&dir)?;
                let mut manifest = RunManifest::new("pipeline", started)
                    .param("d", group.d)
                    .param("group", &g)
                    .param("seed", seed)
                    .param("max_resamples", max_resamples);
                let r = &result.refinement;
                let header = [
                    ("seed", r.seed.to_string()),
                    ("L", r.l.to_string()),
                    ("n", r.n.to_string()),
                    ("d", r.d.to_string()),
                    ("palette", r.palette_size().to_string()),
                ];
                let artifacts = [
                    ("initial.facets", write_facets(&result.initial)),
                    ("block.coloring", write_coloring(&result.block, &[])),
                    ("refined.coloring", write_coloring(&r.coloring, &header)),
                    ("quotient.facets", write_facets(&result.quotient)),
                    ("report.txt", result.report.to_string()),
                ];
                for (name, contents) in artifacts {
                    let path = dir.join(name);
                    write(&path, &contents)?;
                    manifest.outputs.push(path);
                }
                manifest.write(&dir.join("manifest.txt"))?;
            }
            if !result.certified() || !bounds.passed() {
                return Err(Failure::Verification(format!(
                    "expected torsion {}, initial {}, quotient {}",
                    result.expected, result.initial_torsion, result.quotient_torsion
                )));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::Core(Error::SearchFailure { budget: 0, violated: 1 }).exit_code(), 4);
        assert_eq!(Failure::Core(Error::Parse { line: 3, message: "x".into() }).exit_code(), 3);
        assert_eq!(Failure::Verification("x".into()).exit_code(), 2);
        assert_eq!(Failure::Core(Error::CensusIntegrity("x".into())).exit_code(), 2);
        assert_eq!(Failure::Io("x".into()).exit_code(), 1);
    }

    #[test]
    fn manifest_sits_next_to_artifact() {
        assert_eq!(manifest_path(Path::new("out/x.facets")), PathBuf::from("out/x.facets.manifest"));
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
