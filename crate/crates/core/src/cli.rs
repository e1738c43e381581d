//! The `qlow` command-line front end.
//!
//! ```text
//! qlow solve     --manifest PATH [--seed U64] [--jobs N] [--out DIR]
//! qlow sample    --manifest PATH [--seed U64] [--jobs N] [--out DIR] [--shots K]
//! qlow reproduce [ID] [--manifest PATH] [--seed U64] [--jobs N] [--out DIR]
//! ```
//!
//! Manifests are JSON documents described by [`MANIFEST_SCHEMA`]. They are
//! parsed and checked in full before any computation starts.
//!
//! Exit codes: 0 success, 2 configuration error, 3 resource cap, 4 numeric
//! failure, 1 I/O.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::ansatz::{qaoa_state, Schedule};
use crate::error::{Error, Result};
use crate::experiments::{self, ExperimentRecord, EXPERIMENT_IDS};
use crate::laplacian::{ball_uniform_state, hamming_shell_state, Laplacian, SparseGraph};
use crate::objectives::{approximation_ratio, evaluate, Objective};
use crate::optimize::{
    classical_restart_baseline, iterated_rounding, optimize_relaxed, optimize_schedule_from, qaoa_solver,
    RoundingConfig, SearchConfig,
};
use crate::problems::{self, task_rng, DiagonalProblem, Distribution, ProblemMeta, ZTerm};
use crate::state::Statevector;

/// JSON Schema of run manifests.
pub const MANIFEST_SCHEMA: &str = include_str!("../manifests/schema.json");

/// Seed used when neither `--seed` nor the manifest provides one.
pub const DEFAULT_SEED: u64 = 0;

/// Pinned manifest of each reproducible experiment.
pub fn pinned_manifest(id: &str) -> Option<&'static str> {
    Some(match id {
        "fig2" => include_str!("../manifests/fig2.json"),
        "scale" => include_str!("../manifests/scale.json"),
        "ce" => include_str!("../manifests/ce.json"),
        "freedom" => include_str!("../manifests/freedom.json"),
        "shadow" => include_str!("../manifests/shadow.json"),
        "proxy" => include_str!("../manifests/proxy.json"),
        "rounding" => include_str!("../manifests/rounding.json"),
        _ => return None,
    })
}

#[derive(Debug, Parser)]
#[command(name = "qlow", version, about = "Low-depth quantum optimization simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize one solver on one problem per seed.
    Solve(CommonArgs),
    /// Run a named experiment from its pinned (or a given) manifest.
    Reproduce {
        /// One of fig2, scale, ce, freedom, shadow, proxy, rounding.
        id: Option<String>,
        #[command(flatten)]
        common: OptionalManifestArgs,
    },
    /// Solve, then draw measurement samples from the final state.
    Sample {
        #[command(flatten)]
        common: CommonArgs,
        /// Overrides the manifest's `shots`.
        #[arg(long)]
        shots: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct OptionalManifestArgs {
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args, Clone)]
pub struct RunArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// Manifest

/// A run manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub experiment: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemSpec>,
    #[serde(default)]
    pub laplacian: LaplacianSpec,
    #[serde(default)]
    pub initial: InitialSpec,
    #[serde(default)]
    pub solver: SolverSpec,
    #[serde(default = "mean")]
    pub objective: Objective,
    #[serde(default)]
    pub search: SearchConfig,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<usize>,
    /// File name stem for outputs; defaults to `experiment`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// Experiment-specific settings for `reproduce`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<serde_json::Value>,
}

fn mean() -> Objective {
    Objective::Mean
}

/// Problem family and parameters. Random families draw from the run seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemSpec {
    Uncoupled { n: usize, distribution: Distribution },
    Fields { alphas: Vec<f64> },
    Zero { n: usize },
    Ramp { n: usize },
    Spike { n: usize, a: f64, b: f64 },
    SpikeBand { n: usize, lo: usize, hi: usize, height: f64 },
    Bush { n: usize },
    Kspin { n: usize, k: u32 },
    ConflictedPairs { n: usize, epsilon: f64, delta: f64 },
    Fisher { n: usize },
    Chain { n: usize, j2: f64 },
    Grid { rows: usize, cols: usize, j2: f64 },
    Maxcut { n: usize, j2_fraction: f64, j2: f64 },
    Terms { n: usize, terms: Vec<ZTerm> },
}

impl ProblemSpec {
    pub fn build(&self, seed: u64) -> Result<DiagonalProblem> {
        use ProblemSpec::*;
        match self {
            Uncoupled { n, distribution } => problems::uncoupled_spins(*n, *distribution, seed),
            Fields { alphas } => problems::fields(alphas),
            Zero { n } => problems::zero(*n),
            Ramp { n } => problems::hamming_ramp(*n),
            Spike { n, a, b } => problems::spike(*n, *a, *b),
            SpikeBand { n, lo, hi, height } => problems::spike_band(*n, *lo, *hi, *height),
            Bush { n } => problems::bush(*n),
            Kspin { n, k } => problems::kspin_ferromagnet(*n, *k),
            ConflictedPairs { n, epsilon, delta } => problems::conflicted_pairs(*n, *epsilon, *delta),
            Fisher { n } => problems::fisher_chain(*n, seed),
            Chain { n, j2 } => problems::chain_detuned(*n, *j2),
            Grid { rows, cols, j2 } => problems::grid_ferromagnet_2d(*rows, *cols, *j2),
            Maxcut { n, j2_fraction, j2 } => problems::maxcut_3regular(*n, *j2_fraction, *j2, seed),
            Terms { n, terms } => DiagonalProblem::from_terms(*n, terms.clone(), ProblemMeta::new("terms")),
        }
    }

    fn j2(&self) -> Option<f64> {
        match self {
            ProblemSpec::Chain { j2, .. } | ProblemSpec::Grid { j2, .. } | ProblemSpec::Maxcut { j2, .. } => Some(*j2),
            _ => None,
        }
    }
}

/// Mixer graph.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LaplacianSpec {
    #[default]
    Hypercube,
    Weighted {
        b: Vec<f64>,
    },
    Complete,
    Sparse {
        graph: SparseGraph,
    },
    BallCut {
        center: u64,
        radius: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<Vec<f64>>,
    },
}

impl LaplacianSpec {
    pub fn build(&self, n: usize) -> Result<Laplacian> {
        let lap = match self {
            LaplacianSpec::Hypercube => Laplacian::hypercube(n),
            LaplacianSpec::Weighted { b } => Laplacian::weighted_hypercube(b.clone())?,
            LaplacianSpec::Complete => Laplacian::CompleteGraph,
            LaplacianSpec::Sparse { graph } => Laplacian::CustomSparse(graph.clone()),
            LaplacianSpec::BallCut { center, radius, b } => {
                let inner = match b {
                    Some(b) => Laplacian::weighted_hypercube(b.clone())?,
                    None => Laplacian::hypercube(n),
                };
                Laplacian::ball_cut(inner, *center, *radius)?
            }
        };
        match lap.qubits() {
            Some(m) if m != n => Err(Error::config("laplacian", format!("graph has {m} qubits, problem has {n}"))),
            _ => Ok(lap),
        }
    }
}

/// Initial state of the ansatz.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialSpec {
    #[default]
    Plus,
    Basis {
        z: u64,
    },
    Shell {
        weight: usize,
    },
    Ball {
        center: u64,
        radius: usize,
        /// Multiplier of the center amplitude before normalization.
        #[serde(default = "one")]
        boost: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl InitialSpec {
    pub fn build(&self, n: usize) -> Result<Statevector> {
        match self {
            InitialSpec::Plus => Statevector::plus_state(n),
            InitialSpec::Basis { z } => Statevector::basis_state(n, *z),
            InitialSpec::Shell { weight } => hamming_shell_state(n, *weight),
            InitialSpec::Ball { center, radius, boost } => {
                let ball = ball_uniform_state(n, *center, *radius)?;
                let mut amps = ball.amps().to_vec();
                amps[*center as usize] *= boost;
                Statevector::from_amplitudes(amps)
            }
        }
    }
}

/// Which solver runs on the problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SolverSpec {
    /// Optimized QAOA, optionally with per-term / per-qubit angles.
    Qaoa {
        #[serde(default = "one_round")]
        p: usize,
        #[serde(default)]
        relax_gamma: bool,
        #[serde(default)]
        relax_beta: bool,
    },
    /// A given standard schedule, no optimization.
    Fixed { gammas: Vec<f64>, betas: Vec<f64> },
    /// Iterated rounding around an optimized QAOA solver.
    Rounding {
        #[serde(default = "one_round")]
        p: usize,
        beta_r: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n_f: Option<usize>,
        #[serde(default = "yes")]
        reoptimize: bool,
    },
    /// Product-state restarts of the multilinear extension.
    Classical { restarts: usize },
}

fn one_round() -> usize {
    1
}

fn yes() -> bool {
    true
}

impl Default for SolverSpec {
    fn default() -> Self {
        SolverSpec::Qaoa {
            p: 1,
            relax_gamma: false,
            relax_beta: false,
        }
    }
}

impl SolverSpec {
    fn name(&self) -> &'static str {
        match self {
            SolverSpec::Qaoa { relax_gamma: false, relax_beta: false, .. } => "qaoa",
            SolverSpec::Qaoa { .. } => "qaoa_relaxed",
            SolverSpec::Fixed { .. } => "fixed",
            SolverSpec::Rounding { .. } => "rounding",
            SolverSpec::Classical { .. } => "classical",
        }
    }

    fn rounds(&self) -> usize {
        match self {
            SolverSpec::Qaoa { p, .. } | SolverSpec::Rounding { p, .. } => *p,
            SolverSpec::Fixed { gammas, .. } => gammas.len(),
            SolverSpec::Classical { .. } => 0,
        }
    }
}

fn at(path: &str, e: Error) -> Error {
    Error::config(path, e.to_string())
}

fn parse_json<T: DeserializeOwned>(text: &str, prefix: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.path().to_string();
        let path = match (prefix.is_empty(), inner.as_str()) {
            (true, _) => inner.clone(),
            (false, ".") => prefix.to_string(),
            (false, _) => format!("{prefix}.{inner}"),
        };
        Error::config(path, e.into_inner().to_string())
    })
}

impl Manifest {
    /// Parses and validates a manifest document.
    pub fn parse(text: &str) -> Result<Self> {
        let m: Manifest = parse_json(text, "")?;
        m.validate()?;
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::config("manifest", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Semantic checks that the types alone cannot express.
    pub fn validate(&self) -> Result<()> {
        if self.experiment.trim().is_empty() {
            return Err(Error::config("experiment", "must not be empty"));
        }
        self.search.validate().map_err(|e| at("search", e))?;
        self.objective.validate().map_err(|e| at("objective", e))?;
        match &self.solver {
            SolverSpec::Qaoa { p: 0, .. } | SolverSpec::Rounding { p: 0, .. } => {
                return Err(Error::config("solver.p", "at least one round is required"))
            }
            SolverSpec::Fixed { gammas, betas } => {
                if gammas.is_empty() || gammas.len() != betas.len() {
                    return Err(Error::config("solver", "gammas and betas must be non-empty and of equal length"));
                }
            }
            SolverSpec::Rounding { beta_r, .. } if !(*beta_r >= 0.0 && beta_r.is_finite()) => {
                return Err(Error::config("solver.beta_r", "must be finite and non-negative"));
            }
            _ => {}
        }
        if let Some(name) = &self.output {
            if name.is_empty() || name.contains(['/', '\\']) {
                return Err(Error::config("output", "must be a plain file name stem"));
            }
        }
        if let LaplacianSpec::BallCut { .. } = self.laplacian {
            if !matches!(self.solver, SolverSpec::Qaoa { relax_beta: false, .. } | SolverSpec::Fixed { .. }) {
                return Err(Error::config("solver", "ball cuts support standard or fixed QAOA only"));
            }
        }
        Ok(())
    }

    fn seeds(&self, flag: Option<u64>) -> Vec<u64> {
        match flag {
            Some(s) => vec![s],
            None if self.seeds.is_empty() => vec![DEFAULT_SEED],
            None => self.seeds.clone(),
        }
    }

    fn stem(&self) -> &str {
        self.output.as_deref().unwrap_or(&self.experiment)
    }

    fn problem_spec(&self) -> Result<&ProblemSpec> {
        self.problem.as_ref().ok_or_else(|| Error::config("problem", "required for this command"))
    }
}

// ---------------------------------------------------------------------------
// Solve

/// Outcome of one `solve` run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub seed: u64,
    pub gammas: Vec<Vec<f64>>,
    pub betas: Vec<Vec<f64>>,
    pub value: f64,
    pub ground_prob: f64,
    pub approx_ratio: Option<f64>,
    #[serde(skip)]
    pub record: ExperimentRecord,
    #[serde(skip)]
    pub state: Option<Statevector>,
    #[serde(skip)]
    pub problem: Option<DiagonalProblem>,
}

/// Runs the manifest's solver for one seed.
pub fn solve_one(m: &Manifest, seed: u64) -> Result<SolveReport> {
    let started = Instant::now();
    let spec = m.problem_spec()?;
    let problem = spec.build(seed)?;
    let n = problem.n();
    let lap = m.laplacian.build(n)?;
    let initial = m.initial.build(n)?;
    let search = SearchConfig {
        seed,
        ..m.search.clone()
    };
    let (schedule, value, state) = match &m.solver {
        SolverSpec::Qaoa {
            p,
            relax_gamma,
            relax_beta,
        } => {
            let best = if *relax_gamma || *relax_beta {
                if !matches!(m.initial, InitialSpec::Plus) {
                    return Err(Error::config("initial", "relaxed schedules start from the uniform state"));
                }
                optimize_relaxed(&problem, &lap, *p, &m.objective, &search, *relax_gamma, *relax_beta)?
            } else {
                optimize_schedule_from(&problem, &lap, *p, &m.objective, &search, Some(&initial))?
            };
            let state = qaoa_state(&problem, &lap, &best.schedule, Some(&initial))?;
            (Some(best.schedule), best.value, state)
        }
        SolverSpec::Fixed { gammas, betas } => {
            let schedule = Schedule::standard(gammas, betas)?;
            let state = qaoa_state(&problem, &lap, &schedule, Some(&initial))?;
            let value = evaluate(&m.objective, &state, &problem, Some(&lap))?;
            (Some(schedule), value, state)
        }
        SolverSpec::Rounding {
            p,
            beta_r,
            n_f,
            reoptimize,
        } => {
            let cfg = RoundingConfig {
                beta_r: *beta_r,
                n_f: n_f.unwrap_or(n),
                reoptimize: *reoptimize,
                seed,
            };
            let out = iterated_rounding(&problem, qaoa_solver(*p, m.objective.clone(), search), &cfg)?;
            let state = Statevector::basis_state(n, out.assignment)?;
            (None, out.value, state)
        }
        SolverSpec::Classical { restarts } => {
            let out = classical_restart_baseline(&problem, *restarts, seed)?;
            let record = ExperimentRecord {
                experiment: m.experiment.clone(),
                family: problem.meta().family.clone(),
                n,
                p: 0,
                j2: spec.j2(),
                seed,
                solver: m.solver.name().into(),
                objective: "multilinear".into(),
                value: out.successes as f64,
                ground_prob: out.success_fraction,
                approx_ratio: None,
                wall_ms: started.elapsed().as_secs_f64() * 1e3,
            };
            return Ok(SolveReport {
                seed,
                gammas: vec![],
                betas: vec![],
                value: record.value,
                ground_prob: record.ground_prob,
                approx_ratio: None,
                record,
                state: None,
                problem: Some(problem),
            });
        }
    };
    let mean_value = evaluate(&Objective::Mean, &state, &problem, None)?;
    let ground_prob = state.ground_state_mass(problem.dense())?;
    let approx_ratio = approximation_ratio(&problem, mean_value);
    let record = ExperimentRecord {
        experiment: m.experiment.clone(),
        family: problem.meta().family.clone(),
        n,
        p: m.solver.rounds(),
        j2: spec.j2(),
        seed,
        solver: m.solver.name().into(),
        objective: m.objective.name(),
        value,
        ground_prob,
        approx_ratio,
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    let (gammas, betas) = schedule.map(|s| (s.gammas, s.betas)).unwrap_or_default();
    Ok(SolveReport {
        seed,
        gammas,
        betas,
        value,
        ground_prob,
        approx_ratio,
        record,
        state: Some(state),
        problem: Some(problem),
    })
}

fn fmt_angles(rows: &[Vec<f64>]) -> String {
    let parts: Vec<String> = rows
        .iter()
        .map(|r| {
            let xs: Vec<String> = r.iter().map(|x| format!("{x:.6}")).collect();
            if xs.len() == 1 {
                xs[0].clone()
            } else {
                format!("[{}]", xs.join(","))
            }
        })
        .collect();
    format!("[{}]", parts.join(","))
}

fn write_outputs(dir: &Path, stem: &str, records: &[ExperimentRecord], manifest: &Manifest) -> Result<()> {
    fs::create_dir_all(dir)?;
    experiments::write_csv(records, fs::File::create(dir.join(format!("{stem}.csv")))?)?;
    write_json(&dir.join(format!("{stem}.json")), manifest)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Numeric(e.to_string()))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

pub fn cmd_solve(m: &Manifest, run: &RunArgs, out: &mut impl Write) -> Result<Vec<SolveReport>> {
    let reports: Vec<SolveReport> = m.seeds(run.seed).iter().map(|&s| solve_one(m, s)).collect::<Result<_>>()?;
    for r in &reports {
        let ratio = r.approx_ratio.map_or("undefined".to_string(), |x| format!("{x:.9}"));
        writeln!(
            out,
            "seed={} gammas={} betas={} value={:.9} ground_prob={:.9} approx_ratio={}",
            r.seed,
            fmt_angles(&r.gammas),
            fmt_angles(&r.betas),
            r.value,
            r.ground_prob,
            ratio
        )?;
    }
    if let Some(dir) = &run.out {
        let records: Vec<ExperimentRecord> = reports.iter().map(|r| r.record.clone()).collect();
        write_outputs(dir, m.stem(), &records, m)?;
    }
    Ok(reports)
}

// ---------------------------------------------------------------------------
// Sample

/// Draws `shots` outcomes from the measurement distribution of `state`.
pub fn sample_outcomes(state: &Statevector, shots: usize, seed: u64) -> Vec<u64> {
    let mut cdf = state.probabilities();
    let mut acc = 0.0;
    for p in cdf.iter_mut() {
        acc += *p;
        *p = acc;
    }
    let mut rng = task_rng(seed, 1);
    (0..shots)
        .map(|_| {
            let u = rng.random::<f64>() * acc;
            cdf.partition_point(|&c| c <= u).min(cdf.len() - 1) as u64
        })
        .collect()
}

/// Bitstring with qubit 0 first.
pub fn bitstring(z: u64, n: usize) -> String {
    (0..n).map(|i| if z >> i & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn cmd_sample(m: &Manifest, run: &RunArgs, shots: Option<usize>, out: &mut impl Write) -> Result<()> {
    let shots = shots.or(m.shots).unwrap_or(1000);
    let seed = m.seeds(run.seed)[0];
    let report = solve_one(m, seed)?;
    let (state, problem) = match (&report.state, &report.problem) {
        (Some(s), Some(p)) => (s, p),
        _ => return Err(Error::config("solver", "sampling needs a solver that returns a state")),
    };
    let mut text = String::new();
    if shots > 0 {
        text.push_str("shot,bitstring,value\n");
        for (k, z) in sample_outcomes(state, shots, seed).into_iter().enumerate() {
            text.push_str(&format!("{k},{},{}\n", bitstring(z, problem.n()), problem.value(z)));
        }
    }
    match &run.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(format!("{}_samples.csv", m.stem())), &text)?;
            write_json(&dir.join(format!("{}.json", m.stem())), m)?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Reproduce

fn experiment_config<T: DeserializeOwned + Default>(m: &Manifest) -> Result<T> {
    match &m.config {
        None => Ok(T::default()),
        Some(v) => parse_json(&v.to_string(), "config"),
    }
}

fn shift(seeds: &mut [u64], base: Option<u64>) {
    if let Some(b) = base {
        for (k, s) in seeds.iter_mut().enumerate() {
            *s = b + k as u64;
        }
    }
}

fn csv_file(dir: &Path, name: &str, records: &[ExperimentRecord]) -> Result<()> {
    experiments::write_csv(records, fs::File::create(dir.join(name))?)
}

fn rows_file<T: Serialize>(dir: &Path, name: &str, rows: &[T]) -> Result<()> {
    experiments::write_rows(rows, fs::File::create(dir.join(name))?)
}

/// Runs experiment `id`. `--seed S` renumbers every seed list to start at S.
/// Returns the names of the files written.
pub fn cmd_reproduce(id: Option<&str>, manifest: Option<&Manifest>, run: &RunArgs) -> Result<Vec<String>> {
    let owned;
    let m = match (manifest, id) {
        (Some(m), _) => m,
        (None, Some(id)) => {
            let text = pinned_manifest(id).ok_or_else(|| {
                Error::config("id", format!("unknown experiment `{id}`, expected one of {}", EXPERIMENT_IDS.join(", ")))
            })?;
            owned = Manifest::parse(text)?;
            &owned
        }
        (None, None) => return Err(Error::config("id", "give an experiment id or --manifest")),
    };
    if let (Some(id), Some(_)) = (id, manifest) {
        if id != m.experiment {
            return Err(Error::config("experiment", format!("manifest runs `{}`, not `{id}`", m.experiment)));
        }
    }
    experiments::check_id(&m.experiment)?;
    let dir = run.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    let seed = run.seed;
    let stem = m.stem().to_string();
    let mut written = Vec::new();
    let mut effective = m.clone();

    // Parse the whole configuration before running anything.
    macro_rules! config {
        ($t:ty) => {{
            let c: $t = experiment_config(m)?;
            c
        }};
    }
    let mut write = |name: String| written.push(name);
    fs::create_dir_all(&dir)?;
    match m.experiment.as_str() {
        "fig2" => {
            let mut c = config!(experiments::Fig2Config);
            if let Some(s) = seed {
                c.first_seed = s;
            }
            let out = experiments::run_fig2_table(&c)?;
            rows_file(&dir, &format!("{stem}_table.csv"), &out.table)?;
            rows_file(&dir, &format!("{stem}_decay.csv"), &out.decay)?;
            csv_file(&dir, &format!("{stem}.csv"), &out.records)?;
            write(format!("{stem}_table.csv"));
            write(format!("{stem}_decay.csv"));
            write(format!("{stem}.csv"));
            effective.config = Some(serde_json::to_value(&c).expect("config serializes"));
        }
        "scale" => {
            let mut c = config!(experiments::ScaleConfig);
            c.search.validate().map_err(|e| at("config.search", e))?;
            shift(&mut c.seeds, seed);
            let records = experiments::run_scale_sweep(&c)?;
            csv_file(&dir, &format!("{stem}.csv"), &records)?;
            write(format!("{stem}.csv"));
            effective.config = Some(serde_json::to_value(&c).expect("config serializes"));
        }
        "ce" => {
            let mut c = config!(experiments::ScaleConfig);
            c.search.validate().map_err(|e| at("config.search", e))?;
            shift(&mut c.seeds, seed);
            let out = experiments::run_ce_baseline(&c)?;
            csv_file(&dir, &format!("{stem}.csv"), &out.records)?;
            rows_file(&dir, &format!("{stem}_crossings.csv"), &out.crossings)?;
            write(format!("{stem}.csv"));
            write(format!("{stem}_crossings.csv"));
            effective.config = Some(serde_json::to_value(&c).expect("config serializes"));
        }
        "freedom" => {
            let mut c = config!(experiments::RelaxationConfig);
            c.search.validate().map_err(|e| at("config.search", e))?;
            shift(&mut c.seeds, seed);
            let records = experiments::run_relaxation_compare(&c)?;
            csv_file(&dir, &format!("{stem}.csv"), &records)?;
            write(format!("{stem}.csv"));
            effective.config = Some(serde_json::to_value(&c).expect("config serializes"));
        }
        "shadow" => {
            let c = config!(experiments::ShadowConfig);
            c.search.validate().map_err(|e| at("config.search", e))?;
            let records = experiments::run_shadow_defect(&c)?;
            csv_file(&dir, &format!("{stem}.csv"), &records)?;
            write(format!("{stem}.csv"));
            effective.config = Some(serde_json::to_value(&c).expect("config serializes"));
        }
        "proxy" => {
            let mut c = config!(experiments::ProxyConfig);
            c.search.validate().map_err(|e| at("config.search", e))?;
            if let Some(s) = seed {
                c.seed = s;
            }
            let records = experiments::run_improvement_proxy(&c)?;
            csv_file(&dir, &format!("{stem}.csv"), &records)?;
            write(format!("{stem}.csv"));
            effective.config = Some(serde_json::to_value(&c).expect("config serializes"));
        }
        "rounding" => {
            let mut c = config!(experiments::RoundingExperimentConfig);
            c.search.validate().map_err(|e| at("config.search", e))?;
            shift(&mut c.seeds, seed);
            let records = experiments::run_rounding(&c)?;
            csv_file(&dir, &format!("{stem}.csv"), &records)?;
            write(format!("{stem}.csv"));
            for &j2 in &c.j2_list {
                let part: Vec<ExperimentRecord> = records.iter().filter(|r| r.j2 == Some(j2)).cloned().collect();
                let name = format!("{stem}_j2_{j2}.csv");
                csv_file(&dir, &name, &part)?;
                write(name);
            }
            effective.config = Some(serde_json::to_value(&c).expect("config serializes"));
        }
        _ => unreachable!("checked above"),
    }
    write_json(&dir.join(format!("{stem}.json")), &effective)?;
    written.push(format!("{stem}.json"));
    Ok(written)
}

// ---------------------------------------------------------------------------

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qlow: {e}");
            e.exit_code()
        }
    }
}

fn set_jobs(run: &RunArgs) -> Result<()> {
    if let Some(j) = run.jobs {
        if j == 0 {
            return Err(Error::config("--jobs", "must be at least 1"));
        }
        // A second initialization in the same process is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Solve(a) => {
            let m = Manifest::load(&a.manifest)?;
            set_jobs(&a.run)?;
            cmd_solve(&m, &a.run, &mut out)?;
        }
        Command::Sample { common, shots } => {
            let m = Manifest::load(&common.manifest)?;
            set_jobs(&common.run)?;
            cmd_sample(&m, &common.run, shots, &mut out)?;
        }
        Command::Reproduce { id, common } => {
            let m = common.manifest.as_deref().map(Manifest::load).transpose()?;
            set_jobs(&common.run)?;
            for name in cmd_reproduce(id.as_deref(), m.as_ref(), &common.run)? {
                writeln!(out, "{name}")?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_manifests_parse() {
        for id in EXPERIMENT_IDS {
            let m = Manifest::parse(pinned_manifest(id).unwrap()).unwrap();
            assert_eq!(m.experiment, id);
        }
        assert!(pinned_manifest("fig9").is_none());
    }

    #[test]
    fn path_of_failure() {
        let err = Manifest::parse(r#"{"experiment":"x","problem":{"family":"ramp","n":"six"}}"#).unwrap_err();
        match err {
            Error::Config { path, .. } => assert_eq!(path, "problem"),
            other => panic!("{other}"),
        }
        let err = Manifest::parse(r#"{"experiment":"x","search":{"resolution":1}}"#).unwrap_err();
        assert!(matches!(err, Error::Config { ref path, .. } if path == "search"), "{err}");
        let err = Manifest::parse(r#"{"experiment":"x","search":{"resolutoin":8}}"#).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn sampler_statistics() {
        let basis = Statevector::basis_state(3, 5).unwrap();
        assert!(sample_outcomes(&basis, 100, 1).iter().all(|&z| z == 5));
        assert!(sample_outcomes(&basis, 0, 1).is_empty());
        assert_eq!(bitstring(5, 4), "1010");
        let plus = Statevector::plus_state(3).unwrap();
        let shots = 10_000;
        let mut counts = [0usize; 8];
        for z in sample_outcomes(&plus, shots, 7) {
            counts[z as usize] += 1;
        }
        let e = shots as f64 / 8.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
        // 7 degrees of freedom, 99.9% quantile.
        assert!(chi2 < 24.32, "chi2 = {chi2}");
    }
}
