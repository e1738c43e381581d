//! Data-generating pipelines. Every run is deterministic given its config;
//! independent tasks fan out over rayon and are collected in input order.

use std::f64::consts::FRAC_PI_4;
use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{self, DistributionTag};
use crate::ansatz::{qaoa_state, Schedule};
use crate::error::{Error, Result};
use crate::laplacian::{ball_uniform_state, hamming_shell_state, randomize_phases, Laplacian};
use crate::objectives::{approximation_ratio, evaluate, improvement_proxy, Objective};
use crate::optimize::{
    classical_restart_baseline, iterated_rounding, optimize_schedule, optimize_schedule_from, qaoa_solver,
    refine_schedule, RoundingConfig, SearchConfig,
};
use crate::problems::{self, DiagonalProblem};
use crate::state::Statevector;

/// Column order of every experiment CSV.
pub const CSV_HEADER: [&str; 12] = [
    "experiment",
    "family",
    "n",
    "p",
    "j2",
    "seed",
    "solver",
    "objective",
    "value",
    "ground_prob",
    "approx_ratio",
    "wall_ms",
];

/// One solver run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub family: String,
    pub n: usize,
    pub p: usize,
    pub j2: Option<f64>,
    pub seed: u64,
    pub solver: String,
    pub objective: String,
    pub value: f64,
    pub ground_prob: f64,
    /// `None` when the problem is constant.
    pub approx_ratio: Option<f64>,
    pub wall_ms: f64,
}

/// Writes records under [`CSV_HEADER`].
pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// CSV text with the wall-time column blanked, for reproducibility checks.
pub fn csv_without_timing(records: &[ExperimentRecord]) -> Result<String> {
    let stripped: Vec<ExperimentRecord> = records
        .iter()
        .map(|r| ExperimentRecord { wall_ms: 0.0, ..r.clone() })
        .collect();
    let mut buf = Vec::new();
    write_csv(&stripped, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv is utf-8"))
}

struct Run<'a> {
    experiment: &'a str,
    problem: &'a DiagonalProblem,
    p: usize,
    j2: Option<f64>,
    seed: u64,
}

impl Run<'_> {
    fn record(&self, solver: &str, objective: &str, value: f64, state: &Statevector, started: Instant) -> Result<ExperimentRecord> {
        let mean = evaluate(&Objective::Mean, state, self.problem, None)?;
        Ok(ExperimentRecord {
            experiment: self.experiment.to_string(),
            family: self.problem.meta().family.clone(),
            n: self.problem.n(),
            p: self.p,
            j2: self.j2,
            seed: self.seed,
            solver: solver.to_string(),
            objective: objective.to_string(),
            value,
            ground_prob: state.ground_state_mass(self.problem.dense())?,
            approx_ratio: approximation_ratio(self.problem, mean),
            wall_ms: started.elapsed().as_secs_f64() * 1e3,
        })
    }
}

fn collect<T: Send>(items: Vec<Result<T>>) -> Result<Vec<T>> {
    items.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Single-spin table

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig2Config {
    pub n: usize,
    /// Instances per distribution, seeded `first_seed..first_seed + seeds`.
    pub seeds: u64,
    pub first_seed: u64,
    /// Sweep rate of the annealing row.
    pub anneal_rate: f64,
    /// Sizes for the Gaussian success-probability decay annotation.
    pub decay_sizes: Vec<usize>,
}

impl Default for Fig2Config {
    fn default() -> Self {
        Self {
            n: 8,
            seeds: 10_000,
            first_seed: 0,
            anneal_rate: 1.0,
            decay_sizes: vec![4, 8],
        }
    }
}

/// One table row: closed forms plus simulated per-spin averages.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig2Row {
    pub distribution: String,
    pub gamma: f64,
    /// Absent for the annealing row.
    pub beta: Option<f64>,
    pub c_m: f64,
    pub overlap: f64,
    pub f_star: f64,
    pub ratio: f64,
    pub sim_c_m: Option<f64>,
    pub sim_c_m_stderr: Option<f64>,
    pub sim_overlap: Option<f64>,
    pub sim_ratio: Option<f64>,
}

/// Probability that every spin of a size-`n` Gaussian instance lands in its
/// lower level: closed form `O^n` against the simulated mean.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayRow {
    pub n: usize,
    pub analytic: f64,
    pub simulated: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig2Output {
    pub table: Vec<Fig2Row>,
    pub decay: Vec<DecayRow>,
    pub records: Vec<ExperimentRecord>,
}

struct SpinSample {
    record: ExperimentRecord,
    per_spin_energy: f64,
    per_spin_overlap: f64,
}

fn simulate_spins(n: usize, dist: DistributionTag, seed: u64, gamma: f64, beta: f64) -> Result<SpinSample> {
    let started = Instant::now();
    let problem = problems::uncoupled_spins(n, dist, seed)?;
    let state = qaoa_state(&problem, &Laplacian::hypercube(n), &Schedule::single(gamma, beta), None)?;
    let mean = evaluate(&Objective::Mean, &state, &problem, None)?;
    let marginals = state.marginals();
    let per_spin_overlap = problem
        .terms()
        .iter()
        .map(|t| {
            let m = marginals[t.qubits[0]];
            if t.coeff > 0.0 { m } else { 1.0 - m }
        })
        .sum::<f64>()
        / n as f64;
    let run = Run {
        experiment: "fig2",
        problem: &problem,
        p: 1,
        j2: None,
        seed,
    };
    let mut record = run.record("qaoa", "mean", mean, &state, started)?;
    record.family = format!("uncoupled_{}", dist.name());
    Ok(SpinSample {
        record,
        per_spin_energy: mean / n as f64,
        per_spin_overlap,
    })
}

fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0).max(1.0);
    (mean, (var / k).sqrt())
}

/// Closed-form table rows at the optimal angles, confirmed by simulating
/// `seeds` random instances of `n` spins per distribution.
pub fn run_fig2_table(config: &Fig2Config) -> Result<Fig2Output> {
    let mut table = Vec::new();
    let mut records = Vec::new();
    for dist in DistributionTag::ALL {
        let gamma = analytic::optimal_gamma(dist);
        let beta = FRAC_PI_4;
        let stats = analytic::distribution_qaoa(dist, gamma, beta)?;
        let samples = collect(
            (config.first_seed..config.first_seed + config.seeds)
                .into_par_iter()
                .map(|seed| simulate_spins(config.n, dist, seed, gamma, beta))
                .collect(),
        )?;
        let energies: Vec<f64> = samples.iter().map(|s| s.per_spin_energy).collect();
        let overlaps: Vec<f64> = samples.iter().map(|s| s.per_spin_overlap).collect();
        let (sim_c_m, stderr) = mean_and_stderr(&energies);
        let (sim_overlap, _) = mean_and_stderr(&overlaps);
        table.push(Fig2Row {
            distribution: dist.name().to_string(),
            gamma,
            beta: Some(beta),
            c_m: stats.c_m,
            overlap: stats.overlap,
            f_star: stats.f_star,
            ratio: stats.ratio,
            sim_c_m: Some(sim_c_m),
            sim_c_m_stderr: Some(stderr),
            sim_overlap: Some(sim_overlap),
            sim_ratio: Some((-stats.f_star - sim_c_m) / (-2.0 * stats.f_star)),
        });
        records.extend(samples.into_iter().map(|s| s.record));
    }
    let lz = analytic::landau_zener(config.anneal_rate)?;
    table.push(Fig2Row {
        distribution: "annealing_gaussian".into(),
        gamma: config.anneal_rate,
        beta: None,
        c_m: lz.a_lz,
        overlap: lz.o_lz,
        f_star: analytic::distribution_f_star(DistributionTag::Gaussian),
        ratio: lz.r_lz,
        sim_c_m: None,
        sim_c_m_stderr: None,
        sim_overlap: None,
        sim_ratio: None,
    });
    let gamma = analytic::optimal_gamma(DistributionTag::Gaussian);
    let overlap = analytic::distribution_qaoa(DistributionTag::Gaussian, gamma, FRAC_PI_4)?.overlap;
    let mut decay = Vec::new();
    for &n in &config.decay_sizes {
        let probs = collect(
            (config.first_seed..config.first_seed + config.seeds)
                .into_par_iter()
                .map(|seed| simulate_spins(n, DistributionTag::Gaussian, seed, gamma, FRAC_PI_4).map(|s| s.record.ground_prob))
                .collect(),
        )?;
        decay.push(DecayRow {
            n,
            analytic: overlap.powi(n as i32),
            simulated: probs.iter().sum::<f64>() / probs.len() as f64,
        });
    }
    Ok(Fig2Output { table, decay, records })
}

/// Writes any serializable rows as CSV with a header from the field names.
pub fn write_rows<W: Write, T: Serialize>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Scale sweeps and the classical baseline

/// Coupled families with a detuned coupling `j2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScaleFamily {
    Chain,
    Grid,
    Maxcut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScaleConfig {
    pub family: ScaleFamily,
    /// Chain and MaxCut size.
    pub n: usize,
    /// Grid shape.
    pub rows: usize,
    pub cols: usize,
    /// Fraction of MaxCut edges at coupling `j2`.
    pub j2_fraction: f64,
    pub p_list: Vec<usize>,
    pub j2_list: Vec<f64>,
    pub seeds: Vec<u64>,
    pub objective: Objective,
    pub search: SearchConfig,
    /// Restarts of the classical baseline per instance.
    pub classical_restarts: usize,
}

impl Default for ScaleConfig {
    fn default() -> Self {
        Self {
            family: ScaleFamily::Grid,
            n: 12,
            rows: 3,
            cols: 4,
            j2_fraction: 0.5,
            p_list: vec![1, 2, 3],
            j2_list: vec![0.2, 0.4, 0.6, 0.8, 1.0],
            seeds: (0..20).collect(),
            objective: Objective::Mean,
            search: SearchConfig {
                resolution: 32,
                tolerance: 1e-4,
                max_iterations: 200,
                ..SearchConfig::default()
            },
            classical_restarts: 1000,
        }
    }
}

impl ScaleConfig {
    /// The instance for `(j2, seed)`; chain and grid ignore the seed.
    pub fn problem(&self, j2: f64, seed: u64) -> Result<DiagonalProblem> {
        match self.family {
            ScaleFamily::Chain => problems::chain_detuned(self.n, j2),
            ScaleFamily::Grid => problems::grid_ferromagnet_2d(self.rows, self.cols, j2),
            ScaleFamily::Maxcut => problems::maxcut_3regular(self.n, self.j2_fraction, j2, seed),
        }
    }

    fn search_for(&self, seed: u64) -> SearchConfig {
        SearchConfig {
            seed,
            ..self.search.clone()
        }
    }
}

fn qaoa_run(experiment: &str, problem: &DiagonalProblem, p: usize, j2: f64, seed: u64, objective: &Objective, search: &SearchConfig) -> Result<ExperimentRecord> {
    let started = Instant::now();
    let lap = Laplacian::hypercube(problem.n());
    let best = optimize_schedule(problem, &lap, p, objective, search)?;
    let state = qaoa_state(problem, &lap, &best.schedule, None)?;
    let run = Run {
        experiment,
        problem,
        p,
        j2: Some(j2),
        seed,
    };
    run.record("qaoa", &objective.name(), best.value, &state, started)
}

/// Optimized ground-state probability for every `(p, j2, seed)`.
pub fn run_scale_sweep(config: &ScaleConfig) -> Result<Vec<ExperimentRecord>> {
    let tasks: Vec<(usize, f64, u64)> = config
        .p_list
        .iter()
        .flat_map(|&p| config.j2_list.iter().flat_map(move |&j2| config.seeds.iter().map(move |&s| (p, j2, s))))
        .collect();
    collect(
        tasks
            .into_par_iter()
            .map(|(p, j2, seed)| {
                let problem = config.problem(j2, seed)?;
                qaoa_run("scale", &problem, p, j2, seed, &config.objective, &config.search_for(seed))
            })
            .collect(),
    )
}

/// Smallest depth at which QAOA matches the classical baseline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    pub j2: f64,
    pub seed: u64,
    pub classical: f64,
    pub crossing_p: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CeOutput {
    pub records: Vec<ExperimentRecord>,
    pub crossings: Vec<Crossing>,
}

/// Classical restart baseline against QAOA at every depth.
pub fn run_ce_baseline(config: &ScaleConfig) -> Result<CeOutput> {
    let instances: Vec<(f64, u64)> = config
        .j2_list
        .iter()
        .flat_map(|&j2| config.seeds.iter().map(move |&s| (j2, s)))
        .collect();
    let per_instance = collect(
        instances
            .into_par_iter()
            .map(|(j2, seed)| -> Result<(Vec<ExperimentRecord>, Crossing)> {
                let problem = config.problem(j2, seed)?;
                let started = Instant::now();
                let ce = classical_restart_baseline(&problem, config.classical_restarts, seed)?;
                let mut records = vec![ExperimentRecord {
                    experiment: "ce".into(),
                    family: problem.meta().family.clone(),
                    n: problem.n(),
                    p: 0,
                    j2: Some(j2),
                    seed,
                    solver: "classical".into(),
                    objective: "multilinear".into(),
                    value: ce.successes as f64,
                    ground_prob: ce.success_fraction,
                    approx_ratio: None,
                    wall_ms: started.elapsed().as_secs_f64() * 1e3,
                }];
                let mut crossing_p = None;
                for &p in &config.p_list {
                    let r = qaoa_run("ce", &problem, p, j2, seed, &config.objective, &config.search_for(seed))?;
                    if crossing_p.is_none() && r.ground_prob >= ce.success_fraction {
                        crossing_p = Some(p);
                    }
                    records.push(r);
                }
                Ok((
                    records,
                    Crossing {
                        j2,
                        seed,
                        classical: ce.success_fraction,
                        crossing_p,
                    },
                ))
            })
            .collect(),
    )?;
    let mut records = Vec::new();
    let mut crossings = Vec::new();
    for (r, c) in per_instance {
        records.extend(r);
        crossings.push(c);
    }
    Ok(CeOutput { records, crossings })
}

// ---------------------------------------------------------------------------
// Relaxed schedules

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RelaxationConfig {
    pub rows: usize,
    pub cols: usize,
    pub p: usize,
    pub j2_list: Vec<f64>,
    /// Seeds of the random restart added to the standard search.
    pub seeds: Vec<u64>,
    pub objective: Objective,
    pub search: SearchConfig,
}

impl Default for RelaxationConfig {
    fn default() -> Self {
        Self {
            rows: 3,
            cols: 4,
            p: 1,
            j2_list: vec![0.2, 0.4, 0.6, 0.8, 1.0],
            seeds: (0..20).collect(),
            objective: Objective::Mean,
            search: SearchConfig {
                resolution: 24,
                tolerance: 1e-4,
                max_iterations: 200,
                restarts: 1,
                ..SearchConfig::default()
            },
        }
    }
}

/// Standard, gamma-relaxed, beta-relaxed and fully relaxed schedules per
/// `(j2, seed)`. Relaxed searches start from the standard optimum (the fully
/// relaxed one from the gamma-relaxed optimum), so objective values are
/// ordered by construction; ground-state probabilities are not.
pub fn run_relaxation_compare(config: &RelaxationConfig) -> Result<Vec<ExperimentRecord>> {
    let tasks: Vec<(f64, u64)> = config
        .j2_list
        .iter()
        .flat_map(|&j2| config.seeds.iter().map(move |&s| (j2, s)))
        .collect();
    let nested = collect(
        tasks
            .into_par_iter()
            .map(|(j2, seed)| -> Result<Vec<ExperimentRecord>> {
                let problem = problems::grid_ferromagnet_2d(config.rows, config.cols, j2)?;
                let n = problem.n();
                let terms = problem.terms().len();
                let lap = Laplacian::hypercube(n);
                let search = SearchConfig {
                    seed,
                    ..config.search.clone()
                };
                let obj = &config.objective;
                let run = Run {
                    experiment: "freedom",
                    problem: &problem,
                    p: config.p,
                    j2: Some(j2),
                    seed,
                };
                let started = Instant::now();
                let standard = optimize_schedule(&problem, &lap, config.p, obj, &search)?;
                let state = qaoa_state(&problem, &lap, &standard.schedule, None)?;
                let mut out = vec![run.record("standard", &obj.name(), standard.value, &state, started)?];
                let started = Instant::now();
                let start = standard.schedule.relaxed(true, false, terms, n);
                let gamma = refine_schedule(&problem, &lap, obj, &search, &start, None)?;
                let state = qaoa_state(&problem, &lap, &gamma.schedule, None)?;
                out.push(run.record("gamma_relaxed", &obj.name(), gamma.value, &state, started)?);
                let started = Instant::now();
                let start = standard.schedule.relaxed(false, true, terms, n);
                let beta = refine_schedule(&problem, &lap, obj, &search, &start, None)?;
                let state = qaoa_state(&problem, &lap, &beta.schedule, None)?;
                out.push(run.record("beta_relaxed", &obj.name(), beta.value, &state, started)?);
                let started = Instant::now();
                let mut start = gamma.schedule.clone();
                start.beta_relaxed = true;
                start.betas = start.betas.iter().map(|row| vec![row[0]; n]).collect();
                let both = refine_schedule(&problem, &lap, obj, &search, &start, None)?;
                let state = qaoa_state(&problem, &lap, &both.schedule, None)?;
                out.push(run.record("both_relaxed", &obj.name(), both.value, &state, started)?);
                Ok(out)
            })
            .collect(),
    )?;
    Ok(nested.into_iter().flatten().collect())
}

// ---------------------------------------------------------------------------
// Shadow defects

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ShadowConfig {
    /// Odd sizes for the flat-landscape scan.
    pub flat_sizes: Vec<usize>,
    pub flat_resolution: usize,
    pub n: usize,
    pub radius: usize,
    /// Multiplier of the target amplitude in the initial ball state.
    pub boost: f64,
    /// Lowest Hamming weight carrying the spike (outside the ball).
    pub spike_lo: usize,
    pub spike_height: f64,
    pub eta: f64,
    pub search: SearchConfig,
}

impl Default for ShadowConfig {
    fn default() -> Self {
        Self {
            flat_sizes: vec![5, 7, 9],
            flat_resolution: 32,
            n: 8,
            radius: 5,
            boost: 4.0,
            spike_lo: 6,
            spike_height: 64.0,
            eta: 20.0,
            search: SearchConfig::default(),
        }
    }
}

/// Largest deviation of the mean over a `resolution^2` grid of angles when
/// starting from the weight-`weight` shell of the Hamming ramp.
pub fn shell_landscape_deviation(n: usize, weight: usize, resolution: usize) -> Result<f64> {
    let problem = problems::hamming_ramp(n)?;
    let lap = Laplacian::hypercube(n);
    let shell = hamming_shell_state(n, weight)?;
    let at = |g: f64, b: f64| -> Result<f64> {
        let s = qaoa_state(&problem, &lap, &Schedule::single(g, b), Some(&shell))?;
        evaluate(&Objective::Mean, &s, &problem, None)
    };
    let base = at(0.0, 0.0)?;
    let cfg = SearchConfig {
        resolution,
        ..SearchConfig::default()
    };
    let mut worst = 0.0f64;
    for i in 0..resolution {
        for j in 0..resolution {
            let g = cfg.gamma_range[0] + (cfg.gamma_range[1] - cfg.gamma_range[0]) * i as f64 / (resolution - 1) as f64;
            let b = cfg.beta_range[0] + (cfg.beta_range[1] - cfg.beta_range[0]) * j as f64 / (resolution - 1) as f64;
            worst = worst.max((at(g, b)? - base).abs());
        }
    }
    Ok(worst)
}

/// The uniform state on `B(0, radius)` with the amplitude of `|0...0>`
/// multiplied by `boost` before normalization.
pub fn boosted_ball_state(n: usize, radius: usize, boost: f64) -> Result<Statevector> {
    let ball = ball_uniform_state(n, 0, radius)?;
    let mut amps = ball.amps().to_vec();
    amps[0] *= Complex64::new(boost, 0.0);
    Statevector::from_amplitudes(amps)
}

/// Flat-landscape deviations followed by the cut/uncut comparison on the
/// ramp and on the ramp with a spike outside the ball.
pub fn run_shadow_defect(config: &ShadowConfig) -> Result<Vec<ExperimentRecord>> {
    let mut records = Vec::new();
    for &n in &config.flat_sizes {
        let started = Instant::now();
        let deviation = shell_landscape_deviation(n, n / 2, config.flat_resolution)?;
        let problem = problems::hamming_ramp(n)?;
        let shell = hamming_shell_state(n, n / 2)?;
        let mut r = Run {
            experiment: "shadow_flat",
            problem: &problem,
            p: 1,
            j2: None,
            seed: 0,
        }
        .record("landscape_scan", "mean_deviation", deviation, &shell, started)?;
        r.family = "ramp".into();
        records.push(r);
    }
    let n = config.n;
    let init = boosted_ball_state(n, config.radius, config.boost)?;
    let ramp = problems::hamming_ramp(n)?;
    let spiky = problems::spike_band(n, config.spike_lo, n, config.spike_height)?;
    let cut = Laplacian::ball_cut(Laplacian::hypercube(n), 0, config.radius)?;
    let hyper = Laplacian::hypercube(n);
    let variants: [(&str, Objective, &Laplacian); 3] = [
        ("uncut", Objective::Mean, &hyper),
        ("uncut", Objective::Gibbs { eta: config.eta }, &hyper),
        ("ball_cut", Objective::Mean, &cut),
    ];
    for (solver, objective, lap) in variants {
        for problem in [&ramp, &spiky] {
            let started = Instant::now();
            let best = optimize_schedule_from(problem, lap, 1, &objective, &config.search, Some(&init))?;
            let state = qaoa_state(problem, lap, &best.schedule, Some(&init))?;
            let mut r = Run {
                experiment: "shadow_cut",
                problem,
                p: 1,
                j2: None,
                seed: 0,
            }
            .record(solver, &objective.name(), best.value, &state, started)?;
            r.family = if std::ptr::eq(problem, &ramp) { "ramp".into() } else { "ramp_spike".into() };
            records.push(r);
        }
    }
    Ok(records)
}

// ---------------------------------------------------------------------------
// Improvement proxy

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProxyConfig {
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub search: SearchConfig,
}

impl Default for ProxyConfig {
    fn default() -> Self {
        Self {
            sizes: vec![4, 6, 8, 10, 12],
            seed: 0,
            search: SearchConfig {
                resolution: 32,
                tolerance: 1e-5,
                ..SearchConfig::default()
            },
        }
    }
}

/// Initial-state kinds of the proxy experiment: the uniform state, the
/// uniform ball of radius `n/2` around the solution, its phase-randomized
/// version, and both balls evolved under the cut Laplacian.
pub const PROXY_KINDS: [&str; 5] = ["uniform", "ball", "ball_rand", "ball_cut", "ball_rand_cut"];

/// The one-round improvement proxy on the Hamming ramp for every size and
/// state kind. `value` holds the proxy, `ground_prob` the final overlap.
pub fn run_improvement_proxy(config: &ProxyConfig) -> Result<Vec<ExperimentRecord>> {
    let tasks: Vec<(usize, &str)> = config
        .sizes
        .iter()
        .flat_map(|&n| PROXY_KINDS.iter().map(move |&k| (n, k)))
        .collect();
    collect(
        tasks
            .into_par_iter()
            .map(|(n, kind)| -> Result<ExperimentRecord> {
                let started = Instant::now();
                let problem = problems::hamming_ramp(n)?;
                let radius = n / 2;
                let ball = ball_uniform_state(n, 0, radius)?;
                let (initial, lap) = match kind {
                    "uniform" => (Statevector::plus_state(n)?, Laplacian::hypercube(n)),
                    "ball" => (ball, Laplacian::hypercube(n)),
                    "ball_rand" => (randomize_phases(&ball, config.seed), Laplacian::hypercube(n)),
                    "ball_cut" => (ball, Laplacian::ball_cut(Laplacian::hypercube(n), 0, radius)?),
                    _ => (
                        randomize_phases(&ball, config.seed),
                        Laplacian::ball_cut(Laplacian::hypercube(n), 0, radius)?,
                    ),
                };
                let proxy = improvement_proxy(&initial, &problem, &lap, &config.search)?;
                let state = qaoa_state(&problem, &lap, &Schedule::single(proxy.gamma, proxy.beta), Some(&initial))?;
                let mut r = Run {
                    experiment: "proxy",
                    problem: &problem,
                    p: 1,
                    j2: None,
                    seed: config.seed,
                }
                .record(kind, "mean", proxy.value, &state, started)?;
                r.ground_prob = proxy.final_overlap;
                Ok(r)
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Iterated rounding

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RoundingExperimentConfig {
    pub rows: usize,
    pub cols: usize,
    pub j2_list: Vec<f64>,
    pub seeds: Vec<u64>,
    pub p: usize,
    pub beta_r: f64,
    pub objective: Objective,
    pub search: SearchConfig,
}

impl Default for RoundingExperimentConfig {
    fn default() -> Self {
        Self {
            rows: 3,
            cols: 4,
            j2_list: vec![0.2, 1.0],
            seeds: (0..20).collect(),
            p: 1,
            beta_r: 10.0,
            objective: Objective::Mean,
            search: SearchConfig {
                resolution: 32,
                tolerance: 1e-4,
                max_iterations: 200,
                ..SearchConfig::default()
            },
        }
    }
}

/// Freezes every variable of the grid instance one at a time. One record per
/// solver call: `value` is the number of frozen variables and `ground_prob`
/// the probability that the completed measurement is a minimizer.
pub fn run_rounding(config: &RoundingExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    let tasks: Vec<(f64, u64)> = config
        .j2_list
        .iter()
        .flat_map(|&j2| config.seeds.iter().map(move |&s| (j2, s)))
        .collect();
    let nested = collect(
        tasks
            .into_par_iter()
            .map(|(j2, seed)| -> Result<Vec<ExperimentRecord>> {
                let started = Instant::now();
                let problem = problems::grid_ferromagnet_2d(config.rows, config.cols, j2)?;
                let rounding = RoundingConfig {
                    beta_r: config.beta_r,
                    n_f: problem.n(),
                    reoptimize: true,
                    seed,
                };
                let solver = qaoa_solver(config.p, config.objective.clone(), config.search.clone());
                let outcome = iterated_rounding(&problem, solver, &rounding)?;
                let wall = started.elapsed().as_secs_f64() * 1e3;
                Ok(outcome
                    .trace
                    .iter()
                    .map(|step| ExperimentRecord {
                        experiment: "rounding".into(),
                        family: problem.meta().family.clone(),
                        n: problem.n(),
                        p: config.p,
                        j2: Some(j2),
                        seed,
                        solver: "rounding".into(),
                        objective: config.objective.name(),
                        value: step.frozen as f64,
                        ground_prob: step.success_probability,
                        approx_ratio: None,
                        wall_ms: wall,
                    })
                    .collect())
            })
            .collect(),
    )?;
    Ok(nested.into_iter().flatten().collect())
}

/// Median of `ground_prob` per frozen count over the records of one `j2`.
pub fn median_rounding_curve(records: &[ExperimentRecord], j2: f64) -> Vec<f64> {
    let mut by_count: Vec<Vec<f64>> = Vec::new();
    for r in records.iter().filter(|r| r.j2 == Some(j2)) {
        let k = r.value as usize;
        if by_count.len() <= k {
            by_count.resize(k + 1, Vec::new());
        }
        by_count[k].push(r.ground_prob);
    }
    by_count.into_iter().map(median).collect()
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_by(|a, b| a.total_cmp(b));
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

/// Experiment ids accepted by [`Error`]-checked lookups.
pub const EXPERIMENT_IDS: [&str; 7] = ["fig2", "scale", "ce", "freedom", "shadow", "proxy", "rounding"];

pub(crate) fn check_id(id: &str) -> Result<()> {
    if EXPERIMENT_IDS.contains(&id) {
        Ok(())
    } else {
        Err(Error::config(
            "experiment",
            format!("unknown experiment `{id}`, expected one of {}", EXPERIMENT_IDS.join(", ")),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_and_optional_columns() {
        let r = ExperimentRecord {
            experiment: "x".into(),
            family: "ramp".into(),
            n: 3,
            p: 1,
            j2: None,
            seed: 7,
            solver: "qaoa".into(),
            objective: "mean".into(),
            value: 0.5,
            ground_prob: 1.0,
            approx_ratio: None,
            wall_ms: 1.25,
        };
        let mut buf = Vec::new();
        write_csv(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(lines.next().unwrap(), "x,ramp,3,1,,7,qaoa,mean,0.5,1.0,,1.25");
    }

    #[test]
    fn small_fig2_run() {
        let out = run_fig2_table(&Fig2Config {
            n: 4,
            seeds: 50,
            first_seed: 0,
            anneal_rate: 1.0,
            decay_sizes: vec![2],
        })
        .unwrap();
        assert_eq!(out.table.len(), 4);
        assert_eq!(out.records.len(), 150);
        let binary = &out.table[0];
        assert!((binary.sim_c_m.unwrap() + 1.0).abs() < 1e-9);
        assert!(out.records.iter().filter(|r| r.family == "uncoupled_binary").all(|r| (r.ground_prob - 1.0).abs() < 1e-9));
    }

    #[test]
    fn shell_landscape() {
        // <w> = n/2 - cos(2 beta) (n - 2k) / 2 for every gamma.
        assert!(shell_landscape_deviation(6, 3, 8).unwrap() < 1e-9);
        let odd = shell_landscape_deviation(5, 2, 33).unwrap();
        assert!((odd - 1.0).abs() < 1e-9, "{odd}");
    }

    #[test]
    fn rounding_median_curve() {
        let make = |j2, k: usize, g| ExperimentRecord {
            experiment: "rounding".into(),
            family: "grid".into(),
            n: 4,
            p: 1,
            j2: Some(j2),
            seed: 0,
            solver: "rounding".into(),
            objective: "mean".into(),
            value: k as f64,
            ground_prob: g,
            approx_ratio: None,
            wall_ms: 0.0,
        };
        let recs = vec![make(1.0, 0, 0.1), make(1.0, 1, 0.3), make(1.0, 0, 0.2), make(1.0, 1, 0.5), make(0.2, 0, 9.0)];
        assert_eq!(median_rounding_curve(&recs, 1.0), vec![0.15000000000000002, 0.4]);
        assert!(check_id("fig3").is_err());
    }
}
