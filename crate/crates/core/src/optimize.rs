//! Parameter search: grid scan plus local refinement, ramp initialization
//! for deeper circuits, greedy per-qubit mixer branches, iterated rounding and
//! the classical product-ansatz restart baseline.

use std::f64::consts::{FRAC_PI_4, PI};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ansatz::{multilinear_value, qaoa_state, Schedule};
use crate::error::{Error, Result};
use crate::laplacian::Laplacian;
use crate::objectives::{evaluate, Objective};
use crate::problems::{task_rng, DiagonalProblem};
use crate::state::Statevector;

/// Derivative-free local search method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalMethod {
    /// Coordinate polling with step halving.
    Compass,
    /// Nelder–Mead simplex.
    Simplex,
}

/// Grid and local-search settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    pub gamma_range: [f64; 2],
    pub beta_range: [f64; 2],
    /// Grid points per axis.
    pub resolution: usize,
    pub local: LocalMethod,
    pub initial_step: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Number of best grid points refined locally.
    pub top_k: usize,
    /// Extra local searches from uniformly random starting points.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            gamma_range: [-PI, PI],
            beta_range: [0.0, PI],
            resolution: 64,
            local: LocalMethod::Compass,
            initial_step: 0.1,
            tolerance: 1e-6,
            max_iterations: 500,
            top_k: 5,
            restarts: 0,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::domain("grid resolution must be at least 2"));
        }
        for (name, [lo, hi]) in [("gamma_range", self.gamma_range), ("beta_range", self.beta_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::domain(format!("{name} must be a finite increasing interval")));
            }
        }
        if !(self.initial_step > 0.0 && self.tolerance > 0.0) {
            return Err(Error::domain("local search steps must be positive"));
        }
        Ok(())
    }

    fn axis(range: [f64; 2], resolution: usize, k: usize) -> f64 {
        range[0] + (range[1] - range[0]) * k as f64 / (resolution - 1) as f64
    }
}

/// Result of a local search.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

/// Compass search: poll `+-step` along each coordinate, move on the first
/// improvement, halve the step when a full sweep fails.
pub fn compass_search(f: impl Fn(&[f64]) -> f64, x0: &[f64], step: f64, tol: f64, max_iter: usize) -> LocalResult {
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut evaluations = 1;
    let mut step = step;
    let mut iter = 0;
    while step > tol && iter < max_iter {
        iter += 1;
        let mut improved = false;
        for i in 0..x.len() {
            for sign in [1.0, -1.0] {
                let mut trial = x.clone();
                trial[i] += sign * step;
                let v = f(&trial);
                evaluations += 1;
                if v < fx {
                    x = trial;
                    fx = v;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    LocalResult {
        x,
        value: fx,
        evaluations,
    }
}

/// Nelder–Mead with standard coefficients, started from an axis-aligned
/// simplex of edge `step`.
pub fn nelder_mead(f: impl Fn(&[f64]) -> f64, x0: &[f64], step: f64, tol: f64, max_iter: usize) -> LocalResult {
    let d = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = f(&x);
        simplex.push((x, v));
    }
    let mut evaluations = d + 1;
    let point = |c: &[f64], toward: &[f64], t: f64| -> Vec<f64> {
        c.iter().zip(toward).map(|(a, b)| a + t * (b - a)).collect()
    };
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[d].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        if spread.abs() <= tol && size <= tol {
            break;
        }
        let centroid: Vec<f64> = (0..d)
            .map(|k| simplex[..d].iter().map(|(x, _)| x[k]).sum::<f64>() / d as f64)
            .collect();
        let worst = simplex[d].clone();
        let reflected = point(&centroid, &worst.0, -1.0);
        let fr = f(&reflected);
        evaluations += 1;
        if fr < simplex[0].1 {
            let expanded = point(&centroid, &worst.0, -2.0);
            let fe = f(&expanded);
            evaluations += 1;
            simplex[d] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (reflected, fr);
        } else {
            let contracted = if fr < worst.1 {
                point(&centroid, &reflected, 0.5)
            } else {
                point(&centroid, &worst.0, 0.5)
            };
            let fc = f(&contracted);
            evaluations += 1;
            if fc < worst.1.min(fr) {
                simplex[d] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let x = point(&best, &entry.0, 0.5);
                    let v = f(&x);
                    *entry = (x, v);
                }
                evaluations += d;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    LocalResult { x, value, evaluations }
}

fn local_search(config: &SearchConfig, f: impl Fn(&[f64]) -> f64, x0: &[f64]) -> LocalResult {
    match config.local {
        LocalMethod::Compass => compass_search(f, x0, config.initial_step, config.tolerance, config.max_iterations),
        LocalMethod::Simplex => nelder_mead(f, x0, config.initial_step, config.tolerance, config.max_iterations),
    }
}

/// An optimized schedule and its objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimized {
    pub schedule: Schedule,
    pub value: f64,
    pub evaluations: usize,
}

struct Landscape<'a> {
    problem: &'a DiagonalProblem,
    lap: &'a Laplacian,
    objective: &'a Objective,
    initial: Option<&'a Statevector>,
}

impl Landscape<'_> {
    fn value(&self, schedule: &Schedule) -> Result<f64> {
        let state = qaoa_state(self.problem, self.lap, schedule, self.initial)?;
        evaluate(self.objective, &state, self.problem, Some(self.lap))
    }

    /// Objective as a plain function for the local searches; failures map
    /// to `+inf` after the starting point has been checked.
    fn scalar(&self, schedule: &Schedule) -> f64 {
        self.value(schedule).unwrap_or(f64::INFINITY)
    }
}

/// Grid scan plus local refinement from the uniform superposition.
pub fn optimize_schedule(
    problem: &DiagonalProblem,
    lap: &Laplacian,
    p: usize,
    objective: &Objective,
    config: &SearchConfig,
) -> Result<Optimized> {
    optimize_schedule_from(problem, lap, p, objective, config, None)
}

/// [`optimize_schedule`] from an arbitrary initial state.
///
/// For `p = 1` the full grid is scanned and the best `top_k` points refined.
/// Deeper schedules are grown one round at a time: depth `d` refines both the
/// ramp `gamma_k = (k/d) g`, `beta_k = (1 - (k-1)/d) b` built from the best
/// single-round point `(g, b)` and the depth `d-1` optimum with an idle round
/// appended, so the optimum never worsens with depth.
pub fn optimize_schedule_from(
    problem: &DiagonalProblem,
    lap: &Laplacian,
    p: usize,
    objective: &Objective,
    config: &SearchConfig,
    initial: Option<&Statevector>,
) -> Result<Optimized> {
    if p == 0 {
        return Err(Error::domain("at least one round is required"));
    }
    config.validate()?;
    objective.validate()?;
    let land = Landscape {
        problem,
        lap,
        objective,
        initial,
    };
    let single = optimize_single_round(&land, config)?;
    if p == 1 {
        return Ok(single);
    }
    let (g, b) = (single.schedule.gammas[0][0], single.schedule.betas[0][0]);
    let mut rng = task_rng(config.seed, u64::MAX);
    let mut evaluations = single.evaluations;
    let mut best = single;
    for depth in 2..=p {
        let d = depth as f64;
        let gammas: Vec<f64> = (1..=depth).map(|k| k as f64 / d * g).collect();
        let betas: Vec<f64> = (1..=depth).map(|k| (1.0 - (k - 1) as f64 / d) * b).collect();
        let mut starts = vec![Schedule::standard(&gammas, &betas)?, pad_round(&best.schedule)?];
        if depth == p {
            for _ in 0..config.restarts {
                let gs: Vec<f64> = (0..p).map(|_| rng.random_range(config.gamma_range[0]..config.gamma_range[1])).collect();
                let bs: Vec<f64> = (0..p).map(|_| rng.random_range(config.beta_range[0]..config.beta_range[1])).collect();
                starts.push(Schedule::standard(&gs, &bs)?);
            }
        }
        best = refine_many(&land, config, starts)?;
        evaluations += best.evaluations;
    }
    best.evaluations = evaluations;
    Ok(best)
}

/// Appends an idle round, which leaves the state unchanged.
fn pad_round(s: &Schedule) -> Result<Schedule> {
    let mut gammas: Vec<f64> = s.gammas.iter().map(|r| r[0]).collect();
    let mut betas: Vec<f64> = s.betas.iter().map(|r| r[0]).collect();
    gammas.push(0.0);
    betas.push(0.0);
    Schedule::standard(&gammas, &betas)
}

fn optimize_single_round(land: &Landscape<'_>, config: &SearchConfig) -> Result<Optimized> {
    let res = config.resolution;
    land.value(&Schedule::single(config.gamma_range[0], config.beta_range[0]))?;
    let grid: Vec<(f64, Schedule)> = (0..res * res)
        .into_par_iter()
        .map(|k| {
            let s = Schedule::single(
                SearchConfig::axis(config.gamma_range, res, k / res),
                SearchConfig::axis(config.beta_range, res, k % res),
            );
            (land.scalar(&s), s)
        })
        .collect();
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| grid[a].0.total_cmp(&grid[b].0).then(a.cmp(&b)));
    let mut starts: Vec<Schedule> = order.iter().take(config.top_k.max(1)).map(|&k| grid[k].1.clone()).collect();
    let mut rng = task_rng(config.seed, u64::MAX - 1);
    for _ in 0..config.restarts {
        starts.push(Schedule::single(
            rng.random_range(config.gamma_range[0]..config.gamma_range[1]),
            rng.random_range(config.beta_range[0]..config.beta_range[1]),
        ));
    }
    let mut best = refine_many(land, config, starts)?;
    let grid_best = &grid[order[0]];
    if grid_best.0 <= best.value {
        best.schedule = grid_best.1.clone();
        best.value = grid_best.0;
    }
    best.evaluations += grid.len();
    Ok(best)
}

/// Refines every start in parallel and keeps the best (earliest on ties).
fn refine_many(land: &Landscape<'_>, config: &SearchConfig, starts: Vec<Schedule>) -> Result<Optimized> {
    let results: Vec<Optimized> = starts
        .into_par_iter()
        .map(|start| refine(land, config, &start))
        .collect();
    let evaluations = results.iter().map(|r| r.evaluations).sum();
    let mut best = results
        .into_iter()
        .reduce(|a, b| if b.value < a.value { b } else { a })
        .ok_or_else(|| Error::domain("no starting points"))?;
    best.evaluations = evaluations;
    Ok(best)
}

fn refine(land: &Landscape<'_>, config: &SearchConfig, start: &Schedule) -> Optimized {
    let x0 = start.to_flat();
    let r = local_search(config, |x| land.scalar(&start.with_flat(x)), &x0);
    Optimized {
        schedule: start.with_flat(&r.x),
        value: r.value,
        evaluations: r.evaluations,
    }
}

/// Local refinement of an arbitrary (possibly relaxed) starting schedule.
pub fn refine_schedule(
    problem: &DiagonalProblem,
    lap: &Laplacian,
    objective: &Objective,
    config: &SearchConfig,
    start: &Schedule,
    initial: Option<&Statevector>,
) -> Result<Optimized> {
    config.validate()?;
    let land = Landscape {
        problem,
        lap,
        objective,
        initial,
    };
    land.value(start)?;
    Ok(refine(&land, config, start))
}

/// Optimizes the standard schedule, widens it to the requested relaxed shape
/// and refines all angles jointly, so the result is never worse than the
/// standard optimum.
pub fn optimize_relaxed(
    problem: &DiagonalProblem,
    lap: &Laplacian,
    p: usize,
    objective: &Objective,
    config: &SearchConfig,
    gamma_relaxed: bool,
    beta_relaxed: bool,
) -> Result<Optimized> {
    let base = optimize_schedule(problem, lap, p, objective, config)?;
    if !gamma_relaxed && !beta_relaxed {
        return Ok(base);
    }
    let start = base
        .schedule
        .relaxed(gamma_relaxed, beta_relaxed, problem.terms().len(), problem.n());
    let mut refined = refine_schedule(problem, lap, objective, config, &start, None)?;
    refined.evaluations += base.evaluations;
    Ok(refined)
}

/// Outcome of the greedy per-qubit mixer search.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchResult {
    /// Per-qubit mixer angle, each `pi/4` or `3pi/4`.
    pub betas: Vec<f64>,
    pub schedule: Schedule,
    pub value: f64,
}

/// Best phase angles for fixed per-qubit mixer angles on the unit hypercube.
pub fn optimize_gammas(
    problem: &DiagonalProblem,
    betas: &[f64],
    p: usize,
    objective: &Objective,
    config: &SearchConfig,
) -> Result<Optimized> {
    config.validate()?;
    let n = problem.n();
    if betas.len() != n {
        return Err(Error::Shape { expected: n, got: betas.len() });
    }
    let lap = Laplacian::hypercube(n);
    let land = Landscape {
        problem,
        lap: &lap,
        objective,
        initial: None,
    };
    let build = |gammas: &[f64]| Schedule {
        gammas: gammas.iter().map(|&g| vec![g]).collect(),
        betas: vec![betas.to_vec(); gammas.len()],
        gamma_relaxed: false,
        beta_relaxed: true,
    };
    land.value(&build(&vec![0.0; p]))?;
    let res = config.resolution;
    let grid: Vec<(f64, f64)> = (0..res)
        .into_par_iter()
        .map(|k| {
            let g = SearchConfig::axis(config.gamma_range, res, k);
            (land.scalar(&build(&[g])), g)
        })
        .collect();
    let mut order: Vec<usize> = (0..res).collect();
    order.sort_by(|&a, &b| grid[a].0.total_cmp(&grid[b].0).then(a.cmp(&b)));
    let pf = p as f64;
    let starts: Vec<Vec<f64>> = order
        .iter()
        .take(config.top_k.max(1))
        .map(|&k| (1..=p).map(|r| r as f64 / pf * grid[k].1).collect())
        .collect();
    let results: Vec<LocalResult> = starts
        .into_par_iter()
        .map(|x0| local_search(config, |x| land.scalar(&build(x)), &x0))
        .collect();
    let evaluations = res + results.iter().map(|r| r.evaluations).sum::<usize>();
    let best = results
        .into_iter()
        .reduce(|a, b| if b.value < a.value { b } else { a })
        .expect("at least one start");
    Ok(Optimized {
        schedule: build(&best.x),
        value: best.value,
        evaluations,
    })
}

/// Greedy search over per-qubit mixer angles in `{pi/4, 3pi/4}`: starting
/// from all `pi/4`, each qubit in turn keeps `3pi/4` only if that strictly
/// improves the objective (with phase angles re-optimized per assignment).
pub fn greedy_beta_branch(
    problem: &DiagonalProblem,
    p: usize,
    objective: &Objective,
    config: &SearchConfig,
    passes: usize,
) -> Result<BranchResult> {
    let n = problem.n();
    let mut betas = vec![FRAC_PI_4; n];
    let mut best = optimize_gammas(problem, &betas, p, objective, config)?;
    for _ in 0..passes.max(1) {
        let mut changed = false;
        for q in 0..n {
            let mut trial = betas.clone();
            trial[q] = if trial[q] == FRAC_PI_4 { 3.0 * FRAC_PI_4 } else { FRAC_PI_4 };
            let candidate = optimize_gammas(problem, &trial, p, objective, config)?;
            if candidate.value < best.value - 1e-12 {
                betas = trial;
                best = candidate;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(BranchResult {
        betas,
        schedule: best.schedule,
        value: best.value,
    })
}

/// A solver's answer for one (sub-)problem.
#[derive(Debug, Clone)]
pub struct Solved {
    pub state: Statevector,
    pub schedule: Option<Schedule>,
}

/// A QAOA solver on the unit hypercube for use with [`iterated_rounding`].
/// With a warm schedule it only evaluates the state.
pub fn qaoa_solver(
    p: usize,
    objective: Objective,
    config: SearchConfig,
) -> impl Fn(&DiagonalProblem, Option<&Schedule>) -> Result<Solved> {
    move |problem, warm| {
        let lap = Laplacian::hypercube(problem.n());
        let schedule = match warm {
            Some(s) => s.clone(),
            None => optimize_schedule(problem, &lap, p, &objective, &config)?.schedule,
        };
        let state = qaoa_state(problem, &lap, &schedule, None)?;
        Ok(Solved {
            state,
            schedule: Some(schedule),
        })
    }
}

/// Iterated rounding settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoundingConfig {
    /// Inverse temperature of the variable-selection softmax.
    pub beta_r: f64,
    /// Maximum number of variables to freeze.
    pub n_f: usize,
    /// Re-optimize the solver on every sub-problem (otherwise reuse the
    /// first schedule).
    #[serde(default = "default_true")]
    pub reoptimize: bool,
    #[serde(default)]
    pub seed: u64,
}

fn default_true() -> bool {
    true
}

/// One solver call inside the rounding loop.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundingStep {
    /// Variables frozen before this solver call.
    pub frozen: usize,
    /// Probability that measuring the solver state, completed by the frozen
    /// assignment, yields a minimizer of the original problem.
    pub success_probability: f64,
    /// Original indices of the unfrozen qubits.
    pub residual_qubits: Vec<usize>,
    /// `<z_i>` of the unfrozen qubits.
    pub marginals: Vec<f64>,
    /// The variable frozen after this call and its value.
    pub chosen: Option<(usize, bool)>,
}

/// Final assignment and per-iteration trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundingOutcome {
    pub assignment: u64,
    pub value: f64,
    pub is_ground_state: bool,
    pub trace: Vec<RoundingStep>,
}

/// Repeatedly solves, samples a variable with probability proportional to
/// `exp(beta_r |<z_i> - 1/2|)`, freezes it to its closer value (fair coin at
/// exactly 1/2) and folds it into the problem. Residual variables are read
/// from the most probable string of the last solver state.
pub fn iterated_rounding<F>(problem: &DiagonalProblem, solver: F, config: &RoundingConfig) -> Result<RoundingOutcome>
where
    F: Fn(&DiagonalProblem, Option<&Schedule>) -> Result<Solved>,
{
    let n = problem.n();
    if config.n_f > n {
        return Err(Error::domain(format!("n_f={} exceeds n={n}", config.n_f)));
    }
    if !(config.beta_r >= 0.0) {
        return Err(Error::domain("beta_r must be non-negative"));
    }
    let mut rng = task_rng(config.seed, 0);
    let mut frozen: Vec<(usize, bool)> = Vec::new();
    let mut residual = problem.clone();
    let mut qubits: Vec<usize> = (0..n).collect();
    let mut warm: Option<Schedule> = None;
    let mut trace = Vec::new();
    loop {
        let solved = solver(&residual, if config.reoptimize { None } else { warm.as_ref() })?;
        if warm.is_none() {
            warm = solved.schedule.clone();
        }
        let base = frozen.iter().fold(0u64, |z, &(q, b)| z | (b as u64) << q);
        let lift = |y: u64| {
            qubits
                .iter()
                .enumerate()
                .fold(base, |z, (k, &q)| z | (y >> k & 1) << q)
        };
        let success_probability = solved
            .state
            .probabilities()
            .iter()
            .enumerate()
            .filter(|(y, _)| problem.is_ground_state(lift(*y as u64)))
            .map(|(_, p)| p)
            .sum();
        let marginals = solved.state.marginals();
        let mut step = RoundingStep {
            frozen: frozen.len(),
            success_probability,
            residual_qubits: qubits.clone(),
            marginals: marginals.clone(),
            chosen: None,
        };
        if frozen.len() >= config.n_f {
            let assignment = lift(solved.state.argmax());
            trace.push(step);
            return Ok(finish(problem, assignment, trace));
        }
        let polar: Vec<f64> = marginals.iter().map(|m| (m - 0.5).abs()).collect();
        let top = polar.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = polar.iter().map(|d| (config.beta_r * (d - top)).exp()).collect();
        let total: f64 = weights.iter().sum();
        let mut u = rng.random_range(0.0..total);
        let mut k = weights.len() - 1;
        for (i, w) in weights.iter().enumerate() {
            if u < *w {
                k = i;
                break;
            }
            u -= w;
        }
        let value = match marginals[k].partial_cmp(&0.5) {
            Some(std::cmp::Ordering::Greater) => true,
            Some(std::cmp::Ordering::Less) => false,
            _ => rng.random::<bool>(),
        };
        step.chosen = Some((qubits[k], value));
        trace.push(step);
        frozen.push((qubits[k], value));
        match problem.restrict(&frozen)? {
            Some((sub, map)) => {
                residual = sub;
                qubits = map;
            }
            None => {
                let assignment = frozen.iter().fold(0u64, |z, &(q, b)| z | (b as u64) << q);
                return Ok(finish(problem, assignment, trace));
            }
        }
    }
}

fn finish(problem: &DiagonalProblem, assignment: u64, trace: Vec<RoundingStep>) -> RoundingOutcome {
    RoundingOutcome {
        assignment,
        value: problem.value(assignment),
        is_ground_state: problem.is_ground_state(assignment),
        trace,
    }
}

/// Outcome of the classical product-ansatz baseline.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineOutcome {
    pub restarts: usize,
    pub successes: usize,
    pub success_fraction: f64,
}

/// Minimizes the multilinear extension over product states
/// `x_i = sin^2 theta_i` by compass search from uniform random angles in
/// `[0, pi)`; a restart succeeds when the rounded optimum is a minimizer.
pub fn classical_restart_baseline(problem: &DiagonalProblem, restarts: usize, seed: u64) -> Result<BaselineOutcome> {
    let n = problem.n();
    let objective = |theta: &[f64]| {
        let x: Vec<f64> = theta.iter().map(|t| t.sin().powi(2)).collect();
        multilinear_value(problem, &x).unwrap_or(f64::INFINITY)
    };
    let hits: Vec<bool> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = task_rng(seed, r as u64);
            let theta0: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..PI)).collect();
            let best = compass_search(objective, &theta0, 0.25, 1e-6, 500);
            let z = best
                .x
                .iter()
                .enumerate()
                .fold(0u64, |z, (i, t)| if t.sin().powi(2) > 0.5 { z | 1 << i } else { z });
            problem.is_ground_state(z)
        })
        .collect();
    let successes = hits.iter().filter(|&&h| h).count();
    Ok(BaselineOutcome {
        restarts,
        successes,
        success_fraction: if restarts == 0 { 0.0 } else { successes as f64 / restarts as f64 },
    })
}
