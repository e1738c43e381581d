//! Variational objectives and diagnostics computed from states.

use serde::{Deserialize, Serialize};

use crate::ansatz::{qaoa_state, Schedule};
use crate::error::{Error, Result};
use crate::laplacian::Laplacian;
use crate::optimize::{optimize_schedule_from, SearchConfig};
use crate::problems::DiagonalProblem;
use crate::state::{walsh_hadamard, Statevector};

/// A scalar to minimize over measurement outcomes of a state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Objective {
    /// `<f>`.
    Mean,
    /// `-(1/eta) log <exp(-eta f)>`, a soft minimum over the support.
    Gibbs { eta: f64 },
    /// Mean of the lowest `alpha` fraction of the outcome distribution.
    Cvar { alpha: f64 },
    /// `k1 * inner + k2 * <L_G>`.
    Combined { k1: f64, k2: f64, inner: Box<Objective> },
}

impl Objective {
    pub fn validate(&self) -> Result<()> {
        match self {
            Objective::Mean => Ok(()),
            Objective::Gibbs { eta } if *eta > 0.0 && eta.is_finite() => Ok(()),
            Objective::Gibbs { eta } => Err(Error::domain(format!("gibbs eta must be positive, got {eta}"))),
            Objective::Cvar { alpha } if *alpha > 0.0 && *alpha <= 1.0 => Ok(()),
            Objective::Cvar { alpha } => Err(Error::domain(format!("cvar alpha must lie in (0, 1], got {alpha}"))),
            Objective::Combined { k1, k2, inner } => {
                if !(k1.is_finite() && k2.is_finite()) {
                    return Err(Error::domain("combined weights must be finite"));
                }
                inner.validate()
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Objective::Mean => "mean".into(),
            Objective::Gibbs { eta } => format!("gibbs({eta})"),
            Objective::Cvar { alpha } => format!("cvar({alpha})"),
            Objective::Combined { k1, k2, inner } => format!("combined({k1},{k2},{})", inner.name()),
        }
    }
}

/// Evaluates `obj` on the outcome distribution of `state`.
pub fn evaluate(obj: &Objective, state: &Statevector, problem: &DiagonalProblem, lap: Option<&Laplacian>) -> Result<f64> {
    let probs = state.probabilities();
    if probs.len() != problem.dense().len() {
        return Err(Error::Shape {
            expected: problem.dense().len(),
            got: probs.len(),
        });
    }
    evaluate_distribution(obj, &probs, problem.dense().values(), state, lap)
}

fn evaluate_distribution(
    obj: &Objective,
    probs: &[f64],
    values: &[f64],
    state: &Statevector,
    lap: Option<&Laplacian>,
) -> Result<f64> {
    match obj {
        Objective::Mean => Ok(probs.iter().zip(values).map(|(p, f)| p * f).sum()),
        Objective::Gibbs { eta } => gibbs(probs, values, *eta),
        Objective::Cvar { alpha } => Ok(cvar(probs, values, *alpha)),
        Objective::Combined { k1, k2, inner } => {
            let lap = lap.ok_or_else(|| Error::Mode("combined objective needs a Laplacian".into()))?;
            let inner = evaluate_distribution(inner, probs, values, state, Some(lap))?;
            Ok(k1 * inner + k2 * lap.kinetic_energy(state)?)
        }
    }
}

fn gibbs(probs: &[f64], values: &[f64], eta: f64) -> Result<f64> {
    let shift = probs
        .iter()
        .zip(values)
        .filter(|(p, _)| **p > 0.0)
        .map(|(_, f)| *f)
        .fold(f64::INFINITY, f64::min);
    if !shift.is_finite() {
        return Err(Error::Numeric("gibbs objective of an empty distribution".into()));
    }
    let sum: f64 = probs
        .iter()
        .zip(values)
        .map(|(p, f)| p * (-eta * (f - shift)).exp())
        .sum();
    let value = shift - sum.ln() / eta;
    if !value.is_finite() {
        return Err(Error::Numeric(format!("gibbs objective overflowed at eta={eta}")));
    }
    Ok(value)
}

fn cvar(probs: &[f64], values: &[f64], alpha: f64) -> f64 {
    let mut pairs: Vec<(f64, f64)> = values.iter().copied().zip(probs.iter().copied()).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut mass = 0.0;
    let mut total = 0.0;
    for (f, p) in pairs {
        if mass >= alpha {
            break;
        }
        let take = p.min(alpha - mass);
        total += take * f;
        mass += take;
    }
    total / mass
}

/// `sum_t coeff_t <prod_{i in t} Z_i>` from the Walsh transform of the
/// probabilities, without touching the dense value table.
pub fn termwise_mean(state: &Statevector, problem: &DiagonalProblem) -> Result<f64> {
    if state.n() != problem.n() {
        return Err(Error::Shape {
            expected: problem.dense().len(),
            got: state.dim(),
        });
    }
    let mut correlators = state.probabilities();
    walsh_hadamard(&mut correlators);
    Ok(problem
        .terms()
        .iter()
        .map(|t| t.coeff * correlators[t.mask() as usize])
        .sum())
}

/// `(f_max - mean) / (f_max - f_min)`, `None` for a constant problem.
pub fn approximation_ratio(problem: &DiagonalProblem, mean_value: f64) -> Option<f64> {
    let span = problem.f_max() - problem.f_min();
    (span > 0.0).then(|| (problem.f_max() - mean_value) / span)
}

/// The normalized one-round gain in solution overlap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImprovementProxy {
    pub value: f64,
    pub initial_overlap: f64,
    pub final_overlap: f64,
    pub gamma: f64,
    pub beta: f64,
    /// True when the minimizer is degenerate and the total ground-state mass
    /// stands in for the single-string overlap.
    pub used_ground_mass: bool,
}

/// Optimizes one round from `initial` for the mean and reports
/// `(|c_f|^2 - |c_0|^2) / (1 - 2^{-n})`.
pub fn improvement_proxy(
    initial: &Statevector,
    problem: &DiagonalProblem,
    lap: &Laplacian,
    config: &SearchConfig,
) -> Result<ImprovementProxy> {
    let found = optimize_schedule_from(problem, lap, 1, &Objective::Mean, config, Some(initial))?;
    let schedule: &Schedule = &found.schedule;
    let final_state = qaoa_state(problem, lap, schedule, Some(initial))?;
    let c0 = initial.ground_state_mass(problem.dense())?;
    let cf = final_state.ground_state_mass(problem.dense())?;
    let scale = 1.0 - (0.5f64).powi(problem.n() as i32);
    Ok(ImprovementProxy {
        value: (cf - c0) / scale,
        initial_overlap: c0,
        final_overlap: cf,
        gamma: schedule.gammas[0][0],
        beta: schedule.betas[0][0],
        used_ground_mass: problem.ground_states().len() > 1,
    })
}
