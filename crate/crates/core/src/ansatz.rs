//! QAOA evolutions (standard and relaxed), the product ansatz and the
//! qubit mean-field evolution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laplacian::{rotate_x, Laplacian};
use crate::problems::DiagonalProblem;
use crate::state::{check_qubits, walsh_hadamard, Statevector};

/// Per-round QAOA angles.
///
/// `gammas[k]` holds one angle, or one angle per problem term when
/// `gamma_relaxed`; `betas[k]` holds one angle, or one per qubit when
/// `beta_relaxed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub gammas: Vec<Vec<f64>>,
    pub betas: Vec<Vec<f64>>,
    #[serde(default)]
    pub gamma_relaxed: bool,
    #[serde(default)]
    pub beta_relaxed: bool,
}

impl Schedule {
    /// One `(gamma, beta)` pair per round.
    pub fn standard(gammas: &[f64], betas: &[f64]) -> Result<Self> {
        let s = Self {
            gammas: gammas.iter().map(|&g| vec![g]).collect(),
            betas: betas.iter().map(|&b| vec![b]).collect(),
            gamma_relaxed: false,
            beta_relaxed: false,
        };
        s.check_rounds()?;
        Ok(s)
    }

    pub fn single(gamma: f64, beta: f64) -> Self {
        Self::standard(&[gamma], &[beta]).expect("one round")
    }

    /// Expands a standard schedule into the requested relaxed shape, copying
    /// each round's angle into every slot.
    pub fn relaxed(&self, gamma_relaxed: bool, beta_relaxed: bool, terms: usize, n: usize) -> Self {
        let widen = |rows: &[Vec<f64>], on: bool, width: usize| -> Vec<Vec<f64>> {
            rows.iter()
                .map(|r| if on { vec![r[0]; width] } else { vec![r[0]] })
                .collect()
        };
        Self {
            gammas: widen(&self.gammas, gamma_relaxed, terms),
            betas: widen(&self.betas, beta_relaxed, n),
            gamma_relaxed,
            beta_relaxed,
        }
    }

    pub fn rounds(&self) -> usize {
        self.gammas.len()
    }

    fn check_rounds(&self) -> Result<()> {
        if self.gammas.is_empty() || self.gammas.len() != self.betas.len() {
            return Err(Error::Shape {
                expected: self.gammas.len().max(1),
                got: self.betas.len(),
            });
        }
        if self.gammas.iter().chain(&self.betas).flatten().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("schedule contains non-finite angles".into()));
        }
        Ok(())
    }

    /// Checks row widths against a problem with `terms` terms on `n` qubits.
    pub fn validate(&self, terms: usize, n: usize) -> Result<()> {
        self.check_rounds()?;
        let gw = if self.gamma_relaxed { terms } else { 1 };
        let bw = if self.beta_relaxed { n } else { 1 };
        for row in &self.gammas {
            if row.len() != gw {
                return Err(Error::Shape { expected: gw, got: row.len() });
            }
        }
        for row in &self.betas {
            if row.len() != bw {
                return Err(Error::Shape { expected: bw, got: row.len() });
            }
        }
        Ok(())
    }

    /// All angles, gammas first then betas, row by row.
    pub fn to_flat(&self) -> Vec<f64> {
        self.gammas.iter().chain(&self.betas).flatten().copied().collect()
    }

    /// Inverse of [`Schedule::to_flat`] for a schedule of the same shape.
    pub fn with_flat(&self, flat: &[f64]) -> Self {
        let mut out = self.clone();
        let mut it = flat.iter().copied();
        for row in out.gammas.iter_mut().chain(out.betas.iter_mut()) {
            for v in row.iter_mut() {
                *v = it.next().expect("flat vector matches schedule shape");
            }
        }
        out
    }
}

/// `prod_k exp(-i beta_k Lbar) exp(-i gamma_k f)` applied to `initial`
/// (the uniform superposition when `None`), first round innermost.
pub fn qaoa_state(
    problem: &DiagonalProblem,
    lap: &Laplacian,
    schedule: &Schedule,
    initial: Option<&Statevector>,
) -> Result<Statevector> {
    schedule.validate(problem.terms().len(), problem.n())?;
    if schedule.beta_relaxed && lap.hypercube_weights().is_none() {
        return Err(Error::Mode("per-qubit mixer angles need a hypercube Laplacian".into()));
    }
    let mut state = match initial {
        Some(s) => {
            if s.n() != problem.n() {
                return Err(Error::Shape {
                    expected: problem.dense().len(),
                    got: s.dim(),
                });
            }
            s.clone()
        }
        None => Statevector::plus_state(problem.n())?,
    };
    let mut scratch = Vec::new();
    for (gammas, betas) in schedule.gammas.iter().zip(&schedule.betas) {
        if schedule.gamma_relaxed {
            relaxed_phase_table(problem, gammas, &mut scratch);
            state.apply_phase_values(&scratch, 1.0);
        } else {
            state.apply_phase(problem.dense(), gammas[0])?;
        }
        if schedule.beta_relaxed {
            let b = lap.hypercube_weights().expect("checked above");
            let angles: Vec<f64> = b.iter().zip(betas).map(|(w, beta)| w * beta).collect();
            rotate_x(&mut state, &angles)?;
            state.enforce_norm();
        } else {
            lap.evolve(&mut state, betas[0])?;
        }
    }
    Ok(state)
}

/// `sum_t gamma_t coeff_t prod_{i in t} Z_i` tabulated over all strings.
fn relaxed_phase_table(problem: &DiagonalProblem, gammas: &[f64], out: &mut Vec<f64>) {
    out.clear();
    out.resize(problem.dense().len(), 0.0);
    for (term, g) in problem.terms().iter().zip(gammas) {
        out[term.mask() as usize] += g * term.coeff;
    }
    walsh_hadamard(out);
}

/// Rotation angles of the product ansatz `prod_j exp(-i theta_j Y_j) |0...0>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductAngles {
    pub thetas: Vec<f64>,
}

/// `(x)_j (cos theta_j |0> + sin theta_j |1>)`.
pub fn product_state(angles: &ProductAngles) -> Result<Statevector> {
    let n = angles.thetas.len();
    check_qubits(n)?;
    let amps = (0..1u64 << n)
        .map(|z| {
            let a: f64 = angles
                .thetas
                .iter()
                .enumerate()
                .map(|(j, t)| if z >> j & 1 == 1 { t.sin() } else { t.cos() })
                .product();
            Complex64::new(a, 0.0)
        })
        .collect();
    Statevector::from_amplitudes(amps)
}

/// The multilinear extension of `f` at `x`, evaluated term by term with
/// each `Z_i` replaced by `1 - 2 x_i`.
pub fn multilinear_value(problem: &DiagonalProblem, x: &[f64]) -> Result<f64> {
    if x.len() != problem.n() {
        return Err(Error::Shape {
            expected: problem.n(),
            got: x.len(),
        });
    }
    if let Some(v) = x.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::domain(format!("multilinear argument {v} outside [0, 1]")));
    }
    Ok(problem
        .terms()
        .iter()
        .map(|t| t.coeff * t.qubits.iter().map(|&i| 1.0 - 2.0 * x[i]).product::<f64>())
        .sum())
}

/// An explicit product of single-qubit states `(a_j |0> + b_j |1>)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    qubits: Vec<[Complex64; 2]>,
}

impl ProductState {
    pub fn plus(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Ok(Self { qubits: vec![[h, h]; n] })
    }

    pub fn new(qubits: Vec<[Complex64; 2]>) -> Result<Self> {
        check_qubits(qubits.len())?;
        for (j, q) in qubits.iter().enumerate() {
            let norm = q[0].norm_sqr() + q[1].norm_sqr();
            if (norm - 1.0).abs() > 1e-10 {
                return Err(Error::domain(format!("qubit {j} has norm {norm}")));
            }
        }
        Ok(Self { qubits })
    }

    pub fn n(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubits(&self) -> &[[Complex64; 2]] {
        &self.qubits
    }

    /// `<Z_j>` for every qubit.
    pub fn z_expectations(&self) -> Vec<f64> {
        self.qubits.iter().map(|q| q[0].norm_sqr() - q[1].norm_sqr()).collect()
    }

    /// Probability that qubit `j` reads 1.
    pub fn marginals(&self) -> Vec<f64> {
        self.qubits.iter().map(|q| q[1].norm_sqr()).collect()
    }

    pub fn probability(&self, z: u64) -> f64 {
        self.qubits
            .iter()
            .enumerate()
            .map(|(j, q)| q[(z >> j & 1) as usize].norm_sqr())
            .product()
    }

    /// Total probability of the problem's minimizers.
    pub fn ground_state_mass(&self, problem: &DiagonalProblem) -> f64 {
        problem.ground_states().into_iter().map(|z| self.probability(z)).sum()
    }

    pub fn to_statevector(&self) -> Result<Statevector> {
        let amps = (0..1u64 << self.n())
            .map(|z| {
                self.qubits
                    .iter()
                    .enumerate()
                    .map(|(j, q)| q[(z >> j & 1) as usize])
                    .product()
            })
            .collect();
        Statevector::from_amplitudes(amps)
    }
}

/// The effective field on each qubit: the coefficient of `Z_j` after tracing
/// `f` against the other qubits' `<Z_i>`.
pub fn meanfield_fields(problem: &DiagonalProblem, z: &[f64]) -> Vec<f64> {
    let mut h = vec![0.0; problem.n()];
    for term in problem.terms() {
        for &j in &term.qubits {
            let others: f64 = term.qubits.iter().filter(|&&i| i != j).map(|&i| z[i]).product();
            h[j] += term.coeff * others;
        }
    }
    h
}

/// One synchronous mean-field round on a weighted hypercube: every qubit
/// sees the field computed from the pre-step state, then its own mixer.
pub fn meanfield_step(
    problem: &DiagonalProblem,
    lap: &Laplacian,
    product: &ProductState,
    gamma: f64,
    beta: f64,
) -> Result<ProductState> {
    let b = lap
        .hypercube_weights()
        .ok_or_else(|| Error::Mode("mean-field evolution needs a hypercube Laplacian".into()))?;
    if product.n() != problem.n() || b.len() != problem.n() {
        return Err(Error::Shape {
            expected: problem.n(),
            got: product.n(),
        });
    }
    let fields = meanfield_fields(problem, &product.z_expectations());
    let qubits = product
        .qubits
        .iter()
        .zip(&fields)
        .zip(b)
        .map(|((q, &h), &w)| {
            let phase = Complex64::new(0.0, -gamma * h).exp();
            let (a0, a1) = (q[0] * phase, q[1] * phase.conj());
            let (s, c) = (beta * w).sin_cos();
            let mix = Complex64::new(0.0, -s);
            [a0 * c + a1 * mix, a1 * c + a0 * mix]
        })
        .collect();
    Ok(ProductState { qubits })
}

/// Mean-field evolution of a standard schedule from `|+>^n`.
pub fn meanfield_state(problem: &DiagonalProblem, lap: &Laplacian, schedule: &Schedule) -> Result<ProductState> {
    if schedule.gamma_relaxed || schedule.beta_relaxed {
        return Err(Error::Mode("mean-field evolution takes a standard schedule".into()));
    }
    schedule.validate(problem.terms().len(), problem.n())?;
    let mut state = ProductState::plus(problem.n())?;
    for (g, b) in schedule.gammas.iter().zip(&schedule.betas) {
        state = meanfield_step(problem, lap, &state, g[0], b[0])?;
    }
    Ok(state)
}
