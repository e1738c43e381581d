//! Graph Laplacians on bitstring space and their exact evolutions.
//!
//! Evolution always applies `exp(-i beta Lbar)` with `Lbar = -L_G`. For the
//! weighted hypercube the degree term is dropped, `Lbar = sum_i b_i X_i`; for
//! the complete graph `Lbar = P_+`; for custom graphs and ball cuts
//! `Lbar = A - D` on the active vertices. Kinetic energies use the positive
//! semidefinite `L_G` including the degree term.

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::rng_for;
use crate::state::{check_qubits, Statevector};

/// Largest qubit count accepted for explicit (custom or cut) graphs.
pub const SPARSE_MAX_QUBITS: usize = 16;

/// Active vertex count up to which explicit graphs are diagonalized densely;
/// larger graphs use a Lanczos exponential.
pub const DENSE_EIGEN_LIMIT: usize = 1024;

/// Tolerance of the Krylov exponential.
pub const KRYLOV_TOLERANCE: f64 = 1e-10;

/// An explicit weighted graph on the `2^n` bitstrings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "GraphDoc")]
pub struct SparseGraph {
    n: usize,
    edges: Vec<(u64, u64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    weights: Vec<f64>,
    #[serde(skip)]
    cache: OnceLock<Arc<Operator>>,
}

#[derive(Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<(u64, u64)>,
    #[serde(default)]
    weights: Vec<f64>,
}

impl TryFrom<GraphDoc> for SparseGraph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Self> {
        SparseGraph::new(doc.n, doc.edges, doc.weights)
    }
}

impl PartialEq for SparseGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.weights == other.weights
    }
}

impl SparseGraph {
    /// `weights` may be empty for a unit-weight graph.
    pub fn new(n: usize, edges: Vec<(u64, u64)>, weights: Vec<f64>) -> Result<Self> {
        let graph = Self {
            n,
            edges,
            weights,
            cache: OnceLock::new(),
        };
        graph.validate()?;
        Ok(graph)
    }

    /// The hypercube with edge weight `b[i]` along direction `i`.
    pub fn hypercube(b: &[f64]) -> Result<Self> {
        let n = b.len();
        check_qubits(n)?;
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for z in 0..1u64 << n {
            for (i, &w) in b.iter().enumerate() {
                if z >> i & 1 == 0 {
                    edges.push((z, z | 1 << i));
                    weights.push(w);
                }
            }
        }
        Self::new(n, edges, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    pub fn weight(&self, k: usize) -> f64 {
        self.weights.get(k).copied().unwrap_or(1.0)
    }

    fn validate(&self) -> Result<()> {
        check_qubits(self.n)?;
        if self.n > SPARSE_MAX_QUBITS {
            return Err(Error::Resource(format!(
                "explicit graphs are limited to {SPARSE_MAX_QUBITS} qubits, got {}",
                self.n
            )));
        }
        if !self.weights.is_empty() && self.weights.len() != self.edges.len() {
            return Err(Error::Shape {
                expected: self.edges.len(),
                got: self.weights.len(),
            });
        }
        if let Some(w) = self.weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::domain(format!("edge weight {w} must be finite and non-negative")));
        }
        let dim = 1u64 << self.n;
        for &(u, v) in &self.edges {
            if u >= dim || v >= dim {
                return Err(Error::Index {
                    index: u.max(v),
                    n: self.n,
                });
            }
            if u == v {
                return Err(Error::domain(format!("self-loop at vertex {u}")));
            }
        }
        Ok(())
    }

    fn operator(&self) -> Arc<Operator> {
        self.cache
            .get_or_init(|| {
                let active: Vec<u64> = (0..1u64 << self.n).collect();
                let edges = self
                    .edges
                    .iter()
                    .enumerate()
                    .map(|(k, &(u, v))| (u, v, self.weight(k)));
                Arc::new(Operator::build(self.n, active, edges))
            })
            .clone()
    }
}

/// The graph induced on a Hamming ball of an inner hypercube or custom graph.
#[derive(Debug, Clone)]
pub struct BallCut {
    inner: Box<Laplacian>,
    center: u64,
    radius: usize,
    cache: OnceLock<Arc<Operator>>,
}

impl PartialEq for BallCut {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner && self.center == other.center && self.radius == other.radius
    }
}

impl BallCut {
    pub fn inner(&self) -> &Laplacian {
        &self.inner
    }

    pub fn center(&self) -> u64 {
        self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn contains(&self, z: u64) -> bool {
        ((z ^ self.center).count_ones() as usize) <= self.radius
    }

    fn operator(&self) -> Arc<Operator> {
        self.cache
            .get_or_init(|| {
                let n = self.inner.qubits().expect("validated inner graph");
                let active: Vec<u64> = (0..1u64 << n).filter(|&z| self.contains(z)).collect();
                let keep = |&(u, v, _): &(u64, u64, f64)| self.contains(u) && self.contains(v);
                let op = match self.inner.as_ref() {
                    Laplacian::WeightedHypercube { b } => {
                        let edges: Vec<(u64, u64, f64)> = active
                            .iter()
                            .flat_map(|&z| {
                                b.iter().enumerate().filter_map(move |(i, &w)| {
                                    (z >> i & 1 == 0).then_some((z, z | 1 << i, w))
                                })
                            })
                            .filter(keep)
                            .collect();
                        Operator::build(n, active, edges.into_iter())
                    }
                    Laplacian::CustomSparse(g) => {
                        let edges: Vec<(u64, u64, f64)> = g
                            .edges
                            .iter()
                            .enumerate()
                            .map(|(k, &(u, v))| (u, v, g.weight(k)))
                            .filter(keep)
                            .collect();
                        Operator::build(n, active, edges.into_iter())
                    }
                    _ => unreachable!("validated inner graph"),
                };
                Arc::new(op)
            })
            .clone()
    }
}

/// A graph Laplacian over bitstring space.
#[derive(Debug, Clone, PartialEq)]
pub enum Laplacian {
    /// `Lbar = sum_i b_i X_i`.
    WeightedHypercube { b: Vec<f64> },
    /// `Lbar = P_+ = |+><+|`, the complete graph normalized by `2^n`.
    CompleteGraph,
    /// `L = D - A` of an explicit graph.
    CustomSparse(SparseGraph),
    /// The Laplacian of the subgraph induced on a Hamming ball.
    BallCut(BallCut),
}

impl Laplacian {
    /// The standard hypercube on `n` qubits.
    pub fn hypercube(n: usize) -> Self {
        Laplacian::WeightedHypercube { b: vec![1.0; n] }
    }

    pub fn weighted_hypercube(b: Vec<f64>) -> Result<Self> {
        if let Some(w) = b.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::domain(format!("hypercube weight {w} must be finite and non-negative")));
        }
        check_qubits(b.len())?;
        Ok(Laplacian::WeightedHypercube { b })
    }

    pub fn ball_cut(inner: Laplacian, center: u64, radius: usize) -> Result<Self> {
        let n = match &inner {
            Laplacian::WeightedHypercube { b } => b.len(),
            Laplacian::CustomSparse(g) => g.n,
            _ => {
                return Err(Error::Mode(
                    "ball cuts need a hypercube or custom inner graph".into(),
                ))
            }
        };
        if n > SPARSE_MAX_QUBITS {
            return Err(Error::Resource(format!(
                "ball cuts are limited to {SPARSE_MAX_QUBITS} qubits, got {n}"
            )));
        }
        if radius > n {
            return Err(Error::domain(format!("radius {radius} exceeds n={n}")));
        }
        if center >> n != 0 {
            return Err(Error::Index { index: center, n });
        }
        Ok(Laplacian::BallCut(BallCut {
            inner: Box::new(inner),
            center,
            radius,
            cache: OnceLock::new(),
        }))
    }

    /// Qubit count fixed by the graph, `None` for the complete graph.
    pub fn qubits(&self) -> Option<usize> {
        match self {
            Laplacian::WeightedHypercube { b } => Some(b.len()),
            Laplacian::CompleteGraph => None,
            Laplacian::CustomSparse(g) => Some(g.n),
            Laplacian::BallCut(c) => c.inner.qubits(),
        }
    }

    pub fn hypercube_weights(&self) -> Option<&[f64]> {
        match self {
            Laplacian::WeightedHypercube { b } => Some(b),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Laplacian::WeightedHypercube { .. } => "hypercube",
            Laplacian::CompleteGraph => "complete",
            Laplacian::CustomSparse(_) => "sparse",
            Laplacian::BallCut(_) => "ball_cut",
        }
    }

    fn check_state(&self, state: &Statevector) -> Result<()> {
        match self.qubits() {
            Some(n) if n != state.n() => Err(Error::Shape {
                expected: 1 << n,
                got: state.dim(),
            }),
            _ => Ok(()),
        }
    }

    /// Applies `exp(-i beta Lbar)` in place.
    pub fn evolve(&self, state: &mut Statevector, beta: f64) -> Result<()> {
        self.check_state(state)?;
        if beta == 0.0 {
            return Ok(());
        }
        match self {
            Laplacian::WeightedHypercube { b } => {
                let angles: Vec<f64> = b.iter().map(|w| beta * w).collect();
                rotate_x(state, &angles)?;
            }
            Laplacian::CompleteGraph => {
                let amps = state.amps_mut();
                let root = (amps.len() as f64).sqrt();
                let overlap: Complex64 = amps.iter().sum::<Complex64>() / root;
                let shift = (Complex64::new(0.0, -beta).exp() - 1.0) * overlap / root;
                for a in amps.iter_mut() {
                    *a += shift;
                }
            }
            Laplacian::CustomSparse(g) => g.operator().evolve(state, beta)?,
            Laplacian::BallCut(c) => c.operator().evolve(state, beta)?,
        }
        state.enforce_norm();
        Ok(())
    }

    /// `<psi| L_G |psi>`, non-negative.
    pub fn kinetic_energy(&self, state: &Statevector) -> Result<f64> {
        self.check_state(state)?;
        let amps = state.amps();
        Ok(match self {
            Laplacian::WeightedHypercube { b } => b
                .iter()
                .enumerate()
                .map(|(i, &w)| w * (1.0 - expectation_x(amps, i)))
                .sum(),
            Laplacian::CompleteGraph => {
                let overlap: Complex64 = amps.iter().sum::<Complex64>() / (amps.len() as f64).sqrt();
                1.0 - overlap.norm_sqr()
            }
            Laplacian::CustomSparse(g) => g.operator().dirichlet_energy(amps),
            Laplacian::BallCut(c) => c.operator().dirichlet_energy(amps),
        })
    }
}

/// `<X_i>` for qubit `i`.
pub(crate) fn expectation_x(amps: &[Complex64], i: usize) -> f64 {
    let bit = 1usize << i;
    let mut total = 0.0;
    for z in 0..amps.len() {
        if z & bit == 0 {
            total += 2.0 * (amps[z].conj() * amps[z | bit]).re;
        }
    }
    total
}

/// Applies `prod_i exp(-i theta_i X_i)`.
pub fn rotate_x(state: &mut Statevector, angles: &[f64]) -> Result<()> {
    if angles.len() != state.n() {
        return Err(Error::Shape {
            expected: state.n(),
            got: angles.len(),
        });
    }
    let amps = state.amps_mut();
    for (i, &theta) in angles.iter().enumerate() {
        if theta == 0.0 {
            continue;
        }
        let (s, c) = theta.sin_cos();
        let minus_is = Complex64::new(0.0, -s);
        let h = 1usize << i;
        for block in amps.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = c * x + minus_is * y;
                *b = c * y + minus_is * x;
            }
        }
    }
    Ok(())
}

/// `Lbar = A - D` restricted to a set of active vertices.
#[derive(Debug)]
struct Operator {
    dim: usize,
    active: Vec<u64>,
    diag: Vec<f64>,
    offsets: Vec<usize>,
    neighbours: Vec<(usize, f64)>,
    spectral: Option<(DVector<f64>, DMatrix<f64>)>,
}

impl Operator {
    fn build(n: usize, active: Vec<u64>, edges: impl Iterator<Item = (u64, u64, f64)>) -> Self {
        let dim = 1usize << n;
        let mut local = vec![usize::MAX; dim];
        for (k, &z) in active.iter().enumerate() {
            local[z as usize] = k;
        }
        let m = active.len();
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
        let mut diag = vec![0.0; m];
        for (u, v, w) in edges {
            let (a, b) = (local[u as usize], local[v as usize]);
            adjacency[a].push((b, w));
            adjacency[b].push((a, w));
            diag[a] -= w;
            diag[b] -= w;
        }
        let mut offsets = Vec::with_capacity(m + 1);
        let mut neighbours = Vec::new();
        offsets.push(0);
        for row in adjacency {
            neighbours.extend(row);
            offsets.push(neighbours.len());
        }
        let mut op = Self {
            dim,
            active,
            diag,
            offsets,
            neighbours,
            spectral: None,
        };
        if m <= DENSE_EIGEN_LIMIT {
            let mut h = DMatrix::<f64>::zeros(m, m);
            for a in 0..m {
                h[(a, a)] = op.diag[a];
                for &(b, w) in op.row(a) {
                    h[(a, b)] += w;
                }
            }
            let eig = SymmetricEigen::new(h);
            op.spectral = Some((eig.eigenvalues, eig.eigenvectors));
        }
        op
    }

    fn row(&self, a: usize) -> &[(usize, f64)] {
        &self.neighbours[self.offsets[a]..self.offsets[a + 1]]
    }

    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        for a in 0..x.len() {
            let mut acc = x[a] * self.diag[a];
            for &(b, w) in self.row(a) {
                acc += x[b] * w;
            }
            y[a] = acc;
        }
    }

    /// Gershgorin bound on the spectral radius.
    fn spectral_bound(&self) -> f64 {
        (0..self.diag.len())
            .map(|a| self.diag[a].abs() + self.row(a).iter().map(|(_, w)| w.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn evolve(&self, state: &mut Statevector, beta: f64) -> Result<()> {
        if state.dim() != self.dim {
            return Err(Error::Shape {
                expected: self.dim,
                got: state.dim(),
            });
        }
        let amps = state.amps_mut();
        let x: Vec<Complex64> = self.active.iter().map(|&z| amps[z as usize]).collect();
        let y = match &self.spectral {
            Some((values, vectors)) => spectral_exp(values, vectors, &x, beta),
            None => krylov_exp(|v, out| self.apply(v, out), &x, beta, self.spectral_bound())?,
        };
        for (&z, v) in self.active.iter().zip(y) {
            amps[z as usize] = v;
        }
        Ok(())
    }

    fn dirichlet_energy(&self, amps: &[Complex64]) -> f64 {
        let mut total = 0.0;
        for (a, &u) in self.active.iter().enumerate() {
            for &(b, w) in self.row(a) {
                if a < b {
                    total += w * (amps[u as usize] - amps[self.active[b] as usize]).norm_sqr();
                }
            }
        }
        total
    }
}

fn spectral_exp(values: &DVector<f64>, vectors: &DMatrix<f64>, x: &[Complex64], beta: f64) -> Vec<Complex64> {
    let re = DVector::from_iterator(x.len(), x.iter().map(|c| c.re));
    let im = DVector::from_iterator(x.len(), x.iter().map(|c| c.im));
    let cr = vectors.tr_mul(&re);
    let ci = vectors.tr_mul(&im);
    let mut rot_re = DVector::zeros(x.len());
    let mut rot_im = DVector::zeros(x.len());
    for k in 0..x.len() {
        let phase = Complex64::new(0.0, -beta * values[k]).exp();
        let c = Complex64::new(cr[k], ci[k]) * phase;
        rot_re[k] = c.re;
        rot_im[k] = c.im;
    }
    let yr = vectors * rot_re;
    let yi = vectors * rot_im;
    yr.iter().zip(yi.iter()).map(|(&r, &i)| Complex64::new(r, i)).collect()
}

const KRYLOV_DIM: usize = 40;

/// Largest `|step| * spectral radius` attempted in one Krylov step.
const KRYLOV_MAX_PHASE: f64 = 8.0;

/// `exp(-i beta H) x` for real symmetric `H` given by `apply`, via Lanczos
/// with full reorthogonalization. Steps are capped so that `|step| * rho`
/// stays moderate and halved until the a posteriori error estimate is below
/// [`KRYLOV_TOLERANCE`] with a safety factor.
fn krylov_exp(
    apply: impl Fn(&[Complex64], &mut [Complex64]),
    x: &[Complex64],
    beta: f64,
    rho: f64,
) -> Result<Vec<Complex64>> {
    let mut current = x.to_vec();
    let mut remaining = beta;
    let mut step = if rho * beta.abs() > KRYLOV_MAX_PHASE {
        beta.signum() * KRYLOV_MAX_PHASE / rho
    } else {
        beta
    };
    let mut steps = 0usize;
    while remaining.abs() > 0.0 {
        if step.abs() > remaining.abs() {
            step = remaining;
        }
        let tol = 1e-2 * KRYLOV_TOLERANCE * (step / beta).abs();
        match lanczos_step(&apply, &current, step, tol) {
            Some(next) => {
                current = next;
                remaining -= step;
                steps += 1;
            }
            None => {
                step /= 2.0;
                if step.abs() < beta.abs() * 1e-8 {
                    return Err(Error::Numeric("Krylov exponential failed to converge".into()));
                }
            }
        }
        if steps > 1_000_000 {
            return Err(Error::Numeric("Krylov exponential needed too many steps".into()));
        }
    }
    Ok(current)
}

fn lanczos_step(
    apply: &impl Fn(&[Complex64], &mut [Complex64]),
    x: &[Complex64],
    tau: f64,
    tol: f64,
) -> Option<Vec<Complex64>> {
    let norm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Some(x.to_vec());
    }
    let dim = x.len();
    let mut basis: Vec<Vec<Complex64>> = vec![x.iter().map(|c| c / norm).collect()];
    let mut alpha = Vec::new();
    let mut off = Vec::new();
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    let mut residual = 0.0;
    for j in 0..KRYLOV_DIM.min(dim) {
        apply(&basis[j], &mut w);
        let a: f64 = basis[j].iter().zip(&w).map(|(v, u)| (v.conj() * u).re).sum();
        alpha.push(a);
        for v in &basis {
            let proj: Complex64 = v.iter().zip(&w).map(|(p, q)| p.conj() * q).sum();
            for (q, p) in w.iter_mut().zip(v) {
                *q -= proj * p;
            }
        }
        let b = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        residual = b;
        if b < 1e-13 || j + 1 == KRYLOV_DIM.min(dim) {
            break;
        }
        off.push(b);
        basis.push(w.iter().map(|c| c / b).collect());
    }
    let m = alpha.len();
    let mut t = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        t[(k, k)] = alpha[k];
        if k + 1 < m {
            t[(k, k + 1)] = off[k];
            t[(k + 1, k)] = off[k];
        }
    }
    let eig = SymmetricEigen::new(t);
    let coeffs: Vec<Complex64> = (0..m)
        .map(|r| {
            (0..m)
                .map(|k| {
                    let q = &eig.eigenvectors;
                    Complex64::new(0.0, -tau * eig.eigenvalues[k]).exp() * q[(r, k)] * q[(0, k)]
                })
                .sum()
        })
        .collect();
    let error = norm * residual * coeffs[m - 1].norm();
    if residual >= 1e-13 && error > tol {
        return None;
    }
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (v, &c) in basis.iter().zip(&coeffs) {
        for (o, p) in out.iter_mut().zip(v) {
            *o += c * norm * p;
        }
    }
    Some(out)
}

/// Equal positive amplitudes on the Hamming ball `B(center, radius)`.
pub fn ball_uniform_state(n: usize, center: u64, radius: usize) -> Result<Statevector> {
    check_qubits(n)?;
    if radius > n {
        return Err(Error::domain(format!("radius {radius} exceeds n={n}")));
    }
    if center >> n != 0 {
        return Err(Error::Index { index: center, n });
    }
    let amps = (0..1u64 << n)
        .map(|z| {
            let inside = ((z ^ center).count_ones() as usize) <= radius;
            Complex64::new(if inside { 1.0 } else { 0.0 }, 0.0)
        })
        .collect();
    Statevector::from_amplitudes(amps)
}

/// Equal positive amplitudes on every string of the given Hamming weight.
pub fn hamming_shell_state(n: usize, weight: usize) -> Result<Statevector> {
    check_qubits(n)?;
    if weight > n {
        return Err(Error::domain(format!("weight {weight} exceeds n={n}")));
    }
    let amps = (0..1u64 << n)
        .map(|z| Complex64::new(if z.count_ones() as usize == weight { 1.0 } else { 0.0 }, 0.0))
        .collect();
    Statevector::from_amplitudes(amps)
}

/// Multiplies every nonzero amplitude by an independent uniform phase.
pub fn randomize_phases(state: &Statevector, seed: u64) -> Statevector {
    let mut rng = rng_for(seed);
    let mut out = state.clone();
    for a in out.amps_mut() {
        if *a != Complex64::new(0.0, 0.0) {
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            *a *= Complex64::from_polar(1.0, theta);
        }
    }
    out
}

/// Strings reachable from `center` within `radius` flips.
pub fn ball_vertices(n: usize, center: u64, radius: usize) -> HashSet<u64> {
    (0..1u64 << n)
        .filter(|&z| ((z ^ center).count_ones() as usize) <= radius)
        .collect()
}
