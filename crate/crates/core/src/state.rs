//! Dense statevectors and the primitive operations everything else composes.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default ceiling on the number of qubits of a dense state.
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Norm drift tolerated before a state is renormalized.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Two values of a phase table closer than this are treated as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

static RENORMALIZATIONS: AtomicU64 = AtomicU64::new(0);

/// Qubit cap, overridable through the `QLOW_MAX_QUBITS` environment variable.
pub fn max_qubits() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("QLOW_MAX_QUBITS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| (1..=40).contains(&v))
            .unwrap_or(DEFAULT_MAX_QUBITS)
    })
}

/// Number of times any state had to be renormalized after drifting.
pub fn renormalization_events() -> u64 {
    RENORMALIZATIONS.load(Ordering::Relaxed)
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    let max = max_qubits();
    if n == 0 || n > max {
        return Err(Error::Size { n, max });
    }
    Ok(())
}

/// `f(z)` tabulated over all `2^n` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTable {
    values: Vec<f64>,
}

impl PhaseTable {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if !values.len().is_power_of_two() {
            return Err(Error::domain(format!(
                "phase table length {} is not a power of two",
                values.len()
            )));
        }
        if let Some(z) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Numeric(format!("non-finite phase table entry at {z}")));
        }
        Ok(Self { values })
    }

    pub fn from_fn(n: usize, f: impl Fn(u64) -> f64) -> Result<Self> {
        check_qubits(n)?;
        Self::new((0..1u64 << n).map(f).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn qubits(&self) -> usize {
        self.values.len().trailing_zeros() as usize
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Every `z` whose value lies within [`DEGENERACY_TOLERANCE`] of the minimum.
    pub fn argmin_set(&self) -> Vec<u64> {
        let min = self.min();
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v <= min + DEGENERACY_TOLERANCE)
            .map(|(z, _)| z as u64)
            .collect()
    }
}

/// `2^n` complex amplitudes. Index `z` is little-endian: bit `i` is qubit `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|+>^n`, the zero-kinetic-energy state of every connected Laplacian.
    pub fn plus_state(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            n,
            amps: vec![a; dim],
        })
    }

    pub fn basis_state(n: usize, z: u64) -> Result<Self> {
        check_qubits(n)?;
        if z >> n != 0 {
            return Err(Error::Index { index: z, n });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[z as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Wraps raw amplitudes, normalizing them. Fails on the zero vector.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::domain(format!(
                "amplitude vector length {} is not a power of two",
                amps.len()
            )));
        }
        let n = amps.len().trailing_zeros() as usize;
        check_qubits(n)?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Numeric("cannot normalize a zero or non-finite vector".into()));
        }
        let amps = amps.into_iter().map(|a| a / norm).collect();
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Statevector) -> Result<Complex64> {
        self.same_shape(other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn same_shape(&self, len: usize) -> Result<()> {
        if len != self.amps.len() {
            return Err(Error::Shape {
                expected: self.amps.len(),
                got: len,
            });
        }
        Ok(())
    }

    /// `amps[z] <- exp(-i gamma f(z)) amps[z]`.
    pub fn apply_phase(&mut self, table: &PhaseTable, gamma: f64) -> Result<()> {
        self.same_shape(table.len())?;
        self.apply_phase_values(table.values(), gamma);
        Ok(())
    }

    pub(crate) fn apply_phase_values(&mut self, values: &[f64], gamma: f64) {
        if gamma == 0.0 {
            return;
        }
        for (a, &v) in self.amps.iter_mut().zip(values) {
            let (s, c) = (gamma * v).sin_cos();
            *a *= Complex64::new(c, -s);
        }
    }

    /// Applies `H^{(x)n}` with `2^{-n/2}` normalization. Self-inverse.
    pub fn fwht(&mut self) {
        walsh_hadamard(&mut self.amps);
        let scale = (self.amps.len() as f64).sqrt().recip();
        for a in &mut self.amps {
            *a *= scale;
        }
    }

    pub fn overlap_probability(&self, target: u64) -> Result<f64> {
        if target >> self.n != 0 {
            return Err(Error::Index {
                index: target,
                n: self.n,
            });
        }
        Ok(self.amps[target as usize].norm_sqr())
    }

    /// Total probability on every minimizer of `table` (ties within 1e-9).
    pub fn ground_state_mass(&self, table: &PhaseTable) -> Result<f64> {
        self.same_shape(table.len())?;
        let min = table.min();
        Ok(self
            .amps
            .iter()
            .zip(table.values())
            .filter(|(_, &v)| v <= min + DEGENERACY_TOLERANCE)
            .map(|(a, _)| a.norm_sqr())
            .sum())
    }

    /// `<f>` over the measurement distribution.
    pub fn expectation(&self, table: &PhaseTable) -> Result<f64> {
        self.same_shape(table.len())?;
        Ok(self
            .amps
            .iter()
            .zip(table.values())
            .map(|(a, v)| a.norm_sqr() * v)
            .sum())
    }

    /// Marginals `<z_i>` = probability that qubit `i` reads 1.
    pub fn marginals(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.n];
        for (z, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let mut bits = z;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                m[i] += p;
                bits &= bits - 1;
            }
        }
        m
    }

    /// Most probable basis state, lowest index on ties.
    pub fn argmax(&self) -> u64 {
        let mut best = 0usize;
        let mut best_p = f64::NEG_INFINITY;
        for (z, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p > best_p {
                best = z;
                best_p = p;
            }
        }
        best as u64
    }

    /// Renormalizes if the norm drifted past [`NORM_TOLERANCE`]; such events
    /// are counted in [`renormalization_events`]. Returns whether it fired.
    pub fn enforce_norm(&mut self) -> bool {
        let ns = self.norm_sqr();
        if (ns - 1.0).abs() <= NORM_TOLERANCE {
            return false;
        }
        RENORMALIZATIONS.fetch_add(1, Ordering::Relaxed);
        let s = ns.sqrt().recip();
        for a in &mut self.amps {
            *a *= s;
        }
        true
    }
}

/// Unnormalized in-place Walsh–Hadamard butterfly, `O(len log len)`.
pub fn walsh_hadamard<T>(data: &mut [T])
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}
