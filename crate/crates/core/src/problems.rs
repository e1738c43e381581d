//! Diagonal cost functions, stored as Z-product terms with a dense table.
//!
//! A term with qubit set `S` and coefficient `c` contributes
//! `c * prod_{i in S} (1 - 2 z_i)` to `f(z)`. The dense table is derived from
//! the term list through an unnormalized Walsh–Hadamard transform of the
//! coefficient vector, so both views always agree.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{check_qubits, walsh_hadamard, PhaseTable};

/// A weighted product of Pauli Z operators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZTerm {
    pub qubits: Vec<usize>,
    pub coeff: f64,
}

impl ZTerm {
    pub fn new(mut qubits: Vec<usize>, coeff: f64) -> Self {
        qubits.sort_unstable();
        Self { qubits, coeff }
    }

    pub fn identity(coeff: f64) -> Self {
        Self {
            qubits: Vec::new(),
            coeff,
        }
    }

    pub fn mask(&self) -> u64 {
        self.qubits.iter().fold(0u64, |m, &q| m | (1u64 << q))
    }

    /// Direct evaluation on a basis state, independent of any dense table.
    pub fn eval(&self, z: u64) -> f64 {
        if (z & self.mask()).count_ones().is_multiple_of(2) {
            self.coeff
        } else {
            -self.coeff
        }
    }
}

/// Family tag, generation parameters and seed of a problem instance.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ProblemMeta {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ProblemMeta {
    pub fn new(family: &str) -> Self {
        Self {
            family: family.to_string(),
            ..Self::default()
        }
    }

    fn param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// A classical objective over `n`-bit strings.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalProblem {
    n: usize,
    terms: Vec<ZTerm>,
    dense: PhaseTable,
    meta: ProblemMeta,
    f_min: f64,
    f_max: f64,
}

/// Budget (terms times basis states) under which construction re-checks the
/// dense table against direct term evaluation.
const SELF_CHECK_BUDGET: usize = 1 << 22;

impl DiagonalProblem {
    pub fn from_terms(n: usize, terms: Vec<ZTerm>, meta: ProblemMeta) -> Result<Self> {
        check_qubits(n)?;
        let mut coeffs = vec![0.0f64; 1 << n];
        for (t, term) in terms.iter().enumerate() {
            if !term.coeff.is_finite() {
                return Err(Error::Numeric(format!("term {t} has a non-finite coefficient")));
            }
            if term.qubits.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::domain(format!(
                    "term {t}: qubit indices must be sorted and distinct"
                )));
            }
            if let Some(&q) = term.qubits.iter().find(|&&q| q >= n) {
                return Err(Error::domain(format!("term {t}: qubit {q} out of range for n={n}")));
            }
            coeffs[term.mask() as usize] += term.coeff;
        }
        walsh_hadamard(&mut coeffs);
        let dense = PhaseTable::new(coeffs)?;
        let problem = Self::assemble(n, terms, dense, meta);
        if n <= 16 && problem.terms.len().saturating_mul(1 << n) <= SELF_CHECK_BUDGET {
            problem.verify_dense(1e-9)?;
        }
        Ok(problem)
    }

    /// Builds a problem from a value table; the term list is its Walsh
    /// expansion with numerically zero coefficients dropped.
    pub fn from_dense(values: Vec<f64>, meta: ProblemMeta) -> Result<Self> {
        let dense = PhaseTable::new(values)?;
        let n = dense.qubits();
        check_qubits(n)?;
        let mut coeffs = dense.values().to_vec();
        walsh_hadamard(&mut coeffs);
        let scale = (1u64 << n) as f64;
        let magnitude = dense.values().iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
        let terms = coeffs
            .iter()
            .enumerate()
            .filter_map(|(mask, &c)| {
                let c = c / scale;
                (c.abs() > 1e-13 * magnitude).then(|| {
                    let qubits = (0..n).filter(|q| mask >> q & 1 == 1).collect();
                    ZTerm { qubits, coeff: c }
                })
            })
            .collect();
        let problem = Self::assemble(n, terms, dense, meta);
        if n <= 16 && problem.terms.len().saturating_mul(1 << n) <= SELF_CHECK_BUDGET {
            problem.verify_dense(1e-9)?;
        }
        Ok(problem)
    }

    fn assemble(n: usize, terms: Vec<ZTerm>, dense: PhaseTable, meta: ProblemMeta) -> Self {
        let f_min = dense.min();
        let f_max = dense.max();
        Self {
            n,
            terms,
            dense,
            meta,
            f_min,
            f_max,
        }
    }

    /// Compares the dense table against direct term-by-term evaluation.
    pub fn verify_dense(&self, tol: f64) -> Result<()> {
        for (z, &v) in self.dense.values().iter().enumerate() {
            let direct = self.eval_terms(z as u64);
            if (direct - v).abs() > tol * (1.0 + v.abs()) {
                return Err(Error::Numeric(format!(
                    "dense table disagrees with terms at z={z}: {v} vs {direct}"
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[ZTerm] {
        &self.terms
    }

    pub fn dense(&self) -> &PhaseTable {
        &self.dense
    }

    pub fn meta(&self) -> &ProblemMeta {
        &self.meta
    }

    pub fn value(&self, z: u64) -> f64 {
        self.dense.values()[z as usize]
    }

    pub fn eval_terms(&self, z: u64) -> f64 {
        self.terms.iter().map(|t| t.eval(z)).sum()
    }

    pub fn f_min(&self) -> f64 {
        self.f_min
    }

    pub fn f_max(&self) -> f64 {
        self.f_max
    }

    pub fn ground_states(&self) -> Vec<u64> {
        self.dense.argmin_set()
    }

    pub fn is_ground_state(&self, z: u64) -> bool {
        self.value(z) <= self.f_min + crate::state::DEGENERACY_TOLERANCE
    }

    /// Fixes the listed qubits and folds them into the coefficients.
    ///
    /// Returns the residual problem over the remaining qubits (renumbered in
    /// increasing order) and, for each residual qubit, its original index.
    /// Terms that collapse onto the same qubit set are merged. `None` when no
    /// qubit is left.
    pub fn restrict(&self, fixed: &[(usize, bool)]) -> Result<Option<(DiagonalProblem, Vec<usize>)>> {
        let mut values: Vec<Option<bool>> = vec![None; self.n];
        for &(q, bit) in fixed {
            if q >= self.n {
                return Err(Error::Index {
                    index: q as u64,
                    n: self.n,
                });
            }
            values[q] = Some(bit);
        }
        let free: Vec<usize> = (0..self.n).filter(|&q| values[q].is_none()).collect();
        if free.is_empty() {
            return Ok(None);
        }
        let mut new_index = vec![usize::MAX; self.n];
        for (k, &q) in free.iter().enumerate() {
            new_index[q] = k;
        }
        let mut merged: Vec<(u64, f64)> = Vec::new();
        let mut slot: HashMap<u64, usize> = HashMap::new();
        for term in &self.terms {
            let mut coeff = term.coeff;
            let mut mask = 0u64;
            for &q in &term.qubits {
                match values[q] {
                    Some(true) => coeff = -coeff,
                    Some(false) => {}
                    None => mask |= 1 << new_index[q],
                }
            }
            match slot.get(&mask) {
                Some(&k) => merged[k].1 += coeff,
                None => {
                    slot.insert(mask, merged.len());
                    merged.push((mask, coeff));
                }
            }
        }
        let terms = merged
            .into_iter()
            .map(|(mask, coeff)| ZTerm {
                qubits: (0..free.len()).filter(|k| mask >> k & 1 == 1).collect(),
                coeff,
            })
            .collect();
        let mut meta = self.meta.clone();
        meta.params.insert("frozen".into(), fixed.len() as f64);
        let residual = DiagonalProblem::from_terms(free.len(), terms, meta)?;
        Ok(Some((residual, free)))
    }
}

#[derive(Serialize, Deserialize)]
struct ProblemDoc {
    n: usize,
    terms: Vec<ZTerm>,
    #[serde(default)]
    meta: ProblemMeta,
}

impl Serialize for DiagonalProblem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProblemDoc {
            n: self.n,
            terms: self.terms.clone(),
            meta: self.meta.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagonalProblem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ProblemDoc::deserialize(d)?;
        DiagonalProblem::from_terms(doc.n, doc.terms, doc.meta).map_err(serde::de::Error::custom)
    }
}

/// Coefficient measures for uncoupled spins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    /// `alpha = +-1` with equal probability.
    Binary,
    /// `alpha` uniform on `[-1, 1]`.
    Uniform,
    /// density `exp(-alpha^2) / sqrt(pi)`, i.e. variance 1/2.
    Gaussian,
}

impl Distribution {
    pub const ALL: [Distribution; 3] = [Distribution::Binary, Distribution::Uniform, Distribution::Gaussian];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::Binary => "binary",
            Distribution::Uniform => "uniform",
            Distribution::Gaussian => "gaussian",
        }
    }

    pub fn sample<R: Rng>(self, rng: &mut R) -> f64 {
        match self {
            Distribution::Binary => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            Distribution::Uniform => rng.random_range(-1.0..=1.0),
            Distribution::Gaussian => Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2)
                .expect("valid normal")
                .sample(rng),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(Distribution::Binary),
            "uniform" => Ok(Distribution::Uniform),
            "gaussian" => Ok(Distribution::Gaussian),
            other => Err(Error::domain(format!("unknown distribution `{other}`"))),
        }
    }
}

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `task` of the generator seeded with `seed`, so that
/// parallel tasks draw the same numbers regardless of scheduling.
pub(crate) fn task_rng(seed: u64, task: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(task);
    rng
}

/// `f(z) = sum_i alpha_i Z_i` with i.i.d. coefficients.
pub fn uncoupled_spins(n: usize, dist: Distribution, seed: u64) -> Result<DiagonalProblem> {
    check_qubits(n)?;
    let mut rng = rng_for(seed);
    let terms = (0..n).map(|i| ZTerm::new(vec![i], dist.sample(&mut rng))).collect();
    let meta = ProblemMeta::new("uncoupled")
        .param(dist.name(), 1.0)
        .seeded(seed);
    DiagonalProblem::from_terms(n, terms, meta)
}

/// Uncoupled spins with given fields.
pub fn fields(alphas: &[f64]) -> Result<DiagonalProblem> {
    let terms = alphas
        .iter()
        .enumerate()
        .map(|(i, &a)| ZTerm::new(vec![i], a))
        .collect();
    DiagonalProblem::from_terms(alphas.len(), terms, ProblemMeta::new("fields"))
}

/// `f = 0`.
pub fn zero(n: usize) -> Result<DiagonalProblem> {
    DiagonalProblem::from_terms(n, Vec::new(), ProblemMeta::new("zero"))
}

/// The Hamming weight `w = (1/2) sum_i (I - Z_i)`.
pub fn hamming_ramp(n: usize) -> Result<DiagonalProblem> {
    check_qubits(n)?;
    let mut terms = vec![ZTerm::identity(n as f64 / 2.0)];
    terms.extend((0..n).map(|i| ZTerm::new(vec![i], -0.5)));
    DiagonalProblem::from_terms(n, terms, ProblemMeta::new("ramp"))
}

/// Integer Hamming weights inside the closed interval
/// `[n/4 - n^a/2, n/4 + n^a/2]`.
pub fn spike_window(n: usize, a: f64) -> (usize, usize) {
    let centre = n as f64 / 4.0;
    let half = (n as f64).powf(a) / 2.0;
    let lo = (centre - half - 1e-12).ceil().max(0.0) as usize;
    let hi = ((centre + half + 1e-12).floor() as usize).min(n);
    (lo, hi)
}

/// `w + s(w)` with `s(w) = n^b` on the window of [`spike_window`].
pub fn spike(n: usize, a: f64, b: f64) -> Result<DiagonalProblem> {
    if !n.is_multiple_of(4) {
        return Err(Error::domain(format!("spike requires n divisible by 4, got {n}")));
    }
    let (lo, hi) = spike_window(n, a);
    let height = (n as f64).powf(b);
    let mut p = spike_band(n, lo, hi, height)?;
    p.meta = ProblemMeta::new("spike").param("a", a).param("b", b);
    Ok(p)
}

/// The Hamming ramp plus a barrier of `height` on weights `lo..=hi`.
pub fn spike_band(n: usize, lo: usize, hi: usize, height: f64) -> Result<DiagonalProblem> {
    check_qubits(n)?;
    if lo > hi || hi > n {
        return Err(Error::domain(format!("invalid spike band {lo}..={hi} for n={n}")));
    }
    let values = (0..1u64 << n)
        .map(|z| {
            let w = z.count_ones() as usize;
            w as f64 + if (lo..=hi).contains(&w) { height } else { 0.0 }
        })
        .collect();
    let meta = ProblemMeta::new("spike_band")
        .param("lo", lo as f64)
        .param("hi", hi as f64)
        .param("height", height);
    DiagonalProblem::from_dense(values, meta)
}

/// `P_0 + (1 - P_0) w`, with `P_0` projecting qubit 0 onto `|0>`.
pub fn bush(n: usize) -> Result<DiagonalProblem> {
    check_qubits(n)?;
    let values = (0..1u64 << n)
        .map(|z| if z & 1 == 0 { 1.0 } else { z.count_ones() as f64 })
        .collect();
    DiagonalProblem::from_dense(values, ProblemMeta::new("bush"))
}

/// `-(sum_i Z_i)^k`.
pub fn kspin_ferromagnet(n: usize, k: u32) -> Result<DiagonalProblem> {
    check_qubits(n)?;
    let values = (0..1u64 << n)
        .map(|z| -((n as f64) - 2.0 * z.count_ones() as f64).powi(k as i32))
        .collect();
    DiagonalProblem::from_dense(values, ProblemMeta::new("kspin").param("k", k as f64))
}

/// `sum_i -(1+eps) Z_{2i} - Z_{2i+1} + delta Z_{2i} Z_{2i+1}`.
pub fn conflicted_pairs(n: usize, epsilon: f64, delta: f64) -> Result<DiagonalProblem> {
    if !n.is_multiple_of(2) {
        return Err(Error::domain(format!("conflicted pairs need even n, got {n}")));
    }
    if !(epsilon > 0.0) {
        return Err(Error::domain("conflicted pairs need epsilon > 0"));
    }
    if !(delta > 2.0 + epsilon) {
        return Err(Error::domain(format!(
            "conflicted pairs need delta > 2 + epsilon ({delta} <= {})",
            2.0 + epsilon
        )));
    }
    check_qubits(n)?;
    let mut terms = Vec::with_capacity(3 * n / 2);
    for i in 0..n / 2 {
        let (a, b) = (2 * i, 2 * i + 1);
        terms.push(ZTerm::new(vec![a], -(1.0 + epsilon)));
        terms.push(ZTerm::new(vec![b], -1.0));
        terms.push(ZTerm::new(vec![a, b], delta));
    }
    let meta = ProblemMeta::new("conflicted_pairs")
        .param("epsilon", epsilon)
        .param("delta", delta);
    DiagonalProblem::from_terms(n, terms, meta)
}

/// Open chain `sum_i (J_i / 2)(1 - Z_i Z_{i+1})` with `J_i` drawn from {1, 2}.
pub fn fisher_chain(n: usize, seed: u64) -> Result<DiagonalProblem> {
    check_qubits(n)?;
    let mut rng = rng_for(seed);
    let couplings: Vec<f64> = (0..n.saturating_sub(1))
        .map(|_| if rng.random::<bool>() { 2.0 } else { 1.0 })
        .collect();
    let mut terms = vec![ZTerm::identity(couplings.iter().sum::<f64>() / 2.0)];
    terms.extend(
        couplings
            .iter()
            .enumerate()
            .map(|(i, &j)| ZTerm::new(vec![i, i + 1], -j / 2.0)),
    );
    DiagonalProblem::from_terms(n, terms, ProblemMeta::new("fisher").seeded(seed))
}

/// Ferromagnetic chain: the first `n/2` bonds have coupling 1, the rest `j2`.
pub fn chain_detuned(n: usize, j2: f64) -> Result<DiagonalProblem> {
    check_qubits(n)?;
    let terms = (0..n.saturating_sub(1))
        .map(|i| {
            let j = if i < n / 2 { 1.0 } else { j2 };
            ZTerm::new(vec![i, i + 1], -j)
        })
        .collect();
    DiagonalProblem::from_terms(n, terms, ProblemMeta::new("chain").param("j2", j2))
}

/// Nearest-neighbour bonds of a `rows x cols` grid, qubit `r * cols + c`.
pub fn grid_edges(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let q = r * cols + c;
            if c + 1 < cols {
                edges.push((q, q + 1));
            }
            if r + 1 < rows {
                edges.push((q, q + cols));
            }
        }
    }
    edges
}

/// 2D ferromagnet `-sum J_ij Z_i Z_j`. Columns `< ceil(cols/2)` form the
/// first block (coupling 1); bonds touching the second block couple with `j2`.
pub fn grid_ferromagnet_2d(rows: usize, cols: usize, j2: f64) -> Result<DiagonalProblem> {
    let n = rows * cols;
    check_qubits(n)?;
    let split = cols.div_ceil(2);
    let terms = grid_edges(rows, cols)
        .into_iter()
        .map(|(u, v)| {
            let first_block = u % cols < split && v % cols < split;
            ZTerm::new(vec![u, v], if first_block { -1.0 } else { -j2 })
        })
        .collect();
    let meta = ProblemMeta::new("grid")
        .param("rows", rows as f64)
        .param("cols", cols as f64)
        .param("j2", j2);
    DiagonalProblem::from_terms(n, terms, meta)
}

/// Uniformly random simple 3-regular graph by pairing with rejection.
pub fn random_3_regular<R: Rng>(n: usize, rng: &mut R) -> Result<Vec<(usize, usize)>> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::domain(format!("3-regular graphs need even n >= 4, got {n}")));
    }
    let mut points: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
    'attempt: for _ in 0..100_000 {
        points.shuffle(rng);
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(3 * n / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || edges.contains(&(u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        return Ok(edges);
    }
    Err(Error::Numeric("failed to sample a simple 3-regular graph".into()))
}

/// `sum_{(i,j) in E} J_ij Z_i Z_j` on a random 3-regular graph, with
/// `round(|E| * j2_fraction)` randomly chosen edges at coupling `j2`.
pub fn maxcut_3regular(n: usize, j2_fraction: f64, j2: f64, seed: u64) -> Result<DiagonalProblem> {
    check_qubits(n)?;
    if !(0.0..=1.0).contains(&j2_fraction) {
        return Err(Error::domain("j2_fraction must lie in [0, 1]"));
    }
    let mut rng = rng_for(seed);
    let edges = random_3_regular(n, &mut rng)?;
    let detuned = (edges.len() as f64 * j2_fraction).round() as usize;
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.shuffle(&mut rng);
    let mut couplings = vec![1.0; edges.len()];
    for &e in &order[..detuned] {
        couplings[e] = j2;
    }
    let terms = edges
        .iter()
        .zip(&couplings)
        .map(|(&(u, v), &j)| ZTerm::new(vec![u, v], j))
        .collect();
    let meta = ProblemMeta::new("maxcut")
        .param("j2", j2)
        .param("j2_fraction", j2_fraction)
        .seeded(seed);
    DiagonalProblem::from_terms(n, terms, meta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_spins_have_unit_fields_and_separable_ground_state() {
        let p = uncoupled_spins(3, Distribution::Binary, 11).unwrap();
        assert_eq!(p.terms().len(), 3);
        assert!(p.terms().iter().all(|t| t.coeff.abs() == 1.0));
        for seed in 0..20 {
            let p = uncoupled_spins(5, Distribution::Gaussian, seed).unwrap();
            let expected = p
                .terms()
                .iter()
                .fold(0u64, |z, t| if t.coeff > 0.0 { z | 1 << t.qubits[0] } else { z });
            assert_eq!(p.ground_states(), vec![expected]);
        }
    }

    #[test]
    fn gaussian_ground_energy_per_spin() {
        // E[-|alpha|] = -1/sqrt(pi) for density exp(-a^2)/sqrt(pi)
        let n = 16;
        let seeds = 10_000u64;
        let mut total = 0.0;
        for seed in 0..seeds {
            let mut rng = rng_for(seed);
            total += (0..n)
                .map(|_| -Distribution::Gaussian.sample(&mut rng).abs())
                .sum::<f64>()
                / n as f64;
        }
        let mean = total / seeds as f64;
        assert!((mean + 1.0 / std::f64::consts::PI.sqrt()).abs() < 2e-2, "{mean}");
    }

    #[test]
    fn distribution_tags() {
        assert_eq!("gaussian".parse::<Distribution>().unwrap(), Distribution::Gaussian);
        assert!("cauchy".parse::<Distribution>().is_err());
    }

    #[test]
    fn ramp_values() {
        let p = hamming_ramp(4).unwrap();
        assert_eq!(p.value(0), 0.0);
        assert_eq!(p.value(15), 4.0);
        assert_eq!(p.value(0b0101), 2.0);
        assert_eq!(p.ground_states(), vec![0]);
    }

    #[test]
    fn spike_window_and_values() {
        assert_eq!(spike_window(8, 0.0), (2, 2));
        let p = spike(8, 0.0, 1.0).unwrap();
        assert_eq!(p.value(0), 0.0);
        assert_eq!(p.value(0b11), 10.0);
        assert_eq!(p.value(0b111), 3.0);
        let in_band = (0..256u64).filter(|z| z.count_ones() == 2).count();
        assert_eq!(in_band as f64 / 256.0, 0.109375);
        assert!(matches!(spike(6, 0.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn bush_table() {
        let p = bush(3).unwrap();
        let expected = [1.0, 1.0, 1.0, 2.0, 1.0, 2.0, 1.0, 3.0];
        assert_eq!(p.dense().values(), &expected);
        let one = bush(1).unwrap();
        assert_eq!(one.value(1), 1.0);
    }

    #[test]
    fn kspin_expansion() {
        let p = kspin_ferromagnet(3, 3).unwrap();
        let mut terms: Vec<(Vec<usize>, f64)> =
            p.terms().iter().map(|t| (t.qubits.clone(), t.coeff)).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let expected = vec![
            (vec![0], -7.0),
            (vec![0, 1, 2], -6.0),
            (vec![1], -7.0),
            (vec![2], -7.0),
        ];
        assert_eq!(terms.len(), expected.len());
        for ((q, c), (eq, ec)) in terms.iter().zip(&expected) {
            assert_eq!(q, eq);
            assert!((c - ec).abs() < 1e-12);
        }
        assert_eq!(p.value(0), -27.0);
        let p = kspin_ferromagnet(5, 3).unwrap();
        assert_eq!(p.ground_states(), vec![0]);
    }

    #[test]
    fn conflicted_pair_values() {
        let p = conflicted_pairs(2, 0.1, 3.0).unwrap();
        // integer index: bit 0 is qubit 0
        assert!((p.value(0b00) - 0.9).abs() < 1e-12);
        assert!((p.value(0b10) + 3.1).abs() < 1e-12);
        assert!((p.value(0b01) + 2.9).abs() < 1e-12);
        assert!((p.value(0b11) - 5.1).abs() < 1e-12);
        assert_eq!(p.ground_states(), vec![0b10]);
        assert!(conflicted_pairs(2, 0.1, 2.1).is_err());
        assert!(conflicted_pairs(3, 0.1, 3.0).is_err());
        let p = conflicted_pairs(6, 0.1, 3.0).unwrap();
        assert_eq!(p.terms().iter().filter(|t| t.qubits.len() == 2).count(), 3);
        assert_eq!(p.terms().iter().filter(|t| t.qubits.len() == 1).count(), 6);
    }

    #[test]
    fn fisher_chain_is_nonnegative_with_two_minima() {
        let p = fisher_chain(6, 3).unwrap();
        assert!(p.dense().values().iter().all(|&v| v >= -1e-12));
        assert_eq!(p.ground_states(), vec![0, 63]);
        assert!(p.f_min().abs() < 1e-12);
    }

    #[test]
    fn grid_edges_and_ground_states() {
        assert_eq!(grid_edges(3, 4).len(), 17);
        let p = grid_ferromagnet_2d(2, 2, 1.0).unwrap();
        assert_eq!(p.terms().len(), 4);
        assert!(p.terms().iter().all(|t| t.coeff == -1.0));
        let p = grid_ferromagnet_2d(3, 4, 0.3).unwrap();
        assert_eq!(p.ground_states(), vec![0, (1 << 12) - 1]);
        // columns 0..2 are block one: 3 horizontal (0-1 per row) + 4 vertical
        let strong = p.terms().iter().filter(|t| t.coeff == -1.0).count();
        assert_eq!(strong, 3 + 4);
        let c = chain_detuned(6, 0.5).unwrap();
        let coeffs: Vec<f64> = c.terms().iter().map(|t| t.coeff).collect();
        assert_eq!(coeffs, vec![-1.0, -1.0, -1.0, -0.5, -0.5]);
    }

    #[test]
    fn maxcut_on_four_vertices_is_k4() {
        let p = maxcut_3regular(4, 0.0, 0.5, 1).unwrap();
        let mut edges: Vec<Vec<usize>> = p.terms().iter().map(|t| t.qubits.clone()).collect();
        edges.sort();
        assert_eq!(
            edges,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert!(p.terms().iter().all(|t| t.coeff == 1.0));
        // K4 max cut is 4 of 6 edges: 2 uncut edges -> min energy 2 - 4 = -2
        let brute = (0..16u64)
            .map(|z| {
                edges
                    .iter()
                    .map(|e| if (z >> e[0] & 1) == (z >> e[1] & 1) { 1.0 } else { -1.0 })
                    .sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min);
        assert_eq!(brute, -2.0);
        assert_eq!(p.f_min(), brute);
    }

    #[test]
    fn maxcut_is_three_regular_with_half_detuned() {
        let p = maxcut_3regular(10, 0.5, 0.3, 7).unwrap();
        assert_eq!(p.terms().len(), 15);
        let mut degree = [0; 10];
        for t in p.terms() {
            degree[t.qubits[0]] += 1;
            degree[t.qubits[1]] += 1;
        }
        assert!(degree.iter().all(|&d| d == 3));
        assert_eq!(p.terms().iter().filter(|t| t.coeff == 0.3).count(), 8);
        assert_eq!(maxcut_3regular(10, 0.5, 0.3, 7).unwrap(), p);
    }

    #[test]
    fn restrict_folds_fixed_qubits() {
        let p = maxcut_3regular(8, 0.5, 0.4, 2).unwrap();
        let fixed = [(1usize, true), (4, false), (6, true)];
        let (sub, map) = p.restrict(&fixed).unwrap().unwrap();
        assert_eq!(map, vec![0, 2, 3, 5, 7]);
        for y in 0..1u64 << sub.n() {
            let mut z = 0u64;
            for (k, &q) in map.iter().enumerate() {
                z |= (y >> k & 1) << q;
            }
            for &(q, b) in &fixed {
                z |= (b as u64) << q;
            }
            assert!((sub.value(y) - p.value(z)).abs() < 1e-12);
        }
        let all: Vec<(usize, bool)> = (0..8).map(|q| (q, false)).collect();
        assert!(p.restrict(&all).unwrap().is_none());
    }

    #[test]
    fn json_round_trip() {
        let p = conflicted_pairs(4, 0.2, 3.0).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"terms\""));
        assert!(!json.contains("dense"));
        let back: DiagonalProblem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"n": 2, "terms": [{"qubits": [0, 5], "coeff": 1.0}]}"#;
        assert!(serde_json::from_str::<DiagonalProblem>(bad).is_err());
    }
}
