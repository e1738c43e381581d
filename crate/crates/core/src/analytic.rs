//! Closed-form single-spin and Landau–Zener oracles.
//!
//! For one spin `f = alpha Z` a single round gives
//! `<Z> = sin(2 beta) sin(2 alpha gamma)`, so the per-spin energy is
//! `alpha sin(2 beta) sin(2 alpha gamma)` and the probability of the lower
//! level is `(1 - sin(2 beta) sin(2 |alpha| gamma)) / 2`.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::integrate;

pub use crate::problems::Distribution as DistributionTag;

const GAUSSIAN_CUTOFF: f64 = 8.0;
const QUADRATURE_TOLERANCE: f64 = 1e-13;

/// Probability that one round leaves a spin with field `alpha` in its lower
/// level.
pub fn single_spin_overlap(alpha: f64, gamma: f64, beta: f64) -> f64 {
    0.5 * (1.0 - (2.0 * beta).sin() * (2.0 * alpha.abs() * gamma).sin())
}

/// Expected energy of one spin with field `alpha` after one round.
pub fn single_spin_energy(alpha: f64, gamma: f64, beta: f64) -> f64 {
    alpha * (2.0 * beta).sin() * (2.0 * alpha * gamma).sin()
}

/// `E[g(alpha)]` under the coefficient measure, by quadrature.
pub fn expect(dist: DistributionTag, g: impl Fn(f64) -> f64) -> Result<f64> {
    match dist {
        DistributionTag::Binary => Ok(0.5 * (g(1.0) + g(-1.0))),
        DistributionTag::Uniform => Ok(0.5 * integrate(g, -1.0, 1.0, QUADRATURE_TOLERANCE)?),
        DistributionTag::Gaussian => {
            let norm = PI.sqrt().recip();
            integrate(
                |a| g(a) * (-a * a).exp() * norm,
                -GAUSSIAN_CUTOFF,
                GAUSSIAN_CUTOFF,
                QUADRATURE_TOLERANCE,
            )
        }
    }
}

/// Per-spin averages of one round over a coefficient measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistributionStats {
    /// Expected energy per spin.
    pub c_m: f64,
    /// Expected probability that a spin lands in its lower level.
    pub overlap: f64,
    /// Expected optimal energy per spin.
    pub f_star: f64,
    /// `(f_max - c_m) / (f_max - f_star)` with `f_max = -f_star`.
    pub ratio: f64,
}

/// Closed-form per-spin energy.
pub fn distribution_energy(dist: DistributionTag, gamma: f64, beta: f64) -> f64 {
    let s = (2.0 * beta).sin();
    match dist {
        DistributionTag::Binary => s * (2.0 * gamma).sin(),
        DistributionTag::Uniform => {
            if gamma.abs() < 1e-4 {
                // series of (sin 2g - 2g cos 2g) / (4 g^2)
                s * (2.0 * gamma / 3.0 - 0.4 * gamma.powi(3))
            } else {
                s * ((2.0 * gamma).sin() - 2.0 * gamma * (2.0 * gamma).cos()) / (4.0 * gamma * gamma)
            }
        }
        DistributionTag::Gaussian => s * gamma * (-gamma * gamma).exp(),
    }
}

/// Expected optimal energy per spin, `E[-|alpha|]`.
pub fn distribution_f_star(dist: DistributionTag) -> f64 {
    match dist {
        DistributionTag::Binary => -1.0,
        DistributionTag::Uniform => -0.5,
        DistributionTag::Gaussian => -PI.sqrt().recip(),
    }
}

/// Per-spin energy, overlap, optimum and approximation ratio at `(gamma, beta)`.
pub fn distribution_qaoa(dist: DistributionTag, gamma: f64, beta: f64) -> Result<DistributionStats> {
    let c_m = distribution_energy(dist, gamma, beta);
    let overlap = expect(dist, |a| single_spin_overlap(a, gamma, beta))?;
    let f_star = distribution_f_star(dist);
    Ok(DistributionStats {
        c_m,
        overlap,
        f_star,
        ratio: (-f_star - c_m) / (-2.0 * f_star),
    })
}

/// The `gamma` minimizing the per-spin energy at `beta = pi/4`, refined by
/// golden-section search on `[-2, -0.05]` (exactly `-pi/4` for binary).
pub fn optimal_gamma(dist: DistributionTag) -> f64 {
    if dist == DistributionTag::Binary {
        return -FRAC_PI_4;
    }
    golden_section(|g| distribution_energy(dist, g, FRAC_PI_4), -2.0, -0.05, 1e-12)
}

pub(crate) fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Probability of following the lower level through a sweep of rate `gamma`
/// with gap parameter `alpha`: `1 - exp(-pi alpha^2 / gamma)`.
pub fn p_lz(alpha: f64, gamma: f64) -> f64 {
    1.0 - (-PI * alpha * alpha / gamma).exp()
}

/// Landau–Zener averages over the Gaussian measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandauZener {
    /// `E[P_LZ] = 1 - sqrt(Gamma / (Gamma + pi))`.
    pub o_lz: f64,
    /// `-sqrt(pi) / (pi + Gamma)`, i.e. `E[-|alpha| P_LZ]`.
    pub a_lz: f64,
    /// `(2 pi + Gamma) / (2 (pi + Gamma))`.
    pub r_lz: f64,
}

pub fn landau_zener(gamma: f64) -> Result<LandauZener> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::domain(format!("sweep rate must be positive, got {gamma}")));
    }
    Ok(LandauZener {
        o_lz: 1.0 - (gamma / (gamma + PI)).sqrt(),
        a_lz: -PI.sqrt() / (PI + gamma),
        r_lz: (2.0 * PI + gamma) / (2.0 * (PI + gamma)),
    })
}

/// Integrates `i d/dt psi = (gamma t Z + alpha X) psi` over `[-T, T]` with
/// classical RK4 from the instantaneous ground state and returns the final
/// overlap with the instantaneous ground state, whose limit is
/// [`p_lz`]`(alpha, gamma)`.
pub fn landau_zener_sweep(alpha: f64, gamma: f64, half_time: f64, dt: f64) -> f64 {
    use num_complex::Complex64 as C;
    let ground = |t: f64| -> [C; 2] {
        // lower eigenvector of [[g t, a], [a, -g t]]
        let (h, a) = (gamma * t, alpha);
        let e = -(h * h + a * a).sqrt();
        let v = if a.abs() > 0.0 { [C::new(a, 0.0), C::new(e - h, 0.0)] } else if h <= 0.0 {
            [C::new(1.0, 0.0), C::new(0.0, 0.0)]
        } else {
            [C::new(0.0, 0.0), C::new(1.0, 0.0)]
        };
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / norm, v[1] / norm]
    };
    let rhs = |t: f64, psi: [C; 2]| -> [C; 2] {
        let h = gamma * t;
        let mi = C::new(0.0, -1.0);
        [mi * (psi[0] * h + psi[1] * alpha), mi * (psi[0] * alpha - psi[1] * h)]
    };
    let steps = (2.0 * half_time / dt).ceil() as usize;
    let h = 2.0 * half_time / steps as f64;
    let mut psi = ground(-half_time);
    let mut t = -half_time;
    let axpy = |x: [C; 2], k: [C; 2], s: f64| [x[0] + k[0] * s, x[1] + k[1] * s];
    for _ in 0..steps {
        let k1 = rhs(t, psi);
        let k2 = rhs(t + h / 2.0, axpy(psi, k1, h / 2.0));
        let k3 = rhs(t + h / 2.0, axpy(psi, k2, h / 2.0));
        let k4 = rhs(t + h, axpy(psi, k3, h));
        for c in 0..2 {
            psi[c] += (k1[c] + k2[c] * 2.0 + k3[c] * 2.0 + k4[c]) * (h / 6.0);
        }
        t += h;
    }
    let g = ground(half_time);
    (g[0].conj() * psi[0] + g[1].conj() * psi[1]).norm_sqr()
}

/// `(1 - 2c)^2`, the overlap floor when a fraction `c` of strings disagrees
/// with an exactly solvable reference potential.
pub fn measure_vote_bound(c: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&c) {
        return Err(Error::domain(format!("fraction must lie in [0, 1/2), got {c}")));
    }
    Ok((1.0 - 2.0 * c).powi(2))
}

/// Largest sweep rate for which `n` independent Gaussian spins all succeed
/// with probability at least `q`: solves `O_LZ^n = q`, giving
/// `pi (1 - s)^2 / ((2 - s) s)` with `s = q^{1/n}`, together with the
/// large-`n` form `pi (1 - exp(ln q / n))^2`.
pub fn gamma_success_bound(q: f64, n: usize) -> Result<(f64, f64)> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("target probability must lie in (0, 1), got {q}")));
    }
    if n == 0 {
        return Err(Error::domain("at least one spin is required"));
    }
    let s = q.powf(1.0 / n as f64);
    let exact = PI * (1.0 - s).powi(2) / ((2.0 - s) * s);
    let approx = PI * (1.0 - (q.ln() / n as f64).exp()).powi(2);
    Ok((exact, approx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn single_spin_values() {
        assert!((single_spin_overlap(1.0, -FRAC_PI_4, FRAC_PI_4) - 1.0).abs() < 1e-15);
        assert_eq!(single_spin_overlap(0.7, 0.0, 0.3), 0.5);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for dist in DistributionTag::ALL {
            for (g, b) in [(-1.04, FRAC_PI_4), (0.3, 0.2), (-2.5, 1.1)] {
                let quad = expect(dist, |a| single_spin_energy(a, g, b)).unwrap();
                assert!((quad - distribution_energy(dist, g, b)).abs() < 1e-12, "{dist} {g} {b}");
            }
            let quad = expect(dist, |a| -a.abs()).unwrap();
            assert!((quad - distribution_f_star(dist)).abs() < 1e-12);
        }
        // uniform overlap has an elementary form too
        let (g, b) = (-1.04f64, FRAC_PI_4);
        let closed = 0.5 * (1.0 - (2.0 * b).sin() * (1.0 - (2.0 * g).cos()) / (2.0 * g));
        let stats = distribution_qaoa(DistributionTag::Uniform, g, b).unwrap();
        assert!((stats.overlap - closed).abs() < 1e-12);
    }

    #[test]
    fn table_rows() {
        let bin = distribution_qaoa(DistributionTag::Binary, -FRAC_PI_4, FRAC_PI_4).unwrap();
        assert_eq!((bin.c_m, bin.overlap, bin.ratio), (-1.0, 1.0, 1.0));
        let g = optimal_gamma(DistributionTag::Gaussian);
        assert!((g + FRAC_1_SQRT_2).abs() < 1e-8);
        let gauss = distribution_qaoa(DistributionTag::Gaussian, g, FRAC_PI_4).unwrap();
        assert!((gauss.c_m + (2.0 * std::f64::consts::E).sqrt().recip()).abs() < 1e-12);
        assert!((gauss.overlap - 0.789).abs() < 2e-3);
        assert!((gauss.ratio - 0.88).abs() < 5e-3);
        let u = optimal_gamma(DistributionTag::Uniform);
        assert!((u + 1.04).abs() < 1e-2);
        let uni = distribution_qaoa(DistributionTag::Uniform, u, FRAC_PI_4).unwrap();
        assert!((uni.c_m + 0.436).abs() < 2e-3);
        assert!((uni.overlap - 0.858).abs() < 2e-3);
        assert!((uni.ratio - 0.936).abs() < 2e-3);
    }

    #[test]
    fn landau_zener_formulas() {
        let lz = landau_zener(1.0).unwrap();
        assert!((lz.r_lz - (2.0 * PI + 1.0) / (2.0 * PI + 2.0)).abs() < 1e-15);
        assert!((lz.r_lz - 0.879).abs() < 1e-3);
        assert!((landau_zener(PI).unwrap().o_lz - (1.0 - FRAC_1_SQRT_2)).abs() < 1e-15);
        assert!((landau_zener(1e-12).unwrap().r_lz - 1.0).abs() < 1e-9);
        assert!(landau_zener(0.0).is_err());
        for gamma in [0.3, 1.0, 4.0] {
            let lz = landau_zener(gamma).unwrap();
            let o = expect(DistributionTag::Gaussian, |a| p_lz(a, gamma)).unwrap();
            assert!((o - lz.o_lz).abs() < 1e-8);
            let a = expect(DistributionTag::Gaussian, |a| -a.abs() * p_lz(a, gamma)).unwrap();
            assert!((a - lz.a_lz).abs() < 1e-8);
        }
    }

    #[test]
    fn sweep_approaches_lz_formula() {
        let coarse = landau_zener_sweep(0.5, 1.0, 50.0, 1e-3);
        let fine = landau_zener_sweep(0.5, 1.0, 50.0, 5e-4);
        assert!((coarse - fine).abs() < 1e-4);
        assert!((fine - p_lz(0.5, 1.0)).abs() < 2e-2, "{fine} vs {}", p_lz(0.5, 1.0));
    }

    #[test]
    fn bounds() {
        assert_eq!(measure_vote_bound(0.0).unwrap(), 1.0);
        assert_eq!(measure_vote_bound(0.25).unwrap(), 0.25);
        assert!((measure_vote_bound(0.109375).unwrap() - 0.610_351_562_5).abs() < 1e-12);
        assert!(measure_vote_bound(0.5).is_err());
        let (exact, _) = gamma_success_bound(0.5, 1).unwrap();
        let o = landau_zener(exact).unwrap().o_lz;
        assert!((o - 0.5).abs() < 1e-12);
        let mut last = f64::INFINITY;
        for n in [1, 2, 5, 10, 100, 1000] {
            let (b, approx) = gamma_success_bound(0.9, n).unwrap();
            assert!(b > 0.0 && b < last);
            last = b;
            if n >= 100 {
                assert!((approx - b).abs() / b < 0.05);
            }
        }
    }
}
