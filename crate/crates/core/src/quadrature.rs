//! Adaptive Gauss–Kronrod (7/15) quadrature.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, (k - g).abs() * h)
}

/// `int_a^b f` to absolute tolerance `tol` by recursive bisection.
pub(crate) fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn recurse(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> Result<(f64, f64)> {
        let (value, err) = kronrod(f, a, b);
        if !value.is_finite() {
            return Err(Error::Numeric("non-finite integrand".into()));
        }
        if err <= tol.max(1e-15 * value.abs()) || depth == 0 {
            return Ok((value, err));
        }
        let m = 0.5 * (a + b);
        let (l, el) = recurse(f, a, m, tol / 2.0, depth - 1)?;
        let (r, er) = recurse(f, m, b, tol / 2.0, depth - 1)?;
        Ok((l + r, el + er))
    }
    let (value, err) = recurse(&f, a, b, tol, 40)?;
    if err > tol.max(1e-12 * value.abs()) * 1e3 {
        return Err(Error::Numeric(format!(
            "quadrature on [{a}, {b}] stalled with error estimate {err:e}"
        )));
    }
    Ok(value)
}
