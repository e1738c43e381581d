//! Potentials that one QAOA round solves exactly, and one that needs a
//! modified mixer.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

use qlow::ansatz::{qaoa_state, Schedule};
use qlow::problems::{self, ProblemMeta};
use qlow::{DiagonalProblem, Laplacian, ZTerm};

fn mass(p: &DiagonalProblem, lap: &Laplacian, g: f64, b: f64) -> qlow::Result<f64> {
    qaoa_state(p, lap, &Schedule::single(g, b), None)?.ground_state_mass(p.dense())
}

fn zz(n: usize, pairs: &[(usize, usize)]) -> qlow::Result<DiagonalProblem> {
    let terms = pairs.iter().map(|&(i, j)| ZTerm::new(vec![i, j], -1.0)).collect();
    DiagonalProblem::from_terms(n, terms, ProblemMeta::new("zz"))
}

fn main() -> qlow::Result<()> {
    for n in [4, 8, 12] {
        let ramp = problems::hamming_ramp(n)?;
        println!("ramp n={n:<2} (-pi/2, pi/4): {:.12}", mass(&ramp, &Laplacian::hypercube(n), -FRAC_PI_2, FRAC_PI_4)?);
    }
    for n in [3, 5, 7] {
        let k = problems::kspin_ferromagnet(n, 3)?;
        println!("3-spin n={n} (-pi/4, pi/4): {:.12}", mass(&k, &Laplacian::hypercube(n), -FRAC_PI_4, FRAC_PI_4)?);
    }
    let pair = zz(2, &[(0, 1)])?;
    println!("-Z0Z1 (3pi/4, pi/8): {:.12}", mass(&pair, &Laplacian::hypercube(2), 3.0 * FRAC_PI_4, FRAC_PI_8)?);
    let ghz = zz(3, &[(0, 1), (1, 2), (0, 2)])?;
    println!("triangle GHZ (-pi/4, pi/4): {:.12}", mass(&ghz, &Laplacian::hypercube(3), -FRAC_PI_4, FRAC_PI_4)?);

    let chain = zz(3, &[(0, 1), (1, 2)])?;
    let std = Laplacian::hypercube(3);
    let mut best = 0.0f64;
    for i in 0..=200 {
        for j in 0..=100 {
            let (g, b) = (-3.2 + 0.032 * i as f64, 0.0316 * j as f64);
            best = best.max(mass(&chain, &std, g, b)?);
        }
    }
    let modified = Laplacian::weighted_hypercube(vec![1.0, 0.0, 1.0])?;
    println!("chain, X0+X1+X2 best on grid: {best:.4}");
    println!("chain, X0+X2 (-pi/4, pi/4):   {:.12}", mass(&chain, &modified, -FRAC_PI_4, FRAC_PI_4)?);
    Ok(())
}
