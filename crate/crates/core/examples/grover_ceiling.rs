//! The complete-graph mixer ignores problem structure: one round moves the
//! target overlap by O(2^-n) at best.

use std::f64::consts::PI;

use qlow::ansatz::{qaoa_state, Schedule};
use qlow::problems::ProblemMeta;
use qlow::{DiagonalProblem, Laplacian};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> qlow::Result<()> {
    for n in [6usize, 8, 10] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let values = (0..1usize << n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let p = DiagonalProblem::from_dense(values, ProblemMeta::new("random"))?;
        let mut best = (0.0, 0.0, 0.0);
        for i in 0..64 {
            for j in 0..64 {
                let (g, b) = (-PI + 2.0 * PI * i as f64 / 63.0, PI * j as f64 / 63.0);
                let m = qaoa_state(&p, &Laplacian::CompleteGraph, &Schedule::single(g, b), None)?.ground_state_mass(p.dense())?;
                if m > best.0 {
                    best = (m, g, b);
                }
            }
        }
        let base = 0.5f64.powi(n as i32);
        println!(
            "n={n:<2} gain {:.3e} (2^-n = {base:.3e}) at gamma={:.3} beta={:.3}",
            best.0 - base,
            best.1,
            best.2
        );
    }
    Ok(())
}
