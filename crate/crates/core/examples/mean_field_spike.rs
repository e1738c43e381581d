//! Mean-field evolution against the exact state on the spike potential.

use std::f64::consts::{FRAC_PI_4, PI};

use qlow::ansatz::{meanfield_state, qaoa_state, Schedule};
use qlow::problems;
use qlow::Laplacian;

fn main() -> qlow::Result<()> {
    let n = 8;
    let spike = problems::spike(n, 0.0, 0.5)?;
    let lap = Laplacian::hypercube(n);
    let (mut mf, mut exact) = ((0.0, 0.0), (0.0, 0.0));
    for k in 0..=2000 {
        let g = -PI + 2.0 * PI * k as f64 / 2000.0;
        let s = Schedule::single(g, FRAC_PI_4);
        let a = meanfield_state(&spike, &lap, &s)?.ground_state_mass(&spike);
        let b = qaoa_state(&spike, &lap, &s, None)?.ground_state_mass(spike.dense())?;
        if a > mf.0 {
            mf = (a, g);
        }
        if b > exact.0 {
            exact = (b, g);
        }
    }
    println!("beta = pi/4, best over gamma");
    println!("  mean-field: {:.4} at gamma={:.4}", mf.0, mf.1);
    println!("  exact:      {:.4} at gamma={:.4}", exact.0, exact.1);
    Ok(())
}
