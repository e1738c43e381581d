//! Per-term and per-qubit angles on a detuned 2D ferromagnet.

use qlow::ansatz::qaoa_state;
use qlow::objectives::Objective;
use qlow::optimize::{optimize_relaxed, SearchConfig};
use qlow::problems;
use qlow::Laplacian;

fn main() -> qlow::Result<()> {
    let search = SearchConfig {
        resolution: 24,
        tolerance: 1e-4,
        max_iterations: 200,
        ..SearchConfig::default()
    };
    for j2 in [0.2, 1.0] {
        let p = problems::grid_ferromagnet_2d(3, 4, j2)?;
        let lap = Laplacian::hypercube(p.n());
        for (label, g, b) in [("standard", false, false), ("gamma", true, false), ("beta", false, true), ("both", true, true)] {
            let best = optimize_relaxed(&p, &lap, 1, &Objective::Mean, &search, g, b)?;
            let s = qaoa_state(&p, &lap, &best.schedule, None)?;
            println!(
                "J2={j2} {label:<9} <f>={:>8.4} ground_prob={:.4}",
                best.value,
                s.ground_state_mass(p.dense())?
            );
        }
    }
    Ok(())
}
