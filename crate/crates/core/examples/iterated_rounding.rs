//! Freezing polarized variables one at a time around a p=1 solver.

use qlow::objectives::Objective;
use qlow::optimize::{iterated_rounding, qaoa_solver, RoundingConfig, SearchConfig};
use qlow::problems::{self, Distribution};

fn main() -> qlow::Result<()> {
    let search = SearchConfig {
        resolution: 32,
        tolerance: 1e-4,
        max_iterations: 200,
        ..SearchConfig::default()
    };
    let mut solved = 0;
    for seed in 0..10 {
        let p = problems::uncoupled_spins(10, Distribution::Gaussian, seed)?;
        let cfg = RoundingConfig {
            beta_r: 1e3,
            n_f: 10,
            reoptimize: true,
            seed,
        };
        let out = iterated_rounding(&p, qaoa_solver(1, Objective::Mean, search.clone()), &cfg)?;
        solved += out.is_ground_state as usize;
    }
    println!("gaussian spins n=10: {solved}/10 solved exactly");

    let grid = problems::grid_ferromagnet_2d(3, 4, 1.0)?;
    let cfg = RoundingConfig {
        beta_r: 10.0,
        n_f: 12,
        reoptimize: true,
        seed: 0,
    };
    let out = iterated_rounding(&grid, qaoa_solver(1, Objective::Mean, search), &cfg)?;
    println!("3x4 grid, J2=1: final value {} (ground: {})", out.value, out.is_ground_state);
    for step in &out.trace {
        println!("  frozen {:>2}: success {:.4} next {:?}", step.frozen, step.success_probability, step.chosen);
    }
    Ok(())
}
