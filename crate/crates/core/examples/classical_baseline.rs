//! Product-state restarts of the multilinear extension against QAOA depth.

use qlow::experiments::{run_ce_baseline, ScaleConfig, ScaleFamily};
use qlow::optimize::SearchConfig;

fn main() -> qlow::Result<()> {
    let config = ScaleConfig {
        family: ScaleFamily::Maxcut,
        n: 10,
        p_list: vec![1, 2, 3],
        j2_list: vec![0.5],
        seeds: vec![0, 1],
        classical_restarts: 200,
        search: SearchConfig {
            resolution: 20,
            tolerance: 1e-4,
            max_iterations: 150,
            ..SearchConfig::default()
        },
        ..ScaleConfig::default()
    };
    let out = run_ce_baseline(&config)?;
    for r in &out.records {
        println!("seed={} {:<9} p={} ground_prob={:.4}", r.seed, r.solver, r.p, r.ground_prob);
    }
    for c in &out.crossings {
        println!("seed={} classical={:.3} first matching depth={:?}", c.seed, c.classical, c.crossing_p);
    }
    Ok(())
}
