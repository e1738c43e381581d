//! Optimized ground-state probability on detuned chains as depth grows.

use qlow::experiments::{run_scale_sweep, ScaleConfig, ScaleFamily};
use qlow::optimize::SearchConfig;

fn main() -> qlow::Result<()> {
    let config = ScaleConfig {
        family: ScaleFamily::Chain,
        n: 8,
        p_list: vec![1, 2, 3],
        j2_list: vec![0.2, 0.6, 1.0],
        seeds: vec![0],
        search: SearchConfig {
            resolution: 24,
            tolerance: 1e-4,
            max_iterations: 150,
            ..SearchConfig::default()
        },
        ..ScaleConfig::default()
    };
    for r in run_scale_sweep(&config)? {
        println!("p={} J2={:.1} ground_prob={:.4} ratio={:.4}", r.p, r.j2.unwrap_or(f64::NAN), r.ground_prob, r.approx_ratio.unwrap_or(f64::NAN));
    }
    Ok(())
}
