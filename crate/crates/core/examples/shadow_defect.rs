//! Shadow defects: a flat landscape from a symmetric shell, and a distant
//! spike that degrades the uncut evolution but not the ball-cut one.

use qlow::experiments::{run_shadow_defect, shell_landscape_deviation, ShadowConfig};

fn main() -> qlow::Result<()> {
    for n in [5, 6, 7, 8] {
        println!(
            "shell weight {} of n={n}: max |Mean - Mean(0,0)| = {:.3e}",
            n / 2,
            shell_landscape_deviation(n, n / 2, 32)?
        );
    }
    let records = run_shadow_defect(&ShadowConfig {
        flat_sizes: vec![],
        ..ShadowConfig::default()
    })?;
    for r in records {
        println!("{:<10} {:<10} {:<10} ground_prob {:.4}", r.family, r.solver, r.objective, r.ground_prob);
    }
    Ok(())
}
