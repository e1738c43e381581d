//! Closed-form single-round performance on uncoupled spins, checked against
//! simulated random instances.

use qlow::experiments::{run_fig2_table, Fig2Config};

fn main() -> qlow::Result<()> {
    let out = run_fig2_table(&Fig2Config {
        seeds: 2000,
        ..Fig2Config::default()
    })?;
    println!("{:<20} {:>8} {:>9} {:>7} {:>7} {:>18}", "distribution", "gamma*", "C_m", "O", "R", "simulated C_m");
    for r in &out.table {
        let sim = match (r.sim_c_m, r.sim_c_m_stderr) {
            (Some(m), Some(se)) => format!("{m:.4} +- {se:.4}"),
            _ => "-".into(),
        };
        println!(
            "{:<20} {:>8.4} {:>9.5} {:>7.4} {:>7.4} {:>18}",
            r.distribution, r.gamma, r.c_m, r.overlap, r.ratio, sim
        );
    }
    for d in &out.decay {
        println!("gaussian n={} all-spins success: O^n = {:.4}, simulated {:.4}", d.n, d.analytic, d.simulated);
    }
    Ok(())
}
