//! One-round improvement in solution overlap from different initial states
//! on the Hamming ramp.

use qlow::experiments::{run_improvement_proxy, ProxyConfig};

fn main() -> qlow::Result<()> {
    let records = run_improvement_proxy(&ProxyConfig {
        sizes: vec![4, 6, 8],
        ..ProxyConfig::default()
    })?;
    println!("{:>3} {:<14} {:>9} {:>9}", "n", "initial", "I", "overlap");
    for r in records {
        println!("{:>3} {:<14} {:>9.4} {:>9.4}", r.n, r.solver, r.value, r.ground_prob);
    }
    Ok(())
}
