//! Annealing a single spin: the Landau-Zener formula, its Gaussian averages
//! and a direct integration of the Schrodinger equation.

use qlow::analytic::{gamma_success_bound, landau_zener, landau_zener_sweep, p_lz};

fn main() -> qlow::Result<()> {
    for rate in [0.5, 1.0, 2.0] {
        let lz = landau_zener(rate)?;
        println!("Gamma={rate}: O_LZ={:.5} A_LZ={:.5} R_LZ={:.5}", lz.o_lz, lz.a_lz, lz.r_lz);
        for alpha in [0.3, 1.0] {
            let t = 50.0 / rate;
            println!(
                "  alpha={alpha}: formula {:.6}, RK4 {:.6}",
                p_lz(alpha, rate),
                landau_zener_sweep(alpha, rate, t, 1e-3)
            );
        }
    }
    for n in [10, 100, 1000] {
        let (exact, approx) = gamma_success_bound(0.5, n)?;
        println!("rate for 50% success on {n} spins: {exact:.3e} (large-n form {approx:.3e})");
    }
    Ok(())
}
