use num_complex::Complex64;
use proptest::prelude::*;
use qlow::ansatz::{multilinear_value, product_state, qaoa_state, ProductAngles, Schedule};
use qlow::laplacian::{ball_uniform_state, ball_vertices, SparseGraph};
use qlow::objectives::{evaluate, termwise_mean, Objective};
use qlow::problems::ProblemMeta;
use qlow::state::walsh_hadamard;
use qlow::{DiagonalProblem, Laplacian, Statevector, ZTerm};

fn problem_strategy() -> impl Strategy<Value = DiagonalProblem> {
    (1usize..=7).prop_flat_map(|n| {
        let term = (proptest::collection::btree_set(0..n, 1..=n.min(3)), -2.0f64..2.0)
            .prop_map(|(qs, c)| ZTerm::new(qs.into_iter().collect(), c));
        proptest::collection::vec(term, 1..10)
            .prop_map(move |ts| DiagonalProblem::from_terms(n, ts, ProblemMeta::new("random")).unwrap())
    })
}

fn state_for(n: usize, raw: &[(f64, f64)]) -> Statevector {
    let amps: Vec<Complex64> = (0..1usize << n)
        .map(|z| {
            let (a, b) = raw[z % raw.len()];
            Complex64::new(a + 0.01 * z as f64, b)
        })
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    Statevector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn raw_amps() -> impl Strategy<Value = Vec<(f64, f64)>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qaoa_preserves_norm(p in problem_strategy(), g in -4.0f64..4.0, b in -4.0f64..4.0, kind in 0u8..3) {
        let n = p.n();
        let lap = match kind {
            0 => Laplacian::hypercube(n),
            1 => Laplacian::CompleteGraph,
            _ => Laplacian::weighted_hypercube((0..n).map(|i| 1.0 / (1.0 + i as f64)).collect()).unwrap(),
        };
        let s = qaoa_state(&p, &lap, &Schedule::standard(&[g, -g / 2.0], &[b, b / 3.0]).unwrap(), None).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn fwht_is_an_involution(n in 1usize..=10, raw in raw_amps()) {
        let s = state_for(n, &raw);
        let mut a = s.amps().to_vec();
        walsh_hadamard(&mut a);
        walsh_hadamard(&mut a);
        let scale = 1.0 / (1u64 << n) as f64;
        for (x, y) in a.iter().zip(s.amps()) {
            prop_assert!((x * scale - y).norm() < 1e-12);
        }
    }

    #[test]
    fn multilinear_extension_agrees_on_vertices(p in problem_strategy()) {
        let n = p.n();
        for z in 0..1u64 << n {
            let x: Vec<f64> = (0..n).map(|i| (z >> i & 1) as f64).collect();
            prop_assert!((multilinear_value(&p, &x).unwrap() - p.value(z)).abs() < 1e-10);
        }
    }

    #[test]
    fn multilinear_extension_is_the_product_state_mean(p in problem_strategy(), seed in any::<u64>()) {
        let n = p.n();
        let thetas: Vec<f64> = (0..n).map(|i| ((seed >> (i * 5)) & 31) as f64 / 10.0).collect();
        let x: Vec<f64> = thetas.iter().map(|t| t.sin().powi(2)).collect();
        let s = product_state(&ProductAngles { thetas }).unwrap();
        let mean = evaluate(&Objective::Mean, &s, &p, None).unwrap();
        prop_assert!((mean - multilinear_value(&p, &x).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn term_list_matches_dense_table(p in problem_strategy(), raw in raw_amps()) {
        let s = state_for(p.n(), &raw);
        for z in 0..1u64 << p.n() {
            prop_assert!((p.eval_terms(z) - p.value(z)).abs() < 1e-9);
        }
        let dense = evaluate(&Objective::Mean, &s, &p, None).unwrap();
        prop_assert!((dense - termwise_mean(&s, &p).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn ball_cut_conserves_probability_inside_the_ball(n in 2usize..=8, c in any::<u64>(), r in 0usize..8, beta in 0.0f64..6.0) {
        let center = c % (1 << n);
        let radius = r % n;
        let lap = Laplacian::ball_cut(Laplacian::hypercube(n), center, radius).unwrap();
        let mut s = ball_uniform_state(n, center, radius).unwrap();
        lap.evolve(&mut s, beta).unwrap();
        let ball = ball_vertices(n, center, radius);
        let inside: f64 = ball.iter().map(|&z| s.amps()[z as usize].norm_sqr()).sum();
        prop_assert!((inside - 1.0).abs() < 1e-10);
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn product_ansatz_has_schmidt_rank_one(thetas in proptest::collection::vec(-3.0f64..3.0, 2..=6), cut in 1usize..6) {
        let n = thetas.len();
        let k = cut.min(n - 1);
        let s = product_state(&ProductAngles { thetas }).unwrap();
        let m = |a: usize, b: usize| s.amps()[a | b << k];
        // All 2x2 minors of the reshaped amplitude matrix vanish.
        for a in 0..1usize << k {
            for b in 0..1usize << (n - k) {
                let minor = m(a, b) * m(0, 0) - m(a, 0) * m(0, b);
                prop_assert!(minor.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn hypercube_fast_path_matches_explicit_graph_up_to_phase(n in 1usize..=6, beta in -3.0f64..3.0, raw in raw_amps()) {
        let s = state_for(n, &raw);
        let mut fast = s.clone();
        Laplacian::hypercube(n).evolve(&mut fast, beta).unwrap();
        let mut slow = s.clone();
        Laplacian::CustomSparse(SparseGraph::hypercube(&vec![1.0; n]).unwrap()).evolve(&mut slow, beta).unwrap();
        let phase = Complex64::new(0.0, beta * n as f64).exp();
        for (a, b) in fast.amps().iter().zip(slow.amps()) {
            prop_assert!((a * phase - b).norm() < 1e-9);
        }
    }
}
