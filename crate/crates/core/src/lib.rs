//! `qlow` is a dense statevector laboratory for studying low-depth quantum
//! optimization on diagonal classical cost functions.
//!
//! The building blocks are:
//!
//! - [`state`]: statevectors, diagonal phases, the Walsh–Hadamard transform.
//! - [`problems`]: cost-function generators (uncoupled spins, Hamming ramp,
//!   spike, bush, k-spin ferromagnets, conflicted pairs, chains, grids,
//!   3-regular MaxCut) stored as Z-product terms plus a dense table.
//! - [`laplacian`]: graph Laplacians on bitstring space and their exact
//!   evolutions, including the Hamming-ball cut.
//! - [`ansatz`]: QAOA (standard and relaxed), the product ansatz and the
//!   qubit mean-field evolution.
//! - [`objectives`]: mean, Gibbs, CVaR and kinetic-energy-weighted objectives,
//!   approximation ratio and the one-step improvement proxy.
//! - [`optimize`]: grid + local parameter search, greedy mixer branches,
//!   iterated rounding and the classical restart baseline.
//! - [`analytic`]: closed-form single-spin and Landau–Zener oracles.
//! - [`experiments`]: data-generating pipelines emitting CSV records.
//! - [`cli`]: the `qlow` command-line front end.
//!
//! # Conventions
//!
//! Bitstrings are integers read little-endian: bit `i` of `z` is qubit `i`
//! and `Z_i |z> = (1 - 2 z_i) |z>`.
//!
//! One QAOA round applies `exp(-i gamma f)` followed by
//! `exp(-i beta Lbar)`, where `Lbar = -L_G` and for the hypercube
//! `Lbar = sum_i b_i X_i` (the degree term only contributes a global phase).
//! Under this convention a single spin `f = alpha Z` has
//! `<Z> = sin(2 beta) sin(2 alpha gamma)` after one round, so the binary
//! uncoupled-spin optimum sits at `(gamma, beta) = (-pi/4, pi/4)` and the
//! Hamming ramp `f = w` is solved exactly at `(-pi/2, pi/4)`.

pub mod analytic;
pub mod ansatz;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod laplacian;
pub mod objectives;
pub mod optimize;
pub mod problems;
mod quadrature;
pub mod state;

pub use error::{Error, Result};
pub use laplacian::Laplacian;
pub use problems::{DiagonalProblem, ZTerm};
pub use state::{PhaseTable, Statevector};

/// `gamma` that solves a uniform unit-field uncoupled problem in one round
/// when paired with [`BETA_QUARTER`].
pub const GAMMA_BINARY: f64 = -std::f64::consts::FRAC_PI_4;

/// The mixer angle that maps a basis state to a uniform-magnitude state.
pub const BETA_QUARTER: f64 = std::f64::consts::FRAC_PI_4;
