//! Calabi-Yau threefolds attached to the A4 root lattice: point counts over
//! finite fields, node combinatorics, Hodge data, elliptic fibrations and
//! Frobenius trace verification against weight 4 modular forms.

pub mod cli;
pub mod elliptic;
pub mod error;
pub mod eta;
pub mod finite_field;
pub mod geometry;
pub mod hodge;
pub mod intersection;
pub mod livne;
pub mod point_count;
pub mod rational;
pub mod refdata;
pub mod report;

pub use error::{Error, Result};
pub use finite_field::PrimeContext;
pub use geometry::{FamilyParam, NodeWitness};
pub use rational::Rational;

/// Number of worker threads for per-prime fan-out, from `A4CY_WORKERS` (default 1).
pub fn worker_count() -> usize {
    std::env::var("A4CY_WORKERS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(1)
}

/// Runs `f` inside a rayon pool sized by [`worker_count`].
pub fn with_workers<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(worker_count()).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
