//! Exact counting and density analysis of k-normal elements of F_{q^n}
//! over F_q.
//!
//! An element alpha of F_{q^n} is k-normal over F_q when its Frobenius
//! orbit {alpha, alpha^q, ..., alpha^{q^{n-1}}} spans an F_q-subspace of
//! dimension n - k; the 0-normal elements are the classical normal
//! elements. This crate computes the exact count of k-normal elements two
//! independent ways (a divisor formula over the factorization of X^n - 1,
//! and a brute-force rank sweep), tabulates the densities and their
//! running averages in exact rational arithmetic, and explores the
//! main-term/remainder decomposition of the associated partial sums.
//!
//! Everything is deterministic: field constructions are canonical,
//! factorizations are ordered, and no randomness is used anywhere.
//!
//! The `examples/` directory is the best starting point; each example is a
//! runnable tour of one capability. A thin `knormal` binary exposes the
//! same operations as subcommands.

pub mod error;
pub mod fqpoly;
pub mod gf;
pub mod intfun;
pub mod meanvalue;
pub mod report;
pub mod spectrum;

pub use error::{Error, Result};

/// Resource caps for the operations that enumerate or sweep.
///
/// Refusals always name the cap that bound them.
#[derive(Clone, Debug)]
pub struct Budgets {
    /// Largest q^n an exhaustive element sweep may enumerate.
    pub enum_cap: u64,
    /// Largest candidate-G set a decomposition may collect.
    pub g_cap: usize,
    /// Largest t a decomposition may be asked for.
    pub decompose_t_cap: u64,
    /// Density-series length cap at q = 2; larger q scale down by log q.
    pub density_t_base: u64,
    /// Largest divisor list a single count may materialize.
    pub divisor_cap: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            enum_cap: 1 << 20,
            g_cap: 1_000_000,
            decompose_t_cap: 64,
            density_t_base: 10_000,
            divisor_cap: 1_000_000,
        }
    }
}

impl Budgets {
    /// Density-series cap for a given field size, scaled so the work stays
    /// comparable across q.
    pub fn density_t_cap(&self, q: u64) -> u64 {
        let scale = (2f64).ln() / (q as f64).ln();
        ((self.density_t_base as f64 * scale) as u64).max(1)
    }
}
