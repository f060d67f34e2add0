//! Exact diagonalization of periodic spin chains on the full `2^N` space.
//!
//! Independent of the free-fermion solution: the Hamiltonian is applied as a
//! sum of Pauli strings on bitmask basis states, and entropies come from
//! explicit partial traces. Intended as ground truth for `N ≤ 14`.

mod eigen;
mod entropy;
pub mod fermions;
mod operator;

pub use eigen::{
    dense_spectrum, ed_ground_manifold, ed_spectrum, parity_basis, EdSpectrum, DENSE_MAX_SITES, MAX_ITERATIVE_K,
};
pub use entropy::{
    ed_fermionic_subset_entropy, ed_fermionic_subset_entropy_complex, ed_subset_entropy, ed_subset_entropy_complex,
    MAX_SUBSET,
};
pub use operator::{build_hamiltonian, cluster_model, Axis, Hamiltonian, SpinOperatorSpec, SpinTerm, MAX_SITES};

/// Parity of the number of up spins, i.e. of Jordan–Wigner fermions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FermionParity {
    Even,
    Odd,
}

impl FermionParity {
    pub fn of_state(s: usize) -> Self {
        if s.count_ones() % 2 == 0 {
            FermionParity::Even
        } else {
            FermionParity::Odd
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EdError {
    #[error("N = {n_sites} is outside 1..={MAX_SITES}")]
    TooLarge { n_sites: usize },
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("state norm {norm} differs from 1")]
    Unnormalized { norm: f64 },
    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e}): {detail}")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        detail: String,
    },
}

/// `⟨ψ|Π σᶻ|ψ⟩`-style label: expectation of the fermion parity `(−1)^{N_up}`.
pub fn fermion_parity_expectation(state: &[f64]) -> f64 {
    state
        .iter()
        .enumerate()
        .map(|(s, a)| {
            let sign = if s.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            sign * a * a
        })
        .sum()
}
