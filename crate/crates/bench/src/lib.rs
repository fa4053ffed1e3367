//! Shared fixtures for the criterion benchmarks.

use uncrel::{random_observable, random_state, CMatrix, Observable, QuantumState, SplitMix64};

/// Deterministic Hermitian matrix of the given dimension.
pub fn hermitian_fixture(dim: usize, seed: u64) -> CMatrix {
    let mut rng = SplitMix64::new(seed);
    random_observable(dim, "H", &mut rng).matrix().clone()
}

/// Deterministic full-rank state of the given dimension.
pub fn state_fixture(dim: usize, seed: u64) -> QuantumState {
    let mut rng = SplitMix64::new(seed);
    random_state(dim, dim, &mut rng).expect("rank == dim is valid")
}

/// Deterministic observable set.
pub fn observable_set(dim: usize, count: usize, seed: u64) -> Vec<Observable> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|i| random_observable(dim, &format!("A{}", i + 1), &mut rng))
        .collect()
}
