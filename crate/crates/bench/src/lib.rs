//! Shared inputs for the criterion benches.

use wzeta_core::ClassOneWeight;

/// Weights with coordinates cycling through 0..=bound, one per rank position.
pub fn sample_weights(rank: usize, bound: u64, count: usize) -> Vec<ClassOneWeight> {
    (0..count as u64)
        .map(|k| ClassOneWeight::new((0..rank as u64).map(|i| (k * 7 + i * 3) % (bound + 1)).collect()))
        .collect()
}
