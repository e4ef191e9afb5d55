//! Shared inputs for the benchmarks.

use pieri_core::composition::compositions;
use pieri_core::Composition;

/// Compositions of `n` parts with modulus exactly `m`, in lexicographic order.
pub fn workload(n: usize, m: u32) -> Vec<Composition> {
    compositions(n, m)
}

/// The largest composition of the workload in the fixed total order.
pub fn hardest(n: usize, m: u32) -> Composition {
    workload(n, m).into_iter().max_by(|a, b| a.total_cmp(b)).expect("nonempty")
}
