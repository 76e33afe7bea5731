//! Benchmarks for the twist construction and checks; see `benches/`.

use padic_fuchs::Level;

/// The levels benchmarked, smallest first.
pub fn bench_levels() -> Vec<Level> {
    [(3, 1, 1), (5, 1, 1)]
        .iter()
        .map(|&(p, n, m)| Level::new(p, n, m).expect("benchmark level is valid"))
        .collect()
}
