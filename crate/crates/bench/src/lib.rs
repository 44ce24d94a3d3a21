//! Criterion benchmarks for the `koszul` crate live in `benches/`.
