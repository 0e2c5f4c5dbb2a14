//! Criterion benchmarks for the `edgewise` crate live in `benches/`.
