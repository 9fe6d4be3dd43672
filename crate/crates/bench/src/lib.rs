//! Criterion benchmarks for the counting kernels; see `benches/`.
