//! Criterion benchmarks for the opball kernels live in `benches/`.
