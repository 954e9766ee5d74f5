//! Criterion benchmarks for the qanet graph kernels; see `benches/`.
