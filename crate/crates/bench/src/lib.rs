//! Criterion benchmarks for `okamoto-core`; see `benches/`.
