//! Criterion benchmarks for the bcqt simulator live in `benches/`.
