//! Criterion benchmarks for pointwell-core live in `benches/`.
