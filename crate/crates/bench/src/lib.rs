//! Criterion benchmarks for the gf2q workspace; see `benches/`.
