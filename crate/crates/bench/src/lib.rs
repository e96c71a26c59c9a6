//! Criterion benchmarks for the dealias pipeline stages live in `benches/`.
