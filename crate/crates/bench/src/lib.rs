//! Criterion benchmarks for the normal-form kernels and verification routines
//! live under `benches/`; this crate has no library surface of its own.
