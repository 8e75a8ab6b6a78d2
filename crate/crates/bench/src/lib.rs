//! Criterion benchmarks for the enumeration and series kernels; see `benches/`.
//!
//! Run with `cargo bench -p eostrata-bench`.
