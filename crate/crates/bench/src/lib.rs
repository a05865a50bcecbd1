//! Benchmark crate: see `benches/kernels.rs` for the measured kernels.
