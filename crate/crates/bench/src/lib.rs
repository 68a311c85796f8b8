//! Benchmark-only crate; see `benches/labeling.rs`.
