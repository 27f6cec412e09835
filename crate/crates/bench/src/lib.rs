//! Benchmark-only crate; see benches/counting.rs.
