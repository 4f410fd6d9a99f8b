//! Benchmarks for the arithmetic kernels; run `cargo bench -p carlitz-bench`.
