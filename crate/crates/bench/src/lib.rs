//! Criterion benchmarks for the girth engines, the search sieve and the
//! decoder. Run with `cargo bench -p vsldpc-bench`.
