//! Criterion benchmarks for `treeconj-core`; see `benches/`.
