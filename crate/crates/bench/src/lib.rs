//! Shared helpers for the benchmarks.

use std::path::PathBuf;

/// Directory holding the bundled example graphs.
pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Text of a bundled graph file.
pub fn corpus_file(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(name)).expect("bundled corpus file")
}
