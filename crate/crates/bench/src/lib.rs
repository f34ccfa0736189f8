//! Shared fixtures for the benchmarks.

use foldkit::gallery::{build_corpus, CorpusItem};
use foldkit::{build_root_system, RootSystem};

/// The root system and a seeded corpus of positively folded galleries.
pub fn fixture(label: &str, samples: usize) -> (RootSystem, Vec<CorpusItem>) {
    let rs = build_root_system(label).expect("supported label");
    let items = build_corpus(&rs, samples, 7, 12).items;
    (rs, items)
}
