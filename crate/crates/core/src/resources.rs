//! Resource files shipped with the crate.
//!
//! The same files live under `crates/core/data/` so they can be edited and
//! passed explicitly on the command line.

pub const STOPWORDS: &str = include_str!("../data/stopwords.txt");
pub const FUNCTION_WORDS: &str = include_str!("../data/function_words.txt");
pub const LEMMAS: &str = include_str!("../data/lemmas.tsv");
pub const DICTIONARY: &str = include_str!("../data/dictionary.tsv");

/// Directory holding the bundled data files, resolved at compile time.
pub fn data_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}
