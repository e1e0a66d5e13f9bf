//! Feature vectors for a corpus file, written as CSV to stdout.
//!
//! Run with `cargo run --example extract_features [corpus.jsonl]`. Defaults
//! to the bundled mini-corpus.

use medqual::corpus::load_corpus;
use medqual::dictionary::Dictionary;
use medqual::features::{write_csv, FeatureExtractor};
use medqual::resources::data_dir;
use medqual::text::TextPipeline;
use medqual::wikitext::build_title_index;

fn main() -> medqual::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| data_dir().join("mini_corpus.jsonl"));
    let read = load_corpus(&path)?;
    eprintln!(
        "{} articles, {} malformed lines skipped",
        read.articles.len(),
        read.skipped.len()
    );

    let pipeline = TextPipeline::bundled();
    let dictionary = Dictionary::bundled(&pipeline);
    let index = build_title_index(&read.articles)?;
    let extractor = FeatureExtractor::new(&index, &dictionary, &pipeline);

    // one article in detail
    if let Some(first) = read.articles.first() {
        let e = extractor.extract_detailed(first);
        eprintln!("{}: {:?}", first.title, e.intermediates);
    }
    let vectors = extractor.extract_all(&read.articles);
    write_csv(std::io::stdout().lock(), &vectors, false)
}
