//! Terminology matching against the bundled dictionary.
//!
//! Run with `cargo run --example match_entities -- "text to scan"`.

use medqual::dictionary::{count_mentions, match_entities, Dictionary};
use medqual::text::TextPipeline;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| {
        "A history of head injuries. Imaging showed the aneurysm and vein of Galen; hypertension, heart failure \
         and fevers followed."
            .into()
    });
    let p = TextPipeline::bundled();
    let dict = Dictionary::bundled(&p);
    let tokens = p.tokenize(&text);
    let mentions = match_entities(&tokens, &dict);
    for m in &mentions {
        let entry = dict.entry(m.entry_id).unwrap();
        let span: Vec<&str> = tokens.sentences[m.sentence_index][m.token_start..m.token_end]
            .iter()
            .map(|t| t.surface.as_str())
            .collect();
        println!(
            "{:<36} -> {:<32} {:?} {:?}",
            span.join(" "),
            entry.surface,
            entry.semantic_group,
            m.match_kind
        );
    }
    println!(
        "{} mentions from {} dictionary entries",
        count_mentions(&mentions),
        dict.len()
    );
}
