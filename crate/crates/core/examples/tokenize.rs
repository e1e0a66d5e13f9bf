//! Sentence splitting, tokenization, lemmas and stopword removal.
//!
//! Run with `cargo run --example tokenize -- "Some text. More text."`.

use medqual::text::{remove_stopwords, TextPipeline};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| {
        "Dr. Smith treated the patients' injuries. Fevers and headaches were common, e.g. in children!".into()
    });
    let p = TextPipeline::bundled();
    let t = p.tokenize(&text);
    for (i, sentence) in t.sentences.iter().enumerate() {
        println!("sentence {i}");
        for tok in sentence {
            let mut flags = String::new();
            if tok.is_stopword {
                flags.push_str(" stop");
            }
            if tok.is_function_word {
                flags.push_str(" function");
            }
            println!("  {:<12} {:<12}{flags}", tok.surface, tok.lemma);
        }
    }
    let kept = remove_stopwords(&t, &p.stopwords);
    let words: Vec<&str> = kept.tokens().map(|t| t.surface.as_str()).collect();
    println!(
        "\n{} tokens, {} after stopword removal: {}",
        t.token_count(),
        kept.token_count(),
        words.join(" ")
    );
}
