//! End-to-end run on the two synthetic corpora: extraction, SMOTE inside
//! the folds and cross-validation of every feature set, with timings.
//!
//! Run with `cargo run --release --example benchmark [articles_per_class]`.

use std::collections::BTreeMap;
use std::time::Instant;

use medqual::dictionary::Dictionary;
use medqual::features::{FeatureExtractor, Variant};
use medqual::learner::{cross_validate, CvOptions, ForestConfig};
use medqual::sampling::{Dataset, SmoteConfig};
use medqual::synth::{domain_signal_corpus, separable_corpus};
use medqual::text::TextPipeline;
use medqual::wikitext::build_title_index;
use medqual::{QualityClass, RawArticle};

fn run(name: &str, corpus: Vec<RawArticle>) -> medqual::Result<()> {
    let pipeline = TextPipeline::bundled();
    let dictionary = Dictionary::bundled(&pipeline);
    let t = Instant::now();
    let index = build_title_index(&corpus)?;
    let data = Dataset::new(FeatureExtractor::new(&index, &dictionary, &pipeline).extract_all(&corpus));
    println!("{name}: extracted {} articles in {:.2?}", data.len(), t.elapsed());

    let opts = CvOptions {
        smote_in_folds: Some(SmoteConfig {
            k: 5,
            percent: BTreeMap::from([(QualityClass::FA, 50)]),
            seed: 1,
        }),
        ..CvOptions::default()
    };
    for v in [Variant::Baseline, Variant::MedicalDomain, Variant::FullMedicalDomain] {
        let t = Instant::now();
        let r = cross_validate(&data, v, &ForestConfig::default(), &opts)?;
        let roc: f64 = r.per_class_roc.values().sum::<f64>() / r.per_class_roc.len() as f64;
        println!(
            "  {:<18} macro-F {:.3}  mean ROC {:.3}  {:.2?}",
            v.as_str(),
            r.macro_f,
            roc,
            t.elapsed()
        );
    }
    Ok(())
}

fn main() -> medqual::Result<()> {
    let per_class = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    run("separable", separable_corpus(per_class, 7))?;
    run("domain signal", domain_signal_corpus(per_class, 7))
}
