//! Trains a forest on synthetic articles, saves it, reloads it and
//! classifies a few unseen articles.
//!
//! Run with `cargo run --release --example train_and_classify`.

use medqual::dictionary::Dictionary;
use medqual::features::{FeatureExtractor, Variant};
use medqual::learner::{train_forest, ForestConfig, ModelBundle};
use medqual::sampling::Dataset;
use medqual::synth::separable_corpus;
use medqual::text::TextPipeline;
use medqual::wikitext::build_title_index;

fn main() -> medqual::Result<()> {
    let pipeline = TextPipeline::bundled();
    let dictionary = Dictionary::bundled(&pipeline);
    let train = separable_corpus(30, 1);
    let index = build_title_index(&train)?;
    let data = Dataset::new(FeatureExtractor::new(&index, &dictionary, &pipeline).extract_all(&train));

    let variant = Variant::FullMedicalDomain;
    let cfg = ForestConfig {
        num_trees: 50,
        seed: 7,
        ..ForestConfig::default()
    };
    let forest = train_forest(&data, variant.features(), &cfg)?;
    let json = ModelBundle::new(variant, forest, index).to_json()?;
    println!("model: {} bytes of JSON", json.len());

    let model = ModelBundle::from_json(&json)?;
    // a different seed gives articles the forest has not seen
    let unseen = separable_corpus(2, 99);
    let extractor = FeatureExtractor::new(&model.title_index, &dictionary, &pipeline);
    for a in &unseen {
        let v = extractor.extract(a);
        let p = model.forest.predict_proba(&v);
        let probs: Vec<String> = p.iter().map(|x| format!("{x:.2}")).collect();
        println!(
            "{:<22} true {:<5} predicted {:<5} [{}]",
            a.title,
            a.label,
            model.forest.predict(&v),
            probs.join(" ")
        );
    }
    Ok(())
}
