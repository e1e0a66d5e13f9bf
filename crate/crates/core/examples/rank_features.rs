//! Information gain of every feature on the mini-corpus, best first.
//!
//! Run with `cargo run --example rank_features`.

use medqual::features::{read_csv, Variant};
use medqual::learner::rank_features;
use medqual::resources::data_dir;
use medqual::sampling::Dataset;

fn main() -> medqual::Result<()> {
    let file = std::fs::File::open(data_dir().join("mini_features.golden.csv")).unwrap();
    let data = Dataset::new(read_csv(file)?);
    for (feature, gain) in rank_features(&data, Variant::FullMedicalDomain.features()) {
        println!("{:<24} {gain:.4}", feature.name());
    }
    Ok(())
}
