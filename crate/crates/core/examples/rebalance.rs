//! Random undersampling followed by SMOTE on the mini-corpus features.
//!
//! Run with `cargo run --example rebalance`.

use std::collections::BTreeMap;

use medqual::features::read_csv;
use medqual::resources::data_dir;
use medqual::sampling::{nearest_neighbors, smote, undersample, Dataset, SmoteConfig};
use medqual::QualityClass;

fn show(label: &str, d: &Dataset) {
    let counts: Vec<String> = d.class_counts().iter().map(|(c, n)| format!("{c}={n}")).collect();
    println!("{label:<12} {} ({} synthetic)", counts.join(" "), d.synthetic_count());
}

fn main() -> medqual::Result<()> {
    let file = std::fs::File::open(data_dir().join("mini_features.golden.csv")).unwrap();
    let data = Dataset::new(read_csv(file)?);
    show("original", &data);

    let targets = BTreeMap::from([(QualityClass::Stub, 6), (QualityClass::Start, 6)]);
    let reduced = undersample(&data, &targets, 1)?;
    show("undersample", &reduced);

    let cfg = SmoteConfig {
        k: 3,
        percent: BTreeMap::from([(QualityClass::GA, 40), (QualityClass::FA, 180)]),
        seed: 1,
    };
    let balanced = smote(&reduced, &cfg)?;
    show("smote", &balanced);

    let fa = balanced.real_members(QualityClass::FA)[0];
    let nn: Vec<&str> = nearest_neighbors(&balanced, fa, 3)
        .iter()
        .map(|&i| balanced.vectors[i].title.as_str())
        .collect();
    println!("\nneighbours of {}: {}", balanced.vectors[fa].title, nn.join(", "));
    for v in balanced.vectors.iter().filter(|v| v.synthetic).take(3) {
        println!(
            "{} headings={:.2} length={:.3}",
            v.title, v.num_headings, v.article_length
        );
    }
    Ok(())
}
