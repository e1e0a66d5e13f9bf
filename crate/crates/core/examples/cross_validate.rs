//! Ten-fold cross-validation of the three feature sets on the mini-corpus,
//! printed as a report table.
//!
//! Run with `cargo run --release --example cross_validate`.

use medqual::features::{read_csv, Variant};
use medqual::learner::{cross_validate, CvOptions, ForestConfig, ReportDocument};
use medqual::resources::data_dir;
use medqual::sampling::Dataset;

fn main() -> medqual::Result<()> {
    let file = std::fs::File::open(data_dir().join("mini_features.golden.csv")).unwrap();
    let data = Dataset::new(read_csv(file)?);
    let cfg = ForestConfig::default();
    let opts = CvOptions::default();
    let mut runs = Vec::new();
    for v in [Variant::Baseline, Variant::MedicalDomain, Variant::FullMedicalDomain] {
        let r = cross_validate(&data, v, &cfg, &opts)?;
        println!("{:<18} macro-F {:.3}", v.as_str(), r.macro_f);
        runs.push(r);
    }
    println!();
    print!("{}", ReportDocument::new(runs).to_text());
    Ok(())
}
