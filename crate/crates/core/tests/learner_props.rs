use medqual::features::{read_csv, Feature, FeatureVector, Variant};
use medqual::learner::{train_forest, ForestConfig};
use medqual::sampling::Dataset;
use proptest::prelude::*;

fn mini() -> Vec<FeatureVector> {
    let file = std::fs::File::open(medqual::resources::data_dir().join("mini_features.golden.csv")).unwrap();
    read_csv(file).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    // a strictly increasing rescaling keeps every split and so every
    // prediction on the training rows
    #[test]
    fn monotone_rescaling_keeps_training_predictions(scale in 0.1f64..10.0, shift in -5.0f64..5.0, seed in 0u64..1000) {
        let original = mini();
        let rescaled: Vec<FeatureVector> = original
            .iter()
            .cloned()
            .map(|mut v| {
                v.article_length = v.article_length * scale + shift;
                v
            })
            .collect();
        let cfg = ForestConfig { num_trees: 15, seed, ..ForestConfig::default() };
        let features = Variant::FullMedicalDomain.features();
        let a = train_forest(&Dataset::new(original.clone()), features, &cfg).unwrap();
        let b = train_forest(&Dataset::new(rescaled.clone()), features, &cfg).unwrap();
        for (x, y) in original.iter().zip(&rescaled) {
            prop_assert_eq!(a.predict_proba(x), b.predict_proba(y));
        }
    }

    #[test]
    fn probabilities_form_a_distribution(seed in 0u64..1000) {
        let data = Dataset::new(mini());
        let cfg = ForestConfig { num_trees: 10, seed, ..ForestConfig::default() };
        let model = train_forest(&data, Variant::Baseline.features(), &cfg).unwrap();
        for v in &data.vectors {
            let p = model.predict_proba(v);
            prop_assert_eq!(p.len(), 6);
            prop_assert!(p.iter().all(|&x| (0.0..=1.0).contains(&x)));
            prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn features_unused_by_the_variant_do_not_matter() {
    let original = mini();
    let mut scrambled = original.clone();
    for (i, v) in scrambled.iter_mut().enumerate() {
        v.set_value(Feature::InfoboxNormSize, (i * 7 % 13) as f64);
        v.set_value(Feature::DomainInformativeness, (i * 5 % 11) as f64);
    }
    let cfg = ForestConfig {
        num_trees: 20,
        seed: 4,
        ..ForestConfig::default()
    };
    let a = train_forest(&Dataset::new(original), Variant::Baseline.features(), &cfg).unwrap();
    let b = train_forest(&Dataset::new(scrambled), Variant::Baseline.features(), &cfg).unwrap();
    assert_eq!(a, b);
}
