//! Stratified k-fold cross-validation.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::forest::{argmax, train_forest_on, ForestConfig, TrainingSet};
use super::info_gain::info_gain;
use super::metrics::{empty_confusion, f_measure, roc_auc, Confusion};
use crate::corpus::QualityClass;
use crate::error::{Error, Result};
use crate::features::{Feature, Variant};
use crate::sampling::{smote, Dataset, SmoteConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvOptions {
    pub folds: usize,
    pub seed: u64,
    /// Oversample inside each training split instead of before the split.
    pub smote_in_folds: Option<SmoteConfig>,
}

impl Default for CvOptions {
    fn default() -> Self {
        CvOptions {
            folds: 10,
            seed: 1,
            smote_in_folds: None,
        }
    }
}

/// Fold id per instance. Each class is shuffled and dealt round-robin, so
/// fold sizes per class differ by at most one.
pub fn stratified_folds(labels: &[QualityClass], folds: usize, seed: u64) -> Result<Vec<usize>> {
    if folds < 2 {
        return Err(Error::Config(format!("need at least 2 folds, got {folds}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0; labels.len()];
    for class in QualityClass::ALL {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if members.is_empty() {
            continue;
        }
        if members.len() < folds {
            return Err(Error::ClassTooSmallForFolds {
                class,
                available: members.len(),
                folds,
            });
        }
        members.shuffle(&mut rng);
        for (pos, &i) in members.iter().enumerate() {
            assignment[i] = pos % folds;
        }
    }
    Ok(assignment)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub variant: Variant,
    pub features: Vec<Feature>,
    pub folds: usize,
    pub seed: u64,
    pub instances: usize,
    pub class_list: Vec<QualityClass>,
    /// `[actual][predicted]`, pooled over folds.
    pub confusion: Confusion,
    pub per_class_f: BTreeMap<QualityClass, f64>,
    pub per_class_roc: BTreeMap<QualityClass, f64>,
    /// Mean F over the classes present in the data.
    pub macro_f: f64,
    pub info_gain: BTreeMap<Feature, f64>,
}

/// Pooled out-of-fold evaluation of a forest on `variant`'s features.
pub fn cross_validate(data: &Dataset, variant: Variant, cfg: &ForestConfig, opts: &CvOptions) -> Result<EvalReport> {
    let features = variant.features();
    let labels: Vec<QualityClass> = data.vectors.iter().map(|v| v.label).collect();
    let fold_of = stratified_folds(&labels, opts.folds, opts.seed)?;
    let class_list = QualityClass::ALL.to_vec();
    let c = class_list.len();

    let mut proba: Vec<Vec<f64>> = vec![Vec::new(); data.len()];
    for fold in 0..opts.folds {
        let train_idx: Vec<usize> = (0..data.len()).filter(|&i| fold_of[i] != fold).collect();
        let mut train = data.subset(&train_idx);
        if let Some(smote_cfg) = &opts.smote_in_folds {
            let per_fold = SmoteConfig {
                seed: smote_cfg.seed.wrapping_add(fold as u64),
                ..smote_cfg.clone()
            };
            train = smote(&train, &per_fold)?;
        }
        let fold_cfg = ForestConfig {
            seed: cfg.seed.wrapping_add(fold as u64),
            ..cfg.clone()
        };
        let model = train_forest_on(&TrainingSet::from_dataset(&train, features), &fold_cfg)?;
        for i in (0..data.len()).filter(|&i| fold_of[i] == fold) {
            proba[i] = model.predict_proba(&data.vectors[i]);
        }
    }

    let mut confusion = empty_confusion(c);
    for (v, p) in data.vectors.iter().zip(&proba) {
        confusion[v.label.index()][argmax(p)] += 1;
    }
    let mut per_class_f = BTreeMap::new();
    let mut per_class_roc = BTreeMap::new();
    for (ci, &class) in class_list.iter().enumerate() {
        per_class_f.insert(class, f_measure(&confusion, ci));
        let scores: Vec<(f64, bool)> = data
            .vectors
            .iter()
            .zip(&proba)
            .map(|(v, p)| (p[ci], v.label == class))
            .collect();
        per_class_roc.insert(class, roc_auc(&scores));
    }
    let present: Vec<QualityClass> = data.class_counts().into_keys().collect();
    let macro_f = if present.is_empty() {
        0.0
    } else {
        present.iter().map(|c| per_class_f[c]).sum::<f64>() / present.len() as f64
    };

    Ok(EvalReport {
        variant,
        features: features.to_vec(),
        folds: opts.folds,
        seed: opts.seed,
        instances: data.len(),
        class_list,
        confusion,
        per_class_f,
        per_class_roc,
        macro_f,
        info_gain: features.iter().map(|&f| (f, info_gain(data, f))).collect(),
    })
}
