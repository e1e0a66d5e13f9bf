//! Class rebalancing: random undersampling and SMOTE oversampling.
//!
//! Both operations draw from a single ChaCha8 stream seeded by the caller,
//! visiting classes in quality order, so a fixed seed gives identical output.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::QualityClass;
use crate::error::{Error, Result};
use crate::features::{Feature, FeatureVector};

/// Attributes SMOTE interpolates. The category is nominal and is copied.
pub const NUMERIC_FEATURES: [Feature; 7] = [
    Feature::ArticleLength,
    Feature::NumHeadings,
    Feature::Completeness,
    Feature::RefsPerLength,
    Feature::Informativeness,
    Feature::DomainInformativeness,
    Feature::InfoboxNormSize,
];

/// Per-class targets for the majority classes of the medical corpus.
pub fn standard_undersample_targets() -> BTreeMap<QualityClass, usize> {
    use QualityClass::*;
    [(Stub, 1015), (Start, 1015), (C, 1015), (B, 1015)]
        .into_iter()
        .collect()
}

/// Oversampling percentages for the two minority classes.
pub fn standard_smote_percent() -> BTreeMap<QualityClass, u32> {
    [(QualityClass::GA, 40), (QualityClass::FA, 180)].into_iter().collect()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub vectors: Vec<FeatureVector>,
}

impl Dataset {
    pub fn new(vectors: Vec<FeatureVector>) -> Self {
        Dataset { vectors }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Instances per class; classes without members are absent.
    pub fn class_counts(&self) -> BTreeMap<QualityClass, usize> {
        let mut counts = BTreeMap::new();
        for v in &self.vectors {
            *counts.entry(v.label).or_insert(0) += 1;
        }
        counts
    }

    pub fn synthetic_count(&self) -> usize {
        self.vectors.iter().filter(|v| v.synthetic).count()
    }

    /// Indices of the real (non-synthetic) members of `class`, in order.
    pub fn real_members(&self, class: QualityClass) -> Vec<usize> {
        self.vectors
            .iter()
            .enumerate()
            .filter(|(_, v)| v.label == class && !v.synthetic)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset::new(indices.iter().map(|&i| self.vectors[i].clone()).collect())
    }
}

impl From<Vec<FeatureVector>> for Dataset {
    fn from(vectors: Vec<FeatureVector>) -> Self {
        Dataset { vectors }
    }
}

/// Keeps a uniform random subset of `targets[c]` members of each targeted
/// class. Relative order of surviving vectors is preserved.
pub fn undersample(data: &Dataset, targets: &BTreeMap<QualityClass, usize>, seed: u64) -> Result<Dataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep = vec![true; data.len()];
    for (&class, &target) in targets {
        let members: Vec<usize> = (0..data.len()).filter(|&i| data.vectors[i].label == class).collect();
        if target > members.len() {
            return Err(Error::TargetTooLarge {
                class,
                target,
                available: members.len(),
            });
        }
        let chosen = rand::seq::index::sample(&mut rng, members.len(), target);
        let mut survive = vec![false; members.len()];
        for i in chosen.iter() {
            survive[i] = true;
        }
        for (m, s) in members.iter().zip(survive) {
            keep[*m] = s;
        }
    }
    Ok(Dataset::new(
        data.vectors
            .iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(v, _)| v.clone())
            .collect(),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoteConfig {
    /// Neighbours considered per seed.
    pub k: usize,
    /// Oversampling percentage per class; 100 doubles the class.
    pub percent: BTreeMap<QualityClass, u32>,
    pub seed: u64,
}

impl Default for SmoteConfig {
    fn default() -> Self {
        SmoteConfig {
            k: 5,
            percent: BTreeMap::new(),
            seed: 0,
        }
    }
}

impl SmoteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("SMOTE k must be at least 1".into()));
        }
        Ok(())
    }

    /// floor(percent / 100 * n)
    pub fn synthetic_count(percent: u32, n: usize) -> usize {
        (percent as usize * n) / 100
    }
}

/// Min-max ranges of the numeric attributes over a set of members.
fn ranges(data: &Dataset, members: &[usize]) -> Vec<(f64, f64)> {
    NUMERIC_FEATURES
        .iter()
        .map(|&f| {
            members.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| {
                let x = data.vectors[i].value(f);
                (lo.min(x), hi.max(x))
            })
        })
        .collect()
}

fn distance(a: &FeatureVector, b: &FeatureVector, ranges: &[(f64, f64)]) -> f64 {
    let mut sum = 0.0;
    for (&f, &(lo, hi)) in NUMERIC_FEATURES.iter().zip(ranges) {
        let span = hi - lo;
        if span > 0.0 {
            let d = (a.value(f) - b.value(f)) / span;
            sum += d * d;
        }
    }
    if a.category != b.category {
        sum += 1.0;
    }
    sum.sqrt()
}

fn knn_among(data: &Dataset, members: &[usize], ranges: &[(f64, f64)], member: usize, k: usize) -> Vec<usize> {
    let seed = &data.vectors[member];
    let mut scored: Vec<(f64, usize)> = members
        .iter()
        .filter(|&&i| i != member)
        .map(|&i| (distance(seed, &data.vectors[i], ranges), i))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    scored.into_iter().take(k).map(|(_, i)| i).collect()
}

/// The `k` real members of `member`'s class closest to it, nearest first.
///
/// Distance is Euclidean over numeric attributes min-max normalised within
/// the class, plus 1 for a category mismatch. Ties go to the earlier index.
pub fn nearest_neighbors(data: &Dataset, member: usize, k: usize) -> Vec<usize> {
    let members = data.real_members(data.vectors[member].label);
    let r = ranges(data, &members);
    knn_among(data, &members, &r, member, k)
}

/// Appends synthetic vectors to each class named in `cfg.percent`.
///
/// Seeds are taken cyclically from one random permutation of the class's
/// real members. Every numeric attribute gets its own uniform gap, so each
/// value lies between the seed's and the neighbour's.
pub fn smote(data: &Dataset, cfg: &SmoteConfig) -> Result<Dataset> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = data.clone();

    for (&class, &percent) in &cfg.percent {
        if percent == 0 {
            continue;
        }
        let members = data.real_members(class);
        let n = members.len();
        if n < cfg.k + 1 {
            return Err(Error::ClassTooSmallForSmote {
                class,
                available: n,
                k: cfg.k,
            });
        }
        let wanted = SmoteConfig::synthetic_count(percent, n);
        let r = ranges(data, &members);
        let mut order = members.clone();
        order.shuffle(&mut rng);
        let mut neighbours: HashMap<usize, Vec<usize>> = HashMap::new();

        for s in 0..wanted {
            let seed_idx = order[s % n];
            let nn = neighbours
                .entry(seed_idx)
                .or_insert_with(|| knn_among(data, &members, &r, seed_idx, cfg.k));
            let neighbour = &data.vectors[nn[rng.random_range(0..nn.len())]];
            let seed = &data.vectors[seed_idx];

            let mut synth = seed.clone();
            for &f in &NUMERIC_FEATURES {
                let (a, b) = (seed.value(f), neighbour.value(f));
                let u: f64 = rng.random();
                // rounding can step just outside the segment
                let v = (a + u * (b - a)).clamp(a.min(b), a.max(b));
                synth.set_value(f, v);
            }
            synth.title = format!("{} [synthetic {} #{}]", seed.title, class, s + 1);
            synth.synthetic = true;
            synth.label = class;
            out.vectors.push(synth);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::Category;

    pub(crate) fn vector(label: QualityClass, x: f64) -> FeatureVector {
        FeatureVector {
            title: format!("{label}-{x}"),
            completeness: x,
            informativeness: 0.0,
            num_headings: 0.0,
            article_length: 0.0,
            refs_per_length: 0.0,
            domain_informativeness: 0.0,
            infobox_norm_size: 0.0,
            category: Category::O,
            label,
            synthetic: false,
        }
    }

    fn class_of(label: QualityClass, n: usize) -> Vec<FeatureVector> {
        (0..n).map(|i| vector(label, i as f64)).collect()
    }

    #[test]
    fn standard_counts() {
        let mut v = class_of(QualityClass::GA, 153);
        v.extend(class_of(QualityClass::FA, 58));
        let cfg = SmoteConfig {
            k: 5,
            percent: standard_smote_percent(),
            seed: 1,
        };
        let out = smote(&Dataset::new(v), &cfg).unwrap();
        let counts = out.class_counts();
        assert_eq!(counts[&QualityClass::GA], 214);
        assert_eq!(counts[&QualityClass::FA], 162);
        assert_eq!(out.synthetic_count(), 61 + 104);
    }

    #[test]
    fn zero_percent_is_identity() {
        let data = Dataset::new(class_of(QualityClass::GA, 3));
        let cfg = SmoteConfig {
            k: 5,
            percent: [(QualityClass::GA, 0)].into_iter().collect(),
            seed: 1,
        };
        assert_eq!(smote(&data, &cfg).unwrap(), data);
    }

    #[test]
    fn small_class_is_an_error() {
        let data = Dataset::new(class_of(QualityClass::FA, 5));
        let cfg = SmoteConfig {
            k: 5,
            percent: [(QualityClass::FA, 100)].into_iter().collect(),
            seed: 1,
        };
        let err = smote(&data, &cfg).unwrap_err();
        assert!(err.to_string().contains("FA"), "{err}");
    }

    #[test]
    fn neighbours_on_a_line() {
        let data = Dataset::new(
            [0.0, 1.0, 2.0, 10.0]
                .iter()
                .map(|&x| vector(QualityClass::C, x))
                .collect(),
        );
        assert_eq!(nearest_neighbors(&data, 0, 2), vec![1, 2]);
        assert_eq!(nearest_neighbors(&data, 0, 3), vec![1, 2, 3]);
    }

    #[test]
    fn duplicate_is_nearest() {
        let data = Dataset::new(
            [5.0, 0.0, 9.0, 5.0]
                .iter()
                .map(|&x| vector(QualityClass::C, x))
                .collect(),
        );
        assert_eq!(nearest_neighbors(&data, 0, 1), vec![3]);
    }

    #[test]
    fn category_mismatch_counts_one() {
        let mut v: Vec<_> = [0.0, 0.1, 1.0].iter().map(|&x| vector(QualityClass::C, x)).collect();
        v[1].category = Category::D;
        // normalised gap to v[1] is 0.1 plus the mismatch; to v[2] it is 1.0
        assert_eq!(nearest_neighbors(&Dataset::new(v), 0, 1), vec![2]);
    }

    #[test]
    fn undersample_targets() {
        let mut v = class_of(QualityClass::Stub, 20);
        v.extend(class_of(QualityClass::B, 4));
        let data = Dataset::new(v);
        let targets = [(QualityClass::Stub, 7)].into_iter().collect();
        let out = undersample(&data, &targets, 3).unwrap();
        assert_eq!(out.class_counts()[&QualityClass::Stub], 7);
        assert_eq!(out.class_counts()[&QualityClass::B], 4);
        assert_eq!(out, undersample(&data, &targets, 3).unwrap());

        let all = [(QualityClass::Stub, 20)].into_iter().collect();
        assert_eq!(undersample(&data, &all, 3).unwrap(), data);

        let none = [(QualityClass::Stub, 0)].into_iter().collect();
        assert!(!undersample(&data, &none, 3)
            .unwrap()
            .class_counts()
            .contains_key(&QualityClass::Stub));

        let too_many = [(QualityClass::B, 5)].into_iter().collect();
        assert!(matches!(
            undersample(&data, &too_many, 3),
            Err(Error::TargetTooLarge { .. })
        ));
    }

    #[test]
    fn undersample_standard_stub() {
        let data = Dataset::new(class_of(QualityClass::Stub, 9267));
        let targets = [(QualityClass::Stub, standard_undersample_targets()[&QualityClass::Stub])]
            .into_iter()
            .collect();
        let out = undersample(&data, &targets, 11).unwrap();
        assert_eq!(out.len(), 1015);
        // the other standard targets name classes this data lacks
        assert!(undersample(&data, &standard_undersample_targets(), 11).is_err());
    }
}
