//! Random forest of information-gain trees.
//!
//! Each tree is grown on a bootstrap sample. At every node the features are
//! visited in random order; at least `features_per_split` of them are tried
//! and the search continues past that number only while no split with
//! positive gain has been found. Numeric splits use midpoints between
//! consecutive distinct values (`x <= t` goes left); the nominal category
//! splits one value against the rest.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::info_gain::entropy;
use crate::corpus::QualityClass;
use crate::error::{Error, Result};
use crate::features::{Feature, FeatureVector};
use crate::sampling::Dataset;

/// Gains at or below this are treated as no improvement.
const MIN_GAIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestConfig {
    pub num_trees: usize,
    /// Features tried per split; `None` means floor(sqrt(F)).
    pub features_per_split: Option<usize>,
    pub min_leaf: usize,
    pub max_depth: Option<usize>,
    pub seed: u64,
    /// Train trees on the rayon pool. The forest is identical either way.
    pub parallel: bool,
}

impl Default for ForestConfig {
    fn default() -> Self {
        ForestConfig {
            num_trees: 100,
            features_per_split: None,
            min_leaf: 1,
            max_depth: None,
            seed: 1,
            parallel: true,
        }
    }
}

impl ForestConfig {
    pub fn resolved_features_per_split(&self, num_features: usize) -> usize {
        self.features_per_split
            .unwrap_or_else(|| ((num_features as f64).sqrt().floor() as usize).max(1))
    }

    pub fn validate(&self, num_features: usize) -> Result<()> {
        if self.num_trees == 0 {
            return Err(Error::Config("num_trees must be at least 1".into()));
        }
        if self.min_leaf == 0 {
            return Err(Error::Config("min_leaf must be at least 1".into()));
        }
        let k = self.resolved_features_per_split(num_features);
        if k == 0 || k > num_features {
            return Err(Error::Config(format!(
                "features_per_split must be between 1 and {num_features}, got {k}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Node {
    Leaf {
        counts: Vec<u32>,
    },
    Threshold {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Equals {
        feature: usize,
        value: usize,
        yes: usize,
        no: usize,
    },
}

/// Nodes in an arena; the root is node 0. `feature` fields index the
/// model's feature list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    pub fn leaf_for(&self, row: &[f64]) -> &[u32] {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                Node::Leaf { counts } => return counts,
                Node::Threshold {
                    feature,
                    threshold,
                    left,
                    right,
                } => i = if row[*feature] <= *threshold { *left } else { *right },
                Node::Equals {
                    feature,
                    value,
                    yes,
                    no,
                } => i = if row[*feature] as usize == *value { *yes } else { *no },
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn go(t: &Tree, i: usize) -> usize {
            match &t.nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Threshold { left, right, .. } => 1 + go(t, *left).max(go(t, *right)),
                Node::Equals { yes, no, .. } => 1 + go(t, *yes).max(go(t, *no)),
            }
        }
        go(self, 0)
    }

    pub fn leaves(&self) -> impl Iterator<Item = &[u32]> {
        self.nodes.iter().filter_map(|n| match n {
            Node::Leaf { counts } => Some(counts.as_slice()),
            _ => None,
        })
    }

    /// Checks child references and leaf widths.
    fn check(&self, num_features: usize, num_classes: usize) -> std::result::Result<(), String> {
        let n = self.nodes.len();
        if n == 0 {
            return Err("tree without nodes".into());
        }
        for (i, node) in self.nodes.iter().enumerate() {
            let (f, a, b) = match node {
                Node::Leaf { counts } => {
                    if counts.len() != num_classes || counts.iter().all(|&c| c == 0) {
                        return Err(format!("node {i}: bad leaf histogram"));
                    }
                    continue;
                }
                Node::Threshold {
                    feature, left, right, ..
                } => (*feature, *left, *right),
                Node::Equals { feature, yes, no, .. } => (*feature, *yes, *no),
            };
            // children always follow their parent, which also rules out cycles
            if f >= num_features || a <= i || b <= i || a >= n || b >= n {
                return Err(format!("node {i}: dangling reference"));
            }
        }
        Ok(())
    }
}

/// Rows projected onto a feature list, with class indices as labels.
#[derive(Debug, Clone)]
pub struct TrainingSet {
    pub features: Vec<Feature>,
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
}

impl TrainingSet {
    pub fn from_dataset(data: &Dataset, features: &[Feature]) -> Self {
        TrainingSet {
            features: features.to_vec(),
            rows: data.vectors.iter().map(|v| v.project(features)).collect(),
            labels: data.vectors.iter().map(|v| v.label.index()).collect(),
        }
    }
}

struct Grower<'a> {
    data: &'a TrainingSet,
    nominal: Vec<Option<usize>>,
    num_classes: usize,
    k: usize,
    min_leaf: usize,
    max_depth: Option<usize>,
}

struct Split {
    gain: f64,
    feature: usize,
    kind: SplitKind,
}

enum SplitKind {
    Threshold(f64),
    Equals(usize),
}

impl Grower<'_> {
    fn histogram(&self, idx: &[usize]) -> Vec<u32> {
        let mut h = vec![0u32; self.num_classes];
        for &i in idx {
            h[self.data.labels[i]] += 1;
        }
        h
    }

    fn grow(&self, sample: Vec<usize>, rng: &mut ChaCha8Rng) -> Tree {
        let mut nodes = vec![Node::Leaf { counts: Vec::new() }];
        let mut work = vec![(0usize, sample, 0usize)];
        while let Some((id, idx, depth)) = work.pop() {
            let counts = self.histogram(&idx);
            let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
            let capped = self.max_depth.is_some_and(|d| depth >= d);
            if pure || capped || idx.len() < 2 * self.min_leaf {
                nodes[id] = Node::Leaf { counts };
                continue;
            }
            let Some(split) = self.best_split(&idx, &counts, rng) else {
                nodes[id] = Node::Leaf { counts };
                continue;
            };
            let goes_first = |i: &usize| {
                let x = self.data.rows[*i][split.feature];
                match split.kind {
                    SplitKind::Threshold(t) => x <= t,
                    SplitKind::Equals(v) => x as usize == v,
                }
            };
            let (first, second): (Vec<usize>, Vec<usize>) = idx.iter().partition(|i| goes_first(i));
            let (a, b) = (nodes.len(), nodes.len() + 1);
            nodes.push(Node::Leaf { counts: Vec::new() });
            nodes.push(Node::Leaf { counts: Vec::new() });
            nodes[id] = match split.kind {
                SplitKind::Threshold(threshold) => Node::Threshold {
                    feature: split.feature,
                    threshold,
                    left: a,
                    right: b,
                },
                SplitKind::Equals(value) => Node::Equals {
                    feature: split.feature,
                    value,
                    yes: a,
                    no: b,
                },
            };
            work.push((b, second, depth + 1));
            work.push((a, first, depth + 1));
        }
        Tree { nodes }
    }

    fn best_split(&self, idx: &[usize], counts: &[u32], rng: &mut ChaCha8Rng) -> Option<Split> {
        let parent: Vec<usize> = counts.iter().map(|&c| c as usize).collect();
        let parent_entropy = entropy(&parent);
        let mut order: Vec<usize> = (0..self.data.features.len()).collect();
        order.shuffle(rng);

        let mut best: Option<Split> = None;
        for (tried, &f) in order.iter().enumerate() {
            let candidate = match self.nominal[f] {
                Some(values) => self.nominal_split(idx, f, values, &parent, parent_entropy),
                None => self.numeric_split(idx, f, &parent, parent_entropy),
            };
            if let Some(c) = candidate {
                if best.as_ref().is_none_or(|b| c.gain > b.gain) {
                    best = Some(c);
                }
            }
            if tried + 1 >= self.k && best.is_some() {
                break;
            }
        }
        best
    }

    fn gain(&self, parent_entropy: f64, left: &[usize], right: &[usize], n: usize) -> f64 {
        let nl: usize = left.iter().sum();
        let nr = n - nl;
        parent_entropy - (nl as f64 * entropy(left) + nr as f64 * entropy(right)) / n as f64
    }

    fn numeric_split(&self, idx: &[usize], f: usize, parent: &[usize], parent_entropy: f64) -> Option<Split> {
        let mut pairs: Vec<(f64, usize)> = idx
            .iter()
            .map(|&i| (self.data.rows[i][f], self.data.labels[i]))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let n = pairs.len();
        let mut left = vec![0usize; self.num_classes];
        let mut best: Option<Split> = None;
        for i in 0..n - 1 {
            left[pairs[i].1] += 1;
            let (lo, hi) = (pairs[i].0, pairs[i + 1].0);
            if lo == hi || i + 1 < self.min_leaf || n - i - 1 < self.min_leaf {
                continue;
            }
            let right: Vec<usize> = parent.iter().zip(&left).map(|(p, l)| p - l).collect();
            let gain = self.gain(parent_entropy, &left, &right, n);
            if gain > MIN_GAIN && best.as_ref().is_none_or(|b| gain > b.gain) {
                let mid = lo + (hi - lo) / 2.0;
                // adjacent floats can round the midpoint up to `hi`
                let threshold = if mid < hi { mid } else { lo };
                best = Some(Split {
                    gain,
                    feature: f,
                    kind: SplitKind::Threshold(threshold),
                });
            }
        }
        best
    }

    fn nominal_split(
        &self,
        idx: &[usize],
        f: usize,
        values: usize,
        parent: &[usize],
        parent_entropy: f64,
    ) -> Option<Split> {
        let n = idx.len();
        let mut per_value = vec![vec![0usize; self.num_classes]; values];
        for &i in idx {
            let v = (self.data.rows[i][f] as usize).min(values - 1);
            per_value[v][self.data.labels[i]] += 1;
        }
        let mut best: Option<Split> = None;
        for (v, eq) in per_value.iter().enumerate() {
            let ne: Vec<usize> = parent.iter().zip(eq).map(|(p, e)| p - e).collect();
            let n_eq: usize = eq.iter().sum();
            if n_eq < self.min_leaf || n - n_eq < self.min_leaf {
                continue;
            }
            let gain = self.gain(parent_entropy, eq, &ne, n);
            if gain > MIN_GAIN && best.as_ref().is_none_or(|b| gain > b.gain) {
                best = Some(Split {
                    gain,
                    feature: f,
                    kind: SplitKind::Equals(v),
                });
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestModel {
    pub features: Vec<Feature>,
    pub class_list: Vec<QualityClass>,
    pub trees: Vec<Tree>,
}

/// RNG for tree `index`: the forest seed selects the key, the tree index
/// the stream, so trees can be grown in any order.
fn tree_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Grows `cfg.num_trees` trees on bootstrap samples of `data`.
pub fn train_forest(data: &Dataset, features: &[Feature], cfg: &ForestConfig) -> Result<ForestModel> {
    train_forest_on(&TrainingSet::from_dataset(data, features), cfg)
}

pub fn train_forest_on(set: &TrainingSet, cfg: &ForestConfig) -> Result<ForestModel> {
    let f = set.features.len();
    if f == 0 {
        return Err(Error::Config("no features selected".into()));
    }
    cfg.validate(f)?;
    if set.rows.is_empty() {
        return Err(Error::Data("cannot train on an empty dataset".into()));
    }
    let class_list = QualityClass::ALL.to_vec();
    let mut present = vec![false; class_list.len()];
    for &l in &set.labels {
        present[l] = true;
    }
    if present.iter().filter(|&&p| p).count() < 2 {
        return Err(Error::Data("training data must contain at least two classes".into()));
    }

    let grower = Grower {
        data: set,
        nominal: set.features.iter().map(|f| f.nominal_values()).collect(),
        num_classes: class_list.len(),
        k: cfg.resolved_features_per_split(f),
        min_leaf: cfg.min_leaf,
        max_depth: cfg.max_depth,
    };
    let n = set.rows.len();
    let build = |t: usize| {
        let mut rng = tree_rng(cfg.seed, t);
        let sample: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        grower.grow(sample, &mut rng)
    };
    let trees: Vec<Tree> = if cfg.parallel {
        (0..cfg.num_trees).into_par_iter().map(build).collect()
    } else {
        (0..cfg.num_trees).map(build).collect()
    };
    Ok(ForestModel {
        features: set.features.clone(),
        class_list,
        trees,
    })
}

impl ForestModel {
    /// Mean of the trees' leaf class frequencies, indexed like `class_list`.
    pub fn predict_proba_row(&self, row: &[f64]) -> Vec<f64> {
        let mut p = vec![0.0; self.class_list.len()];
        for tree in &self.trees {
            let counts = tree.leaf_for(row);
            let total: u32 = counts.iter().sum();
            for (acc, &c) in p.iter_mut().zip(counts) {
                *acc += c as f64 / total as f64;
            }
        }
        let t = self.trees.len() as f64;
        p.iter_mut().for_each(|x| *x /= t);
        p
    }

    pub fn predict_proba(&self, v: &FeatureVector) -> Vec<f64> {
        self.predict_proba_row(&v.project(&self.features))
    }

    pub fn predict(&self, v: &FeatureVector) -> QualityClass {
        self.class_list[argmax(&self.predict_proba(v))]
    }

    /// Structural validation used after loading a model from disk.
    pub fn check(&self) -> Result<()> {
        if self.trees.is_empty() {
            return Err(Error::Model("model has no trees".into()));
        }
        if self.class_list.len() < 2 {
            return Err(Error::Model("model has fewer than two classes".into()));
        }
        for (t, tree) in self.trees.iter().enumerate() {
            tree.check(self.features.len(), self.class_list.len())
                .map_err(|e| Error::Model(format!("tree {t}: {e}")))?;
        }
        Ok(())
    }
}

/// Index of the largest value; ties go to the lowest index.
pub fn argmax(p: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in p.iter().enumerate() {
        if x > p[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::Category;

    fn vector(label: QualityClass, x: f64, y: f64) -> FeatureVector {
        FeatureVector {
            title: String::new(),
            completeness: y,
            informativeness: 0.0,
            num_headings: 0.0,
            article_length: x,
            refs_per_length: 0.0,
            domain_informativeness: 0.0,
            infobox_norm_size: 0.0,
            category: Category::O,
            label,
            synthetic: false,
        }
    }

    fn line() -> Dataset {
        let mut v = Vec::new();
        for i in 1..=20 {
            v.push(vector(QualityClass::Stub, -(i as f64) / 10.0, 0.0));
            v.push(vector(QualityClass::FA, i as f64 / 10.0, 0.0));
        }
        Dataset::new(v)
    }

    #[test]
    fn single_tree_fits_separable_data() {
        let mut data = line();
        // widen the gap so a threshold from any bootstrap separates all points
        for v in &mut data.vectors {
            v.article_length += v.article_length.signum() * 10.0;
        }
        let features = [Feature::ArticleLength, Feature::Completeness];
        let cfg = ForestConfig {
            num_trees: 1,
            features_per_split: Some(2),
            ..Default::default()
        };
        let model = train_forest(&data, &features, &cfg).unwrap();
        for v in &data.vectors {
            assert_eq!(model.predict(v), v.label);
        }
    }

    #[test]
    fn far_points_on_a_line() {
        let model = train_forest(&line(), &[Feature::ArticleLength], &ForestConfig::default()).unwrap();
        assert_eq!(model.predict(&vector(QualityClass::C, -10.0, 0.0)), QualityClass::Stub);
        assert_eq!(model.predict(&vector(QualityClass::C, 10.0, 0.0)), QualityClass::FA);
    }

    #[test]
    fn serial_equals_parallel() {
        let features = [Feature::ArticleLength, Feature::Completeness];
        let cfg = ForestConfig {
            num_trees: 16,
            ..Default::default()
        };
        let a = train_forest(&line(), &features, &cfg).unwrap();
        let b = train_forest(&line(), &features, &ForestConfig { parallel: false, ..cfg }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn probabilities_average_leaves() {
        let leaf = |c: usize| Tree {
            nodes: vec![Node::Leaf {
                counts: (0..6).map(|i| if i == c { 3 } else { 0 }).collect(),
            }],
        };
        let model = ForestModel {
            features: vec![Feature::ArticleLength],
            class_list: QualityClass::ALL.to_vec(),
            trees: vec![leaf(4), leaf(3)],
        };
        let v = vector(QualityClass::C, 0.0, 0.0);
        assert_eq!(model.predict_proba(&v), vec![0.0, 0.0, 0.0, 0.5, 0.5, 0.0]);
        assert_eq!(model.predict(&v), QualityClass::B);
        model.check().unwrap();
    }

    #[test]
    fn min_leaf_and_depth_are_respected() {
        let cfg = ForestConfig {
            num_trees: 4,
            min_leaf: 5,
            max_depth: Some(2),
            ..Default::default()
        };
        let model = train_forest(&line(), &[Feature::ArticleLength, Feature::Completeness], &cfg).unwrap();
        for t in &model.trees {
            assert!(t.depth() <= 2);
            assert!(t.leaves().all(|l| l.iter().sum::<u32>() >= 5));
        }
    }

    #[test]
    fn invalid_configs() {
        let data = line();
        let f = [Feature::ArticleLength];
        let bad = [
            ForestConfig {
                num_trees: 0,
                ..Default::default()
            },
            ForestConfig {
                min_leaf: 0,
                ..Default::default()
            },
            ForestConfig {
                features_per_split: Some(2),
                ..Default::default()
            },
            ForestConfig {
                features_per_split: Some(0),
                ..Default::default()
            },
        ];
        for cfg in bad {
            assert!(
                matches!(train_forest(&data, &f, &cfg), Err(Error::Config(_))),
                "{cfg:?}"
            );
        }
        let one_class = Dataset::new(data.vectors[..1].to_vec());
        assert!(matches!(
            train_forest(&one_class, &f, &ForestConfig::default()),
            Err(Error::Data(_))
        ));
        assert!(train_forest(&Dataset::default(), &f, &ForestConfig::default()).is_err());
    }

    #[test]
    fn category_split() {
        let mut v = Vec::new();
        for i in 0..10 {
            let mut a = vector(QualityClass::GA, i as f64, 0.0);
            a.category = Category::D;
            let mut b = vector(QualityClass::Start, i as f64, 0.0);
            b.category = Category::A;
            v.extend([a, b]);
        }
        let features = [Feature::ArticleLength, Feature::Category];
        let cfg = ForestConfig {
            num_trees: 5,
            features_per_split: Some(2),
            ..Default::default()
        };
        let model = train_forest(&Dataset::new(v.clone()), &features, &cfg).unwrap();
        for x in &v {
            assert_eq!(model.predict(x), x.label);
        }
        assert!(model.trees.iter().all(|t| matches!(t.nodes[0], Node::Equals { .. })));
    }
}
