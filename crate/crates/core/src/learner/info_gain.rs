//! Information gain of single features with respect to the quality class.
//!
//! Numeric features are discretised first with recursive entropy splitting
//! and the MDL stopping rule (Fayyad and Irani); nominal features are used
//! as they are. All entropies are in bits.

use crate::features::Feature;
use crate::sampling::Dataset;

/// Shannon entropy in bits of a class histogram.
pub fn entropy(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

fn histogram(labels: impl IntoIterator<Item = usize>, num_classes: usize) -> Vec<usize> {
    let mut h = vec![0; num_classes];
    for l in labels {
        h[l] += 1;
    }
    h
}

/// Entropy of the class distribution of `labels`.
pub fn class_entropy(labels: &[usize], num_classes: usize) -> f64 {
    entropy(&histogram(labels.iter().copied(), num_classes))
}

/// H(C) minus the weighted entropy of the partition given by `bins`
/// (one bin id per instance), clamped to [0, H(C)].
fn partition_gain(bins: &[usize], labels: &[usize], num_classes: usize) -> f64 {
    let total = class_entropy(labels, num_classes);
    let num_bins = bins.iter().copied().max().map_or(0, |m| m + 1);
    let mut per_bin = vec![vec![0usize; num_classes]; num_bins];
    for (&b, &l) in bins.iter().zip(labels) {
        per_bin[b][l] += 1;
    }
    let n = labels.len() as f64;
    let conditional: f64 = per_bin
        .iter()
        .map(|h| {
            let nb: usize = h.iter().sum();
            nb as f64 / n * entropy(h)
        })
        .sum();
    (total - conditional).clamp(0.0, total)
}

/// Gain of a nominal attribute given as small integer codes.
pub fn info_gain_nominal(values: &[usize], labels: &[usize], num_classes: usize) -> f64 {
    if labels.len() < 2 {
        return 0.0;
    }
    partition_gain(values, labels, num_classes)
}

/// Cut points chosen by MDL-stopped entropy splitting, ascending.
pub fn mdl_cut_points(values: &[f64], labels: &[usize], num_classes: usize) -> Vec<f64> {
    let mut pairs: Vec<(f64, usize)> = values.iter().copied().zip(labels.iter().copied()).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut cuts = Vec::new();
    split_range(&pairs, num_classes, &mut cuts);
    cuts.sort_by(f64::total_cmp);
    cuts
}

fn split_range(pairs: &[(f64, usize)], num_classes: usize, cuts: &mut Vec<f64>) {
    let n = pairs.len();
    if n < 2 {
        return;
    }
    let all = histogram(pairs.iter().map(|p| p.1), num_classes);
    let ent_all = entropy(&all);
    if ent_all == 0.0 {
        return;
    }

    let mut left = vec![0usize; num_classes];
    let mut best: Option<(f64, usize, Vec<usize>)> = None;
    for i in 0..n - 1 {
        left[pairs[i].1] += 1;
        if pairs[i].0 == pairs[i + 1].0 {
            continue;
        }
        let right: Vec<usize> = all.iter().zip(&left).map(|(a, l)| a - l).collect();
        let nl = (i + 1) as f64;
        let e = (nl * entropy(&left) + (n as f64 - nl) * entropy(&right)) / n as f64;
        if best.as_ref().is_none_or(|b| e < b.0) {
            best = Some((e, i + 1, left.clone()));
        }
    }
    let Some((e, at, left)) = best else { return };

    let right: Vec<usize> = all.iter().zip(&left).map(|(a, l)| a - l).collect();
    let present = |h: &[usize]| h.iter().filter(|&&c| c > 0).count() as f64;
    let (k, k1, k2) = (present(&all), present(&left), present(&right));
    let gain = ent_all - e;
    let delta = (3f64.powf(k) - 2.0).log2() - (k * ent_all - k1 * entropy(&left) - k2 * entropy(&right));
    let threshold = (((n - 1) as f64).log2() + delta) / n as f64;
    if gain <= threshold {
        return;
    }
    cuts.push((pairs[at - 1].0 + pairs[at].0) / 2.0);
    split_range(&pairs[..at], num_classes, cuts);
    split_range(&pairs[at..], num_classes, cuts);
}

/// Gain of a numeric attribute after MDL discretisation.
pub fn info_gain_numeric(values: &[f64], labels: &[usize], num_classes: usize) -> f64 {
    if labels.len() < 2 {
        return 0.0;
    }
    let cuts = mdl_cut_points(values, labels, num_classes);
    let bins: Vec<usize> = values.iter().map(|&x| cuts.partition_point(|&c| c < x)).collect();
    partition_gain(&bins, labels, num_classes)
}

/// Information gain of `feature` over the whole dataset.
pub fn info_gain(data: &Dataset, feature: Feature) -> f64 {
    let labels: Vec<usize> = data.vectors.iter().map(|v| v.label.index()).collect();
    let num_classes = crate::QualityClass::ALL.len();
    match feature.nominal_values() {
        Some(_) => {
            let codes: Vec<usize> = data.vectors.iter().map(|v| v.value(feature) as usize).collect();
            info_gain_nominal(&codes, &labels, num_classes)
        }
        None => {
            let values: Vec<f64> = data.vectors.iter().map(|v| v.value(feature)).collect();
            info_gain_numeric(&values, &labels, num_classes)
        }
    }
}

/// Features sorted by decreasing gain; equal gains keep the input order.
pub fn rank_features(data: &Dataset, features: &[Feature]) -> Vec<(Feature, f64)> {
    let mut ranked: Vec<(Feature, f64)> = features.iter().map(|&f| (f, info_gain(data, f))).collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
    ranked
}
