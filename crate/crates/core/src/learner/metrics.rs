//! Per-class F-measure and ROC area.

/// Square confusion matrix indexed `[actual][predicted]`.
pub type Confusion = Vec<Vec<u64>>;

pub fn empty_confusion(num_classes: usize) -> Confusion {
    vec![vec![0; num_classes]; num_classes]
}

/// (true positives, false positives, false negatives) for one class.
pub fn class_counts(confusion: &[Vec<u64>], class: usize) -> (u64, u64, u64) {
    let tp = confusion[class][class];
    let predicted: u64 = confusion.iter().map(|row| row[class]).sum();
    let actual: u64 = confusion[class].iter().sum();
    (tp, predicted - tp, actual - tp)
}

pub fn precision(confusion: &[Vec<u64>], class: usize) -> f64 {
    let (tp, fp, _) = class_counts(confusion, class);
    ratio(tp, tp + fp)
}

pub fn recall(confusion: &[Vec<u64>], class: usize) -> f64 {
    let (tp, _, fn_) = class_counts(confusion, class);
    ratio(tp, tp + fn_)
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean of precision and recall; 0 when either is undefined or
/// both are 0.
pub fn f_measure(confusion: &[Vec<u64>], class: usize) -> f64 {
    let (p, r) = (precision(confusion, class), recall(confusion, class));
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Area under the ROC curve for `(score, is_positive)` pairs, computed as
/// the Mann-Whitney statistic with midranks for tied scores. Returns 0.5
/// when either side is empty.
pub fn roc_auc(scores: &[(f64, bool)]) -> f64 {
    let pos = scores.iter().filter(|s| s.1).count();
    let neg = scores.len() - pos;
    if pos == 0 || neg == 0 {
        return 0.5;
    }
    let mut sorted: Vec<(f64, bool)> = scores.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1].0 == sorted[i].0 {
            j += 1;
        }
        // ranks i+1 ..= j+1 share their mean
        let midrank = (i + j + 2) as f64 / 2.0;
        rank_sum += midrank * sorted[i..=j].iter().filter(|s| s.1).count() as f64;
        i = j + 1;
    }
    let (p, n) = (pos as f64, neg as f64);
    ((rank_sum - p * (p + 1.0) / 2.0) / (p * n)).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_class(tp: u64, fp: u64, fn_: u64) -> Confusion {
        // class 0 is the class of interest
        vec![vec![tp, fn_], vec![fp, 0]]
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_measure(&two_class(5, 0, 0), 0), 1.0);
        assert_eq!(f_measure(&two_class(0, 3, 4), 0), 0.0);
        let f = f_measure(&two_class(6, 2, 4), 0);
        assert!((f - 2.0 * 0.45 / 1.35).abs() < 1e-12);
        assert_eq!(f_measure(&empty_confusion(6), 3), 0.0);
    }

    #[test]
    fn auc_examples() {
        assert_eq!(roc_auc(&[(0.9, true), (0.8, true), (0.2, false)]), 1.0);
        assert_eq!(roc_auc(&[(0.5, true), (0.5, false), (0.5, true)]), 0.5);
        assert_eq!(roc_auc(&[(0.9, true), (0.4, true), (0.6, false), (0.1, false)]), 0.75);
        assert_eq!(roc_auc(&[(0.9, true)]), 0.5);
        assert_eq!(roc_auc(&[]), 0.5);
        assert_eq!(roc_auc(&[(0.1, true), (0.9, false)]), 0.0);
    }
}
