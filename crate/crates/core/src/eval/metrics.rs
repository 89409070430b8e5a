use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassificationMetrics {
    pub accuracy: f64,
    pub macro_f1: f64,
    pub macro_recall: f64,
}

/// Accuracy plus macro F1 and recall averaged over the classes present in
/// `truth`. Precision is 0 for a class that is never predicted.
pub fn classification_metrics(
    pred: &[usize],
    truth: &[usize],
    classes: usize,
) -> Result<ClassificationMetrics> {
    if pred.len() != truth.len() {
        return Err(Error::LengthMismatch(pred.len(), truth.len()));
    }
    if truth.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let classes = pred
        .iter()
        .chain(truth)
        .map(|&c| c + 1)
        .max()
        .unwrap_or(0)
        .max(classes);
    let mut tp = vec![0usize; classes];
    let mut predicted = vec![0usize; classes];
    let mut actual = vec![0usize; classes];
    for (&p, &t) in pred.iter().zip(truth) {
        predicted[p] += 1;
        actual[t] += 1;
        if p == t {
            tp[t] += 1;
        }
    }
    let (mut f1, mut recall, mut present) = (0.0, 0.0, 0usize);
    for c in 0..classes {
        if actual[c] == 0 {
            continue;
        }
        present += 1;
        let r = tp[c] as f64 / actual[c] as f64;
        let p = if predicted[c] == 0 {
            0.0
        } else {
            tp[c] as f64 / predicted[c] as f64
        };
        recall += r;
        if p + r > 0.0 {
            f1 += 2.0 * p * r / (p + r);
        }
    }
    let correct: usize = tp.iter().sum();
    Ok(ClassificationMetrics {
        accuracy: correct as f64 / truth.len() as f64,
        macro_f1: f1 / present as f64,
        macro_recall: recall / present as f64,
    })
}
