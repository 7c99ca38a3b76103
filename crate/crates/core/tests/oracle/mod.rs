//! Direct-formula reference implementations used to cross-check the learner.
//! Written without reference to the library internals: natural logs instead of
//! log2, unquantized midpoints, a summed binomial pmf instead of the
//! incomplete beta function.

#![allow(dead_code)]

use nounclass_core::{Dataset, FeatureVector, Label, Row};
use rand::Rng;

pub fn entropy(m: usize, n: usize) -> f64 {
    let total = (m + n) as f64;
    let mut h = 0.0;
    for c in [m, n] {
        if c > 0 {
            let p = c as f64 / total;
            h -= p * p.ln();
        }
    }
    h / std::f64::consts::LN_2
}

#[derive(Debug, Clone, Copy)]
pub struct OracleSplit {
    pub feature: usize,
    pub threshold: f64,
    pub gain: f64,
    pub ratio: f64,
}

fn class_counts(rows: &[(Vec<f64>, bool)]) -> (usize, usize) {
    let m = rows.iter().filter(|r| r.1).count();
    (m, rows.len() - m)
}

/// Gain and gain ratio of `feature <= threshold`, or `None` when a side has
/// fewer than `min_leaf` rows (or is empty).
pub fn split_score(rows: &[(Vec<f64>, bool)], feature: usize, threshold: f64, min_leaf: usize) -> Option<(f64, f64)> {
    let (left, right): (Vec<_>, Vec<_>) = rows.iter().cloned().partition(|r| r.0[feature] <= threshold);
    if left.is_empty() || right.is_empty() || left.len() < min_leaf || right.len() < min_leaf {
        return None;
    }
    let n = rows.len() as f64;
    let (pm, pn) = class_counts(rows);
    let (lm, ln) = class_counts(&left);
    let (rm, rn) = class_counts(&right);
    let gain = entropy(pm, pn)
        - left.len() as f64 / n * entropy(lm, ln)
        - right.len() as f64 / n * entropy(rm, rn);
    let info = entropy(left.len(), right.len());
    Some((gain, gain / info))
}

/// Exhaustive search for the root split: every feature, every midpoint of
/// consecutive distinct values; keep splits with at least average gain, take
/// the best ratio, ties to the lowest feature then the lowest threshold.
/// `None` when the root should stay a leaf.
pub fn best_root_split(rows: &[(Vec<f64>, bool)], min_leaf: usize) -> Option<OracleSplit> {
    let (m, n) = class_counts(rows);
    if m == 0 || n == 0 || rows.len() < 2 * min_leaf {
        return None;
    }
    let dim = rows[0].0.len();
    let mut all = Vec::new();
    for f in 0..dim {
        let mut values: Vec<f64> = rows.iter().map(|r| r.0[f]).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        for w in values.windows(2) {
            let t = (w[0] + w[1]) / 2.0;
            if let Some((gain, ratio)) = split_score(rows, f, t, min_leaf) {
                all.push(OracleSplit { feature: f, threshold: t, gain, ratio });
            }
        }
    }
    if all.is_empty() {
        return None;
    }
    let avg = all.iter().map(|s| s.gain).sum::<f64>() / all.len() as f64;
    let eligible: Vec<&OracleSplit> = all.iter().filter(|s| s.gain >= avg - 1e-12).collect();
    let top = eligible.iter().map(|s| s.ratio).fold(f64::NEG_INFINITY, f64::max);
    eligible
        .into_iter()
        .filter(|s| s.ratio >= top - 1e-12)
        .min_by(|a, b| a.feature.cmp(&b.feature).then(a.threshold.total_cmp(&b.threshold)))
        .copied()
}

fn ln_choose(n: usize, k: usize) -> f64 {
    (1..=k).map(|i| ((n - k + i) as f64).ln() - (i as f64).ln()).sum()
}

/// P(X <= e) for X ~ Binomial(n, p), summed term by term.
pub fn binomial_cdf(e: usize, n: usize, p: f64) -> f64 {
    if p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return if e >= n { 1.0 } else { 0.0 };
    }
    (0..=e.min(n))
        .map(|i| (ln_choose(n, i) + i as f64 * p.ln() + (n - i) as f64 * (1.0 - p).ln()).exp())
        .sum()
}

/// Upper confidence limit on the error rate: the `p` with
/// P(X <= e; n, p) = cf, found by bisection, never below the observed rate.
pub fn upper_error_rate(e: usize, n: usize, cf: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if e >= n {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if binomial_cdf(e, n, mid) > cf {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ((lo + hi) / 2.0).max(e as f64 / n as f64)
}

/// (threshold, accuracy above %, below %) chosen by checking every distinct
/// confidence value as a cut point.
pub fn sweep(preds: &[(f64, bool)], target: f64) -> (f64, f64, f64) {
    let mut cuts: Vec<f64> = preds.iter().map(|p| p.0).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let n = preds.len() as f64;
    let eval = |t: f64| {
        let above: Vec<_> = preds.iter().filter(|p| p.0 >= t).collect();
        let correct = above.iter().filter(|p| p.1).count() as f64;
        let acc = 100.0 * correct / above.len() as f64;
        (t, acc, 100.0 * (n - above.len() as f64) / n)
    };
    for &t in &cuts {
        let r = eval(t);
        if r.1 >= 100.0 * target - 1e-7 {
            return r;
        }
    }
    let mut best = eval(cuts[0]);
    for &t in &cuts[1..] {
        let r = eval(t);
        if r.1 > best.1 + 1e-9 {
            best = r;
        }
    }
    best
}

/// A labelled dataset with 2..=12 rows and 1..=3 features. Values come from a
/// coarse grid so duplicates and ties are common.
pub fn random_rows(rng: &mut impl Rng) -> Vec<(Vec<f64>, bool)> {
    let rows = rng.gen_range(2..=12);
    let dim = rng.gen_range(1..=3);
    let levels = rng.gen_range(2..=6);
    (0..rows)
        .map(|_| {
            let v = (0..dim).map(|_| rng.gen_range(0..levels) as f64 / (levels - 1) as f64).collect();
            (v, rng.gen_bool(0.5))
        })
        .collect()
}

pub fn to_dataset(rows: &[(Vec<f64>, bool)]) -> Dataset {
    let dim = rows[0].0.len();
    let groups = (0..dim).map(|g| format!("g{g}")).collect();
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, (v, m))| Row {
            vector: FeatureVector { lemma: format!("w{i}"), values: v.clone(), seen: true },
            label: Some(if *m { Label::Member } else { Label::Nonmember }),
        })
        .collect();
    Dataset::new(groups, rows).unwrap()
}
