use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{counts, labelled, Label, Sample, TrainParams, TreeNode};
use crate::features::Dataset;
use crate::{Error, Result};

/// Scores closer than this are treated as equal, so tie-breaking by feature
/// index and threshold is not at the mercy of rounding noise.
pub(crate) const SCORE_EPS: f64 = 1e-12;

/// Binary entropy in bits of a two-class count.
pub fn entropy(members: usize, nonmembers: usize) -> Result<f64> {
    if members + nonmembers == 0 {
        return Err(Error::EmptyDistribution);
    }
    Ok(h2(members as f64, nonmembers as f64))
}

fn h2(a: f64, b: f64) -> f64 {
    let n = a + b;
    let term = |c: f64| if c > 0.0 { -(c / n) * libm::log2(c / n) } else { 0.0 };
    term(a) + term(b)
}

/// Rounds a threshold to the 9 significant digits model files store, so a
/// written model reads back bit-identical.
pub fn quantize_threshold(x: f64) -> f64 {
    alloc::format!("{x:.8e}")
        .parse()
        .expect("formatted float parses")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitScore {
    pub gain: f64,
    pub split_info: f64,
    pub ratio: f64,
}

fn score(parent: (usize, usize), left: (usize, usize)) -> SplitScore {
    let right = (parent.0 - left.0, parent.1 - left.1);
    let n = (parent.0 + parent.1) as f64;
    let nl = (left.0 + left.1) as f64;
    let nr = (right.0 + right.1) as f64;
    let gain = h2(parent.0 as f64, parent.1 as f64)
        - nl / n * h2(left.0 as f64, left.1 as f64)
        - nr / n * h2(right.0 as f64, right.1 as f64);
    let split_info = h2(nl, nr);
    SplitScore {
        gain,
        split_info,
        ratio: gain / split_info,
    }
}

/// Gain ratio of splitting `data` at `feature <= threshold`. `None` when
/// either side would hold fewer than `min_leaf` rows.
pub fn gain_ratio(
    data: &Dataset,
    feature: usize,
    threshold: f64,
    min_leaf: usize,
) -> Result<Option<SplitScore>> {
    if feature >= data.groups().len() {
        return Err(Error::DimensionMismatch {
            expected: data.groups().len(),
            found: feature + 1,
        });
    }
    let samples = labelled(data)?;
    let parent = counts(&samples, &(0..samples.len()).collect::<Vec<_>>());
    let left_idx: Vec<usize> = (0..samples.len())
        .filter(|&i| samples[i].0[feature] <= threshold)
        .collect();
    let left = counts(&samples, &left_idx);
    let nl = left_idx.len();
    let nr = samples.len() - nl;
    if nl == 0 || nr == 0 || nl < min_leaf || nr < min_leaf {
        return Ok(None);
    }
    Ok(Some(score(parent, left)))
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    feature: usize,
    threshold: f64,
    score: SplitScore,
}

/// All admissible (feature, midpoint) splits of the rows in `idx`, features
/// ascending and thresholds ascending within a feature.
fn candidates(samples: &[Sample<'_>], idx: &[usize], features: usize, min_leaf: usize) -> Vec<Candidate> {
    let parent = counts(samples, idx);
    let n = idx.len();
    let mut out = Vec::new();
    let mut order = idx.to_vec();
    for f in 0..features {
        order.sort_by(|&a, &b| samples[a].0[f].total_cmp(&samples[b].0[f]).then(a.cmp(&b)));
        let mut left = (0usize, 0usize);
        for i in 1..n {
            match samples[order[i - 1]].1 {
                Label::Member => left.0 += 1,
                Label::Nonmember => left.1 += 1,
            }
            let lo = samples[order[i - 1]].0[f];
            let hi = samples[order[i]].0[f];
            if lo == hi || i < min_leaf || n - i < min_leaf {
                continue;
            }
            let threshold = quantize_threshold(lo + (hi - lo) / 2.0);
            if !(lo < threshold && threshold < hi) {
                continue;
            }
            out.push(Candidate {
                feature: f,
                threshold,
                score: score(parent, left),
            });
        }
    }
    out
}

/// Highest gain ratio among candidates with at least average gain; earlier
/// candidates win ties.
fn select(cands: &[Candidate]) -> Option<Candidate> {
    if cands.is_empty() {
        return None;
    }
    let avg = cands.iter().map(|c| c.score.gain).sum::<f64>() / cands.len() as f64;
    let mut best: Option<Candidate> = None;
    for c in cands.iter().filter(|c| c.score.gain >= avg - SCORE_EPS) {
        match best {
            Some(b) if c.score.ratio <= b.score.ratio + SCORE_EPS => {}
            _ => best = Some(*c),
        }
    }
    best
}

/// Grows an unpruned tree on the labelled rows of `data`.
///
/// A node becomes a leaf when it is pure, holds fewer than `2 * min_leaf`
/// rows, reaches `max_depth`, or has no admissible split. An impure node
/// with admissible splits is always split, even if the best gain is zero,
/// so consistent data is fit exactly when `min_leaf` is 1.
pub fn grow(data: &Dataset, params: &TrainParams) -> Result<TreeNode> {
    params.validate()?;
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let samples = labelled(data)?;
    let idx: Vec<usize> = (0..samples.len()).collect();
    Ok(build(&samples, idx, 0, data.groups().len(), params))
}

fn build(samples: &[Sample<'_>], idx: Vec<usize>, depth: usize, features: usize, params: &TrainParams) -> TreeNode {
    let (m, n) = counts(samples, &idx);
    let leaf = TreeNode::leaf(m, n);
    if m == 0 || n == 0 || idx.len() < 2 * params.min_leaf || params.max_depth.is_some_and(|d| depth >= d) {
        return leaf;
    }
    let Some(best) = select(&candidates(samples, &idx, features, params.min_leaf)) else {
        return leaf;
    };
    let (left, right): (Vec<usize>, Vec<usize>) = idx
        .into_iter()
        .partition(|&i| samples[i].0[best.feature] <= best.threshold);
    TreeNode::Split {
        feature: best.feature,
        threshold: best.threshold,
        left: Box::new(build(samples, left, depth + 1, features, params)),
        right: Box::new(build(samples, right, depth + 1, features, params)),
    }
}
