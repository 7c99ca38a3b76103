use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{counts, labelled, Sample, TrainParams, TreeNode};
use crate::features::Dataset;
use crate::Result;

const FPMIN: f64 = 1e-300;

/// Continued fraction for the incomplete beta function (modified Lentz).
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=500 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

/// Regularized incomplete beta function I_x(a, b).
fn incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = libm::lgamma(a + b) - libm::lgamma(a) - libm::lgamma(b)
        + a * libm::log(x)
        + b * libm::log1p(-x);
    let front = libm::exp(ln_front);
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// P(X <= errors) for X ~ Binomial(n, p), through P(X <= k) = I_{1-p}(n-k, k+1).
fn binomial_cdf(errors: usize, n: usize, p: f64) -> f64 {
    if errors >= n {
        return 1.0;
    }
    incomplete_beta((n - errors) as f64, errors as f64 + 1.0, 1.0 - p)
}

/// Upper confidence limit on a leaf's error rate: the rate `p` at which
/// observing at most `errors` mistakes in `n` rows has probability `cf`.
/// Never below the observed rate, so as `cf` approaches 1 the estimate
/// collapses onto the training error.
pub fn pessimistic_error_rate(errors: usize, n: usize, cf: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if errors >= n {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        // the cdf falls as p grows
        if binomial_cdf(errors, n, mid) > cf {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let upper = 0.5 * (lo + hi);
    upper.max(errors as f64 / n as f64)
}

/// Pessimistic number of errors at a leaf holding `n` rows, `errors` of them
/// misclassified.
pub fn pessimistic_errors(errors: usize, n: usize, cf: f64) -> f64 {
    n as f64 * pessimistic_error_rate(errors, n, cf)
}

fn leaf_estimate((m, n): (usize, usize), cf: f64) -> f64 {
    pessimistic_errors(m.min(n), m + n, cf)
}

/// Sum of leaf estimates when the rows in `idx` are routed through `node`.
fn subtree_estimate(node: &TreeNode, samples: &[Sample<'_>], idx: &[usize], cf: f64) -> f64 {
    match node {
        TreeNode::Leaf { .. } => leaf_estimate(counts(samples, idx), cf),
        TreeNode::Split { feature, threshold, left, right } => {
            let (l, r): (Vec<usize>, Vec<usize>) =
                idx.iter().partition(|&&i| samples[i].0[*feature] <= *threshold);
            subtree_estimate(left, samples, &l, cf) + subtree_estimate(right, samples, &r, cf)
        }
    }
}

/// Pessimistic error estimate of `tree` on the labelled rows of `data`.
pub fn estimated_errors(tree: &TreeNode, data: &Dataset, cf: f64) -> Result<f64> {
    let samples = labelled(data)?;
    let idx: Vec<usize> = (0..samples.len()).collect();
    Ok(subtree_estimate(tree, &samples, &idx, cf))
}

/// Bottom-up pessimistic pruning.
///
/// After its children are pruned, each split is compared with (a) a leaf
/// holding all of its rows and, with subtree raising, (b) its most populated
/// branch re-fitted on all of its rows. The cheapest of the three estimates
/// wins; the split is kept only if it is strictly cheaper. Leaf counts are
/// recomputed from the rows that reach them.
pub fn prune(tree: TreeNode, data: &Dataset, params: &TrainParams) -> Result<TreeNode> {
    params.validate()?;
    let samples = labelled(data)?;
    let idx: Vec<usize> = (0..samples.len()).collect();
    Ok(prune_node(tree, &samples, &idx, params))
}

fn prune_node(node: TreeNode, samples: &[Sample<'_>], idx: &[usize], params: &TrainParams) -> TreeNode {
    let cf = params.confidence_factor;
    let here = counts(samples, idx);
    let TreeNode::Split { feature, threshold, left, right } = node else {
        return TreeNode::leaf(here.0, here.1);
    };
    let (li, ri): (Vec<usize>, Vec<usize>) =
        idx.iter().partition(|&&i| samples[i].0[feature] <= threshold);
    let left = prune_node(*left, samples, &li, params);
    let right = prune_node(*right, samples, &ri, params);

    let as_leaf = leaf_estimate(here, cf);
    let largest = if ri.len() > li.len() { &right } else { &left };
    let as_branch = params
        .subtree_raising
        .then(|| subtree_estimate(largest, samples, idx, cf));
    let as_tree = subtree_estimate(&TreeNode::Split {
        feature,
        threshold,
        left: Box::new(left.clone()),
        right: Box::new(right.clone()),
    }, samples, idx, cf);

    let tol = 1e-9;
    if as_leaf <= as_tree + tol && as_branch.is_none_or(|b| as_leaf <= b + tol) {
        return TreeNode::leaf(here.0, here.1);
    }
    if let Some(b) = as_branch {
        if b <= as_tree + tol {
            let raised = if ri.len() > li.len() { right } else { left };
            return prune_node(raised, samples, idx, params);
        }
    }
    TreeNode::Split {
        feature,
        threshold,
        left: Box::new(left),
        right: Box::new(right),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{FeatureVector, Row};
    use crate::tree::{grow, Label};
    use alloc::string::ToString;

    fn dataset(rows: &[(&[f64], Label)]) -> Dataset {
        let dim = rows[0].0.len();
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, (v, l))| Row {
                vector: FeatureVector { lemma: i.to_string(), values: v.to_vec(), seen: true },
                label: Some(*l),
            })
            .collect();
        Dataset::new((0..dim).map(|g| alloc::format!("g{g}")).collect(), rows).unwrap()
    }

    use Label::{Member as M, Nonmember as N};

    #[test]
    fn zero_error_bound_has_closed_form() {
        for n in [1usize, 2, 6, 17, 100] {
            for cf in [0.05, 0.25, 0.5] {
                let expect = 1.0 - libm::pow(cf, 1.0 / n as f64);
                assert!((pessimistic_error_rate(0, n, cf) - expect).abs() < 1e-12, "n={n} cf={cf}");
            }
        }
    }

    #[test]
    fn incomplete_beta_symmetry() {
        for (a, b, x) in [(2.0, 3.0, 0.4), (10.0, 1.0, 0.9), (0.5, 0.5, 0.3), (50.0, 7.0, 0.85)] {
            let lhs = incomplete_beta(a, b, x);
            let rhs = 1.0 - incomplete_beta(b, a, 1.0 - x);
            assert!((lhs - rhs).abs() < 1e-12);
        }
        // I_x(1, 1) = x
        assert!((incomplete_beta(1.0, 1.0, 0.37) - 0.37).abs() < 1e-14);
    }

    #[test]
    fn degenerate_counts() {
        assert_eq!(pessimistic_error_rate(0, 0, 0.25), 0.0);
        assert_eq!(pessimistic_error_rate(4, 4, 0.25), 1.0);
        assert_eq!(pessimistic_errors(3, 3, 0.25), 3.0);
    }

    #[test]
    fn bound_tends_to_observed_rate_as_cf_approaches_one() {
        let r = pessimistic_error_rate(3, 20, 0.999_999);
        assert!((r - 0.15).abs() < 1e-12);
        assert!(pessimistic_error_rate(3, 20, 0.25) > 0.15);
    }

    #[test]
    fn same_prediction_leaves_collapse() {
        let d = dataset(&[(&[0.1], M), (&[0.2], M), (&[0.3], M), (&[0.7], M), (&[0.8], M), (&[0.9], N)]);
        let tree = TreeNode::Split {
            feature: 0,
            threshold: 0.5,
            left: Box::new(TreeNode::leaf(3, 0)),
            right: Box::new(TreeNode::leaf(2, 1)),
        };
        let pruned = prune(tree, &d, &TrainParams::default()).unwrap();
        assert_eq!(pruned, TreeNode::leaf(5, 1));
    }

    #[test]
    fn error_reducing_splits_survive_near_unit_cf() {
        let d = dataset(&[(&[0.0], N), (&[0.1], N), (&[0.2], N), (&[0.7], M), (&[0.8], M), (&[0.9], M)]);
        let params = TrainParams { confidence_factor: 0.999_999, ..TrainParams::default() };
        let grown = grow(&d, &params).unwrap();
        let pruned = prune(grown.clone(), &d, &params).unwrap();
        assert_eq!(pruned, grown);
    }

    #[test]
    fn pruning_never_grows_the_tree_or_its_estimate() {
        let d = dataset(&[
            (&[0.0, 0.3], N),
            (&[0.1, 0.1], M),
            (&[0.2, 0.5], N),
            (&[0.3, 0.2], N),
            (&[0.4, 0.9], M),
            (&[0.5, 0.4], N),
            (&[0.6, 0.8], M),
            (&[0.7, 0.6], N),
            (&[0.8, 0.7], M),
            (&[0.9, 0.0], M),
        ]);
        let params = TrainParams { min_leaf: 1, ..TrainParams::default() };
        let grown = grow(&d, &params).unwrap();
        let pruned = prune(grown.clone(), &d, &params).unwrap();
        assert!(pruned.node_count() <= grown.node_count());
        assert!(estimated_errors(&pruned, &d, 0.25).unwrap() <= estimated_errors(&grown, &d, 0.25).unwrap() + 1e-9);
    }

    #[test]
    fn raising_replaces_split_by_refit_branch() {
        // the right branch carries one stray row; raising the left branch
        // and refitting on all rows beats keeping the root split
        let d = dataset(&[
            (&[0.1, 0.1], M),
            (&[0.1, 0.2], M),
            (&[0.2, 0.1], M),
            (&[0.2, 0.9], N),
            (&[0.3, 0.8], N),
            (&[0.3, 0.7], N),
            (&[0.4, 0.9], N),
            (&[0.9, 0.1], M),
        ]);
        let tree = TreeNode::Split {
            feature: 0,
            threshold: 0.6,
            left: Box::new(TreeNode::Split {
                feature: 1,
                threshold: 0.5,
                left: Box::new(TreeNode::leaf(3, 0)),
                right: Box::new(TreeNode::leaf(0, 4)),
            }),
            right: Box::new(TreeNode::leaf(1, 0)),
        };
        let params = TrainParams::default();
        let before = estimated_errors(&tree, &d, 0.25).unwrap();
        let pruned = prune(tree, &d, &params).unwrap();
        assert_eq!(
            pruned,
            TreeNode::Split {
                feature: 1,
                threshold: 0.5,
                left: Box::new(TreeNode::leaf(4, 0)),
                right: Box::new(TreeNode::leaf(0, 4)),
            }
        );
        assert!(estimated_errors(&pruned, &d, 0.25).unwrap() <= before);

        let no_raise = TrainParams { subtree_raising: false, ..params };
        let tree = pruned.clone();
        assert_eq!(prune(tree, &d, &no_raise).unwrap(), pruned);
    }
}
