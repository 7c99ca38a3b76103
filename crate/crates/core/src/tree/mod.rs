//! Binary C4.5 decision trees over relative-frequency features.
//!
//! Splits are numeric thresholds (`value <= threshold` goes left) chosen by
//! gain ratio, restricted to candidates whose information gain is at least the
//! average over all candidates at the node. Trees are pruned bottom-up with
//! pessimistic error estimates; see [`prune`].

mod prune;
mod split;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::features::{Dataset, FeatureVector};
use crate::{Error, Result};

type Sample<'a> = (&'a [f64], Label);

fn labelled(data: &Dataset) -> Result<Vec<Sample<'_>>> {
    data.rows()
        .iter()
        .map(|r| match r.label {
            Some(l) => Ok((r.vector.values.as_slice(), l)),
            None => Err(Error::Unlabeled(r.vector.lemma.clone())),
        })
        .collect()
}

fn counts(samples: &[Sample<'_>], idx: &[usize]) -> (usize, usize) {
    idx.iter().fold((0, 0), |(m, n), &i| match samples[i].1 {
        Label::Member => (m + 1, n),
        Label::Nonmember => (m, n + 1),
    })
}

pub use prune::{estimated_errors, pessimistic_error_rate, pessimistic_errors, prune};
pub use split::{entropy, gain_ratio, grow, quantize_threshold, SplitScore};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Member,
    Nonmember,
}

impl Label {
    pub fn as_char(self) -> char {
        match self {
            Label::Member => '1',
            Label::Nonmember => '0',
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainParams {
    pub min_leaf: usize,
    /// Confidence factor for pessimistic pruning, in (0, 1).
    pub confidence_factor: f64,
    pub max_depth: Option<usize>,
    /// Let pruning replace a subtree by its most populated branch.
    pub subtree_raising: bool,
}

impl Default for TrainParams {
    fn default() -> Self {
        TrainParams {
            min_leaf: 2,
            confidence_factor: 0.25,
            max_depth: None,
            subtree_raising: true,
        }
    }
}

impl TrainParams {
    pub fn validate(&self) -> Result<()> {
        if self.min_leaf == 0 {
            return Err(Error::InvalidParams("min_leaf must be at least 1".into()));
        }
        let cf = self.confidence_factor;
        if !(cf > 0.0 && cf < 1.0) {
            return Err(Error::InvalidParams(alloc::format!(
                "confidence factor must lie in (0, 1), got {cf}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    Split {
        feature: usize,
        threshold: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
    Leaf {
        members: usize,
        nonmembers: usize,
    },
}

impl TreeNode {
    pub fn leaf(members: usize, nonmembers: usize) -> Self {
        TreeNode::Leaf { members, nonmembers }
    }

    /// Majority class of a leaf; ties go to non-member. `None` for splits.
    pub fn leaf_label(&self) -> Option<Label> {
        match *self {
            TreeNode::Leaf { members, nonmembers } => Some(if members > nonmembers {
                Label::Member
            } else {
                Label::Nonmember
            }),
            TreeNode::Split { .. } => None,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Split { left, right, .. } => 1 + left.node_count() + right.node_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// The leaf `values` is routed to.
    pub fn route(&self, values: &[f64]) -> &TreeNode {
        let mut node = self;
        while let TreeNode::Split { feature, threshold, left, right } = node {
            node = if values[*feature] <= *threshold { left } else { right };
        }
        node
    }

    pub fn leaves(&self) -> Vec<&TreeNode> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(node) = stack.pop() {
            match node {
                TreeNode::Leaf { .. } => out.push(node),
                TreeNode::Split { left, right, .. } => {
                    stack.push(right);
                    stack.push(left);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConfidenceMode {
    /// Share of the predicted class among the training rows at the leaf.
    #[default]
    Purity,
    /// Laplace-corrected purity, `(k + 1) / (n + 2)`.
    Laplace,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub lemma: String,
    pub label: Label,
    pub confidence: f64,
}

/// A trained tree together with the feature order it was trained on.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub groups: Vec<String>,
    pub params: TrainParams,
    pub root: TreeNode,
}

impl Model {
    /// Grows and prunes a tree on the labelled rows of `data`.
    pub fn train(data: &Dataset, params: TrainParams) -> Result<Model> {
        let grown = grow(data, &params)?;
        let root = prune(grown, data, &params)?;
        Ok(Model {
            groups: data.groups().to_vec(),
            params,
            root,
        })
    }

    pub fn classify(&self, vector: &FeatureVector, mode: ConfidenceMode) -> Result<Prediction> {
        classify(&self.root, self.groups.len(), vector, mode)
    }
}

/// Routes `vector` to a leaf and reports its majority label with a
/// confidence derived from the leaf's class counts.
pub fn classify(
    root: &TreeNode,
    dimension: usize,
    vector: &FeatureVector,
    mode: ConfidenceMode,
) -> Result<Prediction> {
    if vector.values.len() != dimension {
        return Err(Error::DimensionMismatch {
            expected: dimension,
            found: vector.values.len(),
        });
    }
    let leaf = root.route(&vector.values);
    let TreeNode::Leaf { members, nonmembers } = *leaf else {
        unreachable!("route always ends at a leaf")
    };
    let label = leaf.leaf_label().unwrap_or(Label::Nonmember);
    let hit = match label {
        Label::Member => members,
        Label::Nonmember => nonmembers,
    } as f64;
    let total = (members + nonmembers) as f64;
    let confidence = match mode {
        ConfidenceMode::Purity if total > 0.0 => hit / total,
        ConfidenceMode::Purity => 0.0,
        ConfidenceMode::Laplace => (hit + 1.0) / (total + 2.0),
    };
    Ok(Prediction {
        lemma: vector.lemma.clone(),
        label,
        confidence,
    })
}
