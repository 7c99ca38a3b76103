//! Gold standards, stratified cross-validation and confidence-threshold
//! triage.
//!
//! Error rates follow the convention of reporting false positives and false
//! negatives as percentages of *all* instances, so accuracy, FP and FN always
//! add up to 100.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::features::Dataset;
use crate::tree::{ConfidenceMode, Label, Model, Prediction, TrainParams};
use crate::{Error, Result};

/// Manually validated members and non-members of one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldStandard {
    pub class_name: String,
    pub members: BTreeSet<String>,
    pub nonmembers: BTreeSet<String>,
}

impl GoldStandard {
    pub fn new<I, J, S, T>(class_name: impl Into<String>, members: I, nonmembers: J) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let members: BTreeSet<String> = members.into_iter().map(|s| s.as_ref().to_lowercase()).collect();
        let nonmembers: BTreeSet<String> =
            nonmembers.into_iter().map(|s| s.as_ref().to_lowercase()).collect();
        if let Some(both) = members.intersection(&nonmembers).next() {
            return Err(Error::GoldOverlap(both.clone()));
        }
        Ok(GoldStandard {
            class_name: class_name.into(),
            members,
            nonmembers,
        })
    }

    pub fn label(&self, lemma: &str) -> Option<Label> {
        let lemma = lemma.to_lowercase();
        if self.members.contains(&lemma) {
            Some(Label::Member)
        } else if self.nonmembers.contains(&lemma) {
            Some(Label::Nonmember)
        } else {
            None
        }
    }

    /// Members then non-members, each sorted.
    pub fn vocabulary(&self) -> Vec<String> {
        self.members.iter().chain(&self.nonmembers).cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.members.len() + self.nonmembers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn labels(data: &Dataset) -> Result<Vec<Label>> {
    data.rows()
        .iter()
        .map(|r| r.label.ok_or_else(|| Error::Unlabeled(r.vector.lemma.clone())))
        .collect()
}

/// Splits row indices into `k` folds, each class shuffled with `seed` and
/// dealt round-robin so per-class fold sizes differ by at most one.
pub fn stratified_folds(data: &Dataset, k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::InvalidFoldCount(k));
    }
    let labels = labels(data)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = alloc::vec![Vec::new(); k];
    let mut next = 0;
    for (class, name) in [(Label::Member, "member"), (Label::Nonmember, "non-member")] {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if idx.len() < k {
            return Err(Error::ClassTooSmall {
                class: name,
                count: idx.len(),
                k,
            });
        }
        idx.shuffle(&mut rng);
        for i in idx {
            folds[next % k].push(i);
            next += 1;
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

/// An out-of-fold prediction next to the gold label.
#[derive(Debug, Clone, PartialEq)]
pub struct Judged {
    pub prediction: Prediction,
    pub gold: Label,
    pub fold: usize,
}

impl Judged {
    pub fn correct(&self) -> bool {
        self.prediction.label == self.gold
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoldReport {
    pub size: usize,
    pub correct: usize,
    pub accuracy_pct: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub n: usize,
    pub true_positives: usize,
    pub true_negatives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub accuracy_pct: f64,
    /// Non-members predicted member, as a percentage of all instances.
    pub fp_pct: f64,
    /// Members predicted non-member, as a percentage of all instances.
    pub fn_pct: f64,
    pub folds: Vec<FoldReport>,
    pub warnings: Vec<String>,
}

impl EvalReport {
    pub fn from_judged(judged: &[Judged], k: usize) -> EvalReport {
        let mut tp = 0;
        let mut tn = 0;
        let mut fp = 0;
        let mut fneg = 0;
        let mut folds = alloc::vec![(0usize, 0usize); k];
        for j in judged {
            match (j.prediction.label, j.gold) {
                (Label::Member, Label::Member) => tp += 1,
                (Label::Nonmember, Label::Nonmember) => tn += 1,
                (Label::Member, Label::Nonmember) => fp += 1,
                (Label::Nonmember, Label::Member) => fneg += 1,
            }
            if let Some(f) = folds.get_mut(j.fold) {
                f.0 += 1;
                f.1 += usize::from(j.correct());
            }
        }
        let n = judged.len();
        let pct = |c: usize| if n == 0 { 0.0 } else { 100.0 * c as f64 / n as f64 };
        EvalReport {
            n,
            true_positives: tp,
            true_negatives: tn,
            false_positives: fp,
            false_negatives: fneg,
            accuracy_pct: pct(tp + tn),
            fp_pct: pct(fp),
            fn_pct: pct(fneg),
            folds: folds
                .into_iter()
                .map(|(size, correct)| FoldReport {
                    size,
                    correct,
                    accuracy_pct: if size == 0 { 0.0 } else { 100.0 * correct as f64 / size as f64 },
                })
                .collect(),
            warnings: Vec::new(),
        }
    }
}

/// Trains on k-1 folds and predicts the held-out one, k times. Predictions
/// come back in dataset row order.
pub fn cross_validate(
    data: &Dataset,
    params: TrainParams,
    k: usize,
    seed: u64,
    mode: ConfidenceMode,
) -> Result<(EvalReport, Vec<Judged>)> {
    params.validate()?;
    let folds = stratified_folds(data, k, seed)?;
    let labels = labels(data)?;
    let mut pooled: Vec<Option<Judged>> = alloc::vec![None; data.len()];
    for (f, held_out) in folds.iter().enumerate() {
        let train: Vec<usize> = (0..data.len()).filter(|i| held_out.binary_search(i).is_err()).collect();
        let model = Model::train(&data.subset(&train), params)?;
        for &i in held_out {
            let prediction = model.classify(&data.rows()[i].vector, mode)?;
            pooled[i] = Some(Judged {
                prediction,
                gold: labels[i],
                fold: f,
            });
        }
    }
    let judged: Vec<Judged> = pooled.into_iter().map(|j| j.expect("folds partition the rows")).collect();
    let mut report = EvalReport::from_judged(&judged, k);
    let (m, n) = data.class_counts();
    if m.max(n) > 2 * m.min(n) {
        report.warnings.push(alloc::format!(
            "class skew {m}:{n} exceeds 2:1; accuracy is not comparable to a balanced setting"
        ));
    }
    Ok((report, judged))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub threshold: f64,
    /// Accuracy over predictions with confidence >= threshold.
    pub accuracy_above_pct: f64,
    /// Share of predictions below the threshold, left for manual revision.
    pub fraction_below_pct: f64,
    pub target_precision: f64,
    pub above: usize,
    pub below: usize,
    /// Whether some threshold reached the target; if not, the report holds the
    /// most accurate threshold instead.
    pub reached_target: bool,
}

/// Picks the lowest confidence threshold whose above-threshold accuracy
/// reaches `target_precision`, falling back to the most accurate threshold.
/// Candidate thresholds are the distinct confidence values.
pub fn threshold_sweep(judged: &[Judged], target_precision: f64) -> Result<ThresholdReport> {
    if !(target_precision > 0.0 && target_precision <= 1.0) {
        return Err(Error::InvalidTargetPrecision(target_precision));
    }
    if judged.is_empty() {
        return Err(Error::EmptyPredictions);
    }
    let mut scored: Vec<(f64, bool)> = judged
        .iter()
        .map(|j| (j.prediction.confidence, j.correct()))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));

    let n = scored.len();
    let total_correct = scored.iter().filter(|s| s.1).count();
    // (threshold, below, correct above)
    let mut points = Vec::new();
    let mut below = 0;
    let mut correct_below = 0;
    let mut i = 0;
    while i < n {
        let t = scored[i].0;
        points.push((t, below, total_correct - correct_below));
        while i < n && scored[i].0 == t {
            below += 1;
            correct_below += usize::from(scored[i].1);
            i += 1;
        }
    }

    let report = |(t, below, correct): (f64, usize, usize), reached: bool| {
        let above = n - below;
        ThresholdReport {
            threshold: t,
            accuracy_above_pct: 100.0 * correct as f64 / above as f64,
            fraction_below_pct: 100.0 * below as f64 / n as f64,
            target_precision,
            above,
            below,
            reached_target: reached,
        }
    };
    let meets = |&(_, below, correct): &(f64, usize, usize)| {
        correct as f64 >= target_precision * (n - below) as f64 - 1e-9
    };
    if let Some(&p) = points.iter().find(|p| meets(p)) {
        return Ok(report(p, true));
    }
    let mut best = points[0];
    for &p in &points[1..] {
        // correct/above > best_correct/best_above, cross-multiplied
        if (p.2 * (n - best.1)) > (best.2 * (n - p.1)) {
            best = p;
        }
    }
    Ok(report(best, false))
}

/// Percentage of the manual classification work done automatically: every
/// prediction above the threshold is accepted without revision.
pub fn automation_estimate(report: &ThresholdReport) -> f64 {
    100.0 - report.fraction_below_pct
}
