//! Evaluation reports as `key=value` lines, plus the prediction and
//! cue-statistics tables.

use nounclass_core::features::CueFrequencies;
use nounclass_core::{automation_estimate, EvalReport, Prediction, ThresholdReport};

pub struct ReportContext {
    pub k: usize,
    pub seed: u64,
}

/// Percentages carry two decimals, the threshold six.
pub fn serialize_report(eval: &EvalReport, thr: &ThresholdReport, ctx: &ReportContext) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: String| out.push_str(&format!("{k}={v}\n"));
    let [acc, fp, fn_] = hundredths(
        [eval.true_positives + eval.true_negatives, eval.false_positives, eval.false_negatives],
        eval.n,
    );
    kv("acc", acc);
    kv("fp", fp);
    kv("fn", fn_);
    kv("thr_acc", format!("{:.2}", thr.accuracy_above_pct));
    kv("to_revise", format!("{:.2}", thr.fraction_below_pct));
    kv("threshold", format!("{:.6}", thr.threshold));
    kv("k", ctx.k.to_string());
    kv("seed", ctx.seed.to_string());
    kv("n", eval.n.to_string());
    kv("tp", eval.true_positives.to_string());
    kv("tn", eval.true_negatives.to_string());
    kv("fp_count", eval.false_positives.to_string());
    kv("fn_count", eval.false_negatives.to_string());
    kv("target_precision", format!("{:.2}", thr.target_precision));
    kv("target_reached", u8::from(thr.reached_target).to_string());
    kv("automation", format!("{:.2}", automation_estimate(thr)));
    kv("threshold_selection", "pooled".to_string());
    for (i, f) in eval.folds.iter().enumerate() {
        kv(&format!("fold{}_acc", i + 1), format!("{:.2}", f.accuracy_pct));
    }
    out
}

/// Percentages of `n` at two decimals that print as exactly 100.00 when the
/// counts sum to `n`. The first is rounded half to even on its own; the
/// others share what is left by largest remainder.
fn hundredths(counts: [usize; 3], n: usize) -> [String; 3] {
    if n == 0 {
        return ["0.00".to_string(), "0.00".to_string(), "0.00".to_string()];
    }
    let (q, r) = (10_000 * counts[0] / n, 10_000 * counts[0] % n);
    let first = if 2 * r > n || (2 * r == n && q % 2 == 1) { q + 1 } else { q };
    let mut units = [first, 10_000 * counts[1] / n, 10_000 * counts[2] / n];
    let total: usize = counts.iter().sum();
    let left = (10_000 * total / n).saturating_sub(first);
    let missing = left.saturating_sub(units[1] + units[2]);
    let mut order = [1, 2];
    order.sort_by(|&a, &b| (10_000 * counts[b] % n).cmp(&(10_000 * counts[a] % n)).then(a.cmp(&b)));
    for &i in order.iter().take(missing) {
        units[i] += 1;
    }
    units.map(|u| format!("{}.{:02}", u / 100, u % 100))
}

/// Reads `key=value` lines back; later keys win.
pub fn parse_report(text: &str) -> std::collections::BTreeMap<String, String> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

pub fn serialize_predictions(preds: &[Prediction]) -> String {
    preds
        .iter()
        .map(|p| format!("{}\t{}\t{:.6}\n", p.lemma, p.label, p.confidence))
        .collect()
}

pub fn serialize_cue_stats(f: &CueFrequencies) -> String {
    let mut out = String::from("group\tmember\tnonmember\n");
    for ((g, m), n) in f.groups.iter().zip(&f.members).zip(&f.nonmembers) {
        out.push_str(&format!("{g}\t{m:.5}\t{n:.5}\n"));
    }
    out
}
