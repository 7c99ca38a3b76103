mod oracle;

use nounclass_core::eval::GoldStandard;
use nounclass_core::tree::ConfidenceMode;
use nounclass_core::{
    class_cue_frequencies, cross_validate, extract_dataset, grow, prune, stratified_folds,
    threshold_sweep, Corpus, CuePattern, CueSet, Element, Judged, Label, Language, Polarity, Pos,
    Prediction, Sentence, Token, TokenPredicate, TrainParams,
};
use proptest::prelude::*;

const POS: [Pos; 7] = [Pos::N, Pos::Det, Pos::Adj, Pos::Prep, Pos::V, Pos::Punct, Pos::Propn];
const WORDS: [&str; 8] = ["city", "teacher", "at", "the", "big", "where", "go", "in"];

fn cues(gap: usize) -> CueSet {
    let lemma = |w: &[&str]| TokenPredicate::lemma_in(w.iter().copied()).unwrap();
    CueSet::new(
        "LOCATION",
        Language::En,
        vec![
            CuePattern::new("a", "at_X", Polarity::Positive, vec![Element::pred(lemma(&["at", "in"])).with_gap(gap), Element::target()]).unwrap(),
            CuePattern::new("w", "X_where", Polarity::Positive, vec![Element::target().with_gap(gap), Element::pred(lemma(&["where"]))]).unwrap(),
            CuePattern::new("s", "suffix", Polarity::Positive, vec![Element::target().and(TokenPredicate::suffix(["-er", "-ty"]).unwrap())]).unwrap(),
            CuePattern::new("g", "go_X", Polarity::Negative, vec![Element::pred(lemma(&["go"])).and(TokenPredicate::pos_in([Pos::V]).unwrap()), Element::pred(TokenPredicate::Any), Element::target()]).unwrap(),
        ],
    )
    .unwrap()
}

fn token() -> impl Strategy<Value = Token> {
    (0..WORDS.len(), 0..POS.len()).prop_map(|(w, p)| Token::new(WORDS[w], WORDS[w], POS[p]).unwrap())
}

fn sentence_tokens() -> impl Strategy<Value = Vec<Token>> {
    prop::collection::vec(token(), 1..10)
}

fn corpus_from(sentences: &[Vec<Token>]) -> Corpus {
    let mut c = Corpus::new(Language::En);
    for s in sentences {
        c.push_tokens(s.clone()).unwrap();
    }
    c
}

fn gold() -> GoldStandard {
    GoldStandard::new("LOCATION", ["city", "where"], ["teacher", "the", "go"]).unwrap()
}

fn labelled_rows() -> impl Strategy<Value = Vec<(Vec<f64>, bool)>> {
    (1usize..4).prop_flat_map(|dim| {
        prop::collection::vec((prop::collection::vec(0u8..5, dim), any::<bool>()), 2..30).prop_map(|rows| {
            rows.into_iter().map(|(v, l)| (v.into_iter().map(|x| x as f64 / 4.0).collect(), l)).collect()
        })
    })
}

fn consistent(rows: &[(Vec<f64>, bool)]) -> bool {
    rows.iter().all(|a| rows.iter().all(|b| a.0 != b.0 || a.1 == b.1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn feature_values_are_frequencies(sentences in prop::collection::vec(sentence_tokens(), 1..20)) {
        let corpus = corpus_from(&sentences);
        let cues = cues(2);
        let vocab = ["city", "teacher", "where", "absent"];
        let ds = extract_dataset(&corpus, &cues, &vocab, None).unwrap();
        prop_assert_eq!(ds.len(), vocab.len());
        for row in ds.rows() {
            prop_assert_eq!(row.vector.values.len(), cues.groups().len());
            prop_assert!(row.vector.values.iter().all(|v| (0.0..=1.0).contains(v)));
            if !row.vector.seen {
                prop_assert!(row.vector.values.iter().all(|&v| v == 0.0));
            }
        }
    }

    #[test]
    fn sentence_order_does_not_matter(sentences in prop::collection::vec(sentence_tokens(), 1..15), rot in 0usize..15) {
        let cues = cues(2);
        let vocab = ["city", "teacher", "where", "go"];
        let a = extract_dataset(&corpus_from(&sentences), &cues, &vocab, None).unwrap();
        let mut shuffled = sentences.clone();
        shuffled.reverse();
        let k = rot % shuffled.len();
        shuffled.rotate_left(k);
        let b = extract_dataset(&corpus_from(&shuffled), &cues, &vocab, None).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn widening_gaps_never_loses_matches(tokens in sentence_tokens(), target in 0usize..10) {
        let s = Sentence::new(0, tokens).unwrap();
        let t = target % s.len();
        let narrow = cues(0).match_counts(&s, t);
        let mid = cues(1).match_counts(&s, t);
        let wide = cues(3).match_counts(&s, t);
        for g in 0..narrow.len() {
            prop_assert!(!narrow[g] || mid[g]);
            prop_assert!(!mid[g] || wide[g]);
        }
    }

    #[test]
    fn matches_depend_only_on_their_sentence(a in sentence_tokens(), b in sentence_tokens(), c in sentence_tokens(), t in 0usize..10) {
        let cues = cues(2);
        let alone = corpus_from(std::slice::from_ref(&b));
        let framed = corpus_from(&[a, b, c]);
        let t = t % alone.sentences()[0].len();
        prop_assert_eq!(
            cues.match_counts(&alone.sentences()[0], t),
            cues.match_counts(&framed.sentences()[1], t)
        );
    }

    #[test]
    fn class_frequencies_are_weighted_member_means(sentences in prop::collection::vec(sentence_tokens(), 1..20)) {
        let corpus = corpus_from(&sentences);
        let cues = cues(2);
        let gold = gold();
        let ds = extract_dataset(&corpus, &cues, &gold.vocabulary(), Some(&gold)).unwrap();
        let occ = |lemma: &str| corpus.noun_occurrences(lemma).len() as f64;
        let weighted = |label: Label| -> Option<Vec<f64>> {
            let rows: Vec<_> = ds.rows().iter().filter(|r| r.label == Some(label)).collect();
            let total: f64 = rows.iter().map(|r| occ(&r.vector.lemma)).sum();
            if total == 0.0 {
                return None;
            }
            Some((0..cues.groups().len())
                .map(|g| rows.iter().map(|r| r.vector.values[g] * occ(&r.vector.lemma)).sum::<f64>() / total)
                .collect())
        };
        match (class_cue_frequencies(&corpus, &cues, &gold), weighted(Label::Member), weighted(Label::Nonmember)) {
            (Ok(f), Some(m), Some(n)) => {
                for g in 0..m.len() {
                    prop_assert!((f.members[g] - m[g]).abs() < 1e-12);
                    prop_assert!((f.nonmembers[g] - n[g]).abs() < 1e-12);
                }
            }
            (Err(_), m, n) => prop_assert!(m.is_none() || n.is_none()),
            (Ok(_), _, _) => prop_assert!(false, "frequencies without evidence"),
        }
    }

    #[test]
    fn growing_is_deterministic_and_fits_consistent_data(rows in labelled_rows()) {
        let data = oracle::to_dataset(&rows);
        let params = TrainParams { min_leaf: 1, ..TrainParams::default() };
        let a = grow(&data, &params).unwrap();
        prop_assert_eq!(&a, &grow(&data, &params).unwrap());
        if consistent(&rows) {
            for row in data.rows() {
                prop_assert_eq!(a.route(&row.vector.values).leaf_label(), row.label);
            }
        }
    }

    #[test]
    fn pruning_never_grows_trees(rows in labelled_rows(), cf in 0.01f64..0.99, raising in any::<bool>()) {
        let data = oracle::to_dataset(&rows);
        let params = TrainParams { min_leaf: 1, confidence_factor: cf, subtree_raising: raising, ..TrainParams::default() };
        let grown = grow(&data, &params).unwrap();
        let before = grown.node_count();
        let before_est = nounclass_core::tree::estimated_errors(&grown, &data, cf).unwrap();
        let pruned = prune(grown, &data, &params).unwrap();
        prop_assert!(pruned.node_count() <= before);
        let after_est = nounclass_core::tree::estimated_errors(&pruned, &data, cf).unwrap();
        prop_assert!(after_est <= before_est + 1e-9);
    }

    #[test]
    fn routing_is_monotone_per_feature(rows in labelled_rows(), feature in 0usize..3, bump in 0.0f64..1.0) {
        let data = oracle::to_dataset(&rows);
        let dim = data.groups().len();
        let f = feature % dim;
        let tree = grow(&data, &TrainParams { min_leaf: 1, ..TrainParams::default() }).unwrap();
        // increasing one feature can only flip decisions at nodes testing it
        fn path(t: &nounclass_core::TreeNode, v: &[f64], out: &mut Vec<(usize, bool)>) {
            if let nounclass_core::TreeNode::Split { feature, threshold, left, right } = t {
                let go_left = v[*feature] <= *threshold;
                out.push((*feature, go_left));
                path(if go_left { left } else { right }, v, out);
            }
        }
        for row in data.rows() {
            let mut v = row.vector.values.clone();
            let mut before = Vec::new();
            path(&tree, &v, &mut before);
            v[f] = (v[f] + bump).min(1.0);
            let mut after = Vec::new();
            path(&tree, &v, &mut after);
            let first_diff = before.iter().zip(&after).position(|(a, b)| a != b);
            if let Some(i) = first_diff {
                prop_assert_eq!(before[i].0, f);
                prop_assert!(before[i].1 && !after[i].1);
            }
        }
    }

    #[test]
    fn folds_partition_and_stratify(m in 5usize..30, n in 5usize..30, k in 2usize..6, seed in any::<u64>()) {
        let rows: Vec<(Vec<f64>, bool)> = (0..m + n).map(|i| (vec![0.0], i < m)).collect();
        let data = oracle::to_dataset(&rows);
        let folds = stratified_folds(&data, k, seed).unwrap();
        prop_assert_eq!(&folds, &stratified_folds(&data, k, seed).unwrap());
        let mut all: Vec<usize> = folds.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..m + n).collect::<Vec<_>>());
        for class in [true, false] {
            let sizes: Vec<usize> = folds.iter().map(|f| f.iter().filter(|&&i| rows[i].1 == class).count()).collect();
            prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        }
    }

    #[test]
    fn sweep_matches_exhaustive_cut_points(preds in prop::collection::vec((1u8..=10, any::<bool>()), 1..40), target in 0.5f64..1.0) {
        let judged: Vec<Judged> = preds.iter().map(|&(c, ok)| Judged {
            prediction: Prediction { lemma: String::new(), label: Label::Member, confidence: c as f64 / 10.0 },
            gold: if ok { Label::Member } else { Label::Nonmember },
            fold: 0,
        }).collect();
        let plain: Vec<(f64, bool)> = preds.iter().map(|&(c, ok)| (c as f64 / 10.0, ok)).collect();
        let got = threshold_sweep(&judged, target).unwrap();
        let (t, acc, below) = oracle::sweep(&plain, target);
        prop_assert_eq!(got.threshold, t);
        prop_assert!((got.accuracy_above_pct - acc).abs() < 1e-9);
        prop_assert!((got.fraction_below_pct - below).abs() < 1e-9);
        prop_assert!((0.0..=100.0).contains(&got.fraction_below_pct));
        // lowering the target never asks for more revision
        let lower = threshold_sweep(&judged, target - 0.2).unwrap();
        if got.reached_target {
            prop_assert!(lower.fraction_below_pct <= got.fraction_below_pct);
        }
    }
}

#[test]
fn six_predictions_sweep() {
    let preds = [(0.55, false), (0.6, true), (0.75, true), (0.75, false), (0.9, true), (1.0, true)];
    let judged: Vec<Judged> = preds
        .iter()
        .map(|&(c, ok)| Judged {
            prediction: Prediction { lemma: String::new(), label: Label::Member, confidence: c },
            gold: if ok { Label::Member } else { Label::Nonmember },
            fold: 0,
        })
        .collect();
    for target in [0.5, 0.7, 0.8, 0.9, 1.0] {
        let got = threshold_sweep(&judged, target).unwrap();
        let (t, acc, below) = oracle::sweep(&preds, target);
        assert_eq!(got.threshold, t, "target {target}");
        assert!((got.accuracy_above_pct - acc).abs() < 1e-9);
        assert!((got.fraction_below_pct - below).abs() < 1e-9);
    }
    let r = threshold_sweep(&judged, 0.9).unwrap();
    assert_eq!(r.threshold, 0.9);
    assert_eq!(r.fraction_below_pct, 400.0 / 6.0);
}

#[test]
fn cross_validation_predicts_every_row_once() {
    let rows: Vec<(Vec<f64>, bool)> = (0..40).map(|i| (vec![(i % 10) as f64 / 10.0, (i % 3) as f64 / 3.0], i % 2 == 0)).collect();
    let data = oracle::to_dataset(&rows);
    let (report, judged) = cross_validate(&data, TrainParams::default(), 10, 4, ConfidenceMode::Purity).unwrap();
    assert_eq!(judged.len(), 40);
    for (j, row) in judged.iter().zip(data.rows()) {
        assert_eq!(j.prediction.lemma, row.vector.lemma);
    }
    assert!((report.accuracy_pct + report.fp_pct + report.fn_pct - 100.0).abs() < 0.01);
}
