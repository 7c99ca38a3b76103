//! Per-lemma cue profiles and relative-frequency feature vectors.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::corpus::{Corpus, Position};
use crate::cue::CueSet;
use crate::eval::GoldStandard;
use crate::tree::Label;
use crate::{Error, Result};

/// Cue hits aggregated over every noun occurrence of one lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeProfile {
    pub lemma: String,
    pub occurrence_count: usize,
    /// Per group, the number of occurrences at which the group fired.
    pub group_hits: Vec<usize>,
}

impl TypeProfile {
    pub fn to_vector(&self) -> FeatureVector {
        let seen = self.occurrence_count > 0;
        let values = self
            .group_hits
            .iter()
            .map(|&h| if seen { h as f64 / self.occurrence_count as f64 } else { 0.0 })
            .collect();
        FeatureVector {
            lemma: self.lemma.clone(),
            values,
            seen,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub lemma: String,
    /// Relative frequency per group, in [0, 1].
    pub values: Vec<f64>,
    pub seen: bool,
}

fn profile_at(corpus: &Corpus, cues: &CueSet, lemma: &str, at: &[Position]) -> TypeProfile {
    let mut group_hits = alloc::vec![0usize; cues.groups().len()];
    for pos in at {
        let sentence = &corpus.sentences()[pos.sentence];
        for (hits, fired) in group_hits.iter_mut().zip(cues.match_counts(sentence, pos.token)) {
            *hits += usize::from(fired);
        }
    }
    TypeProfile {
        lemma: lemma.to_string(),
        occurrence_count: at.len(),
        group_hits,
    }
}

pub fn profile_type(corpus: &Corpus, cues: &CueSet, lemma: &str) -> TypeProfile {
    let lemma = lemma.to_lowercase();
    let at = corpus.noun_occurrences(&lemma);
    profile_at(corpus, cues, &lemma, &at)
}

/// Profiles every lemma in `lemmas` with a single pass over the corpus.
pub fn profile_types<S: AsRef<str>>(corpus: &Corpus, cues: &CueSet, lemmas: &[S]) -> Vec<TypeProfile> {
    let index = corpus.noun_index();
    lemmas
        .iter()
        .map(|l| {
            let lemma = l.as_ref().to_lowercase();
            let at = index.get(lemma.as_str()).map(Vec::as_slice).unwrap_or(&[]);
            profile_at(corpus, cues, &lemma, at)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub vector: FeatureVector,
    pub label: Option<Label>,
}

/// Feature rows sharing one group order.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    groups: Vec<String>,
    rows: Vec<Row>,
}

impl Dataset {
    /// Checks that every row has one value per group, values lie in [0, 1]
    /// and lemmas are unique.
    pub fn new(groups: Vec<String>, rows: Vec<Row>) -> Result<Self> {
        let mut lemmas = BTreeSet::new();
        for row in &rows {
            if row.vector.values.len() != groups.len() {
                return Err(Error::DimensionMismatch {
                    expected: groups.len(),
                    found: row.vector.values.len(),
                });
            }
            if let Some(v) = row.vector.values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return Err(Error::InvalidPredicate(alloc::format!(
                    "feature value {v} of `{}` is outside [0, 1]",
                    row.vector.lemma
                )));
            }
            if !lemmas.insert(row.vector.lemma.as_str()) {
                return Err(Error::DuplicateLemma(row.vector.lemma.clone()));
            }
        }
        Ok(Dataset { groups, rows })
    }

    pub fn groups(&self) -> &[String] {
        &self.groups
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows at the given indices, in that order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            groups: self.groups.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// Drops rows whose lemma never occurred in the corpus.
    pub fn without_unseen(&self) -> Dataset {
        Dataset {
            groups: self.groups.clone(),
            rows: self.rows.iter().filter(|r| r.vector.seen).cloned().collect(),
        }
    }

    /// Number of (member, nonmember) labelled rows.
    pub fn class_counts(&self) -> (usize, usize) {
        self.rows.iter().fold((0, 0), |(m, n), r| match r.label {
            Some(Label::Member) => (m + 1, n),
            Some(Label::Nonmember) => (m, n + 1),
            None => (m, n),
        })
    }
}

/// One row per vocabulary lemma, in vocabulary order, labelled from `gold`
/// when given.
pub fn extract_dataset<S: AsRef<str>>(
    corpus: &Corpus,
    cues: &CueSet,
    vocabulary: &[S],
    gold: Option<&GoldStandard>,
) -> Result<Dataset> {
    if vocabulary.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    let mut seen = BTreeSet::new();
    for lemma in vocabulary {
        let lemma = lemma.as_ref().to_lowercase();
        if seen.contains(&lemma) {
            return Err(Error::DuplicateLemma(lemma));
        }
        seen.insert(lemma);
    }
    let rows = profile_types(corpus, cues, vocabulary)
        .into_iter()
        .map(|profile| Row {
            label: gold.and_then(|g| g.label(&profile.lemma)),
            vector: profile.to_vector(),
        })
        .collect();
    Dataset::new(cues.groups().to_vec(), rows)
}

/// Occurrence-weighted cue frequencies of class members and non-members.
#[derive(Debug, Clone, PartialEq)]
pub struct CueFrequencies {
    pub groups: Vec<String>,
    pub members: Vec<f64>,
    pub nonmembers: Vec<f64>,
    pub member_occurrences: usize,
    pub nonmember_occurrences: usize,
}

pub fn class_cue_frequencies(corpus: &Corpus, cues: &CueSet, gold: &GoldStandard) -> Result<CueFrequencies> {
    if gold.members.is_empty() {
        return Err(Error::EmptyGoldClass("members"));
    }
    if gold.nonmembers.is_empty() {
        return Err(Error::EmptyGoldClass("non-members"));
    }
    let pooled = |lemmas: &BTreeSet<String>, what: &str| -> Result<(Vec<f64>, usize)> {
        let lemmas: Vec<&String> = lemmas.iter().collect();
        let mut hits = alloc::vec![0usize; cues.groups().len()];
        let mut total = 0;
        for p in profile_types(corpus, cues, &lemmas) {
            total += p.occurrence_count;
            for (h, g) in hits.iter_mut().zip(&p.group_hits) {
                *h += g;
            }
        }
        if total == 0 {
            return Err(Error::NoEvidence(alloc::format!("no {what} occurs in the corpus")));
        }
        Ok((hits.into_iter().map(|h| h as f64 / total as f64).collect(), total))
    };
    let (members, member_occurrences) = pooled(&gold.members, "member")?;
    let (nonmembers, nonmember_occurrences) = pooled(&gold.nonmembers, "non-member")?;
    Ok(CueFrequencies {
        groups: cues.groups().to_vec(),
        members,
        nonmembers,
        member_occurrences,
        nonmember_occurrences,
    })
}
