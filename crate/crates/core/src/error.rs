use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unknown part-of-speech tag `{0}`")]
    UnknownPos(String),
    #[error("token has an empty {0}")]
    EmptyField(&'static str),
    #[error("sentence has no tokens")]
    EmptySentence,

    #[error("pattern `{0}` has no TARGET")]
    MissingTarget(String),
    #[error("pattern `{0}` has multiple TARGET")]
    MultipleTarget(String),
    #[error("pattern `{0}` has no elements")]
    EmptyPattern(String),
    #[error("duplicate pattern id `{0}`")]
    DuplicatePatternId(String),
    #[error("invalid predicate: {0}")]
    InvalidPredicate(String),

    #[error("duplicate lemma `{0}` in vocabulary")]
    DuplicateLemma(String),
    #[error("vocabulary is empty")]
    EmptyVocabulary,
    #[error("no evidence: {0}")]
    NoEvidence(String),
    #[error("dimension mismatch: expected {expected} features, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("entropy of an empty distribution")]
    EmptyDistribution,
    #[error("row `{0}` has no label")]
    Unlabeled(String),
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("invalid training parameter: {0}")]
    InvalidParams(String),

    #[error("lemma `{0}` is both a member and a non-member")]
    GoldOverlap(String),
    #[error("gold standard has no {0}")]
    EmptyGoldClass(&'static str),
    #[error("k must be at least 2, got {0}")]
    InvalidFoldCount(usize),
    #[error("class {class} has {count} instances, fewer than k={k}")]
    ClassTooSmall { class: &'static str, count: usize, k: usize },
    #[error("target precision must lie in (0, 1], got {0}")]
    InvalidTargetPrecision(f64),
    #[error("no predictions to sweep")]
    EmptyPredictions,

    #[error("invalid synthesis spec: {0}")]
    InvalidSynthSpec(String),
    #[error("cannot plant a context for group `{group}`: {reason}")]
    Unplantable { group: String, reason: String },
}
