//! Cue-based lexical semantic classification of nouns.
//!
//! Nouns are classified from the contexts they occur in. A [`cue::CueSet`]
//! describes the contexts that mark one class (HUMAN, LOCATION, ...); every
//! occurrence of a noun lemma in a PoS-tagged [`corpus::Corpus`] is checked
//! against those cues, and the per-lemma relative frequencies become the
//! feature vector fed to a pruned C4.5 tree ([`tree`]). The [`eval`] module
//! runs stratified cross-validation and the confidence-threshold triage that
//! decides which predictions still need a human look.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the builtin cue
//! inventories and the command-line front end live in the `nounclass` crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod corpus;
pub mod cue;
mod error;
pub mod eval;
pub mod features;
pub mod synth;
pub mod tree;

pub use corpus::{Corpus, Language, Pos, Position, Sentence, TagMap, Token};
pub use cue::{CuePattern, CueSet, Element, Polarity, TokenPredicate};
pub use error::{Error, Result};
pub use eval::{
    automation_estimate, cross_validate, stratified_folds, threshold_sweep, EvalReport,
    GoldStandard, Judged, ThresholdReport,
};
pub use features::{
    class_cue_frequencies, extract_dataset, profile_type, Dataset, FeatureVector, Row,
    TypeProfile,
};
pub use synth::{synth_corpus, SynthGroup, SynthSpec};
pub use tree::{classify, grow, prune, Label, Model, Prediction, TrainParams, TreeNode};
