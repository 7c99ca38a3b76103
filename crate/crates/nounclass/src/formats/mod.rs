//! Line-oriented UTF-8 file formats. Every parser reports the 1-based line of
//! the first problem; every serializer writes LF line endings.

pub mod corpus;
pub mod cues;
pub mod dataset;
pub mod gold;
pub mod model;
pub mod rates;
pub mod report;

pub use corpus::{parse_corpus, parse_tag_map, serialize_corpus};
pub use cues::{parse_cueset, serialize_cueset};
pub use dataset::{parse_dataset, serialize_dataset};
pub use gold::{parse_gold, parse_vocabulary, serialize_gold};
pub use model::{parse_model, serialize_model};
pub use rates::parse_rates;
pub use report::{parse_report, serialize_cue_stats, serialize_predictions, serialize_report, ReportContext};
