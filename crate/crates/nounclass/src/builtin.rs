//! Shipped cue inventories and their class-conditional rates, parsed through
//! the same code path as user files.

use nounclass_core::{CueSet, SynthGroup};

use crate::error::{Error, Result};
use crate::formats::{parse_cueset, parse_rates};

const CUES: [(&str, &str, &str); 4] = [
    ("LOCATION", "en", include_str!("../data/cues/LOCATION-en.cue")),
    ("LOCATION", "es", include_str!("../data/cues/LOCATION-es.cue")),
    ("HUMAN", "en", include_str!("../data/cues/HUMAN-en.cue")),
    ("HUMAN", "es", include_str!("../data/cues/HUMAN-es.cue")),
];

const RATES: [(&str, &str, &str); 4] = [
    ("LOCATION", "en", include_str!("../data/rates/LOCATION-en.tsv")),
    ("LOCATION", "es", include_str!("../data/rates/LOCATION-es.tsv")),
    ("HUMAN", "en", include_str!("../data/rates/HUMAN-en.tsv")),
    ("HUMAN", "es", include_str!("../data/rates/HUMAN-es.tsv")),
];

fn lookup(table: &[(&str, &str, &'static str)], class: &str, lang: &str) -> Result<&'static str> {
    table
        .iter()
        .find(|(c, l, _)| c.eq_ignore_ascii_case(class) && l.eq_ignore_ascii_case(lang))
        .map(|t| t.2)
        .ok_or_else(|| {
            Error::Usage(format!(
                "no builtin inventory for {class}-{lang}; supply a cue-set file (builtins: HUMAN and LOCATION, en and es)"
            ))
        })
}

fn builtin_parse_error(name: &str, e: crate::error::ParseError) -> Error {
    Error::Parse { path: format!("builtin:{name}").into(), source: e }
}

pub fn builtin_cueset(class: &str, lang: &str) -> Result<CueSet> {
    let text = lookup(&CUES, class, lang)?;
    parse_cueset(text, None).map_err(|e| builtin_parse_error(&format!("{class}-{lang}"), e))
}

pub fn builtin_rates(class: &str, lang: &str) -> Result<Vec<SynthGroup>> {
    let text = lookup(&RATES, class, lang)?;
    parse_rates(text).map_err(|e| builtin_parse_error(&format!("{class}-{lang}"), e))
}

/// Splits `builtin:CLASS-lang` into its parts; `None` for anything else.
pub fn builtin_name(source: &str) -> Option<(&str, &str)> {
    source.strip_prefix("builtin:")?.rsplit_once('-')
}
