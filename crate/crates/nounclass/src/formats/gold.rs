//! Gold lists (`lemma<TAB>1|0`) and plain vocabularies (one lemma per line).

use nounclass_core::{GoldStandard, Label};

use crate::error::ParseError;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

pub fn parse_gold(text: &str, class_name: &str) -> Result<GoldStandard, ParseError> {
    let mut members = Vec::new();
    let mut nonmembers = Vec::new();
    let mut last = 0;
    for (n, line) in content_lines(text) {
        last = n;
        match line.split_once('\t') {
            Some((lemma, "1")) if !lemma.is_empty() => members.push(lemma),
            Some((lemma, "0")) if !lemma.is_empty() => nonmembers.push(lemma),
            _ => return Err(ParseError::new(n, "expected `lemma<TAB>1` or `lemma<TAB>0`")),
        }
    }
    GoldStandard::new(class_name, members, nonmembers).map_err(|e| ParseError::new(last, e.to_string()))
}

pub fn serialize_gold(gold: &GoldStandard) -> String {
    let mut out = String::new();
    for lemma in gold.vocabulary() {
        let label = gold.label(&lemma).map_or('?', Label::as_char);
        out.push_str(&format!("{lemma}\t{label}\n"));
    }
    out
}

pub fn parse_vocabulary(text: &str) -> Vec<String> {
    content_lines(text).map(|(_, l)| l.trim().to_string()).collect()
}
