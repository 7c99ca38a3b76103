//! Vertical corpus files: `surface<TAB>lemma<TAB>pos` per line, a blank line
//! after each sentence, `#` comment lines.

use nounclass_core::{Corpus, Language, TagMap, Token};

use crate::error::ParseError;

pub fn parse_corpus(text: &str, language: Language, tags: &TagMap) -> Result<Corpus, ParseError> {
    let mut corpus = Corpus::new(language);
    let mut sentence = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.starts_with('#') {
            continue;
        }
        if line.trim().is_empty() {
            if !sentence.is_empty() {
                corpus.push_tokens(std::mem::take(&mut sentence)).expect("non-empty sentence");
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(ParseError::new(
                line_no,
                format!("expected 3 tab-separated fields, found {}", fields.len()),
            ));
        }
        let pos = tags
            .resolve(fields[2])
            .map_err(|_| ParseError::new(line_no, format!("unknown pos tag `{}`", fields[2])))?;
        let token = Token::new(fields[0], fields[1], pos).map_err(|e| ParseError::new(line_no, e.to_string()))?;
        sentence.push(token);
    }
    if !sentence.is_empty() {
        corpus.push_tokens(sentence).expect("non-empty sentence");
    }
    Ok(corpus)
}

pub fn serialize_corpus(corpus: &Corpus) -> String {
    let mut out = String::new();
    for s in corpus.sentences() {
        for t in s.tokens() {
            out.push_str(&t.surface);
            out.push('\t');
            out.push_str(&t.lemma);
            out.push('\t');
            out.push_str(t.pos.as_str());
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

/// Tag-map files: `source_tag<TAB>COARSE` per line.
pub fn parse_tag_map(text: &str) -> Result<TagMap, ParseError> {
    let mut map = TagMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((source, target)) = line.split_once('\t') else {
            return Err(ParseError::new(i + 1, "expected `source<TAB>coarse tag`"));
        };
        let pos = target
            .trim()
            .parse()
            .map_err(|_| ParseError::new(i + 1, format!("unknown coarse tag `{}`", target.trim())))?;
        map.insert(source, pos);
    }
    Ok(map)
}
