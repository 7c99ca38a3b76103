//! The cue-set language.
//!
//! ```text
//! # LOCATION cues
//! class LOCATION
//! lang en
//! cue id=r03 group=at_X pol=+ : lemma("at")&pos(PREP) TARGET
//! cue id=r02 group=X_where pol=+ : TARGET gap=0 punct(",") lemma("where")
//! ```
//!
//! Elements are separated by whitespace; `&` joins predicates that must hold
//! on the same token, and a `gap=N` token after an element sets how many
//! determiners, adjectives or numerals may sit between it and the next one.
//! `lexfile("path")` loads one lemma per line, relative to the cue file.

use std::path::Path;

use nounclass_core::cue::DEFAULT_GAP;
use nounclass_core::{CuePattern, CueSet, Element, Language, Polarity, Pos, TokenPredicate};

use crate::error::ParseError;

pub fn parse_cueset(text: &str, base_dir: Option<&Path>) -> Result<CueSet, ParseError> {
    let mut class_name = None;
    let mut language = None;
    let mut patterns: Vec<CuePattern> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: String| ParseError::new(line_no, m);
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match keyword {
            "class" if !rest.trim().is_empty() => class_name = Some(rest.trim().to_string()),
            "lang" if !rest.trim().is_empty() => language = Some(Language::from(rest.trim())),
            "cue" => {
                let p = parse_cue(rest, base_dir).map_err(err)?;
                if patterns.iter().any(|q| q.id == p.id) {
                    return Err(err(format!("duplicate pattern id `{}`", p.id)));
                }
                patterns.push(p);
            }
            _ => return Err(err(format!("expected `class`, `lang` or `cue`, found `{keyword}`"))),
        }
    }
    CueSet::new(
        class_name.unwrap_or_else(|| "UNNAMED".to_string()),
        language.unwrap_or_else(|| Language::from("und")),
        patterns,
    )
    .map_err(|e| ParseError::new(text.lines().count(), e.to_string()))
}

fn parse_cue(rest: &str, base_dir: Option<&Path>) -> Result<CuePattern, String> {
    let (head, body) = rest.split_once(':').ok_or("missing `:` before the elements")?;
    let (mut id, mut group, mut pol) = (None, None, None);
    for kv in head.split_whitespace() {
        let (k, v) = kv.split_once('=').ok_or_else(|| format!("expected key=value, found `{kv}`"))?;
        if v.is_empty() {
            return Err(format!("empty value for `{k}`"));
        }
        match k {
            "id" => id = Some(v),
            "group" => group = Some(v),
            "pol" => {
                pol = Some(match v {
                    "+" => Polarity::Positive,
                    "-" => Polarity::Negative,
                    _ => return Err(format!("polarity must be + or -, found `{v}`")),
                })
            }
            _ => return Err(format!("unknown cue attribute `{k}`")),
        }
    }
    let id = id.ok_or("cue needs id=")?;
    let group = group.ok_or("cue needs group=")?;
    let pol = pol.ok_or("cue needs pol=")?;
    let elements = Lexer::new(body, base_dir).elements(id)?;
    CuePattern::new(id, group, pol, elements).map_err(|e| e.to_string())
}

struct Lexer<'a> {
    chars: Vec<char>,
    at: usize,
    base_dir: Option<&'a Path>,
}

impl<'a> Lexer<'a> {
    fn new(body: &str, base_dir: Option<&'a Path>) -> Self {
        Lexer { chars: body.chars().collect(), at: 0, base_dir }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.at += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> String {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.at += 1;
        }
        self.chars[start..self.at].iter().collect()
    }

    fn elements(mut self, id: &str) -> Result<Vec<Element>, String> {
        let mut out: Vec<Element> = Vec::new();
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(out);
            }
            let mark = self.at;
            if self.word() == "gap" && self.eat('=') {
                let n = self.word();
                let gap = n.parse().map_err(|_| format!("bad gap value `{n}`"))?;
                let last = out.last_mut().ok_or("gap= must follow an element")?;
                last.gap = gap;
                continue;
            }
            self.at = mark;
            out.push(self.element(id)?);
        }
    }

    fn element(&mut self, id: &str) -> Result<Element, String> {
        let mut element = Element { target: false, predicates: Vec::new(), gap: DEFAULT_GAP };
        loop {
            match self.atom()? {
                None if element.target => return Err(format!("pattern `{id}` has multiple TARGET")),
                None => element.target = true,
                Some(p) => element.predicates.push(p),
            }
            let mark = self.at;
            self.skip_ws();
            if !self.eat('&') {
                self.at = mark;
                return Ok(element);
            }
            self.skip_ws();
        }
    }

    /// `None` for TARGET.
    fn atom(&mut self) -> Result<Option<TokenPredicate>, String> {
        let name = self.word();
        match name.as_str() {
            "" => return Err(format!("unexpected `{}`", self.peek().unwrap_or(' '))),
            "TARGET" => return Ok(None),
            "any" => return Ok(Some(TokenPredicate::Any)),
            _ => {}
        }
        if !self.eat('(') {
            return Err(format!("`{name}` needs an argument list"));
        }
        let args = self.args()?;
        let pred = match name.as_str() {
            "lemma" => TokenPredicate::lemma_in(&args),
            "surface_suffix" => TokenPredicate::suffix(&args),
            "surface_prefix" => TokenPredicate::prefix(&args),
            "punct" if args.len() == 1 => TokenPredicate::punct(args[0].clone()),
            "punct" => return Err("punct takes one literal".into()),
            "pos" => {
                let tags = args
                    .iter()
                    .map(|a| a.parse::<Pos>().map_err(|_| format!("unknown pos tag `{a}`")))
                    .collect::<Result<Vec<_>, _>>()?;
                TokenPredicate::pos_in(tags)
            }
            "lexfile" if args.len() == 1 => return self.lexfile(&args[0]).map(Some),
            "lexfile" => return Err("lexfile takes one path".into()),
            _ => return Err(format!("unknown predicate `{name}`")),
        };
        pred.map(Some).map_err(|e| e.to_string())
    }

    fn args(&mut self) -> Result<Vec<String>, String> {
        let mut args = Vec::new();
        loop {
            self.skip_ws();
            if self.eat(')') {
                return Ok(args);
            }
            if !args.is_empty() && !self.eat(',') {
                return Err("expected `,` or `)`".into());
            }
            self.skip_ws();
            args.push(if self.eat('"') { self.string()? } else { self.bare()? });
        }
    }

    fn string(&mut self) -> Result<String, String> {
        let mut s = String::new();
        loop {
            match self.peek() {
                None => return Err("unterminated string".into()),
                Some('"') => {
                    self.at += 1;
                    return Ok(s);
                }
                Some('\\') => {
                    self.at += 1;
                    s.push(self.peek().ok_or("unterminated string")?);
                    self.at += 1;
                }
                Some(c) => {
                    s.push(c);
                    self.at += 1;
                }
            }
        }
    }

    fn bare(&mut self) -> Result<String, String> {
        let start = self.at;
        while self.peek().is_some_and(|c| !c.is_whitespace() && c != ',' && c != ')') {
            self.at += 1;
        }
        if start == self.at {
            return Err("empty argument".into());
        }
        Ok(self.chars[start..self.at].iter().collect())
    }

    fn lexfile(&self, path: &str) -> Result<TokenPredicate, String> {
        let full = match self.base_dir {
            Some(dir) => dir.join(path),
            None => path.into(),
        };
        let text = std::fs::read_to_string(&full).map_err(|e| format!("cannot read lexfile `{path}`: {e}"))?;
        let lemmas = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        TokenPredicate::lemma_file(path, lemmas).map_err(|e| e.to_string())
    }
}

fn quote(s: &str) -> String {
    let mut out = String::from('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn quoted_list<'a>(items: impl IntoIterator<Item = &'a String>, decorate: impl Fn(&str) -> String) -> String {
    items.into_iter().map(|s| quote(&decorate(s))).collect::<Vec<_>>().join(",")
}

fn predicate(p: &TokenPredicate) -> String {
    match p {
        TokenPredicate::Suffix(v) => format!("surface_suffix({})", quoted_list(v, |s| format!("-{s}"))),
        TokenPredicate::Prefix(v) => format!("surface_prefix({})", quoted_list(v, |s| format!("{s}-"))),
        TokenPredicate::LemmaIn(set) => format!("lemma({})", quoted_list(set, str::to_string)),
        TokenPredicate::LemmaFile { path, .. } => format!("lexfile({})", quote(path)),
        TokenPredicate::PosIn(set) => {
            format!("pos({})", set.iter().map(|p| p.as_str()).collect::<Vec<_>>().join(","))
        }
        TokenPredicate::Any => "any".to_string(),
        TokenPredicate::Punct(s) => format!("punct({})", quote(s)),
    }
}

pub fn serialize_cueset(set: &CueSet) -> String {
    let mut out = format!("class {}\nlang {}\n", set.class_name, set.language);
    for p in set.patterns() {
        let pol = match p.polarity {
            Polarity::Positive => '+',
            Polarity::Negative => '-',
        };
        out.push_str(&format!("cue id={} group={} pol={pol} :", p.id, p.group));
        for e in p.elements() {
            let mut atoms = Vec::new();
            if e.target {
                atoms.push("TARGET".to_string());
            }
            atoms.extend(e.predicates.iter().map(predicate));
            out.push(' ');
            out.push_str(&atoms.join("&"));
            if e.gap != DEFAULT_GAP {
                out.push_str(&format!(" gap={}", e.gap));
            }
        }
        out.push('\n');
    }
    out
}
