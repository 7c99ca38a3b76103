//! Cue patterns: declarative token-sequence contexts around a TARGET noun.
//!
//! A pattern is an ordered list of [`Element`]s. Exactly one element is the
//! TARGET slot, which is pinned to the noun occurrence being examined; the
//! other elements must be satisfied by tokens to its left and right, in order.
//! Between consecutive elements a pattern may skip up to `gap` tokens, but only
//! tokens that can sit inside a noun phrase (determiners, possessives,
//! adjectives, numerals). That is enough for `at_X` to match "at the old X"
//! without a parser.
//!
//! Patterns are grouped: every pattern names a feature group and a group fires
//! when any of its patterns matches.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::corpus::{Language, Pos, Sentence, Token};
use crate::{Error, Result};

/// Gap applied between elements when a pattern does not say otherwise.
pub const DEFAULT_GAP: usize = 2;

/// Shortest stem an affix may leave behind, so "or" never matches `-or`.
pub const MIN_STEM_CHARS: usize = 2;

/// Tags a gap may skip over.
pub const SKIPPABLE: [Pos; 4] = [Pos::Det, Pos::PossDet, Pos::Adj, Pos::Num];

pub fn is_skippable(token: &Token) -> bool {
    SKIPPABLE.contains(&token.pos)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenPredicate {
    /// Surface form ends with one of the suffixes (stored without the dash).
    Suffix(Vec<String>),
    /// Surface form starts with one of the prefixes (stored without the dash).
    Prefix(Vec<String>),
    LemmaIn(BTreeSet<String>),
    /// Lemma belongs to a list loaded from a file, e.g. a frequency-ranked
    /// word list. The path is kept so the pattern can be written back out.
    LemmaFile { path: String, lemmas: BTreeSet<String> },
    PosIn(BTreeSet<Pos>),
    Any,
    /// A punctuation token with this exact surface.
    Punct(String),
}

fn affixes<I, S>(kind: &str, items: I, strip: fn(&str) -> &str) -> Result<Vec<String>>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut out: Vec<String> = Vec::new();
    for item in items {
        let affix = strip(item.as_ref().trim()).to_lowercase();
        if affix.is_empty() {
            return Err(Error::InvalidPredicate(alloc::format!("empty {kind}")));
        }
        if !out.contains(&affix) {
            out.push(affix);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidPredicate(alloc::format!("{kind} list is empty")));
    }
    Ok(out)
}

fn lemma_set<I, S>(items: I) -> Result<BTreeSet<String>>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut set = BTreeSet::new();
    for item in items {
        let lemma = item.as_ref().trim().to_lowercase();
        if lemma.is_empty() {
            return Err(Error::InvalidPredicate("empty lemma".to_string()));
        }
        set.insert(lemma);
    }
    if set.is_empty() {
        return Err(Error::InvalidPredicate("lemma set is empty".to_string()));
    }
    Ok(set)
}

impl TokenPredicate {
    /// Suffix list; a leading `-` is optional, duplicates collapse.
    pub fn suffix<I, S>(items: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        affixes("suffix", items, |s| s.strip_prefix('-').unwrap_or(s)).map(TokenPredicate::Suffix)
    }

    /// Prefix list; a trailing `-` is optional, duplicates collapse.
    pub fn prefix<I, S>(items: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        affixes("prefix", items, |s| s.strip_suffix('-').unwrap_or(s)).map(TokenPredicate::Prefix)
    }

    pub fn lemma_in<I, S>(items: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        lemma_set(items).map(TokenPredicate::LemmaIn)
    }

    pub fn lemma_file<I, S>(path: impl Into<String>, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let path = path.into();
        let lemmas = lemma_set(items)
            .map_err(|_| Error::InvalidPredicate(alloc::format!("lemma file `{path}` is empty")))?;
        Ok(TokenPredicate::LemmaFile { path, lemmas })
    }

    pub fn pos_in<I: IntoIterator<Item = Pos>>(tags: I) -> Result<Self> {
        let set: BTreeSet<Pos> = tags.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidPredicate("pos set is empty".to_string()));
        }
        Ok(TokenPredicate::PosIn(set))
    }

    pub fn punct(literal: impl Into<String>) -> Result<Self> {
        let literal = literal.into();
        if literal.is_empty() {
            return Err(Error::InvalidPredicate("empty punctuation literal".to_string()));
        }
        Ok(TokenPredicate::Punct(literal))
    }

    pub fn accepts(&self, token: &Token) -> bool {
        match self {
            TokenPredicate::Suffix(list) => affix_match(&token.surface, list, |w, a| w.ends_with(a)),
            TokenPredicate::Prefix(list) => {
                affix_match(&token.surface, list, |w, a| w.starts_with(a))
            }
            TokenPredicate::LemmaIn(set) | TokenPredicate::LemmaFile { lemmas: set, .. } => {
                set.contains(&token.lemma)
            }
            TokenPredicate::PosIn(set) => set.contains(&token.pos),
            TokenPredicate::Any => true,
            TokenPredicate::Punct(lit) => token.pos == Pos::Punct && token.surface == *lit,
        }
    }
}

fn affix_match(surface: &str, affixes: &[String], test: fn(&str, &str) -> bool) -> bool {
    let word = surface.to_lowercase();
    let chars = word.chars().count();
    affixes
        .iter()
        .any(|a| test(&word, a) && chars >= a.chars().count() + MIN_STEM_CHARS)
}

/// One position of a pattern: the TARGET slot and/or a conjunction of
/// predicates, plus the gap allowed before the next element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub target: bool,
    pub predicates: Vec<TokenPredicate>,
    /// Maximum number of skippable tokens between this element and the next.
    pub gap: usize,
}

impl Element {
    pub fn target() -> Self {
        Element {
            target: true,
            predicates: Vec::new(),
            gap: DEFAULT_GAP,
        }
    }

    pub fn pred(predicate: TokenPredicate) -> Self {
        Element {
            target: false,
            predicates: alloc::vec![predicate],
            gap: DEFAULT_GAP,
        }
    }

    pub fn and(mut self, predicate: TokenPredicate) -> Self {
        self.predicates.push(predicate);
        self
    }

    pub fn with_gap(mut self, gap: usize) -> Self {
        self.gap = gap;
        self
    }

    pub fn accepts(&self, token: &Token) -> bool {
        self.predicates.iter().all(|p| p.accepts(token))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn sign(self) -> char {
        match self {
            Polarity::Positive => '+',
            Polarity::Negative => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuePattern {
    pub id: String,
    pub group: String,
    pub polarity: Polarity,
    elements: Vec<Element>,
    target: usize,
}

impl CuePattern {
    pub fn new(
        id: impl Into<String>,
        group: impl Into<String>,
        polarity: Polarity,
        elements: Vec<Element>,
    ) -> Result<Self> {
        let id = id.into();
        if elements.is_empty() {
            return Err(Error::EmptyPattern(id));
        }
        let mut targets = elements.iter().enumerate().filter(|(_, e)| e.target);
        let target = match (targets.next(), targets.next()) {
            (Some((i, _)), None) => i,
            (None, _) => return Err(Error::MissingTarget(id)),
            (Some(_), Some(_)) => return Err(Error::MultipleTarget(id)),
        };
        if elements.iter().any(|e| !e.target && e.predicates.is_empty()) {
            return Err(Error::InvalidPredicate(alloc::format!(
                "pattern `{id}` has an element without predicates"
            )));
        }
        Ok(CuePattern {
            id,
            group: group.into(),
            polarity,
            elements,
            target,
        })
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn target_index(&self) -> usize {
        self.target
    }

    /// True iff the elements can be aligned around `target` within the
    /// sentence, TARGET on `target`, every element on a token it accepts and
    /// at most `gap` skippable tokens between consecutive elements.
    pub fn match_at(&self, sentence: &Sentence, target: usize) -> bool {
        self.match_tokens(sentence.tokens(), target)
    }

    pub fn match_tokens(&self, tokens: &[Token], target: usize) -> bool {
        match tokens.get(target) {
            Some(tok) if self.elements[self.target].accepts(tok) => {
                self.align_left(tokens, self.target, target)
                    && self.align_right(tokens, self.target, target)
            }
            _ => false,
        }
    }

    // `next` is aligned at `at`; place elements[next - 1] somewhere before it.
    fn align_left(&self, tokens: &[Token], next: usize, at: usize) -> bool {
        if next == 0 {
            return true;
        }
        let elem = &self.elements[next - 1];
        for skip in 0..=elem.gap {
            if at < skip + 1 {
                break;
            }
            let pos = at - skip - 1;
            if skip > 0 && !is_skippable(&tokens[pos + 1]) {
                break;
            }
            if elem.accepts(&tokens[pos]) && self.align_left(tokens, next - 1, pos) {
                return true;
            }
        }
        false
    }

    // `prev` is aligned at `at`; place elements[prev + 1] somewhere after it.
    fn align_right(&self, tokens: &[Token], prev: usize, at: usize) -> bool {
        if prev + 1 == self.elements.len() {
            return true;
        }
        let gap = self.elements[prev].gap;
        let elem = &self.elements[prev + 1];
        for skip in 0..=gap {
            let pos = at + skip + 1;
            if pos >= tokens.len() {
                break;
            }
            if skip > 0 && !is_skippable(&tokens[pos - 1]) {
                break;
            }
            if elem.accepts(&tokens[pos]) && self.align_right(tokens, prev + 1, pos) {
                return true;
            }
        }
        false
    }
}

/// The cues for one class in one language. `groups` is the feature order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CueSet {
    pub class_name: String,
    pub language: Language,
    patterns: Vec<CuePattern>,
    groups: Vec<String>,
    pattern_group: Vec<usize>,
}

impl CueSet {
    pub fn new(
        class_name: impl Into<String>,
        language: Language,
        patterns: Vec<CuePattern>,
    ) -> Result<Self> {
        let mut ids = BTreeSet::new();
        let mut groups: Vec<String> = Vec::new();
        let mut pattern_group = Vec::with_capacity(patterns.len());
        for p in &patterns {
            if !ids.insert(p.id.as_str()) {
                return Err(Error::DuplicatePatternId(p.id.clone()));
            }
            let g = match groups.iter().position(|g| *g == p.group) {
                Some(g) => g,
                None => {
                    groups.push(p.group.clone());
                    groups.len() - 1
                }
            };
            pattern_group.push(g);
        }
        Ok(CueSet {
            class_name: class_name.into(),
            language,
            patterns,
            groups,
            pattern_group,
        })
    }

    pub fn patterns(&self) -> &[CuePattern] {
        &self.patterns
    }

    pub fn groups(&self) -> &[String] {
        &self.groups
    }

    pub fn group_index(&self, name: &str) -> Option<usize> {
        self.groups.iter().position(|g| g == name)
    }

    /// Patterns belonging to the group at `group`, in declaration order.
    pub fn group_patterns(&self, group: usize) -> impl Iterator<Item = &CuePattern> + '_ {
        self.patterns
            .iter()
            .zip(&self.pattern_group)
            .filter(move |(_, &g)| g == group)
            .map(|(p, _)| p)
    }

    /// Polarity of a group; a group counts as negative if any of its patterns is.
    pub fn group_polarity(&self, group: usize) -> Polarity {
        if self
            .group_patterns(group)
            .any(|p| p.polarity == Polarity::Negative)
        {
            Polarity::Negative
        } else {
            Polarity::Positive
        }
    }

    /// Which groups fire at `target`: a group is true when any of its
    /// patterns matches.
    pub fn match_counts(&self, sentence: &Sentence, target: usize) -> Vec<bool> {
        let mut fired = alloc::vec![false; self.groups.len()];
        for (p, &g) in self.patterns.iter().zip(&self.pattern_group) {
            if !fired[g] && p.match_at(sentence, target) {
                fired[g] = true;
            }
        }
        fired
    }
}
