//! PoS-tagged corpus model.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Coarse part-of-speech tags. Taggers with richer tag sets are mapped onto
/// these through a [`TagMap`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pos {
    N,
    Propn,
    V,
    Adj,
    Adv,
    Det,
    PossDet,
    Prep,
    Pron,
    RelPron,
    Conj,
    Clitic,
    Num,
    Punct,
    Other,
}

impl Pos {
    pub const ALL: [Pos; 15] = [
        Pos::N,
        Pos::Propn,
        Pos::V,
        Pos::Adj,
        Pos::Adv,
        Pos::Det,
        Pos::PossDet,
        Pos::Prep,
        Pos::Pron,
        Pos::RelPron,
        Pos::Conj,
        Pos::Clitic,
        Pos::Num,
        Pos::Punct,
        Pos::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::N => "N",
            Pos::Propn => "PROPN",
            Pos::V => "V",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
            Pos::Det => "DET",
            Pos::PossDet => "POSS_DET",
            Pos::Prep => "PREP",
            Pos::Pron => "PRON",
            Pos::RelPron => "REL_PRON",
            Pos::Conj => "CONJ",
            Pos::Clitic => "CLITIC",
            Pos::Num => "NUM",
            Pos::Punct => "PUNCT",
            Pos::Other => "OTHER",
        }
    }

    /// Common and proper nouns are the classification targets.
    pub fn is_noun(self) -> bool {
        matches!(self, Pos::N | Pos::Propn)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pos::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::UnknownPos(s.to_string()))
    }
}

/// Maps tags of an external tagger onto the coarse tag set.
///
/// Tags that already belong to the coarse set resolve to themselves unless the
/// map overrides them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TagMap {
    entries: BTreeMap<String, Pos>,
}

impl TagMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, source: impl Into<String>, pos: Pos) -> Option<Pos> {
        self.entries.insert(source.into(), pos)
    }

    pub fn resolve(&self, tag: &str) -> Result<Pos> {
        match self.entries.get(tag) {
            Some(&pos) => Ok(pos),
            None => tag.parse(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub pos: Pos,
}

impl Token {
    /// Builds a token, lowercasing the lemma. Surface forms are kept verbatim
    /// because affix cues look at them.
    pub fn new(surface: &str, lemma: &str, pos: Pos) -> Result<Self> {
        if surface.is_empty() {
            return Err(Error::EmptyField("surface"));
        }
        if lemma.is_empty() {
            return Err(Error::EmptyField("lemma"));
        }
        Ok(Token {
            surface: surface.to_string(),
            lemma: lemma.to_lowercase(),
            pos,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub index: usize,
    tokens: Vec<Token>,
}

impl Sentence {
    pub fn new(index: usize, tokens: Vec<Token>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::EmptySentence);
        }
        Ok(Sentence { index, tokens })
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Language {
    En,
    Es,
    Other(String),
}

impl Language {
    pub fn as_str(&self) -> &str {
        match self {
            Language::En => "en",
            Language::Es => "es",
            Language::Other(s) => s,
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<&str> for Language {
    fn from(s: &str) -> Self {
        match s {
            "en" => Language::En,
            "es" => Language::Es,
            other => Language::Other(other.to_string()),
        }
    }
}

impl FromStr for Language {
    type Err = core::convert::Infallible;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        Ok(Language::from(s))
    }
}

/// (sentence index, token index) of a token in a corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub sentence: usize,
    pub token: usize,
}

/// An immutable sequence of tagged sentences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub language: Language,
    sentences: Vec<Sentence>,
    token_count: usize,
}

impl Corpus {
    pub fn new(language: Language) -> Self {
        Corpus {
            language,
            sentences: Vec::new(),
            token_count: 0,
        }
    }

    /// Appends a sentence, renumbering it to its ordinal in the corpus.
    pub fn push(&mut self, mut sentence: Sentence) {
        sentence.index = self.sentences.len();
        self.token_count += sentence.len();
        self.sentences.push(sentence);
    }

    /// Appends a sentence built from `tokens`.
    pub fn push_tokens(&mut self, tokens: Vec<Token>) -> Result<()> {
        let sentence = Sentence::new(self.sentences.len(), tokens)?;
        self.push(sentence);
        Ok(())
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub fn token_count(&self) -> usize {
        self.token_count
    }

    pub fn token(&self, at: Position) -> Option<&Token> {
        self.sentences.get(at.sentence)?.tokens.get(at.token)
    }

    /// Every noun-tagged position whose lemma equals `lemma` (compared
    /// case-insensitively), in corpus order.
    pub fn noun_occurrences(&self, lemma: &str) -> Vec<Position> {
        let lemma = lemma.to_lowercase();
        self.noun_positions()
            .filter(|&(_, tok)| tok.lemma == lemma)
            .map(|(at, _)| at)
            .collect()
    }

    /// Groups all noun positions by lemma in a single pass.
    pub fn noun_index(&self) -> BTreeMap<&str, Vec<Position>> {
        let mut index: BTreeMap<&str, Vec<Position>> = BTreeMap::new();
        for (at, tok) in self.noun_positions() {
            index.entry(tok.lemma.as_str()).or_default().push(at);
        }
        index
    }

    fn noun_positions(&self) -> impl Iterator<Item = (Position, &Token)> + '_ {
        self.sentences.iter().enumerate().flat_map(|(s, sentence)| {
            sentence
                .tokens
                .iter()
                .enumerate()
                .filter(|(_, tok)| tok.pos.is_noun())
                .map(move |(t, tok)| (Position { sentence: s, token: t }, tok))
        })
    }
}
