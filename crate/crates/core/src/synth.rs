//! Synthetic corpora with planted cue contexts.
//!
//! Each cue group gets a *witness*: a minimal token sequence, derived from
//! the first pattern of the group, that makes the pattern fire on a noun.
//! Witnesses occupy slots around the noun (left context, right context,
//! prefix, suffix). For every lemma and group, each occurrence carries the
//! group's context with the class-specific rate; the occurrences that carry it
//! are drawn among those whose slots are still free, so planted contexts
//! never overlap and every one of them is detectable.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Corpus, Pos, Token};
use crate::cue::{CuePattern, CueSet, Element, TokenPredicate};
use crate::eval::GoldStandard;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthGroup {
    pub group: String,
    pub member_rate: f64,
    pub nonmember_rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    /// Per-group planting rates. Groups of the cue set not listed here are
    /// never planted.
    pub groups: Vec<SynthGroup>,
    pub members: usize,
    pub nonmembers: usize,
    pub occurrences: usize,
}

const LEFT: u8 = 1;
const RIGHT: u8 = 2;
const PREFIX: u8 = 4;
const SUFFIX: u8 = 8;

#[derive(Debug, Clone)]
struct Witness {
    left: Vec<Token>,
    right: Vec<Token>,
    prefix: Option<String>,
    suffix: Option<String>,
}

impl Witness {
    fn slots(&self) -> u8 {
        let mut s = 0;
        if !self.left.is_empty() {
            s |= LEFT;
        }
        if !self.right.is_empty() {
            s |= RIGHT;
        }
        if self.prefix.is_some() {
            s |= PREFIX;
        }
        if self.suffix.is_some() {
            s |= SUFFIX;
        }
        s
    }
}

fn unplantable(p: &CuePattern, reason: impl Into<String>) -> Error {
    Error::Unplantable {
        group: p.group.clone(),
        reason: reason.into(),
    }
}

/// A token satisfying every predicate of a context element.
fn context_token(p: &CuePattern, e: &Element) -> Result<Token> {
    let mut lemmas: Option<Vec<&String>> = None;
    let mut pos: Option<Pos> = None;
    let mut suffix = None;
    let mut prefix = None;
    let mut punct = None;
    for pred in &e.predicates {
        match pred {
            TokenPredicate::LemmaIn(set) | TokenPredicate::LemmaFile { lemmas: set, .. } => {
                let keep: Vec<&String> = match lemmas {
                    None => set.iter().collect(),
                    Some(prev) => prev.into_iter().filter(|l| set.contains(*l)).collect(),
                };
                lemmas = Some(keep);
            }
            TokenPredicate::PosIn(set) => {
                pos = match pos {
                    None => set.iter().next().copied(),
                    Some(prev) if set.contains(&prev) => Some(prev),
                    Some(_) => return Err(unplantable(p, "conflicting pos constraints")),
                };
            }
            TokenPredicate::Suffix(list) => suffix = list.first(),
            TokenPredicate::Prefix(list) => prefix = list.first(),
            TokenPredicate::Punct(lit) => punct = Some(lit),
            TokenPredicate::Any => {}
        }
    }
    let token = if let Some(lit) = punct {
        Token::new(lit, lit, Pos::Punct)?
    } else {
        let pos = pos.unwrap_or(Pos::Other);
        let word = match lemmas {
            Some(options) => options
                .into_iter()
                .find(|l| {
                    suffix.is_none_or(|s| l.ends_with(s.as_str()))
                        && prefix.is_none_or(|s| l.starts_with(s.as_str()))
                })
                .cloned()
                .ok_or_else(|| unplantable(p, "no lemma satisfies the element"))?,
            None => {
                let mut w = alloc::format!("w{}", pos.as_str().to_lowercase());
                if let Some(s) = suffix {
                    w.push_str(s);
                }
                if let Some(s) = prefix {
                    w.insert_str(0, s);
                }
                w
            }
        };
        Token::new(&word, &word, pos)?
    };
    if !e.accepts(&token) {
        return Err(unplantable(p, "cannot build a token for an element"));
    }
    Ok(token)
}

fn witness(p: &CuePattern) -> Result<Witness> {
    let t = p.target_index();
    let target = &p.elements()[t];
    let mut prefix = None;
    let mut suffix = None;
    for pred in &target.predicates {
        match pred {
            TokenPredicate::Suffix(list) => suffix = list.first().cloned(),
            TokenPredicate::Prefix(list) => prefix = list.first().cloned(),
            TokenPredicate::PosIn(set) if set.contains(&Pos::N) => {}
            TokenPredicate::Any => {}
            _ => return Err(unplantable(p, "TARGET constraint is not an affix")),
        }
    }
    let w = Witness {
        left: p.elements()[..t].iter().map(|e| context_token(p, e)).collect::<Result<_>>()?,
        right: p.elements()[t + 1..].iter().map(|e| context_token(p, e)).collect::<Result<_>>()?,
        prefix,
        suffix,
    };
    if w.slots() == 0 {
        return Err(unplantable(p, "pattern fires on every occurrence"));
    }
    Ok(w)
}

fn validate(spec: &SynthSpec, cues: &CueSet) -> Result<()> {
    if spec.members == 0 || spec.nonmembers == 0 || spec.occurrences == 0 {
        return Err(Error::InvalidSynthSpec("counts must be at least 1".to_string()));
    }
    for g in &spec.groups {
        if cues.group_index(&g.group).is_none() {
            return Err(Error::InvalidSynthSpec(alloc::format!("unknown group `{}`", g.group)));
        }
        for r in [g.member_rate, g.nonmember_rate] {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::InvalidSynthSpec(alloc::format!(
                    "rate {r} for `{}` is outside [0, 1]",
                    g.group
                )));
            }
        }
    }
    Ok(())
}

pub fn member_lemma(i: usize) -> String {
    alloc::format!("mem{i:04}")
}

pub fn nonmember_lemma(i: usize) -> String {
    alloc::format!("non{i:04}")
}

/// Generates a corpus of one-sentence carriers per noun occurrence and the
/// matching gold standard. Identical inputs and seed give an identical corpus.
pub fn synth_corpus(cues: &CueSet, spec: &SynthSpec, seed: u64) -> Result<(Corpus, GoldStandard)> {
    validate(spec, cues)?;
    let mut plan: Vec<(usize, Witness, f64, f64)> = Vec::new();
    for g in &spec.groups {
        let idx = cues.group_index(&g.group).expect("validated");
        let pattern = cues.group_patterns(idx).next().expect("groups have patterns");
        plan.push((idx, witness(pattern)?, g.member_rate, g.nonmember_rate));
    }
    plan.sort_by_key(|p| p.0);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = Corpus::new(cues.language.clone());
    let members: Vec<String> = (1..=spec.members).map(member_lemma).collect();
    let nonmembers: Vec<String> = (1..=spec.nonmembers).map(nonmember_lemma).collect();
    let lemmas = members.iter().map(|l| (l, true)).chain(nonmembers.iter().map(|l| (l, false)));

    for (lemma, is_member) in lemmas {
        let n = spec.occurrences;
        let mut used = alloc::vec![0u8; n];
        let mut carried: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        for (slot, (_, w, mrate, nrate)) in plan.iter().enumerate() {
            let rate = if is_member { *mrate } else { *nrate };
            let hits = (0..n).filter(|_| rng.gen_bool(rate)).count();
            if hits == 0 {
                continue;
            }
            let need = w.slots();
            let mut free: Vec<usize> = (0..n).filter(|&o| used[o] & need == 0).collect();
            if free.len() < hits {
                return Err(Error::InvalidSynthSpec(alloc::format!(
                    "rates too dense to plant group `{}` without overlap",
                    cues.groups()[plan[slot].0]
                )));
            }
            let (chosen, _) = free.partial_shuffle(&mut rng, hits);
            for &o in chosen.iter() {
                used[o] |= need;
                carried[o].push(slot);
            }
        }
        for groups in carried {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut surface = lemma.clone();
            for slot in groups {
                let w = &plan[slot].1;
                left.extend(w.left.iter().cloned());
                right.extend(w.right.iter().cloned());
                if let Some(p) = &w.prefix {
                    surface.insert_str(0, p);
                }
                if let Some(s) = &w.suffix {
                    surface.push_str(s);
                }
            }
            let mut tokens = left;
            tokens.push(Token::new(&surface, lemma, Pos::N)?);
            tokens.extend(right);
            tokens.push(Token::new(".", ".", Pos::Punct)?);
            corpus.push_tokens(tokens)?;
        }
    }
    let gold = GoldStandard::new(cues.class_name.clone(), &members, &nonmembers)?;
    Ok((corpus, gold))
}
