//! Part-of-speech tags for corpus tokens and dictionary parts.
//!
//! Two tag sets live here: [`Pos`] is the closed set used by tagged corpora,
//! the class lexicon and rules; [`DictPos`] is the coarse category of a
//! dictionary POS part, derived from the part's raw tag (`vtr`, `nf`, ...).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Corpus-side part-of-speech tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pos {
    Noun,
    Verb,
    Adjective,
    Adverb,
    Determiner,
    Preposition,
    Pronoun,
    Conjunction,
    Punctuation,
    Other,
}

impl Pos {
    pub fn as_str(&self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Verb => "VERB",
            Pos::Adjective => "ADJ",
            Pos::Adverb => "ADV",
            Pos::Determiner => "DET",
            Pos::Preposition => "PREP",
            Pos::Pronoun => "PRON",
            Pos::Conjunction => "CONJ",
            Pos::Punctuation => "PUNCT",
            Pos::Other => "OTHER",
        }
    }

    /// Content-word categories that receive sense assignments.
    pub fn is_disambiguation_target(&self) -> bool {
        matches!(self, Pos::Noun | Pos::Verb | Pos::Adjective)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown POS tag `{0}`")]
pub struct UnknownPos(pub String);

impl FromStr for Pos {
    type Err = UnknownPos;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "NOUN" => Ok(Pos::Noun),
            "VERB" => Ok(Pos::Verb),
            "ADJ" => Ok(Pos::Adjective),
            "ADV" => Ok(Pos::Adverb),
            "DET" => Ok(Pos::Determiner),
            "PREP" => Ok(Pos::Preposition),
            "PRON" => Ok(Pos::Pronoun),
            "CONJ" => Ok(Pos::Conjunction),
            "PUNCT" => Ok(Pos::Punctuation),
            "OTHER" => Ok(Pos::Other),
            other => Err(UnknownPos(other.to_string())),
        }
    }
}

/// Coarse category of a dictionary POS part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DictPos {
    Noun,
    Verb,
    PronominalVerb,
    Adjective,
    Adverb,
    /// Anything the matching table does not know; keeps the raw tag.
    Other(String),
}

impl DictPos {
    /// Category for a raw part tag. The table: `vtr`/`vi`/`v` are verbs,
    /// `vpr` is a pronominal verb, `nf`/`nm`/`n` are nouns, `adj` and `adv`
    /// as written.
    pub fn from_tag(tag: &str) -> DictPos {
        match tag {
            "vtr" | "vi" | "v" => DictPos::Verb,
            "vpr" => DictPos::PronominalVerb,
            "nf" | "nm" | "n" => DictPos::Noun,
            "adj" => DictPos::Adjective,
            "adv" => DictPos::Adverb,
            other => DictPos::Other(other.to_string()),
        }
    }

    /// Corpus POS under which rules from this part are indexed, if any.
    /// Pronominal-verb parts count as verbs: their senses sit in the same
    /// ambiguity class as plain verb parts of the entry.
    pub fn rule_pos(&self) -> Option<Pos> {
        match self {
            DictPos::Noun => Some(Pos::Noun),
            DictPos::Verb | DictPos::PronominalVerb => Some(Pos::Verb),
            DictPos::Adjective => Some(Pos::Adjective),
            DictPos::Adverb => Some(Pos::Adverb),
            DictPos::Other(_) => None,
        }
    }

    /// Whether a corpus token with `pos` (and reflexive marking) can take a
    /// default sense from this part. Pronominal-verb parts only match
    /// reflexive verb tokens.
    pub fn matches_token(&self, pos: Pos, reflexive: bool) -> bool {
        match self {
            DictPos::PronominalVerb => pos == Pos::Verb && reflexive,
            other => other.rule_pos() == Some(pos),
        }
    }
}
