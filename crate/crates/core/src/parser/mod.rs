//! Deterministic shallow parser over pre-tagged, lemmatized sentences.
//!
//! Two passes: a longest-match chunker marking NP/AP/PP/VC/SC spans, then a
//! functional-relation extractor working clause by clause. Both are pure
//! functions of the token sequence.

mod chunk;
mod relations;

pub use chunk::chunk;
pub use relations::{analyze, extract_relations, SentenceAnalysis};

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::pos::Pos;

/// Token-level flags carried by the tagged input.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Feats {
    pub reflexive: bool,
    pub past_participle: bool,
    pub finite: bool,
    pub auxiliary: bool,
    /// Determiner contraction carrying a preposition (au, du, des...).
    /// The token's lemma holds the preposition (`à`, `de`).
    pub prep_det: bool,
}

impl Feats {
    pub fn parse(s: &str) -> Result<Feats, String> {
        let mut feats = Feats::default();
        if s == "-" || s.is_empty() {
            return Ok(feats);
        }
        for flag in s.split(',') {
            match flag {
                "refl" => feats.reflexive = true,
                "pastpart" => feats.past_participle = true,
                "finite" => feats.finite = true,
                "aux" => feats.auxiliary = true,
                "prepdet" => feats.prep_det = true,
                other => return Err(format!("unknown feature flag `{other}`")),
            }
        }
        Ok(feats)
    }
}

impl fmt::Display for Feats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut flags = Vec::new();
        if self.reflexive {
            flags.push("refl");
        }
        if self.past_participle {
            flags.push("pastpart");
        }
        if self.finite {
            flags.push("finite");
        }
        if self.auxiliary {
            flags.push("aux");
        }
        if self.prep_det {
            flags.push("prepdet");
        }
        if flags.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&flags.join(","))
        }
    }
}

/// One tagged, lemmatized token. Multiword units are joined with
/// underscores in both surface and lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub pos: Pos,
    pub feats: Feats,
}

impl Token {
    pub fn new(surface: &str, lemma: &str, pos: Pos) -> Token {
        Token {
            surface: surface.to_string(),
            lemma: lemma.to_string(),
            pos,
            feats: Feats::default(),
        }
    }

    pub fn with_feats(mut self, feats: Feats) -> Token {
        self.feats = feats;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChunkKind {
    /// Noun phrase: `det? adj* noun+`, or a lone pronoun.
    Np,
    /// Adjective phrase: `adv? adj`.
    Ap,
    /// Prepositional phrase: preposition (or contracted det) + NP core.
    Pp,
    /// Verb cluster: negation/object clitics/auxiliaries around a verb.
    Vc,
    /// Clause opener (a conjunction token).
    Sc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chunk {
    pub kind: ChunkKind,
    pub span: Range<usize>,
}

/// Functional relation inventory. `Vmodobj` and `Nnprep` carry a
/// preposition slot; the others do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    Subj,
    Relsubj,
    Subjpass,
    Dobj,
    Pagent,
    Vmodobj,
    Adj,
    Padj,
    Attr,
    Nn,
    Nnprep,
}

impl RelationKind {
    pub const ALL: [RelationKind; 11] = [
        RelationKind::Subj,
        RelationKind::Relsubj,
        RelationKind::Subjpass,
        RelationKind::Dobj,
        RelationKind::Pagent,
        RelationKind::Vmodobj,
        RelationKind::Adj,
        RelationKind::Padj,
        RelationKind::Attr,
        RelationKind::Nn,
        RelationKind::Nnprep,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RelationKind::Subj => "SUBJ",
            RelationKind::Relsubj => "RELSUBJ",
            RelationKind::Subjpass => "SUBJPASS",
            RelationKind::Dobj => "DOBJ",
            RelationKind::Pagent => "PAGENT",
            RelationKind::Vmodobj => "VMODOBJ",
            RelationKind::Adj => "ADJ",
            RelationKind::Padj => "PADJ",
            RelationKind::Attr => "ATTR",
            RelationKind::Nn => "NN",
            RelationKind::Nnprep => "NNPREP",
        }
    }

    pub fn takes_prep(&self) -> bool {
        matches!(self, RelationKind::Vmodobj | RelationKind::Nnprep)
    }

    /// POS of the lemma occupying a slot of this relation: `(head, dep)`.
    pub fn slot_pos(&self) -> (Pos, Pos) {
        match self {
            RelationKind::Subj | RelationKind::Relsubj | RelationKind::Subjpass => {
                (Pos::Noun, Pos::Verb)
            }
            RelationKind::Dobj | RelationKind::Pagent | RelationKind::Vmodobj => {
                (Pos::Verb, Pos::Noun)
            }
            RelationKind::Adj => (Pos::Adjective, Pos::Noun),
            RelationKind::Padj | RelationKind::Attr => (Pos::Noun, Pos::Adjective),
            RelationKind::Nn | RelationKind::Nnprep => (Pos::Noun, Pos::Noun),
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown relation kind `{0}`")]
pub struct UnknownRelationKind(pub String);

impl FromStr for RelationKind {
    type Err = UnknownRelationKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| UnknownRelationKind(s.to_string()))
    }
}

/// One functional relation between two lemmas. `head` and `dep` follow the
/// written argument order `KIND(head,dep)` / `KIND(head,prep,dep)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub kind: RelationKind,
    pub head: String,
    pub dep: String,
    pub prep: Option<String>,
    pub head_index: usize,
    pub dep_index: usize,
}

impl Relation {
    pub fn new(
        kind: RelationKind,
        head: (&str, usize),
        dep: (&str, usize),
        prep: Option<&str>,
    ) -> Relation {
        debug_assert_eq!(kind.takes_prep(), prep.is_some());
        debug_assert_ne!(head.1, dep.1, "head and dependent token must differ");
        Relation {
            kind,
            head: head.0.to_string(),
            dep: dep.0.to_string(),
            prep: prep.map(str::to_string),
            head_index: head.1,
            dep_index: dep.1,
        }
    }

    /// Whether `lemma` occupies the head or the dep slot (or both).
    pub fn involves(&self, lemma: &str) -> bool {
        self.head == lemma || self.dep == lemma
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.prep {
            Some(prep) => write!(f, "{}({},{},{})", self.kind, self.head, prep, self.dep),
            None => write!(f, "{}({},{})", self.kind, self.head, self.dep),
        }
    }
}
