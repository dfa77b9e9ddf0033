//! Dictionary-driven lexical sense disambiguation.
//!
//! The pipeline: parse a structured electronic dictionary, compile its
//! examples and collocations once into an indexed base of lexico-syntactic
//! rules, then assign dictionary sense numbers to words of POS-tagged text
//! using shallow-parsed functional relations, semantic-class distance and a
//! typed rule-priority strategy. When nothing fires, the first (most
//! frequent) sense of the matching POS part is the default.

pub mod assignments;
pub mod corpus;
pub mod dictionary;
pub mod disambiguator;
pub mod eval;
pub mod parser;
pub mod pos;
pub mod rulebase;
pub mod semlex;

pub use dictionary::{Dictionary, DictionaryEntry, ExampleKind, Sense, SenseId};
pub use disambiguator::{
    class_distance, disambiguate_sentence, disambiguate_word, equivalent_patterns, Method,
    Resources, SenseAssignment, TypeWeights, WordOutcome,
};
pub use parser::{Relation, RelationKind, Token};
pub use pos::Pos;
pub use rulebase::{build_rulebase, load_rulebase, save_rulebase, Rule, RuleBase};
pub use semlex::{ClassLabel, SemLexicon};
