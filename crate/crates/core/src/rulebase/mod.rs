//! Disambiguation rule base: compilation from the dictionary, indexing by
//! target lemma, persistence.
//!
//! A rule says: if the target lemma, ambiguous between the senses of its
//! ambiguity set, occurs in a relation of the given shape, it can take the
//! result sense. Lexical rules name the other argument as a lemma; semantic
//! rules replace it by the argument's class set.

mod extract;
mod io;

pub use extract::{rules_from_collocation, rules_from_example, ExampleTagger, ExtractOptions};
pub use io::{load_rulebase, save_rulebase, RuleBaseIoError};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::dictionary::{Dictionary, ExampleKind, SenseId};
use crate::parser::{Relation, RelationKind};
use crate::pos::Pos;
use crate::semlex::{ClassLabel, SemLexicon};

/// Which written argument slot of the relation the target lemma occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Head,
    Dep,
}

impl Slot {
    pub fn as_str(&self) -> &'static str {
        match self {
            Slot::Head => "head",
            Slot::Dep => "dep",
        }
    }

    pub fn other(&self) -> Slot {
        match self {
            Slot::Head => Slot::Dep,
            Slot::Dep => Slot::Head,
        }
    }
}

/// The non-target side of a rule pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleArgument {
    Lexical(String),
    /// Non-empty set of semantic classes.
    Semantic(BTreeSet<ClassLabel>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RulePattern {
    pub kind: RelationKind,
    pub prep: Option<String>,
    pub target_slot: Slot,
    pub argument: RuleArgument,
}

impl RulePattern {
    /// Whether a relation instantiates this pattern for `target`:
    /// kind and preposition agree, the target lemma sits in the target
    /// slot, and the other slot satisfies the argument. Semantic arguments
    /// never match here; they are compared by class distance instead.
    pub fn matches_lexical(&self, target: &str, rel: &Relation) -> bool {
        let RuleArgument::Lexical(arg) = &self.argument else {
            return false;
        };
        self.kind == rel.kind
            && self.prep == rel.prep
            && *self.slot_lemma(rel, self.target_slot) == *target
            && slot_value(rel, self.target_slot.other()) == arg
    }

    /// Kind/prep/slot agreement for semantic matching; returns the context
    /// argument (lemma of the other slot) when the shape fits.
    pub fn context_argument<'r>(&self, target: &str, rel: &'r Relation) -> Option<&'r str> {
        if self.kind == rel.kind
            && self.prep == rel.prep
            && slot_value(rel, self.target_slot) == target
        {
            Some(slot_value(rel, self.target_slot.other()))
        } else {
            None
        }
    }

    fn slot_lemma<'r>(&self, rel: &'r Relation, slot: Slot) -> &'r String {
        match slot {
            Slot::Head => &rel.head,
            Slot::Dep => &rel.dep,
        }
    }
}

fn slot_value(rel: &Relation, slot: Slot) -> &str {
    match slot {
        Slot::Head => &rel.head,
        Slot::Dep => &rel.dep,
    }
}

/// One disambiguation rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub target: String,
    pub pos: Pos,
    /// All senses of the entry's parts indexed under `pos`.
    pub ambiguity: BTreeSet<SenseId>,
    pub pattern: RulePattern,
    pub source_kind: ExampleKind,
    pub s3: u32,
    pub result: SenseId,
    pub translation_hint: Option<String>,
}

impl Rule {
    pub fn is_semantic(&self) -> bool {
        matches!(self.pattern.argument, RuleArgument::Semantic(_))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = match &self.pattern.argument {
            RuleArgument::Lexical(l) => l.clone(),
            RuleArgument::Semantic(classes) => classes
                .iter()
                .map(|c| c.as_str())
                .collect::<Vec<_>>()
                .join("/"),
        };
        let prep = self
            .pattern
            .prep
            .as_deref()
            .map(|p| format!("{p},"))
            .unwrap_or_default();
        let (a, b) = match self.pattern.target_slot {
            Slot::Head => (self.target.clone(), arg),
            Slot::Dep => (arg, self.target.clone()),
        };
        write!(f, "{}({a},{prep}{b}) => {}", self.pattern.kind, self.result)
    }
}

/// Rules indexed by target lemma, in document order.
#[derive(Debug, Clone, Default)]
pub struct RuleBase {
    rules: Vec<Rule>,
    index: HashMap<String, Vec<usize>>,
}

impl RuleBase {
    pub fn push(&mut self, rule: Rule) {
        debug_assert!(
            rule.ambiguity.contains(&rule.result),
            "rule result must be in its ambiguity set"
        );
        self.index
            .entry(rule.target.clone())
            .or_default()
            .push(self.rules.len());
        self.rules.push(rule);
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: usize) -> Option<&Rule> {
        self.rules.get(id)
    }

    /// Ids of the rules targeting `lemma`, in document order.
    pub fn rules_for(&self, lemma: &str) -> &[usize] {
        self.index.get(lemma).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn total_rules(&self) -> usize {
        self.rules.len()
    }

    pub fn lexical_rules(&self) -> usize {
        self.rules.iter().filter(|r| !r.is_semantic()).count()
    }

    pub fn semantic_rules(&self) -> usize {
        self.rules.iter().filter(|r| r.is_semantic()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

/// Rule base plus the per-item warnings gathered during extraction.
#[derive(Debug, Clone, Default)]
pub struct BuildOutcome {
    pub rulebase: RuleBase,
    pub warnings: Vec<String>,
}

/// Compile the whole dictionary into a rule base. Iterates entries, parts,
/// senses and items in document order; collocation items are compiled
/// directly, example items are shallow-parsed first.
pub fn build_rulebase(dict: &Dictionary, semlex: &SemLexicon) -> BuildOutcome {
    build_rulebase_with(dict, semlex, &ExtractOptions::default())
}

pub fn build_rulebase_with(
    dict: &Dictionary,
    semlex: &SemLexicon,
    options: &ExtractOptions,
) -> BuildOutcome {
    let tagger = ExampleTagger::from_dictionary(dict);
    let mut out = BuildOutcome::default();
    for entry in dict.entries() {
        for part in &entry.parts {
            for sense in &part.senses {
                for item in &sense.items {
                    let rules = if item.kind == ExampleKind::Collocation {
                        match rules_from_collocation(entry, part, sense, item, semlex) {
                            Ok(rules) => rules,
                            Err(e) => {
                                out.warnings.push(e.to_string());
                                continue;
                            }
                        }
                    } else {
                        rules_from_example(
                            entry,
                            part,
                            sense,
                            item,
                            &tagger,
                            semlex,
                            options,
                            &mut out.warnings,
                        )
                    };
                    for rule in rules {
                        out.rulebase.push(rule);
                    }
                }
            }
        }
    }
    out
}
