//! Rule application: lexical matching with relation equivalences and typed
//! weight summation, then semantic matching by class distance with distance
//! multiplication, then the first-sense default.

use std::collections::{BTreeMap, BTreeSet};

use crate::dictionary::{Dictionary, ExampleKind, SenseId};
use crate::parser::{analyze, Relation, RelationKind, Token};
use crate::pos::Pos;
use crate::rulebase::{RuleArgument, RuleBase, Slot};
use crate::semlex::{ClassLabel, SemLexicon};

/// Priority weights per example kind, ordered co > lc > li > lv > lu > le:
/// the more typical the source, the heavier the rule. Structure examples
/// (`ls`) sit with usage examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeWeights {
    pub co: u32,
    pub lc: u32,
    pub li: u32,
    pub lv: u32,
    pub ls: u32,
    pub lu: u32,
    pub le: u32,
}

impl Default for TypeWeights {
    fn default() -> Self {
        TypeWeights {
            co: 6,
            lc: 5,
            li: 4,
            lv: 3,
            ls: 2,
            lu: 2,
            le: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("bad weight override `{0}` (expected kind=value, e.g. co=6)")]
    BadOverride(String),
    #[error("weights must satisfy co > lc > li > lv > lu > le and be positive")]
    OrderViolation,
}

impl TypeWeights {
    pub fn weight(&self, kind: ExampleKind) -> u32 {
        match kind {
            ExampleKind::Collocation => self.co,
            ExampleKind::Compound => self.lc,
            ExampleKind::Idiom => self.li,
            ExampleKind::PhrasalVerb => self.lv,
            ExampleKind::Structure => self.ls,
            ExampleKind::Usage => self.lu,
            ExampleKind::General => self.le,
        }
    }

    /// The co > lc > li > lv > lu > le chain must stay strictly decreasing
    /// and every weight positive.
    pub fn validate(&self) -> Result<(), WeightError> {
        let chain = [self.co, self.lc, self.li, self.lv, self.lu, self.le];
        if chain.windows(2).all(|w| w[0] > w[1]) && chain[5] >= 1 && self.ls >= 1 {
            Ok(())
        } else {
            Err(WeightError::OrderViolation)
        }
    }

    /// Apply `kind=value` overrides, e.g. `co=6,lc=5`.
    pub fn with_overrides(mut self, spec: &str) -> Result<TypeWeights, WeightError> {
        for part in spec.split(',').filter(|s| !s.is_empty()) {
            let (kind, value) = part
                .split_once('=')
                .ok_or_else(|| WeightError::BadOverride(part.to_string()))?;
            let value: u32 = value
                .parse()
                .map_err(|_| WeightError::BadOverride(part.to_string()))?;
            match kind {
                "co" => self.co = value,
                "lc" => self.lc = value,
                "li" => self.li = value,
                "lv" => self.lv = value,
                "ls" => self.ls = value,
                "lu" => self.lu = value,
                "le" => self.le = value,
                _ => return Err(WeightError::BadOverride(part.to_string())),
            }
        }
        self.validate()?;
        Ok(self)
    }
}

/// Relation equivalences applied before matching: a passive subject is an
/// object of the active verb, relative subjects and passive agents are
/// subjects, attributes are adjectives. The closure is symmetric and
/// involutive and always contains the relation itself.
pub fn equivalent_patterns(rel: &Relation) -> BTreeSet<Relation> {
    let mut set = BTreeSet::new();
    let swap = |kind: RelationKind| Relation {
        kind,
        head: rel.dep.clone(),
        dep: rel.head.clone(),
        prep: rel.prep.clone(),
        head_index: rel.dep_index,
        dep_index: rel.head_index,
    };
    let same = |kind: RelationKind| Relation {
        kind,
        ..rel.clone()
    };
    set.insert(rel.clone());
    match rel.kind {
        RelationKind::Subjpass => {
            set.insert(swap(RelationKind::Dobj));
        }
        RelationKind::Dobj => {
            set.insert(swap(RelationKind::Subjpass));
        }
        RelationKind::Subj => {
            set.insert(same(RelationKind::Relsubj));
            set.insert(swap(RelationKind::Pagent));
        }
        RelationKind::Relsubj => {
            set.insert(same(RelationKind::Subj));
            set.insert(swap(RelationKind::Pagent));
        }
        RelationKind::Pagent => {
            set.insert(swap(RelationKind::Subj));
            set.insert(swap(RelationKind::Relsubj));
        }
        RelationKind::Adj => {
            set.insert(swap(RelationKind::Attr));
        }
        RelationKind::Attr => {
            set.insert(swap(RelationKind::Adj));
        }
        _ => {}
    }
    set
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("class distance is undefined for two empty sets")]
pub struct DegenerateDistance;

/// Distance between two class sets: (|union| − |intersection|) / |union|.
/// 0 iff the sets are equal, 1 iff they are disjoint.
pub fn class_distance(
    l1: &BTreeSet<ClassLabel>,
    l2: &BTreeSet<ClassLabel>,
) -> Result<f64, DegenerateDistance> {
    let union = l1.union(l2).count();
    if union == 0 {
        return Err(DegenerateDistance);
    }
    let inter = l1.intersection(l2).count();
    Ok((union - inter) as f64 / union as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Lexical,
    Semantic,
    Default,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Lexical => "lexical",
            Method::Semantic => "semantic",
            Method::Default => "default",
        }
    }
}

/// Sense chosen for one token.
#[derive(Debug, Clone, PartialEq)]
pub struct SenseAssignment {
    pub token_index: usize,
    pub lemma: String,
    pub pos: Pos,
    pub chosen: SenseId,
    pub method: Method,
    /// Summed weight for lexical matches, distance product for semantic
    /// ones, absent for the default.
    pub score: Option<f64>,
    /// Ids of the rules supporting the chosen sense, ascending.
    pub fired: Vec<usize>,
    pub translation_hint: Option<String>,
}

/// Per-word outcome; a word can also fall outside the dictionary or miss a
/// POS-compatible part.
#[derive(Debug, Clone, PartialEq)]
pub enum WordOutcome {
    Assigned(SenseAssignment),
    NotInDictionary {
        token_index: usize,
        lemma: String,
        pos: Pos,
    },
    NoMatchingPos {
        token_index: usize,
        lemma: String,
        pos: Pos,
    },
}

impl WordOutcome {
    pub fn assignment(&self) -> Option<&SenseAssignment> {
        match self {
            WordOutcome::Assigned(a) => Some(a),
            _ => None,
        }
    }
}

/// Everything a disambiguation run needs to look at.
pub struct Resources<'a> {
    pub rulebase: &'a RuleBase,
    pub semlex: &'a SemLexicon,
    pub dictionary: &'a Dictionary,
    pub weights: TypeWeights,
}

/// POS of the slot a context argument occupies, used to fetch its classes.
fn argument_pos(kind: RelationKind, arg_slot: Slot) -> Pos {
    let (head, dep) = kind.slot_pos();
    match arg_slot {
        Slot::Head => head,
        Slot::Dep => dep,
    }
}

/// Decision procedure for one word occurrence.
///
/// 1. Collect the sentence relations involving the lemma and expand each by
///    its equivalences.
/// 2. Lexical phase: exact pattern matches; several competing senses are
///    ranked by summed type weight over distinct (rule, relation) pairs,
///    ties by lower sense id.
/// 3. Semantic phase (only when no lexical rule fired): class distance per
///    matching rule, distances of one discarded, the per-sense product is
///    minimized; ties by summed type weight, then lower sense id.
/// 4. Default: first sense of the POS-matching part.
pub fn disambiguate_word(
    lemma: &str,
    pos: Pos,
    reflexive: bool,
    token_index: usize,
    relations: &BTreeSet<Relation>,
    res: &Resources,
) -> WordOutcome {
    // one expansion set per original relation involving the lemma
    let expanded: Vec<BTreeSet<Relation>> = relations
        .iter()
        .filter(|rel| rel.involves(lemma))
        .map(equivalent_patterns)
        .collect();

    let entry = res.dictionary.get(lemma);
    let rule_ids = res.rulebase.rules_for(lemma);

    // lexical phase: distinct (rule, original relation) matching pairs
    let mut by_sense: BTreeMap<SenseId, (u64, Vec<usize>)> = BTreeMap::new();
    for &rid in rule_ids {
        let rule = res.rulebase.rule(rid).expect("indexed rule");
        if rule.pos != pos || rule.is_semantic() {
            continue;
        }
        for variants in &expanded {
            if variants
                .iter()
                .any(|rel| rule.pattern.matches_lexical(lemma, rel))
            {
                let slot = by_sense.entry(rule.result).or_default();
                slot.0 += res.weights.weight(rule.source_kind) as u64;
                slot.1.push(rid);
            }
        }
    }
    if !by_sense.is_empty() {
        // max summed weight, tie broken by lower sense id (BTreeMap order)
        let (&chosen, (weight, fired)) = by_sense
            .iter()
            .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.0.cmp(a.0)))
            .expect("non-empty");
        let mut fired = fired.clone();
        fired.sort_unstable();
        fired.dedup();
        let translation = lexical_translation(res, &fired, chosen, entry);
        return WordOutcome::Assigned(SenseAssignment {
            token_index,
            lemma: lemma.to_string(),
            pos,
            chosen,
            method: Method::Lexical,
            score: Some(*weight as f64),
            fired,
            translation_hint: translation,
        });
    }

    // semantic phase: per-sense product of distances, lower wins
    let mut sem_by_sense: BTreeMap<SenseId, (f64, u64, Vec<usize>)> = BTreeMap::new();
    for &rid in rule_ids {
        let rule = res.rulebase.rule(rid).expect("indexed rule");
        let RuleArgument::Semantic(rule_classes) = &rule.pattern.argument else {
            continue;
        };
        if rule.pos != pos {
            continue;
        }
        for variants in &expanded {
            let matched = variants.iter().find_map(|rel| {
                let arg = rule.pattern.context_argument(lemma, rel)?;
                let arg_pos = argument_pos(rel.kind, rule.pattern.target_slot.other());
                let ctx = res.semlex.classes_of(arg, arg_pos);
                match class_distance(rule_classes, ctx) {
                    Ok(d) if d < 1.0 => Some(d),
                    // disjoint or degenerate: the rule carries no evidence
                    _ => None,
                }
            });
            if let Some(d) = matched {
                let slot = sem_by_sense
                    .entry(rule.result)
                    .or_insert((1.0, 0, Vec::new()));
                slot.0 *= d;
                slot.1 += res.weights.weight(rule.source_kind) as u64;
                slot.2.push(rid);
            }
        }
    }
    if !sem_by_sense.is_empty() {
        let (&chosen, (score, _, fired)) = sem_by_sense
            .iter()
            .max_by(|a, b| {
                // minimal product first, then higher weight, then lower id
                b.1 .0
                    .partial_cmp(&a.1 .0)
                    .expect("distances are finite")
                    .then(a.1 .1.cmp(&b.1 .1))
                    .then(b.0.cmp(a.0))
            })
            .expect("non-empty");
        let mut fired = fired.clone();
        fired.sort_unstable();
        fired.dedup();
        // general sense translation for semantic matches
        let translation = entry
            .and_then(|e| e.sense(chosen))
            .and_then(|s| s.translation.clone());
        return WordOutcome::Assigned(SenseAssignment {
            token_index,
            lemma: lemma.to_string(),
            pos,
            chosen,
            method: Method::Semantic,
            score: Some(*score),
            fired,
            translation_hint: translation,
        });
    }

    // default: first sense of the POS-matching part
    let Some(entry) = entry else {
        return WordOutcome::NotInDictionary {
            token_index,
            lemma: lemma.to_string(),
            pos,
        };
    };
    match entry.first_sense(pos, reflexive) {
        Ok(chosen) => {
            let translation = entry.sense(chosen).and_then(|s| s.translation.clone());
            WordOutcome::Assigned(SenseAssignment {
                token_index,
                lemma: lemma.to_string(),
                pos,
                chosen,
                method: Method::Default,
                score: None,
                fired: Vec::new(),
                translation_hint: translation,
            })
        }
        Err(_) => WordOutcome::NoMatchingPos {
            token_index,
            lemma: lemma.to_string(),
            pos,
        },
    }
}

/// Translation for a lexical assignment: the S3-linked hint of the best
/// supporting rule, falling back to the sense-level translation.
fn lexical_translation(
    res: &Resources,
    fired: &[usize],
    chosen: SenseId,
    entry: Option<&crate::dictionary::DictionaryEntry>,
) -> Option<String> {
    let mut best: Option<(u32, usize, &str)> = None;
    for &rid in fired {
        let rule = res.rulebase.rule(rid).expect("indexed rule");
        if let Some(tr) = rule.translation_hint.as_deref() {
            let w = res.weights.weight(rule.source_kind);
            let better = match best {
                None => true,
                Some((bw, bid, _)) => w > bw || (w == bw && rid < bid),
            };
            if better {
                best = Some((w, rid, tr));
            }
        }
    }
    best.map(|(_, _, tr)| tr.to_string()).or_else(|| {
        entry
            .and_then(|e| e.sense(chosen))
            .and_then(|s| s.translation.clone())
    })
}

/// Disambiguate every noun, verb and adjective token of a tagged sentence.
pub fn disambiguate_sentence(tokens: &[Token], res: &Resources) -> Vec<WordOutcome> {
    let analysis = analyze(tokens);
    tokens
        .iter()
        .enumerate()
        .filter(|(_, tok)| tok.pos.is_disambiguation_target())
        .map(|(i, tok)| {
            let reflexive = tok.feats.reflexive || analysis.reflexive_verbs.contains(&i);
            disambiguate_word(&tok.lemma, tok.pos, reflexive, i, &analysis.relations, res)
        })
        .collect()
}

/// Disambiguate from a pre-extracted relation set (the alternate input
/// path). Words are the relation arguments with a content POS; token
/// indices are their first-appearance positions from the relation file.
pub fn disambiguate_relation_set(
    relations: &BTreeSet<Relation>,
    res: &Resources,
) -> Vec<WordOutcome> {
    let mut words: BTreeMap<usize, (String, Pos)> = BTreeMap::new();
    for rel in relations {
        let (head_pos, dep_pos) = rel.kind.slot_pos();
        for (lemma, idx, pos) in [
            (&rel.head, rel.head_index, head_pos),
            (&rel.dep, rel.dep_index, dep_pos),
        ] {
            if pos.is_disambiguation_target() {
                words.entry(idx).or_insert((lemma.clone(), pos));
            }
        }
    }
    words
        .into_iter()
        .map(|(idx, (lemma, pos))| disambiguate_word(&lemma, pos, false, idx, relations, res))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> ClassLabel {
        ClassLabel::new(s).unwrap()
    }

    fn set(labels: &[&str]) -> BTreeSet<ClassLabel> {
        labels.iter().map(|s| label(s)).collect()
    }

    #[test]
    fn paper_distance_is_exactly_point_eight() {
        let pays = set(&["ESPACE_LOCATIF", "GEO", "HUMAIN_COLLECTIF"]);
        let lieu = set(&["ENTITE", "ESPACE_LOCATIF", "ANIMAL"]);
        let d = class_distance(&pays, &lieu).unwrap();
        assert_eq!(d, 0.8);
    }

    #[test]
    fn distance_edges() {
        let s = set(&["A", "B"]);
        assert_eq!(class_distance(&s, &s).unwrap(), 0.0);
        let t = set(&["C"]);
        assert_eq!(class_distance(&s, &t).unwrap(), 1.0);
        let empty = BTreeSet::new();
        assert_eq!(class_distance(&s, &empty).unwrap(), 1.0);
        assert_eq!(class_distance(&empty, &empty), Err(DegenerateDistance));
    }

    #[test]
    fn distance_matches_brute_force_oracle() {
        use rand::{Rng, SeedableRng};
        let alphabet: Vec<ClassLabel> = (b'A'..=b'J')
            .map(|c| label(&(c as char).to_string()))
            .collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..2000 {
            let mask1: u16 = rng.gen_range(0..1024);
            let mask2: u16 = rng.gen_range(0..1024);
            let l1: BTreeSet<ClassLabel> = alphabet
                .iter()
                .enumerate()
                .filter(|(i, _)| mask1 & (1 << i) != 0)
                .map(|(_, l)| l.clone())
                .collect();
            let l2: BTreeSet<ClassLabel> = alphabet
                .iter()
                .enumerate()
                .filter(|(i, _)| mask2 & (1 << i) != 0)
                .map(|(_, l)| l.clone())
                .collect();
            // oracle: membership bit by bit
            let mut union = 0usize;
            let mut inter = 0usize;
            for i in 0..10 {
                let in1 = mask1 & (1 << i) != 0;
                let in2 = mask2 & (1 << i) != 0;
                if in1 || in2 {
                    union += 1;
                }
                if in1 && in2 {
                    inter += 1;
                }
            }
            match class_distance(&l1, &l2) {
                Ok(d) => {
                    assert_eq!(d, (union - inter) as f64 / union as f64);
                    assert_eq!(d, class_distance(&l2, &l1).unwrap());
                    assert!((0.0..=1.0).contains(&d));
                    assert_eq!(d == 0.0, l1 == l2);
                    assert_eq!(d == 1.0, l1.is_disjoint(&l2));
                }
                Err(DegenerateDistance) => {
                    assert!(l1.is_empty() && l2.is_empty());
                }
            }
        }
    }

    #[test]
    fn equivalences_per_listing() {
        let subjpass = Relation::new(RelationKind::Subjpass, ("roman", 1), ("écrire", 3), None);
        let eq = equivalent_patterns(&subjpass);
        assert!(eq.contains(&Relation::new(
            RelationKind::Dobj,
            ("écrire", 3),
            ("roman", 1),
            None
        )));

        let vmod = Relation::new(
            RelationKind::Vmodobj,
            ("abandonner", 0),
            ("sort", 2),
            Some("à"),
        );
        assert_eq!(equivalent_patterns(&vmod).len(), 1);

        let subj = Relation::new(RelationKind::Subj, ("fiction", 0), ("penser", 2), None);
        let eq = equivalent_patterns(&subj);
        assert!(eq.contains(&Relation::new(
            RelationKind::Relsubj,
            ("fiction", 0),
            ("penser", 2),
            None
        )));
        assert!(eq.contains(&Relation::new(
            RelationKind::Pagent,
            ("penser", 2),
            ("fiction", 0),
            None
        )));
    }

    #[test]
    fn equivalence_closure_is_symmetric_and_involutive() {
        for kind in RelationKind::ALL {
            let prep = kind.takes_prep().then_some("à");
            let rel = Relation::new(kind, ("a", 0), ("b", 1), prep);
            let closure = equivalent_patterns(&rel);
            assert!(closure.contains(&rel));
            for member in &closure {
                let back = equivalent_patterns(member);
                assert!(back.contains(&rel), "{member} should map back to {rel}");
                assert_eq!(back, closure, "closure from {member} differs");
            }
        }
    }

    #[test]
    fn weight_overrides_validate_order() {
        let w = TypeWeights::default();
        assert!(w.validate().is_ok());
        assert!(w.with_overrides("co=10,lc=9").is_ok());
        assert!(TypeWeights::default().with_overrides("le=6").is_err());
        assert!(TypeWeights::default().with_overrides("bogus").is_err());
        assert!(TypeWeights::default().with_overrides("co=abc").is_err());
    }
}
