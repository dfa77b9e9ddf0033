//! Rule extraction from dictionary items.
//!
//! Collocations compile directly (their grammatical role is encoded in the
//! dictionary); examples are tokenized and tagged by a small built-in
//! tagger, then shallow-parsed. The tagger knows the French closed classes
//! plus the dictionary's own headwords and collocates, and falls back to
//! noun for anything else — dictionary examples are short and formulaic,
//! and no external tagger is required.

use std::collections::{BTreeSet, HashMap};

use crate::dictionary::{
    CollocRole, DictionaryEntry, ExampleKind, IllustrativeItem, PosPart, Sense,
};
use crate::parser::{analyze, Feats, Token};
use crate::pos::Pos;
use crate::semlex::{ClassLabel, SemLexicon};

use super::{Rule, RuleArgument, RulePattern, Slot};
use crate::parser::RelationKind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtractError {
    #[error("`{headword}` sense {sense}: collocation item {s3} has no role")]
    MissingRole {
        headword: String,
        sense: String,
        s3: u32,
    },
    #[error("`{headword}` sense {sense}: collocation item {s3} has no collocate text")]
    EmptyCollocate {
        headword: String,
        sense: String,
        s3: u32,
    },
}

/// Class sets substituted for the placeholder arguments of dictionary
/// examples. `qn`/`quelqu'un` stands for a human object; `qch`/`quelque
/// chose` for an unspecified thing.
#[derive(Debug, Clone)]
pub struct ExtractOptions {
    pub qn_classes: BTreeSet<ClassLabel>,
    pub qch_classes: BTreeSet<ClassLabel>,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        let label = |s: &str| ClassLabel::new(s).expect("valid label");
        ExtractOptions {
            qn_classes: [label("HUMAIN")].into(),
            qch_classes: [label("ENTITE"), label("ABSTRAIT")].into(),
        }
    }
}

struct ClosedEntry {
    lemma: &'static str,
    pos: Pos,
    feats: &'static str,
}

macro_rules! closed {
    ($($surface:literal => $lemma:literal, $pos:ident, $feats:literal;)*) => {
        &[$(($surface, ClosedEntry { lemma: $lemma, pos: Pos::$pos, feats: $feats }),)*]
    };
}

/// French closed-class forms the example tagger knows.
static CLOSED: &[(&str, ClosedEntry)] = closed! {
    // determiners; le/la/les/l'/leur/ce are retagged to pronouns before verbs
    "le" => "le", Determiner, "-";
    "la" => "le", Determiner, "-";
    "les" => "le", Determiner, "-";
    "l'" => "le", Determiner, "-";
    "un" => "un", Determiner, "-";
    "une" => "un", Determiner, "-";
    "du" => "de", Determiner, "prepdet";
    "des" => "de", Determiner, "prepdet";
    "au" => "à", Determiner, "prepdet";
    "aux" => "à", Determiner, "prepdet";
    "son" => "son", Determiner, "-";
    "sa" => "son", Determiner, "-";
    "ses" => "son", Determiner, "-";
    "mon" => "mon", Determiner, "-";
    "ma" => "mon", Determiner, "-";
    "mes" => "mon", Determiner, "-";
    "ton" => "ton", Determiner, "-";
    "ta" => "ton", Determiner, "-";
    "tes" => "ton", Determiner, "-";
    "leur" => "leur", Determiner, "-";
    "leurs" => "leur", Determiner, "-";
    "notre" => "notre", Determiner, "-";
    "nos" => "notre", Determiner, "-";
    "votre" => "votre", Determiner, "-";
    "vos" => "votre", Determiner, "-";
    "ce" => "ce", Determiner, "-";
    "cet" => "ce", Determiner, "-";
    "cette" => "ce", Determiner, "-";
    "ces" => "ce", Determiner, "-";
    "chaque" => "chaque", Determiner, "-";
    "plusieurs" => "plusieurs", Determiner, "-";
    "tout" => "tout", Determiner, "-";
    "toute" => "tout", Determiner, "-";
    "tous" => "tout", Determiner, "-";
    "toutes" => "tout", Determiner, "-";
    // prepositions
    "à" => "à", Preposition, "-";
    "de" => "de", Preposition, "-";
    "d'" => "de", Preposition, "-";
    "dans" => "dans", Preposition, "-";
    "en" => "en", Preposition, "-";
    "sur" => "sur", Preposition, "-";
    "sous" => "sous", Preposition, "-";
    "avec" => "avec", Preposition, "-";
    "sans" => "sans", Preposition, "-";
    "pour" => "pour", Preposition, "-";
    "par" => "par", Preposition, "-";
    "vers" => "vers", Preposition, "-";
    "chez" => "chez", Preposition, "-";
    "entre" => "entre", Preposition, "-";
    "contre" => "contre", Preposition, "-";
    // pronouns
    "je" => "je", Pronoun, "-";
    "j'" => "je", Pronoun, "-";
    "tu" => "tu", Pronoun, "-";
    "il" => "il", Pronoun, "-";
    "elle" => "elle", Pronoun, "-";
    "on" => "on", Pronoun, "-";
    "ils" => "il", Pronoun, "-";
    "elles" => "elle", Pronoun, "-";
    "nous" => "nous", Pronoun, "-";
    "vous" => "vous", Pronoun, "-";
    "me" => "me", Pronoun, "-";
    "m'" => "me", Pronoun, "-";
    "te" => "te", Pronoun, "-";
    "t'" => "te", Pronoun, "-";
    "se" => "se", Pronoun, "-";
    "s'" => "se", Pronoun, "-";
    "y" => "y", Pronoun, "-";
    "lui" => "lui", Pronoun, "-";
    "moi" => "moi", Pronoun, "-";
    "toi" => "toi", Pronoun, "-";
    "eux" => "eux", Pronoun, "-";
    "c'" => "ce", Pronoun, "-";
    "qui" => "qui", Pronoun, "-";
    "quelqu'un" => "quelqu'un", Pronoun, "-";
    "qn" => "quelqu'un", Pronoun, "-";
    "quelque_chose" => "quelque_chose", Pronoun, "-";
    "qch" => "quelque_chose", Pronoun, "-";
    // auxiliaries and copulas; main-verb uses recover via the VC fallback
    "être" => "être", Verb, "aux";
    "est" => "être", Verb, "finite,aux";
    "sont" => "être", Verb, "finite,aux";
    "suis" => "être", Verb, "finite,aux";
    "es" => "être", Verb, "finite,aux";
    "sommes" => "être", Verb, "finite,aux";
    "êtes" => "être", Verb, "finite,aux";
    "était" => "être", Verb, "finite,aux";
    "étaient" => "être", Verb, "finite,aux";
    "sera" => "être", Verb, "finite,aux";
    "seront" => "être", Verb, "finite,aux";
    "été" => "être", Verb, "pastpart,aux";
    "étant" => "être", Verb, "aux";
    "avoir" => "avoir", Verb, "aux";
    "a" => "avoir", Verb, "finite,aux";
    "ont" => "avoir", Verb, "finite,aux";
    "ai" => "avoir", Verb, "finite,aux";
    "as" => "avoir", Verb, "finite,aux";
    "avons" => "avoir", Verb, "finite,aux";
    "avez" => "avoir", Verb, "finite,aux";
    "avait" => "avoir", Verb, "finite,aux";
    "avaient" => "avoir", Verb, "finite,aux";
    "aura" => "avoir", Verb, "finite,aux";
    "auront" => "avoir", Verb, "finite,aux";
    "eu" => "avoir", Verb, "pastpart,aux";
    "ayant" => "avoir", Verb, "aux";
    // adverbs
    "ne" => "ne", Adverb, "-";
    "n'" => "ne", Adverb, "-";
    "pas" => "pas", Adverb, "-";
    "plus" => "plus", Adverb, "-";
    "jamais" => "jamais", Adverb, "-";
    "très" => "très", Adverb, "-";
    "bien" => "bien", Adverb, "-";
    "trop" => "trop", Adverb, "-";
    "peu" => "peu", Adverb, "-";
    "souvent" => "souvent", Adverb, "-";
    "toujours" => "toujours", Adverb, "-";
    "encore" => "encore", Adverb, "-";
    "déjà" => "déjà", Adverb, "-";
    "plus_ou_moins" => "plus_ou_moins", Adverb, "-";
    // conjunctions
    "et" => "et", Conjunction, "-";
    "ou" => "ou", Conjunction, "-";
    "mais" => "mais", Conjunction, "-";
    "donc" => "donc", Conjunction, "-";
    "ni" => "ni", Conjunction, "-";
    "car" => "car", Conjunction, "-";
    "que" => "que", Conjunction, "-";
    "qu'" => "que", Conjunction, "-";
    "si" => "si", Conjunction, "-";
    "quand" => "quand", Conjunction, "-";
    "lorsque" => "lorsque", Conjunction, "-";
    "comme" => "comme", Conjunction, "-";
    "parce_que" => "parce_que", Conjunction, "-";
    "puisque" => "puisque", Conjunction, "-";
};

/// Surfaces retagged between determiner and pronoun by lookahead.
const DET_PRON_AMBIGUOUS: [&str; 6] = ["le", "la", "les", "l'", "leur", "ce"];

const PUNCT_CHARS: [char; 16] = [
    ',', '.', ';', ':', '!', '?', '«', '»', '(', ')', '"', '…', '—', '–', '“', '”',
];

/// Tokenizer and tagger for dictionary example phrases.
pub struct ExampleTagger {
    closed: HashMap<&'static str, &'static ClosedEntry>,
    /// headword / collocate vocabulary: surface → (lemma, POS)
    open: HashMap<String, (String, Pos)>,
    /// underscore-joined multiword surfaces, for greedy merging
    multiwords: BTreeSet<String>,
}

impl ExampleTagger {
    pub fn from_dictionary(dict: &crate::dictionary::Dictionary) -> ExampleTagger {
        let closed: HashMap<&'static str, &'static ClosedEntry> =
            CLOSED.iter().map(|(s, e)| (*s, e)).collect();
        let mut multiwords: BTreeSet<String> = closed
            .keys()
            .filter(|s| s.contains('_'))
            .map(|s| s.to_string())
            .collect();
        let mut open = HashMap::new();
        for entry in dict.entries() {
            for part in &entry.parts {
                let Some(pos) = part.pos().rule_pos() else {
                    continue;
                };
                // first part wins for ambiguous headwords; extraction
                // overrides with the part being processed anyway
                open.entry(entry.headword.clone())
                    .or_insert((entry.headword.clone(), pos));
                if entry.headword.contains('_') {
                    multiwords.insert(entry.headword.clone());
                }
                for sense in &part.senses {
                    for item in &sense.items {
                        if item.kind == ExampleKind::Collocation && !item.text.is_empty() {
                            open.entry(item.text.clone())
                                .or_insert((item.text.clone(), Pos::Noun));
                            if item.text.contains('_') {
                                multiwords.insert(item.text.clone());
                            }
                        }
                    }
                }
            }
        }
        ExampleTagger {
            closed,
            open,
            multiwords,
        }
    }

    /// Tokenize and tag an example phrase. `overrides` maps surfaces to a
    /// POS ahead of every table (used for the headword of the part under
    /// extraction).
    pub fn tag(&self, text: &str, overrides: &[(String, Pos)]) -> Vec<Token> {
        let words = self.tokenize(text);
        let mut tokens: Vec<Token> = words
            .iter()
            .map(|w| self.tag_word(w, overrides))
            .collect();
        // determiner/pronoun lookahead: a nominal follows → determiner,
        // anything else → clitic pronoun
        for i in 0..tokens.len() {
            let surface = tokens[i].surface.to_lowercase();
            if DET_PRON_AMBIGUOUS.contains(&surface.as_str()) {
                let next_nominal = matches!(
                    tokens.get(i + 1).map(|t| t.pos),
                    Some(Pos::Noun) | Some(Pos::Adjective)
                );
                tokens[i].pos = if next_nominal {
                    Pos::Determiner
                } else {
                    Pos::Pronoun
                };
            }
        }
        tokens
    }

    fn tag_word(&self, word: &str, overrides: &[(String, Pos)]) -> Token {
        if word.chars().count() == 1 && PUNCT_CHARS.contains(&word.chars().next().unwrap()) {
            return Token::new(word, word, Pos::Punctuation);
        }
        if let Some((_, pos)) = overrides.iter().find(|(s, _)| s == word) {
            return Token::new(word, word, *pos);
        }
        let lower = word.to_lowercase();
        if let Some(entry) = self.closed.get(lower.as_str()) {
            return Token::new(word, entry.lemma, entry.pos)
                .with_feats(Feats::parse(entry.feats).expect("static feats"));
        }
        if let Some((lemma, pos)) = self.open.get(word) {
            return Token::new(word, lemma, *pos);
        }
        // unknown: noun, surface as lemma
        Token::new(word, word, Pos::Noun)
    }

    fn tokenize(&self, text: &str) -> Vec<String> {
        let mut words = Vec::new();
        for raw in text.replace('\u{2019}', "'").split_whitespace() {
            let mut rest = raw;
            // leading punctuation
            while let Some(c) = rest.chars().next() {
                if PUNCT_CHARS.contains(&c) {
                    words.push(c.to_string());
                    rest = &rest[c.len_utf8()..];
                } else {
                    break;
                }
            }
            // trailing punctuation, collected then re-appended in order
            let mut tail = Vec::new();
            while let Some(c) = rest.chars().last() {
                if PUNCT_CHARS.contains(&c) {
                    tail.push(c.to_string());
                    rest = &rest[..rest.len() - c.len_utf8()];
                } else {
                    break;
                }
            }
            if !rest.is_empty() {
                // elision: split a short prefix ending in an apostrophe
                if let Some(p) = rest.find('\'') {
                    let prefix = &rest[..p + 1];
                    let after = &rest[p + 1..];
                    if !after.is_empty() && prefix.chars().count() <= 3 && !rest.contains('_') {
                        let lower = prefix.to_lowercase();
                        if self.closed.contains_key(lower.as_str()) {
                            words.push(prefix.to_string());
                            words.push(after.to_string());
                            tail.reverse();
                            words.extend(tail);
                            continue;
                        }
                    }
                }
                words.push(rest.to_string());
            }
            tail.reverse();
            words.extend(tail);
        }
        self.merge_multiwords(words)
    }

    fn merge_multiwords(&self, words: Vec<String>) -> Vec<String> {
        let mut out: Vec<String> = Vec::with_capacity(words.len());
        let mut i = 0;
        while i < words.len() {
            let mut merged = None;
            for len in (2..=3).rev() {
                if i + len <= words.len() {
                    let joined = words[i..i + len].join("_");
                    if self.multiwords.contains(&joined.to_lowercase()) || self.multiwords.contains(&joined) {
                        merged = Some((joined, len));
                        break;
                    }
                }
            }
            match merged {
                Some((joined, len)) => {
                    out.push(joined);
                    i += len;
                }
                None => {
                    out.push(words[i].clone());
                    i += 1;
                }
            }
        }
        out
    }
}

/// Extract rules from a parsed example: one lexical rule per relation that
/// involves the headword, plus a semantic sibling whenever the other
/// argument has a non-empty class set. Placeholders `qn`/`qch` normalize to
/// the lemmas `quelqu'un`/`quelque_chose` and to fixed class sets.
#[allow(clippy::too_many_arguments)]
pub fn rules_from_example(
    entry: &DictionaryEntry,
    part: &PosPart,
    sense: &Sense,
    item: &IllustrativeItem,
    tagger: &ExampleTagger,
    semlex: &SemLexicon,
    options: &ExtractOptions,
    warnings: &mut Vec<String>,
) -> Vec<Rule> {
    let Some(rule_pos) = part.pos().rule_pos() else {
        return Vec::new();
    };
    let tokens = tagger.tag(&item.text, &[(entry.headword.clone(), rule_pos)]);
    if tokens.is_empty() {
        warnings.push(format!(
            "`{}` sense {}: item {} is not taggable, skipped",
            entry.headword, sense.id, item.s3
        ));
        return Vec::new();
    }
    let analysis = analyze(&tokens);
    let ambiguity = entry.ambiguity(rule_pos);
    let mut rules: Vec<Rule> = Vec::new();
    let push = |rule: Rule, rules: &mut Vec<Rule>| {
        if !rules.iter().any(|r| r.pattern == rule.pattern) {
            rules.push(rule);
        }
    };
    for rel in &analysis.relations {
        for target_slot in [Slot::Head, Slot::Dep] {
            let (target, arg, arg_idx) = match target_slot {
                Slot::Head => (&rel.head, &rel.dep, rel.dep_index),
                Slot::Dep => (&rel.dep, &rel.head, rel.head_index),
            };
            if *target != entry.headword {
                continue;
            }
            let base = Rule {
                target: entry.headword.clone(),
                pos: rule_pos,
                ambiguity: ambiguity.clone(),
                pattern: RulePattern {
                    kind: rel.kind,
                    prep: rel.prep.clone(),
                    target_slot,
                    argument: RuleArgument::Lexical(arg.clone()),
                },
                source_kind: item.kind,
                s3: item.s3,
                result: sense.id,
                translation_hint: item.translation.clone(),
            };
            push(base.clone(), &mut rules);
            let classes = match arg.as_str() {
                "quelqu'un" => options.qn_classes.clone(),
                "quelque_chose" => options.qch_classes.clone(),
                _ => semlex.classes_of(arg, tokens[arg_idx].pos).clone(),
            };
            if !classes.is_empty() {
                let mut semantic = base;
                semantic.pattern.argument = RuleArgument::Semantic(classes);
                push(semantic, &mut rules);
            }
        }
    }
    rules
}

/// Compile a collocation item; the relation shape comes from the encoded
/// role, no parsing involved. One lexical rule always; one semantic rule
/// iff the collocate has classes.
pub fn rules_from_collocation(
    entry: &DictionaryEntry,
    part: &PosPart,
    sense: &Sense,
    item: &IllustrativeItem,
    semlex: &SemLexicon,
) -> Result<Vec<Rule>, ExtractError> {
    let role = item.colloc_role.ok_or_else(|| ExtractError::MissingRole {
        headword: entry.headword.clone(),
        sense: sense.id.to_string(),
        s3: item.s3,
    })?;
    if item.text.is_empty() {
        return Err(ExtractError::EmptyCollocate {
            headword: entry.headword.clone(),
            sense: sense.id.to_string(),
            s3: item.s3,
        });
    }
    let Some(rule_pos) = part.pos().rule_pos() else {
        return Ok(Vec::new());
    };
    let (kind, target_slot) = match role {
        // SUBJ(collocate, verb): the target verb fills the second slot
        CollocRole::Subject => (RelationKind::Subj, Slot::Dep),
        // DOBJ(verb, collocate)
        CollocRole::Object => (RelationKind::Dobj, Slot::Head),
        // ADJ(adjective, modified noun)
        CollocRole::ModifiedNoun => (RelationKind::Adj, Slot::Head),
    };
    let ambiguity = entry.ambiguity(rule_pos);
    let base = Rule {
        target: entry.headword.clone(),
        pos: rule_pos,
        ambiguity,
        pattern: RulePattern {
            kind,
            prep: None,
            target_slot,
            argument: RuleArgument::Lexical(item.text.clone()),
        },
        source_kind: ExampleKind::Collocation,
        s3: item.s3,
        result: sense.id,
        translation_hint: item.translation.clone(),
    };
    let mut rules = vec![base.clone()];
    let classes = semlex.classes_of(&item.text, Pos::Noun);
    if !classes.is_empty() {
        let mut semantic = base;
        semantic.pattern.argument = RuleArgument::Semantic(classes.clone());
        rules.push(semantic);
    }
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::Dictionary;

    const ABANDONNER_MIN: &str = r#"<dictionary>
  <entry>
    <hw>abandonner</hw>
    <pos tag="vtr">
      <sense><ic>quitter</ic><co role="obj">lieu</co></sense>
      <sense><ic>livrer</ic><le>abandonner qn à son sort<tr>to leave ou abandon sb to his/her fate</tr></le></sense>
      <sense><ic>faire défaut</ic><co role="subj">courage</co></sense>
    </pos>
  </entry>
</dictionary>"#;

    fn fixture_lex() -> SemLexicon {
        SemLexicon::load(concat!(
            "lieu\tNOUN\tENTITE,ESPACE_LOCATIF,ANIMAL\n",
            "sort\tNOUN\tEVENEMENT,ABSTRAIT\n",
        ))
        .unwrap()
    }

    #[test]
    fn example_yields_lexical_and_semantic_rules() {
        let dict = Dictionary::parse(ABANDONNER_MIN).unwrap();
        let lex = fixture_lex();
        let entry = dict.get("abandonner").unwrap();
        let part = &entry.parts[0];
        let sense = &part.senses[1];
        let item = &sense.items[0];
        let tagger = ExampleTagger::from_dictionary(&dict);
        let mut warnings = Vec::new();
        let rules = rules_from_example(
            entry,
            part,
            sense,
            item,
            &tagger,
            &lex,
            &ExtractOptions::default(),
            &mut warnings,
        );
        assert!(warnings.is_empty());
        let shown: Vec<String> = rules.iter().map(|r| r.to_string()).collect();
        assert!(shown.contains(&"DOBJ(abandonner,quelqu'un) => I.2".to_string()), "{shown:?}");
        assert!(shown.contains(&"VMODOBJ(abandonner,à,sort) => I.2".to_string()), "{shown:?}");
        assert!(shown.contains(&"DOBJ(abandonner,HUMAIN) => I.2".to_string()), "{shown:?}");
        assert!(
            shown.contains(&"VMODOBJ(abandonner,à,ABSTRAIT/EVENEMENT) => I.2".to_string()),
            "{shown:?}"
        );
        assert_eq!(rules.len(), 4);
        for rule in &rules {
            assert!(rule.ambiguity.contains(&rule.result));
            assert_eq!(rule.translation_hint.as_deref(), Some("to leave ou abandon sb to his/her fate"));
        }
    }

    #[test]
    fn example_without_headword_yields_nothing() {
        let dict = Dictionary::parse(ABANDONNER_MIN).unwrap();
        let entry = dict.get("abandonner").unwrap();
        let part = &entry.parts[0];
        let sense = &part.senses[1];
        let item = IllustrativeItem {
            kind: ExampleKind::General,
            s3: 9,
            text: "les médecins dorment".to_string(),
            colloc_role: None,
            translation: None,
        };
        let tagger = ExampleTagger::from_dictionary(&dict);
        let mut warnings = Vec::new();
        let rules = rules_from_example(
            entry,
            part,
            sense,
            &item,
            &tagger,
            &fixture_lex(),
            &ExtractOptions::default(),
            &mut warnings,
        );
        assert!(rules.is_empty());
        assert!(warnings.is_empty());
    }

    #[test]
    fn object_collocation_compiles_directly() {
        let dict = Dictionary::parse(ABANDONNER_MIN).unwrap();
        let entry = dict.get("abandonner").unwrap();
        let part = &entry.parts[0];
        let sense = &part.senses[0];
        let rules =
            rules_from_collocation(entry, part, sense, &sense.items[0], &fixture_lex()).unwrap();
        let shown: Vec<String> = rules.iter().map(|r| r.to_string()).collect();
        assert_eq!(shown[0], "DOBJ(abandonner,lieu) => I.1");
        assert_eq!(shown[1], "DOBJ(abandonner,ANIMAL/ENTITE/ESPACE_LOCATIF) => I.1");
    }

    #[test]
    fn subject_collocation_puts_target_in_dep_slot() {
        let dict = Dictionary::parse(ABANDONNER_MIN).unwrap();
        let entry = dict.get("abandonner").unwrap();
        let part = &entry.parts[0];
        let sense = &part.senses[2];
        let rules =
            rules_from_collocation(entry, part, sense, &sense.items[0], &fixture_lex()).unwrap();
        assert_eq!(rules.len(), 1); // courage has no classes in the test lexicon
        assert_eq!(rules[0].pattern.target_slot, Slot::Dep);
        assert_eq!(rules[0].to_string(), "SUBJ(courage,abandonner) => I.3");
    }

    #[test]
    fn collocation_without_role_is_an_error() {
        let dict = Dictionary::parse(ABANDONNER_MIN).unwrap();
        let entry = dict.get("abandonner").unwrap();
        let part = &entry.parts[0];
        let sense = &part.senses[0];
        let item = IllustrativeItem {
            kind: ExampleKind::Collocation,
            s3: 7,
            text: "lieu".to_string(),
            colloc_role: None,
            translation: None,
        };
        let err = rules_from_collocation(entry, part, sense, &item, &fixture_lex()).unwrap_err();
        assert!(matches!(err, ExtractError::MissingRole { .. }));
        assert!(err.to_string().contains("abandonner"));
    }

    #[test]
    fn tagger_splits_elisions_and_merges_multiwords() {
        let dict = Dictionary::parse(ABANDONNER_MIN).unwrap();
        let tagger = ExampleTagger::from_dictionary(&dict);
        let tokens = tagger.tag("abandonner l'alcool, qu'il prenne quelque chose", &[]);
        let surfaces: Vec<&str> = tokens.iter().map(|t| t.surface.as_str()).collect();
        assert_eq!(
            surfaces,
            [
                "abandonner",
                "l'",
                "alcool",
                ",",
                "qu'",
                "il",
                "prenne",
                "quelque_chose"
            ]
        );
        assert_eq!(tokens[1].pos, Pos::Determiner); // l'alcool
        assert_eq!(tokens[7].lemma, "quelque_chose");
    }

    #[test]
    fn ambiguous_clitic_retags_before_verbs() {
        let dict = Dictionary::parse(ABANDONNER_MIN).unwrap();
        let tagger = ExampleTagger::from_dictionary(&dict);
        let tokens = tagger.tag("les médecins l'ont abandonné", &[]);
        assert_eq!(tokens[0].pos, Pos::Determiner); // les médecins
        assert_eq!(tokens[2].pos, Pos::Pronoun); // l'ont
        assert_eq!(tokens[3].lemma, "avoir");
        assert!(tokens[3].feats.auxiliary);
    }
}
