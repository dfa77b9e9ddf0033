//! Semantic-class lexicon: lemma → set of class labels.
//!
//! The class layer covers nouns, adjectives and adverbs; verbs have no
//! classes. File format is tab-separated `lemma<TAB>POS<TAB>class[,class...]`
//! with `#` comment lines.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::pos::Pos;

/// Uppercase class label such as `HUMAIN` or `ESPACE_LOCATIF`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassLabel(String);

impl ClassLabel {
    /// Labels match `[A-Z][A-Z_]*` and compare case-sensitively.
    pub fn new(name: &str) -> Result<ClassLabel, LexiconError> {
        let mut chars = name.chars();
        let ok = matches!(chars.next(), Some('A'..='Z'))
            && chars.all(|c| c.is_ascii_uppercase() || c == '_');
        if ok {
            Ok(ClassLabel(name.to_string()))
        } else {
            Err(LexiconError::BadClassLabel(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexiconError {
    #[error("invalid class label `{0}` (expected [A-Z][A-Z_]*)")]
    BadClassLabel(String),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
}

fn line_err(line: usize, msg: impl fmt::Display) -> LexiconError {
    LexiconError::Line {
        line,
        msg: msg.to_string(),
    }
}

static EMPTY: BTreeSet<ClassLabel> = BTreeSet::new();

/// Immutable lemma → class-set mapping, keyed per POS.
#[derive(Debug, Clone, Default)]
pub struct SemLexicon {
    classes: HashMap<(String, Pos), BTreeSet<ClassLabel>>,
}

impl SemLexicon {
    /// Load from tabular text. Lines for the same (lemma, POS) union their
    /// classes, so loading is order-independent.
    pub fn load(src: &str) -> Result<SemLexicon, LexiconError> {
        let mut lex = SemLexicon::default();
        for (i, raw) in src.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let (lemma, pos, classes) = match (fields.next(), fields.next(), fields.next()) {
                (Some(l), Some(p), Some(c)) if fields.next().is_none() => (l, p, c),
                _ => {
                    return Err(line_err(
                        lineno,
                        "expected 3 tab-separated fields: lemma, POS, class list",
                    ))
                }
            };
            if lemma.is_empty() {
                return Err(line_err(lineno, "empty lemma"));
            }
            let pos: Pos = pos
                .parse()
                .map_err(|e| line_err(lineno, e))?;
            if !matches!(pos, Pos::Noun | Pos::Adjective | Pos::Adverb) {
                return Err(line_err(
                    lineno,
                    format!("no semantic-class layer for POS {pos}"),
                ));
            }
            if classes.is_empty() {
                return Err(line_err(lineno, "empty class list"));
            }
            let set = lex
                .classes
                .entry((lemma.to_string(), pos))
                .or_default();
            for name in classes.split(',') {
                let label = ClassLabel::new(name)
                    .map_err(|e| line_err(lineno, e))?;
                set.insert(label);
            }
        }
        Ok(lex)
    }

    /// Classes of a lemma; the empty set for unknown lemmas and for POS
    /// without a class layer. Never errors.
    pub fn classes_of(&self, lemma: &str, pos: Pos) -> &BTreeSet<ClassLabel> {
        self.classes
            .get(&(lemma.to_string(), pos))
            .unwrap_or(&EMPTY)
    }

    /// Every distinct class label in the lexicon.
    pub fn class_inventory(&self) -> BTreeSet<&ClassLabel> {
        self.classes.values().flatten().collect()
    }

    /// Number of (lemma, POS) entries.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_class_sets() {
        let lex = SemLexicon::load("pays\tNOUN\tESPACE_LOCATIF,GEO,HUMAIN_COLLECTIF\n").unwrap();
        let classes = lex.classes_of("pays", Pos::Noun);
        assert_eq!(classes.len(), 3);
        assert!(classes.contains(&ClassLabel::new("GEO").unwrap()));
    }

    #[test]
    fn unknown_lemma_is_empty_set_not_error() {
        let lex = SemLexicon::load("").unwrap();
        assert!(lex.classes_of("inconnu", Pos::Noun).is_empty());
        assert!(lex.is_empty());
    }

    #[test]
    fn same_key_lines_union() {
        let a = SemLexicon::load("sort\tNOUN\tEVENEMENT\nsort\tNOUN\tABSTRAIT\n").unwrap();
        let b = SemLexicon::load("sort\tNOUN\tABSTRAIT\nsort\tNOUN\tEVENEMENT\n").unwrap();
        let c = SemLexicon::load("sort\tNOUN\tEVENEMENT,ABSTRAIT\n").unwrap();
        assert_eq!(a.classes_of("sort", Pos::Noun), b.classes_of("sort", Pos::Noun));
        assert_eq!(a.classes_of("sort", Pos::Noun), c.classes_of("sort", Pos::Noun));
        assert_eq!(a.classes_of("sort", Pos::Noun).len(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = SemLexicon::load("pays\tNOUN\tGEO\nbroken line\n").unwrap_err();
        assert_eq!(err, line_err(2, "expected 3 tab-separated fields: lemma, POS, class list"));

        let err = SemLexicon::load("# comment\npays\tNOUN\t\n").unwrap_err();
        assert!(matches!(err, LexiconError::Line { line: 2, .. }));

        let err = SemLexicon::load("partir\tVERB\tACTION\n").unwrap_err();
        assert!(matches!(err, LexiconError::Line { line: 1, .. }));

        let err = SemLexicon::load("pays\tNOUN\tgeo\n").unwrap_err();
        assert!(matches!(err, LexiconError::Line { line: 1, .. }));
    }

    #[test]
    fn class_labels_validate() {
        assert!(ClassLabel::new("HUMAIN").is_ok());
        assert!(ClassLabel::new("ESPACE_LOCATIF").is_ok());
        assert!(ClassLabel::new("_X").is_err());
        assert!(ClassLabel::new("Humain").is_err());
        assert!(ClassLabel::new("").is_err());
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let lex = SemLexicon::load("# header\n\nlieu\tNOUN\tENTITE,ESPACE_LOCATIF,ANIMAL\n").unwrap();
        assert_eq!(lex.classes_of("lieu", Pos::Noun).len(), 3);
    }
}
