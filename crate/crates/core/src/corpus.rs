//! Corpus file formats.
//!
//! Tagged corpus: one token per line, `surface<TAB>lemma<TAB>POS<TAB>feats`,
//! blank line between sentences. Relation file (alternate input and debug
//! output): one relation per line, `# sent N` separators between sentences.

use std::collections::BTreeSet;
use std::fmt;

use crate::parser::{Feats, Relation, RelationKind, Token};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct CorpusError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl fmt::Display) -> CorpusError {
    CorpusError {
        line,
        msg: msg.to_string(),
    }
}

/// Parse a tagged corpus into sentences of tokens.
pub fn parse_tagged_corpus(src: &str) -> Result<Vec<Vec<Token>>, CorpusError> {
    let mut sentences = Vec::new();
    let mut current: Vec<Token> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(err(
                lineno,
                format!(
                    "expected 4 tab-separated fields (surface, lemma, POS, feats), found {}",
                    fields.len()
                ),
            ));
        }
        let (surface, lemma, pos, feats) = (fields[0], fields[1], fields[2], fields[3]);
        if surface.is_empty() || lemma.is_empty() {
            return Err(err(lineno, "empty surface or lemma"));
        }
        let pos = pos.parse().map_err(|e| err(lineno, e))?;
        let feats = Feats::parse(feats).map_err(|e| err(lineno, e))?;
        current.push(Token {
            surface: surface.to_string(),
            lemma: lemma.to_string(),
            pos,
            feats,
        });
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(sentences)
}

pub fn write_tagged_corpus(sentences: &[Vec<Token>]) -> String {
    let mut out = String::new();
    for (i, sentence) in sentences.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for tok in sentence {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                tok.surface, tok.lemma, tok.pos, tok.feats
            ));
        }
    }
    out
}

/// Parse a relation file into per-sentence relation sets. Relations in a
/// file carry no token positions; argument indices are assigned in order of
/// first appearance within each sentence.
pub fn parse_relation_file(src: &str) -> Result<Vec<BTreeSet<Relation>>, CorpusError> {
    let mut sentences: Vec<BTreeSet<Relation>> = Vec::new();
    let mut current: BTreeSet<Relation> = BTreeSet::new();
    let mut indices: Vec<String> = Vec::new();
    let mut seen_any = false;
    for (i, raw) in src.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if line.starts_with("# sent") && seen_any {
                sentences.push(std::mem::take(&mut current));
                indices.clear();
            }
            seen_any = true;
            continue;
        }
        seen_any = true;
        let rel = parse_relation_line(line, lineno, &mut indices)?;
        current.insert(rel);
    }
    if seen_any {
        sentences.push(current);
    }
    Ok(sentences)
}

fn parse_relation_line(
    line: &str,
    lineno: usize,
    indices: &mut Vec<String>,
) -> Result<Relation, CorpusError> {
    let open = line
        .find('(')
        .ok_or_else(|| err(lineno, "expected `KIND(...)`"))?;
    if !line.ends_with(')') {
        return Err(err(lineno, "missing closing `)`"));
    }
    let kind: RelationKind = line[..open].parse().map_err(|e| err(lineno, e))?;
    let args: Vec<&str> = line[open + 1..line.len() - 1].split(',').collect();
    let expected = if kind.takes_prep() { 3 } else { 2 };
    if args.len() != expected || args.iter().any(|a| a.is_empty()) {
        return Err(err(
            lineno,
            format!("{kind} takes {expected} non-empty arguments"),
        ));
    }
    let mut index_of = |lemma: &str| -> usize {
        match indices.iter().position(|l| l == lemma) {
            Some(i) => i,
            None => {
                indices.push(lemma.to_string());
                indices.len() - 1
            }
        }
    };
    let (head, prep, dep) = if kind.takes_prep() {
        (args[0], Some(args[1]), args[2])
    } else {
        (args[0], None, args[1])
    };
    let head_index = index_of(head);
    let dep_index = index_of(dep);
    if head_index == dep_index {
        return Err(err(lineno, "head and dependent must differ"));
    }
    Ok(Relation {
        kind,
        head: head.to_string(),
        dep: dep.to_string(),
        prep: prep.map(str::to_string),
        head_index,
        dep_index,
    })
}

pub fn write_relation_file(sentences: &[BTreeSet<Relation>]) -> String {
    let mut out = String::new();
    for (i, relations) in sentences.iter().enumerate() {
        out.push_str(&format!("# sent {}\n", i + 1));
        for rel in relations {
            out.push_str(&rel.to_string());
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pos::Pos;

    #[test]
    fn tagged_corpus_round_trip() {
        let src = "Un\tun\tDET\t-\nc\u{f4}t\u{e9}\tc\u{f4}t\u{e9}\tNOUN\t-\n\nil\til\tPRON\t-\ndort\tdormir\tVERB\tfinite\n";
        let sentences = parse_tagged_corpus(src).unwrap();
        assert_eq!(sentences.len(), 2);
        assert_eq!(sentences[0].len(), 2);
        assert_eq!(sentences[1][1].lemma, "dormir");
        assert!(sentences[1][1].feats.finite);
        assert_eq!(write_tagged_corpus(&sentences), src);
    }

    #[test]
    fn corpus_errors_carry_line_numbers() {
        let err = parse_tagged_corpus("a\tb\tNOUN\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_tagged_corpus("a\tb\tNOUN\t-\nx\ty\tBAD\t-\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_tagged_corpus("a\tb\tNOUN\twhat\n").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn relation_file_round_trip() {
        let src = "# sent 1\nDOBJ(abandonner,pays)\n# sent 2\nSUBJ(il,faire)\nVMODOBJ(abandonner,\u{e0},sort)\n";
        let sentences = parse_relation_file(src).unwrap();
        assert_eq!(sentences.len(), 2);
        assert_eq!(sentences[0].len(), 1);
        assert_eq!(sentences[1].len(), 2);
        assert_eq!(write_relation_file(&sentences), src);
    }

    #[test]
    fn relation_file_assigns_first_appearance_indices() {
        let src = "DOBJ(abandonner,pays)\nVMODOBJ(abandonner,pour,campagne)\n";
        let sentences = parse_relation_file(src).unwrap();
        let rels: Vec<&Relation> = sentences[0].iter().collect();
        let dobj = rels.iter().find(|r| r.kind == RelationKind::Dobj).unwrap();
        let vmod = rels.iter().find(|r| r.kind == RelationKind::Vmodobj).unwrap();
        assert_eq!(dobj.head_index, vmod.head_index);
        assert_ne!(dobj.dep_index, vmod.dep_index);
    }

    #[test]
    fn relation_file_errors() {
        assert_eq!(parse_relation_file("DOBJ(a)\n").unwrap_err().line, 1);
        assert_eq!(parse_relation_file("XOBJ(a,b)\n").unwrap_err().line, 1);
        assert_eq!(
            parse_relation_file("DOBJ(a,b)\nVMODOBJ(a,b)\n").unwrap_err().line,
            2
        );
        assert!(parse_relation_file("").unwrap().is_empty());
    }

    #[test]
    fn pos_parse_in_corpus() {
        let src = "bon\tbon\tADJ\t-\n";
        let sentences = parse_tagged_corpus(src).unwrap();
        assert_eq!(sentences[0][0].pos, Pos::Adjective);
    }
}
