//! Assignment file format: one line per disambiguated word,
//! `sent<TAB>tokidx<TAB>lemma<TAB>pos<TAB>sense<TAB>method<TAB>score|-<TAB>fired|-<TAB>translation|-`.

use std::fmt;

use crate::dictionary::SenseId;
use crate::disambiguator::{Method, WordOutcome};
use crate::pos::Pos;

/// Outcome category as written in the method column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodTag {
    Lexical,
    Semantic,
    Default,
    NotInDictionary,
    NoMatchingPos,
}

impl MethodTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            MethodTag::Lexical => "lexical",
            MethodTag::Semantic => "semantic",
            MethodTag::Default => "default",
            MethodTag::NotInDictionary => "notindict",
            MethodTag::NoMatchingPos => "nopos",
        }
    }

    pub fn parse(s: &str) -> Option<MethodTag> {
        match s {
            "lexical" => Some(MethodTag::Lexical),
            "semantic" => Some(MethodTag::Semantic),
            "default" => Some(MethodTag::Default),
            "notindict" => Some(MethodTag::NotInDictionary),
            "nopos" => Some(MethodTag::NoMatchingPos),
            _ => None,
        }
    }
}

/// One parsed assignment line.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentRecord {
    pub sent: usize,
    pub token_index: usize,
    pub lemma: String,
    pub pos: Pos,
    pub method: MethodTag,
    pub sense: Option<SenseId>,
    pub score: Option<f64>,
    pub fired: Vec<usize>,
    pub translation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct AssignmentError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl fmt::Display) -> AssignmentError {
    AssignmentError {
        line,
        msg: msg.to_string(),
    }
}

/// Render per-sentence outcomes; sentence numbers are 1-based.
pub fn write_assignments(sentences: &[Vec<WordOutcome>]) -> String {
    let mut out = String::new();
    for (s, outcomes) in sentences.iter().enumerate() {
        let sent = s + 1;
        for outcome in outcomes {
            match outcome {
                WordOutcome::Assigned(a) => {
                    let method = match a.method {
                        Method::Lexical => MethodTag::Lexical,
                        Method::Semantic => MethodTag::Semantic,
                        Method::Default => MethodTag::Default,
                    };
                    let score = a
                        .score
                        .map(|s| s.to_string())
                        .unwrap_or_else(|| "-".to_string());
                    let fired = if a.fired.is_empty() {
                        "-".to_string()
                    } else {
                        a.fired
                            .iter()
                            .map(|id| (id + 1).to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    };
                    out.push_str(&format!(
                        "{sent}\t{}\t{}\t{}\t{}\t{}\t{score}\t{fired}\t{}\n",
                        a.token_index,
                        a.lemma,
                        a.pos,
                        a.chosen,
                        method.as_str(),
                        a.translation_hint.as_deref().unwrap_or("-"),
                    ));
                }
                WordOutcome::NotInDictionary {
                    token_index,
                    lemma,
                    pos,
                } => {
                    out.push_str(&format!(
                        "{sent}\t{token_index}\t{lemma}\t{pos}\t-\tnotindict\t-\t-\t-\n"
                    ));
                }
                WordOutcome::NoMatchingPos {
                    token_index,
                    lemma,
                    pos,
                } => {
                    out.push_str(&format!(
                        "{sent}\t{token_index}\t{lemma}\t{pos}\t-\tnopos\t-\t-\t-\n"
                    ));
                }
            }
        }
    }
    out
}

pub fn parse_assignments(src: &str) -> Result<Vec<AssignmentRecord>, AssignmentError> {
    let mut records = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 9 {
            return Err(err(
                lineno,
                format!("expected 9 tab-separated fields, found {}", fields.len()),
            ));
        }
        let sent: usize = fields[0]
            .parse()
            .map_err(|_| err(lineno, "bad sentence number"))?;
        let token_index: usize = fields[1]
            .parse()
            .map_err(|_| err(lineno, "bad token index"))?;
        let pos: Pos = fields[3].parse().map_err(|e| err(lineno, e))?;
        let method = MethodTag::parse(fields[5])
            .ok_or_else(|| err(lineno, format!("unknown method `{}`", fields[5])))?;
        let sense = match fields[4] {
            "-" => None,
            s => Some(s.parse().map_err(|e| err(lineno, e))?),
        };
        let score = match fields[6] {
            "-" => None,
            s => Some(s.parse().map_err(|_| err(lineno, "bad score"))?),
        };
        let fired = match fields[7] {
            "-" => Vec::new(),
            s => s
                .split(',')
                .map(|id| {
                    id.parse::<usize>()
                        .map(|n| n.saturating_sub(1))
                        .map_err(|_| err(lineno, "bad rule id"))
                })
                .collect::<Result<_, _>>()?,
        };
        let translation = match fields[8] {
            "-" => None,
            s => Some(s.to_string()),
        };
        records.push(AssignmentRecord {
            sent,
            token_index,
            lemma: fields[2].to_string(),
            pos,
            method,
            sense,
            score,
            fired,
            translation,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disambiguator::SenseAssignment;

    #[test]
    fn write_and_parse_round_trip() {
        let sentences = vec![vec![
            WordOutcome::Assigned(SenseAssignment {
                token_index: 2,
                lemma: "abandonner".into(),
                pos: Pos::Verb,
                chosen: SenseId::new(1, 6),
                method: Method::Lexical,
                score: Some(1.0),
                fired: vec![4],
                translation_hint: Some("to leave".into()),
            }),
            WordOutcome::NotInDictionary {
                token_index: 5,
                lemma: "inconnu".into(),
                pos: Pos::Noun,
            },
        ]];
        let text = write_assignments(&sentences);
        let records = parse_assignments(&text).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].sense, Some(SenseId::new(1, 6)));
        assert_eq!(records[0].method, MethodTag::Lexical);
        assert_eq!(records[0].fired, vec![4]);
        assert_eq!(records[1].method, MethodTag::NotInDictionary);
        assert_eq!(records[1].sense, None);
    }

    #[test]
    fn parse_errors_have_line_numbers() {
        assert_eq!(parse_assignments("bad line\n").unwrap_err().line, 1);
        let short = "1\t2\tmot\tNOUN\tI.1\tlexical\t1\t1\n";
        assert_eq!(parse_assignments(short).unwrap_err().line, 1);
    }
}
