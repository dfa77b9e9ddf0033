//! Rule-base persistence. Line-based, versioned, UTF-8:
//!
//! ```text
//! lexsense-rules v1
//! target<TAB>pos<TAB>ambiguity<TAB>KIND[:prep]<TAB>slot<TAB>L:lemma|S:classes<TAB>kind<TAB>s3<TAB>result<TAB>translation|-
//! ```
//!
//! Saving then loading reproduces the rule list and the index exactly.

use std::fmt;

use crate::dictionary::{ExampleKind, SenseId};
use crate::pos::Pos;
use crate::semlex::ClassLabel;

use super::{Rule, RuleArgument, RuleBase, RulePattern, Slot};

pub const FORMAT_HEADER: &str = "lexsense-rules v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleBaseIoError {
    #[error("line 1: expected header `{FORMAT_HEADER}`, found `{0}`")]
    VersionMismatch(String),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("rule for `{target}` contains a tab character")]
    TabInLemma { target: String },
}

fn err(line: usize, msg: impl fmt::Display) -> RuleBaseIoError {
    RuleBaseIoError::Line {
        line,
        msg: msg.to_string(),
    }
}

pub fn save_rulebase(rb: &RuleBase) -> Result<String, RuleBaseIoError> {
    let mut out = String::from(FORMAT_HEADER);
    out.push('\n');
    for rule in rb.rules() {
        out.push_str(&rule_line(rule)?);
        out.push('\n');
    }
    Ok(out)
}

fn rule_line(rule: &Rule) -> Result<String, RuleBaseIoError> {
    let no_tab = |s: &str| -> Result<(), RuleBaseIoError> {
        if s.contains('\t') {
            Err(RuleBaseIoError::TabInLemma {
                target: rule.target.clone(),
            })
        } else {
            Ok(())
        }
    };
    no_tab(&rule.target)?;
    let ambiguity = rule
        .ambiguity
        .iter()
        .map(|id| id.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let kind = match &rule.pattern.prep {
        Some(prep) => {
            no_tab(prep)?;
            format!("{}:{prep}", rule.pattern.kind)
        }
        None => rule.pattern.kind.to_string(),
    };
    let argument = match &rule.pattern.argument {
        RuleArgument::Lexical(lemma) => {
            no_tab(lemma)?;
            format!("L:{lemma}")
        }
        RuleArgument::Semantic(classes) => format!(
            "S:{}",
            classes
                .iter()
                .map(|c| c.as_str())
                .collect::<Vec<_>>()
                .join(",")
        ),
    };
    let translation = match &rule.translation_hint {
        Some(tr) => {
            no_tab(tr)?;
            tr.as_str()
        }
        None => "-",
    };
    Ok(format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        rule.target,
        rule.pos,
        ambiguity,
        kind,
        rule.pattern.target_slot.as_str(),
        argument,
        rule.source_kind.tag(),
        rule.s3,
        rule.result,
        translation,
    ))
}

pub fn load_rulebase(src: &str) -> Result<RuleBase, RuleBaseIoError> {
    let mut lines = src.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == FORMAT_HEADER => {}
        Some((_, other)) => return Err(RuleBaseIoError::VersionMismatch(other.to_string())),
        None => return Err(RuleBaseIoError::VersionMismatch(String::new())),
    }
    let mut rb = RuleBase::default();
    for (i, raw) in lines {
        let lineno = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        rb.push(parse_rule_line(line, lineno)?);
    }
    Ok(rb)
}

fn parse_rule_line(line: &str, lineno: usize) -> Result<Rule, RuleBaseIoError> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 10 {
        return Err(err(
            lineno,
            format!("expected 10 tab-separated fields, found {}", fields.len()),
        ));
    }
    let target = fields[0].to_string();
    if target.is_empty() {
        return Err(err(lineno, "empty target lemma"));
    }
    let pos: Pos = fields[1].parse().map_err(|e| err(lineno, e))?;
    let ambiguity = fields[2]
        .split(',')
        .map(|s| s.parse::<SenseId>().map_err(|e| err(lineno, e)))
        .collect::<Result<_, _>>()?;
    let (kind_str, prep) = match fields[3].split_once(':') {
        Some((k, p)) if !p.is_empty() => (k, Some(p.to_string())),
        Some(_) => return Err(err(lineno, "empty preposition after `:`")),
        None => (fields[3], None),
    };
    let kind = kind_str
        .parse::<crate::parser::RelationKind>()
        .map_err(|e| err(lineno, e))?;
    if kind.takes_prep() != prep.is_some() {
        return Err(err(
            lineno,
            format!("{kind} {} a preposition", if kind.takes_prep() { "requires" } else { "does not take" }),
        ));
    }
    let target_slot = match fields[4] {
        "head" => Slot::Head,
        "dep" => Slot::Dep,
        other => return Err(err(lineno, format!("unknown slot `{other}`"))),
    };
    let argument = match fields[5].split_once(':') {
        Some(("L", lemma)) if !lemma.is_empty() => RuleArgument::Lexical(lemma.to_string()),
        Some(("S", classes)) if !classes.is_empty() => {
            let set = classes
                .split(',')
                .map(|c| ClassLabel::new(c).map_err(|e| err(lineno, e)))
                .collect::<Result<_, _>>()?;
            RuleArgument::Semantic(set)
        }
        _ => return Err(err(lineno, "argument must be `L:lemma` or `S:class,...`")),
    };
    let source_kind = ExampleKind::from_tag(fields[6])
        .ok_or_else(|| err(lineno, format!("unknown example kind `{}`", fields[6])))?;
    let s3: u32 = fields[7].parse().map_err(|_| err(lineno, "bad s3 ordinal"))?;
    if s3 == 0 {
        return Err(err(lineno, "s3 ordinals are 1-based"));
    }
    let result: SenseId = fields[8].parse().map_err(|e| err(lineno, e))?;
    let rule = Rule {
        target,
        pos,
        ambiguity,
        pattern: RulePattern {
            kind,
            prep,
            target_slot,
            argument,
        },
        source_kind,
        s3,
        result,
        translation_hint: match fields[9] {
            "-" => None,
            tr => Some(tr.to_string()),
        },
    };
    if !rule.ambiguity.contains(&rule.result) {
        return Err(err(
            lineno,
            format!("result {} not in ambiguity set", rule.result),
        ));
    }
    Ok(rule)
}
