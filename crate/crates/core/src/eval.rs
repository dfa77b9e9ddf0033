//! Scoring against a gold-annotated corpus: precision and coverage per
//! POS × rule type, default-sense accuracy reported separately.
//!
//! Coverage counts the rule-fired fraction (lexical or semantic) of the
//! gold words; the default fallback is not coverage. Precision is measured
//! over fired words only. Undefined cells (no fired words) render as `—`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::assignments::{AssignmentRecord, MethodTag};
use crate::dictionary::SenseId;
use crate::pos::Pos;

/// One gold item; several acceptable senses may be listed, any match
/// counts as correct.
#[derive(Debug, Clone, PartialEq)]
pub struct GoldItem {
    pub sent: usize,
    pub token_index: usize,
    pub lemma: String,
    pub pos: Pos,
    pub senses: Vec<SenseId>,
    pub unassignable: bool,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("line {line}: {msg}")]
    Gold { line: usize, msg: String },
    #[error("system/gold token mismatch at: {}", format_positions(.0))]
    Alignment(Vec<(usize, usize, String)>),
}

fn format_positions(positions: &[(usize, usize, String)]) -> String {
    positions
        .iter()
        .map(|(s, t, why)| format!("sent {s} tok {t} ({why})"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn gold_err(line: usize, msg: impl fmt::Display) -> EvalError {
    EvalError::Gold {
        line,
        msg: msg.to_string(),
    }
}

/// Gold file: `sent<TAB>tokidx<TAB>lemma<TAB>pos<TAB>sense[,sense...]|UNASSIGNABLE`.
pub fn parse_gold(src: &str) -> Result<Vec<GoldItem>, EvalError> {
    let mut items = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, raw) in src.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 5 {
            return Err(gold_err(
                lineno,
                format!("expected 5 tab-separated fields, found {}", fields.len()),
            ));
        }
        let sent: usize = fields[0]
            .parse()
            .map_err(|_| gold_err(lineno, "bad sentence number"))?;
        let token_index: usize = fields[1]
            .parse()
            .map_err(|_| gold_err(lineno, "bad token index"))?;
        if let Some(first) = seen.insert((sent, token_index), lineno) {
            return Err(gold_err(
                lineno,
                format!("duplicate (sentence, token) pair, first seen on line {first}"),
            ));
        }
        let pos: Pos = fields[3].parse().map_err(|e| gold_err(lineno, e))?;
        let (senses, unassignable) = if fields[4] == "UNASSIGNABLE" {
            (Vec::new(), true)
        } else {
            let senses = fields[4]
                .split(',')
                .map(|s| s.parse::<SenseId>().map_err(|e| gold_err(lineno, e)))
                .collect::<Result<Vec<_>, _>>()?;
            (senses, false)
        };
        items.push(GoldItem {
            sent,
            token_index,
            lemma: fields[2].to_string(),
            pos,
            senses,
            unassignable,
        });
    }
    Ok(items)
}

/// Fired/correct counts for one POS row.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RowCounts {
    pub gold_total: usize,
    pub lex_fired: usize,
    pub lex_correct: usize,
    pub sem_fired: usize,
    pub sem_correct: usize,
    pub defaults: usize,
    pub default_correct: usize,
    pub not_in_dictionary: usize,
    pub no_matching_pos: usize,
}

impl RowCounts {
    fn add(&mut self, other: &RowCounts) {
        self.gold_total += other.gold_total;
        self.lex_fired += other.lex_fired;
        self.lex_correct += other.lex_correct;
        self.sem_fired += other.sem_fired;
        self.sem_correct += other.sem_correct;
        self.defaults += other.defaults;
        self.default_correct += other.default_correct;
        self.not_in_dictionary += other.not_in_dictionary;
        self.no_matching_pos += other.no_matching_pos;
    }

    pub fn precision_lexical(&self) -> Option<f64> {
        ratio(self.lex_correct, self.lex_fired)
    }

    pub fn precision_semantic(&self) -> Option<f64> {
        ratio(self.sem_correct, self.sem_fired)
    }

    /// Pooled over both rule types (micro-average).
    pub fn precision_all(&self) -> Option<f64> {
        ratio(
            self.lex_correct + self.sem_correct,
            self.lex_fired + self.sem_fired,
        )
    }

    pub fn coverage_lexical(&self) -> Option<f64> {
        ratio(self.lex_fired, self.gold_total)
    }

    pub fn coverage_semantic(&self) -> Option<f64> {
        ratio(self.sem_fired, self.gold_total)
    }

    pub fn coverage_all(&self) -> Option<f64> {
        ratio(self.lex_fired + self.sem_fired, self.gold_total)
    }

    pub fn default_accuracy(&self) -> Option<f64> {
        ratio(self.default_correct, self.defaults)
    }
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    if den == 0 {
        None
    } else {
        Some(num as f64 / den as f64)
    }
}

/// Precision/coverage per POS row plus the pooled row.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvalReport {
    pub rows: BTreeMap<Pos, RowCounts>,
    pub all: RowCounts,
    pub unassignable: usize,
}

/// Score system records against gold items. Every gold item must have a
/// system outcome at the same (sentence, token) position with the same
/// lemma; offenders are collected into one alignment error.
pub fn evaluate(records: &[AssignmentRecord], gold: &[GoldItem]) -> Result<EvalReport, EvalError> {
    let mut by_pos: HashMap<(usize, usize), &AssignmentRecord> = HashMap::new();
    for rec in records {
        by_pos.insert((rec.sent, rec.token_index), rec);
    }
    let mut offenders = Vec::new();
    let mut report = EvalReport::default();
    for item in gold {
        let Some(rec) = by_pos.get(&(item.sent, item.token_index)) else {
            offenders.push((item.sent, item.token_index, "no system outcome".to_string()));
            continue;
        };
        if rec.lemma != item.lemma {
            offenders.push((
                item.sent,
                item.token_index,
                format!("lemma `{}` vs gold `{}`", rec.lemma, item.lemma),
            ));
            continue;
        }
        if item.unassignable {
            report.unassignable += 1;
            continue;
        }
        let row = report.rows.entry(item.pos).or_default();
        row.gold_total += 1;
        let correct = rec
            .sense
            .map(|s| item.senses.contains(&s))
            .unwrap_or(false);
        match rec.method {
            MethodTag::Lexical => {
                row.lex_fired += 1;
                if correct {
                    row.lex_correct += 1;
                }
            }
            MethodTag::Semantic => {
                row.sem_fired += 1;
                if correct {
                    row.sem_correct += 1;
                }
            }
            MethodTag::Default => {
                row.defaults += 1;
                if correct {
                    row.default_correct += 1;
                }
            }
            MethodTag::NotInDictionary => row.not_in_dictionary += 1,
            MethodTag::NoMatchingPos => row.no_matching_pos += 1,
        }
    }
    if !offenders.is_empty() {
        return Err(EvalError::Alignment(offenders));
    }
    for row in report.rows.values() {
        report.all.add(row);
    }
    Ok(report)
}

fn cell(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.2}"),
        None => "—".to_string(),
    }
}

fn pos_label(pos: Pos) -> &'static str {
    match pos {
        Pos::Noun => "Nouns",
        Pos::Verb => "Verbs",
        Pos::Adjective => "Adj.",
        other => other.as_str(),
    }
}

impl EvalReport {
    /// Aligned table in the precision/coverage per POS × rule type layout,
    /// followed by a machine-readable key=value block.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<8} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}\n",
            "Cat.", "Prec.Lex", "Prec.Sem", "Prec.All", "Cov.Lex", "Cov.Sem", "Cov.All"
        ));
        let mut line = |label: &str, row: &RowCounts| {
            out.push_str(&format!(
                "{:<8} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}\n",
                label,
                cell(row.precision_lexical()),
                cell(row.precision_semantic()),
                cell(row.precision_all()),
                cell(row.coverage_lexical()),
                cell(row.coverage_semantic()),
                cell(row.coverage_all()),
            ));
        };
        for (&pos, row) in &self.rows {
            line(pos_label(pos), row);
        }
        line("Total", &self.all);
        out.push('\n');
        out.push_str(&format!(
            "Default-sense accuracy: {} ({} of {} defaults correct)\n",
            cell(self.all.default_accuracy()),
            self.all.default_correct,
            self.all.defaults,
        ));
        out.push_str(&format!(
            "Words not in dictionary: {}; no matching POS part: {}; unassignable gold items: {}\n",
            self.all.not_in_dictionary, self.all.no_matching_pos, self.unassignable
        ));
        out.push('\n');
        out.push_str(&self.render_machine());
        out
    }

    fn machine_value(value: Option<f64>) -> String {
        match value {
            Some(v) => format!("{v}"),
            None => "-".to_string(),
        }
    }

    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        let mut emit = |prefix: &str, row: &RowCounts| {
            out.push_str(&format!("{prefix}.gold={}\n", row.gold_total));
            out.push_str(&format!(
                "{prefix}.precision.lexical={}\n",
                Self::machine_value(row.precision_lexical())
            ));
            out.push_str(&format!(
                "{prefix}.precision.semantic={}\n",
                Self::machine_value(row.precision_semantic())
            ));
            out.push_str(&format!(
                "{prefix}.precision.all={}\n",
                Self::machine_value(row.precision_all())
            ));
            out.push_str(&format!(
                "{prefix}.coverage.lexical={}\n",
                Self::machine_value(row.coverage_lexical())
            ));
            out.push_str(&format!(
                "{prefix}.coverage.semantic={}\n",
                Self::machine_value(row.coverage_semantic())
            ));
            out.push_str(&format!(
                "{prefix}.coverage.all={}\n",
                Self::machine_value(row.coverage_all())
            ));
            out.push_str(&format!(
                "{prefix}.default.accuracy={}\n",
                Self::machine_value(row.default_accuracy())
            ));
            out.push_str(&format!("{prefix}.default.count={}\n", row.defaults));
            out.push_str(&format!(
                "{prefix}.notindict={}\n",
                row.not_in_dictionary
            ));
        };
        for (&pos, row) in &self.rows {
            emit(&format!("pos.{}", pos.as_str().to_lowercase()), row);
        }
        emit("all", &self.all);
        out.push_str(&format!("unassignable={}\n", self.unassignable));
        out
    }
}
