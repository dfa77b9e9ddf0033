//! Dictionary model and file format.
//!
//! An entry is split into POS parts, each part into numbered senses, each
//! sense carrying indicators, labels and illustrative items (collocations
//! and typed examples). Senses are addressed as `S1.S2` (part number in
//! roman numerals, sense number in decimal, e.g. `I.6`); items carry an
//! `S3` ordinal within their sense.

pub mod markup;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::pos::{DictPos, Pos};
use markup::{escape_attr, escape_text, Element, MarkupError};

/// Address of one sense: POS-part index and sense index, both 1-based.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct SenseId {
    pub s1: u32,
    pub s2: u32,
}

impl SenseId {
    pub fn new(s1: u32, s2: u32) -> SenseId {
        assert!(s1 >= 1 && s2 >= 1, "sense numbers are 1-based");
        SenseId { s1, s2 }
    }
}

const ROMAN: [(u32, &str); 13] = [
    (1000, "M"),
    (900, "CM"),
    (500, "D"),
    (400, "CD"),
    (100, "C"),
    (90, "XC"),
    (50, "L"),
    (40, "XL"),
    (10, "X"),
    (9, "IX"),
    (5, "V"),
    (4, "IV"),
    (1, "I"),
];

fn to_roman(mut n: u32) -> String {
    let mut out = String::new();
    for (value, digits) in ROMAN {
        while n >= value {
            out.push_str(digits);
            n -= value;
        }
    }
    out
}

fn from_roman(s: &str) -> Option<u32> {
    let mut n = 0u32;
    let mut rest = s;
    for (value, digits) in ROMAN {
        while let Some(r) = rest.strip_prefix(digits) {
            n += value;
            rest = r;
        }
    }
    // canonical form only: re-rendering must reproduce the input
    if rest.is_empty() && n > 0 && to_roman(n) == s {
        Some(n)
    } else {
        None
    }
}

impl fmt::Display for SenseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", to_roman(self.s1), self.s2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid sense id `{0}`")]
pub struct InvalidSenseId(pub String);

impl FromStr for SenseId {
    type Err = InvalidSenseId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InvalidSenseId(s.to_string());
        let (roman, dec) = s.split_once('.').ok_or_else(bad)?;
        let s1 = from_roman(roman).ok_or_else(bad)?;
        if dec.is_empty() || dec.starts_with('0') || !dec.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let s2: u32 = dec.parse().map_err(|_| bad())?;
        Ok(SenseId { s1, s2 })
    }
}

/// Kind of illustrative item, one per source tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExampleKind {
    Collocation,
    Compound,
    Idiom,
    PhrasalVerb,
    Structure,
    Usage,
    General,
}

impl ExampleKind {
    pub const ALL: [ExampleKind; 7] = [
        ExampleKind::Collocation,
        ExampleKind::Compound,
        ExampleKind::Idiom,
        ExampleKind::PhrasalVerb,
        ExampleKind::Structure,
        ExampleKind::Usage,
        ExampleKind::General,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            ExampleKind::Collocation => "co",
            ExampleKind::Compound => "lc",
            ExampleKind::Idiom => "li",
            ExampleKind::PhrasalVerb => "lv",
            ExampleKind::Structure => "ls",
            ExampleKind::Usage => "lu",
            ExampleKind::General => "le",
        }
    }

    pub fn from_tag(tag: &str) -> Option<ExampleKind> {
        ExampleKind::ALL.into_iter().find(|k| k.tag() == tag)
    }
}

/// Grammatical role of a collocation relative to the headword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CollocRole {
    Subject,
    Object,
    ModifiedNoun,
}

impl CollocRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            CollocRole::Subject => "subj",
            CollocRole::Object => "obj",
            CollocRole::ModifiedNoun => "mod",
        }
    }

    pub fn from_str_opt(s: &str) -> Option<CollocRole> {
        match s {
            "subj" => Some(CollocRole::Subject),
            "obj" => Some(CollocRole::Object),
            "mod" => Some(CollocRole::ModifiedNoun),
            _ => None,
        }
    }
}

/// One collocation or example attached to a sense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IllustrativeItem {
    pub kind: ExampleKind,
    /// Ordinal within the sense, 1-based, consecutive in document order.
    pub s3: u32,
    /// Example phrase, or the collocate lemma for collocations
    /// (multiword collocates joined with underscores).
    pub text: String,
    /// Present exactly when `kind` is `Collocation`.
    pub colloc_role: Option<CollocRole>,
    pub translation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sense {
    pub id: SenseId,
    pub indicators: Vec<String>,
    pub labels: Vec<String>,
    pub gloss: Option<String>,
    pub translation: Option<String>,
    pub items: Vec<IllustrativeItem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosPart {
    /// Raw part tag as written in the dictionary (`vtr`, `vpr`, `nf`, ...).
    pub tag: String,
    pub senses: Vec<Sense>,
}

impl PosPart {
    pub fn pos(&self) -> DictPos {
        DictPos::from_tag(&self.tag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictionaryEntry {
    pub headword: String,
    /// Phonetic transcription, kept as opaque text.
    pub phonetic: Option<String>,
    pub parts: Vec<PosPart>,
}

impl DictionaryEntry {
    /// Id of the first sense of the first part matching `pos` (and the
    /// token's reflexive marking, which pronominal-verb parts require).
    pub fn first_sense(&self, pos: Pos, reflexive: bool) -> Result<SenseId, NoMatchingPos> {
        self.parts
            .iter()
            .find(|part| part.pos().matches_token(pos, reflexive))
            .and_then(|part| part.senses.first())
            .map(|sense| sense.id)
            .ok_or_else(|| NoMatchingPos {
                headword: self.headword.clone(),
                pos,
            })
    }

    pub fn sense(&self, id: SenseId) -> Option<&Sense> {
        let part = self.parts.get(id.s1 as usize - 1)?;
        part.senses.get(id.s2 as usize - 1)
    }

    /// All sense ids of parts whose rules are indexed under `pos`
    /// (the ambiguity class of the entry for that POS).
    pub fn ambiguity(&self, pos: Pos) -> std::collections::BTreeSet<SenseId> {
        self.parts
            .iter()
            .filter(|part| part.pos().rule_pos() == Some(pos))
            .flat_map(|part| part.senses.iter().map(|s| s.id))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{headword}` has no part matching POS {pos}")]
pub struct NoMatchingPos {
    pub headword: String,
    pub pos: Pos,
}

#[derive(Debug, thiserror::Error)]
pub enum DictError {
    #[error(transparent)]
    Markup(#[from] MarkupError),
    #[error("structural error at {line}:{col} in entry `{headword}`: {msg}")]
    Structure {
        headword: String,
        line: usize,
        col: usize,
        msg: String,
    },
}

/// A parsed dictionary: entries in document order, indexed by headword.
#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    entries: Vec<DictionaryEntry>,
    by_headword: HashMap<String, usize>,
}

impl Dictionary {
    pub fn from_entries(entries: Vec<DictionaryEntry>) -> Dictionary {
        let mut dict = Dictionary::default();
        for entry in entries {
            dict.insert(entry);
        }
        for entry in &mut dict.entries {
            assign_sense_numbers(entry);
        }
        dict
    }

    fn insert(&mut self, entry: DictionaryEntry) {
        match self.by_headword.get(&entry.headword) {
            // duplicate headwords merge by appending parts
            Some(&i) => self.entries[i].parts.extend(entry.parts),
            None => {
                self.by_headword
                    .insert(entry.headword.clone(), self.entries.len());
                self.entries.push(entry);
            }
        }
    }

    pub fn parse(src: &str) -> Result<Dictionary, DictError> {
        if src.trim().is_empty() {
            return Ok(Dictionary::default());
        }
        let root = markup::parse_document(src)?;
        if root.name != "dictionary" {
            return Err(MarkupError {
                line: root.line,
                col: root.col,
                msg: format!("expected root element <dictionary>, found <{}>", root.name),
            }
            .into());
        }
        let mut entries = Vec::new();
        for child in root.child_elements() {
            if child.name == "entry" {
                entries.push(parse_entry(child)?);
            }
            // unknown elements under the root are ignored
        }
        Ok(Dictionary::from_entries(entries))
    }

    pub fn entries(&self) -> &[DictionaryEntry] {
        &self.entries
    }

    pub fn get(&self, headword: &str) -> Option<&DictionaryEntry> {
        self.by_headword.get(headword).map(|&i| &self.entries[i])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Canonical serialization; parsing it back yields an equal dictionary.
    pub fn to_markup(&self) -> String {
        let mut out = String::from("<dictionary>\n");
        for entry in &self.entries {
            write_entry(&mut out, entry);
        }
        out.push_str("</dictionary>\n");
        out
    }
}

fn parse_entry(el: &Element) -> Result<DictionaryEntry, DictError> {
    let headword = el
        .child_elements()
        .find(|c| c.name == "hw")
        .map(|c| c.direct_text())
        .filter(|t| !t.is_empty())
        .ok_or_else(|| DictError::Structure {
            headword: "<unknown>".to_string(),
            line: el.line,
            col: el.col,
            msg: "entry has no <hw> headword".to_string(),
        })?;
    let structure = |el: &Element, msg: String| DictError::Structure {
        headword: headword.clone(),
        line: el.line,
        col: el.col,
        msg,
    };

    let phonetic = el
        .child_elements()
        .find(|c| c.name == "ph")
        .map(|c| c.direct_text())
        .filter(|t| !t.is_empty());

    let mut parts = Vec::new();
    for child in el.child_elements() {
        if child.name != "pos" {
            continue;
        }
        let tag = child
            .attr("tag")
            .map(str::to_string)
            .filter(|t| !t.is_empty())
            .ok_or_else(|| structure(child, "<pos> without tag attribute".to_string()))?;
        let mut senses = Vec::new();
        for sense_el in child.child_elements() {
            if sense_el.name != "sense" {
                continue;
            }
            senses.push(parse_sense(sense_el, &headword)?);
        }
        if senses.is_empty() {
            return Err(structure(
                child,
                format!("<pos tag=\"{tag}\"> has no senses"),
            ));
        }
        parts.push(PosPart { tag, senses });
    }
    if parts.is_empty() {
        return Err(structure(el, "entry has no <pos> parts".to_string()));
    }
    Ok(DictionaryEntry {
        headword,
        phonetic,
        parts,
    })
}

fn parse_sense(el: &Element, headword: &str) -> Result<Sense, DictError> {
    let mut sense = Sense {
        id: SenseId::new(1, 1), // reassigned by assign_sense_numbers
        indicators: Vec::new(),
        labels: Vec::new(),
        gloss: None,
        translation: None,
        items: Vec::new(),
    };
    for child in el.child_elements() {
        match child.name.as_str() {
            "ic" => sense.indicators.push(child.direct_text()),
            "la" => sense.labels.push(child.direct_text()),
            "gl" => sense.gloss = Some(child.direct_text()),
            "tr" => sense.translation = Some(child.direct_text()),
            "co" => {
                let role = child
                    .attr("role")
                    .and_then(CollocRole::from_str_opt)
                    .ok_or_else(|| DictError::Structure {
                        headword: headword.to_string(),
                        line: child.line,
                        col: child.col,
                        msg: "<co> requires role=\"subj|obj|mod\"".to_string(),
                    })?;
                sense.items.push(IllustrativeItem {
                    kind: ExampleKind::Collocation,
                    s3: 0,
                    text: child.direct_text(),
                    colloc_role: Some(role),
                    translation: item_translation(child),
                });
            }
            tag => {
                if let Some(kind) = ExampleKind::from_tag(tag) {
                    sense.items.push(IllustrativeItem {
                        kind,
                        s3: 0,
                        text: child.direct_text(),
                        colloc_role: None,
                        translation: item_translation(child),
                    });
                }
                // unknown tags are ignored
            }
        }
    }
    Ok(sense)
}

fn item_translation(el: &Element) -> Option<String> {
    el.child_elements()
        .find(|c| c.name == "tr")
        .map(|c| c.direct_text())
        .filter(|t| !t.is_empty())
}

/// Number every sense `(part position, sense position)` and every item with
/// a consecutive S3 ordinal from 1. Idempotent and order-preserving.
pub fn assign_sense_numbers(entry: &mut DictionaryEntry) {
    for (pi, part) in entry.parts.iter_mut().enumerate() {
        for (si, sense) in part.senses.iter_mut().enumerate() {
            sense.id = SenseId::new(pi as u32 + 1, si as u32 + 1);
            for (ii, item) in sense.items.iter_mut().enumerate() {
                item.s3 = ii as u32 + 1;
            }
        }
    }
}

fn write_entry(out: &mut String, entry: &DictionaryEntry) {
    out.push_str("  <entry>\n");
    out.push_str(&format!("    <hw>{}</hw>\n", escape_text(&entry.headword)));
    if let Some(ph) = &entry.phonetic {
        out.push_str(&format!("    <ph>{}</ph>\n", escape_text(ph)));
    }
    for part in &entry.parts {
        out.push_str(&format!("    <pos tag=\"{}\">\n", escape_attr(&part.tag)));
        for sense in &part.senses {
            out.push_str("      <sense>\n");
            for ic in &sense.indicators {
                out.push_str(&format!("        <ic>{}</ic>\n", escape_text(ic)));
            }
            for la in &sense.labels {
                out.push_str(&format!("        <la>{}</la>\n", escape_text(la)));
            }
            if let Some(gl) = &sense.gloss {
                out.push_str(&format!("        <gl>{}</gl>\n", escape_text(gl)));
            }
            if let Some(tr) = &sense.translation {
                out.push_str(&format!("        <tr>{}</tr>\n", escape_text(tr)));
            }
            for item in &sense.items {
                let tag = item.kind.tag();
                let role = match item.colloc_role {
                    Some(role) => format!(" role=\"{}\"", role.as_str()),
                    None => String::new(),
                };
                let tr = match &item.translation {
                    Some(tr) => format!("<tr>{}</tr>", escape_text(tr)),
                    None => String::new(),
                };
                out.push_str(&format!(
                    "        <{tag}{role}>{}{tr}</{tag}>\n",
                    escape_text(&item.text)
                ));
            }
            out.push_str("      </sense>\n");
        }
        out.push_str("    </pos>\n");
    }
    out.push_str("  </entry>\n");
}

/// Rule-base coverage counters over a dictionary (the shape of the usual
/// "entries / covered entries / mean rules per covered entry" summary).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DictionaryStats {
    pub total_entries: usize,
    pub covered_entries: usize,
    /// Mean number of rules per covered entry, rounded to one decimal;
    /// 0.0 when nothing is covered.
    pub mean_rules_per_covered: f64,
}

pub fn dictionary_stats(dict: &Dictionary, rulebase: &crate::rulebase::RuleBase) -> DictionaryStats {
    let covered = dict
        .entries()
        .iter()
        .filter(|e| !rulebase.rules_for(&e.headword).is_empty())
        .count();
    let mean = if covered == 0 {
        0.0
    } else {
        let total_rules: usize = dict
            .entries()
            .iter()
            .map(|e| rulebase.rules_for(&e.headword).len())
            .sum();
        (total_rules as f64 / covered as f64 * 10.0).round() / 10.0
    };
    DictionaryStats {
        total_entries: dict.len(),
        covered_entries: covered,
        mean_rules_per_covered: mean,
    }
}
