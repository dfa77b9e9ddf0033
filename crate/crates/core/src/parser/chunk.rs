//! Longest-match chunking cascade.
//!
//! At each position every pattern is tried and the longest match wins
//! (ties resolved in the fixed order PP, NP, VC, AP). Unmatched tokens
//! stay outside any chunk.

use crate::pos::Pos;

use super::{Chunk, ChunkKind, Token};

/// Clitic surfaces that may open or continue a verb cluster.
/// First/second-person forms are treated as object clitics; their subject
/// reading is not recovered.
const OBJ_CLITIC_SURFACES: [&str; 16] = [
    "le", "la", "les", "l'", "lui", "leur", "y", "en", "me", "m'", "te", "t'", "se", "s'", "nous",
    "vous",
];

const NEGATION_TAILS: [&str; 5] = ["pas", "plus", "jamais", "point", "rien"];

pub(super) fn is_obj_clitic(token: &Token) -> bool {
    token.pos == Pos::Pronoun
        && OBJ_CLITIC_SURFACES.contains(&token.surface.to_lowercase().as_str())
}

fn is_ne(token: &Token) -> bool {
    token.pos == Pos::Adverb && matches!(token.lemma.as_str(), "ne" | "n'")
}

fn is_negation_tail(token: &Token) -> bool {
    token.pos == Pos::Adverb && NEGATION_TAILS.contains(&token.lemma.as_str())
}

/// `det? adj* noun+` starting at `i`, or a lone pronoun.
fn match_np(tokens: &[Token], i: usize) -> Option<usize> {
    if tokens.get(i)?.pos == Pos::Pronoun {
        return Some(i + 1);
    }
    let mut j = i;
    if tokens.get(j).map(|t| t.pos) == Some(Pos::Determiner) && !tokens[j].feats.prep_det {
        j += 1;
    }
    while tokens.get(j).map(|t| t.pos) == Some(Pos::Adjective) {
        j += 1;
    }
    let nouns_from = j;
    while tokens.get(j).map(|t| t.pos) == Some(Pos::Noun) {
        j += 1;
    }
    if j > nouns_from {
        Some(j)
    } else {
        None
    }
}

/// NP core after a preposition: like [`match_np`] but a contracted
/// determiner already supplies the determiner slot.
fn match_np_after_prep(tokens: &[Token], i: usize, det_supplied: bool) -> Option<usize> {
    if tokens.get(i)?.pos == Pos::Pronoun {
        return Some(i + 1);
    }
    let mut j = i;
    if !det_supplied
        && tokens.get(j).map(|t| t.pos) == Some(Pos::Determiner)
        && !tokens[j].feats.prep_det
    {
        j += 1;
    }
    while tokens.get(j).map(|t| t.pos) == Some(Pos::Adjective) {
        j += 1;
    }
    let nouns_from = j;
    while tokens.get(j).map(|t| t.pos) == Some(Pos::Noun) {
        j += 1;
    }
    if j > nouns_from {
        Some(j)
    } else {
        None
    }
}

/// Preposition (or contracted determiner) followed by an NP core.
fn match_pp(tokens: &[Token], i: usize) -> Option<usize> {
    let first = tokens.get(i)?;
    if first.pos == Pos::Preposition {
        match_np_after_prep(tokens, i + 1, false)
    } else if first.pos == Pos::Determiner && first.feats.prep_det {
        match_np_after_prep(tokens, i + 1, true)
    } else {
        None
    }
}

/// Verb cluster: `ne? clitic* aux* negation* verb`. Negation particles and
/// object clitics are transparent. If the auxiliary chain is not followed by
/// a verb the last auxiliary is taken as the main verb.
fn match_vc(tokens: &[Token], i: usize) -> Option<usize> {
    let mut j = i;
    if tokens.get(j).map(is_ne) == Some(true) {
        j += 1;
    }
    while tokens.get(j).map(is_obj_clitic) == Some(true) {
        j += 1;
    }
    let aux_from = j;
    while tokens.get(j).map(|t| t.pos == Pos::Verb && t.feats.auxiliary) == Some(true) {
        j += 1;
    }
    let aux_end = j;
    while tokens.get(j).map(is_negation_tail) == Some(true) {
        j += 1;
    }
    if tokens.get(j).map(|t| t.pos == Pos::Verb && !t.feats.auxiliary) == Some(true) {
        Some(j + 1)
    } else if aux_end > aux_from {
        // auxiliary chain with no participle: last auxiliary is the verb
        Some(aux_end)
    } else {
        None
    }
}

/// `adv? adj`.
fn match_ap(tokens: &[Token], i: usize) -> Option<usize> {
    match tokens.get(i)?.pos {
        Pos::Adjective => Some(i + 1),
        Pos::Adverb if tokens.get(i + 1).map(|t| t.pos) == Some(Pos::Adjective) => Some(i + 2),
        _ => None,
    }
}

/// Chunk a sentence. Chunks are non-overlapping contiguous spans covering a
/// subset of the tokens; conjunctions become single-token SC chunks.
pub fn chunk(tokens: &[Token]) -> Vec<Chunk> {
    let mut chunks = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if tokens[i].pos == Pos::Conjunction {
            chunks.push(Chunk {
                kind: ChunkKind::Sc,
                span: i..i + 1,
            });
            i += 1;
            continue;
        }
        let candidates = [
            (ChunkKind::Pp, match_pp(tokens, i)),
            (ChunkKind::Np, match_np(tokens, i)),
            (ChunkKind::Vc, match_vc(tokens, i)),
            (ChunkKind::Ap, match_ap(tokens, i)),
        ];
        let best = candidates
            .into_iter()
            .filter_map(|(kind, end)| end.map(|e| (kind, e)))
            .max_by_key(|&(kind, end)| {
                // longest match; on ties the earlier pattern in the cascade
                let priority = match kind {
                    ChunkKind::Pp => 3,
                    ChunkKind::Np => 2,
                    ChunkKind::Vc => 1,
                    _ => 0,
                };
                (end, priority)
            });
        match best {
            Some((kind, end)) if end > i => {
                chunks.push(Chunk { kind, span: i..end });
                i = end;
            }
            _ => i += 1,
        }
    }
    chunks
}
