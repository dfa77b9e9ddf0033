//! Functional-relation extraction over the chunk stream.
//!
//! Works clause by clause: punctuation, conjunctions (SC chunks) and the
//! relative pronoun `qui` close the current clause. Inside a clause the
//! extractor attaches subjects, objects, PP modifiers and adjectives to
//! the nearest plausible governor, all by fixed deterministic scans.

use std::collections::BTreeSet;

use crate::pos::Pos;

use super::chunk::chunk;
use super::{Chunk, ChunkKind, Relation, RelationKind, Token};

const COPULAS: [&str; 6] = ["être", "sembler", "paraître", "devenir", "rester", "demeurer"];

/// Clitic surfaces emitted as direct objects of their verb cluster.
/// `se`/`s'` mark reflexivity instead; `y`, `en`, `lui`, `leur` are oblique.
const DOBJ_CLITIC_SURFACES: [&str; 10] =
    ["le", "la", "les", "l'", "me", "m'", "te", "t'", "nous", "vous"];

/// Chunking plus relation extraction for one sentence.
#[derive(Debug, Clone)]
pub struct SentenceAnalysis {
    pub chunks: Vec<Chunk>,
    pub relations: BTreeSet<Relation>,
    /// Token indices of verbs used reflexively (a `se` clitic in the verb
    /// cluster, or a reflexive-flagged token).
    pub reflexive_verbs: BTreeSet<usize>,
}

pub fn analyze(tokens: &[Token]) -> SentenceAnalysis {
    let chunks = chunk(tokens);
    let relations = extract_relations(tokens, &chunks);
    let mut reflexive_verbs: BTreeSet<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.pos == Pos::Verb && t.feats.reflexive)
        .map(|(i, _)| i)
        .collect();
    for c in chunks.iter().filter(|c| c.kind == ChunkKind::Vc) {
        let vc = VcInfo::read(tokens, c);
        if vc.reflexive {
            reflexive_verbs.insert(vc.main);
        }
    }
    SentenceAnalysis {
        chunks,
        relations,
        reflexive_verbs,
    }
}

/// Index of the nominal head of an NP or PP span: the last noun, else the
/// last pronoun.
fn nominal_head(tokens: &[Token], chunk: &Chunk) -> Option<usize> {
    let span = chunk.span.clone();
    let mut pron = None;
    let mut noun = None;
    for i in span {
        match tokens[i].pos {
            Pos::Noun => noun = Some(i),
            Pos::Pronoun => pron = Some(i),
            _ => {}
        }
    }
    noun.or(pron)
}

struct VcInfo {
    main: usize,
    finite: bool,
    passive: bool,
    copular: bool,
    reflexive: bool,
    clitic_objects: Vec<usize>,
}

impl VcInfo {
    fn read(tokens: &[Token], chunk: &Chunk) -> VcInfo {
        let main = chunk.span.end - 1;
        let mut finite = false;
        let mut etre_aux = false;
        let mut reflexive = tokens[main].feats.reflexive;
        let mut clitic_objects = Vec::new();
        for i in chunk.span.clone() {
            let tok = &tokens[i];
            if tok.feats.finite {
                finite = true;
            }
            if i != main && tok.pos == Pos::Verb && tok.feats.auxiliary && tok.lemma == "être" {
                etre_aux = true;
            }
            if tok.pos == Pos::Pronoun {
                let surface = tok.surface.to_lowercase();
                if surface == "se" || surface == "s'" {
                    reflexive = true;
                } else if DOBJ_CLITIC_SURFACES.contains(&surface.as_str()) {
                    clitic_objects.push(i);
                }
            }
        }
        let passive = etre_aux && tokens[main].feats.past_participle;
        let copular = !passive && COPULAS.contains(&tokens[main].lemma.as_str());
        VcInfo {
            main,
            finite,
            passive,
            copular,
            reflexive,
            clitic_objects,
        }
    }
}

struct Clause<'a> {
    chunks: Vec<&'a Chunk>,
    /// Antecedent noun when the clause is a `qui` relative.
    antecedent: Option<usize>,
}

fn split_clauses<'a>(tokens: &[Token], chunks: &'a [Chunk]) -> Vec<Clause<'a>> {
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current = Clause {
        chunks: Vec::new(),
        antecedent: None,
    };
    let mut last_nominal: Option<usize> = None;
    let mut prev_end = 0;
    let flush = |current: &mut Clause<'a>, clauses: &mut Vec<Clause<'a>>| {
        if !current.chunks.is_empty() || current.antecedent.is_some() {
            clauses.push(std::mem::replace(
                current,
                Clause {
                    chunks: Vec::new(),
                    antecedent: None,
                },
            ));
        } else {
            current.antecedent = None;
        }
    };
    for c in chunks {
        if tokens[prev_end..c.span.start]
            .iter()
            .any(|t| t.pos == Pos::Punctuation)
        {
            flush(&mut current, &mut clauses);
        }
        prev_end = c.span.end;
        match c.kind {
            ChunkKind::Sc => flush(&mut current, &mut clauses),
            ChunkKind::Np
                if c.span.len() == 1
                    && tokens[c.span.start].pos == Pos::Pronoun
                    && tokens[c.span.start].lemma == "qui" =>
            {
                flush(&mut current, &mut clauses);
                current.antecedent = last_nominal;
            }
            _ => {
                if matches!(c.kind, ChunkKind::Np | ChunkKind::Pp) {
                    if let Some(head) = nominal_head(tokens, c) {
                        last_nominal = Some(head);
                    }
                }
                current.chunks.push(c);
            }
        }
    }
    flush(&mut current, &mut clauses);
    clauses
}

/// Extract the relation set of one chunked sentence.
pub fn extract_relations(tokens: &[Token], chunks: &[Chunk]) -> BTreeSet<Relation> {
    let mut out = BTreeSet::new();
    for clause in split_clauses(tokens, chunks) {
        extract_clause(tokens, &clause, &mut out);
    }
    out
}

fn extract_clause(tokens: &[Token], clause: &Clause, out: &mut BTreeSet<Relation>) {
    let chunks = &clause.chunks;
    let lemma = |i: usize| tokens[i].lemma.as_str();
    let mut first_vc = true;

    for (c, chunk) in chunks.iter().enumerate() {
        match chunk.kind {
            ChunkKind::Vc => {
                let vc = VcInfo::read(tokens, chunk);
                let verb = (lemma(vc.main), vc.main);

                // subject: relative antecedent for the clause's first VC,
                // otherwise the nearest preceding NP (PPs and APs are
                // transparent, another VC blocks)
                let mut subject = None;
                let mut relative = false;
                if first_vc && clause.antecedent.is_some() {
                    subject = clause.antecedent;
                    relative = true;
                } else {
                    for prev in chunks[..c].iter().rev() {
                        match prev.kind {
                            ChunkKind::Np => {
                                subject = nominal_head(tokens, prev);
                                break;
                            }
                            ChunkKind::Ap | ChunkKind::Pp => continue,
                            _ => break,
                        }
                    }
                }
                if let Some(subj) = subject {
                    if vc.finite {
                        let kind = if vc.passive {
                            RelationKind::Subjpass
                        } else if relative {
                            RelationKind::Relsubj
                        } else {
                            RelationKind::Subj
                        };
                        out.insert(Relation::new(kind, (lemma(subj), subj), verb, None));
                    }
                }

                for &cl in &vc.clitic_objects {
                    out.insert(Relation::new(
                        RelationKind::Dobj,
                        verb,
                        (lemma(cl), cl),
                        None,
                    ));
                }

                if vc.copular {
                    if let (Some(subj), Some(next)) = (subject, chunks.get(c + 1)) {
                        if next.kind == ChunkKind::Ap {
                            let adj = next.span.end - 1;
                            out.insert(Relation::new(
                                RelationKind::Attr,
                                (lemma(subj), subj),
                                (lemma(adj), adj),
                                None,
                            ));
                        }
                    }
                } else if !vc.passive {
                    // direct object: first following NP with no intervening
                    // preposition; a PP or another VC closes the window
                    for next in &chunks[c + 1..] {
                        match next.kind {
                            ChunkKind::Ap => continue,
                            ChunkKind::Np => {
                                let gap = &tokens[chunk.span.end..next.span.start];
                                let blocked = gap.iter().any(|t| {
                                    t.pos == Pos::Preposition
                                        || (t.pos == Pos::Determiner && t.feats.prep_det)
                                });
                                if !blocked {
                                    if let Some(obj) = nominal_head(tokens, next) {
                                        out.insert(Relation::new(
                                            RelationKind::Dobj,
                                            verb,
                                            (lemma(obj), obj),
                                            None,
                                        ));
                                    }
                                }
                                break;
                            }
                            _ => break,
                        }
                    }
                }
                first_vc = false;
            }
            ChunkKind::Pp => {
                let prep = lemma(chunk.span.start);
                let Some(head) = nominal_head(tokens, chunk) else {
                    continue;
                };
                let pp_head = (lemma(head), head);

                // attach to the nearest preceding verb cluster
                let governing_vc = chunks[..c]
                    .iter()
                    .rev()
                    .find(|prev| prev.kind == ChunkKind::Vc);
                if let Some(vc_chunk) = governing_vc {
                    let vc = VcInfo::read(tokens, vc_chunk);
                    let verb = (lemma(vc.main), vc.main);
                    if vc.passive && prep == "par" {
                        out.insert(Relation::new(RelationKind::Pagent, verb, pp_head, None));
                    } else {
                        out.insert(Relation::new(
                            RelationKind::Vmodobj,
                            verb,
                            pp_head,
                            Some(prep),
                        ));
                    }
                }

                // noun attachment: the PP also modifies an immediately
                // preceding nominal (APs transparent)
                let prev_nominal = chunks[..c]
                    .iter()
                    .rev()
                    .find(|prev| prev.kind != ChunkKind::Ap);
                if let Some(prev) = prev_nominal {
                    if matches!(prev.kind, ChunkKind::Np | ChunkKind::Pp) {
                        if let Some(noun) = nominal_head(tokens, prev) {
                            if tokens[noun].pos == Pos::Noun {
                                out.insert(Relation::new(
                                    RelationKind::Nnprep,
                                    (lemma(noun), noun),
                                    pp_head,
                                    Some(prep),
                                ));
                            }
                        }
                    }
                }
            }
            ChunkKind::Ap => {
                // postnominal adjective
                if c > 0 && matches!(chunks[c - 1].kind, ChunkKind::Np | ChunkKind::Pp) {
                    if let Some(noun) = nominal_head(tokens, chunks[c - 1]) {
                        if tokens[noun].pos == Pos::Noun {
                            let adj = chunk.span.end - 1;
                            out.insert(Relation::new(
                                RelationKind::Padj,
                                (lemma(noun), noun),
                                (lemma(adj), adj),
                                None,
                            ));
                        }
                    }
                }
            }
            ChunkKind::Np => {}
            ChunkKind::Sc => unreachable!("SC chunks never enter a clause"),
        }

        // chunk-internal structure of nominals
        if matches!(chunk.kind, ChunkKind::Np | ChunkKind::Pp) {
            let nouns: Vec<usize> = chunk
                .span
                .clone()
                .filter(|&i| tokens[i].pos == Pos::Noun)
                .collect();
            for i in chunk.span.clone() {
                if tokens[i].pos == Pos::Adjective {
                    if let Some(&noun) = nouns.iter().find(|&&n| n > i) {
                        out.insert(Relation::new(
                            RelationKind::Adj,
                            (lemma(i), i),
                            (lemma(noun), noun),
                            None,
                        ));
                    }
                }
            }
            for pair in nouns.windows(2) {
                out.insert(Relation::new(
                    RelationKind::Nn,
                    (lemma(pair[0]), pair[0]),
                    (lemma(pair[1]), pair[1]),
                    None,
                ));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::Feats;

    fn tok(surface: &str, lemma: &str, pos: Pos) -> Token {
        Token::new(surface, lemma, pos)
    }

    fn ftok(surface: &str, lemma: &str, pos: Pos, feats: &str) -> Token {
        Token::new(surface, lemma, pos).with_feats(Feats::parse(feats).unwrap())
    }

    fn rels(tokens: &[Token]) -> BTreeSet<String> {
        let chunks = chunk(tokens);
        extract_relations(tokens, &chunks)
            .into_iter()
            .map(|r| r.to_string())
            .collect()
    }

    #[test]
    fn gerund_with_object_and_pp() {
        // "en abandonnant les protagonistes à leur sort"
        let tokens = vec![
            tok("en", "en", Pos::Preposition),
            tok("abandonnant", "abandonner", Pos::Verb),
            tok("les", "le", Pos::Determiner),
            tok("protagonistes", "protagoniste", Pos::Noun),
            tok("à", "à", Pos::Preposition),
            tok("leur", "leur", Pos::Determiner),
            tok("sort", "sort", Pos::Noun),
        ];
        let rels = rels(&tokens);
        assert!(rels.contains("DOBJ(abandonner,protagoniste)"), "{rels:?}");
        assert!(rels.contains("VMODOBJ(abandonner,à,sort)"), "{rels:?}");
        assert!(rels.contains("NNPREP(protagoniste,à,sort)"), "{rels:?}");
    }

    #[test]
    fn prenominal_adjective() {
        // "ses premières armes"
        let tokens = vec![
            tok("ses", "son", Pos::Determiner),
            tok("premières", "premier", Pos::Adjective),
            tok("armes", "arme", Pos::Noun),
        ];
        assert!(rels(&tokens).contains("ADJ(premier,arme)"));
    }

    #[test]
    fn subject_of_finite_verb() {
        // "le courage abandonne"
        let tokens = vec![
            tok("le", "le", Pos::Determiner),
            tok("courage", "courage", Pos::Noun),
            ftok("abandonne", "abandonner", Pos::Verb, "finite"),
        ];
        assert!(rels(&tokens).contains("SUBJ(courage,abandonner)"));
    }

    #[test]
    fn passive_and_agent() {
        // "le roman est écrit par Marc" / active "Marc écrit le roman"
        let passive = vec![
            tok("le", "le", Pos::Determiner),
            tok("roman", "roman", Pos::Noun),
            ftok("est", "être", Pos::Verb, "finite,aux"),
            ftok("écrit", "écrire", Pos::Verb, "pastpart"),
            tok("par", "par", Pos::Preposition),
            tok("Marc", "Marc", Pos::Noun),
        ];
        let got = rels(&passive);
        assert!(got.contains("SUBJPASS(roman,écrire)"), "{got:?}");
        assert!(got.contains("PAGENT(écrire,Marc)"), "{got:?}");
        assert!(!got.iter().any(|r| r.starts_with("DOBJ")), "{got:?}");

        let active = vec![
            tok("Marc", "Marc", Pos::Noun),
            ftok("écrit", "écrire", Pos::Verb, "finite"),
            tok("le", "le", Pos::Determiner),
            tok("roman", "roman", Pos::Noun),
        ];
        let got = rels(&active);
        assert!(got.contains("SUBJ(Marc,écrire)"), "{got:?}");
        assert!(got.contains("DOBJ(écrire,roman)"), "{got:?}");
    }

    #[test]
    fn copula_gives_attr_not_dobj() {
        // "la règle est élémentaire"
        let tokens = vec![
            tok("la", "le", Pos::Determiner),
            tok("règle", "règle", Pos::Noun),
            ftok("est", "être", Pos::Verb, "finite"),
            tok("élémentaire", "élémentaire", Pos::Adjective),
        ];
        let got = rels(&tokens);
        assert!(got.contains("ATTR(règle,élémentaire)"), "{got:?}");
        assert!(!got.iter().any(|r| r.starts_with("DOBJ")), "{got:?}");
    }

    #[test]
    fn relative_subject() {
        // "un côté fiction qui nous fait penser"
        let tokens = vec![
            tok("un", "un", Pos::Determiner),
            tok("côté", "côté", Pos::Noun),
            tok("fiction", "fiction", Pos::Noun),
            tok("qui", "qui", Pos::Pronoun),
            tok("nous", "nous", Pos::Pronoun),
            ftok("fait", "faire", Pos::Verb, "finite"),
            tok("penser", "penser", Pos::Verb),
        ];
        let got = rels(&tokens);
        assert!(got.contains("RELSUBJ(fiction,faire)"), "{got:?}");
        assert!(got.contains("NN(côté,fiction)"), "{got:?}");
    }

    #[test]
    fn clitic_object() {
        // "il ne le fait" — clitic object, subject pronoun kept
        let tokens = vec![
            tok("il", "il", Pos::Pronoun),
            tok("ne", "ne", Pos::Adverb),
            tok("le", "le", Pos::Pronoun),
            ftok("fait", "faire", Pos::Verb, "finite"),
        ];
        let got = rels(&tokens);
        assert!(got.contains("SUBJ(il,faire)"), "{got:?}");
        assert!(got.contains("DOBJ(faire,le)"), "{got:?}");
    }

    #[test]
    fn animate_clitic_lemma_passes_through() {
        // input tagging may lemmatize an animate clitic as quelqu'un
        let tokens = vec![
            tok("il", "il", Pos::Pronoun),
            tok("l'", "quelqu'un", Pos::Pronoun),
            ftok("abandonne", "abandonner", Pos::Verb, "finite"),
        ];
        let got = rels(&tokens);
        assert!(got.contains("DOBJ(abandonner,quelqu'un)"), "{got:?}");
    }

    #[test]
    fn single_token_sentence_has_no_relations() {
        assert!(rels(&[tok("oui", "oui", Pos::Adverb)]).is_empty());
        assert!(rels(&[tok("dort", "dormir", Pos::Verb)]).is_empty());
    }

    #[test]
    fn punctuation_blocks_attachment() {
        // "le courage, abandonne" — comma separates clauses
        let tokens = vec![
            tok("le", "le", Pos::Determiner),
            tok("courage", "courage", Pos::Noun),
            tok(",", ",", Pos::Punctuation),
            ftok("abandonne", "abandonner", Pos::Verb, "finite"),
        ];
        assert!(rels(&tokens).is_empty());
    }

    #[test]
    fn reflexive_clitic_marks_verb() {
        // "Slam s'aventure sur un terrain"
        let tokens = vec![
            tok("Slam", "Slam", Pos::Noun),
            tok("s'", "se", Pos::Pronoun),
            ftok("aventure", "aventurer", Pos::Verb, "finite"),
            tok("sur", "sur", Pos::Preposition),
            tok("un", "un", Pos::Determiner),
            tok("terrain", "terrain", Pos::Noun),
        ];
        let analysis = analyze(&tokens);
        assert!(analysis.reflexive_verbs.contains(&2));
        let got: BTreeSet<String> =
            analysis.relations.iter().map(|r| r.to_string()).collect();
        assert!(got.contains("SUBJ(Slam,aventurer)"), "{got:?}");
        assert!(got.contains("VMODOBJ(aventurer,sur,terrain)"), "{got:?}");
        // no reflexive-clitic DOBJ
        assert!(!got.contains("DOBJ(aventurer,se)"), "{got:?}");
    }

    #[test]
    fn lemma_fidelity_and_determinism() {
        let tokens = vec![
            tok("il", "il", Pos::Pronoun),
            ftok("abandonne", "abandonner", Pos::Verb, "finite"),
            tok("le", "le", Pos::Determiner),
            tok("pays", "pays", Pos::Noun),
        ];
        let chunks = chunk(&tokens);
        let set1 = extract_relations(&tokens, &chunks);
        let set2 = extract_relations(&tokens, &chunks);
        assert_eq!(set1, set2);
        let lemmas: BTreeSet<&str> = tokens.iter().map(|t| t.lemma.as_str()).collect();
        for rel in &set1 {
            assert!(lemmas.contains(rel.head.as_str()));
            assert!(lemmas.contains(rel.dep.as_str()));
            assert_eq!(rel.prep.is_some(), rel.kind.takes_prep());
            assert_ne!(rel.head_index, rel.dep_index);
        }
    }
}
