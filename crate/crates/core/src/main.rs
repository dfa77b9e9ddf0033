use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use lexsense::assignments::{parse_assignments, write_assignments};
use lexsense::corpus::{parse_relation_file, parse_tagged_corpus, write_relation_file};
use lexsense::dictionary::{dictionary_stats, DictError, Dictionary};
use lexsense::disambiguator::{
    disambiguate_relation_set, disambiguate_sentence, Resources, TypeWeights, WeightError,
};
use lexsense::eval::{evaluate, parse_gold, EvalError};
use lexsense::parser::Relation;
use lexsense::rulebase::{build_rulebase, load_rulebase, save_rulebase, RuleBase, RuleBaseIoError};
use lexsense::semlex::{LexiconError, SemLexicon};

#[derive(Parser)]
#[command(
    name = "lexsense",
    version,
    about = "Dictionary-driven lexical sense disambiguation",
    long_about = "Compiles an electronic dictionary into lexico-syntactic disambiguation rules, \
applies them to POS-tagged text, and scores the output against gold annotations."
)]
struct Cli {
    /// Optional TOML config file; command-line flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Suppress warnings and progress output
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile dictionary files into a rule-base file
    Extract(ExtractArgs),
    /// Assign dictionary senses to a tagged corpus or a relation file
    Disambiguate(DisambiguateArgs),
    /// Score an assignment file against a gold annotation file
    Evaluate(EvaluateArgs),
    /// Print rule-base counters over a dictionary
    Stats(StatsArgs),
}

#[derive(Args, Default)]
struct ExtractArgs {
    /// Dictionary file(s)
    #[arg(long = "dict")]
    dict: Vec<PathBuf>,
    /// Semantic-class lexicon file
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Output rule-base file (`-` for stdout)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Default)]
struct DisambiguateArgs {
    /// Rule-base file produced by `extract`
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Dictionary file(s), for default senses and translations
    #[arg(long = "dict")]
    dict: Vec<PathBuf>,
    /// Semantic-class lexicon file
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Tagged corpus input (`-` for stdin)
    #[arg(long)]
    corpus: Option<String>,
    /// Pre-extracted relation file input (`-` for stdin)
    #[arg(long)]
    relations: Option<String>,
    /// Output assignment file (`-` for stdout)
    #[arg(long)]
    out: Option<String>,
    /// Type-weight overrides, e.g. co=6,lc=5,li=4,lv=3,lu=2,le=1
    #[arg(long)]
    weights: Option<String>,
    /// Worker threads for corpus mode (0 = all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// Also write the extracted relations to this file
    #[arg(long)]
    dump_relations: Option<String>,
}

#[derive(Args, Default)]
struct EvaluateArgs {
    /// Assignment file produced by `disambiguate` (`-` for stdin)
    #[arg(long)]
    assignments: Option<String>,
    /// Gold annotation file
    #[arg(long)]
    gold: Option<PathBuf>,
    /// Report output (`-` for stdout)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Default)]
struct StatsArgs {
    /// Rule-base file
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Dictionary file(s) the rule base was extracted from
    #[arg(long = "dict")]
    dict: Vec<PathBuf>,
}

/// Subset of the flags accepted in a TOML config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    dict: Option<Vec<PathBuf>>,
    lexicon: Option<PathBuf>,
    rules: Option<PathBuf>,
    corpus: Option<String>,
    relations: Option<String>,
    gold: Option<PathBuf>,
    assignments: Option<String>,
    out: Option<String>,
    weights: Option<String>,
    jobs: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Dict { path: String, source: DictError },
    #[error("{path}: {source}")]
    Lexicon {
        path: String,
        source: LexiconError,
    },
    #[error("{path}: {source}")]
    Rules {
        path: String,
        source: RuleBaseIoError,
    },
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Weights(#[from] WeightError),
}

impl AppError {
    /// Distinct exit codes per error family.
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Io { .. } => 1,
            AppError::Dict { .. } => 3,
            AppError::Lexicon { .. } => 4,
            AppError::Rules { .. } => 5,
            AppError::Input { .. } => 6,
            AppError::Eval(_) => 7,
            AppError::Usage(_) | AppError::Weights(_) => 8,
        }
    }
}

fn read_input(path: &str) -> Result<String, AppError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|source| AppError::Io {
                path: "<stdin>".into(),
                source,
            })?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|source| AppError::Io {
            path: path.to_string(),
            source,
        })
    }
}

fn write_output(path: &str, content: &str) -> Result<(), AppError> {
    if path == "-" {
        print!("{content}");
        Ok(())
    } else {
        fs::write(path, content).map_err(|source| AppError::Io {
            path: path.to_string(),
            source,
        })
    }
}

fn load_dictionaries(paths: &[PathBuf]) -> Result<Dictionary, AppError> {
    let mut entries = Vec::new();
    for path in paths {
        let text = read_input(&path.display().to_string())?;
        let dict = Dictionary::parse(&text).map_err(|source| AppError::Dict {
            path: path.display().to_string(),
            source,
        })?;
        entries.extend(dict.entries().iter().cloned());
    }
    Ok(Dictionary::from_entries(entries))
}

fn load_lexicon(path: &Path) -> Result<SemLexicon, AppError> {
    let text = read_input(&path.display().to_string())?;
    SemLexicon::load(&text).map_err(|source| AppError::Lexicon {
        path: path.display().to_string(),
        source,
    })
}

fn load_rules(path: &Path) -> Result<RuleBase, AppError> {
    let text = read_input(&path.display().to_string())?;
    load_rulebase(&text).map_err(|source| AppError::Rules {
        path: path.display().to_string(),
        source,
    })
}

fn load_config(path: Option<&PathBuf>) -> Result<FileConfig, AppError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(path) => {
            let text = read_input(&path.display().to_string())?;
            toml::from_str(&text)
                .map_err(|e| AppError::Usage(format!("{}: {e}", path.display())))
        }
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, AppError> {
    value.ok_or_else(|| AppError::Usage(format!("missing required option --{flag}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lexsense: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    let config = load_config(cli.config.as_ref())?;
    match cli.command {
        Command::Extract(args) => cmd_extract(args, config, cli.quiet),
        Command::Disambiguate(args) => cmd_disambiguate(args, config, cli.quiet),
        Command::Evaluate(args) => cmd_evaluate(args, config),
        Command::Stats(args) => cmd_stats(args, config),
    }
}

fn cmd_extract(args: ExtractArgs, config: FileConfig, quiet: bool) -> Result<(), AppError> {
    let dict_paths = if args.dict.is_empty() {
        require(config.dict, "dict")?
    } else {
        args.dict
    };
    let lexicon_path = require(args.lexicon.or(config.lexicon), "lexicon")?;
    let out = args.out.or(config.out).unwrap_or_else(|| "-".to_string());

    let dict = load_dictionaries(&dict_paths)?;
    let lexicon = load_lexicon(&lexicon_path)?;
    let outcome = build_rulebase(&dict, &lexicon);
    if !quiet {
        for warning in &outcome.warnings {
            eprintln!("lexsense: warning: {warning}");
        }
    }
    let text = save_rulebase(&outcome.rulebase).map_err(|source| AppError::Rules {
        path: out.clone(),
        source,
    })?;
    write_output(&out, &text)?;
    if !quiet {
        let stats = dictionary_stats(&dict, &outcome.rulebase);
        eprintln!(
            "entries {}  covered {}  mean-rules-per-covered {:.1}  rules {} (lexical {}, semantic {})",
            stats.total_entries,
            stats.covered_entries,
            stats.mean_rules_per_covered,
            outcome.rulebase.total_rules(),
            outcome.rulebase.lexical_rules(),
            outcome.rulebase.semantic_rules(),
        );
    }
    Ok(())
}

fn cmd_disambiguate(
    args: DisambiguateArgs,
    config: FileConfig,
    quiet: bool,
) -> Result<(), AppError> {
    let rules_path = require(args.rules.or(config.rules), "rules")?;
    let dict_paths = if args.dict.is_empty() {
        require(config.dict, "dict")?
    } else {
        args.dict
    };
    let lexicon_path = require(args.lexicon.or(config.lexicon), "lexicon")?;
    let corpus = args.corpus.or(config.corpus);
    let relations = args.relations.or(config.relations);
    let out = args.out.or(config.out).unwrap_or_else(|| "-".to_string());
    let weights = match args.weights.or(config.weights) {
        Some(spec) => TypeWeights::default().with_overrides(&spec)?,
        None => TypeWeights::default(),
    };
    let jobs = args.jobs.or(config.jobs).unwrap_or(1);

    let rulebase = load_rules(&rules_path)?;
    let dictionary = load_dictionaries(&dict_paths)?;
    let semlex = load_lexicon(&lexicon_path)?;
    let res = Resources {
        rulebase: &rulebase,
        semlex: &semlex,
        dictionary: &dictionary,
        weights,
    };

    let outcomes = match (corpus, relations) {
        (Some(corpus_path), None) => {
            let text = read_input(&corpus_path)?;
            let sentences = parse_tagged_corpus(&text).map_err(|e| AppError::Input {
                path: corpus_path.clone(),
                message: e.to_string(),
            })?;
            if let Some(dump) = &args.dump_relations {
                let per_sentence: Vec<BTreeSet<Relation>> = sentences
                    .iter()
                    .map(|tokens| lexsense::parser::analyze(tokens).relations)
                    .collect();
                write_output(dump, &write_relation_file(&per_sentence))?;
            }
            run_sentences(&sentences, &res, jobs)
        }
        (None, Some(rel_path)) => {
            let text = read_input(&rel_path)?;
            let per_sentence = parse_relation_file(&text).map_err(|e| AppError::Input {
                path: rel_path.clone(),
                message: e.to_string(),
            })?;
            per_sentence
                .iter()
                .map(|rels| disambiguate_relation_set(rels, &res))
                .collect()
        }
        _ => {
            return Err(AppError::Usage(
                "exactly one of --corpus and --relations is required".to_string(),
            ))
        }
    };

    write_output(&out, &write_assignments(&outcomes))?;
    if !quiet {
        let words: usize = outcomes.iter().map(Vec::len).sum();
        eprintln!("assigned {words} words in {} sentences", outcomes.len());
    }
    Ok(())
}

/// Sentences fan out to a worker pool; collection keeps input order.
fn run_sentences(
    sentences: &[Vec<lexsense::Token>],
    res: &Resources,
    jobs: usize,
) -> Vec<Vec<lexsense::WordOutcome>> {
    if jobs == 1 {
        sentences
            .iter()
            .map(|tokens| disambiguate_sentence(tokens, res))
            .collect()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool");
        pool.install(|| {
            sentences
                .par_iter()
                .map(|tokens| disambiguate_sentence(tokens, res))
                .collect()
        })
    }
}

fn cmd_evaluate(args: EvaluateArgs, config: FileConfig) -> Result<(), AppError> {
    let assignments_path = require(args.assignments.or(config.assignments), "assignments")?;
    let gold_path = require(args.gold.or(config.gold), "gold")?;
    let out = args.out.or(config.out).unwrap_or_else(|| "-".to_string());

    let records = parse_assignments(&read_input(&assignments_path)?).map_err(|e| {
        AppError::Input {
            path: assignments_path.clone(),
            message: e.to_string(),
        }
    })?;
    let gold = parse_gold(&read_input(&gold_path.display().to_string())?)?;
    let report = evaluate(&records, &gold)?;
    write_output(&out, &report.render())
}

fn cmd_stats(args: StatsArgs, config: FileConfig) -> Result<(), AppError> {
    let rules_path = require(args.rules.or(config.rules), "rules")?;
    let dict_paths = if args.dict.is_empty() {
        require(config.dict, "dict")?
    } else {
        args.dict
    };
    let rulebase = load_rules(&rules_path)?;
    let dict = load_dictionaries(&dict_paths)?;
    let stats = dictionary_stats(&dict, &rulebase);
    println!("entries\t{}", stats.total_entries);
    println!("covered-entries\t{}", stats.covered_entries);
    println!(
        "mean-rules-per-covered\t{:.1}",
        stats.mean_rules_per_covered
    );
    println!("rules\t{}", rulebase.total_rules());
    println!("rules-lexical\t{}", rulebase.lexical_rules());
    println!("rules-semantic\t{}", rulebase.semantic_rules());
    Ok(())
}
