//! End-to-end tests through the `lexsense` binary: golden outputs,
//! idempotence, exit codes, stdio handling, worker-pool ordering.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

fn lexsense(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexsense"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("lexsense-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).display().to_string()
}

#[test]
fn extract_reproduces_golden_and_is_idempotent() {
    let args = [
        "extract",
        "--dict",
        &fixture_path("dictionary.xml"),
        "--lexicon",
        &fixture_path("lexicon.tsv"),
        "--out",
        "-",
        "--quiet",
    ];
    let first = stdout_of(&lexsense(&args));
    assert_eq!(first, fixture("golden/rules.golden"));
    let second = stdout_of(&lexsense(&args));
    assert_eq!(first, second);
}

#[test]
fn disambiguate_reproduces_golden_and_is_idempotent() {
    let args = [
        "disambiguate",
        "--rules",
        &fixture_path("golden/rules.golden"),
        "--dict",
        &fixture_path("dictionary.xml"),
        "--lexicon",
        &fixture_path("lexicon.tsv"),
        "--corpus",
        &fixture_path("corpus.tsv"),
        "--out",
        "-",
        "--quiet",
    ];
    let first = stdout_of(&lexsense(&args));
    assert_eq!(first, fixture("golden/assignments.golden"));
    assert_eq!(stdout_of(&lexsense(&args)), first);
}

#[test]
fn worker_pool_preserves_output_order() {
    let base = [
        "disambiguate",
        "--rules",
        &fixture_path("golden/rules.golden"),
        "--dict",
        &fixture_path("dictionary.xml"),
        "--lexicon",
        &fixture_path("lexicon.tsv"),
        "--corpus",
        &fixture_path("corpus.tsv"),
        "--out",
        "-",
        "--quiet",
    ];
    let serial = stdout_of(&lexsense(&base));
    let mut parallel_args: Vec<&str> = base.to_vec();
    parallel_args.extend(["--jobs", "4"]);
    let parallel = stdout_of(&lexsense(&parallel_args));
    assert_eq!(serial, parallel);
}

#[test]
fn relation_file_input_path() {
    let out = stdout_of(&lexsense(&[
        "disambiguate",
        "--rules",
        &fixture_path("golden/rules.golden"),
        "--dict",
        &fixture_path("dictionary.xml"),
        "--lexicon",
        &fixture_path("lexicon.tsv"),
        "--relations",
        &fixture_path("relations_pays.txt"),
        "--out",
        "-",
        "--quiet",
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("abandonner\tVERB\tI.4\tsemantic\t0.8"), "{out}");
    assert!(lines[1].contains("pays\tNOUN\tI.1\tdefault"), "{out}");
}

#[test]
fn evaluate_reproduces_golden_report() {
    let out = stdout_of(&lexsense(&[
        "evaluate",
        "--assignments",
        &fixture_path("golden/assignments.golden"),
        "--gold",
        &fixture_path("gold.tsv"),
        "--out",
        "-",
    ]));
    assert_eq!(out, fixture("golden/report.golden"));
}

#[test]
fn stats_prints_hand_counted_values() {
    let out = stdout_of(&lexsense(&[
        "stats",
        "--rules",
        &fixture_path("golden/rules.golden"),
        "--dict",
        &fixture_path("dictionary.xml"),
    ]));
    assert!(out.contains("entries\t12"), "{out}");
    assert!(out.contains("covered-entries\t7"), "{out}");
    assert!(out.contains("mean-rules-per-covered\t13.6"), "{out}");
    assert!(out.contains("rules\t95"), "{out}");
}

#[test]
fn empty_dictionary_extracts_empty_rulebase_with_exit_zero() {
    let dict = tmp("empty-dict.xml");
    std::fs::write(&dict, "<dictionary></dictionary>\n").unwrap();
    let out = lexsense(&[
        "extract",
        "--dict",
        &dict,
        "--lexicon",
        &fixture_path("lexicon.tsv"),
        "--out",
        "-",
        "--quiet",
    ]);
    assert_eq!(stdout_of(&out), "lexsense-rules v1\n");
}

#[test]
fn empty_corpus_gives_empty_output() {
    let corpus = tmp("empty-corpus.tsv");
    std::fs::write(&corpus, "\n").unwrap();
    let out = stdout_of(&lexsense(&[
        "disambiguate",
        "--rules",
        &fixture_path("golden/rules.golden"),
        "--dict",
        &fixture_path("dictionary.xml"),
        "--lexicon",
        &fixture_path("lexicon.tsv"),
        "--corpus",
        &corpus,
        "--out",
        "-",
        "--quiet",
    ]));
    assert!(out.is_empty());
}

#[test]
fn exit_codes_distinguish_error_families() {
    // usage: missing --lexicon
    let out = lexsense(&["extract", "--dict", &fixture_path("dictionary.xml")]);
    assert_eq!(out.status.code(), Some(8));

    // dictionary parse error
    let bad_dict = tmp("bad-dict.xml");
    std::fs::write(&bad_dict, "<dictionary><entry>").unwrap();
    let out = lexsense(&[
        "extract",
        "--dict",
        &bad_dict,
        "--lexicon",
        &fixture_path("lexicon.tsv"),
    ]);
    assert_eq!(out.status.code(), Some(3));

    // lexicon load error
    let bad_lex = tmp("bad-lex.tsv");
    std::fs::write(&bad_lex, "pays NOUN GEO\n").unwrap(); // spaces, not tabs
    let out = lexsense(&[
        "extract",
        "--dict",
        &fixture_path("dictionary.xml"),
        "--lexicon",
        &bad_lex,
    ]);
    assert_eq!(out.status.code(), Some(4));

    // rule-base version mismatch
    let bad_rules = tmp("bad-rules.txt");
    std::fs::write(&bad_rules, "lexsense-rules v9\n").unwrap();
    let out = lexsense(&[
        "stats",
        "--rules",
        &bad_rules,
        "--dict",
        &fixture_path("dictionary.xml"),
    ]);
    assert_eq!(out.status.code(), Some(5));

    // corpus parse error
    let bad_corpus = tmp("bad-corpus.tsv");
    std::fs::write(&bad_corpus, "only-one-field\n").unwrap();
    let out = lexsense(&[
        "disambiguate",
        "--rules",
        &fixture_path("golden/rules.golden"),
        "--dict",
        &fixture_path("dictionary.xml"),
        "--lexicon",
        &fixture_path("lexicon.tsv"),
        "--corpus",
        &bad_corpus,
    ]);
    assert_eq!(out.status.code(), Some(6));

    // alignment error
    let bad_gold = tmp("bad-gold.tsv");
    std::fs::write(&bad_gold, "1\t999\tabsent\tNOUN\tI.1\n").unwrap();
    let out = lexsense(&[
        "evaluate",
        "--assignments",
        &fixture_path("golden/assignments.golden"),
        "--gold",
        &bad_gold,
    ]);
    assert_eq!(out.status.code(), Some(7));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("sent 1 tok 999"), "{stderr}");

    // missing file
    let out = lexsense(&[
        "stats",
        "--rules",
        "/nonexistent/rules.v1",
        "--dict",
        &fixture_path("dictionary.xml"),
    ]);
    assert_eq!(out.status.code(), Some(1));

    // weight overrides must keep the order
    let out = lexsense(&[
        "disambiguate",
        "--rules",
        &fixture_path("golden/rules.golden"),
        "--dict",
        &fixture_path("dictionary.xml"),
        "--lexicon",
        &fixture_path("lexicon.tsv"),
        "--corpus",
        &fixture_path("corpus.tsv"),
        "--weights",
        "le=10",
    ]);
    assert_eq!(out.status.code(), Some(8));
}

#[test]
fn warnings_do_not_change_the_exit_code() {
    let dict = tmp("warn-dict.xml");
    std::fs::write(
        &dict,
        "<dictionary><entry><hw>vague</hw><pos tag=\"nf\"><sense><tr>wave</tr><le></le></sense></pos></entry></dictionary>\n",
    )
    .unwrap();
    let out = lexsense(&[
        "extract",
        "--dict",
        &dict,
        "--lexicon",
        &fixture_path("lexicon.tsv"),
        "--out",
        "-",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("warning"), "{stderr}");
    // and --quiet silences it
    let out = lexsense(&[
        "extract",
        "--dict",
        &dict,
        "--lexicon",
        &fixture_path("lexicon.tsv"),
        "--out",
        "-",
        "--quiet",
    ]);
    assert!(!String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn multiple_dictionary_files_merge() {
    let extra = tmp("extra-dict.xml");
    std::fs::write(
        &extra,
        "<dictionary><entry><hw>sort</hw><pos tag=\"vi\"><sense><ic>sortir</ic><tr>goes out</tr></sense></pos></entry></dictionary>\n",
    )
    .unwrap();
    let out = stdout_of(&lexsense(&[
        "stats",
        "--rules",
        &fixture_path("golden/rules.golden"),
        "--dict",
        &fixture_path("dictionary.xml"),
        "--dict",
        &extra,
    ]));
    // `sort` merges into the existing entry: still 12 entries
    assert!(out.contains("entries\t12"), "{out}");
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let config = tmp("config.toml");
    let out_path = tmp("config-rules.v1");
    std::fs::write(
        &config,
        format!(
            "dict = [{:?}]\nlexicon = {:?}\nout = {:?}\n",
            fixture_path("dictionary.xml"),
            fixture_path("lexicon.tsv"),
            out_path,
        ),
    )
    .unwrap();
    let out = lexsense(&["--config", &config, "--quiet", "extract"]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(PathBuf::from(&out_path)).unwrap(),
        fixture("golden/rules.golden")
    );

    // flag overrides config's out
    let out = lexsense(&["--config", &config, "--quiet", "extract", "--out", "-"]);
    assert_eq!(stdout_of(&out), fixture("golden/rules.golden"));
}

#[test]
fn dash_reads_corpus_from_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_lexsense"))
        .args([
            "disambiguate",
            "--rules",
            &fixture_path("golden/rules.golden"),
            "--dict",
            &fixture_path("dictionary.xml"),
            "--lexicon",
            &fixture_path("lexicon.tsv"),
            "--corpus",
            "-",
            "--out",
            "-",
            "--quiet",
        ])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all("Le\tle\tDET\t-\ncourage\tcourage\tNOUN\t-\nabandonne\tabandonner\tVERB\tfinite\nles\tle\tDET\t-\nprotagonistes\tprotagoniste\tNOUN\t-\n".as_bytes())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("abandonner\tVERB\tI.7\tlexical\t6"), "{text}");
}

#[test]
fn dump_relations_writes_debug_output() {
    let dump = tmp("relations-dump.txt");
    let out = lexsense(&[
        "disambiguate",
        "--rules",
        &fixture_path("golden/rules.golden"),
        "--dict",
        &fixture_path("dictionary.xml"),
        "--lexicon",
        &fixture_path("lexicon.tsv"),
        "--corpus",
        &fixture_path("corpus.tsv"),
        "--out",
        tmp("assign-dump.tsv").as_str(),
        "--dump-relations",
        &dump,
        "--quiet",
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&dump).unwrap();
    assert!(text.contains("# sent 1\n"));
    assert!(text.contains("VMODOBJ(abandonner,à,sort)\n"));
    assert!(text.contains("DOBJ(abandonner,pays)\n"));
}
