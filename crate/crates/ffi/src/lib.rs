//! C ABI for the lexsense disambiguation engine.
//!
//! The engine is an opaque handle built from dictionary, lexicon and
//! (optionally) rule-base files. Functions return status codes or NULL on
//! failure; the last error message is kept per thread and retrieved with
//! [`lexsense_last_error`]. All returned strings are UTF-8 and must be
//! released with [`lexsense_string_free`].

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, c_double, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lexsense::assignments::write_assignments;
use lexsense::corpus::{parse_relation_file, parse_tagged_corpus};
use lexsense::dictionary::Dictionary;
use lexsense::disambiguator::{
    class_distance, disambiguate_relation_set, disambiguate_sentence, Resources, TypeWeights,
};
use lexsense::rulebase::{build_rulebase, load_rulebase};
use lexsense::semlex::{ClassLabel, SemLexicon};

/// Status codes returned by fallible functions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexsenseStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Io = 3,
    ParseError = 4,
    DegenerateDistance = 5,
    Internal = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into();
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Disambiguation engine behind the C interface.
pub struct LexsenseEngine {
    dictionary: Dictionary,
    semlex: SemLexicon,
    rulebase: lexsense::RuleBase,
}

unsafe fn cstr_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, LexsenseStatus> {
    if ptr.is_null() {
        set_error(format!("{name} is NULL"));
        return Err(LexsenseStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(format!("{name} is not valid UTF-8"));
        LexsenseStatus::InvalidUtf8
    })
}

fn read_file(path: &str) -> Result<String, LexsenseStatus> {
    std::fs::read_to_string(path).map_err(|e| {
        set_error(format!("{path}: {e}"));
        LexsenseStatus::Io
    })
}

fn to_owned_cstring(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => {
            set_error("output contained an interior NUL byte");
            ptr::null_mut()
        }
    }
}

/// Build an engine from a dictionary file and a class-lexicon file. When
/// `rules_path` is NULL the rule base is extracted from the dictionary;
/// otherwise it is loaded from the given file. Returns NULL on failure.
///
/// # Safety
/// `dict_path` and `lexicon_path` must be valid NUL-terminated strings;
/// `rules_path` may be NULL. The returned handle must be released with
/// [`lexsense_engine_free`].
#[no_mangle]
pub unsafe extern "C" fn lexsense_engine_new(
    dict_path: *const c_char,
    lexicon_path: *const c_char,
    rules_path: *const c_char,
) -> *mut LexsenseEngine {
    let result = catch_unwind(AssertUnwindSafe(|| {
        let dict_path = match cstr_arg(dict_path, "dict_path") {
            Ok(s) => s,
            Err(_) => return ptr::null_mut(),
        };
        let lexicon_path = match cstr_arg(lexicon_path, "lexicon_path") {
            Ok(s) => s,
            Err(_) => return ptr::null_mut(),
        };
        let dict_text = match read_file(dict_path) {
            Ok(s) => s,
            Err(_) => return ptr::null_mut(),
        };
        let dictionary = match Dictionary::parse(&dict_text) {
            Ok(d) => d,
            Err(e) => {
                set_error(format!("{dict_path}: {e}"));
                return ptr::null_mut();
            }
        };
        let lex_text = match read_file(lexicon_path) {
            Ok(s) => s,
            Err(_) => return ptr::null_mut(),
        };
        let semlex = match SemLexicon::load(&lex_text) {
            Ok(l) => l,
            Err(e) => {
                set_error(format!("{lexicon_path}: {e}"));
                return ptr::null_mut();
            }
        };
        let rulebase = if rules_path.is_null() {
            build_rulebase(&dictionary, &semlex).rulebase
        } else {
            let rules_path = match cstr_arg(rules_path, "rules_path") {
                Ok(s) => s,
                Err(_) => return ptr::null_mut(),
            };
            let text = match read_file(rules_path) {
                Ok(s) => s,
                Err(_) => return ptr::null_mut(),
            };
            match load_rulebase(&text) {
                Ok(rb) => rb,
                Err(e) => {
                    set_error(format!("{rules_path}: {e}"));
                    return ptr::null_mut();
                }
            }
        };
        Box::into_raw(Box::new(LexsenseEngine {
            dictionary,
            semlex,
            rulebase,
        }))
    }));
    result.unwrap_or_else(|_| {
        set_error("internal panic in lexsense_engine_new");
        ptr::null_mut()
    })
}

/// Release an engine handle. NULL is a no-op.
///
/// # Safety
/// `engine` must be NULL or a pointer returned by [`lexsense_engine_new`]
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn lexsense_engine_free(engine: *mut LexsenseEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Number of rules held by the engine.
///
/// # Safety
/// `engine` must be a live handle from [`lexsense_engine_new`] (or NULL,
/// which yields 0).
#[no_mangle]
pub unsafe extern "C" fn lexsense_engine_rule_count(engine: *const LexsenseEngine) -> u64 {
    engine
        .as_ref()
        .map(|e| e.rulebase.total_rules() as u64)
        .unwrap_or(0)
}

unsafe fn disambiguate_impl(
    engine: *const LexsenseEngine,
    input: *const c_char,
    relations_mode: bool,
) -> *mut c_char {
    let Some(engine) = engine.as_ref() else {
        set_error("engine is NULL");
        return ptr::null_mut();
    };
    let text = match cstr_arg(input, "input") {
        Ok(s) => s,
        Err(_) => return ptr::null_mut(),
    };
    let res = Resources {
        rulebase: &engine.rulebase,
        semlex: &engine.semlex,
        dictionary: &engine.dictionary,
        weights: TypeWeights::default(),
    };
    let outcomes = if relations_mode {
        match parse_relation_file(text) {
            Ok(per_sentence) => per_sentence
                .iter()
                .map(|rels| disambiguate_relation_set(rels, &res))
                .collect::<Vec<_>>(),
            Err(e) => {
                set_error(e.to_string());
                return ptr::null_mut();
            }
        }
    } else {
        match parse_tagged_corpus(text) {
            Ok(sentences) => sentences
                .iter()
                .map(|tokens| disambiguate_sentence(tokens, &res))
                .collect(),
            Err(e) => {
                set_error(e.to_string());
                return ptr::null_mut();
            }
        }
    };
    to_owned_cstring(write_assignments(&outcomes))
}

/// Disambiguate a tagged corpus (the tab-separated token format) and return
/// the assignment lines as a newly allocated string, or NULL on error.
///
/// # Safety
/// `engine` must be a live handle; `corpus` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn lexsense_disambiguate_corpus(
    engine: *const LexsenseEngine,
    corpus: *const c_char,
) -> *mut c_char {
    catch_unwind(AssertUnwindSafe(|| disambiguate_impl(engine, corpus, false))).unwrap_or_else(
        |_| {
            set_error("internal panic in lexsense_disambiguate_corpus");
            ptr::null_mut()
        },
    )
}

/// Disambiguate from a pre-extracted relation file.
///
/// # Safety
/// Same contract as [`lexsense_disambiguate_corpus`].
#[no_mangle]
pub unsafe extern "C" fn lexsense_disambiguate_relations(
    engine: *const LexsenseEngine,
    relations: *const c_char,
) -> *mut c_char {
    catch_unwind(AssertUnwindSafe(|| disambiguate_impl(engine, relations, true))).unwrap_or_else(
        |_| {
            set_error("internal panic in lexsense_disambiguate_relations");
            ptr::null_mut()
        },
    )
}

fn parse_class_csv(text: &str) -> Result<BTreeSet<ClassLabel>, String> {
    let mut set = BTreeSet::new();
    for name in text.split(',').filter(|s| !s.is_empty()) {
        set.insert(ClassLabel::new(name).map_err(|e| e.to_string())?);
    }
    Ok(set)
}

/// Distance between two comma-separated class sets, written to `out`.
///
/// # Safety
/// `classes1` and `classes2` must be valid NUL-terminated strings and
/// `out` a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn lexsense_class_distance(
    classes1: *const c_char,
    classes2: *const c_char,
    out: *mut c_double,
) -> LexsenseStatus {
    if out.is_null() {
        set_error("out is NULL");
        return LexsenseStatus::NullArgument;
    }
    let text1 = match cstr_arg(classes1, "classes1") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let text2 = match cstr_arg(classes2, "classes2") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let (l1, l2) = match (parse_class_csv(text1), parse_class_csv(text2)) {
        (Ok(l1), Ok(l2)) => (l1, l2),
        (Err(e), _) | (_, Err(e)) => {
            set_error(e);
            return LexsenseStatus::ParseError;
        }
    };
    match class_distance(&l1, &l2) {
        Ok(d) => {
            *out = d;
            LexsenseStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            LexsenseStatus::DegenerateDistance
        }
    }
}

/// Release a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a pointer returned by a lexsense function, not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn lexsense_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The last error message raised on this thread, as a newly allocated
/// string (free with [`lexsense_string_free`]), or NULL when no error has
/// occurred.
#[no_mangle]
pub extern "C" fn lexsense_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map(|c| c.clone().into_raw())
            .unwrap_or(ptr::null_mut())
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn lexsense_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture_cstring(name: &str) -> CString {
        let path = format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        CString::new(path).unwrap()
    }

    fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
        unsafe { lexsense_string_free(ptr) };
        s
    }

    #[test]
    fn engine_builds_and_disambiguates_relations() {
        let dict = fixture_cstring("dictionary.xml");
        let lex = fixture_cstring("lexicon.tsv");
        let engine =
            unsafe { lexsense_engine_new(dict.as_ptr(), lex.as_ptr(), ptr::null()) };
        assert!(!engine.is_null(), "{}", take_string(lexsense_last_error()));
        assert_eq!(unsafe { lexsense_engine_rule_count(engine) }, 95);

        let input = CString::new("DOBJ(abandonner,pays)\n").unwrap();
        let out = unsafe { lexsense_disambiguate_relations(engine, input.as_ptr()) };
        let text = take_string(out);
        assert!(text.contains("abandonner\tVERB\tI.4\tsemantic\t0.8"), "{text}");

        unsafe { lexsense_engine_free(engine) };
    }

    #[test]
    fn engine_loads_prebuilt_rules_and_processes_corpus() {
        let dict = fixture_cstring("dictionary.xml");
        let lex = fixture_cstring("lexicon.tsv");
        let rules = fixture_cstring("golden/rules.golden");
        let engine =
            unsafe { lexsense_engine_new(dict.as_ptr(), lex.as_ptr(), rules.as_ptr()) };
        assert!(!engine.is_null());

        let corpus = CString::new(
            "Elle\telle\tPRON\t-\ns'\tse\tPRON\t-\nabandonne\tabandonner\tVERB\tfinite\nau\t\u{e0}\tDET\tprepdet\nsommeil\tsommeil\tNOUN\t-\n",
        )
        .unwrap();
        let out = unsafe { lexsense_disambiguate_corpus(engine, corpus.as_ptr()) };
        let text = take_string(out);
        assert!(text.contains("abandonner\tVERB\tII.3\tlexical"), "{text}");
        unsafe { lexsense_engine_free(engine) };
    }

    #[test]
    fn error_paths_set_status_and_message() {
        let missing = CString::new("/nonexistent/dict.xml").unwrap();
        let lex = fixture_cstring("lexicon.tsv");
        let engine =
            unsafe { lexsense_engine_new(missing.as_ptr(), lex.as_ptr(), ptr::null()) };
        assert!(engine.is_null());
        let msg = take_string(lexsense_last_error());
        assert!(msg.contains("/nonexistent/dict.xml"), "{msg}");

        let engine = unsafe { lexsense_engine_new(ptr::null(), lex.as_ptr(), ptr::null()) };
        assert!(engine.is_null());
    }

    #[test]
    fn class_distance_over_the_c_interface() {
        let l1 = CString::new("ESPACE_LOCATIF,GEO,HUMAIN_COLLECTIF").unwrap();
        let l2 = CString::new("ENTITE,ESPACE_LOCATIF,ANIMAL").unwrap();
        let mut out: c_double = 0.0;
        let status =
            unsafe { lexsense_class_distance(l1.as_ptr(), l2.as_ptr(), &mut out) };
        assert_eq!(status, LexsenseStatus::Ok);
        assert_eq!(out, 0.8);

        let empty = CString::new("").unwrap();
        let status =
            unsafe { lexsense_class_distance(empty.as_ptr(), empty.as_ptr(), &mut out) };
        assert_eq!(status, LexsenseStatus::DegenerateDistance);

        let bad = CString::new("lowercase").unwrap();
        let status = unsafe { lexsense_class_distance(bad.as_ptr(), l2.as_ptr(), &mut out) };
        assert_eq!(status, LexsenseStatus::ParseError);
    }

    #[test]
    fn version_is_exposed() {
        let v = unsafe { CStr::from_ptr(lexsense_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
