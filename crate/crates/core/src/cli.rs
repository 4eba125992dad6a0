//! The `autosemi` command line.
//!
//! Exit codes: 0 for YES or success, 1 for NO, 2 for errors and inconclusive searches.

use std::fmt::Write as FmtWrite;
use std::io::{Read as _, Write as _};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::automata::{Alphabet, Dfa, Word};
use crate::decide::{CzsOutcome, Decider, DecisionError, ReesRepresentation, Trichotomy};
use crate::document::StructureDocument;
use crate::oracle::{compare_with_brute, CayleyTable};
use crate::rewriting::{build_rm, TuringMachine};
use crate::structure::{catalog, CrossSectionOptions, InterpretedAutomaticStructure};

pub const YES: i32 = 0;
pub const NO: i32 = 1;
pub const ERROR: i32 = 2;

/// Words listed before output is cut short.
const LIST_LIMIT: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "autosemi", version, about = "Decision procedures for semigroups given by automatic structures")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug)]
pub struct Input {
    /// Structure document (JSON); `-` reads standard input.
    #[arg(short, long)]
    pub structure: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    LeftZeros,
    Zero,
    Identity,
    RightCancellative,
    Czs,
    Cs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Bicyclic,
    FreeSemigroup,
    FreeMonoid,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the axioms that are decidable without an interpretation.
    Validate(Input),
    /// Representative of a word.
    Repr {
        #[command(flatten)]
        input: Input,
        word: String,
    },
    /// Do two words represent the same element?
    WordEq {
        #[command(flatten)]
        input: Input,
        u: String,
        v: String,
    },
    Property {
        #[command(flatten)]
        input: Input,
        #[arg(value_enum)]
        name: Property,
    },
    LeftInverses {
        #[command(flatten)]
        input: Input,
        word: String,
    },
    Unit {
        #[command(flatten)]
        input: Input,
        word: String,
    },
    /// Classify the solutions of `x·w = e` for an idempotent `e`.
    Trichotomy {
        #[command(flatten)]
        input: Input,
        word: String,
        idempotent: String,
    },
    /// Print an equivalent structure with unique representatives.
    CrossSection {
        #[command(flatten)]
        input: Input,
        /// Keep the empty word as a representative.
        #[arg(long)]
        keep_epsilon: bool,
    },
    AdjoinZero(Input),
    /// Rees matrix form of a completely zero-simple semigroup.
    Rees {
        #[command(flatten)]
        input: Input,
        /// The input is completely simple (no zero).
        #[arg(long)]
        simple: bool,
    },
    /// Structure document of a finite semigroup from its multiplication table.
    FromCayley { file: PathBuf },
    /// Structure document of the monoid presented by a Turing machine's rewriting system.
    FromTm { file: PathBuf },
    /// List the rewriting rules of a Turing machine.
    RmRules { file: PathBuf },
    /// Search for `n` with `h̄ q₀ w h dⁿ` reducing to the empty word.
    RightInvert {
        file: PathBuf,
        word: String,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        step_bound: usize,
    },
    /// Compare every decision procedure with brute force on random finite semigroups.
    OracleCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: u64,
        #[arg(long, default_value_t = 6)]
        max_order: usize,
    },
    /// Print a structure document for a built-in example.
    Catalog {
        #[arg(value_enum)]
        name: Builtin,
        /// Generator names for the free examples, one character each.
        #[arg(long, default_value = "ab")]
        letters: String,
    },
}

/// What a command produced: exit code, text, and the JSON form.
pub struct Output {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Output {
    fn new(code: i32, text: impl Into<String>, json: Value) -> Self {
        Output { code, text: text.into(), json }
    }

    fn document(s: &InterpretedAutomaticStructure) -> Self {
        let doc = StructureDocument::from_structure(s);
        let json = serde_json::to_value(&doc).expect("documents serialize");
        Output::new(YES, doc.to_json(), json)
    }

    fn verdict(yes: bool, text: impl Into<String>) -> Self {
        let text = text.into();
        Output::new(if yes { YES } else { NO }, text.clone(), json!({ "answer": yes, "message": text }))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Document(#[from] crate::document::DocumentError),
    #[error("{0}")]
    Decision(#[from] DecisionError),
    #[error("{0}")]
    Structure(#[from] crate::structure::StructureError),
    #[error("{0}")]
    Rewrite(#[from] crate::rewriting::RewriteError),
    #[error("{0}")]
    Oracle(#[from] crate::oracle::OracleError),
    #[error("{0}")]
    Word(#[from] crate::automata::AutomataError),
}

fn read(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn load(input: &Input) -> Result<InterpretedAutomaticStructure, CliError> {
    Ok(StructureDocument::parse(&read(&input.structure)?)?.to_structure()?)
}

fn list(g: &Alphabet, lang: &Dfa) -> (Vec<String>, bool) {
    let words: Vec<String> = lang.enumerate(LIST_LIMIT, None).iter().map(|w| g.format_word(w)).collect();
    let more = !lang.is_finite() || lang.enumerate(LIST_LIMIT + 1, None).len() > LIST_LIMIT;
    (words, more)
}

fn list_output(g: &Alphabet, lang: &Dfa, what: &str, none: &str) -> Output {
    let (words, more) = list(g, lang);
    let json = json!({ "answer": !words.is_empty(), what: words, "truncated": more, "finite": lang.is_finite() });
    if words.is_empty() {
        return Output::new(NO, none, json);
    }
    let mut text = words.join("\n");
    if more {
        text.push_str("\n...");
    }
    Output::new(YES, text, json)
}

fn czs_output(outcome: CzsOutcome, what: &str) -> Output {
    match outcome {
        CzsOutcome::Yes => Output::verdict(true, what.to_string()),
        CzsOutcome::No(reason) => {
            let text = format!("not {what}: {reason}");
            Output::new(NO, text.clone(), json!({ "answer": false, "message": text, "reason": reason }))
        }
    }
}

/// JSON form of a Rees decomposition; the group is a nested structure document.
pub fn rees_json(r: &ReesRepresentation) -> Value {
    let g = r.gamma.generators();
    let delta = r.group.generators();
    let fmt_g = |w: &Word| g.format_word(w);
    let group_lang = r.group.rep_lang();
    let order = group_lang.is_finite().then(|| group_lang.enumerate(usize::MAX, None).len());
    let matrix: Vec<Vec<Option<String>>> = r
        .matrix
        .iter()
        .map(|row| row.iter().map(|e| e.as_ref().map(|w| delta.format_word(w))).collect())
        .collect();
    let group_doc = serde_json::to_value(StructureDocument::from_structure(&r.group)).expect("documents serialize");
    json!({
        "rows": r.rows.iter().map(fmt_g).collect::<Vec<_>>(),
        "cols": r.cols.iter().map(fmt_g).collect::<Vec<_>>(),
        "base": [r.base_row, r.base_col],
        "group_order": order,
        "matrix": matrix,
        "r": r.r.iter().map(fmt_g).collect::<Vec<_>>(),
        "q": r.q.iter().map(fmt_g).collect::<Vec<_>>(),
        "zero": fmt_g(&r.zero),
        "group": group_doc,
    })
}

fn rees_output(r: &ReesRepresentation) -> Output {
    let json = rees_json(r);
    let names = |key: &str| -> String {
        json[key].as_array().map(|v| v.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(" ")).unwrap_or_default()
    };
    let (rows, cols) = (names("rows"), names("cols"));
    let order = json["group_order"].as_u64();
    let delta = r.group.generators();
    let matrix: Vec<Vec<Option<String>>> = r
        .matrix
        .iter()
        .map(|row| row.iter().map(|e| e.as_ref().map(|w| delta.format_word(w))).collect())
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "rows (I): {rows}");
    let _ = writeln!(text, "columns (Λ): {cols}");
    match order {
        Some(n) => {
            let _ = writeln!(text, "group order: {n}");
        }
        None => {
            let _ = writeln!(text, "group: infinite");
        }
    }
    let _ = writeln!(text, "generators of the group: {}", delta.names().join(" "));
    let _ = writeln!(text, "matrix (Λ × I):");
    for row in &matrix {
        let cells: Vec<&str> = row.iter().map(|e| e.as_deref().unwrap_or("0")).collect();
        let _ = writeln!(text, "  {}", cells.join(" "));
    }
    Output::new(YES, text.trim_end(), json)
}

pub fn execute(command: &Command) -> Result<Output, CliError> {
    Ok(match command {
        Command::Validate(input) => {
            let s = load(input)?;
            let diagnostics: Vec<String> = s.sanity_validate().iter().map(ToString::to_string).collect();
            let ok = diagnostics.is_empty();
            let text = if ok { "valid".to_string() } else { diagnostics.join("\n") };
            Output::new(if ok { YES } else { NO }, text, json!({ "answer": ok, "diagnostics": diagnostics }))
        }
        Command::Repr { input, word } => {
            let s = load(input)?;
            let g = s.generators().clone();
            let rep = Decider::new(&s).find_representative(&g.parse_word(word)?)?;
            let text = g.format_word(&rep);
            Output::new(YES, text.clone(), json!({ "representative": text }))
        }
        Command::WordEq { input, u, v } => {
            let s = load(input)?;
            let g = s.generators();
            let eq = Decider::new(&s).word_problem(&g.parse_word(u)?, &g.parse_word(v)?)?;
            Output::verdict(eq, if eq { "equal" } else { "not equal" })
        }
        Command::Property { input, name } => {
            let s = load(input)?;
            let g = s.generators().clone();
            let d = Decider::new(&s);
            match name {
                Property::LeftZeros => list_output(&g, &d.left_zeros(), "left_zeros", "no left zero"),
                Property::Zero => match d.zero()? {
                    Some(z) => Output::verdict(true, format!("zero: {}", g.format_word(&z))),
                    None if d.left_zeros().is_empty() => Output::verdict(false, "no left zero"),
                    None => Output::verdict(false, "no zero"),
                },
                Property::Identity => match d.identity()? {
                    Some(e) => Output::verdict(true, format!("identity: {}", g.format_word(&e))),
                    None => Output::verdict(false, "no identity"),
                },
                Property::RightCancellative => {
                    let yes = d.is_right_cancellative();
                    Output::verdict(yes, if yes { "right cancellative" } else { "not right cancellative" })
                }
                Property::Czs => czs_output(d.is_completely_zero_simple()?, "completely zero-simple"),
                Property::Cs => czs_output(d.is_completely_simple()?, "completely simple"),
            }
        }
        Command::LeftInverses { input, word } => {
            let s = load(input)?;
            let g = s.generators().clone();
            let inverses = Decider::new(&s).left_inverses(&g.parse_word(word)?)?;
            list_output(&g, &inverses, "left_inverses", "no left inverse")
        }
        Command::Unit { input, word } => {
            let s = load(input)?;
            let yes = Decider::new(&s).is_unit(&s.generators().parse_word(word)?)?;
            Output::verdict(yes, if yes { "unit" } else { "not a unit" })
        }
        Command::Trichotomy { input, word, idempotent } => {
            let s = load(input)?;
            let g = s.generators().clone();
            let t = Decider::new(&s).inverse_trichotomy(&g.parse_word(word)?, &g.parse_word(idempotent)?)?;
            let words: Vec<String> = match &t {
                Trichotomy::A => Vec::new(),
                Trichotomy::B(k) | Trichotomy::C(k) => k.iter().map(|w| g.format_word(w)).collect(),
            };
            let case = t.tag().to_string();
            let text = match &t {
                Trichotomy::A => "A: infinitely many solutions".to_string(),
                Trichotomy::B(_) => format!("B: {}", words.join(" ")),
                Trichotomy::C(_) => format!("C: {}", if words.is_empty() { "no solutions".to_string() } else { words.join(" ") }),
            };
            Output::new(YES, text, json!({ "case": case, "solutions": words }))
        }
        Command::CrossSection { input, keep_epsilon } => {
            let s = load(input)?;
            let options = CrossSectionOptions { keep_epsilon: *keep_epsilon, ..Default::default() };
            Output::document(&s.to_cross_section(&options)?)
        }
        Command::AdjoinZero(input) => Output::document(&load(input)?.adjoin_zero()),
        Command::Rees { input, simple } => {
            let s = load(input)?;
            let d = Decider::new(&s);
            let result = if *simple { d.rees_decomposition_simple() } else { d.rees_decomposition() };
            match result {
                Ok(r) => rees_output(&r),
                Err(DecisionError::NotCzs(reason)) => czs_output(CzsOutcome::No(reason), "completely zero-simple"),
                Err(DecisionError::NotCompletelySimple(reason)) => czs_output(CzsOutcome::No(reason), "completely simple"),
                Err(e) => return Err(e.into()),
            }
        }
        Command::FromCayley { file } => Output::document(&CayleyTable::parse(&read(file)?)?.to_structure()),
        Command::FromTm { file } => {
            let rm = build_rm(&TuringMachine::parse(&read(file)?)?)?;
            Output::document(&rm.tm_structure()?)
        }
        Command::RmRules { file } => {
            let rm = build_rm(&TuringMachine::parse(&read(file)?)?)?;
            let g = rm.alphabet();
            let rules: Vec<Value> = rm
                .system
                .rules()
                .iter()
                .zip(&rm.schema)
                .map(|(r, k)| json!({ "schema": k, "lhs": g.format_word(&r.lhs), "rhs": g.format_word(&r.rhs) }))
                .collect();
            let text = rm
                .system
                .rules()
                .iter()
                .zip(&rm.schema)
                .map(|(r, k)| format!("({k}) {} -> {}", g.format_word(&r.lhs), g.format_word(&r.rhs)))
                .collect::<Vec<_>>()
                .join("\n");
            Output::new(YES, text, json!({ "alphabet": g.names(), "rules": rules }))
        }
        Command::RightInvert { file, word, max_n, step_bound } => {
            let rm = build_rm(&TuringMachine::parse(&read(file)?)?)?;
            let input = rm.machine.parse_input(word)?;
            match rm.right_invert_search(&input, *max_n, *step_bound)? {
                Some(n) => Output::new(YES, format!("n = {n}"), json!({ "found": true, "n": n })),
                None => Output::new(
                    ERROR,
                    format!("inconclusive: no n <= {max_n}"),
                    json!({ "found": false, "max_n": max_n }),
                ),
            }
        }
        Command::OracleCheck { seed, count, max_order } => {
            let mut mismatches: Vec<Value> = Vec::new();
            for i in 0..*count {
                let t = CayleyTable::random_small(seed.wrapping_add(i), *max_order);
                for m in compare_with_brute(&t)? {
                    mismatches.push(json!({ "seed": seed.wrapping_add(i), "table": t.to_text(), "mismatch": m }));
                }
            }
            let ok = mismatches.is_empty();
            let mut text = format!("{count} tables, {} mismatches", mismatches.len());
            for m in &mismatches {
                let _ = write!(text, "\nseed {}: {}", m["seed"], m["mismatch"].as_str().unwrap_or_default());
            }
            Output::new(if ok { YES } else { NO }, text, json!({ "answer": ok, "tables": count, "mismatches": mismatches }))
        }
        Command::Catalog { name, letters } => {
            let names: Vec<String> = letters.chars().map(String::from).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let s = match name {
                Builtin::Bicyclic => catalog::bicyclic(),
                Builtin::FreeSemigroup => catalog::free_semigroup(&refs),
                Builtin::FreeMonoid => catalog::free_monoid(&refs),
            };
            Output::document(&s)
        }
    })
}

/// Runs a parsed command line; returns the exit code with standard output and error text.
pub fn run(cli: &Cli) -> (i32, String, String) {
    match execute(&cli.command) {
        Ok(out) => {
            let stdout = if cli.json {
                let mut v = out.json;
                if let Value::Object(map) = &mut v {
                    if !map.contains_key("format") {
                        map.insert("exit".into(), json!(out.code));
                    }
                }
                serde_json::to_string_pretty(&v).expect("values serialize")
            } else {
                out.text
            };
            (out.code, stdout, String::new())
        }
        Err(e) => {
            let stdout = if cli.json { json!({ "exit": ERROR, "error": e.to_string() }).to_string() } else { String::new() };
            (ERROR, stdout, format!("error: {e}"))
        }
    }
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ERROR } else { YES };
        }
    };
    let (code, stdout, stderr) = run(&cli);
    // a closed pipe is not worth a panic
    if !stdout.is_empty() {
        let _ = writeln!(std::io::stdout().lock(), "{stdout}");
    }
    if !stderr.is_empty() {
        let _ = writeln!(std::io::stderr().lock(), "{stderr}");
    }
    code
}
