//! The `fuzzym` command line.
//!
//! Exit codes: 0 on success (an acceptance degree of 0 is still a success),
//! 2 for usage, parse, validation and input errors, 3 when a file cannot be
//! read.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::dsl::{parse_fps, parse_ftm, DslError};
use crate::fpsystem::PSystem;
use crate::ftm::{accept_degree, fuzzy_language, Machine};
use crate::fuzzy::{Degree, NormKind};

/// Environment variable that replaces the `norm:` clause of loaded files.
pub const NORM_OVERRIDE_VAR: &str = "FUZZYM_NORM_OVERRIDE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fuzzym",
    version,
    about = "Fuzzy Turing machines and fuzzy P systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a `.ftm` or `.fps` file.
    Validate { file: PathBuf },
    /// Acceptance degree of one input word.
    Run {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        max_steps: u64,
        #[arg(long)]
        json: bool,
    },
    /// Accepted fuzzy language up to a word length.
    Language {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        max_steps: u64,
        #[arg(long, default_value_t = 0.0, value_parser = parse_cutoff)]
        cutoff: f64,
        #[arg(long)]
        json: bool,
    },
    /// Run a fuzzy P system.
    Psystem {
        file: PathBuf,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        max_ticks: u64,
        #[arg(long)]
        json: bool,
    },
}

/// How results are printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Human,
    Json,
}

impl OutputMode {
    fn from_flag(json: bool) -> Self {
        if json {
            OutputMode::Json
        } else {
            OutputMode::Human
        }
    }
}

fn parse_cutoff(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    Degree::new(v).map(f64::from).map_err(|e| e.to_string())
}

/// Rounds to 12 significant digits; the shortest decimal of the rounded
/// value is what gets printed.
pub fn round_degree(v: f64) -> f64 {
    format!("{v:.11e}").parse().unwrap_or(v)
}

pub fn format_degree(v: f64) -> String {
    format!("{}", round_degree(v))
}

pub fn json_degree(v: f64) -> serde_json::Value {
    serde_json::Value::from(round_degree(v))
}

/// Runs the CLI with explicit arguments, norm override and output streams;
/// returns the exit code.
pub fn run<I, T>(
    args: I,
    norm_override: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let norm = match norm_override.map(str::parse::<NormKind>).transpose() {
        Ok(n) => n,
        Err(e) => {
            let _ = writeln!(err, "error: {NORM_OVERRIDE_VAR}: {e}");
            return EXIT_INVALID;
        }
    };
    match dispatch(cli.command, norm, out) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(err, "{}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("error: cannot read {}: {e}", path.display()),
    })
}

fn dsl_failure(path: &Path, e: DslError) -> Failure {
    let lines: Vec<String> = e
        .to_string()
        .lines()
        .map(|l| format!("{}: {l}", path.display()))
        .collect();
    Failure::invalid(lines.join("\n"))
}

fn load_machine(path: &Path, norm: Option<NormKind>) -> Result<Machine, Failure> {
    let mut m = parse_ftm(&read(path)?).map_err(|e| dsl_failure(path, e))?;
    if let Some(n) = norm {
        m.norm = n;
    }
    Ok(m)
}

fn load_system(path: &Path, norm: Option<NormKind>) -> Result<PSystem, Failure> {
    let mut p = parse_fps(&read(path)?).map_err(|e| dsl_failure(path, e))?;
    if let Some(n) = norm {
        p.norm = n;
    }
    Ok(p)
}

enum FileKind {
    Machine,
    System,
}

/// By extension, else by the first keyword of the file.
fn file_kind(path: &Path, text: &str) -> Option<FileKind> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("ftm") => return Some(FileKind::Machine),
        Some("fps") => return Some(FileKind::System),
        _ => {}
    }
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())?;
    match first.split_whitespace().next()? {
        "machine" => Some(FileKind::Machine),
        "psystem" => Some(FileKind::System),
        _ => None,
    }
}

fn emit(out: &mut dyn Write, text: &str) {
    let _ = out.write_all(text.as_bytes());
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) {
    emit(out, &format!("{value}\n"));
}

fn dispatch(command: Command, norm: Option<NormKind>, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Validate { file } => validate(&file, out),
        Command::Run {
            file,
            input,
            max_steps,
            json,
        } => run_word(
            &file,
            &input,
            max_steps as usize,
            OutputMode::from_flag(json),
            norm,
            out,
        ),
        Command::Language {
            file,
            max_len,
            max_steps,
            cutoff,
            json,
        } => language(
            &file,
            max_len,
            max_steps as usize,
            cutoff,
            OutputMode::from_flag(json),
            norm,
            out,
        ),
        Command::Psystem {
            file,
            max_ticks,
            json,
        } => psystem(&file, max_ticks, OutputMode::from_flag(json), norm, out),
    }
}

fn validate(path: &Path, out: &mut dyn Write) -> Result<(), Failure> {
    let text = read(path)?;
    match file_kind(path, &text) {
        Some(FileKind::Machine) => {
            let m = parse_ftm(&text).map_err(|e| dsl_failure(path, e))?;
            let kind = if m.is_deterministic() {
                "deterministic"
            } else {
                "nondeterministic"
            };
            emit(
                out,
                &format!(
                    "ok: machine `{}` ({} states, {} transitions, {kind})\n",
                    m.name,
                    m.states.len(),
                    m.transitions.len()
                ),
            );
        }
        Some(FileKind::System) => {
            let p = parse_fps(&text).map_err(|e| dsl_failure(path, e))?;
            emit(
                out,
                &format!(
                    "ok: psystem `{}` ({} compartments, output `{}`)\n",
                    p.name,
                    p.compartments().len(),
                    p.output
                ),
            );
        }
        None => {
            return Err(Failure::invalid(format!(
                "{}: expected a `machine` or `psystem` description",
                path.display()
            )))
        }
    }
    Ok(())
}

fn run_word(
    path: &Path,
    input: &str,
    max_steps: usize,
    mode: OutputMode,
    norm: Option<NormKind>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let m = load_machine(path, norm)?;
    let word = Machine::split_word(input);
    let r =
        accept_degree(&m, &word, max_steps).map_err(|e| Failure::invalid(format!("error: {e}")))?;
    match mode {
        OutputMode::Json => emit_json(out, &r.to_json()),
        OutputMode::Human => {
            let mut s = format!("e(w) = {}\n", format_degree(r.degree.value()));
            match &r.witness {
                Some(steps) => {
                    s.push_str("witness:\n");
                    if steps.is_empty() {
                        s.push_str("  (start state is final)\n");
                    }
                    for (t, d) in steps {
                        s.push_str(&format!("  {t} @ {}\n", format_degree(d.value())));
                    }
                }
                None => s.push_str("witness: none\n"),
            }
            s.push_str(&format!("paths explored: {}\n", r.paths_explored));
            s.push_str(&format!("truncated: {}\n", r.truncated));
            emit(out, &s);
        }
    }
    Ok(())
}

fn language(
    path: &Path,
    max_len: usize,
    max_steps: usize,
    cutoff: f64,
    mode: OutputMode,
    norm: Option<NormKind>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let m = load_machine(path, norm)?;
    let cutoff = Degree::new(cutoff).map_err(|e| Failure::invalid(format!("error: {e}")))?;
    let lang = fuzzy_language(&m, max_len, max_steps, cutoff)
        .map_err(|e| Failure::invalid(format!("error: {e}")))?;
    let mut members: Vec<(&str, Degree)> = lang.support().collect();
    members.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    match mode {
        OutputMode::Json => {
            let rows: Vec<serde_json::Value> = members
                .iter()
                .map(|(w, d)| json!({"word": w, "degree": json_degree(d.value())}))
                .collect();
            emit_json(out, &json!({ "language": rows }));
        }
        OutputMode::Human => {
            let mut s = String::new();
            for (w, d) in members {
                let w = if w.is_empty() { "ε" } else { w };
                s.push_str(&format!("{w} {}\n", format_degree(d.value())));
            }
            emit(out, &s);
        }
    }
    Ok(())
}

fn psystem(
    path: &Path,
    max_ticks: u64,
    mode: OutputMode,
    norm: Option<NormKind>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let p = load_system(path, norm)?;
    let r = p
        .run(max_ticks)
        .map_err(|e| Failure::invalid(format!("error: {e}")))?;
    match mode {
        OutputMode::Json => emit_json(out, &r.to_json()),
        OutputMode::Human => {
            let contents: Vec<String> = r
                .output_contents
                .iter()
                .map(|(s, n, d)| format!("{s}:{n}@{}", format_degree(d.value())))
                .collect();
            let mut s = format!(
                "result = {}\nhalted = {}\nticks_used = {}\noutput = {{{}}}\n",
                format_degree(r.result),
                r.halted,
                r.ticks_used,
                contents.join(", ")
            );
            if !r.halted {
                s.push_str("note: tick budget exhausted before halting; result is a snapshot\n");
            }
            emit(out, &s);
        }
    }
    Ok(())
}
