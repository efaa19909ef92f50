//! Command-line driver.
//!
//! The binary is a thin wrapper around [`run`], which takes the argument
//! list and output sinks explicitly so it can be driven in-process, with
//! extra back-ends registered by name.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::absint::analyze;
use crate::chunked::ChunkedSemantics;
use crate::codegen::{compile, exec, Compiled, TargetProgram};
use crate::laws::law_suite;
use crate::list::ListSemantics;
use crate::sem::Observer;
use crate::term::programs::{perm_term, sort_term};
use crate::term::syntax::parse_term;
use crate::term::Term;
use crate::testkit::{cross_check_with, gen_law_cases, gen_terms, GenConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ndet",
    version,
    about = "Run, analyze and compile nondeterministic list programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a program and print its choices as JSON.
    Run {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "list")]
        backend: String,
    },
    /// Print the estimated degree of nondeterminism as JSON.
    Analyze {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        input: Input,
    },
    /// Compile a program to a target S-expression.
    Compile {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Execute a compiled target program and print its choices as JSON.
    Exec { file: PathBuf },
    /// Check the algebraic laws on generated instances.
    CheckLaws {
        #[arg(long, default_value = "list")]
        backend: String,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Compare all back-ends and the analysis on generated (or given) terms.
    Crosscheck {
        #[command(flatten)]
        source: OptSource,
        #[command(flatten)]
        input: Input,
        /// Additional back-end to compare against the list back-end.
        #[arg(long)]
        backend: Option<String>,
        #[command(flatten)]
        gen: GenArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Prog {
    Perm,
    Sort,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    prog: Option<Prog>,
    #[arg(long)]
    term_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct OptSource {
    #[arg(long)]
    prog: Option<Prog>,
    #[arg(long)]
    term_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Default)]
struct InputList(Vec<i64>);

#[derive(Debug, Args)]
struct Input {
    /// Comma-separated integers; empty means the empty list.
    #[arg(long = "input", value_name = "INPUT", default_value = "", allow_hyphen_values = true,
          value_parser = |s: &str| parse_input(s).map(InputList))]
    values: InputList,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 500)]
    count: usize,
}

/// Parse `1,2,3`; the empty string is the empty list.
pub fn parse_input(s: &str) -> Result<Vec<i64>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|e| format!("`{}` is not a base-10 integer: {e}", p.trim()))
        })
        .collect()
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn load_term(prog: Option<Prog>, file: Option<&Path>, input: &[i64]) -> Result<Term, Failure> {
    match (prog, file) {
        (Some(Prog::Perm), _) => Ok(perm_term(input)),
        (Some(Prog::Sort), _) => Ok(sort_term(input)),
        (None, Some(path)) => {
            let src = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            parse_term(&src).map_err(|e| Failure::usage(format!("{}:{e}", path.display())))
        }
        (None, None) => Err(Failure::usage("one of --prog or --term-file is required")),
    }
}

fn find_backend<'a>(
    name: &str,
    builtin: &'a [(&'a str, &'a dyn Observer)],
) -> Result<&'a dyn Observer, Failure> {
    builtin
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, o)| *o)
        .ok_or_else(|| {
            let known: Vec<_> = builtin.iter().map(|(n, _)| *n).collect();
            Failure::usage(format!(
                "unknown backend `{name}` (known: {})",
                known.join(", ")
            ))
        })
}

fn semantic_failure(e: impl std::fmt::Display) -> Failure {
    Failure::usage(e.to_string())
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

fn dispatch(cmd: Command, extra: &[(&str, &dyn Observer)], out: &mut dyn Write) -> Outcome {
    let chunked = ChunkedSemantics::default();
    let mut backends: Vec<(&str, &dyn Observer)> = vec![
        ("list", &ListSemantics),
        ("chunked", &chunked),
        ("compiled", &Compiled),
    ];
    backends.extend_from_slice(extra);

    match cmd {
        Command::Run {
            source,
            input,
            backend,
        } => {
            let sem = find_backend(&backend, &backends)?;
            let t = load_term(source.prog, source.term_file.as_deref(), &input.values.0)?;
            let bag = sem.observe(&t).map_err(semantic_failure)?;
            write_out(out, &format!("{}\n", bag.to_json()))?;
            Ok(EXIT_OK)
        }
        Command::Analyze { source, input } => {
            let t = load_term(source.prog, source.term_file.as_deref(), &input.values.0)?;
            let d = analyze(&t).map_err(semantic_failure)?;
            write_out(out, &format!("{}\n", d.to_json()))?;
            Ok(EXIT_OK)
        }
        Command::Compile {
            source,
            input,
            out: path,
        } => {
            let t = load_term(source.prog, source.term_file.as_deref(), &input.values.0)?;
            let text = compile(&t).map_err(semantic_failure)?.to_sexp();
            match path {
                Some(p) => fs::write(&p, text)
                    .map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?,
                None => write_out(out, &text)?,
            }
            Ok(EXIT_OK)
        }
        Command::Exec { file } => {
            let src = fs::read_to_string(&file)
                .map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
            let p = TargetProgram::parse(&src)
                .map_err(|e| Failure::usage(format!("{}:{e}", file.display())))?;
            let bag = exec(&p).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
            write_out(out, &format!("{}\n", bag.to_json()))?;
            Ok(EXIT_OK)
        }
        Command::CheckLaws { backend, gen } => {
            let sem = find_backend(&backend, &backends)?;
            let cases = gen_law_cases(&GenConfig::with_seed(gen.seed), gen.count);
            let report = law_suite(sem, &cases).map_err(semantic_failure)?;
            write_out(out, &format!("seed {}\n{report}\n", gen.seed))?;
            Ok(if report.is_clean() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            })
        }
        Command::Crosscheck {
            source,
            input,
            backend,
            gen,
        } => {
            let extra_obs = backend.map(|b| find_backend(&b, &backends)).transpose()?;
            let extras: Vec<&dyn Observer> = extra_obs.into_iter().collect();
            let terms = if source.prog.is_some() || source.term_file.is_some() {
                vec![load_term(
                    source.prog,
                    source.term_file.as_deref(),
                    &input.values.0,
                )?]
            } else {
                let cfg = GenConfig {
                    committed_choice: true,
                    ..GenConfig::with_seed(gen.seed)
                };
                gen_terms(&cfg, gen.count)
            };
            let mut bad = 0;
            let mut text = format!("seed {}\n", gen.seed);
            for t in &terms {
                let r = cross_check_with(t, &extras);
                if !r.is_clean() {
                    bad += 1;
                    text.push_str(&format!("{r}\n"));
                }
            }
            text.push_str(&format!(
                "crosscheck: {} term(s), {} with violations\n",
                terms.len(),
                bad
            ));
            write_out(out, &text)?;
            Ok(if bad == 0 { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

/// Run the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(
    args: I,
    extra: &[(&str, &dyn Observer)],
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, extra, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn input_lists() {
        assert_eq!(parse_input("1,2,3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_input("").unwrap(), Vec::<i64>::new());
        assert_eq!(parse_input(" -4 , 5").unwrap(), vec![-4, 5]);
        assert!(parse_input("1,,2").is_err());
        assert!(parse_input("0x10").is_err());
    }
}
