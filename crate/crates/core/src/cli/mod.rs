//! Command-line interface: source parsing, dispatch and reports.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check
//! fails, 2 for unreadable input or usage errors.

pub mod assemble;
pub mod commands;
pub mod parser;
pub mod printer;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::hoe::SignVariant;
use crate::zoo;

pub use commands::{Command, Options, Outcome, SignChoice};
pub use parser::{parse, SourceFile};
pub use printer::print;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Displayed,
    Commutator,
    Auto,
}

#[derive(Parser, Debug)]
#[command(
    name = "hopf-ore",
    version,
    about = "Exact checks for Hopf algebras and Hopf Ore extensions"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Degree bound for the relation checks on monomials.
    #[arg(long, global = true, default_value_t = crate::hoe::DEFAULT_DEGREE_BOUND)]
    degree_bound: usize,
    #[arg(long, global = true, value_enum, default_value_t = SignArg::Auto)]
    sign_variant: SignArg,
    /// Word degree bound for domain evidence.
    #[arg(long, global = true, default_value_t = 4)]
    degree: usize,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Confluence and the Hopf axiom suite.
    CheckHopf { file: String },
    /// Validity of the Ore data.
    CheckOre { file: String },
    /// Hopf Ore extension conditions and direct verification.
    CheckHoe { file: String },
    /// Bring Δ(x) to the standard shape by changes of variable.
    Normalize { file: String },
    /// Bounded evidence that the algebra has no zero divisors.
    DomainEvidence { file: String },
    /// List built-in examples, print one, or run a command on one.
    Zoo {
        name: Option<String>,
        command: Option<String>,
    },
}

/// Reads `zoo:NAME` from the built-in sources and anything else from disk.
pub fn load(input: &str) -> Result<String, String> {
    match input.strip_prefix("zoo:") {
        Some(name) => zoo::source(name).map(str::to_string).ok_or_else(|| {
            format!(
                "unknown zoo entry `{name}`; available: {}",
                zoo::names().join(", ")
            )
        }),
        None => std::fs::read_to_string(input).map_err(|e| format!("cannot read `{input}`: {e}")),
    }
}

fn execute(
    cmd: Command,
    input: &str,
    opts: &Options,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let result = load(input).and_then(|text| {
        let src = parse(&text).map_err(|e| format!("{input}: {e}"))?;
        commands::run(cmd, input, &src, opts).map_err(|e| format!("{input}: {e}"))
    });
    match result {
        Ok(o) => {
            let text = match format {
                Format::Text => o.to_text(),
                Format::Json => format!("{:#}\n", o.to_json()),
            };
            let _ = out.write_all(text.as_bytes());
            o.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(msg.as_bytes())
            } else {
                out.write_all(msg.as_bytes())
            };
            return code;
        }
    };
    let opts = Options {
        degree_bound: cli.degree_bound,
        degree: cli.degree,
        sign: match cli.sign_variant {
            SignArg::Auto => SignChoice::Auto,
            SignArg::Displayed => SignChoice::Fixed(SignVariant::Displayed),
            SignArg::Commutator => SignChoice::Fixed(SignVariant::Commutator),
        },
    };
    let (cmd, file) = match cli.command {
        Cmd::CheckHopf { file } => (Command::CheckHopf, file),
        Cmd::CheckOre { file } => (Command::CheckOre, file),
        Cmd::CheckHoe { file } => (Command::CheckHoe, file),
        Cmd::Normalize { file } => (Command::Normalize, file),
        Cmd::DomainEvidence { file } => (Command::DomainEvidence, file),
        Cmd::Zoo { name: None, .. } => {
            let _ = writeln!(out, "{}", zoo::names().join("\n"));
            return 0;
        }
        Cmd::Zoo {
            name: Some(name),
            command: None,
        } => {
            return match zoo::source(&name) {
                Some(s) => {
                    let _ = out.write_all(s.as_bytes());
                    0
                }
                None => {
                    let _ = writeln!(err, "error: unknown zoo entry `{name}`");
                    2
                }
            };
        }
        Cmd::Zoo {
            name: Some(name),
            command: Some(sub),
        } => match Command::from_name(&sub) {
            Some(c) => (c, format!("zoo:{name}")),
            None => {
                let _ = writeln!(err, "error: unknown command `{sub}`");
                return 2;
            }
        },
    };
    execute(cmd, &file, &opts, cli.format, out, err)
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
