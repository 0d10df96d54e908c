//! The `vz` command line: check and denote programs, inspect set literals, convert between set
//! representations and run the law suites.
//!
//! Exit codes are [`EXIT_OK`], [`EXIT_FAILURE`] (a check, lookup or law failed) and
//! [`EXIT_USAGE`] (bad arguments, unreadable input, unparsable literal).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use vz_core::ackermann::from_ackermann_with;
use vz_core::budget::Budget;
use vz_core::literal::{self, print_with, Style};
use vz_core::{ackermann_code, Error, ISet};

pub mod laws;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "vz",
    version,
    about = "Canonical iterative sets and a type theory decided by evaluation"
)]
pub struct Cli {
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Resource caps. Flags win over the environment.
#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Widest node searched for a permuting bijection.
    #[arg(long, global = true, env = "VZ_BUDGET_PERM_CAP", value_parser = clap::value_parser!(u64).range(1..))]
    pub perm_cap: Option<u64>,
    /// Exclusive bound on Ackermann codes decoded or enumerated.
    #[arg(long, global = true, env = "VZ_BUDGET_CODE_BOUND", value_parser = clap::value_parser!(u64).range(1..))]
    pub code_bound: Option<u64>,
    /// Largest dependent product, hom-set or context enumerated.
    #[arg(long, global = true, env = "VZ_BUDGET_PI_CAP", value_parser = clap::value_parser!(u64).range(1..))]
    pub pi_cap: Option<u64>,
    /// Deepest set accepted from input.
    #[arg(long, global = true, env = "VZ_BUDGET_DEPTH_CAP", value_parser = clap::value_parser!(u64).range(1..))]
    pub depth_cap: Option<u64>,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        let d = Budget::DEFAULT;
        Budget {
            perm_cap: self.perm_cap.unwrap_or(d.perm_cap),
            code_bound: self.code_bound.unwrap_or(d.code_bound),
            pi_cap: self.pi_cap.unwrap_or(d.pi_cap),
            depth_cap: self.depth_cap.unwrap_or(d.depth_cap),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Type-check .vz programs. Diagnostics go to standard error.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Diagnostics as one JSON document.
        #[arg(long)]
        json: bool,
    },
    /// Print the denotation of a definition.
    Denote {
        path: PathBuf,
        name: String,
        /// The value's Ackermann code instead of its literal.
        #[arg(long, conflicts_with = "json")]
        ack: bool,
        /// Type, literal, code and cardinality as one JSON object.
        #[arg(long)]
        json: bool,
    },
    /// Parse a set literal and print it canonically, or the requested views of it.
    Set {
        /// A literal such as `{{},{{}}}`, `<a,b>` or `#3`.
        expr: String,
        #[arg(long)]
        ack: bool,
        /// One member per line.
        #[arg(long)]
        members: bool,
        /// Von Neumann rank.
        #[arg(long)]
        rank: bool,
    },
    /// Run the law suites.
    Laws(laws::LawArgs),
    /// Convert a set between literal, JSON and Ackermann-code forms.
    Convert {
        input: String,
        /// Detected from the first character when omitted.
        #[arg(long, value_enum)]
        from: Option<Form>,
        #[arg(long, value_enum, default_value = "literal")]
        to: Form,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Literal,
    Json,
    Ack,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let budget = cli.budget.budget();
    if let Err(e) = budget.install() {
        let _ = writeln!(err, "vz: {e}");
        return EXIT_USAGE;
    }
    let result = match cli.command {
        Command::Check { paths, json } => check(&paths, json, out, err),
        Command::Denote {
            path,
            name,
            ack,
            json,
        } => denote(&path, &name, ack, json, &budget, out, err),
        Command::Set {
            expr,
            ack,
            members,
            rank,
        } => set(&expr, ack, members, rank, &budget, out),
        Command::Laws(args) => laws::cmd_laws(&args, &budget, out),
        Command::Convert { input, from, to } => convert(&input, from, to, &budget, out),
    };
    match result {
        Ok(code) => code,
        Err(Fail(code, message)) => {
            let _ = writeln!(err, "vz: {message}");
            code
        }
    }
}

/// An exit code with a message for standard error.
pub struct Fail(pub i32, pub String);

type CmdResult = Result<i32, Fail>;

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Fail {
        Fail(EXIT_USAGE, format!("write failed: {e}"))
    }
}

fn read(path: &PathBuf) -> Result<String, Fail> {
    std::fs::read_to_string(path)
        .map_err(|e| Fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))
}

/// Syntax errors in literals are usage errors; anything else is a semantic failure.
fn literal_fail(e: Error) -> Fail {
    let code = match e {
        Error::Syntax { .. } | Error::Json(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    };
    Fail(code, e.to_string())
}

fn check(paths: &[PathBuf], as_json: bool, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let mut failed = false;
    let mut files = Vec::new();
    for path in paths {
        let src = read(path)?;
        let name = path.display().to_string();
        let checked = vz_tt::check_program(&src);
        failed |= !checked.ok();
        if as_json {
            files.push(json!({
                "file": name,
                "ok": checked.ok(),
                "definitions": checked.program.defs.iter().map(|d| d.name.clone()).collect::<Vec<_>>(),
                "diagnostics": checked.diagnostics.iter().map(|d| d.to_json(&name, &src)).collect::<Vec<_>>(),
            }));
        } else if checked.ok() {
            let n = checked.program.defs.len();
            writeln!(
                out,
                "{name}: ok, {n} definition{}",
                if n == 1 { "" } else { "s" }
            )?;
        } else {
            for d in &checked.diagnostics {
                err.write_all(d.render(&name, &src).as_bytes())?;
            }
            writeln!(
                err,
                "{name}: {} error{}",
                checked.diagnostics.len(),
                if checked.diagnostics.len() == 1 {
                    ""
                } else {
                    "s"
                }
            )?;
        }
    }
    if as_json {
        let doc = json!({"ok": !failed, "files": files});
        writeln!(err, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    }
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}

fn ack_text(x: &ISet) -> Option<String> {
    ackermann_code(x).ok().map(|c| c.to_string())
}

fn denote(
    path: &PathBuf,
    name: &str,
    ack: bool,
    as_json: bool,
    budget: &Budget,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let src = read(path)?;
    let file = path.display().to_string();
    let checked = vz_tt::check_program_with(&src, budget);
    if !checked.ok() {
        for d in &checked.diagnostics {
            err.write_all(d.render(&file, &src).as_bytes())?;
        }
        return Err(Fail(EXIT_FAILURE, format!("{file} does not check")));
    }
    let Some(def) = checked.program.get(name) else {
        return Err(Fail(
            EXIT_FAILURE,
            format!("no definition named `{name}` in {file}"),
        ));
    };
    let text = vz_tt::print_value(&def.value, Some(&def.ty_code));
    if as_json {
        let doc = json!({
            "name": def.name,
            "type": vz_tt::core::show_ty(&def.ty, &checked.program.names(), &[]),
            "type_code": literal::to_json(&def.ty_code),
            "type_cardinality": def.ty_code.cardinality(),
            "value": text,
            "value_json": literal::to_json(&def.value),
            "ackermann": ack_text(&def.value),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    } else if ack {
        let code = ackermann_code(&def.value).map_err(|e| Fail(EXIT_FAILURE, e.to_string()))?;
        writeln!(out, "{code}")?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(EXIT_OK)
}

fn set(
    expr: &str,
    ack: bool,
    members: bool,
    rank: bool,
    budget: &Budget,
    out: &mut dyn Write,
) -> CmdResult {
    let x = literal::parse_with(expr, budget).map_err(literal_fail)?;
    if !(ack || members || rank) {
        writeln!(out, "{}", literal::print(&x))?;
    }
    if ack {
        let code = ackermann_code(&x).map_err(|e| Fail(EXIT_FAILURE, e.to_string()))?;
        writeln!(out, "{code}")?;
    }
    if members {
        for m in x.members() {
            writeln!(out, "{}", literal::print(m))?;
        }
    }
    if rank {
        writeln!(out, "{}", x.rank())?;
    }
    Ok(EXIT_OK)
}

fn detect(input: &str) -> Form {
    match input.trim_start().chars().next() {
        Some(c) if c.is_ascii_digit() => Form::Ack,
        Some('[') => Form::Json,
        _ => Form::Literal,
    }
}

fn convert(
    input: &str,
    from: Option<Form>,
    to: Form,
    budget: &Budget,
    out: &mut dyn Write,
) -> CmdResult {
    let x = match from.unwrap_or_else(|| detect(input)) {
        Form::Literal => literal::parse_with(input, budget).map_err(literal_fail)?,
        Form::Json => {
            let v: Value = serde_json::from_str(input)
                .map_err(|e| Fail(EXIT_USAGE, format!("malformed json: {e}")))?;
            literal::from_json(&v).map_err(literal_fail)?
        }
        Form::Ack => {
            let n = BigUint::parse_bytes(input.trim().as_bytes(), 10)
                .ok_or_else(|| Fail(EXIT_USAGE, format!("not a natural number: {input}")))?;
            from_ackermann_with(&n, budget).map_err(|e| Fail(EXIT_FAILURE, e.to_string()))?
        }
    };
    match to {
        Form::Literal => writeln!(out, "{}", print_with(&x, Style::SUGARED))?,
        Form::Json => writeln!(out, "{}", literal::to_json(&x))?,
        Form::Ack => {
            let code = ackermann_code(&x).map_err(|e| Fail(EXIT_FAILURE, e.to_string()))?;
            writeln!(out, "{code}")?;
        }
    }
    Ok(EXIT_OK)
}
