//! Law suites: executable statements of the invariants of every module, run exhaustively on
//! small instances and on seeded samples.
//!
//! Laws within a suite run on the rayon pool. Each law draws from its own ChaCha stream
//! (derived from the seed and the law's name), and outcomes are collected in declaration
//! order, so a report depends only on the seed, the size bound and the budget.

use std::io::Write;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use vz_core::budget::Budget;
use vz_core::literal::print;
use vz_core::ISet;

use crate::{CmdResult, EXIT_FAILURE, EXIT_OK};

mod category;
mod core;
mod cwf;
pub mod gen;
pub mod shrink;
mod universe;

#[derive(Args, Debug, Clone)]
pub struct LawArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteName,
    /// Largest object, base or context cardinality enumerated.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(0..=4))]
    pub max_size: u64,
    /// Seed for every sampled law; echoed in the report.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print the report as JSON (see schema/laws-report.schema.json).
    #[arg(long)]
    pub json: bool,
    /// List every law, not just failures.
    #[arg(long, short)]
    pub verbose: bool,
    /// Negative control: run with a deliberately wrong membership oracle.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Core,
    Universe,
    Category,
    Cwf,
    All,
}

impl SuiteName {
    pub const EACH: [SuiteName; 4] = [
        SuiteName::Core,
        SuiteName::Universe,
        SuiteName::Category,
        SuiteName::Cwf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Core => "core",
            SuiteName::Universe => "universe",
            SuiteName::Category => "category",
            SuiteName::Cwf => "cwf",
            SuiteName::All => "all",
        }
    }

    fn laws(self) -> &'static [(&'static str, LawFn)] {
        match self {
            SuiteName::Core => core::LAWS,
            SuiteName::Universe => universe::LAWS,
            SuiteName::Category => category::LAWS,
            SuiteName::Cwf => cwf::LAWS,
            SuiteName::All => &[],
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    pub max_size: usize,
    pub budget: Budget,
    pub fault: bool,
}

impl Config {
    /// The random stream of one law.
    pub fn rng(&self, law: &str) -> ChaCha8Rng {
        // FNV-1a, so streams do not depend on the standard library's hasher.
        let stream = law.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
        });
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

pub type LawFn = fn(&Config) -> LawOutcome;

/// How many failing cases a law reports in full.
pub const MAX_EXAMPLES: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub law: &'static str,
    /// Minimized when the law's inputs are sets; set-literal text.
    pub counterexample: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub examples: Vec<Failure>,
}

impl LawOutcome {
    pub fn new(law: &'static str) -> LawOutcome {
        LawOutcome {
            law,
            cases: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    pub fn merge(mut self, other: LawOutcome) -> LawOutcome {
        self.cases += other.cases;
        self.failures += other.failures;
        for f in other.examples {
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(f);
            }
        }
        self
    }

    pub fn record(&mut self, result: Result<(), String>, counterexample: impl FnOnce() -> String) {
        self.cases += 1;
        if let Err(detail) = result {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(Failure {
                    law: self.law,
                    counterexample: counterexample(),
                    detail,
                });
            }
        }
    }
}

/// Evaluates `f` on every input in parallel, keeping failures in input order.
pub fn check_all<T: Sync>(
    law: &'static str,
    inputs: &[T],
    f: impl Fn(&T) -> Result<(), String> + Sync,
    show: impl Fn(&T) -> String + Sync,
) -> LawOutcome {
    let results: Vec<Option<Failure>> = inputs
        .par_iter()
        .map(|x| {
            f(x).err().map(|detail| Failure {
                law,
                counterexample: show(x),
                detail,
            })
        })
        .collect();
    tally(law, results)
}

/// Like [`check_all`] for laws over tuples of sets; reported failures are shrunk first.
pub fn check_sets(
    law: &'static str,
    inputs: &[Vec<ISet>],
    f: impl Fn(&[ISet]) -> Result<(), String> + Sync,
) -> LawOutcome {
    let failed: Vec<bool> = inputs.par_iter().map(|xs| f(xs).is_err()).collect();
    let mut out = LawOutcome::new(law);
    out.cases = inputs.len() as u64;
    for (xs, _) in inputs.iter().zip(&failed).filter(|(_, &bad)| bad) {
        out.failures += 1;
        if out.examples.len() < MAX_EXAMPLES {
            let small = shrink::minimize(xs.clone(), |ys| f(ys).is_err());
            out.examples.push(Failure {
                law,
                counterexample: show_sets(&small),
                detail: f(&small).err().unwrap_or_default(),
            });
        }
    }
    out
}

fn tally(law: &'static str, results: Vec<Option<Failure>>) -> LawOutcome {
    let mut out = LawOutcome::new(law);
    out.cases = results.len() as u64;
    for f in results.into_iter().flatten() {
        out.failures += 1;
        if out.examples.len() < MAX_EXAMPLES {
            out.examples.push(f);
        }
    }
    out
}

pub fn show_sets(xs: &[ISet]) -> String {
    xs.iter().map(print).collect::<Vec<_>>().join(", ")
}

/// Turns a `Result` from the core library into a law verdict.
pub fn ok<T>(r: vz_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub laws: Vec<LawOutcome>,
    pub wall_time_ms: u128,
}

impl SuiteReport {
    pub fn cases(&self) -> u64 {
        self.laws.iter().map(|l| l.cases).sum()
    }

    pub fn failure_count(&self) -> u64 {
        self.laws.iter().map(|l| l.failures).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "cases": self.cases(),
            "failure_count": self.failure_count(),
            "laws": self.laws.iter().map(|l| json!({
                "law": l.law,
                "cases": l.cases,
                "failures": l.failures,
            })).collect::<Vec<_>>(),
            "failures": self.laws.iter().flat_map(|l| &l.examples).map(|f| json!({
                "law": f.law,
                "counterexample": f.counterexample,
                "detail": f.detail,
            })).collect::<Vec<_>>(),
            "wall_time_ms": self.wall_time_ms as u64,
        })
    }
}

pub fn run_suite(name: SuiteName, config: &Config) -> SuiteReport {
    let start = Instant::now();
    let laws = name.laws().par_iter().map(|(_, f)| f(config)).collect();
    SuiteReport {
        suite: name.as_str(),
        laws,
        wall_time_ms: start.elapsed().as_millis(),
    }
}

/// Runs the selected suites one after another.
pub fn run(name: SuiteName, config: &Config) -> Vec<SuiteReport> {
    let names: &[SuiteName] = match name {
        SuiteName::All => &SuiteName::EACH,
        _ => std::slice::from_ref(&name),
    };
    names.iter().map(|&n| run_suite(n, config)).collect()
}

pub fn report_json(reports: &[SuiteReport], config: &Config) -> Value {
    let b = config.budget;
    json!({
        "seed": config.seed,
        "max_size": config.max_size,
        "fault_injected": config.fault,
        "budget": {
            "perm_cap": b.perm_cap,
            "code_bound": b.code_bound,
            "pi_cap": b.pi_cap,
            "depth_cap": b.depth_cap,
        },
        "cases": reports.iter().map(SuiteReport::cases).sum::<u64>(),
        "failure_count": reports.iter().map(SuiteReport::failure_count).sum::<u64>(),
        "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
        "wall_time_ms": reports.iter().map(|r| r.wall_time_ms as u64).sum::<u64>(),
    })
}

pub fn report_text(reports: &[SuiteReport], config: &Config, verbose: bool) -> String {
    let b = config.budget;
    let mut out = format!(
        "seed {} max-size {} perm-cap {} code-bound {} pi-cap {} depth-cap {}{}\n",
        config.seed,
        config.max_size,
        b.perm_cap,
        b.code_bound,
        b.pi_cap,
        b.depth_cap,
        if config.fault { " fault-injected" } else { "" }
    );
    for r in reports {
        out += &format!(
            "suite {}: {} cases, {} failures ({} ms)\n",
            r.suite,
            r.cases(),
            r.failure_count(),
            r.wall_time_ms
        );
        for l in &r.laws {
            if verbose || l.failures > 0 {
                out += &format!(
                    "  law {}: {} cases, {} failures\n",
                    l.law, l.cases, l.failures
                );
            }
            for f in &l.examples {
                out += &format!(
                    "    counterexample: {}\n    detail: {}\n",
                    f.counterexample, f.detail
                );
            }
        }
    }
    let failures: u64 = reports.iter().map(SuiteReport::failure_count).sum();
    out += &format!(
        "total: {} cases, {} failures\n",
        reports.iter().map(SuiteReport::cases).sum::<u64>(),
        failures
    );
    out
}

pub fn cmd_laws(args: &LawArgs, budget: &Budget, out: &mut dyn Write) -> CmdResult {
    let config = Config {
        seed: args.seed,
        max_size: args.max_size as usize,
        budget: *budget,
        fault: args.inject_fault,
    };
    let reports = run(args.suite, &config);
    if args.json {
        let doc = report_json(&reports, &config);
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    } else {
        out.write_all(report_text(&reports, &config, args.verbose).as_bytes())?;
    }
    let failed = reports.iter().any(|r| r.failure_count() > 0);
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}
