//! Command-line front end for the costlr workbench.
//!
//! [`run`] takes the argument vector and two output streams and returns the
//! process exit code, so the binary is a thin wrapper and tests can drive
//! the whole front end in-process.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use costlr::relations::{param_test, ParamTestConfig};
use costlr::semantics::{eval_cost, eval_std, Env};
use costlr::theorems::{check_free_theorem, fusion_counterexample, fusion_good, FusionReport, Shape, TheoremError, Verdict};
use costlr::{parse_term, parse_type, typecheck, Ctx, Term, Ty, TypeError};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_TYPE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VIOLATED: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

/// Environment variable that overrides `param-test --seed`.
pub const SEED_ENV: &str = "COSTLR_SEED";

#[derive(Debug, Parser)]
#[command(name = "costlr", version, about = "Cost-aware logical relations workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Typecheck a term file and print its type.
    Typecheck {
        file: PathBuf,
        /// Type variables in scope. Defaults to those the term mentions.
        #[arg(long, value_delimiter = ',')]
        tyvars: Option<Vec<String>>,
    },
    /// Evaluate a closed term under the standard or the cost semantics.
    Eval {
        file: PathBuf,
        #[arg(long, conflicts_with = "std")]
        cost: bool,
        #[arg(long)]
        std: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check both sides of a free theorem on concrete arguments.
    FreeTheorem {
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        args: Vec<PathBuf>,
        #[arg(long)]
        tau1: String,
        #[arg(long)]
        tau2: String,
        #[arg(long)]
        json: bool,
    },
    /// Randomized parametricity checks over the bundled corpus.
    ParamTest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        iters: usize,
    },
    /// Short-cut fusion on a good producer and on the counterexample family.
    FusionDemo {
        #[arg(long, default_value_t = 100)]
        counterexample: u64,
        #[arg(long)]
        json: bool,
    },
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    s.parse()
}

/// A failure carrying its exit code and the message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<TypeError> for Failure {
    fn from(e: TypeError) -> Self {
        Failure::new(EXIT_TYPE, e.to_string())
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        let code = match e {
            TheoremError::Arity { .. } => EXIT_USAGE,
            _ => EXIT_TYPE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_USAGE, format!("write failed: {e}"))
    }
}

type Outcome = Result<i32, Failure>;

/// Parse `args` (including the program name) and run the chosen subcommand.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Typecheck { file, tyvars } => cmd_typecheck(&file, tyvars, out),
        Command::Eval { file, cost, std: _, json } => cmd_eval(&file, cost, json, out),
        Command::FreeTheorem {
            shape,
            f,
            g,
            args,
            tau1,
            tau2,
            json,
        } => cmd_free_theorem(shape, &f, &g, &args, &tau1, &tau2, json, out),
        Command::ParamTest { seed, iters } => {
            let seed = match std::env::var(SEED_ENV) {
                Ok(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| Failure::new(EXIT_USAGE, format!("{SEED_ENV}=`{s}` is not a seed")))?,
                Err(_) => seed,
            };
            cmd_param_test(seed, iters, out)
        }
        Command::FusionDemo { counterexample, json } => cmd_fusion_demo(counterexample, json, out),
    }
}

fn read_term(path: &Path) -> Result<Term, Failure> {
    let src = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    parse_term(&src).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn cmd_typecheck(file: &Path, tyvars: Option<Vec<String>>, out: &mut dyn Write) -> Outcome {
    let t = read_term(file)?;
    let vars: Vec<String> = match tyvars {
        Some(vs) => vs.into_iter().filter(|v| !v.is_empty()).collect(),
        None => t.type_vars().into_iter().collect(),
    };
    let ty = typecheck(&Ctx::with_type_vars(vars), &t)?;
    writeln!(out, "{ty}")?;
    Ok(EXIT_OK)
}

fn cmd_eval(file: &Path, cost: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let t = read_term(file)?;
    typecheck(&Ctx::with_type_vars(t.type_vars()), &t)?;
    if cost {
        let r = eval_cost(&Env::new(), &t);
        writeln!(out, "{}", serde_json::to_string(&r).expect("values serialize"))?;
    } else {
        let v = eval_std(&Env::new(), &t);
        if json {
            writeln!(out, "{}", serde_json::to_string(&json!({ "value": v })).expect("values serialize"))?;
        } else {
            writeln!(out, "{v}")?;
        }
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_free_theorem(
    shape: Shape,
    f: &Path,
    g: &Path,
    args: &[PathBuf],
    tau1: &str,
    tau2: &str,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let f = read_term(f)?;
    let g = read_term(g)?;
    let args = args.iter().map(|p| read_term(p)).collect::<Result<Vec<_>, _>>()?;
    let ty = |s: &str| -> Result<Ty, Failure> {
        parse_type(s).map_err(|e| Failure::new(EXIT_PARSE, format!("type `{s}`: {e}")))
    };
    let report = check_free_theorem(shape, &f, &g, &args, &ty(tau1)?, &ty(tau2)?)?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&report).expect("reports serialize"))?;
    } else {
        writeln!(out, "shape:   {}", report.shape)?;
        writeln!(out, "lhs:     {}", report.lhs)?;
        writeln!(out, "rhs:     {}", report.rhs)?;
        writeln!(out, "values:  {}", if report.value_equal { "equal" } else { "differ" })?;
        writeln!(out, "delta:   {}", report.delta)?;
        writeln!(out, "verdict: {}", report.verdict)?;
        if let Some(note) = &report.note {
            writeln!(out, "note:    {note}")?;
        }
    }
    Ok(match report.verdict {
        Verdict::Holds => EXIT_OK,
        _ => EXIT_VIOLATED,
    })
}

fn cmd_param_test(seed: u64, iters: usize, out: &mut dyn Write) -> Outcome {
    let report = param_test(ParamTestConfig::new(seed, iters));
    writeln!(out, "{}", serde_json::to_string(&report).expect("reports serialize"))?;
    Ok(if report.ok() { EXIT_OK } else { EXIT_VIOLATED })
}

fn cmd_fusion_demo(n: u64, json: bool, out: &mut dyn Write) -> Outcome {
    let good = fusion_good().check()?;
    let bad = fusion_counterexample(n).check()?;
    if json {
        let doc = json!({ "good": good, "counterexample": { "n": n, "report": bad } });
        writeln!(out, "{}", serde_json::to_string(&doc).expect("reports serialize"))?;
        return Ok(EXIT_OK);
    }
    writeln!(
        out,
        "{:<24} {:>10} {:>10} {:>8} {:>12} {:>13}",
        "case", "unfused", "fused", "values", "improvement", "intermediate"
    )?;
    let row = |out: &mut dyn Write, name: &str, r: &FusionReport| -> std::io::Result<()> {
        writeln!(
            out,
            "{:<24} {:>10} {:>10} {:>8} {:>12} {:>13}",
            name,
            r.lhs_cost,
            r.rhs_cost,
            if r.value_equal { "equal" } else { "differ" },
            if r.improvement_holds { "yes" } else { "no" },
            r.intermediate_length
        )
    };
    row(out, "good", &good)?;
    row(out, &format!("counterexample n={n}"), &bad)?;
    Ok(EXIT_OK)
}
