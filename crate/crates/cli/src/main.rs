//! Command-line driver: seeded exact property suites, Maurer-Cartan
//! solve/check jobs and expression evaluation with JSON reports.
//!
//! Exit codes: 0 success, 1 identity failure, 2 usage or malformed input,
//! 3 Maurer-Cartan obstruction.

mod report;
mod suites;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gerbeflow::cartan::{schouten, DiffForm, MultiVector};
use gerbeflow::ce;
use gerbeflow::linfty::{
    gauge_apply_untwisted, mc_solve, MCElement, McOutcome, McProblem, TwistedLInfty,
};

use report::SuiteConfig;

#[derive(Parser)]
#[command(
    name = "gerbeflow",
    version,
    about = "Exact graded-calculus toolkit: property suites, Maurer-Cartan jobs, expression evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded exact property suite and emit a report
    Suite(SuiteArgs),
    /// Maurer-Cartan jobs on a JSON problem file
    Mc(McArgs),
    /// Evaluate expressions from JSON operands
    Eval(EvalArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct SuiteArgs {
    /// Which identity suite to run
    #[arg(long, value_parser = suites::SUITE_NAMES)]
    suite: String,
    /// Chart dimension n
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Maximum total degree of sampled polynomial coefficients
    #[arg(long = "max-deg", default_value_t = 2)]
    max_deg: u32,
    /// Maximum exterior degree of sampled polyvectors
    #[arg(long = "mv-deg", default_value_t = 3)]
    mv_deg: usize,
    /// Number of seeded trials
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Seed (falls back to GERBEFLOW_SEED, then 42)
    #[arg(long)]
    seed: Option<u64>,
    /// Artin truncation order N of Q[h]/(h^N)
    #[arg(long, default_value_t = 1)]
    order: u32,
    /// Coefficient degree bound for spanning-family handle equality
    #[arg(long = "span-deg", default_value_t = 1)]
    span_deg: u32,
    /// Run the suite's negative control (only meaningful for linfty)
    #[arg(long = "negative-control", default_value_t = false)]
    negative_control: bool,
    /// Write the report to this path as well as stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct McArgs {
    /// check: test the candidate as given; solve: extend order by order
    #[arg(value_enum)]
    mode: McMode,
    /// JSON problem file {"ring":…, "H":…, "pi1":…, "maxOrder":…}
    file: PathBuf,
    /// Coefficient degree cap for solver corrections
    #[arg(long = "max-deg", default_value_t = 2)]
    max_deg: u32,
    /// Write the solution JSON here
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum McMode {
    Check,
    Solve,
}

#[derive(Args)]
struct EvalArgs {
    #[command(subcommand)]
    expr: EvalExpr,
}

#[derive(Subcommand)]
enum EvalExpr {
    /// Evaluate the contraction-morphism image of a form on a tuple
    Phi {
        /// The form, as JSON
        #[arg(long)]
        form: String,
        /// JSON array of polyvector arguments
        #[arg(long)]
        args: String,
        /// Artin truncation order
        #[arg(long, default_value_t = 1)]
        order: u32,
        /// Print each permutation term with its sign
        #[arg(long, default_value_t = false)]
        trace: bool,
    },
    /// Schouten bracket of two polyvectors
    Schouten {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, default_value_t = 1)]
        order: u32,
    },
    /// Untwisted gauge action exp(ad_lambda) on a Maurer-Cartan candidate
    Gauge {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        pi: String,
        #[arg(long, default_value_t = 2)]
        order: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Suite(args) => run_suite_command(args),
        Command::Mc(args) => run_mc_command(args),
        Command::Eval(args) => run_eval_command(args),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn resolve_seed(cli_seed: Option<u64>) -> u64 {
    cli_seed
        .or_else(|| {
            std::env::var("GERBEFLOW_SEED")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(42)
}

fn run_suite_command(args: SuiteArgs) -> Result<u8, String> {
    if args.dim < 1 || args.trials < 1 || args.order < 1 {
        return Err("bounds must satisfy dim >= 1, trials >= 1, order >= 1".into());
    }
    let cfg = SuiteConfig {
        suite: args.suite.clone(),
        dim: args.dim,
        max_poly_degree: args.max_deg,
        max_multivector_degree: args.mv_deg,
        trials: args.trials,
        seed: resolve_seed(args.seed),
        artin_order: args.order,
        spanning_degree: args.span_deg,
        negative_control: args.negative_control,
    };
    let report = suites::run_suite(&cfg);
    let rendered = match args.format {
        Format::Json => {
            serde_json::to_string_pretty(&report.to_json()).expect("report serializes") + "\n"
        }
        Format::Text => report.to_text(),
    };
    print!("{rendered}");
    if let Some(path) = args.out {
        fs::write(&path, &rendered).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(report.exit_code() as u8)
}

fn run_mc_command(args: McArgs) -> Result<u8, String> {
    let raw = fs::read_to_string(&args.file)
        .map_err(|e| format!("cannot read {}: {e}", args.file.display()))?;
    let value: Value = serde_json::from_str(&raw)
        .map_err(|e| format!("malformed JSON in {}: {e}", args.file.display()))?;
    let problem = McProblem::from_json(&value).map_err(|e| format!("invalid problem file: {e}"))?;
    let structure = TwistedLInfty::new(
        problem.pi1.num_vars(),
        problem.ring.clone(),
        problem.h_form.clone(),
    )
    .map_err(|e| format!("invalid twist: {e}"))?;
    let (status, order, pi, residual) = match args.mode {
        McMode::Solve => match mc_solve(&structure, &problem.pi1, problem.max_order, args.max_deg)
            .map_err(|e| format!("solver error: {e}"))?
        {
            McOutcome::Solved { pi } => {
                let residual = truncate(
                    &structure.mc_residual(&pi).map_err(|e| e.to_string())?,
                    problem.max_order,
                );
                ("solved", problem.max_order, pi.into_multivector(), residual)
            }
            McOutcome::Obstructed {
                order,
                partial,
                residual,
            } => ("obstructed", order, partial.into_multivector(), residual),
        },
        McMode::Check => {
            let candidate = if problem.pi1.in_maximal_ideal() {
                problem.pi1.clone()
            } else {
                problem.pi1.mul_h_power(1)
            };
            let element =
                MCElement::new(candidate).map_err(|e| format!("invalid candidate: {e}"))?;
            let residual = structure.mc_residual(&element).map_err(|e| e.to_string())?;
            let mut bad_order = None;
            for k in 0..problem.max_order {
                if !residual.h_coefficient(k).is_zero() {
                    bad_order = Some(k);
                    break;
                }
            }
            match bad_order {
                None => (
                    "solved",
                    problem.max_order,
                    element.into_multivector(),
                    truncate(&residual, problem.max_order),
                ),
                Some(k) => (
                    "obstructed",
                    k,
                    element.into_multivector(),
                    residual.h_coefficient(k),
                ),
            }
        }
    };
    let output = json!({
        "status": status,
        "order": order,
        "pi": pi.to_json(),
        "residual": residual.to_json(),
    });
    let rendered = match args.format {
        Format::Json => serde_json::to_string_pretty(&output).expect("output serializes") + "\n",
        Format::Text => {
            format!("status: {status}\norder: {order}\npi: {pi}\nresidual: {residual}\n")
        }
    };
    print!("{rendered}");
    if let Some(path) = args.out {
        fs::write(
            &path,
            serde_json::to_string_pretty(&output).expect("output serializes") + "\n",
        )
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(if status == "solved" { 0 } else { 3 })
}

fn truncate(mv: &MultiVector, max_order: u32) -> MultiVector {
    let mut out = MultiVector::zero(mv.num_vars(), mv.order());
    for k in 0..max_order {
        out = &out + &mv.h_coefficient(k).mul_h_power(k);
    }
    out
}

fn run_eval_command(args: EvalArgs) -> Result<u8, String> {
    match args.expr {
        EvalExpr::Phi {
            form,
            args,
            order,
            trace,
        } => {
            let form_v: Value =
                serde_json::from_str(&form).map_err(|e| format!("malformed form JSON: {e}"))?;
            let args_v: Value =
                serde_json::from_str(&args).map_err(|e| format!("malformed args JSON: {e}"))?;
            let omega =
                DiffForm::from_json(&form_v, order).map_err(|e| format!("invalid form: {e}"))?;
            let tuple: Vec<MultiVector> = args_v
                .as_array()
                .ok_or_else(|| "args must be a JSON array".to_string())?
                .iter()
                .map(|v| MultiVector::from_json(v, order))
                .collect::<Result<_, _>>()
                .map_err(|e| format!("invalid argument: {e}"))?;
            if trace {
                let (value, lines) =
                    ce::phi_eval_trace(&omega, &tuple).map_err(|e| e.to_string())?;
                for line in &lines {
                    println!(
                        "term covs={:?} sigma={:?} sign={:+} value={}",
                        line.covs, line.sigma, line.sign, line.value
                    );
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value.to_json()).expect("value serializes")
                );
            } else {
                let handle = ce::phi_handle(&omega, tuple.len());
                let value = handle.evaluate(&tuple).map_err(|e| e.to_string())?;
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value.to_json()).expect("value serializes")
                );
            }
            Ok(0)
        }
        EvalExpr::Schouten { lhs, rhs, order } => {
            let lv: Value =
                serde_json::from_str(&lhs).map_err(|e| format!("malformed lhs JSON: {e}"))?;
            let rv: Value =
                serde_json::from_str(&rhs).map_err(|e| format!("malformed rhs JSON: {e}"))?;
            let a = MultiVector::from_json(&lv, order).map_err(|e| format!("invalid lhs: {e}"))?;
            let b = MultiVector::from_json(&rv, order).map_err(|e| format!("invalid rhs: {e}"))?;
            let bracket = schouten(&a, &b).map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&bracket.to_json()).expect("value serializes")
            );
            Ok(0)
        }
        EvalExpr::Gauge { lambda, pi, order } => {
            let lv: Value =
                serde_json::from_str(&lambda).map_err(|e| format!("malformed lambda JSON: {e}"))?;
            let pv: Value =
                serde_json::from_str(&pi).map_err(|e| format!("malformed pi JSON: {e}"))?;
            let lam =
                MultiVector::from_json(&lv, order).map_err(|e| format!("invalid lambda: {e}"))?;
            let p = MultiVector::from_json(&pv, order).map_err(|e| format!("invalid pi: {e}"))?;
            let n = p.num_vars();
            let structure = TwistedLInfty::new(
                n,
                gerbeflow::ArtinRing::new(order),
                DiffForm::zero(n, order),
            )
            .map_err(|e| e.to_string())?;
            let element = MCElement::new(p).map_err(|e| format!("invalid pi: {e}"))?;
            let moved =
                gauge_apply_untwisted(&structure, &lam, &element).map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&moved.as_multivector().to_json())
                    .expect("value serializes")
            );
            Ok(0)
        }
    }
}
