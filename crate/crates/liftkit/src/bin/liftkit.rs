//! Command-line interface over the lifting toolkit. All machine-readable
//! output is deterministic JSON on stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 2 usage, 3 inequality violated, 4 valid but not
//! facet defining, 5 validation or parse failure, 6 infeasible up-lift.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use liftkit::gu::{build_gu_task, expected_gu_coefficients};
use liftkit::hardness::{
    build_hard_instance, decide_rpp_via_lifting, predicted_hard_coefficients, preprocess_rpp,
    solve_rpp, Preprocessed, RppError,
};
use liftkit::io::{
    load_json, to_pretty_json, FacetReportFile, InequalityFile, InstanceFile, RppFile,
};
use liftkit::knapsack::DEFAULT_ENUMERATION_LIMIT;
use liftkit::lifting::{scale_task, sequential_lift, LiftError};
use liftkit::verify::{brute_force_lift_oracle, check_facet, check_validity, Validity};

const EXIT_VIOLATED: u8 = 3;
const EXIT_NOT_FACET: u8 = 4;
const EXIT_VALIDATION: u8 = 5;
const EXIT_INFEASIBLE: u8 = 6;

#[derive(Parser)]
#[command(name = "liftkit", version, about = "Exact sequential lifting of cover inequalities")]
struct Cli {
    /// Human-readable output with a timestamp header instead of bare JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the sequential lifted cover inequality for an instance file.
    Lift {
        file: PathBuf,
        /// Cross-check the result against the brute-force lifting oracle.
        #[arg(long)]
        oracle: bool,
        /// Multiply weights and capacity by this factor before lifting.
        #[arg(long)]
        scale: Option<String>,
    },
    /// Check an inequality against an instance by enumeration.
    Verify {
        file: PathBuf,
        ineq: PathBuf,
        /// Also check whether the inequality is facet defining.
        #[arg(long)]
        facet: bool,
        /// Enumeration limit override (2^n growth; be careful).
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Emit the exponential-coefficient family instance for a given r.
    GenGu {
        #[arg(long)]
        r: usize,
        /// Include the analytically known lifted coefficients.
        #[arg(long)]
        expected: bool,
    },
    /// Build the hardness-reduction instance from an RPP file.
    GenHard {
        #[arg(long)]
        rpp: PathBuf,
        /// Include the predicted coefficient ledger (solves the RPP first).
        #[arg(long)]
        predict: bool,
    },
    /// Restricted partition problem workflows.
    Rpp {
        #[command(subcommand)]
        command: RppCommand,
    },
}

#[derive(Subcommand)]
enum RppCommand {
    /// Decide the instance with the direct subset-sum table.
    Solve { file: PathBuf },
    /// Decide the instance through the lifting reduction.
    ViaLifting { file: PathBuf },
}

fn enumeration_limit(flag: Option<usize>) -> usize {
    if let Some(n) = flag {
        return n;
    }
    std::env::var("LIFTKIT_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_LIMIT)
}

fn emit(human: bool, value: &serde_json::Value) {
    if human {
        println!("# liftkit report, generated {}", timestamp());
    }
    print!("{}", to_pretty_json(value));
}

fn timestamp() -> String {
    // Seconds since the Unix epoch; enough for a human header without
    // pulling in a clock formatting dependency.
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn lift_error_code(err: &LiftError) -> u8 {
    match err {
        LiftError::InfeasibleLift { .. } => EXIT_INFEASIBLE,
        _ => EXIT_VALIDATION,
    }
}

fn run_lift(human: bool, file: &PathBuf, oracle: bool, scale: Option<String>) -> ExitCode {
    let instance: InstanceFile = match load_json(file) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_VALIDATION, &e.to_string()),
    };
    let mut task = match instance.to_task() {
        Ok(t) => t,
        Err(e) => return fail(EXIT_VALIDATION, &e.to_string()),
    };
    if let Some(t) = scale {
        let factor: BigInt = match t.parse() {
            Ok(f) => f,
            Err(_) => return fail(EXIT_VALIDATION, &format!("bad scale factor `{t}`")),
        };
        task = match scale_task(&task, &factor) {
            Ok(t) => t,
            Err(e) => return fail(lift_error_code(&e), &e.to_string()),
        };
    }
    let lci = match sequential_lift(&task) {
        Ok(l) => l,
        Err(e) => return fail(lift_error_code(&e), &e.to_string()),
    };
    let mut out = serde_json::to_value(InequalityFile::from_lci(&lci)).unwrap();
    if oracle {
        let limit = enumeration_limit(None);
        match brute_force_lift_oracle(&task, limit) {
            Ok(reference) => {
                let agrees = reference == lci;
                out["oracle_agrees"] = json!(agrees);
                if !agrees {
                    emit(human, &out);
                    return fail(1, "oracle disagrees with the sequential lifting solver");
                }
            }
            Err(e) => return fail(EXIT_VALIDATION, &format!("oracle failed: {e}")),
        }
    }
    emit(human, &out);
    ExitCode::SUCCESS
}

fn run_verify(human: bool, file: &PathBuf, ineq: &PathBuf, facet: bool, limit: Option<usize>) -> ExitCode {
    let limit = enumeration_limit(limit);
    if limit > DEFAULT_ENUMERATION_LIMIT {
        eprintln!(
            "warning: enumeration limit {limit} above the default {DEFAULT_ENUMERATION_LIMIT}; runtime grows as 2^n"
        );
    }
    let instance: InstanceFile = match load_json(file) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_VALIDATION, &e.to_string()),
    };
    let ks = match instance.to_knapsack_set() {
        Ok(k) => k,
        Err(e) => return fail(EXIT_VALIDATION, &e.to_string()),
    };
    let ineq_file: InequalityFile = match load_json(ineq) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_VALIDATION, &e.to_string()),
    };
    let (coeffs, rhs) = match (ineq_file.coefficients(), ineq_file.rhs_value()) {
        (Ok(c), Ok(r)) => (c, r),
        (Err(e), _) | (_, Err(e)) => return fail(EXIT_VALIDATION, &e.to_string()),
    };

    if facet {
        match check_facet(&ks, &coeffs, &rhs, limit) {
            Ok(report) => {
                emit(human, &serde_json::to_value(FacetReportFile::from_report(&report)).unwrap());
                if !report.valid {
                    ExitCode::from(EXIT_VIOLATED)
                } else if !report.is_facet {
                    ExitCode::from(EXIT_NOT_FACET)
                } else {
                    ExitCode::SUCCESS
                }
            }
            Err(e) => fail(EXIT_VALIDATION, &e.to_string()),
        }
    } else {
        match check_validity(&ks, &coeffs, &rhs, limit) {
            Ok(Validity::Valid) => {
                emit(human, &json!({ "result": "valid" }));
                ExitCode::SUCCESS
            }
            Ok(Validity::Violated(point)) => {
                emit(human, &json!({ "result": "violated", "witness": point }));
                ExitCode::from(EXIT_VIOLATED)
            }
            Err(e) => fail(EXIT_VALIDATION, &e.to_string()),
        }
    }
}

fn run_gen_gu(human: bool, r: usize, expected: bool) -> ExitCode {
    if r == 0 {
        return fail(EXIT_VALIDATION, "--r must be >= 1");
    }
    let task = build_gu_task(r);
    let mut out = serde_json::to_value(InstanceFile::from_task(&task)).unwrap();
    if expected {
        let map: serde_json::Map<String, serde_json::Value> = expected_gu_coefficients(r)
            .iter()
            .map(|(i, c)| (i.to_string(), json!(c.to_string())))
            .collect();
        out["expected"] = serde_json::Value::Object(map);
    }
    emit(human, &out);
    ExitCode::SUCCESS
}

fn rpp_error_code(err: &RppError) -> u8 {
    match err {
        RppError::Lift(LiftError::InfeasibleLift { .. }) => EXIT_INFEASIBLE,
        _ => EXIT_VALIDATION,
    }
}

fn run_gen_hard(human: bool, rpp: &PathBuf, predict: bool) -> ExitCode {
    let file: RppFile = match load_json(rpp) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_VALIDATION, &e.to_string()),
    };
    let inst = match file.to_instance() {
        Ok(i) => i,
        Err(e) => return fail(EXIT_VALIDATION, &e.to_string()),
    };
    let reduced = match preprocess_rpp(&inst) {
        Ok(Preprocessed::Reduced(r)) => r,
        Ok(Preprocessed::Decided(answer)) => {
            return fail(
                EXIT_VALIDATION,
                &format!(
                    "instance is decided ({}) by preprocessing; no reduction instance exists",
                    if answer { "yes" } else { "no" }
                ),
            )
        }
        Err(e) => return fail(rpp_error_code(&e), &e.to_string()),
    };
    let hi = match build_hard_instance(&reduced) {
        Ok(h) => h,
        Err(e) => return fail(rpp_error_code(&e), &e.to_string()),
    };
    let mut out = serde_json::to_value(InstanceFile::from_task(&hi.task)).unwrap();
    if predict {
        let answer = match solve_rpp(&reduced) {
            Ok(w) => w.is_some(),
            Err(e) => return fail(rpp_error_code(&e), &e.to_string()),
        };
        let map: serde_json::Map<String, serde_json::Value> =
            predicted_hard_coefficients(&hi, answer)
                .iter()
                .map(|(i, c)| (i.to_string(), json!(c.to_string())))
                .collect();
        out["predict"] = serde_json::Value::Object(map);
        out["rpp_answer"] = json!(if answer { "yes" } else { "no" });
    }
    emit(human, &out);
    ExitCode::SUCCESS
}

fn run_rpp(human: bool, command: &RppCommand) -> ExitCode {
    let (file, via_lifting) = match command {
        RppCommand::Solve { file } => (file, false),
        RppCommand::ViaLifting { file } => (file, true),
    };
    let rpp_file: RppFile = match load_json(file) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_VALIDATION, &e.to_string()),
    };
    let inst = match rpp_file.to_instance() {
        Ok(i) => i,
        Err(e) => return fail(EXIT_VALIDATION, &e.to_string()),
    };
    if via_lifting {
        match decide_rpp_via_lifting(&inst) {
            Ok(answer) => {
                let mut out = json!({ "answer": if answer { "yes" } else { "no" } });
                if let Ok(Preprocessed::Reduced(reduced)) = preprocess_rpp(&inst) {
                    if let Ok(hi) = build_hard_instance(&reduced) {
                        let beta = if answer { hi.yes_coefficient() } else { hi.no_coefficient() };
                        out["beta_n"] = json!(beta.to_string());
                        out["n"] = json!(hi.n);
                    }
                }
                emit(human, &out);
                ExitCode::SUCCESS
            }
            Err(e) => fail(rpp_error_code(&e), &e.to_string()),
        }
    } else {
        match solve_rpp(&inst) {
            Ok(Some(witness)) => {
                let indices: Vec<usize> = witness.into_iter().collect();
                emit(human, &json!({ "answer": "yes", "witness": indices }));
                ExitCode::SUCCESS
            }
            Ok(None) => {
                emit(human, &json!({ "answer": "no" }));
                ExitCode::SUCCESS
            }
            Err(e) => fail(rpp_error_code(&e), &e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Lift { file, oracle, scale } => run_lift(cli.human, file, *oracle, scale.clone()),
        Command::Verify { file, ineq, facet, limit } => {
            run_verify(cli.human, file, ineq, *facet, *limit)
        }
        Command::GenGu { r, expected } => run_gen_gu(cli.human, *r, *expected),
        Command::GenHard { rpp, predict } => run_gen_hard(cli.human, rpp, *predict),
        Command::Rpp { command } => run_rpp(cli.human, command),
    }
}
