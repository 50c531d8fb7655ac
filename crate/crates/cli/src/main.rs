//! Command-line front end: each solver behind a reproducible JSON report.
//!
//! Every invocation prints a single JSON document on standard output with
//! the envelope `{command, inputs, results, mode}` (plus `seed` when the
//! command runs randomized sweeps). Output bytes are deterministic for a
//! fixed argument list and seed. Exit codes: 0 on success, 1 on
//! mathematical errors (the zero tuple has no class, a module may admit no
//! compatible action) and on failed verification, 2 on argument errors.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use homlie_core::cnum::CNum;
use homlie_core::homlie::extend_sl2;
use homlie_core::lie::{classical, sl2, LieAlgebra, Series};
use homlie_core::matrix::Matrix;
use homlie_core::rat::Rat;
use homlie_core::reps::{double_extension, solve_rep_extension, RepSpec, Sl2Rep};
use homlie_core::sl2::{canonical_form, charpoly_invariants, classify, AutGen, GenDer5, Route};
use homlie_core::spaces::{
    gen_derivations, homlie_space, traceless_split, weight_decomposition, DerivationType,
};
use homlie_core::subspace::SubspaceBasis;
use homlie_core::verify::run_all;
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "homlie", about = "Twisted Jacobi structures on sl2: solvers and reports")]
struct Cli {
    /// Seed for the randomized sweeps (verify).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basis of the (a,b,c)-derivation space of an algebra.
    Der {
        /// One of sl2, sl3, sp4, so5, or a structure-constant JSON file.
        #[arg(long)]
        algebra: String,
        /// The three parameters, comma-separated rationals.
        #[arg(long = "type", value_name = "A,B,C", allow_hyphen_values = true)]
        ty: String,
    },
    /// Basis of the twist space compatible with the bracket.
    Hl {
        /// One of sl2, sl3, sp4, so5, or a structure-constant JSON file.
        #[arg(long)]
        algebra: String,
    },
    /// Class label and exact invariants of a derivation tuple.
    Classify {
        /// Tuple slots zeta,eta,sigma,lambda,mu as rationals.
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Orbit reduction of a derivation tuple with the full move trace.
    Canon {
        /// Tuple slots zeta,eta,sigma,lambda,mu as rationals.
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Solve the compatibility equation on the irreducible module V(m).
    Rep {
        /// Highest weight of the module.
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Tuple slots zeta,eta,sigma,lambda,mu as rationals.
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Validate the extension of sl2 by a derivation tuple; with
    /// --module, glue the compatible V(m)-action on top.
    Extend {
        /// Tuple slots zeta,eta,sigma,lambda,mu as rationals.
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        /// Highest weight of the module to glue.
        #[arg(long, allow_hyphen_values = true)]
        module: Option<i64>,
    },
    /// Run the complete check suite; exits 0 only when every claim holds.
    Verify,
}

enum CliError {
    /// Bad arguments or unreadable inputs; exit code 2.
    Usage(String),
    /// Well-formed request with no mathematical answer; exit code 1.
    Math(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // Prints the diagnostic and exits 2 on bad usage (0 for --help).
        Err(err) => err.exit(),
    };
    match run(&cli) {
        Ok((doc, ok)) => {
            // A closed pipe on the reading side is not our error.
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{}", render(&doc));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Serializes with sorted object keys (the serde_json default map) so the
/// bytes depend only on content.
fn render(doc: &Value) -> String {
    serde_json::to_string_pretty(doc).expect("report serializes")
}

fn run(cli: &Cli) -> Result<(Value, bool), CliError> {
    match &cli.command {
        Command::Der { algebra, ty } => der_report(algebra, ty),
        Command::Hl { algebra } => hl_report(algebra),
        Command::Classify { d } => classify_report(d),
        Command::Canon { d } => canon_report(d),
        Command::Rep { m, d } => rep_report(*m, d),
        Command::Extend { d, module } => extend_report(d, *module),
        Command::Verify => verify_report(cli.seed),
    }
}

fn report(command: &str, inputs: Value, results: Value, mode: &str, seed: Option<u64>) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), json!(command));
    map.insert("inputs".into(), inputs);
    map.insert("results".into(), results);
    map.insert("mode".into(), json!(mode));
    if let Some(seed) = seed {
        map.insert("seed".into(), json!(seed));
    }
    Value::Object(map)
}

// ---------------------------------------------------------------------------
// Input parsing

fn parse_tuple(text: &str) -> Result<GenDer5<Rat>, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 5 {
        return Err(CliError::Usage(format!(
            "--d expects five comma-separated rationals zeta,eta,sigma,lambda,mu, got {text:?}"
        )));
    }
    let slot = |s: &str| {
        Rat::parse(s.trim()).map_err(|e| CliError::Usage(format!("bad rational {s:?}: {e}")))
    };
    Ok(GenDer5::new(
        slot(parts[0])?,
        slot(parts[1])?,
        slot(parts[2])?,
        slot(parts[3])?,
        slot(parts[4])?,
    ))
}

fn parse_type(text: &str) -> Result<DerivationType, CliError> {
    text.parse::<DerivationType>()
        .map_err(|e| CliError::Usage(format!("--type: {e}")))
}

fn load_algebra(spec: &str) -> Result<(LieAlgebra, bool), CliError> {
    let named = match spec {
        "sl2" => return Ok((sl2(), true)),
        "sl3" => classical(Series::Sl, 3),
        "sp4" => classical(Series::Sp, 4),
        "so5" => classical(Series::So, 5),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read algebra file {path:?}: {e}"))
            })?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("algebra file {path:?} is not JSON: {e}")))?;
            let algebra = LieAlgebra::from_json(&value)
                .map_err(|e| CliError::Usage(format!("algebra file {path:?}: {e}")))?;
            return Ok((algebra, false));
        }
    };
    named
        .map(|algebra| (algebra, false))
        .map_err(|e| CliError::Usage(format!("algebra {spec:?}: {e}")))
}

// ---------------------------------------------------------------------------
// Serialization helpers

fn rat_json(r: &Rat) -> Value {
    json!(r.to_string())
}

fn cnum_json(z: &CNum) -> Value {
    json!({ "im": z.im(), "re": z.re() })
}

fn tuple_json(d: &GenDer5<Rat>) -> Value {
    Value::Array(d.slots().iter().map(|s| rat_json(s)).collect())
}

fn tuple_json_cnum(d: &GenDer5<CNum>) -> Value {
    Value::Array(d.slots().iter().map(|s| cnum_json(s)).collect())
}

fn matrix_json(m: &Matrix<Rat>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rat_json).collect()))
            .collect(),
    )
}

/// Operator-space basis vectors, each reshaped from its flattened row-major
/// form back into an n-by-n matrix of rational strings.
fn operators_json(space: &SubspaceBasis) -> Value {
    let ambient = space.ambient();
    let n = (1..).find(|k| k * k >= ambient).unwrap_or(0);
    assert_eq!(n * n, ambient, "operator ambient must be a square");
    Value::Array(
        space
            .vectors()
            .iter()
            .map(|flat| {
                Value::Array(
                    flat.chunks(n)
                        .map(|row| Value::Array(row.iter().map(rat_json).collect()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn move_json<S>(gen: &AutGen<S>, scalar: &impl Fn(&S) -> Value) -> Value {
    match gen {
        AutGen::G { a } => json!({ "a": scalar(a), "family": "G" }),
        AutGen::H { a } => json!({ "a": scalar(a), "family": "H" }),
        AutGen::F { a, c } => json!({ "a": scalar(a), "c": scalar(c), "family": "F" }),
        AutGen::Diag { nu } => json!({ "family": "Diag", "nu": scalar(nu) }),
    }
}

// ---------------------------------------------------------------------------
// Commands

fn der_report(algebra: &str, ty: &str) -> Result<(Value, bool), CliError> {
    let parsed = parse_type(ty)?;
    let (g, _) = load_algebra(algebra)?;
    let space = gen_derivations(&g, &parsed);
    let inputs = json!({
        "algebra": algebra,
        "type": [parsed.a.to_string(), parsed.b.to_string(), parsed.c.to_string()],
    });
    let results = json!({
        "algebra_dim": g.dim(),
        "dim": space.dim(),
        "operators": operators_json(&space),
    });
    Ok((report("der", inputs, results, "exact", None), true))
}

fn hl_report(algebra: &str) -> Result<(Value, bool), CliError> {
    let (g, is_sl2) = load_algebra(algebra)?;
    let space = homlie_space(&g);
    let inputs = json!({ "algebra": algebra });
    let mut results = Map::new();
    results.insert("algebra_dim".into(), json!(g.dim()));
    results.insert("dim".into(), json!(space.dim()));
    results.insert("operators".into(), operators_json(&space));
    if is_sl2 {
        // Weight decomposition under the adjoint action of the first
        // basis element, plus the dimension of the traceless part.
        let h = g.basis_vector(0);
        let decomposition = weight_decomposition(&g, &h, &space)
            .map_err(|e| CliError::Math(format!("weight decomposition failed: {e}")))?;
        let weights: BTreeMap<String, usize> = decomposition
            .iter()
            .map(|(w, part)| (w.to_string(), part.dim()))
            .collect();
        let traceless = traceless_split(&space)
            .map_err(|e| CliError::Math(format!("traceless split failed: {e}")))?;
        results.insert("traceless_dim".into(), json!(traceless.dim()));
        results.insert("weights".into(), json!(weights));
    }
    Ok((report("hl", inputs, Value::Object(results), "exact", None), true))
}

fn classify_report(d_text: &str) -> Result<(Value, bool), CliError> {
    let d = parse_tuple(d_text)?;
    let label = classify(&d).map_err(|e| CliError::Math(e.to_string()))?;
    let (c1, c0) = charpoly_invariants(&d);
    let matrix = d.to_matrix();
    let mut parameters = Map::new();
    match &label {
        homlie_core::sl2::ClassLabel::Rank1 | homlie_core::sl2::ClassLabel::Rank2A => {}
        homlie_core::sl2::ClassLabel::Rank2B { sigma } => {
            parameters.insert("sigma".into(), rat_json(sigma));
        }
        homlie_core::sl2::ClassLabel::Rank3A { lambda } => {
            parameters.insert("lambda".into(), rat_json(lambda));
        }
        homlie_core::sl2::ClassLabel::Rank3B { sigma, lambda } => {
            parameters.insert("lambda".into(), rat_json(lambda));
            parameters.insert("sigma".into(), rat_json(sigma));
        }
    }
    let inputs = json!({ "d": tuple_json(&d) });
    let results = json!({
        "invariants": {
            "c0": rat_json(&c0),
            "c1": rat_json(&c1),
            "det": rat_json(&matrix.det()),
            "rank": matrix.rank(),
        },
        "label": label.kind(),
        "parameters": Value::Object(parameters),
    });
    Ok((report("classify", inputs, results, "exact", None), true))
}

fn canon_report(d_text: &str) -> Result<(Value, bool), CliError> {
    let d = parse_tuple(d_text)?;
    let out = canonical_form(&d).map_err(|e| CliError::Math(e.to_string()))?;
    let inputs = json!({ "d": tuple_json(&d) });
    let label = out.label.kind();
    let (results, mode) = match &out.route {
        Route::Exact { canonical, element, trace } => {
            let moves: Vec<Value> =
                element.gens.iter().map(|g| move_json(g, &rat_json)).collect();
            let trace: Vec<Value> = trace.iter().map(tuple_json).collect();
            (
                json!({
                    "canonical": tuple_json(canonical),
                    "label": label,
                    "moves": moves,
                    "trace": trace,
                }),
                "exact",
            )
        }
        Route::Approximate { canonical, element, trace } => {
            let scalar = |z: &CNum| cnum_json(z);
            let moves: Vec<Value> =
                element.gens.iter().map(|g| move_json(g, &scalar)).collect();
            let trace: Vec<Value> = trace.iter().map(tuple_json_cnum).collect();
            (
                json!({
                    "canonical": tuple_json_cnum(canonical),
                    "label": label,
                    "moves": moves,
                    "trace": trace,
                }),
                "approximate",
            )
        }
    };
    Ok((report("canon", inputs, results, mode, None), true))
}

fn rep_report(m: i64, d_text: &str) -> Result<(Value, bool), CliError> {
    let d = parse_tuple(d_text)?;
    if m < 0 {
        return Err(CliError::Usage(format!(
            "--m expects a nonnegative highest weight, got {m}"
        )));
    }
    let rep = Sl2Rep::direct_sum(&[m]).map_err(|e| CliError::Usage(e.to_string()))?;
    let spec = RepSpec::new(rep);
    let solution =
        solve_rep_extension(&spec, &d).map_err(|e| CliError::Math(e.to_string()))?;
    let inputs = json!({ "d": tuple_json(&d), "m": m });
    let results = json!({
        "homogeneous_dim": solution.homogeneous().len(),
        "m": m,
        "solvable": solution.solvable(),
        "solution": solution.particular().map(matrix_json).unwrap_or(Value::Null),
    });
    Ok((report("rep", inputs, results, "exact", None), true))
}

fn extend_report(d_text: &str, module: Option<i64>) -> Result<(Value, bool), CliError> {
    let d = parse_tuple(d_text)?;
    let extension = extend_sl2(&d);
    let inputs = json!({
        "d": tuple_json(&d),
        "module": module.map(|m| json!(m)).unwrap_or(Value::Null),
    });
    let mut results = Map::new();
    results.insert("dim".into(), json!(extension.dim()));
    results.insert("jacobi".into(), json!(extension.check_homlie_jacobi().is_none()));
    results.insert("twist".into(), matrix_json(extension.twist()));
    if let Some(m) = module {
        if m < 0 {
            return Err(CliError::Usage(format!(
                "--module expects a nonnegative highest weight, got {m}"
            )));
        }
        let rep = Sl2Rep::direct_sum(&[m]).map_err(|e| CliError::Usage(e.to_string()))?;
        let spec = RepSpec::new(rep);
        let solution =
            solve_rep_extension(&spec, &d).map_err(|e| CliError::Math(e.to_string()))?;
        let Some(action) = solution.particular() else {
            return Err(CliError::Math(format!(
                "V({m}) admits no compatible action for this tuple"
            )));
        };
        let rep = spec.rep();
        let rho = vec![
            rep.rho_h().clone(),
            rep.rho_e().clone(),
            rep.rho_f().clone(),
            action.clone(),
        ];
        let glued = double_extension(&extension, &spec, &rho)
            .map_err(|e| CliError::Math(e.to_string()))?;
        results.insert(
            "glued".into(),
            json!({
                "action": matrix_json(action),
                "dim": glued.dim(),
                "homogeneous_dim": solution.homogeneous().len(),
                "jacobi": glued.check_homlie_jacobi().is_none(),
            }),
        );
    }
    Ok((report("extend", inputs, Value::Object(results), "exact", None), true))
}

fn verify_report(seed: u64) -> Result<(Value, bool), CliError> {
    let reports = run_all(seed);
    let all_pass = reports.iter().all(|r| r.pass);
    let claims: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "detail": r.detail, "id": r.id, "name": r.name, "pass": r.pass }))
        .collect();
    let results = json!({ "all_pass": all_pass, "claims": claims });
    Ok((report("verify", json!({}), results, "exact", Some(seed)), all_pass))
}
