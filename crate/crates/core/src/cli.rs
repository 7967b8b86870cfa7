//! Command-line front end. Every subcommand emits one JSON report
//! `{operation, inputs, status, result}` with keys in sorted order.
//!
//! Exit codes: 0 success, 1 certified failure, 2 usage or input error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::action::{self, ActionFile, UAction, DEFAULT_ACTION_BUDGET};
use crate::families::{self, ParamValue, VerificationReport, CATALOG_IDS};
use crate::gf::{Field, FieldElem, Subspace};
use crate::green::{self, GreenElem};
use crate::quadalg::{self, Presentation, QuadAlgebra, QuadError};
use crate::umod::{self, Decomposition, Label, ModuleFile};

pub const BUDGET_ENV: &str = "HOPFU_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "hopfu",
    version,
    about = "Exact computations with the Hopf algebra U = k<u,w>/(u^p, w^p - w, wu - uw - u)"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized property suites; core computations are deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose M(l,r) ⊗ M(m,s) by closed form and by brute force.
    Tensor {
        p: u32,
        l: u32,
        r: u32,
        m: u32,
        s: u32,
        /// Degree of the field extension used for the brute-force route.
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Krull-Schmidt decomposition of a module file.
    Decompose { module: PathBuf },
    /// Green ring operations.
    #[command(subcommand)]
    Green(GreenCommand),
    /// Hilbert function of a quadratic algebra.
    Hilbert {
        algebra: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_deg: usize,
    },
    /// Quadratic dual presentation.
    KoszulDual {
        algebra: PathBuf,
        /// Degree up to which the dual's Hilbert function is reported.
        #[arg(long, default_value_t = 6)]
        max_deg: usize,
    },
    /// Frobenius certificate of a finite-dimensional quadratic algebra.
    Frobenius {
        algebra: PathBuf,
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
        /// Certify the quadratic dual instead of the algebra itself.
        #[arg(long)]
        dual: bool,
    },
    /// Instantiate a catalog family and run every certificate.
    VerifyFamily(VerifyArgs),
    /// Enumerate all U-actions on the generators preserving the relations.
    SolveActions {
        algebra: PathBuf,
        /// Cap on |F|^(2 dim D); defaults to HOPFU_BUDGET or 10^8.
        #[arg(long)]
        budget: Option<u64>,
        /// Include every solution's matrices in the report.
        #[arg(long)]
        list: bool,
    },
    /// Dimensions of the invariant subspaces A_n^U.
    Invariants(ActionArgs),
    /// Decomposition of each graded piece A_n as a U-module.
    GradedDecompose(ActionArgs),
    /// Elements of U annihilating A_0..A_N.
    Annihilator(ActionArgs),
}

#[derive(Subcommand, Debug)]
enum GreenCommand {
    /// Product of two Green ring elements, e.g. "M(2,0)" "S_1 + M(3,2)".
    Mul {
        #[arg(long)]
        p: u32,
        a: String,
        b: String,
    },
    /// Check the presentation identities of r(U).
    PresentCheck {
        #[arg(long)]
        p: u32,
    },
    /// Frobenius-Perron dimension of a module class (p = 2 or 3).
    Fpdim {
        #[arg(long)]
        p: u32,
        class: String,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Family id, or `all` for every catalog sample.
    id: String,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Parameter assignment `name=value`; value is an integer or `[c0,c1,...]`.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, ParamValue)>,
    #[arg(long, default_value_t = 6)]
    max_deg: usize,
    /// Keep instances whose side conditions fail.
    #[arg(long)]
    unchecked: bool,
    /// One CSV row per instance.
    #[arg(long)]
    table: bool,
}

#[derive(Args, Debug)]
struct ActionArgs {
    action: PathBuf,
    #[arg(long, default_value_t = 6)]
    max_deg: usize,
}

fn parse_param(s: &str) -> Result<(String, ParamValue), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    Ok((k.trim().to_string(), v.parse()?))
}

/// How a subcommand ended.
enum Outcome {
    Pass(Value),
    Fail(Value),
}

/// Input problems; reported on stderr with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<(Value, Outcome), UsageError>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

pub fn parse_presentation(path: &Path) -> Result<QuadAlgebra, String> {
    let pres: Presentation = read_json(path).map_err(|e| e.0)?;
    pres.build().map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_action(path: &Path) -> Result<UAction, String> {
    let file: ActionFile = read_json(path).map_err(|e| e.0)?;
    let base = path.parent().unwrap_or(Path::new("."));
    file.build(base).map_err(|e| format!("{}: {e}", path.display()))
}

fn decomposition_json(d: &Decomposition) -> Value {
    json!({ "display": d.to_string(), "multiplicities": d.to_key_map() })
}

fn green_json(g: &GreenElem) -> Value {
    json!({ "display": g.to_string(), "coefficients": g.to_key_map() })
}

fn status(passed: bool, result: Value) -> Outcome {
    if passed {
        Outcome::Pass(result)
    } else {
        Outcome::Fail(result)
    }
}

fn label(p: u32, l: u32, i: u32) -> Result<Label, UsageError> {
    let lab = Label::new(l, i);
    if !lab.is_valid(p) {
        return Err(UsageError(format!("M({l},{i}) is not an indecomposable label for p = {p}")));
    }
    Ok(lab)
}

fn cmd_tensor(p: u32, l: u32, r: u32, m: u32, s: u32, k: u32) -> CmdResult {
    let field = Field::new(p, k, None)?;
    let (a, b) = (label(p, l, r)?, label(p, m, s)?);
    let closed = green::basis_product(p, a, b)?;
    let ma = umod::standard_module(&field, l, r)?;
    let mb = umod::standard_module(&field, m, s)?;
    let brute = umod::decompose(&umod::tensor(&ma, &mb)?);
    let closed_d = closed.to_decomposition().expect("products of modules are modules");
    let agree = closed_d == brute;
    let inputs = json!({ "p": p, "k": k, "left": a.to_string(), "right": b.to_string() });
    let result = json!({
        "closed_form": green_json(&closed),
        "brute_force": decomposition_json(&brute),
        "agreement": agree,
        "dim": brute.dim(),
    });
    Ok((inputs, status(agree, result)))
}

fn cmd_decompose(path: &Path) -> CmdResult {
    let file: ModuleFile = read_json(path)?;
    let m = file.build()?;
    let d = umod::decompose(&m);
    let inputs = json!({ "module": path.display().to_string(), "p": m.p(), "dim": m.dim() });
    let result = json!({
        "decomposition": decomposition_json(&d),
        "socle_dim": umod::socle(&m).dim(),
        "radical_dim": umod::radical(&m).dim(),
        "head_weights": umod::head_weights(&m),
    });
    Ok((inputs, Outcome::Pass(result)))
}

fn cmd_green(cmd: &GreenCommand) -> CmdResult {
    match cmd {
        GreenCommand::Mul { p, a, b } => {
            let x = GreenElem::parse(*p, a)?;
            let y = GreenElem::parse(*p, b)?;
            let prod = green::mul(&x, &y)?;
            let inputs = json!({ "p": p, "a": x.to_string(), "b": y.to_string() });
            Ok((inputs, Outcome::Pass(json!({ "product": green_json(&prod) }))))
        }
        GreenCommand::PresentCheck { p } => {
            let rep = green::presentation_check(*p)?;
            let passed = rep.passed();
            Ok((json!({ "p": p }), status(passed, serde_json::to_value(rep)?)))
        }
        GreenCommand::Fpdim { p, class } => {
            let g = GreenElem::parse(*p, class)?;
            let d = g.to_decomposition().ok_or_else(|| UsageError(format!("{g} is not the class of a module")))?;
            let value = green::fpdim(*p, &d)?;
            // power iteration; rounded so reports do not carry float noise
            let radius = (green::multiplication_spectral_radius(&g) * 1e9).round() / 1e9;
            let inputs = json!({ "p": p, "class": g.to_string() });
            let result = json!({
                "fpdim": value,
                "dim": d.dim(),
                "multiplication_spectral_radius": radius,
            });
            Ok((inputs, Outcome::Pass(result)))
        }
    }
}

fn algebra_summary(alg: &QuadAlgebra) -> Value {
    json!({
        "generators": alg.gen_names(),
        "relations": alg.relations_display(),
        "relations_dim": alg.relations().dim(),
        "dependent_relations": alg.dependent_relations(),
    })
}

fn cmd_hilbert(path: &Path, max_deg: usize) -> CmdResult {
    let alg = parse_presentation(path).map_err(UsageError)?;
    let inputs = json!({ "algebra": path.display().to_string(), "max_deg": max_deg });
    let mut result = algebra_summary(&alg);
    let outcome = match alg.hilbert(max_deg) {
        Ok(dims) => {
            result["hilbert"] = json!(dims);
            result["overlap_dim"] = json!(alg.overlap_dim());
            Outcome::Pass(result)
        }
        Err(e) => {
            result["error"] = json!(e.to_string());
            Outcome::Fail(result)
        }
    };
    Ok((inputs, outcome))
}

fn cmd_koszul_dual(path: &Path, max_deg: usize) -> CmdResult {
    let alg = parse_presentation(path).map_err(UsageError)?;
    let dual = alg.koszul_dual();
    let inputs = json!({ "algebra": path.display().to_string(), "max_deg": max_deg });
    let mut result = json!({
        "dual": serde_json::to_value(dual.to_presentation())?,
        "dual_relations": dual.relations_display(),
        "dual_relations_dim": dual.relations().dim(),
    });
    let outcome = match dual.hilbert(max_deg) {
        Ok(dims) => {
            result["dual_hilbert"] = json!(dims);
            Outcome::Pass(result)
        }
        Err(e) => {
            result["error"] = json!(e.to_string());
            Outcome::Fail(result)
        }
    };
    Ok((inputs, outcome))
}

fn cmd_frobenius(path: &Path, cutoff: usize, dual: bool) -> CmdResult {
    let alg = parse_presentation(path).map_err(UsageError)?;
    let target = if dual { alg.koszul_dual() } else { alg };
    let inputs = json!({ "algebra": path.display().to_string(), "cutoff": cutoff, "dual": dual });
    let outcome = match quadalg::frobenius_check(&target, cutoff) {
        Ok(rep) => {
            let passed = rep.passed();
            status(passed, serde_json::to_value(rep)?)
        }
        Err(QuadError::Inconclusive { cutoff, dims }) => Outcome::Fail(json!({
            "finite": false,
            "dims": dims,
            "note": format!("no zero graded piece up to degree {cutoff}"),
        })),
        Err(e) => Outcome::Fail(json!({ "error": e.to_string() })),
    };
    Ok((inputs, outcome))
}

const CSV_COLUMNS: [&str; 6] = [
    "relations_dim",
    "relations_U_submodule",
    "inner_faithful",
    "hilbert_matches",
    "koszul_dual_frobenius",
    "constraint_predicates",
];

fn pass_word(v: &Value) -> &'static str {
    if v.as_bool() == Some(true) {
        "pass"
    } else {
        "fail"
    }
}

fn csv_row(rep: &Value) -> Vec<String> {
    let params: Vec<String> = rep["params"]
        .as_object()
        .map(|m| m.iter().map(|(k, v)| format!("{k}={}", scalar_text(v))).collect())
        .unwrap_or_default();
    let mut row = vec![scalar_text(&rep["family"]), rep["p"].to_string(), params.join(";")];
    row.extend(CSV_COLUMNS.iter().map(|c| pass_word(&rep["checks"][c]["passed"]).to_string()));
    row.push(pass_word(&rep["passed"]).to_string());
    row
}

fn write_csv(out: &mut dyn Write, reports: &[&Value]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["family", "p", "params"];
    header.extend(CSV_COLUMNS);
    header.push("passed");
    w.write_record(&header)?;
    for r in reports {
        w.write_record(csv_row(r))?;
    }
    w.flush()?;
    Ok(())
}

fn verify_reports(args: &VerifyArgs) -> Result<Vec<VerificationReport>, UsageError> {
    if args.id == "all" {
        let mut out = Vec::new();
        for id in CATALOG_IDS {
            let spec = families::find_family(id)?;
            let p = match args.p {
                Some(p) if spec.allows_p(p) => p,
                Some(_) => continue,
                None => spec.smallest_p(),
            };
            for inst in families::sample_instances(id, p)? {
                out.push(families::verify(&inst, args.max_deg));
            }
        }
        return Ok(out);
    }
    let spec = families::find_family(&args.id)?;
    let p = args.p.unwrap_or_else(|| spec.smallest_p());
    let field = Field::new(p, args.k, None)?;
    let given: BTreeMap<String, ParamValue> = args.params.iter().cloned().collect();
    let inst = if args.unchecked {
        families::instantiate_unchecked(&args.id, &field, &given)?
    } else {
        families::instantiate(&args.id, &field, &given)?
    };
    Ok(vec![families::verify(&inst, args.max_deg)])
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let reports = verify_reports(args)?;
    let passed = reports.iter().all(|r| r.passed);
    let params: BTreeMap<String, String> = args
        .params
        .iter()
        .map(|(k, v)| {
            let s = match v {
                ParamValue::Int(n) => n.to_string(),
                ParamValue::Coeffs(c) => format!("{c:?}"),
            };
            (k.clone(), s)
        })
        .collect();
    let p = match args.p {
        Some(p) => Some(p),
        None if args.id != "all" => Some(families::find_family(&args.id)?.smallest_p()),
        None => None,
    };
    let inputs = json!({
        "family": args.id,
        "p": p,
        "k": args.k,
        "params": params,
        "max_deg": args.max_deg,
        "unchecked": args.unchecked,
    });
    let result = if reports.len() == 1 && args.id != "all" {
        serde_json::to_value(&reports[0])?
    } else {
        json!({ "instances": serde_json::to_value(&reports)? })
    };
    Ok((inputs, status(passed, result)))
}

fn budget_from_env() -> Result<u64, UsageError> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.trim().parse().map_err(|e| UsageError(format!("{BUDGET_ENV}={s:?}: {e}"))),
        Err(_) => Ok(DEFAULT_ACTION_BUDGET),
    }
}

fn cmd_solve(path: &Path, budget: Option<u64>, list: bool) -> CmdResult {
    let alg = parse_presentation(path).map_err(UsageError)?;
    let budget = match budget {
        Some(b) => b,
        None => budget_from_env()?,
    };
    let inputs = json!({ "algebra": path.display().to_string(), "budget": budget });
    let d = action::derivation_space(&alg);
    let mut result = algebra_summary(&alg);
    result["derivation_space_dim"] = json!(d.dim());
    let outcome = match action::solve_actions(&alg, budget) {
        Ok(sols) => {
            let faithful = sols.iter().filter(|s| s.is_inner_faithful()).count();
            result["solutions"] = json!(sols.len());
            result["inner_faithful_solutions"] = json!(faithful);
            if list {
                let all: Vec<Value> = sols
                    .iter()
                    .map(|s| {
                        json!({
                            "rho_u": s.rho_u.to_repr(),
                            "rho_w": s.rho_w.to_repr(),
                            "inner_faithful": s.is_inner_faithful(),
                        })
                    })
                    .collect();
                result["solution_list"] = json!(all);
            }
            Outcome::Pass(result)
        }
        Err(e) => {
            result["error"] = json!(e.to_string());
            Outcome::Fail(result)
        }
    };
    Ok((inputs, outcome))
}

fn action_inputs(args: &ActionArgs) -> Value {
    json!({ "action": args.action.display().to_string(), "max_deg": args.max_deg })
}

fn cmd_invariants(args: &ActionArgs) -> CmdResult {
    let act = parse_action(&args.action).map_err(UsageError)?;
    let a = act.invariant_dims(args.max_deg);
    let b = act.invariant_dims_stacked(args.max_deg);
    let outcome = match (a, b) {
        (Ok(a), Ok(b)) => {
            let agree = a == b;
            status(agree, json!({ "invariant_dims": a, "stacked_route": b, "agreement": agree }))
        }
        (Err(e), _) | (_, Err(e)) => Outcome::Fail(json!({ "error": e.to_string() })),
    };
    Ok((action_inputs(args), outcome))
}

fn cmd_graded_decompose(args: &ActionArgs) -> CmdResult {
    let act = parse_action(&args.action).map_err(UsageError)?;
    let outcome = match act.graded_decompose(args.max_deg) {
        Ok(ds) => {
            let pieces: Vec<Value> = ds
                .iter()
                .enumerate()
                .map(|(n, d)| json!({ "degree": n, "decomposition": decomposition_json(d), "dim": d.dim() }))
                .collect();
            Outcome::Pass(json!({ "pieces": pieces, "inner_faithful": act.is_inner_faithful() }))
        }
        Err(e) => Outcome::Fail(json!({ "error": e.to_string() })),
    };
    Ok((action_inputs(args), outcome))
}

/// `sum c u^i w^j` in PBW coordinates `i * p + j`.
fn format_pbw(field: &Field, v: &[FieldElem]) -> String {
    let p = field.characteristic() as usize;
    let mut terms = Vec::new();
    for (idx, &c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (i, j) = (idx / p, idx % p);
        let mono = match (i, j) {
            (0, 0) => "1".to_string(),
            _ => {
                let pw = |x: &str, e: usize| match e {
                    0 => String::new(),
                    1 => x.to_string(),
                    _ => format!("{x}^{e}"),
                };
                format!("{}{}", pw("u", i), pw("w", j))
            }
        };
        if c == FieldElem::ONE {
            terms.push(mono);
        } else {
            terms.push(format!("{}*{mono}", field.format(c)));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn cmd_annihilator(args: &ActionArgs) -> CmdResult {
    let act = parse_action(&args.action).map_err(UsageError)?;
    let f = act.field().clone();
    let outcome = match act.annihilator(args.max_deg) {
        Ok(ann) => {
            let wu = Subspace::span(&f, ann.ambient(), &[action::pbw_wu(&f)]);
            let basis: Vec<String> = ann.basis_vectors().iter().map(|v| format_pbw(&f, v)).collect();
            Outcome::Pass(json!({
                "dim": ann.dim(),
                "basis": basis,
                "contains_wu": ann.contains_subspace(&wu).unwrap_or(false),
                "equals_span_wu": ann == wu,
            }))
        }
        Err(e) => Outcome::Fail(json!({ "error": e.to_string() })),
    };
    Ok((action_inputs(args), outcome))
}

fn operation_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Tensor { .. } => "tensor",
        Command::Decompose { .. } => "decompose",
        Command::Green(GreenCommand::Mul { .. }) => "green.mul",
        Command::Green(GreenCommand::PresentCheck { .. }) => "green.present_check",
        Command::Green(GreenCommand::Fpdim { .. }) => "green.fpdim",
        Command::Hilbert { .. } => "hilbert",
        Command::KoszulDual { .. } => "koszul_dual",
        Command::Frobenius { .. } => "frobenius",
        Command::VerifyFamily(_) => "verify_family",
        Command::SolveActions { .. } => "solve_actions",
        Command::Invariants(_) => "invariants",
        Command::GradedDecompose(_) => "graded_decompose",
        Command::Annihilator(_) => "annihilator",
    }
}

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Tensor { p, l, r, m, s, k } => cmd_tensor(*p, *l, *r, *m, *s, *k),
        Command::Decompose { module } => cmd_decompose(module),
        Command::Green(g) => cmd_green(g),
        Command::Hilbert { algebra, max_deg } => cmd_hilbert(algebra, *max_deg),
        Command::KoszulDual { algebra, max_deg } => cmd_koszul_dual(algebra, *max_deg),
        Command::Frobenius { algebra, cutoff, dual } => cmd_frobenius(algebra, *cutoff, *dual),
        Command::VerifyFamily(args) => cmd_verify(args),
        Command::SolveActions { algebra, budget, list } => cmd_solve(algebra, *budget, *list),
        Command::Invariants(args) => cmd_invariants(args),
        Command::GradedDecompose(args) => cmd_graded_decompose(args),
        Command::Annihilator(args) => cmd_annihilator(args),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `key: value` lines, nested objects flattened with dotted keys.
fn write_table(out: &mut dyn Write, prefix: &str, v: &Value) -> std::io::Result<()> {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                write_table(out, &key, x)?;
            }
            Ok(())
        }
        other => writeln!(out, "{prefix}: {}", scalar_text(other)),
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (mut inputs, outcome) = match dispatch(&cli.command) {
        Ok(x) => x,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    if let Some(seed) = cli.seed {
        inputs["seed"] = json!(seed);
    }
    let (passed, result) = match outcome {
        Outcome::Pass(r) => (true, r),
        Outcome::Fail(r) => (false, r),
    };

    let csv = cli.format == Format::Csv || matches!(&cli.command, Command::VerifyFamily(a) if a.table);
    let written = if csv {
        match &cli.command {
            Command::VerifyFamily(_) => {
                let reports: Vec<&Value> = match result.get("instances").and_then(Value::as_array) {
                    Some(list) => list.iter().collect(),
                    None => vec![&result],
                };
                write_csv(out, &reports).map_err(std::io::Error::other)
            }
            _ => {
                let _ = writeln!(err, "error: csv output is only available for verify-family");
                return 2;
            }
        }
    } else {
        let report = json!({
            "operation": operation_name(&cli.command),
            "inputs": inputs,
            "status": if passed { "pass" } else { "fail" },
            "result": result,
        });
        match cli.format {
            Format::Table => write_table(out, "", &report),
            _ => writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json values serialize")),
        }
    };
    if written.is_err() {
        return 2;
    }
    if passed {
        0
    } else {
        1
    }
}
