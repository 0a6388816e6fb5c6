//! `bihelm` — command-line front end for the separability analyzers and
//! the clamped-plate solver.
//!
//! Subcommands: `coeffs` (operator coefficient families), `check`
//! (regular-separability obstructions), `constraints` (constrained
//! separation verdicts), `plate` (mode table, residuals, field grid).
//! Exit codes: 0 pass, 2 conditional, 3 fail, 1 any error.

mod render;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use bihelm::coords::{self, KnownConstraint};
use bihelm::geometry::Metric;
use bihelm::plate::{self, ModeAmplitudes, PlateConfig};
use bihelm::separation::{
    Condition, ConstraintReport, ConstraintSet, ResidualEntry, ResidualStatus, Separation,
    Verdict,
};
use bihelm::symbolic::{EvalPoint, Expr, ExprContext};

use render::{emit_json, fmt_f, fnum};

#[derive(Parser)]
#[command(
    name = "bihelm",
    version,
    about = "Separability analysis of the fourth-order field equation and the clamped circular plate"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the operator coefficient families (Gamma, A, B, C, D) of a metric
    Coeffs(CoeffsArgs),
    /// Regular-separability test: obstruction matrix and witness coefficients
    Check(CheckArgs),
    /// Constrained-separation verdicts for known or user constraint sets
    Constraints(ConstraintsArgs),
    /// Clamped circular plate: frequency roots, mode table, residuals, field grid
    Plate(PlateArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Catalog name: cartesian, polar, parabolic, elliptic-hyperbolic,
    /// or liouville:<profiles.json>
    #[arg(long, conflicts_with = "metric")]
    system: Option<String>,
    /// Metric file: {"chart": [...], "params": [...], "g_contra": [[...]]}
    #[arg(long)]
    metric: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct CoeffsArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Separation constant: "symbolic" or a constant expression (e.g. 5/2)
    #[arg(long, default_value = "symbolic")]
    lambda: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ConstraintsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Constraint-set file:
    /// {"constants": [{"name","equals"}], "relations": [{"target","rhs"}]}
    #[arg(long)]
    constraints: Option<PathBuf>,
    /// Separation constant: "symbolic" or a constant expression
    #[arg(long, default_value = "symbolic")]
    lambda: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct PlateArgs {
    /// Angular orders, inclusive range A..B or a single value
    #[arg(long, default_value = "0..3")]
    n: String,
    /// Radial indices (1-based), inclusive range A..B or a single value
    #[arg(long, default_value = "1..3")]
    m: String,
    /// Plate radius
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Areal density
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    /// Bending stiffness
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Sample the summed field on an NRxNT polar grid at t = 0
    #[arg(long)]
    grid: Option<String>,
    /// Residual tolerance deciding the exit verdict
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Die quietly on closed pipes (`bihelm … | head`) instead of panicking.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() {
    reset_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let outcome = match cli.cmd {
        Cmd::Coeffs(a) => cmd_coeffs(a),
        Cmd::Check(a) => cmd_check(a),
        Cmd::Constraints(a) => cmd_constraints(a),
        Cmd::Plate(a) => cmd_plate(a),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

/// A resolved input source: display name, metric, and any constraint
/// sets shipped with it.
struct SystemInput {
    name: String,
    metric: Metric,
    known: Vec<KnownConstraint>,
}

fn resolve_input(input: &InputArgs) -> Result<SystemInput, String> {
    match (&input.system, &input.metric) {
        (Some(name), None) => {
            let entry = if let Some(path) = name.strip_prefix("liouville:") {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {path}: {e}"))?;
                coords::liouville_from_json(&text).map_err(|e| e.to_string())?
            } else {
                coords::by_name(name).ok_or_else(|| {
                    format!(
                        "unknown system `{name}`; expected one of {} or liouville:<file>",
                        coords::CATALOG_NAMES.join(", ")
                    )
                })?
            };
            Ok(SystemInput {
                name: entry.name,
                metric: entry.metric,
                known: entry.known_constraints,
            })
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let metric = Metric::from_json(&text).map_err(|e| e.to_string())?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "metric".to_string());
            Ok(SystemInput {
                name,
                metric,
                known: Vec::new(),
            })
        }
        _ => Err("exactly one of --system or --metric is required".to_string()),
    }
}

fn parse_lambda(text: &str, metric: &Metric) -> Result<Expr, String> {
    if text == "symbolic" {
        return Ok(Expr::param("lambda"));
    }
    let e = Expr::parse(text, metric.ctx())
        .map_err(|err| format!("cannot parse lambda `{text}`: {err}"))?;
    if !e.coords().is_empty() || !e.jets().is_empty() {
        return Err(format!("lambda must be a constant, got `{text}`"));
    }
    Ok(e)
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => 0,
        Verdict::Conditional => 2,
        Verdict::Fail => 3,
    }
}

// ---- coeffs ----

/// All index multisets i ≤ j ≤ … of the given length over 0..dim.
fn sorted_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; len];
    loop {
        out.push(cur.clone());
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if cur[pos] + 1 < dim {
                let v = cur[pos] + 1;
                for slot in cur.iter_mut().skip(pos) {
                    *slot = v;
                }
                break;
            }
        }
    }
}

fn index_label(tuple: &[usize]) -> String {
    tuple
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_coeffs(args: CoeffsArgs) -> Result<i32, String> {
    let sys = resolve_input(&args.input)?;
    let m = &sys.metric;
    let ctx = m.ctx();
    let dim = m.dim();
    let coeffs = m.coeffs();

    let families: [(&str, usize); 4] = [("A", 4), ("B", 3), ("C", 2), ("D", 1)];
    let value_of = |family: &str, t: &[usize]| -> Expr {
        match family {
            "A" => coeffs.a(t[0], t[1], t[2], t[3]).clone(),
            "B" => coeffs.b(t[0], t[1], t[2]).clone(),
            "C" => coeffs.c(t[0], t[1]).clone(),
            _ => coeffs.d(t[0]).clone(),
        }
    };

    match args.format {
        Format::Csv => return Err("coeffs supports text or json output".to_string()),
        Format::Json => {
            let mut doc = BTreeMap::new();
            doc.insert("command".to_string(), json!("coeffs"));
            doc.insert("system".to_string(), json!(sys.name));
            doc.insert("chart".to_string(), json!(ctx.chart));
            doc.insert("params".to_string(), json!(ctx.params));
            doc.insert(
                "gamma".to_string(),
                Value::Array((0..dim).map(|k| json!(m.gamma(k).to_text(ctx))).collect()),
            );
            for (family, len) in families {
                let mut map = BTreeMap::new();
                for t in sorted_tuples(dim, len) {
                    map.insert(index_label(&t), json!(value_of(family, &t).to_text(ctx)));
                }
                doc.insert(family.to_lowercase(), json!(map));
            }
            doc.insert("det".to_string(), json!(m.det_contra().to_text(ctx)));
            print!("{}", emit_json(&json!(doc)));
        }
        Format::Text => {
            println!("system: {}", sys.name);
            println!("chart: {}", ctx.chart.join(", "));
            if !ctx.params.is_empty() {
                println!("params: {}", ctx.params.join(", "));
            }
            for k in 0..dim {
                println!("Gamma[{}] = {}", k + 1, m.gamma(k).to_text(ctx));
            }
            for (family, len) in families {
                for t in sorted_tuples(dim, len) {
                    println!(
                        "{family}[{}] = {}",
                        index_label(&t),
                        value_of(family, &t).to_text(ctx)
                    );
                }
            }
            println!("det(g_contra) = {}", m.det_contra().to_text(ctx));
        }
    }
    Ok(0)
}

// ---- check ----

fn seed_from_env() -> u64 {
    std::env::var("BIHELM_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20260815)
}

/// Numeric cross-check of the symbolic zero/nonzero claims: evaluate each
/// obstruction at random jet points. Returns (points, max error among
/// entries claimed zero, min magnitude among entries claimed nonzero).
fn sample_consistency(
    sep: &Separation,
    seed: u64,
    points: usize,
) -> (usize, f64, f64) {
    let ctx = sep.ctx();
    let dim = ctx.chart.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = sep.regular_report().expect("report already computed");
    let mut max_zero_err = 0.0_f64;
    let mut min_nonzero = f64::INFINITY;
    for entry in &report.entries {
        let mut witness = 0.0_f64;
        for _ in 0..points {
            let mut point = EvalPoint {
                coords: BTreeMap::new(),
                jets: BTreeMap::new(),
                params: BTreeMap::new(),
            };
            for c in 0..dim {
                point.coords.insert(c, rng.gen_range(0.6..1.9));
            }
            for c in 0..dim {
                for s in 1..=4u8 {
                    point.jets.insert((c, s), rng.gen_range(-1.0..1.0));
                }
            }
            for p in &ctx.params {
                point.params.insert(p.clone(), rng.gen_range(0.5..2.0));
            }
            if let Ok(v) = entry.obstruction.evaluate(&point) {
                witness = witness.max(v.abs());
            }
        }
        if entry.obstruction.is_zero() {
            max_zero_err = max_zero_err.max(witness);
        } else {
            min_nonzero = min_nonzero.min(witness);
        }
    }
    (points, max_zero_err, min_nonzero)
}

fn cmd_check(args: CheckArgs) -> Result<i32, String> {
    if args.format == Format::Csv {
        return Err("check supports text or json output".to_string());
    }
    let sys = resolve_input(&args.input)?;
    let lambda = parse_lambda(&args.lambda, &sys.metric)?;
    let lambda_text = lambda.to_text(sys.metric.ctx());
    let sep = Separation::new(sys.metric, lambda).map_err(|e| e.to_string())?;
    let report = sep.regular_report().map_err(|e| e.to_string())?;
    let ctx = sep.ctx();
    let seed = seed_from_env();
    let (points, zero_err, min_nonzero) = sample_consistency(&sep, seed, 20);

    match args.format {
        Format::Json => {
            let entries: Vec<Value> = report
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "i": e.i + 1,
                        "j": e.j + 1,
                        "zero": e.obstruction.is_zero(),
                        "obstruction": e.obstruction.to_text(ctx),
                        "witness_33": e.coeff_i3_j3.to_text(ctx),
                        "witness_42": e.coeff_i4_j2.to_text(ctx),
                        "witness_24": e.coeff_i2_j4.to_text(ctx),
                    })
                })
                .collect();
            let doc = json!({
                "command": "check",
                "system": sys.name,
                "lambda": lambda_text,
                "regular": report.regular,
                "entries": entries,
                "consistency": {
                    "seed": seed,
                    "points": points,
                    "max_zero_claim_error": fnum(zero_err),
                    "min_nonzero_witness": fnum(if min_nonzero.is_finite() {
                        min_nonzero
                    } else {
                        0.0
                    }),
                },
            });
            print!("{}", emit_json(&doc));
        }
        _ => {
            println!("system: {}", sys.name);
            println!("lambda: {lambda_text}");
            println!("regular: {}", report.regular);
            for e in &report.entries {
                println!("D{}R{}:", e.i + 1, e.j + 1);
                println!(
                    "  status: {}",
                    if e.obstruction.is_zero() {
                        "zero"
                    } else {
                        "nonzero"
                    }
                );
                println!(
                    "  coefficient of u{}_3*u{}_3: {}",
                    e.i + 1,
                    e.j + 1,
                    e.coeff_i3_j3.to_text(ctx)
                );
                println!(
                    "  coefficient of u{}_4*u{}_2: {}",
                    e.i + 1,
                    e.j + 1,
                    e.coeff_i4_j2.to_text(ctx)
                );
                println!(
                    "  coefficient of u{}_2*u{}_4: {}",
                    e.i + 1,
                    e.j + 1,
                    e.coeff_i2_j4.to_text(ctx)
                );
                println!("  expression: {}", e.obstruction.to_text(ctx));
            }
            println!(
                "consistency: {points} random points (seed {seed}), \
                 max zero-claim error {}, smallest nonzero witness {}",
                fmt_f(zero_err),
                fmt_f(if min_nonzero.is_finite() { min_nonzero } else { 0.0 })
            );
        }
    }
    Ok(0)
}

// ---- constraints ----

/// Rebuild a constraint set with the separation constant bound to a
/// number, so numeric-lambda runs see it in every relation.
fn bind_lambda(
    set: &ConstraintSet,
    metric: &Metric,
    value: &Expr,
) -> Result<ConstraintSet, String> {
    let mut sub = bihelm::symbolic::Substitution::new();
    sub.bind_param("lambda", value);
    let constants = set
        .constants()
        .iter()
        .map(|(name, e)| Ok((name.clone(), e.substitute(&sub).map_err(|e| e.to_string())?)))
        .collect::<Result<Vec<_>, String>>()?;
    // relations() includes the ones re-derived from constants; skip those
    // targets or from_parts would see them twice
    let derived: Vec<(usize, u8)> = set
        .constants()
        .iter()
        .filter_map(|(_, e)| e.jets().iter().max_by_key(|&&(c, s)| (s, c)).copied())
        .collect();
    let relations = set
        .relations()
        .iter()
        .filter(|r| !derived.contains(&(r.coord, r.order)))
        .map(|r| {
            Ok((
                (r.coord, r.order),
                r.rhs.substitute(&sub).map_err(|e| e.to_string())?,
            ))
        })
        .collect::<Result<Vec<_>, String>>()?;
    ConstraintSet::from_parts(metric, constants, relations).map_err(|e| e.to_string())
}

fn status_name(s: &ResidualStatus) -> &'static str {
    match s {
        ResidualStatus::Zero => "zero",
        ResidualStatus::Conditional(_) => "conditional",
        ResidualStatus::Nonzero => "nonzero",
    }
}

fn condition_text(c: &Condition, ctx: &ExprContext) -> String {
    match c {
        Condition::LambdaZero => "lambda = 0".to_string(),
        Condition::ParamRelation(e) => format!("{} = 0", e.to_text(ctx)),
    }
}

fn entries_json(entries: &[ResidualEntry], ctx: &ExprContext) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| {
                json!({
                    "label": e.label,
                    "status": status_name(&e.status),
                    "residual": e.residual.to_text(ctx),
                })
            })
            .collect(),
    )
}

fn report_json(label: &str, report: &ConstraintReport, ctx: &ExprContext) -> Value {
    let reduced: Vec<Value> = report
        .reduced
        .iter()
        .map(|(scope, e)| {
            json!({
                "coordinate": scope.map(|c| json!(c + 1)).unwrap_or(Value::Null),
                "expression": e.to_text(ctx),
            })
        })
        .collect();
    let conditions: Vec<String> = report
        .conditions
        .iter()
        .map(|c| condition_text(c, ctx))
        .collect();
    json!({
        "label": label,
        "verdict": report.verdict.to_string(),
        "conditions": conditions,
        "tangency": entries_json(&report.tangency, ctx),
        "commutation": entries_json(&report.commutation, ctx),
        "equation": entries_json(&report.equation, ctx),
        "reduced": reduced,
    })
}

fn print_report_text(label: &str, report: &ConstraintReport, ctx: &ExprContext) {
    println!("set: {label}");
    for (family, entries) in [
        ("tangency", &report.tangency),
        ("commutation", &report.commutation),
        ("equation", &report.equation),
    ] {
        for e in entries {
            let head = if e.label == family {
                family.to_string()
            } else {
                format!("{family} {}", e.label)
            };
            match &e.status {
                ResidualStatus::Zero => println!("  {head}: zero"),
                ResidualStatus::Conditional(c) => println!(
                    "  {head}: conditional ({}), residual: {}",
                    condition_text(c, ctx),
                    e.residual.to_text(ctx)
                ),
                ResidualStatus::Nonzero => println!(
                    "  {head}: nonzero, residual: {}",
                    e.residual.to_text(ctx)
                ),
            }
        }
    }
    for (scope, e) in &report.reduced {
        let name = match scope {
            Some(c) => ctx.chart[*c].clone(),
            None => "free".to_string(),
        };
        println!("  reduced[{name}]: {} = 0", e.to_text(ctx));
    }
    if !report.conditions.is_empty() {
        let joined: Vec<String> = report
            .conditions
            .iter()
            .map(|c| condition_text(c, ctx))
            .collect();
        println!("  conditions: {}", joined.join("; "));
    }
    println!("  verdict: {}", report.verdict);
}

fn cmd_constraints(args: ConstraintsArgs) -> Result<i32, String> {
    if args.format == Format::Csv {
        return Err("constraints supports text or json output".to_string());
    }
    let sys = resolve_input(&args.input)?;
    let lambda = parse_lambda(&args.lambda, &sys.metric)?;
    let lambda_text = lambda.to_text(sys.metric.ctx());
    let numeric_lambda = lambda != Expr::param("lambda");

    // assemble the labeled sets to run
    let mut sets: Vec<(String, ConstraintSet)> = Vec::new();
    if let Some(path) = &args.constraints {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let set = ConstraintSet::from_json(&text, &sys.metric).map_err(|e| e.to_string())?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "user".to_string());
        sets.push((label, set));
    } else {
        if sys.known.is_empty() {
            return Err(format!(
                "no constraint sets known for `{}`; provide --constraints <file>",
                sys.name
            ));
        }
        for kc in &sys.known {
            sets.push((kc.label.clone(), kc.set.clone()));
        }
    }
    if numeric_lambda {
        let mut bound = Vec::with_capacity(sets.len());
        for (label, set) in &sets {
            bound.push((label.clone(), bind_lambda(set, &sys.metric, &lambda)?));
        }
        sets = bound;
    }

    let sep = Separation::new(sys.metric.clone(), lambda).map_err(|e| e.to_string())?;

    // An empty set constrains nothing: report the unconstrained
    // obstruction analysis instead of a vacuous pass.
    if sets.iter().all(|(_, s)| s.is_empty()) {
        let report = sep.regular_report().map_err(|e| e.to_string())?;
        let verdict = if report.regular {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        match args.format {
            Format::Json => {
                let doc = json!({
                    "command": "constraints",
                    "system": sys.name,
                    "lambda": lambda_text,
                    "note": "constraint set is empty; reporting the unconstrained analysis",
                    "regular": report.regular,
                    "verdict": verdict.to_string(),
                });
                print!("{}", emit_json(&doc));
            }
            _ => {
                println!("system: {}", sys.name);
                println!("constraint set is empty; reporting the unconstrained analysis");
                println!("regular: {}", report.regular);
                println!("verdict: {verdict}");
            }
        }
        return Ok(verdict_code(verdict));
    }

    let mut worst = Verdict::Pass;
    let mut rendered: Vec<Value> = Vec::new();
    let mut text_blocks: Vec<(String, ConstraintReport, ExprContext)> = Vec::new();
    for (label, set) in &sets {
        let report = sep.check_constraints(set).map_err(|e| e.to_string())?;
        if verdict_code(report.verdict) > verdict_code(worst) {
            worst = report.verdict;
        }
        match args.format {
            Format::Json => rendered.push(report_json(label, &report, set.ctx())),
            _ => text_blocks.push((label.clone(), report, set.ctx().clone())),
        }
    }

    match args.format {
        Format::Json => {
            let doc = json!({
                "command": "constraints",
                "system": sys.name,
                "lambda": lambda_text,
                "reports": rendered,
                "verdict": worst.to_string(),
            });
            print!("{}", emit_json(&doc));
        }
        _ => {
            println!("system: {}", sys.name);
            println!("lambda: {lambda_text}");
            for (label, report, ctx) in &text_blocks {
                print_report_text(label, report, ctx);
            }
            println!("verdict: {worst}");
        }
    }
    Ok(verdict_code(worst))
}

// ---- plate ----

fn parse_range(text: &str, what: &str) -> Result<(u64, u64), String> {
    let parse_one = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| format!("invalid {what} range `{text}`"))
    };
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = parse_one(lo)?;
        let hi = parse_one(hi)?;
        if hi < lo {
            return Err(format!("empty {what} range `{text}`"));
        }
        Ok((lo, hi))
    } else {
        let v = parse_one(text)?;
        Ok((v, v))
    }
}

fn parse_grid(text: &str) -> Result<(usize, usize), String> {
    let (nr, nt) = text
        .split_once('x')
        .ok_or_else(|| format!("grid must be NRxNT, got `{text}`"))?;
    let nr: usize = nr.parse().map_err(|_| format!("bad grid `{text}`"))?;
    let nt: usize = nt.parse().map_err(|_| format!("bad grid `{text}`"))?;
    if nr < 2 || nt < 1 {
        return Err("grid needs at least 2 radii and 1 angle".to_string());
    }
    Ok((nr, nt))
}

/// Fixed interior sample set for the residual column.
fn residual_samples(a: f64) -> Vec<(f64, f64)> {
    let fracs = [0.13, 0.37, 0.52, 0.71, 0.88];
    let angles = [0.0, 0.8, 2.3];
    let mut out = Vec::new();
    for f in fracs {
        for th in angles {
            out.push((f * a, th));
        }
    }
    out
}

fn cmd_plate(args: PlateArgs) -> Result<i32, String> {
    let (n_lo, n_hi) = parse_range(&args.n, "n")?;
    let (m_lo, m_hi) = parse_range(&args.m, "m")?;
    if m_lo == 0 {
        return Err("radial indices are 1-based; use --m 1..K".to_string());
    }
    let cfg = PlateConfig::new(args.a, args.rho, args.c).map_err(|e| e.to_string())?;
    let table = plate::mode_table(
        &cfg,
        (n_lo as u32, n_hi as u32),
        (m_lo as usize, m_hi as usize),
    )
    .map_err(|e| e.to_string())?;

    let samples = residual_samples(cfg.a);
    let mut residuals = Vec::with_capacity(table.len());
    for mode in &table {
        residuals.push(plate::pde_residual(mode, &samples).map_err(|e| e.to_string())?);
    }
    let all_within = residuals.iter().all(|r| *r <= args.tol);

    let grid = match &args.grid {
        Some(spec) => {
            let (nr, nt) = parse_grid(spec)?;
            let radii: Vec<f64> = (0..nr)
                .map(|j| cfg.a * j as f64 / (nr - 1) as f64)
                .collect();
            let thetas: Vec<f64> = (0..nt)
                .map(|k| 2.0 * std::f64::consts::PI * k as f64 / nt as f64)
                .collect();
            let amp = ModeAmplitudes {
                e: 1.0,
                f: 0.0,
                g: 1.0,
                h: 0.0,
            };
            let with_amp: Vec<_> = table.iter().map(|m| (*m, amp)).collect();
            Some(plate::mode_field(&with_amp, &radii, &thetas, 0.0).map_err(|e| e.to_string())?)
        }
        None => None,
    };

    match args.format {
        Format::Json => {
            let modes: Vec<Value> = table
                .iter()
                .zip(&residuals)
                .map(|(m, r)| {
                    json!({
                        "n": m.n,
                        "m": m.m,
                        "l": fnum(m.root),
                        "k": fnum(m.k),
                        "omega": fnum(m.omega),
                        "ratio": fnum(m.ratio),
                        "residual": fnum(*r),
                    })
                })
                .collect();
            let mut doc = BTreeMap::new();
            doc.insert("command".to_string(), json!("plate"));
            doc.insert(
                "config".to_string(),
                json!({"a": fnum(cfg.a), "rho": fnum(cfg.rho), "c": fnum(cfg.c)}),
            );
            doc.insert("tol".to_string(), fnum(args.tol));
            doc.insert("modes".to_string(), Value::Array(modes));
            if let Some(field) = &grid {
                let rows: Vec<Value> = field
                    .iter()
                    .map(|s| {
                        json!({
                            "r": fnum(s.r),
                            "theta": fnum(s.theta),
                            "t": fnum(s.t),
                            "psi": fnum(s.psi),
                        })
                    })
                    .collect();
                doc.insert("grid".to_string(), Value::Array(rows));
            }
            doc.insert(
                "verdict".to_string(),
                json!(if all_within { "pass" } else { "fail" }),
            );
            print!("{}", emit_json(&json!(doc)));
        }
        Format::Csv => {
            println!("n,m,l_nm,k,omega,residual");
            for (m, r) in table.iter().zip(&residuals) {
                println!(
                    "{},{},{},{},{},{}",
                    m.n,
                    m.m,
                    fmt_f(m.root),
                    fmt_f(m.k),
                    fmt_f(m.omega),
                    fmt_f(*r)
                );
            }
            if let Some(field) = &grid {
                println!();
                println!("r,theta,t,psi");
                for s in field {
                    println!(
                        "{},{},{},{}",
                        fmt_f(s.r),
                        fmt_f(s.theta),
                        fmt_f(s.t),
                        fmt_f(s.psi)
                    );
                }
            }
        }
        Format::Text => {
            println!(
                "plate: a = {}, rho = {}, c = {}",
                fmt_f(cfg.a),
                fmt_f(cfg.rho),
                fmt_f(cfg.c)
            );
            println!(
                "{:>3} {:>3} {:>20} {:>20} {:>20} {:>12}",
                "n", "m", "l_nm", "k", "omega", "residual"
            );
            for (m, r) in table.iter().zip(&residuals) {
                println!(
                    "{:>3} {:>3} {:>20} {:>20} {:>20} {:>12.3e}",
                    m.n,
                    m.m,
                    fmt_f(m.root),
                    fmt_f(m.k),
                    fmt_f(m.omega),
                    r
                );
            }
            if let Some(field) = &grid {
                println!();
                println!(
                    "{:>20} {:>20} {:>6} {:>20}",
                    "r", "theta", "t", "psi"
                );
                for s in field {
                    println!(
                        "{:>20} {:>20} {:>6} {:>20}",
                        fmt_f(s.r),
                        fmt_f(s.theta),
                        fmt_f(s.t),
                        fmt_f(s.psi)
                    );
                }
            }
            println!(
                "residuals within {:.1e}: {}",
                args.tol,
                if all_within { "yes" } else { "no" }
            );
        }
    }
    Ok(if all_within { 0 } else { 3 })
}
