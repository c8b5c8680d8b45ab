//! `ginlab`: generic initial ideals, Hilbert series and structural checks from the shell.
//!
//! Every command prints one JSON document carrying `"schema": 1`. Exit status is 0 on
//! success, 1 when the mathematics fails (no majority, budget exhausted, inadmissible
//! Hilbert function) and 2 on usage errors or malformed input.

mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ginlab_core::groebner::{buchberger_with, reduce_basis, Budget};
use ginlab_core::pipeline::{compute_gin, generic_templates, FieldKind, GinRequest, Route};
use ginlab_core::properties::{is_borel_fixed, is_lexsegment, is_weakly_revlex};
use ginlab_core::series::{
    default_horizon, froeberg_lexsegment, froeberg_series, lexsegment_extended,
};
use ginlab_core::survey::{grid_cases, run_survey, SurveyConfig};
use ginlab_core::{BaseOrder, Error, Field, Gf32003, MonomialIdeal, MonomialOrder, Rational};

const SCHEMA: u64 = 1;

#[derive(Parser)]
#[command(
    name = "ginlab",
    version,
    about = "Generic initial ideals and their Hilbert series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generic initial ideal of forms of the given degrees.
    Gin(GinArgs),
    /// Test a monomial ideal for a structural property.
    Check(CheckArgs),
    /// Expected Hilbert series of generic forms.
    Froeberg(SeriesArgs),
    /// Lexsegment ideal with a given or expected Hilbert function.
    Lexseg(LexsegArgs),
    /// Degree bound for the reduced Groebner basis of generic forms.
    Bound(SeriesArgs),
    /// Hilbert series of a monomial ideal.
    Hilbert(HilbertArgs),
    /// Reduced Groebner basis of explicit polynomials.
    Gb(GbArgs),
    /// Run a grid of cases and persist the results.
    Survey(SurveyArgs),
}

#[derive(Args)]
struct Shape {
    /// Number of variables.
    #[arg(short = 'n', long = "nvars")]
    n: usize,
    /// Degrees of the forms, comma separated.
    #[arg(short = 'd', long = "degrees", value_delimiter = ',', required = true)]
    degrees: Vec<u32>,
}

#[derive(Args)]
struct GinArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, default_value = "lex")]
    order: BaseOrder,
    /// `sample` or `parametric`.
    #[arg(long, default_value = "sample")]
    route: Route,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// `Q` or `F32003`; defaults to F32003 for sampling and Q for the parametric route.
    #[arg(long)]
    field: Option<FieldKind>,
    /// Time limit for Groebner basis work, in milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Lexsegment,
    WeaklyRevlex,
    Borel,
}

#[derive(Args)]
struct CheckArgs {
    /// Monomial ideal JSON (`-` for standard input).
    ideal: PathBuf,
    #[arg(long, value_enum)]
    property: Property,
    /// Characteristic for the Borel check (0 or a prime).
    #[arg(short = 'p', long, default_value_t = 0)]
    p: u64,
    /// Read the generators in this many variables, padding exponents with zeros.
    #[arg(short = 'n', long = "nvars")]
    n: Option<usize>,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long)]
    horizon: Option<u32>,
}

#[derive(Args)]
struct LexsegArgs {
    #[arg(short = 'n', long = "nvars")]
    n: usize,
    /// Degrees of generic forms whose expected series is the target.
    #[arg(
        short = 'd',
        long = "degrees",
        value_delimiter = ',',
        conflicts_with = "hf_file"
    )]
    degrees: Option<Vec<u32>>,
    /// Series JSON `{"coeffs": [...]}` with the target Hilbert function.
    #[arg(long, required_unless_present = "degrees")]
    hf_file: Option<PathBuf>,
    #[arg(long)]
    horizon: Option<u32>,
}

#[derive(Args)]
struct HilbertArgs {
    /// Monomial ideal JSON (`-` for standard input).
    ideal: PathBuf,
    #[arg(long)]
    horizon: Option<u32>,
}

#[derive(Args)]
struct GbArgs {
    /// Polynomials: one per line in text form, or JSON (see the README).
    input: PathBuf,
    #[arg(long, default_value = "degrevlex")]
    order: BaseOrder,
    #[arg(long, default_value = "Q")]
    field: FieldKind,
    /// Number of variables; inferred from the input when absent.
    #[arg(short = 'n', long = "nvars")]
    n: Option<usize>,
    #[arg(long)]
    budget_ms: Option<u64>,
}

#[derive(Args)]
struct SurveyArgs {
    /// Values of n, comma separated.
    #[arg(short = 'n', long = "nvars", value_delimiter = ',', num_args = 0..)]
    n: Vec<usize>,
    /// Numbers of forms, comma separated.
    #[arg(short = 's', long = "nforms", value_delimiter = ',', num_args = 0..)]
    s: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    dmin: u32,
    #[arg(long, default_value_t = 3)]
    dmax: u32,
    #[arg(long, default_value = "lex")]
    order: BaseOrder,
    #[arg(long, default_value = "sample")]
    route: Route,
    #[arg(long)]
    field: Option<FieldKind>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// Per-case time limit for Groebner basis work, in milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Keep GF(32003) results even when seeds disagree.
    #[arg(long)]
    no_fallback: bool,
    /// Output directory for survey.jsonl and survey.csv.
    #[arg(long, default_value = "survey")]
    out: PathBuf,
}

/// A failure with its exit status.
enum Failure {
    Math(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconclusive { .. } | Error::BudgetExhausted(_) | Error::Inadmissible(_) => {
                Failure::Math(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<Error>() {
            Ok(core) => core.into(),
            Err(e) => Failure::Usage(format!("{e:#}")),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Gin(a) => cmd_gin(a),
        Command::Check(a) => cmd_check(a),
        Command::Froeberg(a) => cmd_froeberg(a),
        Command::Lexseg(a) => cmd_lexseg(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Hilbert(a) => cmd_hilbert(a),
        Command::Gb(a) => cmd_gb(a),
        Command::Survey(a) => cmd_survey(a),
    };
    match out {
        Ok(mut v) => {
            if let Value::Object(map) = &mut v {
                map.insert("schema".into(), json!(SCHEMA));
            }
            println!("{}", serde_json::to_string(&v).expect("json"));
            ExitCode::SUCCESS
        }
        Err(Failure::Math(msg)) => {
            eprintln!("ginlab: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("ginlab: {msg}");
            ExitCode::from(2)
        }
    }
}

fn budget(ms: Option<u64>) -> Budget {
    ms.map_or_else(Budget::unlimited, |ms| {
        Budget::with_timeout(Duration::from_millis(ms))
    })
}

fn cmd_gin(a: GinArgs) -> Outcome {
    let inst = generic_templates(a.shape.n, &a.shape.degrees)?;
    let mut req = GinRequest::new(a.order, a.route);
    if let Some(f) = a.field {
        req.field = f;
    }
    req.seed = a.seed;
    req.trials = a.trials;
    req.budget = budget(a.budget_ms);
    let res = compute_gin(&inst, &req)?;
    let mut v = res.to_json();
    v["ideal_text"] = json!(res.ideal.to_string());
    Ok(v)
}

fn cmd_check(a: CheckArgs) -> Outcome {
    let mut j = input::read_ideal(&a.ideal)?;
    if let Some(n) = a.n {
        j = input::pad_ideal(&j, n)?;
    }
    let verdict = match a.property {
        Property::Lexsegment => is_lexsegment(&j),
        Property::WeaklyRevlex => is_weakly_revlex(&j),
        Property::Borel => is_borel_fixed(&j, a.p)?,
    };
    let mut v = verdict.to_json();
    if let Some(w) = &verdict.witness {
        let names = ginlab_core::monomial::default_names(j.nvars());
        v["witness"]["missing_text"] = json!(w.missing().display_with(&names).to_string());
    }
    Ok(v)
}

fn cmd_froeberg(a: SeriesArgs) -> Outcome {
    let (n, d) = (a.shape.n, &a.shape.degrees);
    let horizon = a.horizon.unwrap_or_else(|| default_horizon(n, d));
    let series = froeberg_series(n, d, horizon);
    Ok(json!({
        "n": n,
        "degrees": d,
        "series": series.to_json(),
        "rational": series.rational().map(|r| r.display()),
    }))
}

fn lexseg_json(n: usize, lex: &ginlab_core::series::LexSegment) -> Value {
    json!({
        "n": n,
        "ideal": lex.ideal.to_json(),
        "ideal_text": lex.ideal.to_string(),
        "horizon": lex.horizon,
        "horizon_uncertain": lex.horizon_uncertain,
    })
}

fn cmd_lexseg(a: LexsegArgs) -> Outcome {
    let lex = match (&a.degrees, &a.hf_file) {
        (Some(d), _) => match a.horizon {
            None => froeberg_lexsegment(a.n, d)?,
            Some(h) => lexsegment_extended(a.n, &froeberg_series(a.n, d, h), h)?,
        },
        (None, Some(path)) => {
            let hf = input::read_series(path)?;
            let h = a.horizon.unwrap_or(hf.horizon());
            lexsegment_extended(a.n, &hf, h)?
        }
        (None, None) => return Err(Failure::Usage("give --degrees or --hf-file".into())),
    };
    Ok(lexseg_json(a.n, &lex))
}

fn cmd_bound(a: SeriesArgs) -> Outcome {
    let (n, d) = (a.shape.n, &a.shape.degrees);
    let lex = match a.horizon {
        None => froeberg_lexsegment(n, d)?,
        Some(h) => lexsegment_extended(n, &froeberg_series(n, d, h), h)?,
    };
    let bound = lex.ideal.maxdeg().ok();
    Ok(json!({
        "n": n,
        "degrees": d,
        "bound": bound,
        "horizon": lex.horizon,
        "horizon_uncertain": lex.horizon_uncertain,
    }))
}

fn cmd_hilbert(a: HilbertArgs) -> Outcome {
    let j = input::read_ideal(&a.ideal)?;
    let series = j.hilbert_series(a.horizon);
    Ok(json!({
        "n": j.nvars(),
        "numerator": j.hilbert_numerator(),
        "rational": series.rational().map(|r| r.display()),
        "series": series.to_json(),
    }))
}

fn cmd_gb(a: GbArgs) -> Outcome {
    fn run<F: Field>(a: &GbArgs) -> Outcome {
        let order = MonomialOrder::base(a.order);
        let gens = input::read_polynomials::<F>(&a.input, a.n, &order)?;
        let n = gens.first().map_or(a.n.unwrap_or(0), |g| g.ring().nvars());
        let (g, stats) = buchberger_with(&gens, &order, &budget(a.budget_ms))?;
        let g = reduce_basis(&g);
        let leads = MonomialIdeal::new(n, g.lead_monomials())?;
        Ok(json!({
            "n": n,
            "order": a.order.name(),
            "field": F::tag(),
            "basis": g.generators().iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "basis_text": g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "initial_ideal": leads.to_json(),
            "pairs_reduced": stats.pairs_reduced,
        }))
    }
    match a.field {
        FieldKind::Rational => run::<Rational>(&a),
        FieldKind::Gf32003 => run::<Gf32003>(&a),
    }
}

fn cmd_survey(a: SurveyArgs) -> Outcome {
    let cases = grid_cases(&a.n, &a.s, a.dmin, a.dmax);
    let mut cfg = SurveyConfig::new(a.order, a.route);
    if let Some(f) = a.field {
        cfg.field = f;
    }
    cfg.seed = a.seed;
    cfg.trials = a.trials;
    cfg.budget = a.budget_ms.map(Duration::from_millis);
    cfg.fallback = !a.no_fallback;
    let report = run_survey(&cases, &cfg, &a.out)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.out.display())))?;
    let failed = report.rows.iter().filter(|r| r.error.is_some()).count();
    let lex = report
        .rows
        .iter()
        .filter(|r| r.is_lexsegment == Some(true))
        .count();
    Ok(json!({
        "cases": cases.len(),
        "appended": report.appended,
        "failed": failed,
        "lexsegment": lex,
        "bound_holds": report.rows.iter().all(|r| r.bound_holds()),
        "jsonl": report.jsonl.display().to_string(),
        "csv": report.csv.display().to_string(),
    }))
}
