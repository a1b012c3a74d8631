//! Command-line front end. `main.rs` only parses arguments and maps errors to
//! exit codes; everything else lives here so it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context as _};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::calculus::{d, torsion_report, CalculusError, CurvatureModel, DerivativeResult};
use crate::exterior::{parse_form, render_form, render_json as form_json, Form, RenderStyle};
use crate::gwistor::{
    build_sigma_exact, is_stable, metric_data, star, Coeffs, Convention, ExactStar, Frame, GwistorError,
    InvariantForms,
};
use crate::scalars::{QuadNum, ScaledScalar, Surd};
use crate::theorems::{self, Context, Suite, DEFAULT_SEED};

/// Stable exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const UNSTABLE: i32 = 3;
    pub const OUT_OF_SPAN: i32 = 4;
}

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "GWISTOR_SEED";

#[derive(Debug, Parser)]
#[command(name = "gwistor", version, about = "Exact exterior calculus of G2-structures on unit tangent sphere bundles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stability, metric data and Sasaki compatibility of a coefficient vector.
    Classify(ClassifyArgs),
    /// Hodge star of a form.
    Hodge(HodgeArgs),
    /// Exterior derivative of sigma, *sigma or a given form, with a torsion report.
    Derive(DeriveArgs),
    /// Summarizes a verdict file written by `verify --json`.
    Report(ReportArgs),
    /// Runs verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Induced,
    Block,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Induced => Convention::Induced,
            ConventionArg::Block => Convention::Block,
        }
    }
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// f0,f1,f2,f3,f4 as rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    /// Also accept the literals sqrt(2)/2, sqrt(3/2), sqrt(6) and friends.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct HodgeArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "symbolic", required_unless_present = "symbolic")]
    pub coeffs: Option<String>,
    /// Keep f0..f4 as symbols.
    #[arg(long)]
    pub symbolic: bool,
    /// Form expression, e.g. `alpha1`, `theta^dtheta`, `e0 + 2*e123`.
    #[arg(long, allow_hyphen_values = true)]
    pub form: String,
    #[arg(long, value_enum, default_value = "induced")]
    pub convention: ConventionArg,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[arg(long, allow_hyphen_values = true, required_unless_present = "form")]
    pub coeffs: Option<String>,
    /// generic, flat, constant:K (K rational or the symbol k).
    #[arg(long, default_value = "generic")]
    pub curvature: String,
    /// Differentiate *sigma instead of sigma.
    #[arg(long, conflicts_with = "form")]
    pub star: bool,
    /// Differentiate this constant-coefficient form instead.
    #[arg(long, allow_hyphen_values = true)]
    pub form: Option<String>,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Verdict JSON file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all` or one of the suite names.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Write the verdicts as JSON to this path.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

/// Maps an error to its exit code by walking the cause chain.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<GwistorError>() {
            if matches!(e, GwistorError::Unstable(_)) {
                return exit::UNSTABLE;
            }
        }
        if let Some(e) = cause.downcast_ref::<CalculusError>() {
            match e {
                CalculusError::NotInInvariantSpan { .. } => return exit::OUT_OF_SPAN,
                CalculusError::Gwistor(GwistorError::Unstable(_)) => return exit::UNSTABLE,
                _ => {}
            }
        }
    }
    exit::USAGE
}

/// Runs one command, writing its output to `out`. Returns the exit code for
/// successful runs (0, or 1 when a verification fails).
pub fn execute(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Classify(a) => classify(a, out),
        Command::Hodge(a) => hodge(a, out),
        Command::Derive(a) => derive(a, out),
        Command::Report(a) => report(a, out),
        Command::Verify(a) => verify(a, out, std::env::var(SEED_ENV).ok()),
    }
}

fn parse_coeffs(text: &str, exact: bool) -> anyhow::Result<Coeffs> {
    let c = Coeffs::parse(text).with_context(|| format!("bad coefficients {text:?}"))?;
    if let (false, Coeffs::Exact(v)) = (exact, &c) {
        if v.iter().any(|q| q.as_rational().is_none()) {
            bail!("surd literals need --exact: {text:?}");
        }
    }
    Ok(c)
}

fn numeric(text: &str) -> anyhow::Result<Coeffs> {
    let c = parse_coeffs(text, true)?;
    if c.is_symbolic() {
        bail!("numeric coefficients required, got {text:?}");
    }
    Ok(c)
}

/// `σ = a α + b α1 - a α2 - b α3 + θ∧dθ` up to the sign of `(a, b)`, with `a² + b² = 1`.
fn sasaki_compatible(v: &[QuadNum; 5]) -> bool {
    let one = QuadNum::one();
    (&v[2] + &v[0]).is_zero()
        && (&v[3] + &v[1]).is_zero()
        && v[4] == one
        && (&(&v[0] * &v[0]) + &(&v[1] * &v[1])) == one
}

fn classify(a: &ClassifyArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let c = parse_coeffs(&a.coeffs, a.exact)?;
    let v = c.values().context("classify needs numeric coefficients")?.clone();
    let st = is_stable(&c)?;
    let md = if st.stable { Some(metric_data(&c, Convention::Induced)?) } else { None };
    let metric = md.as_ref().map(|m| {
        m.g.iter().map(|row| row.iter().map(Surd::render).collect::<Vec<_>>()).collect::<Vec<_>>()
    });
    let payload = json!({
        "coeffs": c.render(),
        "stable": st.stable,
        "block_region": st.block_region,
        "f4": st.f4.render(),
        "x": st.x.render(),
        "y": st.y.render(),
        "z": st.z.render(),
        "h": st.h.render(),
        "q": st.q.render(),
        "m": md.as_ref().map(|m| m.m.render()),
        "t": md.as_ref().map(|m| m.t.render()),
        "metric": metric,
        "sasaki_compatible": sasaki_compatible(&v),
    });
    if a.format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&payload)?)?;
        return Ok(exit::OK);
    }
    writeln!(out, "coeffs: {}", c.render())?;
    writeln!(out, "stable: {}", st.stable)?;
    for k in ["block_region", "f4", "x", "y", "z", "h", "q", "m", "t", "sasaki_compatible"] {
        writeln!(out, "{k}: {}", plain_value(&payload[k]))?;
    }
    if let Some(rows) = payload["metric"].as_array() {
        writeln!(out, "metric:")?;
        for row in rows {
            let cells: Vec<String> = row.as_array().into_iter().flatten().map(plain_value).collect();
            writeln!(out, "  [{}]", cells.join(", "))?;
        }
    }
    Ok(exit::OK)
}

fn plain_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn style(f: Format) -> RenderStyle {
    match f {
        Format::Plain => RenderStyle::Plain,
        Format::Latex => RenderStyle::Latex,
        Format::Json => RenderStyle::Json,
    }
}

fn hodge(a: &HodgeArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let form = parse_form(&a.form).with_context(|| format!("bad form {:?}", a.form))?;
    let conv = Convention::from(a.convention);
    let (label, input, result): (String, Value, Value);
    let text = if a.symbolic {
        let s = star(&form, &Frame::<ScaledScalar>::symbolic(conv));
        (label, input, result) = ("f0,f1,f2,f3,f4".into(), form_json(&form), form_json(&s));
        render_form(&s, style(a.format))
    } else {
        let c = numeric(a.coeffs.as_deref().expect("clap enforces --coeffs"))?;
        let asg = c.assignment()?;
        let exact: Form<Surd> = form.try_map(|s| s.eval_surd(&asg)).context("form coefficients must be constants")?;
        let s = ExactStar::new(&c, conv)?.apply(&exact);
        (label, input, result) = (c.render(), form_json(&exact), form_json(&s));
        render_form(&s, style(a.format))
    };
    if a.format == Format::Json {
        let payload = json!({
            "coeffs": label,
            "convention": conv.name(),
            "form": input,
            "star": result,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&payload)?)?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(exit::OK)
}

fn atoms_json(r: &DerivativeResult<Surd>, f: Format) -> Value {
    let st = style(if f == Format::Json { Format::Plain } else { f });
    json!({
        "plain": render_form(&r.expr.plain, st),
        "r_alpha": render_form(&r.expr.ra, st),
        "r_alpha1": render_form(&r.expr.ra1, st),
        "rbar": render_form(&r.expr.rbar, st),
    })
}

fn derive(a: &DeriveArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let model = CurvatureModel::parse(&a.curvature)?;
    let forms = InvariantForms::standard();
    let coeffs = a.coeffs.as_deref().map(numeric).transpose()?;
    let (target, source, report): (String, Form<Surd>, Option<_>) = match (&a.form, &coeffs) {
        (Some(text), c) => {
            let form = parse_form(text).with_context(|| format!("bad form {text:?}"))?;
            let asg = match c {
                Some(c) => c.assignment()?,
                None => Default::default(),
            };
            let exact = form.try_map(|s| s.eval_surd(&asg)).context("form coefficients must be constants")?;
            (format!("d({text})"), exact, None)
        }
        (None, Some(c)) => {
            let report = torsion_report(c, &model, &forms)?;
            let sigma = build_sigma_exact(c)?;
            if a.star {
                ("d *sigma".into(), ExactStar::new(c, Convention::Induced)?.apply(&sigma), Some(report))
            } else {
                ("d sigma".into(), sigma, Some(report))
            }
        }
        (None, None) => bail!("--coeffs or --form is required"),
    };
    let r = d(&source, &model, &forms)?;
    let dependence = r.dependence.as_ref().map(|dep| {
        json!({
            "theta_r_alpha": dep.theta_r_alpha.render(),
            "theta_r_alpha1": dep.theta_r_alpha1.render(),
            "rbar_vol": dep.rbar_vol.render(),
        })
    });
    if a.format == Format::Json {
        let payload = json!({
            "coeffs": coeffs.as_ref().map(Coeffs::render),
            "curvature": model.to_string(),
            "target": target,
            "form": form_json(&r.form),
            "atoms": atoms_json(&r, a.format),
            "dependence": dependence,
            "report": report,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&payload)?)?;
        return Ok(exit::OK);
    }
    writeln!(out, "{target} = {}", render_form(&r.form, style(a.format)))?;
    let atoms = atoms_json(&r, a.format);
    writeln!(out, "atoms:")?;
    for k in ["plain", "r_alpha", "r_alpha1", "rbar"] {
        writeln!(out, "  {k}: {}", plain_value(&atoms[k]))?;
    }
    if let Some(dep) = &dependence {
        for k in ["theta_r_alpha", "theta_r_alpha1", "rbar_vol"] {
            writeln!(out, "  {k}: {}", plain_value(&dep[k]))?;
        }
    }
    if let Some(rep) = &report {
        let v = serde_json::to_value(rep)?;
        writeln!(out, "report:")?;
        for (k, val) in v.as_object().into_iter().flatten() {
            if k != "dsigma" && k != "dstar_sigma" {
                writeln!(out, "  {k}: {}", plain_value(val))?;
            }
        }
    }
    Ok(exit::OK)
}

fn report(a: &ReportArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let text = std::fs::read_to_string(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let verdicts = theorems::parse_json(&text).with_context(|| format!("parsing {}", a.input.display()))?;
    emit_verdicts(&verdicts, a.format, out)
}

fn emit_verdicts(verdicts: &[theorems::Verdict], f: Format, out: &mut dyn Write) -> anyhow::Result<i32> {
    if f == Format::Json {
        writeln!(out, "{}", theorems::render_json(verdicts))?;
    } else {
        write!(out, "{}", theorems::render_table(verdicts))?;
    }
    Ok(if theorems::all_passed(verdicts) { exit::OK } else { exit::FAILED })
}

/// Suites selected by name; `all` selects every suite.
pub fn select_suites(name: &str) -> anyhow::Result<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    name.parse::<Suite>().map(|s| vec![s]).map_err(anyhow::Error::msg)
}

fn verify(a: &VerifyArgs, out: &mut dyn Write, env_seed: Option<String>) -> anyhow::Result<i32> {
    let suites = select_suites(&a.suite)?;
    let seed = match env_seed {
        Some(s) => s.trim().parse::<u64>().with_context(|| format!("{SEED_ENV}={s:?} is not a seed"))?,
        None => a.seed.unwrap_or(DEFAULT_SEED),
    };
    let verdicts = theorems::run_suites(&suites, &Context::with_seed(seed));
    if let Some(path) = &a.json {
        std::fs::write(path, theorems::render_json(&verdicts) + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    emit_verdicts(&verdicts, a.format, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(std::iter::once("gwistor").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let code = match execute(&cli, &mut buf) {
            Ok(c) => c,
            Err(e) => exit_code(&e),
        };
        (code, String::from_utf8(buf).unwrap())
    }

    fn json_of(args: &[&str]) -> Value {
        let (code, text) = run(args);
        assert_eq!(code, 0, "{text}");
        serde_json::from_str(&text).unwrap()
    }

    #[test]
    fn classify_sigma0() {
        let v = json_of(&["classify", "--coeffs", "-1,0,1,0,1", "--format", "json"]);
        assert_eq!(v["stable"], true);
        assert_eq!(v["sasaki_compatible"], true);
        assert_eq!(v["m"], "1");
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(v["metric"][i][j], if i == j { "1" } else { "0" });
            }
        }
    }

    #[test]
    fn classify_unstable_and_skew() {
        let v = json_of(&["classify", "--coeffs", "1,0,1,0,1", "--format", "json"]);
        assert_eq!(v["stable"], false);
        assert_eq!(v["h"], "-1");
        assert!(v["metric"].is_null());
        let v = json_of(&["classify", "--coeffs", "-1,1/2,1,0,1", "--format", "json"]);
        assert_eq!(v["stable"], true);
        assert_eq!(v["z"], "1/2");
        assert_eq!(v["sasaki_compatible"], false);
    }

    #[test]
    fn surds_need_exact() {
        assert_eq!(run(&["classify", "--coeffs", "sqrt(2)/2,0,1,0,1"]).0, exit::USAGE);
        assert_eq!(run(&["classify", "--coeffs", "-sqrt(2)/2,-sqrt(2)/2,sqrt(2)/2,sqrt(2)/2,1", "--exact"]).0, 0);
        assert_eq!(run(&["classify", "--coeffs", "1,2"]).0, exit::USAGE);
    }

    #[test]
    fn sasaki_circle_points() {
        let v = json_of(&[
            "classify",
            "--coeffs",
            "-sqrt(2)/2,-sqrt(2)/2,sqrt(2)/2,sqrt(2)/2,1",
            "--exact",
            "--format",
            "json",
        ]);
        assert_eq!(v["sasaki_compatible"], true);
        assert_eq!(v["m"], "1");
    }

    #[test]
    fn hodge_of_alpha1_at_sigma0() {
        let (code, text) = run(&["hodge", "--coeffs", "-1,0,1,0,1", "--form", "alpha1"]);
        assert_eq!(code, 0);
        let want = parse_form("-theta^alpha2").unwrap();
        assert_eq!(text.trim(), render_form(&want, RenderStyle::Plain));
        assert_eq!(run(&["hodge", "--coeffs", "1,0,1,0,1", "--form", "alpha1"]).0, exit::UNSTABLE);
        assert_eq!(run(&["hodge", "--coeffs", "-1,0,1,0,1", "--form", "alpha9"]).0, exit::USAGE);
    }

    #[test]
    fn derive_reports() {
        let v = json_of(&["derive", "--coeffs", "-1,0,1,0,1", "--curvature", "generic", "--star", "--format", "json"]);
        assert_eq!(v["report"]["cocalibrated"], "requires_einstein");
        assert_eq!(v["target"], "d *sigma");
        let v = json_of(&["derive", "--coeffs", "0,-1,0,1,1", "--curvature", "constant:-2", "--format", "json"]);
        assert_eq!(v["report"]["w3_scalar"], "0");
        assert_eq!(run(&["derive", "--form", "e1", "--curvature", "generic"]).0, exit::OUT_OF_SPAN);
        assert_eq!(run(&["derive", "--coeffs", "1,0,1,0,1"]).0, exit::UNSTABLE);
        assert_eq!(run(&["derive", "--coeffs", "-1,0,1,0,1", "--curvature", "wavy"]).0, exit::USAGE);
    }

    #[test]
    fn verify_seed_precedence() {
        let cli = Cli::try_parse_from(["gwistor", "verify", "--suite", "bse1", "--seed", "5", "--format", "json"]).unwrap();
        let Command::Verify(a) = &cli.command else { unreachable!() };
        let mut buf = Vec::new();
        assert_eq!(verify(a, &mut buf, Some("9".into())).unwrap(), 0);
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v[0]["seed"], 9);
        let mut buf = Vec::new();
        verify(a, &mut buf, None).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v[0]["seed"], 5);
        assert!(verify(a, &mut Vec::new(), Some("x".into())).is_err());
        assert!(select_suites("nope").is_err());
    }
}
