//! Command-line front end.
//!
//! Exit codes: 0 holds/pass, 1 fails, 2 usage or parse error, 3 degenerate.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::btensor::profile::{RelationsVerdict, PAIRS, RPAIRS};
use crate::btensor::{
    class_identity_residual, class_relations_check, classify, gct_canonical_form, is_gct, is_proper_gct,
    is_skew_endomorphism, parse_named, BCoefficients, ClassId, ContractionProfile, GctCanonicalForm,
};
use crate::catalog::{self, ExpectedProperties, SampleBox};
use crate::error::{Error, Result};
use crate::metric::{MetricField, MetricSpec};
use crate::scalar::rational_to_string;
use crate::structure::{
    run_condition, sample_packages, Condition, ConditionArgs, ConditionReport, TensorField, Verdict,
};
use crate::verify::{self, BlockResult, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "curvclass",
    version,
    about = "Classify B-tensors and verify curvature identities numerically"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Class, contraction profile and GCT flags of a coefficient vector.
    Classify(CoeffArgs),
    /// Evaluate a B-tensor on a metric at sample points.
    Eval {
        #[command(flatten)]
        coeffs: CoeffArgs,
        #[command(flatten)]
        metric: MetricArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Check a curvature condition on a tensor field.
    Check {
        /// One of: flat, symmetric, recurrent, generalized-recurrent, hyper-recurrent,
        /// weakly-recurrent, quasi-recurrent, super-recurrent, chaki, weak-1, weak-2,
        /// weak-3, semisym, deszcz, symmetric-2, recurrent-2.
        condition: String,
        /// Tensor field: g, G, S, r or a named B-tensor (`W`, `C*:a0=1,a2=1/3`, …).
        #[arg(long, default_value = "R")]
        tensor: String,
        /// Curvature operator for semisym/deszcz.
        #[arg(long = "D")]
        d: Option<String>,
        /// Symmetric form of Q(A,T) for deszcz (g or S).
        #[arg(long = "A")]
        a: Option<String>,
        /// Given 1-form for quasi-recurrent, comma-separated components.
        #[arg(long)]
        psi: Option<String>,
        #[command(flatten)]
        metric: MetricArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Residual tolerance (defaults depend on the derivative order).
        #[arg(long, env = "CURVCLASS_TOL")]
        tol: Option<f64>,
    },
    /// Run the theorem-verification blocks.
    VerifyTheorems {
        /// Dimensions, comma-separated, within 3..=8.
        #[arg(long, value_delimiter = ',', default_value = "3,4")]
        dims: Vec<usize>,
        /// Base seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of consecutive seeds (default 3, or 1 when --seed is given).
        #[arg(long)]
        seeds: Option<u64>,
        /// Sample points per metric.
        #[arg(long, default_value_t = 8)]
        points: usize,
        /// Multiplier on random draw counts. Defaults to min(1, points/8),
        /// reduced by (4/n)^4 when the largest dimension n exceeds 4.
        #[arg(long)]
        scale: Option<f64>,
        /// Run only these blocks (1..10, 7a, 7b).
        #[arg(long, value_delimiter = ',')]
        blocks: Vec<String>,
    },
    /// List built-in metrics, or describe one.
    Catalog {
        /// Metric spec such as `sphere:3:1`.
        spec: Option<String>,
        #[arg(long, default_value_t = 8)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct CoeffArgs {
    /// Named row with optional parameters, e.g. `C*:a0=1,a2=1/3`.
    #[arg(long, group = "coeffs")]
    pub named: Option<String>,
    /// Eleven comma-separated rationals a0..a10.
    #[arg(long, group = "coeffs", allow_hyphen_values = true)]
    pub a: Option<String>,
    /// JSON file `{"n": .., "a": [..]}`.
    #[arg(long, group = "coeffs")]
    pub coeff_file: Option<PathBuf>,
    /// Dimension n (taken from the metric when omitted for eval).
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    /// Built-in metric spec `name:arg:…`.
    #[arg(long, group = "metric_src")]
    pub metric: Option<String>,
    /// JSON metric description.
    #[arg(long, group = "metric_src")]
    pub metric_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = 8)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn check_dim(n: usize) -> Result<usize> {
    if !(3..=8).contains(&n) {
        return Err(Error::Parse(format!("dimension must lie in 3..=8, got {n}")));
    }
    Ok(n)
}

impl CoeffArgs {
    fn load(&self, metric_dim: Option<usize>) -> Result<(String, BCoefficients)> {
        if let Some(path) = &self.coeff_file {
            let c: BCoefficients = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            if let Some(d) = self.dim.or(metric_dim) {
                if d != c.n() {
                    return Err(Error::DimMismatch(d, c.n()));
                }
            }
            return Ok((path.display().to_string(), c));
        }
        let n = check_dim(
            self.dim
                .or(metric_dim)
                .ok_or_else(|| Error::Parse("--dim is required".into()))?,
        )?;
        if let Some(d) = metric_dim {
            if d != n {
                return Err(Error::DimMismatch(n, d));
            }
        }
        match (&self.named, &self.a) {
            (Some(s), _) => Ok((s.clone(), parse_named(s, n)?)),
            (None, Some(list)) => Ok(("B".into(), BCoefficients::parse(n, list)?)),
            _ => Err(Error::Parse("one of --named, --a, --coeff-file is required".into())),
        }
    }
}

impl MetricArgs {
    fn load(&self) -> Result<(String, Arc<dyn MetricField>, Option<SampleBox>)> {
        if let Some(spec) = &self.metric {
            let m = catalog::get(spec)?;
            return Ok((m.spec.clone(), m.field.clone(), Some(m.sample_box)));
        }
        if let Some(path) = &self.metric_file {
            let spec: MetricSpec = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            return Ok((spec.name.clone(), spec.build()?, None));
        }
        Err(Error::Parse("one of --metric, --metric-file is required".into()))
    }
}

/// Sample points: catalog sampler for built-ins, Halton points in `[−0.5, 0.5]^n` for files.
fn sample_points(metric: &MetricArgs, field: &dyn MetricField, points: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if let Some(spec) = &metric.metric {
        return Ok(catalog::get(spec)?.sample_points(points, seed));
    }
    let n = field.dim();
    let mut out = Vec::new();
    let mut offset = seed * 1009;
    while out.len() < points {
        for u in catalog::halton(n, points, offset) {
            let p: Vec<f64> = u.iter().map(|x| x - 0.5).collect();
            if field.is_admissible(&p) && out.len() < points {
                out.push(p);
            }
        }
        offset += points as u64;
        if offset > seed * 1009 + 1000 * points as u64 {
            return Err(Error::InadmissiblePoint(vec![], field.name()));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub tensor: String,
    pub coefficients: BCoefficients,
    pub class: ClassId,
    pub profile: ContractionProfile,
    pub relations: RelationsVerdict,
    pub gct: bool,
    pub proper_gct: bool,
    pub skew: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_form: Option<GctCanonicalForm>,
}

pub fn classify_report(label: &str, c: &BCoefficients) -> ClassifyReport {
    let cls = classify(c);
    ClassifyReport {
        tensor: label.to_string(),
        coefficients: c.clone(),
        class: cls.class,
        profile: cls.profile,
        relations: class_relations_check(c),
        gct: is_gct(c),
        proper_gct: is_proper_gct(c),
        skew: is_skew_endomorphism(c),
        canonical_form: gct_canonical_form(c).ok(),
    }
}

fn render_classify(r: &ClassifyReport) -> String {
    let p = &r.profile;
    let row = |v: &[crate::scalar::Rational]| v.iter().map(rational_to_string).collect::<Vec<_>>();
    let mut s = format!("{} (n = {})\n", r.tensor, r.coefficients.n());
    s += &format!("  coefficients: {}\n", row(r.coefficients.as_slice()).join(", "));
    s += &format!(
        "  class: {} (representative {})\n",
        r.class.number(),
        r.class.representative()
    );
    for (k, pair) in PAIRS.iter().enumerate() {
        s += &format!(
            "  p{pair} = {:<10} q{pair} = {}\n",
            rational_to_string(&p.p[k]),
            rational_to_string(&p.q[k])
        );
    }
    for (k, pair) in RPAIRS.iter().enumerate() {
        s += &format!("  r{pair} = {}\n", rational_to_string(&p.r[k]));
    }
    s += &format!("  gct: {}  proper gct: {}  skew: {}\n", r.gct, r.proper_gct, r.skew);
    if let Some(f) = &r.canonical_form {
        s += &format!(
            "  canonical form: {} R + ({}) g∧S + ({}) r g∧g\n",
            rational_to_string(&f.b0),
            rational_to_string(&f.b1),
            rational_to_string(&f.b2)
        );
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    pub coords: Vec<f64>,
    pub norm: f64,
    pub components: Vec<f64>,
    /// Residual of the class identity (absent for class 4).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub tensor: String,
    pub metric: String,
    pub class: ClassId,
    pub points: Vec<EvalPoint>,
}

/// Six significant digits: fixed notation for moderate magnitudes, scientific otherwise.
fn g6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-4..6).contains(&e) {
        let s = format!("{x:.*}", (5 - e) as usize);
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.')
        } else {
            &s
        };
        s.to_string()
    } else {
        format!("{x:.5e}")
    }
}

fn coords(p: &[f64]) -> String {
    p.iter().map(|x| g6(*x)).collect::<Vec<_>>().join(", ")
}

fn render_eval(r: &EvalReport) -> String {
    let mut s = format!("{} on {} (class {})\n", r.tensor, r.metric, r.class.number());
    for p in &r.points {
        s += &format!("  ({}): ‖B‖ = {}", coords(&p.coords), g6(p.norm));
        if let Some(res) = p.identity_residual {
            s += &format!(", identity residual = {}", g6(res));
        }
        s.push('\n');
    }
    s
}

fn render_report(r: &ConditionReport) -> String {
    let mut s = format!(
        "{} of {} on {}: {} (max residual {}, tolerance {})\n",
        r.condition,
        r.tensor,
        r.metric,
        r.verdict,
        g6(r.max_residual()),
        g6(r.tolerance)
    );
    for p in &r.points {
        s += &format!("  ({}): residual {}", coords(&p.coords), g6(p.residual));
        if p.degenerate {
            s += " degenerate";
        }
        for (k, v) in &p.unknowns {
            if v.len() <= 16 {
                s += &format!(" {k} = [{}]", coords(v));
            }
        }
        s.push('\n');
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub spec: String,
    pub dim: usize,
    pub sample_box: SampleBox,
    pub expected: ExpectedProperties,
    /// `(property, residual, tolerance)` from the engine check.
    pub verification: Vec<(String, f64, f64)>,
}

/// Output of a command: human text, JSON value, exit code.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    pub code: i32,
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Holds => EXIT_OK,
        Verdict::Fails => EXIT_FAIL,
        Verdict::Degenerate => EXIT_DEGENERATE,
    }
}

pub fn execute(command: &Command) -> Result<Output> {
    match command {
        Command::Classify(args) => {
            let (label, c) = args.load(None)?;
            let r = classify_report(&label, &c);
            Ok(Output {
                text: render_classify(&r),
                json: serde_json::to_value(&r)?,
                code: EXIT_OK,
            })
        }
        Command::Eval {
            coeffs,
            metric,
            sampling,
        } => {
            let (mname, field, _) = metric.load()?;
            let (label, c) = coeffs.load(Some(field.dim()))?;
            let pts = sample_points(metric, field.as_ref(), sampling.points, sampling.seed)?;
            let pkgs = sample_packages(field.as_ref(), &pts, 0)?;
            let mut points = Vec::new();
            for pkg in &pkgs {
                let b = crate::btensor::build_tensor(&c, pkg)?;
                points.push(EvalPoint {
                    coords: pkg.point().to_vec(),
                    norm: b.max_norm(),
                    components: b.data().to_vec(),
                    identity_residual: class_identity_residual(&c, pkg)?.map(|(_, r)| r),
                });
            }
            let r = EvalReport {
                tensor: label,
                metric: mname,
                class: classify(&c).class,
                points,
            };
            Ok(Output {
                text: render_eval(&r),
                json: serde_json::to_value(&r)?,
                code: EXIT_OK,
            })
        }
        Command::Check {
            condition,
            tensor,
            d,
            a,
            psi,
            metric,
            sampling,
            tol,
        } => {
            let cond: Condition = condition.parse()?;
            let (mname, field, _) = metric.load()?;
            let n = field.dim();
            let t = TensorField::parse(tensor, n)?;
            let args = ConditionArgs {
                d: d.as_deref().map(|s| TensorField::parse(s, n)).transpose()?,
                a: a.as_deref().map(|s| TensorField::parse(s, n)).transpose()?,
                psi: psi
                    .as_deref()
                    .map(|s| {
                        s.split(',')
                            .map(|x| {
                                x.trim()
                                    .parse::<f64>()
                                    .map_err(|_| Error::Parse(format!("bad psi component `{x}`")))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .transpose()?,
            };
            let tol = tol.unwrap_or(cond.default_tolerance());
            if !(tol > 0.0) {
                return Err(Error::Parse(format!("tolerance must be positive, got {tol}")));
            }
            let pts = sample_points(metric, field.as_ref(), sampling.points, sampling.seed)?;
            let pkgs = sample_packages(field.as_ref(), &pts, cond.depth())?;
            let r = run_condition(&cond, &pkgs, &t, &args, tol)?.with_metric(mname);
            Ok(Output {
                text: render_report(&r),
                json: serde_json::to_value(&r)?,
                code: verdict_code(r.verdict),
            })
        }
        Command::VerifyTheorems {
            dims,
            seed,
            seeds,
            points,
            scale,
            blocks,
        } => {
            for &n in dims {
                check_dim(n)?;
            }
            let base = seed.unwrap_or(0);
            let count = seeds.unwrap_or(if seed.is_some() { 1 } else { 3 }).max(1);
            let cfg = VerifyConfig {
                algebra_dims: dims.clone(),
                metric_dims: dims.clone(),
                seeds: (base..base + count).collect(),
                points: (*points).max(1),
                scale: scale.unwrap_or_else(|| default_scale(*points, dims)),
            };
            let results = verify::run(&cfg, blocks);
            let all = results.iter().all(|r| r.passed);
            let mut text: String = results.iter().map(|r| r.line() + "\n").collect();
            text += &format!(
                "{} of {} blocks passed\n",
                results.iter().filter(|r| r.passed).count(),
                results.len()
            );
            Ok(Output {
                text,
                json: serde_json::to_value::<&Vec<BlockResult>>(&results)?,
                code: if all { EXIT_OK } else { EXIT_FAIL },
            })
        }
        Command::Catalog { spec, points, seed } => match spec {
            None => {
                let names = catalog::list();
                Ok(Output {
                    text: names.iter().map(|s| format!("{s}\n")).collect(),
                    json: serde_json::to_value(&names)?,
                    code: EXIT_OK,
                })
            }
            Some(spec) => {
                let m = catalog::get(spec)?;
                let verification = verify::check_expected(&m, (*points).max(1), *seed)?;
                let ok = verification.iter().all(|(_, r, t)| r <= t);
                let e = CatalogEntry {
                    spec: m.spec.clone(),
                    dim: m.dim(),
                    sample_box: m.sample_box.clone(),
                    expected: m.expected.clone(),
                    verification,
                };
                let mut text = format!("{} (dim {})\n", e.spec, e.dim);
                text += &format!("  expected: {}\n", serde_json::to_string(&e.expected)?);
                for (k, r, t) in &e.verification {
                    text += &format!(
                        "  {k}: residual {} ({})\n",
                        g6(*r),
                        if r <= t { "ok" } else { "FAILED" }
                    );
                }
                Ok(Output {
                    text,
                    json: serde_json::to_value(&e)?,
                    code: if ok { EXIT_OK } else { EXIT_FAIL },
                })
            }
        },
    }
}

pub fn default_scale(points: usize, dims: &[usize]) -> f64 {
    let top = dims.iter().copied().max().unwrap_or(4).max(4) as f64;
    (points as f64 / 8.0).min(1.0) * (4.0 / top).powi(4)
}

fn write_json(path: &Path, v: &serde_json::Value) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, v)?;
    f.write_all(b"\n")?;
    Ok(())
}

/// Parses `args` and runs the command, printing to stdout/stderr; returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).unwrap_or_default());
            } else {
                print!("{}", out.text);
            }
            if let Some(path) = &cli.out {
                if let Err(e) = write_json(path, &out.json) {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Output> {
        let cli = Cli::try_parse_from(std::iter::once("curvclass").chain(args.iter().copied())).unwrap();
        execute(&cli.command)
    }

    #[test]
    fn classify_named_rows() {
        let out = run(&["classify", "--named", "C", "--dim", "4"]).unwrap();
        assert_eq!(out.json["class"], 1);
        assert_eq!(out.json["gct"], true);
        assert_eq!(out.json["skew"], true);
        let out = run(&["classify", "--named", "R", "--dim", "5"]).unwrap();
        assert_eq!(out.json["class"], 4);
        assert_eq!(out.json["proper_gct"], true);
        let a = run(&["classify", "--a", "1,0,0,0,0,0,0,0,0,0,0", "--dim", "3"]).unwrap();
        let r = run(&["classify", "--named", "R", "--dim", "3"]).unwrap();
        assert_eq!(a.json["profile"], r.json["profile"]);
        assert_eq!(a.json["relations"], r.json["relations"]);
    }

    #[test]
    fn six_significant_digits() {
        assert_eq!(g6(0.5), "0.5");
        assert_eq!(g6(1.0 / 3.0), "0.333333");
        assert_eq!(g6(-4.666666666), "-4.66667");
        assert_eq!(g6(123456.7), "123457");
        assert_eq!(g6(1234567.0), "1.23457e6");
        assert_eq!(g6(2.5e-12), "2.50000e-12");
        assert_eq!(g6(0.0), "0");
        assert_eq!(default_scale(8, &[3, 4]), 1.0);
        assert_eq!(default_scale(1, &[3, 4]), 0.125);
        assert!((default_scale(8, &[5, 6]) - (2.0f64 / 3.0).powi(4)).abs() < 1e-15);
    }

    #[test]
    fn parse_errors() {
        assert!(run(&["classify", "--named", "Q", "--dim", "4"]).is_err());
        assert!(run(&["classify", "--named", "C", "--dim", "2"]).is_err());
        assert!(run(&["eval", "--named", "C", "--dim", "3", "--metric", "sphere:4:1"]).is_err());
        assert!(run(&["check", "bogus", "--metric", "sphere:3:1"]).is_err());
        assert_eq!(
            main_with(["curvclass", "check", "bogus", "--metric", "sphere:3:1"]),
            EXIT_USAGE
        );
        assert_eq!(main_with(["curvclass", "frobnicate"]), EXIT_USAGE);
    }

    #[test]
    fn eval_examples() {
        let out = run(&["eval", "--named", "W", "--metric", "sphere:3:1", "--points", "3"]).unwrap();
        for p in out.json["points"].as_array().unwrap() {
            assert!(p["norm"].as_f64().unwrap() <= 1e-9);
        }
        let out = run(&["eval", "--named", "C", "--metric", "schwarzschild:1", "--points", "3"]).unwrap();
        for p in out.json["points"].as_array().unwrap() {
            assert!(p["identity_residual"].as_f64().unwrap() <= 1e-8);
        }
        let out = run(&["eval", "--named", "R", "--metric", "flat-euclidean:4", "--points", "2"]).unwrap();
        for p in out.json["points"].as_array().unwrap() {
            assert!(p["components"]
                .as_array()
                .unwrap()
                .iter()
                .all(|v| v.as_f64() == Some(0.0)));
        }
    }

    #[test]
    fn check_exit_codes() {
        let out = run(&[
            "check",
            "recurrent",
            "--tensor",
            "R",
            "--metric",
            "pp-wave:exp",
            "--points",
            "3",
        ])
        .unwrap();
        assert_eq!(out.code, EXIT_OK);
        let pi = &out.json["points"][0]["unknowns"]["pi"];
        assert!((pi[0].as_f64().unwrap() - 1.0).abs() < 1e-8);
        let out = run(&[
            "check",
            "semisym",
            "--D",
            "R",
            "--tensor",
            "R",
            "--metric",
            "sphere:3:1",
            "--points",
            "2",
        ])
        .unwrap();
        assert_eq!(out.code, EXIT_OK);
        let out = run(&[
            "check",
            "symmetric",
            "--tensor",
            "g",
            "--metric",
            "random-polynomial:3:42",
            "--points",
            "2",
        ])
        .unwrap();
        assert_eq!(out.code, EXIT_OK);
        let out = run(&[
            "check",
            "symmetric",
            "--tensor",
            "R",
            "--metric",
            "pp-wave:exp",
            "--points",
            "2",
        ])
        .unwrap();
        assert_eq!(out.code, EXIT_FAIL);
        let out = run(&[
            "check",
            "hyper-recurrent",
            "--tensor",
            "R",
            "--metric",
            "schwarzschild:1",
            "--points",
            "2",
        ])
        .unwrap();
        assert_eq!(out.code, EXIT_DEGENERATE);
    }

    #[test]
    fn json_output_round_trips() {
        let out = run(&["check", "recurrent", "--metric", "sphere:3:1", "--points", "2"]).unwrap();
        let text = serde_json::to_string(&out.json).unwrap();
        let back: ConditionReport = serde_json::from_str(&text).unwrap();
        assert_eq!(
            serde_json::to_string(&serde_json::to_value(&back).unwrap()).unwrap(),
            text
        );
        let out = run(&["classify", "--named", "C*:a0=1,a2=1/3", "--dim", "4"]).unwrap();
        let back: ClassifyReport = serde_json::from_value(out.json.clone()).unwrap();
        assert_eq!(serde_json::to_value(&back).unwrap(), out.json);
    }

    #[test]
    fn catalog_listing() {
        let out = run(&["catalog"]).unwrap();
        assert!(out.json.as_array().unwrap().len() >= 8);
        let out = run(&["catalog", "sphere:3:1", "--points", "2"]).unwrap();
        assert_eq!(out.code, EXIT_OK);
    }

    #[test]
    fn metric_file_input() {
        let dir = std::env::temp_dir().join(format!("curvclass-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m.json");
        std::fs::write(
            &path,
            r#"{"name":"bump","dim":3,"kind":"polynomial","params":{"components":[
                [[1.0,[]],[0.05,[2,0,0]]],[],[],[[1.0,[]]],[[0.03,[1,1,0]]],[[1.0,[]],[0.04,[0,0,2]]]]}}"#,
        )
        .unwrap();
        let p = path.to_str().unwrap();
        let out = run(&[
            "check",
            "symmetric",
            "--tensor",
            "g",
            "--metric-file",
            p,
            "--points",
            "2",
        ])
        .unwrap();
        assert_eq!(out.code, EXIT_OK);
        let out = run(&["eval", "--named", "K", "--metric-file", p, "--points", "2"]).unwrap();
        assert_eq!(out.json["points"].as_array().unwrap().len(), 2);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
