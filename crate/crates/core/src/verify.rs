//! Theorem verification blocks: each block checks one family of claims on
//! random coefficient vectors or sampled metrics and reports pass/fail with counts.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::btensor::sample::{random_biased, random_in_class, small_rational};
use crate::btensor::{
    all_rows, build_tensor, catalog as coefficient_row, class_identity_residual, class_relations_check, classify,
    default_params, predict_combination, BCoefficients, ClassId, TensorName,
};
use crate::catalog::{self, CatalogMetric};
use crate::engine::CurvaturePackage;
use crate::error::Result;
use crate::scalar::{rat, Rational};
use crate::structure::{
    check_symmetric, fit_recurrence, ricci_identity_residual, sample_packages, TensorField, TOL_DEPTH1,
};
use crate::tensor::{curvature_dot, metric_g_tensor, q_operator, Metric, Tensor};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Dimensions for the purely algebraic blocks.
    pub algebra_dims: Vec<usize>,
    /// Dimensions for blocks that sample metrics.
    pub metric_dims: Vec<usize>,
    pub seeds: Vec<u64>,
    /// Sample points per metric (blocks with a smaller stated count use that).
    pub points: usize,
    /// Multiplier on the number of random draws (1.0 is the full run).
    pub scale: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            algebra_dims: vec![3, 4],
            metric_dims: vec![3, 4],
            seeds: vec![0],
            points: 8,
            scale: 1.0,
        }
    }
}

impl VerifyConfig {
    /// The configuration pinned by the acceptance suite.
    pub fn acceptance() -> Self {
        VerifyConfig {
            algebra_dims: vec![3, 4, 5, 6],
            metric_dims: vec![3, 4],
            seeds: vec![0],
            points: 8,
            scale: 1.0,
        }
    }

    fn count(&self, full: usize) -> usize {
        ((full as f64 * self.scale).round() as usize).max(1)
    }

    /// Metrics per dimension and points per metric, reduced above `n = 4`.
    fn metric_budget(&self, n: usize, metrics: usize, points: usize) -> (usize, usize) {
        let points = points.min(self.points).max(1);
        if n <= 4 {
            (self.count(metrics), points)
        } else {
            (self.count(metrics).div_ceil(4), points.min(2))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockResult {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub detail: String,
    pub seconds: f64,
}

impl BlockResult {
    pub fn line(&self) -> String {
        let mut s = format!(
            "[{}] {} {}: {} checked, {} failed",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checked,
            self.failures
        );
        if let (Some(r), Some(t)) = (self.max_residual, self.tolerance) {
            s.push_str(&format!(", max residual {r:.3e} (tol {t:.0e})"));
        }
        if !self.detail.is_empty() {
            s.push_str(&format!("; {}", self.detail));
        }
        s.push_str(&format!(" [{:.2} s]", self.seconds));
        s
    }
}

/// Accumulates counts, worst residual and the first few failure notes.
#[derive(Debug, Default)]
struct Tally {
    checked: usize,
    failures: usize,
    worst: f64,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, note: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.notes.len() < 3 {
                self.notes.push(note());
            }
        }
    }

    fn residual(&mut self, r: f64, tol: f64, note: impl FnOnce() -> String) {
        if r > self.worst || r.is_nan() {
            self.worst = r;
        }
        self.check(r <= tol, note);
    }

    fn finish(self, id: &str, name: &str, tol: Option<f64>, extra: String, start: Instant) -> BlockResult {
        let mut detail = extra;
        if !self.notes.is_empty() {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str(&format!("e.g. {}", self.notes.join(" | ")));
        }
        BlockResult {
            id: id.into(),
            name: name.into(),
            passed: self.failures == 0 && self.checked > 0,
            checked: self.checked,
            failures: self.failures,
            max_residual: tol.map(|_| self.worst),
            tolerance: tol,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

fn rng(seed: u64, block: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9).wrapping_add(block))
}

/// The class each fixed row is listed under.
pub fn listed_class(name: TensorName) -> Option<ClassId> {
    use TensorName::*;
    Some(match name {
        C => ClassId::Class1,
        K => ClassId::Class2,
        W | P | M | PStar => ClassId::Class3,
        Wi(0) | Wi(1) | WiStar(3) => ClassId::Class3,
        R | Wi(_) | WiStar(_) => ClassId::Class4,
        _ => return None,
    })
}

/// Rows with their listed class; parametrized rows use the default parameters.
fn listed_rows(n: usize) -> Result<Vec<(TensorName, BCoefficients, ClassId)>> {
    let mut out = Vec::new();
    for name in TensorName::all() {
        if let Some(class) = listed_class(name) {
            out.push((name, coefficient_row(name, n, &default_params(name))?, class));
        }
    }
    Ok(out)
}

pub fn block_classifier(cfg: &VerifyConfig) -> Result<BlockResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    for &n in &cfg.algebra_dims {
        for (name, c, want) in listed_rows(n)? {
            let got = classify(&c).class;
            t.check(got == want, || format!("{name} n={n}: {got}, listed as {want}"));
        }
    }
    Ok(t.finish("1", "classifier exactness", None, String::new(), start))
}

pub fn block_relations(cfg: &VerifyConfig, seed: u64) -> Result<BlockResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut by_class = BTreeMap::<u8, usize>::new();
    for &n in &cfg.algebra_dims {
        let mut r = rng(seed, 2 + 100 * n as u64);
        for _ in 0..cfg.count(10_000) {
            let c = random_biased(&mut r, n);
            let v = class_relations_check(&c);
            *by_class.entry(v.classified.number()).or_default() += 1;
            t.check(v.agrees, || {
                format!(
                    "n={n} {c}: profile gives {}, relations give {}",
                    v.classified, v.implied
                )
            });
        }
    }
    let spread = by_class
        .iter()
        .map(|(k, v)| format!("class {k}: {v}"))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(t.finish("2", "relations cross-check", None, spread, start))
}

fn random_metrics(
    cfg: &VerifyConfig,
    seed: u64,
    block: u64,
    per_dim: usize,
    points: usize,
    depth: usize,
) -> Result<Vec<(String, Vec<CurvaturePackage>)>> {
    let mut out = Vec::new();
    for &n in &cfg.metric_dims {
        let (count, pts) = cfg.metric_budget(n, per_dim, points);
        for k in 0..count {
            let s = seed
                .wrapping_mul(1_000_003)
                .wrapping_add(block * 10_007 + 31 * k as u64 + n as u64);
            let spec = format!("random-polynomial:{n}:{s}");
            let m = catalog::get(&spec)?;
            let pkgs = sample_packages(m.field.as_ref(), &m.sample_points(pts, s), depth)?;
            out.push((spec, pkgs));
        }
    }
    Ok(out)
}

pub fn block_flatness(cfg: &VerifyConfig, seed: u64) -> Result<BlockResult> {
    let start = Instant::now();
    let tol = 1e-9;
    let mut t = Tally::default();
    let metrics = random_metrics(cfg, seed, 3, 10, 8, 0)?;
    let mut r = rng(seed, 3);
    for &n in &cfg.metric_dims {
        for class in [ClassId::Class1, ClassId::Class2, ClassId::Class3] {
            let mut sets = Vec::new();
            while sets.len() < cfg.count(50) {
                let c = random_in_class(&mut r, n, class);
                if classify(&c).class == class {
                    sets.push(c);
                }
            }
            for (spec, pkgs) in metrics.iter().filter(|(_, p)| p[0].dim() == n) {
                for pkg in pkgs {
                    for c in &sets {
                        match class_identity_residual(c, pkg)? {
                            Some((_, res)) => t.residual(res, tol, || format!("{spec} class {class} {c}: {res:.2e}")),
                            None => t.check(false, || format!("{spec}: no identity for {c}")),
                        }
                    }
                }
            }
        }
    }
    let extra = format!("{} metrics, class 1/2/3 identities", metrics.len());
    Ok(t.finish("3", "flatness identities", Some(tol), extra, start))
}

fn random_rational_metric(r: &mut ChaCha8Rng, n: usize) -> Metric<Rational> {
    loop {
        let mut g = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = if i == j {
                    rat(r.random_range(3..=9), 1)
                        * if r.random_bool(0.2) {
                            -Rational::one()
                        } else {
                            Rational::one()
                        }
                } else {
                    small_rational(r)
                };
                g[i * n + j] = v.clone();
                g[j * n + i] = v;
            }
        }
        if let Ok(m) = Tensor::covariant(n, 2, g).and_then(Metric::new) {
            return m;
        }
    }
}

pub fn block_tachibana(cfg: &VerifyConfig, seed: u64) -> Result<BlockResult> {
    let start = Instant::now();
    let n = 3;
    let mut t = Tally::default();
    let mut r = rng(seed, 4);
    for i in 0..cfg.count(1000) {
        let k = 2 + i % 3;
        let m = random_rational_metric(&mut r, n);
        let data: Vec<Rational> = (0..n.pow(k as u32)).map(|_| small_rational(&mut r)).collect();
        let tensor = Tensor::covariant(n, k, data)?;
        let q = q_operator(m.g(), &tensor)?;
        let gt = curvature_dot(&metric_g_tensor(&m), &tensor, &m)?;
        t.check(q == gt, || format!("k={k}: Q(g,T) differs from G·T"));
    }
    Ok(t.finish("4", "Q(g,T) = G·T (exact)", None, "n=3, k ∈ {2,3,4}".into(), start))
}

/// Largest of `‖R‖, ‖S‖, |r|`.
fn curvature_scale(pkg: &CurvaturePackage) -> f64 {
    pkg.riemann()
        .max_norm()
        .max(pkg.ricci().max_norm())
        .max(pkg.scalar_curvature().abs())
}

fn max_diff(a: &Tensor<f64>, b: &Tensor<f64>) -> f64 {
    a.sub(b).map(|d| d.max_norm()).unwrap_or(f64::INFINITY)
}

/// Engine check of one catalog entry's expected properties; returns `(property, residual, tolerance)`.
pub fn check_expected(m: &CatalogMetric, points: usize, seed: u64) -> Result<Vec<(String, f64, f64)>> {
    let tol = 1e-8;
    let e = &m.expected;
    let pkgs = sample_packages(m.field.as_ref(), &m.sample_points(points, seed), 1)?;
    let n = m.dim();
    let mut out = Vec::new();
    let mut worst = BTreeMap::<&str, f64>::new();
    let mut bump = |k: &'static str, v: f64| {
        let w = worst.entry(k).or_insert(0.0);
        if v > *w || v.is_nan() {
            *w = v;
        }
    };
    for pkg in &pkgs {
        let scale = pkg.riemann().max_norm().max(1.0);
        let r = pkg.scalar_curvature();
        if e.flat {
            bump("flat", pkg.riemann().max_norm());
        }
        if e.ricci_flat {
            bump("ricci-flat", pkg.ricci().max_norm() / scale);
        }
        if e.constant_curvature {
            let model = metric_g_tensor(pkg.metric()).scale(&(r / (n * (n - 1)) as f64));
            bump("constant-curvature", max_diff(pkg.riemann(), &model) / scale);
        }
        if e.conformally_flat && n >= 4 {
            let c = build_tensor(&coefficient_row(TensorName::C, n, &BTreeMap::new())?, pkg)?;
            bump("conformally-flat", c.max_norm() / scale);
        }
        if e.locally_symmetric {
            bump(
                "locally-symmetric",
                pkg.nabla_riemann().map(|t| t.max_norm()).unwrap_or(f64::NAN) / scale,
            );
        }
        if let Some(want) = e.scalar_curvature {
            bump("scalar-curvature", (r - want).abs() / want.abs().max(1.0));
        }
    }
    if let Some(form) = &e.recurrent_form {
        let rep = fit_recurrence(&pkgs, &TensorField::parse("R", n)?, TOL_DEPTH1)?;
        let mut dev = rep.max_residual();
        for pi in rep.unknown("pi") {
            for (a, b) in pi.iter().zip(form) {
                dev = dev.max((a - b).abs());
            }
        }
        if !rep.holds() {
            dev = dev.max(1.0);
        }
        bump("recurrent", dev);
    }
    for (k, v) in worst {
        out.push((k.to_string(), v, tol));
    }
    Ok(out)
}

pub fn block_fixtures(cfg: &VerifyConfig, seed: u64) -> Result<BlockResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    let pts = cfg.points.max(1);

    let sphere = catalog::get("sphere:3:1")?;
    let w = TensorField::parse("W", 3)?;
    for pkg in sample_packages(sphere.field.as_ref(), &sphere.sample_points(pts, seed), 1)? {
        let r = pkg.scalar_curvature();
        t.residual((r - 6.0).abs(), 1e-9, || format!("sphere r = {r}"));
        let wn = w.value(&pkg)?.max_norm();
        t.residual(wn, 1e-9, || format!("sphere ‖W‖ = {wn:.2e}"));
        let dr = pkg.nabla_riemann().unwrap().max_norm();
        t.residual(dr, 1e-9, || format!("sphere ‖∇R‖ = {dr:.2e}"));
    }

    let schw = catalog::get("schwarzschild:1")?;
    let c = TensorField::parse("C", 4)?;
    for pkg in sample_packages(schw.field.as_ref(), &schw.sample_points(pts.min(3), seed), 0)? {
        let s = pkg.ricci().max_norm();
        t.residual(s, 1e-8, || format!("schwarzschild ‖S‖ = {s:.2e}"));
        let d = max_diff(&c.value(&pkg)?, pkg.riemann());
        t.residual(d, 1e-8, || format!("schwarzschild ‖C − R‖ = {d:.2e}"));
    }

    for &n in &[3usize, 4] {
        for spec in [format!("flat-euclidean:{n}"), format!("minkowski:{n}")] {
            let m = catalog::get(&spec)?;
            let rows = all_rows(n)?;
            for pkg in sample_packages(m.field.as_ref(), &m.sample_points(pts.min(3), seed), 0)? {
                for (name, c) in &rows {
                    let b = build_tensor(c, &pkg)?;
                    t.check(b.is_exactly_zero(), || format!("{spec}: {name} not exactly zero"));
                }
            }
        }
    }

    let mut props = 0;
    for spec in catalog::default_specs(&[3, 4]) {
        let m = catalog::get(&spec)?;
        for (prop, res, tol) in check_expected(&m, pts, seed)? {
            props += 1;
            t.residual(res, tol, || format!("{spec} {prop}: {res:.2e}"));
        }
    }
    let extra = format!("{props} catalog expectations");
    Ok(t.finish("5", "fixture ground truths", Some(1e-8), extra, start))
}

/// Tensors listed as recurrent together with `R`.
pub const RECURRENT_BLOCK: [&str; 8] = ["R", "W", "P", "M", "P*", "W0", "W1", "W3*"];

pub fn block_recurrence(cfg: &VerifyConfig, seed: u64) -> Result<BlockResult> {
    let start = Instant::now();
    let tol = 1e-6;
    let mut t = Tally::default();
    let m = catalog::get("pp-wave:exp")?;
    let pkgs = sample_packages(m.field.as_ref(), &m.sample_points(cfg.points.max(1), seed), 1)?;
    let du = [1.0, 0.0, 0.0, 0.0];
    let mut forms: Vec<Vec<Vec<f64>>> = Vec::new();
    for name in RECURRENT_BLOCK {
        let field = match name {
            "P*" => TensorField::from_coefficients(
                name,
                coefficient_row(TensorName::PStar, 4, &default_params(TensorName::PStar))?,
            ),
            _ => TensorField::parse(name, 4)?,
        };
        let rep = fit_recurrence(&pkgs, &field, TOL_DEPTH1)?;
        t.check(rep.holds(), || {
            format!(
                "{name}: recurrence {} (residual {:.2e})",
                rep.verdict,
                rep.max_residual()
            )
        });
        let pis = rep.unknown("pi");
        for pi in &pis {
            let dev = pi.iter().zip(du).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            t.residual(dev, tol, || format!("{name}: Π = {pi:?}"));
        }
        forms.push(pis);
    }
    for f in &forms[1..] {
        for (a, b) in f.iter().zip(&forms[0]) {
            let dev = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            t.residual(dev, tol, || format!("Π differs from that of R by {dev:.2e}"));
        }
    }
    let sym = check_symmetric(&pkgs, &TensorField::parse("R", 4)?, TOL_DEPTH1)?;
    t.check(!sym.holds(), || "∇R = 0 reported on the pp-wave".into());
    Ok(t.finish(
        "6",
        "pp-wave recurrence block",
        Some(tol),
        format!("symmetric: {}", sym.verdict),
        start,
    ))
}

pub const OPERATORS: [&str; 4] = ["R", "C", "K", "W"];

fn operator_packages(cfg: &VerifyConfig, seed: u64) -> Result<Vec<(String, Vec<CurvaturePackage>)>> {
    random_metrics(cfg, seed, 7, 5, 4, 0)
}

/// `D·T` relative differences for the pairs that hold for every metric.
pub fn block_operator_identities(cfg: &VerifyConfig, seed: u64) -> Result<BlockResult> {
    let start = Instant::now();
    let tol = 1e-9;
    let mut t = Tally::default();
    for (spec, pkgs) in operator_packages(cfg, seed)? {
        let n = pkgs[0].dim();
        let f = |s: &str| TensorField::parse(s, n);
        let (c, k, w, r) = (f("C")?, f("K")?, f("W")?, f("R")?);
        for pkg in &pkgs {
            let m = pkg.metric();
            let big_g = metric_g_tensor(m);
            for dn in OPERATORS {
                let d = f(dn)?.value(pkg)?;
                let dot = |x: &TensorField| -> Result<Tensor<f64>> { curvature_dot(&d, &x.value(pkg)?, m) };
                let scale = curvature_scale(pkg).powi(2);
                let dc_dk = max_diff(&dot(&c)?, &dot(&k)?) / scale;
                t.residual(dc_dk, tol, || format!("{spec} {dn}·C vs {dn}·K: {dc_dk:.2e}"));
                let dw_dr = max_diff(&dot(&w)?, &dot(&r)?) / scale;
                t.residual(dw_dr, tol, || format!("{spec} {dn}·W vs {dn}·R: {dw_dr:.2e}"));
                let dg = curvature_dot(&d, &big_g, m)?.max_norm() / (curvature_scale(pkg) * big_g.max_norm());
                t.residual(dg, 1e-10, || format!("{spec} {dn}·G: {dg:.2e}"));
            }
        }
    }
    Ok(t.finish(
        "7a",
        "D·C = D·K, D·W = D·R, D·G = 0",
        Some(tol),
        "D·G at tol 1e-10".into(),
        start,
    ))
}

/// `D·𝓜 = D·R` and `D·P* = D·R` componentwise. These contain `g ∧ (D·S)`
/// terms and fail whenever `D·S ≠ 0`; the condition-level equivalence
/// (`D·R = 0 ⇔ D·𝓜 = 0`) is checked alongside and reported in the detail.
pub fn block_operator_identities_ricci(cfg: &VerifyConfig, seed: u64) -> Result<BlockResult> {
    let start = Instant::now();
    let tol = 1e-9;
    let mut t = Tally::default();
    let mut cond_checked = 0;
    let mut cond_failed = 0;
    let mut cond_notes: Vec<String> = Vec::new();
    let mut sets = operator_packages(cfg, seed)?;
    for spec in [
        "sphere:3:1",
        "sphere:4:1",
        "hyperbolic:4:1",
        "pp-wave:exp",
        "schwarzschild:1",
    ] {
        let m = catalog::get(spec)?;
        sets.push((
            spec.to_string(),
            sample_packages(m.field.as_ref(), &m.sample_points(2, seed), 0)?,
        ));
    }
    for (spec, pkgs) in sets {
        let n = pkgs[0].dim();
        let r = TensorField::parse("R", n)?;
        let others = [
            TensorField::parse("M", n)?,
            TensorField::from_coefficients(
                "P*",
                coefficient_row(TensorName::PStar, n, &default_params(TensorName::PStar))?,
            ),
        ];
        let random = spec.starts_with("random");
        for pkg in &pkgs {
            let m = pkg.metric();
            for dn in OPERATORS {
                let d = TensorField::parse(dn, n)?.value(pkg)?;
                let dr = curvature_dot(&d, &r.value(pkg)?, m)?;
                let scale = curvature_scale(pkg).powi(2);
                for o in &others {
                    let dother = curvature_dot(&d, &o.value(pkg)?, m)?;
                    if random {
                        let diff = max_diff(&dother, &dr) / scale.max(1e-300);
                        t.residual(diff, tol, || format!("{spec} {dn}·{o} vs {dn}·R: {diff:.2e}"));
                    }
                    if scale > 0.0 {
                        cond_checked += 1;
                        let zr = dr.max_norm() <= 1e-9 * scale;
                        let zo = dother.max_norm() <= 1e-9 * scale;
                        if zr != zo {
                            cond_failed += 1;
                            if cond_notes.len() < 2 {
                                cond_notes.push(format!(
                                    "{spec} {dn}: ‖{dn}·R‖ = {:.1e}, ‖{dn}·{o}‖ = {:.1e}",
                                    dr.max_norm() / scale,
                                    dother.max_norm() / scale
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut extra = format!("condition-level D·R = 0 ⇔ D·T = 0: {cond_checked} checked, {cond_failed} failed");
    if !cond_notes.is_empty() {
        extra.push_str(&format!(" ({})", cond_notes.join(" | ")));
    }
    Ok(t.finish("7b", "D·M = D·R, D·P* = D·R componentwise", Some(tol), extra, start))
}

/// Endpoints of a draw for the combination block.
fn combination_draw(r: &mut ChaCha8Rng, n: usize) -> Option<(BCoefficients, BCoefficients, Rational, Rational)> {
    let nonzero = |r: &mut ChaCha8Rng| loop {
        let q = small_rational(r);
        if !q.is_zero() {
            return q;
        }
    };
    let class = |r: &mut ChaCha8Rng| ClassId::from_number(r.random_range(1..=4)).unwrap();
    match r.random_range(0..4) {
        // unconstrained pair; μ or η occasionally zero
        0 | 1 => {
            let c1 = random_biased(r, n);
            let c2 = random_biased(r, n);
            let mu = if r.random_bool(0.05) {
                Rational::zero()
            } else {
                nonzero(r)
            };
            let eta = if r.random_bool(0.05) {
                Rational::zero()
            } else {
                nonzero(r)
            };
            Some((c1, c2, mu, eta))
        }
        // second member chosen so that μ c1 + η c2 lands in a prescribed class
        _ => {
            let (k1, target) = match r.random_range(0..5) {
                0 => (ClassId::Class2, ClassId::Class1),
                1 => (ClassId::Class3, ClassId::Class1),
                2 => (ClassId::Class4, ClassId::Class3),
                3 => (ClassId::Class4, ClassId::Class2),
                _ => (class(r), class(r)),
            };
            let c1 = random_in_class(r, n, k1);
            let tgt = random_in_class(r, n, target);
            let (mu, eta) = (nonzero(r), nonzero(r));
            let a: Vec<Rational> = tgt
                .as_slice()
                .iter()
                .zip(c1.as_slice())
                .map(|(t, c)| (t - &mu * c) / &eta)
                .collect();
            let c2 = BCoefficients::new(n, a).ok()?;
            Some((c1, c2, mu, eta))
        }
    }
}

pub fn block_combination(cfg: &VerifyConfig, seed: u64) -> Result<BlockResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut pairs = BTreeMap::<(u8, u8), usize>::new();
    let mut r = rng(seed, 8);
    let total = cfg.count(10_000);
    let dims = &cfg.algebra_dims;
    let mut i = 0;
    while t.checked < total {
        let n = dims[i % dims.len()];
        i += 1;
        let Some((c1, c2, mu, eta)) = combination_draw(&mut r, n) else {
            continue;
        };
        let Ok(combined) = BCoefficients::linear(&mu, &c1, &eta, &c2) else {
            continue;
        };
        let pred = predict_combination(&c1, &c2, &mu, &eta)?;
        let got = classify(&combined).class;
        *pairs.entry((pred.first.number(), pred.second.number())).or_default() += 1;
        t.check(pred.predicted == got, || {
            format!(
                "n={n} ({},{}) μ={mu} η={eta}: predicted {} got {}",
                pred.first, pred.second, pred.predicted, got
            )
        });
    }
    let covered = pairs.len();
    let extra = format!("{covered} of 16 class pairs covered");
    let mut res = t.finish("8", "combination theorem", None, extra, start);
    if covered < 16 {
        res.passed = false;
    }
    Ok(res)
}

pub fn block_ricci_identity(cfg: &VerifyConfig, seed: u64) -> Result<BlockResult> {
    let start = Instant::now();
    let tol = 1e-7;
    let mut t = Tally::default();
    let sub = VerifyConfig {
        metric_dims: vec![3],
        ..cfg.clone()
    };
    for (spec, pkgs) in random_metrics(&sub, seed, 9, 5, 4, 2)? {
        let r = TensorField::parse("R", 3)?;
        for pkg in &pkgs {
            let res = ricci_identity_residual(pkg, &r)?;
            t.residual(res, tol, || format!("{spec}: {res:.2e}"));
        }
    }
    Ok(t.finish("9", "Ricci identity", Some(tol), String::new(), start))
}

fn coefficient_weight(c: &BCoefficients) -> f64 {
    c.to_f64().iter().map(|v| v.abs()).sum()
}

pub fn block_implications(cfg: &VerifyConfig, seed: u64) -> Result<BlockResult> {
    let start = Instant::now();
    let tol = 1e-8;
    let mut t = Tally::default();
    let mut premises = 0;
    for spec in catalog::default_specs(&cfg.metric_dims) {
        let m = catalog::get(&spec)?;
        let n = m.dim();
        let pkgs = sample_packages(
            m.field.as_ref(),
            &m.sample_points(
                ((cfg.points.clamp(1, 4) as f64 * cfg.scale).ceil() as usize).max(1),
                seed,
            ),
            0,
        )?;
        let rows = all_rows(n)?;
        let c_row = coefficient_row(TensorName::C, n, &BTreeMap::new())?;
        let r_row = BCoefficients::pure_riemann(n)?;
        for pkg in &pkgs {
            let m = pkg.metric();
            let r = build_tensor(&r_row, pkg)?;
            let c = build_tensor(&c_row, pkg)?;
            let zero = |x: &Tensor<f64>, w: f64| x.max_norm() <= tol * w;
            let r_zero = zero(&r, 1.0);
            let c_zero = zero(&c, coefficient_weight(&c_row));
            let ops: Vec<Tensor<f64>> = OPERATORS
                .iter()
                .map(|d| TensorField::parse(d, n).and_then(|f| f.value(pkg)))
                .collect::<Result<_>>()?;
            let op_dots =
                |x: &Tensor<f64>| -> Result<Vec<Tensor<f64>>> { ops.iter().map(|d| curvature_dot(d, x, m)).collect() };
            let dr = op_dots(&r)?;
            let dc = op_dots(&c)?;
            for (name, row) in &rows {
                let b = build_tensor(row, pkg)?;
                let w = coefficient_weight(row);
                let b_zero = zero(&b, w);
                if r_zero {
                    premises += 1;
                    t.check(b_zero, || format!("{spec}: R = 0 but {name} ≠ 0"));
                }
                if b_zero {
                    premises += 1;
                    t.check(c_zero, || format!("{spec}: {name} = 0 but C ≠ 0"));
                }
                let db = op_dots(&b)?;
                for (k, dn) in OPERATORS.iter().enumerate() {
                    let dw = ops[k].max_norm().max(1.0);
                    let dr_zero = zero(&dr[k], dw);
                    let db_zero = zero(&db[k], dw * w);
                    let dc_zero = zero(&dc[k], dw * coefficient_weight(&c_row));
                    if dr_zero {
                        premises += 1;
                        t.check(db_zero, || format!("{spec}: {dn}·R = 0 but {dn}·{name} ≠ 0"));
                    }
                    if db_zero {
                        premises += 1;
                        t.check(dc_zero, || format!("{spec}: {dn}·{name} = 0 but {dn}·C ≠ 0"));
                    }
                }
            }
        }
    }
    let extra = format!("{premises} premises met");
    let mut res = t.finish("10", "implication chains", None, extra, start);
    res.checked = premises;
    Ok(res)
}

type BlockFn = fn(&VerifyConfig, u64) -> Result<BlockResult>;

fn blocks() -> Vec<(&'static str, BlockFn)> {
    vec![
        ("1", |c, _| block_classifier(c)),
        ("2", block_relations),
        ("3", block_flatness),
        ("4", block_tachibana),
        ("5", block_fixtures),
        ("6", block_recurrence),
        ("7a", block_operator_identities),
        ("7b", block_operator_identities_ricci),
        ("8", block_combination),
        ("9", block_ricci_identity),
        ("10", block_implications),
    ]
}

pub fn block_ids() -> Vec<&'static str> {
    blocks().into_iter().map(|(id, _)| id).collect()
}

fn merge(id: &str, runs: Vec<Result<BlockResult>>) -> BlockResult {
    let mut out: Option<BlockResult> = None;
    for run in runs {
        let r = run.unwrap_or_else(|e| BlockResult {
            id: id.into(),
            name: "error".into(),
            passed: false,
            checked: 0,
            failures: 1,
            max_residual: None,
            tolerance: None,
            detail: e.to_string(),
            seconds: 0.0,
        });
        out = Some(match out {
            None => r,
            Some(mut acc) => {
                acc.passed &= r.passed;
                acc.checked += r.checked;
                acc.failures += r.failures;
                acc.seconds += r.seconds;
                acc.max_residual = match (acc.max_residual, r.max_residual) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    (a, b) => a.or(b),
                };
                if !r.passed && acc.detail != r.detail {
                    acc.detail = r.detail;
                }
                acc
            }
        });
    }
    out.expect("at least one seed")
}

/// Runs the selected blocks (all when `only` is empty), one worker thread per
/// block; results are returned in block order.
pub fn run(cfg: &VerifyConfig, only: &[String]) -> Vec<BlockResult> {
    let selected: Vec<(&str, BlockFn)> = blocks()
        .into_iter()
        .filter(|(id, _)| only.is_empty() || only.iter().any(|o| o == id || id.trim_end_matches(['a', 'b']) == o))
        .collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&(id, f)| {
                s.spawn(move || {
                    let seeds = if cfg.seeds.is_empty() {
                        vec![0]
                    } else {
                        cfg.seeds.clone()
                    };
                    let runs = seeds.iter().map(|&seed| f(cfg, seed)).collect();
                    merge(id, runs)
                })
            })
            .collect();
        handles
            .into_iter()
            .zip(&selected)
            .map(|(h, (id, _))| {
                h.join()
                    .unwrap_or_else(|_| merge(id, vec![Err(crate::Error::Parse("block panicked".into()))]))
            })
            .collect()
    })
}
