//! Curvature restrictions evaluated pointwise on sampled curvature packages:
//! flatness, symmetry and semisymmetry residuals, and least-squares fits of the
//! unknown 1-forms and scalars of recurrency-type and pseudosymmetry-type conditions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::btensor::{build_derivative, parse_named, BCoefficients};
use crate::engine::{curvature_package, CurvaturePackage};
use crate::error::{Error, Result};
use crate::metric::MetricField;
use crate::tensor::{
    curvature_dot, kulkarni_nomizu, metric_g_tensor, oneform_action, permute, q_operator, Tensor, Valence,
};

pub const TOL_DEPTH1: f64 = 1e-7;
pub const TOL_DEPTH2: f64 = 1e-6;

/// Columns with max-norm below `VANISH · scale` count as zero.
const VANISH: f64 = 1e-10;

/// A tensor field that can be evaluated (with covariant derivatives) from a package.
#[derive(Debug, Clone, PartialEq)]
pub enum TensorField {
    Metric,
    /// `G = g_il g_jk − g_ik g_jl`.
    G,
    Ricci,
    Scalar,
    B {
        label: String,
        coefficients: BCoefficients,
    },
}

impl TensorField {
    /// `g`, `G`, `S`, `r`, or any named B-tensor spec such as `W` or `C*:a0=1`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        Ok(match s.trim() {
            "g" => TensorField::Metric,
            "G" => TensorField::G,
            "S" | "Ric" => TensorField::Ricci,
            "r" => TensorField::Scalar,
            other => TensorField::B {
                label: other.to_string(),
                coefficients: parse_named(other, n)?,
            },
        })
    }

    pub fn from_coefficients(label: impl Into<String>, c: BCoefficients) -> Self {
        TensorField::B {
            label: label.into(),
            coefficients: c,
        }
    }

    pub fn label(&self) -> String {
        match self {
            TensorField::Metric => "g".into(),
            TensorField::G => "G".into(),
            TensorField::Ricci => "S".into(),
            TensorField::Scalar => "r".into(),
            TensorField::B { label, .. } => label.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            TensorField::Metric | TensorField::Ricci => 2,
            TensorField::Scalar => 0,
            TensorField::G | TensorField::B { .. } => 4,
        }
    }

    pub fn value(&self, pkg: &CurvaturePackage) -> Result<Tensor<f64>> {
        self.derivative(pkg, 0)
    }

    /// `∇^q` of the field, derivative slots last.
    pub fn derivative(&self, pkg: &CurvaturePackage, q: usize) -> Result<Tensor<f64>> {
        let n = pkg.dim();
        let zeros = || Tensor::zeros(n, Valence::covariant(self.rank() + q));
        match self {
            TensorField::Metric => match q {
                0 => Ok(pkg.g().clone()),
                1 => pkg
                    .nabla_g()
                    .cloned()
                    .ok_or(Error::InsufficientJetOrder { have: 2, need: 3 }),
                _ => Ok(zeros()),
            },
            TensorField::G => Ok(if q == 0 { metric_g_tensor(pkg.metric()) } else { zeros() }),
            TensorField::Ricci => pkg.ricci_derivative(q).cloned(),
            TensorField::Scalar => pkg.scalar_derivative(q).cloned(),
            TensorField::B { coefficients, .. } => build_derivative(coefficients, pkg, q),
        }
    }
}

impl fmt::Display for TensorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Curvature packages at each point.
pub fn sample_packages(field: &dyn MetricField, points: &[Vec<f64>], depth: usize) -> Result<Vec<CurvaturePackage>> {
    points.iter().map(|p| curvature_package(field, p, depth)).collect()
}

/// An unknown of a linear condition: scalar (`shape = []`), 1-form (`[n]`) or 2-form (`[n, n]`).
#[derive(Debug, Clone, PartialEq)]
pub struct Unknown {
    pub name: String,
    pub shape: Vec<usize>,
    /// The condition is degenerate when every basis column of a required unknown vanishes.
    pub required: bool,
}

impl Unknown {
    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone)]
pub struct BasisTerm {
    pub unknown: usize,
    pub component: usize,
    pub tensor: Tensor<f64>,
}

/// `fixed + Σ_c x_c · basis_c = 0`, with `x` collecting the components of all unknowns.
#[derive(Debug, Clone)]
pub struct LinearCondition {
    pub fixed: Tensor<f64>,
    pub unknowns: Vec<Unknown>,
    pub basis: Vec<BasisTerm>,
    /// Lower bound for the residual scale.
    pub reference: f64,
}

impl LinearCondition {
    pub fn new(fixed: Tensor<f64>) -> Self {
        LinearCondition {
            fixed,
            unknowns: Vec::new(),
            basis: Vec::new(),
            reference: 0.0,
        }
    }

    pub fn with_reference(mut self, reference: f64) -> Self {
        self.reference = reference;
        self
    }

    /// Adds an unknown with one basis tensor per component (in row-major order).
    pub fn with_unknown(mut self, name: &str, shape: Vec<usize>, required: bool, columns: Vec<Tensor<f64>>) -> Self {
        let u = Unknown {
            name: name.to_string(),
            shape,
            required,
        };
        debug_assert_eq!(u.len(), columns.len());
        let id = self.unknowns.len();
        self.unknowns.push(u);
        for (component, tensor) in columns.into_iter().enumerate() {
            self.basis.push(BasisTerm {
                unknown: id,
                component,
                tensor,
            });
        }
        self
    }

    fn validate(&self) -> Result<()> {
        if self.basis.is_empty() {
            return Err(Error::ShapeMismatch("linear condition has no basis terms".into()));
        }
        for b in &self.basis {
            if b.tensor.dim() != self.fixed.dim() || b.tensor.valence() != self.fixed.valence() {
                return Err(Error::ShapeMismatch(
                    "basis tensor shape differs from the fixed term".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Outcome of fitting one linear condition at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Fit {
    /// `‖fixed + Σ x_c basis_c‖_max` divided by the largest of `‖fixed‖`, the column norms and the reference.
    pub residual: f64,
    pub unknowns: BTreeMap<String, Vec<f64>>,
    pub rank: usize,
    pub columns: usize,
    pub degenerate: bool,
}

impl Fit {
    pub fn underdetermined(&self) -> bool {
        self.rank < self.columns
    }
}

fn relative(num: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        num / scale
    } else {
        num
    }
}

/// Minimum-norm least-squares solution via SVD.
pub fn fit_linear_condition(cond: &LinearCondition) -> Result<Fit> {
    cond.validate()?;
    let rows = cond.fixed.data().len();
    let cols = cond.basis.len();
    let a = DMatrix::from_fn(rows, cols, |r, c| cond.basis[c].tensor.data()[r]);
    let b = DVector::from_iterator(rows, cond.fixed.data().iter().map(|v| -v));
    let col_norms: Vec<f64> = cond.basis.iter().map(|t| t.tensor.max_norm()).collect();
    let fixed_norm = cond.fixed.max_norm();
    let scale = col_norms.iter().copied().fold(fixed_norm.max(cond.reference), f64::max);
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let eps = (smax * 1e-12).max(f64::MIN_POSITIVE);
    let rank = svd.singular_values.iter().filter(|&&s| s > eps).count();
    let x = if rank == 0 {
        DVector::zeros(cols)
    } else {
        svd.solve(&b, eps).map_err(|e| Error::ShapeMismatch(e.to_string()))?
    };
    let resid = &a * &x - &b;
    let resid_norm = resid.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let mut unknowns: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for u in &cond.unknowns {
        unknowns.insert(u.name.clone(), vec![0.0; u.len()]);
    }
    let vanish = (VANISH * scale).max(1e-12);
    let mut alive = vec![false; cond.unknowns.len()];
    for (c, term) in cond.basis.iter().enumerate() {
        unknowns.get_mut(&cond.unknowns[term.unknown].name).unwrap()[term.component] = x[c];
        if col_norms[c] > vanish {
            alive[term.unknown] = true;
        }
    }
    let degenerate = cond.unknowns.iter().zip(&alive).any(|(u, &a)| u.required && !a);
    Ok(Fit {
        residual: relative(resid_norm, scale),
        unknowns,
        rank,
        columns: cols,
        degenerate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Degenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Degenerate => "degenerate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub coords: Vec<f64>,
    pub residual: f64,
    #[serde(default)]
    pub unknowns: BTreeMap<String, Vec<f64>>,
    #[serde(default)]
    pub degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: String,
    pub metric: String,
    pub tensor: String,
    pub points: Vec<PointReport>,
    pub verdict: Verdict,
    pub tolerance: f64,
}

impl ConditionReport {
    /// Fails if any nondegenerate point exceeds `tol`; otherwise degenerate if any
    /// point is degenerate; otherwise holds.
    pub fn assemble(
        condition: impl Into<String>,
        tensor: impl Into<String>,
        points: Vec<PointReport>,
        tol: f64,
    ) -> Self {
        let fails = points.iter().any(|p| !p.degenerate && !(p.residual <= tol));
        let degenerate = points.iter().any(|p| p.degenerate);
        let verdict = if fails {
            Verdict::Fails
        } else if degenerate {
            Verdict::Degenerate
        } else {
            Verdict::Holds
        };
        ConditionReport {
            condition: condition.into(),
            metric: String::new(),
            tensor: tensor.into(),
            points,
            verdict,
            tolerance: tol,
        }
    }

    pub fn with_metric(mut self, name: impl Into<String>) -> Self {
        self.metric = name.into();
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|p| p.residual).fold(0.0, f64::max)
    }

    /// Fitted unknown `name` at every point.
    pub fn unknown(&self, name: &str) -> Vec<Vec<f64>> {
        self.points
            .iter()
            .filter_map(|p| p.unknowns.get(name).cloned())
            .collect()
    }
}

fn point_from_fit(pkg: &CurvaturePackage, fit: Fit) -> PointReport {
    PointReport {
        coords: pkg.point().to_vec(),
        residual: fit.residual,
        unknowns: fit.unknowns,
        degenerate: fit.degenerate,
        rank: Some(fit.rank),
    }
}

fn plain_point(pkg: &CurvaturePackage, residual: f64) -> PointReport {
    PointReport {
        coords: pkg.point().to_vec(),
        residual,
        unknowns: BTreeMap::new(),
        degenerate: false,
        rank: None,
    }
}

/// Scale for zero-tests of curvature-derived tensors.
fn curvature_scale(pkg: &CurvaturePackage) -> f64 {
    pkg.riemann()
        .max_norm()
        .max(pkg.ricci().max_norm())
        .max(pkg.scalar_curvature().abs())
}

/// `‖T‖_max / reference` (absolute when the reference vanishes).
pub fn flat_residual(t: &Tensor<f64>, reference: f64) -> f64 {
    relative(t.max_norm(), reference)
}

/// `T = 0`, relative to the largest of `‖R‖, ‖S‖, |r|` at each point.
pub fn check_flat(pkgs: &[CurvaturePackage], t: &TensorField, tol: f64) -> Result<ConditionReport> {
    let points = pkgs
        .iter()
        .map(|pkg| Ok(plain_point(pkg, flat_residual(&t.value(pkg)?, curvature_scale(pkg)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionReport::assemble("flat", t.label(), points, tol))
}

/// `∇T = 0`, relative to `max(‖T‖, ‖∇T‖)`.
pub fn check_symmetric(pkgs: &[CurvaturePackage], t: &TensorField, tol: f64) -> Result<ConditionReport> {
    let points = pkgs
        .iter()
        .map(|pkg| {
            let dt = t.derivative(pkg, 1)?;
            let scale = t.value(pkg)?.max_norm().max(dt.max_norm());
            Ok(plain_point(pkg, relative(dt.max_norm(), scale)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionReport::assemble("symmetric", t.label(), points, tol))
}

/// Columns `±e_c(x) ⊗ T`, i.e. `out[I, x] = sign · δ_{xc} T[I]`.
fn form_times(t: &Tensor<f64>, sign: f64) -> Vec<Tensor<f64>> {
    let n = t.dim();
    let k = t.rank();
    (0..n)
        .map(|c| {
            Tensor::from_fn(n, Valence::covariant(k + 1), |ix| {
                if ix[k] == c {
                    sign * t.get(&ix[..k])
                } else {
                    0.0
                }
            })
        })
        .collect()
}

fn oneform_basis(n: usize, c: usize) -> Tensor<f64> {
    Tensor::from_fn(n, Valence::covariant(1), |ix| if ix[0] == c { 1.0 } else { 0.0 })
}

/// Columns of `Π ↦ Π_X T` (the 1-form acting as a derivation).
fn oneform_action_columns(t: &Tensor<f64>) -> Result<Vec<Tensor<f64>>> {
    (0..t.dim())
        .map(|c| oneform_action(&oneform_basis(t.dim(), c), t))
        .collect()
}

/// `∇T − Π ⊗ T = 0` with unknown `Π`.
pub fn recurrence_condition(t: &Tensor<f64>, dt: &Tensor<f64>) -> LinearCondition {
    LinearCondition::new(dt.clone()).with_unknown("pi", vec![t.dim()], true, form_times(t, -1.0))
}

/// Closed-form pointwise recurrence fit `Π_x = ⟨∇_x T, T⟩ / ⟨T, T⟩`.
///
/// The pairing is the Frobenius inner product of components, which is
/// positive definite in every signature, so null tensors of indefinite metrics
/// still get a well-defined fit.
pub fn fit_recurrence_point(t: &Tensor<f64>, dt: &Tensor<f64>) -> Fit {
    let n = t.dim();
    let tt: f64 = t.data().iter().map(|v| v * v).sum();
    let scale = t.max_norm().max(dt.max_norm());
    let degenerate = t.max_norm() <= (VANISH * scale).max(1e-12);
    let mut pi = vec![0.0; n];
    if !degenerate {
        for (x, p) in pi.iter_mut().enumerate() {
            let num: f64 = t.data().iter().enumerate().map(|(f, v)| v * dt.data()[f * n + x]).sum();
            *p = num / tt;
        }
    }
    let mut worst = 0.0f64;
    for (f, v) in t.data().iter().enumerate() {
        for x in 0..n {
            worst = worst.max((dt.data()[f * n + x] - pi[x] * v).abs());
        }
    }
    Fit {
        residual: relative(worst, scale),
        unknowns: BTreeMap::from([("pi".to_string(), pi)]),
        rank: if degenerate { 0 } else { n },
        columns: n,
        degenerate,
    }
}

pub fn fit_recurrence(pkgs: &[CurvaturePackage], t: &TensorField, tol: f64) -> Result<ConditionReport> {
    let points = pkgs
        .iter()
        .map(|pkg| {
            Ok(point_from_fit(
                pkg,
                fit_recurrence_point(&t.value(pkg)?, &t.derivative(pkg, 1)?),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionReport::assemble("recurrent", t.label(), points, tol))
}

/// Source term of the generalized-recurrency family.
#[derive(Debug, Clone, PartialEq)]
pub enum RecurrenceVariant {
    /// `Φ ⊗ G`
    Generalized,
    /// `Φ ⊗ g∧S`
    Hyper,
    /// `Φ ⊗ S∧S`
    Weakly,
    /// `Φ ⊗ g∧(g + Ψ⊗Ψ)` with `Ψ` supplied.
    Quasi(Vec<f64>),
    /// `Φ ⊗ G + Ψ ⊗ g∧S + Θ ⊗ S∧S`
    Super,
}

impl RecurrenceVariant {
    pub fn name(&self) -> &'static str {
        match self {
            RecurrenceVariant::Generalized => "generalized-recurrent",
            RecurrenceVariant::Hyper => "hyper-recurrent",
            RecurrenceVariant::Weakly => "weakly-recurrent",
            RecurrenceVariant::Quasi(_) => "quasi-recurrent",
            RecurrenceVariant::Super => "super-recurrent",
        }
    }
}

/// `∇T − Π⊗T − (source terms) = 0` for a (0,4) tensor `T`.
pub fn generalized_recurrence_condition(
    pkg: &CurvaturePackage,
    t: &Tensor<f64>,
    dt: &Tensor<f64>,
    variant: &RecurrenceVariant,
) -> Result<LinearCondition> {
    if t.rank() != 4 {
        return Err(Error::ShapeMismatch(
            "generalized recurrency needs a (0,4) tensor".into(),
        ));
    }
    let n = pkg.dim();
    let g = pkg.g();
    let s = pkg.ricci();
    let big_g = metric_g_tensor(pkg.metric());
    let mut cond = recurrence_condition(t, dt);
    let sources: Vec<(&str, Tensor<f64>)> = match variant {
        RecurrenceVariant::Generalized => vec![("phi", big_g)],
        RecurrenceVariant::Hyper => vec![("phi", kulkarni_nomizu(g, s)?)],
        RecurrenceVariant::Weakly => vec![("phi", kulkarni_nomizu(s, s)?)],
        RecurrenceVariant::Quasi(psi) => {
            if psi.len() != n {
                return Err(Error::DimMismatch(n, psi.len()));
            }
            let h = Tensor::from_fn(n, Valence::covariant(2), |ix| g.get(ix) + psi[ix[0]] * psi[ix[1]]);
            vec![("phi", kulkarni_nomizu(g, &h)?)]
        }
        RecurrenceVariant::Super => vec![
            ("phi", big_g),
            ("psi", kulkarni_nomizu(g, s)?),
            ("theta", kulkarni_nomizu(s, s)?),
        ],
    };
    for (name, src) in sources {
        cond = cond.with_unknown(name, vec![n], true, form_times(&src, -1.0));
    }
    Ok(cond)
}

fn fit_each(
    pkgs: &[CurvaturePackage],
    name: &str,
    t: &TensorField,
    tol: f64,
    build: impl Fn(&CurvaturePackage) -> Result<LinearCondition>,
) -> Result<ConditionReport> {
    let points = pkgs
        .iter()
        .map(|pkg| Ok(point_from_fit(pkg, fit_linear_condition(&build(pkg)?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionReport::assemble(name, t.label(), points, tol))
}

pub fn check_generalized_recurrent_family(
    pkgs: &[CurvaturePackage],
    t: &TensorField,
    variant: &RecurrenceVariant,
    tol: f64,
) -> Result<ConditionReport> {
    fit_each(pkgs, variant.name(), t, tol, |pkg| {
        generalized_recurrence_condition(pkg, &t.value(pkg)?, &t.derivative(pkg, 1)?, variant)
    })
}

/// `∇_X T − 2Π(X) T + Π_X T = 0`.
pub fn chaki_condition(t: &Tensor<f64>, dt: &Tensor<f64>) -> Result<LinearCondition> {
    let prod = form_times(t, -2.0);
    let act = oneform_action_columns(t)?;
    let cols = prod
        .iter()
        .zip(&act)
        .map(|(a, b)| a.add(b))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearCondition::new(dt.clone()).with_unknown("pi", vec![t.dim()], true, cols))
}

pub fn check_chaki_pseudosymmetric(pkgs: &[CurvaturePackage], t: &TensorField, tol: f64) -> Result<ConditionReport> {
    fit_each(pkgs, "chaki", t, tol, |pkg| {
        chaki_condition(&t.value(pkg)?, &t.derivative(pkg, 1)?)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeakType {
    I,
    II,
    III,
}

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..m).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Weak symmetry conditions on `T ∈ T^0_k`, in the layout `out[X_1 … X_k, X]`.
///
/// * I: `∇_X T − Σ_σ Π_σ(A_{σ(1)}) T(A_{σ(2)}, …)` over permutations of `A = (X, X_1, …, X_k)`
/// * II: `∇_X T − Φ(X) T − Σ_i Π_i(X_i) T(…, X at i, …)`
/// * III: `∇_X T − Φ(X) T + Π_X T`
pub fn weak_symmetry_condition(t: &Tensor<f64>, dt: &Tensor<f64>, kind: WeakType) -> Result<LinearCondition> {
    let n = t.dim();
    let k = t.rank();
    let cond = LinearCondition::new(dt.clone());
    Ok(match kind {
        WeakType::I => {
            let mut cond = cond;
            for (s, sigma) in permutations(k + 1).into_iter().enumerate() {
                let cols = (0..n)
                    .map(|c| {
                        Tensor::from_fn(n, Valence::covariant(k + 1), |ix| {
                            // args = (X, X_1, …, X_k) = (ix[k], ix[0], …, ix[k-1])
                            let arg = |p: usize| if p == 0 { ix[k] } else { ix[p - 1] };
                            if arg(sigma[0]) != c {
                                return 0.0;
                            }
                            let idx: Vec<usize> = sigma[1..].iter().map(|&p| arg(p)).collect();
                            -t.get(&idx)
                        })
                    })
                    .collect();
                cond = cond.with_unknown(&format!("pi_{s}"), vec![n], true, cols);
            }
            cond
        }
        WeakType::II => {
            let mut cond = cond.with_unknown("phi", vec![n], true, form_times(t, -1.0));
            for slot in 0..k {
                let cols = (0..n)
                    .map(|c| {
                        Tensor::from_fn(n, Valence::covariant(k + 1), |ix| {
                            if ix[slot] != c {
                                return 0.0;
                            }
                            let mut idx = ix[..k].to_vec();
                            idx[slot] = ix[k];
                            -t.get(&idx)
                        })
                    })
                    .collect();
                cond = cond.with_unknown(&format!("pi_{}", slot + 1), vec![n], true, cols);
            }
            cond
        }
        WeakType::III => cond
            .with_unknown("phi", vec![n], true, form_times(t, -1.0))
            .with_unknown("pi", vec![n], true, oneform_action_columns(t)?),
    })
}

pub fn check_weak_symmetry(
    pkgs: &[CurvaturePackage],
    t: &TensorField,
    kind: WeakType,
    tol: f64,
) -> Result<ConditionReport> {
    let name = match kind {
        WeakType::I => "weak-1",
        WeakType::II => "weak-2",
        WeakType::III => "weak-3",
    };
    fit_each(pkgs, name, t, tol, |pkg| {
        weak_symmetry_condition(&t.value(pkg)?, &t.derivative(pkg, 1)?, kind)
    })
}

/// `‖D·T‖ / (‖D‖ ‖T‖)`.
pub fn semisymmetry_residual(d: &Tensor<f64>, t: &Tensor<f64>, pkg: &CurvaturePackage) -> Result<f64> {
    let dt = curvature_dot(d, t, pkg.metric())?;
    Ok(relative(dt.max_norm(), d.max_norm() * t.max_norm()))
}

/// `D·T = 0`.
pub fn check_semisymmetric_type(
    pkgs: &[CurvaturePackage],
    d: &TensorField,
    t: &TensorField,
    tol: f64,
) -> Result<ConditionReport> {
    let points = pkgs
        .iter()
        .map(|pkg| {
            Ok(plain_point(
                pkg,
                semisymmetry_residual(&d.value(pkg)?, &t.value(pkg)?, pkg)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionReport::assemble(
        format!("semisym[{d}]"),
        t.label(),
        points,
        tol,
    ))
}

/// `(D_0 + Σ_{i≥1} c_i D_i)·T = 0` with unknown scalars `c_i`.
pub fn check_pseudosymmetric_type(
    pkgs: &[CurvaturePackage],
    ds: &[TensorField],
    t: &TensorField,
    tol: f64,
) -> Result<ConditionReport> {
    if ds.len() < 2 {
        return Err(Error::EmptyCombination);
    }
    let label = ds.iter().map(|d| d.label()).collect::<Vec<_>>().join(",");
    fit_each(pkgs, &format!("pseudosym[{label}]"), t, tol, |pkg| {
        let tv = t.value(pkg)?;
        let m = pkg.metric();
        let mut cond = LinearCondition::new(curvature_dot(&ds[0].value(pkg)?, &tv, m)?);
        for (i, d) in ds.iter().enumerate().skip(1) {
            cond = cond.with_unknown(
                &format!("c{i}"),
                vec![],
                false,
                vec![curvature_dot(&d.value(pkg)?, &tv, m)?],
            );
        }
        Ok(cond)
    })
}

/// `D·T − L·Q(A,T) = 0` with unknown scalar `L`; `A = g` is Deszcz pseudosymmetry,
/// `A = S` Ricci-generalized pseudosymmetry.
pub fn deszcz_condition(
    d: &Tensor<f64>,
    t: &Tensor<f64>,
    a: &Tensor<f64>,
    pkg: &CurvaturePackage,
) -> Result<LinearCondition> {
    let q = q_operator(a, t)?;
    Ok(LinearCondition::new(curvature_dot(d, t, pkg.metric())?).with_unknown("L", vec![], true, vec![q.scale(&-1.0)]))
}

pub fn fit_deszcz_l(
    pkgs: &[CurvaturePackage],
    d: &TensorField,
    t: &TensorField,
    a: &TensorField,
    tol: f64,
) -> Result<ConditionReport> {
    fit_each(pkgs, format!("deszcz[{d},{a}]").as_str(), t, tol, |pkg| {
        deszcz_condition(&d.value(pkg)?, &t.value(pkg)?, &a.value(pkg)?, pkg)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order2Kind {
    Symmetric,
    Recurrent,
}

/// Swaps the last two slots of a tensor.
fn swap_last_two(t: &Tensor<f64>) -> Result<Tensor<f64>> {
    let r = t.rank();
    let mut sigma: Vec<usize> = (0..r).collect();
    sigma.swap(r - 2, r - 1);
    permute(t, &sigma)
}

/// `∇²_{X_1 X_2} T` in the layout `out[I, X_1, X_2]`.
///
/// The derivative tower stores `∇(∇T)[I, a, b] = (∇_b ∇T)(…, e_a)`, i.e. `∇²_{e_b e_a} T`.
pub fn second_derivative(t2: &Tensor<f64>) -> Result<Tensor<f64>> {
    swap_last_two(t2)
}

/// `(∇²_{XY} − ∇²_{YX}) T − R(X,Y)·T` in the layout `out[I, X, Y]`, max-norm relative to
/// the largest of `‖R·T‖`, `‖∇²T‖` and `‖R‖ ‖T‖`.
pub fn ricci_identity_residual(pkg: &CurvaturePackage, t: &TensorField) -> Result<f64> {
    let h = second_derivative(&t.derivative(pkg, 2)?)?;
    let comm = h.sub(&swap_last_two(&h)?)?;
    let rt = curvature_dot(pkg.riemann(), &t.value(pkg)?, pkg.metric())?;
    let tv = t.value(pkg)?;
    let scale = rt
        .max_norm()
        .max(h.max_norm())
        .max(pkg.riemann().max_norm() * tv.max_norm());
    Ok(relative(comm.sub(&rt)?.max_norm(), scale))
}

/// Order-2 symmetric-type and recurrent-type conditions, normalized by
/// `α_id = 1` and `Π⁰_id = 1` respectively:
///
/// * symmetric: `∇²_{X_1X_2}T + α ∇²_{X_2X_1}T`
/// * recurrent: `Σ_σ [Π⁰_σ ∇²_{σ} T + Π¹_σ(X_{σ1}) ∇_{X_{σ2}} T + Π²_σ(X_{σ1}, X_{σ2}) T]`
pub fn order2_condition(
    t: &Tensor<f64>,
    dt: &Tensor<f64>,
    t2: &Tensor<f64>,
    kind: Order2Kind,
) -> Result<LinearCondition> {
    let n = t.dim();
    let k = t.rank();
    let h = second_derivative(t2)?;
    let hs = swap_last_two(&h)?;
    let cond = LinearCondition::new(h)
        .with_unknown("alpha_swap", vec![], false, vec![hs])
        .with_reference(t.max_norm().max(dt.max_norm()));
    Ok(match kind {
        Order2Kind::Symmetric => cond,
        Order2Kind::Recurrent => {
            // Π¹_id(X_1) ∇_{X_2} T and Π¹_swap(X_2) ∇_{X_1} T
            let one = |first: bool| -> Vec<Tensor<f64>> {
                (0..n)
                    .map(|c| {
                        Tensor::from_fn(n, Valence::covariant(k + 2), |ix| {
                            let (a, b) = if first { (ix[k], ix[k + 1]) } else { (ix[k + 1], ix[k]) };
                            if a != c {
                                return 0.0;
                            }
                            let mut idx = ix[..k].to_vec();
                            idx.push(b);
                            *dt.get(&idx)
                        })
                    })
                    .collect()
            };
            // Π²(X_1, X_2) T; the swapped family spans the same tensors
            let two: Vec<Tensor<f64>> = (0..n * n)
                .map(|c| {
                    Tensor::from_fn(n, Valence::covariant(k + 2), |ix| {
                        if ix[k] * n + ix[k + 1] == c {
                            *t.get(&ix[..k])
                        } else {
                            0.0
                        }
                    })
                })
                .collect();
            cond.with_unknown("pi1_id", vec![n], false, one(true))
                .with_unknown("pi1_swap", vec![n], false, one(false))
                .with_unknown("pi2", vec![n, n], true, two)
        }
    })
}

pub fn check_order2_family(
    pkgs: &[CurvaturePackage],
    t: &TensorField,
    kind: Order2Kind,
    tol: f64,
) -> Result<ConditionReport> {
    let name = match kind {
        Order2Kind::Symmetric => "symmetric-2",
        Order2Kind::Recurrent => "recurrent-2",
    };
    fit_each(pkgs, name, t, tol, |pkg| {
        order2_condition(&t.value(pkg)?, &t.derivative(pkg, 1)?, &t.derivative(pkg, 2)?, kind)
    })
}

/// The conditions selectable by name.
#[derive(Debug, Clone, PartialEq)]
pub enum Condition {
    Flat,
    Symmetric,
    Recurrent,
    Family(RecurrenceVariant),
    Chaki,
    Weak(WeakType),
    Semisymmetric,
    Deszcz,
    Order2(Order2Kind),
}

impl Condition {
    pub const NAMES: [&'static str; 16] = [
        "flat",
        "symmetric",
        "recurrent",
        "generalized-recurrent",
        "hyper-recurrent",
        "weakly-recurrent",
        "quasi-recurrent",
        "super-recurrent",
        "chaki",
        "weak-1",
        "weak-2",
        "weak-3",
        "semisym",
        "deszcz",
        "symmetric-2",
        "recurrent-2",
    ];

    /// Covariant-derivative depth the condition needs.
    pub fn depth(&self) -> usize {
        match self {
            Condition::Flat | Condition::Semisymmetric | Condition::Deszcz => 0,
            Condition::Order2(_) => 2,
            _ => 1,
        }
    }

    pub fn default_tolerance(&self) -> f64 {
        if self.depth() >= 2 {
            TOL_DEPTH2
        } else {
            TOL_DEPTH1
        }
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "flat" => Condition::Flat,
            "symmetric" => Condition::Symmetric,
            "recurrent" => Condition::Recurrent,
            "generalized-recurrent" => Condition::Family(RecurrenceVariant::Generalized),
            "hyper-recurrent" => Condition::Family(RecurrenceVariant::Hyper),
            "weakly-recurrent" => Condition::Family(RecurrenceVariant::Weakly),
            "quasi-recurrent" => Condition::Family(RecurrenceVariant::Quasi(Vec::new())),
            "super-recurrent" => Condition::Family(RecurrenceVariant::Super),
            "chaki" => Condition::Chaki,
            "weak-1" => Condition::Weak(WeakType::I),
            "weak-2" => Condition::Weak(WeakType::II),
            "weak-3" => Condition::Weak(WeakType::III),
            "semisym" | "semisymmetric" => Condition::Semisymmetric,
            "deszcz" | "pseudosym" => Condition::Deszcz,
            "symmetric-2" => Condition::Order2(Order2Kind::Symmetric),
            "recurrent-2" => Condition::Order2(Order2Kind::Recurrent),
            other => return Err(Error::UnknownCondition(other.to_string())),
        })
    }
}

/// Extra operands some conditions need.
#[derive(Debug, Clone, Default)]
pub struct ConditionArgs {
    /// Curvature operator `D` for semisymmetry/pseudosymmetry (default `R`).
    pub d: Option<TensorField>,
    /// Symmetric form `A` of `Q(A, T)` (default `g`).
    pub a: Option<TensorField>,
    /// Given `Ψ` for quasi-generalized recurrency.
    pub psi: Option<Vec<f64>>,
}

pub fn run_condition(
    cond: &Condition,
    pkgs: &[CurvaturePackage],
    t: &TensorField,
    args: &ConditionArgs,
    tol: f64,
) -> Result<ConditionReport> {
    let n = pkgs.first().map(|p| p.dim()).unwrap_or(0);
    let riemann = || TensorField::parse("R", n);
    match cond {
        Condition::Flat => check_flat(pkgs, t, tol),
        Condition::Symmetric => check_symmetric(pkgs, t, tol),
        Condition::Recurrent => fit_recurrence(pkgs, t, tol),
        Condition::Family(RecurrenceVariant::Quasi(_)) => {
            let psi = args
                .psi
                .clone()
                .ok_or_else(|| Error::Parse("quasi-recurrent needs a given 1-form psi".into()))?;
            check_generalized_recurrent_family(pkgs, t, &RecurrenceVariant::Quasi(psi), tol)
        }
        Condition::Family(v) => check_generalized_recurrent_family(pkgs, t, v, tol),
        Condition::Chaki => check_chaki_pseudosymmetric(pkgs, t, tol),
        Condition::Weak(kind) => check_weak_symmetry(pkgs, t, *kind, tol),
        Condition::Semisymmetric => {
            let d = match &args.d {
                Some(d) => d.clone(),
                None => riemann()?,
            };
            check_semisymmetric_type(pkgs, &d, t, tol)
        }
        Condition::Deszcz => {
            let d = match &args.d {
                Some(d) => d.clone(),
                None => riemann()?,
            };
            let a = args.a.clone().unwrap_or(TensorField::Metric);
            fit_deszcz_l(pkgs, &d, t, &a, tol)
        }
        Condition::Order2(kind) => check_order2_family(pkgs, t, *kind, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn pkgs(spec: &str, count: usize, depth: usize) -> Vec<CurvaturePackage> {
        let m = catalog::get(spec).unwrap();
        sample_packages(m.field.as_ref(), &m.sample_points(count, 3), depth).unwrap()
    }

    fn field(s: &str, n: usize) -> TensorField {
        TensorField::parse(s, n).unwrap()
    }

    #[test]
    fn permutations_are_complete() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
        assert_eq!(permutations(5).len(), 120);
    }

    #[test]
    fn flatness_on_fixtures() {
        let s3 = pkgs("sphere:3:1", 3, 0);
        assert!(check_flat(&s3, &field("W", 3), TOL_DEPTH1).unwrap().holds());
        assert!(!check_flat(&s3, &field("R", 3), TOL_DEPTH1).unwrap().holds());
        let sch = pkgs("schwarzschild:1", 3, 0);
        assert_eq!(
            check_flat(&sch, &field("R", 4), TOL_DEPTH1).unwrap().verdict,
            Verdict::Fails
        );
        let flat = pkgs("flat-euclidean:4", 2, 0);
        assert!(check_flat(&flat, &field("C*:a0=1,a2=1/3", 4), TOL_DEPTH1)
            .unwrap()
            .holds());
    }

    #[test]
    fn symmetry_on_fixtures() {
        let s3 = pkgs("sphere:3:1", 3, 1);
        assert!(check_symmetric(&s3, &field("R", 3), TOL_DEPTH1).unwrap().holds());
        let pp = pkgs("pp-wave:exp", 3, 1);
        assert_eq!(
            check_symmetric(&pp, &field("R", 4), TOL_DEPTH1).unwrap().verdict,
            Verdict::Fails
        );
        let rp = pkgs("random-polynomial:3:42", 3, 1);
        assert!(check_symmetric(&rp, &TensorField::Metric, TOL_DEPTH1).unwrap().holds());
    }

    #[test]
    fn pp_wave_recurrence_form() {
        let pp = pkgs("pp-wave:exp", 4, 1);
        let rep = fit_recurrence(&pp, &field("R", 4), TOL_DEPTH1).unwrap();
        assert!(rep.holds(), "{}", rep.max_residual());
        for pi in rep.unknown("pi") {
            for (x, want) in pi.iter().zip([1.0, 0.0, 0.0, 0.0]) {
                assert!((x - want).abs() < 1e-8, "{pi:?}");
            }
        }
    }

    #[test]
    fn recurrence_paths_agree() {
        for pkg in pkgs("random-polynomial:3:5", 2, 1) {
            let t = pkg.riemann();
            let dt = pkg.nabla_riemann().unwrap();
            let closed = fit_recurrence_point(t, dt);
            let general = fit_linear_condition(&recurrence_condition(t, dt)).unwrap();
            assert!((closed.residual - general.residual).abs() < 1e-12);
            for (a, b) in closed.unknowns["pi"].iter().zip(&general.unknowns["pi"]) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn linear_condition_geometry() {
        let n = 3;
        let e = |c: usize| oneform_basis(n, c);
        // fixed = 0: all unknowns 0
        let zero =
            LinearCondition::new(Tensor::zeros(n, Valence::covariant(1))).with_unknown("x", vec![], true, vec![e(0)]);
        let fit = fit_linear_condition(&zero).unwrap();
        assert_eq!(fit.unknowns["x"], vec![0.0]);
        assert_eq!(fit.residual, 0.0);
        // fixed orthogonal to the span: residual is ‖fixed‖ relative to the scale
        let fixed = e(2).scale(&3.0);
        let orth = LinearCondition::new(fixed).with_unknown("x", vec![2], true, vec![e(0), e(1)]);
        let fit = fit_linear_condition(&orth).unwrap();
        assert!((fit.residual - 1.0).abs() < 1e-15);
        assert_eq!(fit.unknowns["x"], vec![0.0, 0.0]);
        // duplicated columns get the minimum-norm split
        let fixed = e(0).scale(&-2.0);
        let dup = LinearCondition::new(fixed).with_unknown("x", vec![2], true, vec![e(0), e(0)]);
        let fit = fit_linear_condition(&dup).unwrap();
        assert!(fit.underdetermined());
        assert!((fit.unknowns["x"][0] - 1.0).abs() < 1e-12 && (fit.unknowns["x"][1] - 1.0).abs() < 1e-12);
        let again = fit_linear_condition(&dup).unwrap();
        assert_eq!(fit, again);
    }

    #[test]
    fn generalized_family() {
        let s3 = pkgs("sphere:3:1", 2, 1);
        let rep = check_generalized_recurrent_family(&s3, &field("R", 3), &RecurrenceVariant::Generalized, TOL_DEPTH1)
            .unwrap();
        assert!(rep.holds());
        for phi in rep.unknown("phi") {
            assert!(phi.iter().all(|v| v.abs() < 1e-9));
        }
        let sch = pkgs("schwarzschild:1", 2, 1);
        let rep =
            check_generalized_recurrent_family(&sch, &field("R", 4), &RecurrenceVariant::Hyper, TOL_DEPTH1).unwrap();
        assert_eq!(rep.verdict, Verdict::Degenerate);
        let pp = pkgs("pp-wave:exp", 2, 1);
        let rep = check_generalized_recurrent_family(&pp, &field("R", 4), &RecurrenceVariant::Generalized, TOL_DEPTH1)
            .unwrap();
        assert!(rep.holds());
        let rep = check_generalized_recurrent_family(
            &pp,
            &field("R", 4),
            &RecurrenceVariant::Quasi(vec![0.0, 0.0, 1.0, 0.0]),
            TOL_DEPTH1,
        )
        .unwrap();
        assert!(rep.holds());
    }

    #[test]
    fn chaki_fixtures() {
        let s3 = pkgs("sphere:3:1", 2, 1);
        let rep = check_chaki_pseudosymmetric(&s3, &field("R", 3), TOL_DEPTH1).unwrap();
        assert!(rep.holds());
        let rp = pkgs("random-polynomial:4:11", 2, 1);
        assert_eq!(
            check_chaki_pseudosymmetric(&rp, &field("R", 4), TOL_DEPTH1)
                .unwrap()
                .verdict,
            Verdict::Fails
        );
        let flat = pkgs("flat-euclidean:3", 2, 1);
        assert_eq!(
            check_chaki_pseudosymmetric(&flat, &field("R", 3), TOL_DEPTH1)
                .unwrap()
                .verdict,
            Verdict::Degenerate
        );
    }

    #[test]
    fn weak_symmetry_types() {
        let pp = pkgs("pp-wave:exp", 2, 1);
        let rep = check_weak_symmetry(&pp, &field("R", 4), WeakType::III, TOL_DEPTH1).unwrap();
        assert!(rep.holds());
        let s3 = pkgs("sphere:3:1", 1, 1);
        for kind in [WeakType::II, WeakType::III] {
            assert!(check_weak_symmetry(&s3, &field("R", 3), kind, TOL_DEPTH1)
                .unwrap()
                .holds());
        }
        let rp = pkgs("random-polynomial:4:11", 1, 1);
        assert_eq!(
            check_weak_symmetry(&rp, &field("R", 4), WeakType::II, TOL_DEPTH1)
                .unwrap()
                .verdict,
            Verdict::Fails
        );
    }

    #[test]
    fn weak_type_one_contains_recurrence() {
        // a recurrent tensor satisfies type I with the identity permutation carrying Π
        let pp = pkgs("pp-wave:exp", 1, 1);
        let t = pp[0].ricci();
        let dt = pp[0].nabla_ricci().unwrap();
        let fit = fit_linear_condition(&weak_symmetry_condition(t, dt, WeakType::I).unwrap()).unwrap();
        assert!(fit.residual < 1e-9 || fit.degenerate);
        let rp = pkgs("random-polynomial:4:2", 1, 1);
        let fit = fit_linear_condition(
            &weak_symmetry_condition(rp[0].ricci(), rp[0].nabla_ricci().unwrap(), WeakType::I).unwrap(),
        )
        .unwrap();
        assert!(fit.residual > TOL_DEPTH1);
    }

    #[test]
    fn semisymmetry_and_table_pairs() {
        let s3 = pkgs("sphere:3:1", 2, 0);
        assert!(
            check_semisymmetric_type(&s3, &field("R", 3), &field("R", 3), TOL_DEPTH1)
                .unwrap()
                .holds()
        );
        for pkg in pkgs("random-polynomial:4:8", 2, 0) {
            let m = pkg.metric();
            let r = pkg.riemann();
            let dot = |d: &str, t: &str| {
                curvature_dot(&field(d, 4).value(&pkg).unwrap(), &field(t, 4).value(&pkg).unwrap(), m).unwrap()
            };
            let scale = r.max_norm().powi(2);
            assert!(dot("R", "C").sub(&dot("R", "K")).unwrap().max_norm() <= 1e-10 * scale);
            assert!(dot("R", "W").sub(&dot("R", "R")).unwrap().max_norm() <= 1e-10 * scale);
            assert!(dot("R", "G").max_norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn deszcz_fits() {
        let s3 = pkgs("sphere:3:1", 1, 0);
        let rep = fit_deszcz_l(&s3, &field("R", 3), &field("R", 3), &TensorField::Metric, TOL_DEPTH1).unwrap();
        assert_eq!(rep.verdict, Verdict::Degenerate);
        let pp = pkgs("pp-wave:exp", 2, 0);
        let rep = fit_deszcz_l(&pp, &field("R", 4), &field("R", 4), &TensorField::Metric, TOL_DEPTH1).unwrap();
        assert!(rep.holds(), "{rep:?}");
        // warped product dr² + e^r dΩ² with nonconstant curvature
        let m = crate::metric::FnMetric::new(
            "warped",
            3,
            |i, j, x| {
                let one = crate::jet::Jet::constant(x[0].space(), x[0].order(), 1.0);
                match (i, j) {
                    (0, 0) => one,
                    (1, 1) => x[0].exp(),
                    (2, 2) => &x[0].exp() * &x[1].sin().powi(2),
                    _ => one.scale(0.0),
                }
            },
            |p| p[1].sin().abs() > 1e-3,
        );
        let pk = sample_packages(&m, &[vec![0.3, 1.0, 0.5]], 0).unwrap();
        let rep = fit_deszcz_l(&pk, &field("R", 3), &field("R", 3), &TensorField::Metric, TOL_DEPTH1).unwrap();
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn ricci_identity_sign() {
        for pkg in pkgs("random-polynomial:3:4", 2, 2) {
            for t in ["R", "S", "g"] {
                let res = ricci_identity_residual(&pkg, &field(t, 3)).unwrap();
                assert!(res < 1e-8, "{t}: {res}");
            }
        }
    }

    #[test]
    fn order2_family() {
        let s3 = pkgs("sphere:3:1", 1, 2);
        assert!(
            check_order2_family(&s3, &field("R", 3), Order2Kind::Symmetric, TOL_DEPTH2)
                .unwrap()
                .holds()
        );
        let pp = pkgs("pp-wave:exp", 2, 2);
        let rep = check_order2_family(&pp, &field("R", 4), Order2Kind::Recurrent, TOL_DEPTH2).unwrap();
        assert!(rep.holds(), "{}", rep.max_residual());
        // α = −1 is the semisymmetry operator, which vanishes for R on the pp-wave
        let rep = check_order2_family(&pp, &field("R", 4), Order2Kind::Symmetric, TOL_DEPTH2).unwrap();
        assert!(rep.holds());
        for a in rep.unknown("alpha_swap") {
            assert!((a[0] + 1.0).abs() < 1e-6, "{a:?}");
        }
        let rp = pkgs("random-polynomial:3:9", 1, 2);
        assert_eq!(
            check_order2_family(&rp, &field("R", 3), Order2Kind::Symmetric, TOL_DEPTH2)
                .unwrap()
                .verdict,
            Verdict::Fails
        );
    }

    #[test]
    fn condition_names_parse() {
        for name in Condition::NAMES {
            let c: Condition = name.parse().unwrap();
            assert!(c.depth() <= 2);
        }
        assert!(matches!("nope".parse::<Condition>(), Err(Error::UnknownCondition(_))));
    }

    #[test]
    fn report_json_round_trip() {
        let s3 = pkgs("sphere:3:1", 2, 1);
        let rep = fit_recurrence(&s3, &field("R", 3), TOL_DEPTH1)
            .unwrap()
            .with_metric("sphere:3:1");
        let s = serde_json::to_string(&rep).unwrap();
        let back: ConditionReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
