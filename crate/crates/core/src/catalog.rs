//! Built-in metrics with known curvature, used as fixtures.
//!
//! Specs are `name:arg:arg…`:
//!
//! | spec | coordinates |
//! |---|---|
//! | `flat-euclidean:n` | Cartesian |
//! | `minkowski:n` | `(t, x…)`, signature `(−,+,…,+)` |
//! | `sphere:n:radius` | hyperspherical angles `(θ_1, …, θ_{n−1}, φ)` |
//! | `hyperbolic:n:radius` | upper half-space, `x_n > 0` |
//! | `schwarzschild:m` | `(t, r, θ, φ)`, `r > 2m` |
//! | `flrw:c0:c1:…` | `(t, x, y, z)`, scale factor `a(t) = Σ c_k t^k` |
//! | `pp-wave:exp[:k]` or `pp-wave:const[:c]` | `(u, v, x, y)`, `2 du dv + f(u)(x²−y²) du² + dx² + dy²` |
//! | `random-polynomial:n:seed[:degree[:amplitude]]` | cube `[−0.5, 0.5]^n` |

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::metric::{FnMetric, MetricField, Polynomial, PolynomialMetric};

/// Properties the fixture is known to have.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExpectedProperties {
    pub flat: bool,
    pub ricci_flat: bool,
    pub constant_curvature: bool,
    pub conformally_flat: bool,
    pub locally_symmetric: bool,
    /// Recurrence form `Π` with `∇R = Π ⊗ R`, when constant in these coordinates.
    pub recurrent_form: Option<Vec<f64>>,
    /// Scalar curvature when it is constant.
    pub scalar_curvature: Option<f64>,
}

/// Axis-aligned box from which sample points are drawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

#[derive(Clone)]
pub struct CatalogMetric {
    pub name: String,
    pub spec: String,
    pub field: Arc<dyn MetricField>,
    pub sample_box: SampleBox,
    pub expected: ExpectedProperties,
}

impl fmt::Debug for CatalogMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogMetric")
            .field("spec", &self.spec)
            .field("dim", &self.field.dim())
            .field("expected", &self.expected)
            .finish()
    }
}

const PRIMES: [u32; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn radical_inverse(base: u32, mut i: u64) -> f64 {
    let b = base as f64;
    let mut f = 1.0 / b;
    let mut out = 0.0;
    while i > 0 {
        out += f * (i % base as u64) as f64;
        i /= base as u64;
        f /= b;
    }
    out
}

/// `count` Halton points in the unit cube `[0,1)^dim`, starting at index `1 + offset`.
pub fn halton(dim: usize, count: usize, offset: u64) -> Vec<Vec<f64>> {
    (0..count as u64)
        .map(|k| {
            (0..dim)
                .map(|d| radical_inverse(PRIMES[d % PRIMES.len()], offset + k + 1))
                .collect()
        })
        .collect()
}

impl CatalogMetric {
    pub fn dim(&self) -> usize {
        self.field.dim()
    }

    /// Deterministic quasi-random admissible points; `seed` shifts the sequence.
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut out = Vec::with_capacity(count);
        let mut offset = seed.wrapping_mul(1009);
        while out.len() < count {
            for u in halton(n, count, offset) {
                let p: Vec<f64> = (0..n)
                    .map(|d| self.sample_box.lo[d] + u[d] * (self.sample_box.hi[d] - self.sample_box.lo[d]))
                    .collect();
                if self.field.is_admissible(&p) && out.len() < count {
                    out.push(p);
                }
            }
            offset += count as u64;
        }
        out
    }
}

pub fn list() -> Vec<&'static str> {
    vec![
        "flat-euclidean:n",
        "minkowski:n",
        "sphere:n:radius",
        "hyperbolic:n:radius",
        "schwarzschild:mass",
        "flrw:c0:c1:...",
        "pp-wave:exp[:k] | pp-wave:const[:c]",
        "random-polynomial:n:seed[:degree[:amplitude]]",
    ]
}

/// The fixtures used by default in verification runs.
pub fn default_specs(dims: &[usize]) -> Vec<String> {
    let mut v = Vec::new();
    for &n in dims {
        v.push(format!("flat-euclidean:{n}"));
        v.push(format!("minkowski:{n}"));
        v.push(format!("sphere:{n}:1"));
        v.push(format!("hyperbolic:{n}:1"));
        v.push(format!("random-polynomial:{n}:7"));
    }
    if dims.contains(&4) {
        v.push("schwarzschild:1".into());
        v.push("flrw:1:0.5:0.25".into());
        v.push("pp-wave:exp".into());
    }
    v
}

fn arg<T: std::str::FromStr>(args: &[&str], i: usize, what: &str, default: Option<T>) -> Result<T> {
    match args.get(i) {
        Some(s) if !s.is_empty() => s.trim().parse().map_err(|_| Error::Parse(format!("bad {what}: `{s}`"))),
        _ => default.ok_or_else(|| Error::Parse(format!("missing {what}"))),
    }
}

fn dim_arg(args: &[&str], i: usize, min: usize) -> Result<usize> {
    let n: usize = arg(args, i, "dimension", None)?;
    if n < min {
        return Err(Error::DimensionTooSmall { min, got: n });
    }
    Ok(n)
}

fn konst(x: &[Jet], c: f64) -> Jet {
    Jet::constant(x[0].space(), x[0].order(), c)
}

/// Looks up a fixture by spec string.
pub fn get(spec: &str) -> Result<CatalogMetric> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let name = parts[0];
    let args = &parts[1..];
    let m = match name {
        "flat-euclidean" => flat(dim_arg(args, 0, 1)?, false),
        "minkowski" => flat(dim_arg(args, 0, 2)?, true),
        "sphere" => sphere(dim_arg(args, 0, 2)?, arg(args, 1, "radius", Some(1.0))?)?,
        "hyperbolic" => hyperbolic(dim_arg(args, 0, 2)?, arg(args, 1, "radius", Some(1.0))?)?,
        "schwarzschild" => schwarzschild(arg(args, 0, "mass", Some(1.0))?)?,
        "flrw" => {
            let coeffs = if args.is_empty() {
                vec![1.0, 0.5, 0.25]
            } else {
                args.iter()
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            flrw(coeffs)?
        }
        "pp-wave" => pp_wave(args)?,
        "random-polynomial" => {
            let n = dim_arg(args, 0, 2)?;
            let seed: u64 = arg(args, 1, "seed", Some(0))?;
            let degree: u32 = arg(args, 2, "degree", Some(4))?;
            let amplitude: f64 = arg(args, 3, "amplitude", Some(0.1))?;
            random_polynomial(n, seed, degree, amplitude)?
        }
        _ => return Err(Error::UnknownMetric(spec.to_string())),
    };
    Ok(CatalogMetric {
        spec: spec.trim().to_string(),
        ..m
    })
}

fn entry(
    name: &str,
    field: Arc<dyn MetricField>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    expected: ExpectedProperties,
) -> CatalogMetric {
    CatalogMetric {
        name: name.to_string(),
        spec: name.to_string(),
        field,
        sample_box: SampleBox { lo, hi },
        expected,
    }
}

fn flat(n: usize, lorentzian: bool) -> CatalogMetric {
    let name = if lorentzian { "minkowski" } else { "flat-euclidean" };
    let field = FnMetric::new(
        format!("{name}:{n}"),
        n,
        move |i, j, x| {
            let v = if i != j {
                0.0
            } else if lorentzian && i == 0 {
                -1.0
            } else {
                1.0
            };
            konst(x, v)
        },
        |_| true,
    );
    entry(
        name,
        Arc::new(field),
        vec![-1.0; n],
        vec![1.0; n],
        ExpectedProperties {
            flat: true,
            ricci_flat: true,
            constant_curvature: true,
            conformally_flat: true,
            locally_symmetric: true,
            recurrent_form: None,
            scalar_curvature: Some(0.0),
        },
    )
}

fn sphere(n: usize, radius: f64) -> Result<CatalogMetric> {
    if radius <= 0.0 {
        return Err(Error::Parse("sphere radius must be positive".into()));
    }
    let r2 = radius * radius;
    let field = FnMetric::new(
        format!("sphere:{n}:{radius}"),
        n,
        move |i, j, x| {
            if i != j {
                return konst(x, 0.0);
            }
            let mut g = konst(x, r2);
            for angle in x.iter().take(i) {
                g = &g * &angle.sin().powi(2);
            }
            g
        },
        move |p| p.iter().take(n - 1).all(|t| t.sin().abs() > 1e-3),
    );
    let mut lo = vec![0.3; n];
    let mut hi = vec![PI - 0.3; n];
    lo[n - 1] = 0.0;
    hi[n - 1] = 2.0 * PI;
    Ok(entry(
        "sphere",
        Arc::new(field),
        lo,
        hi,
        ExpectedProperties {
            constant_curvature: true,
            conformally_flat: true,
            locally_symmetric: true,
            scalar_curvature: Some((n * (n - 1)) as f64 / r2),
            ..Default::default()
        },
    ))
}

fn hyperbolic(n: usize, radius: f64) -> Result<CatalogMetric> {
    if radius <= 0.0 {
        return Err(Error::Parse("hyperbolic radius must be positive".into()));
    }
    let r2 = radius * radius;
    let field = FnMetric::new(
        format!("hyperbolic:{n}:{radius}"),
        n,
        move |i, j, x| {
            if i != j {
                konst(x, 0.0)
            } else {
                x[n - 1].powi(2).recip().scale(r2)
            }
        },
        move |p| p[n - 1] > 1e-3,
    );
    let mut lo = vec![-1.0; n];
    let mut hi = vec![1.0; n];
    lo[n - 1] = 0.5;
    hi[n - 1] = 2.0;
    Ok(entry(
        "hyperbolic",
        Arc::new(field),
        lo,
        hi,
        ExpectedProperties {
            constant_curvature: true,
            conformally_flat: true,
            locally_symmetric: true,
            scalar_curvature: Some(-((n * (n - 1)) as f64) / r2),
            ..Default::default()
        },
    ))
}

fn schwarzschild(m: f64) -> Result<CatalogMetric> {
    if m <= 0.0 {
        return Err(Error::Parse("mass must be positive".into()));
    }
    let field = FnMetric::new(
        format!("schwarzschild:{m}"),
        4,
        move |i, j, x| {
            if i != j {
                return konst(x, 0.0);
            }
            // 1 − 2m/r
            let h = x[1].recip().scale(-2.0 * m).add_const(1.0);
            match i {
                0 => h.scale(-1.0),
                1 => h.recip(),
                2 => x[1].powi(2),
                _ => &x[1].powi(2) * &x[2].sin().powi(2),
            }
        },
        move |p| p[1] > 2.0 * m * (1.0 + 1e-6) && p[2].sin().abs() > 1e-3,
    );
    Ok(entry(
        "schwarzschild",
        Arc::new(field),
        vec![0.0, 3.0 * m, 0.4, 0.0],
        vec![1.0, 8.0 * m, PI - 0.4, 2.0 * PI],
        ExpectedProperties {
            ricci_flat: true,
            scalar_curvature: Some(0.0),
            ..Default::default()
        },
    ))
}

fn flrw(coeffs: Vec<f64>) -> Result<CatalogMetric> {
    if coeffs.is_empty() {
        return Err(Error::Parse("flrw needs scale-factor coefficients".into()));
    }
    let a = Polynomial {
        terms: coeffs.iter().enumerate().map(|(k, &c)| (c, vec![k as u32])).collect(),
    };
    let a_dom = a.clone();
    let label = coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":");
    let non_constant = coeffs.iter().skip(1).any(|&c| c != 0.0);
    let field = FnMetric::new(
        format!("flrw:{label}"),
        4,
        move |i, j, x| {
            if i != j {
                konst(x, 0.0)
            } else if i == 0 {
                konst(x, -1.0)
            } else {
                a.eval_jet(&x[..1]).powi(2)
            }
        },
        move |p| a_dom.eval(&p[..1]).abs() > 1e-6,
    );
    Ok(entry(
        "flrw",
        Arc::new(field),
        vec![0.0, -1.0, -1.0, -1.0],
        vec![1.0, 1.0, 1.0, 1.0],
        ExpectedProperties {
            conformally_flat: true,
            flat: !non_constant,
            ricci_flat: !non_constant,
            constant_curvature: !non_constant,
            locally_symmetric: !non_constant,
            ..Default::default()
        },
    ))
}

fn pp_wave(args: &[&str]) -> Result<CatalogMetric> {
    let kind = args.first().copied().unwrap_or("exp");
    let (k, is_exp) = match kind {
        "exp" => (arg(args, 1, "rate", Some(1.0))?, true),
        "const" => (arg(args, 1, "amplitude", Some(1.0))?, false),
        other => return Err(Error::Parse(format!("unknown pp-wave profile `{other}`"))),
    };
    if k == 0.0 {
        return Err(Error::Parse("pp-wave profile parameter must be nonzero".into()));
    }
    let field = FnMetric::new(
        format!("pp-wave:{kind}:{k}"),
        4,
        move |i, j, x| match (i, j) {
            (0, 0) => {
                let f = if is_exp { x[0].scale(k).exp() } else { konst(x, k) };
                &f * &(&x[2].powi(2) - &x[3].powi(2))
            }
            (0, 1) => konst(x, 1.0),
            (2, 2) | (3, 3) => konst(x, 1.0),
            _ => konst(x, 0.0),
        },
        |_| true,
    );
    let mut expected = ExpectedProperties {
        ricci_flat: true,
        scalar_curvature: Some(0.0),
        ..Default::default()
    };
    if is_exp {
        expected.recurrent_form = Some(vec![k, 0.0, 0.0, 0.0]);
    } else {
        expected.locally_symmetric = true;
    }
    Ok(entry(
        "pp-wave",
        Arc::new(field),
        vec![-0.5, -1.0, -1.0, -1.0],
        vec![0.5, 1.0, 1.0, 1.0],
        expected,
    ))
}

/// `g = I + P(x)` with each `P_ij` a random polynomial normalized so that
/// `Σ_j sup|P_ij| ≤ amplitude < 1` on the cube, which keeps `g` positive definite.
pub fn random_polynomial(n: usize, seed: u64, degree: u32, amplitude: f64) -> Result<CatalogMetric> {
    if !(amplitude > 0.0 && amplitude <= 0.1) {
        return Err(Error::Parse(format!("amplitude must lie in (0, 0.1], got {amplitude}")));
    }
    if degree == 0 {
        return Err(Error::Parse("degree must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut upper = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut terms = Vec::new();
            for _ in 0..6 {
                let deg = rng.random_range(1..=degree);
                let mut e = vec![0u32; n];
                for _ in 0..deg {
                    e[rng.random_range(0..n)] += 1;
                }
                terms.push((rng.random_range(-1.0..1.0), e));
            }
            // sup over [−0.5, 0.5]^n of |x^α| is 0.5^|α|
            let sup: f64 = terms
                .iter()
                .map(|(c, e): &(f64, Vec<u32>)| c.abs() * 0.5f64.powi(e.iter().sum::<u32>() as i32))
                .sum();
            let s = amplitude / (n as f64 * sup.max(f64::MIN_POSITIVE));
            for t in terms.iter_mut() {
                t.0 *= s;
            }
            if i == j {
                terms.push((1.0, vec![]));
            }
            upper.push(Polynomial { terms });
        }
    }
    let mut field = PolynomialMetric::new(format!("random-polynomial:{n}:{seed}:{degree}:{amplitude}"), n, upper)?;
    field.bound = Some(0.5);
    Ok(entry(
        "random-polynomial",
        Arc::new(field),
        vec![-0.5; n],
        vec![0.5; n],
        ExpectedProperties::default(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_is_in_unit_cube_and_distinct() {
        let pts = halton(3, 16, 0);
        assert_eq!(pts[0], vec![0.5, 1.0 / 3.0, 0.2]);
        for p in &pts {
            assert!(p.iter().all(|&x| (0.0..1.0).contains(&x)));
        }
        assert_ne!(pts[1], pts[2]);
    }

    #[test]
    fn specs_parse() {
        for s in [
            "flat-euclidean:4",
            "minkowski:3",
            "sphere:3:1",
            "hyperbolic:4:2",
            "schwarzschild:1",
            "flrw",
            "flrw:1:0:1",
            "pp-wave:exp",
            "pp-wave:const:2",
            "random-polynomial:3:42",
        ] {
            let m = get(s).unwrap();
            assert_eq!(m.spec, s);
            let pts = m.sample_points(8, 0);
            assert_eq!(pts.len(), 8);
            for p in &pts {
                assert!(m.field.values_at(p).is_ok(), "{s} {p:?}");
            }
        }
        assert!(matches!(get("torus:3"), Err(Error::UnknownMetric(_))));
        assert!(get("sphere:x").is_err());
        assert!(get("random-polynomial:3:1:4:0.5").is_err());
        assert!(get("pp-wave:sin").is_err());
    }

    #[test]
    fn random_polynomial_is_reproducible() {
        let a = get("random-polynomial:4:9").unwrap();
        let b = get("random-polynomial:4:9").unwrap();
        let c = get("random-polynomial:4:10").unwrap();
        let p = vec![0.1, -0.2, 0.3, 0.05];
        let ga = a.field.values_at(&p).unwrap();
        assert_eq!(ga, b.field.values_at(&p).unwrap());
        assert_ne!(ga, c.field.values_at(&p).unwrap());
        assert!(a.field.values_at(&[0.7, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn sample_points_depend_on_seed() {
        let m = get("sphere:3:1").unwrap();
        assert_eq!(m.sample_points(4, 1), m.sample_points(4, 1));
        assert_ne!(m.sample_points(4, 1), m.sample_points(4, 2));
    }
}
