//! Evaluation of `B` and its covariant derivatives from curvature data.

use num_traits::Zero;

use super::coefficients::{BCoefficients, NCOEF};
use super::named::{catalog, TensorName};
use super::profile::{contraction_profile, ClassId};
use crate::engine::CurvaturePackage;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{permute, Tensor, Valence};

/// `B` from `R, S, r` with `q` trailing derivative slots each
/// (`r` has rank `q`, `S` rank `2+q`, `R` rank `4+q`) and the metric `g`.
pub fn assemble<S: Scalar>(
    a: &[S],
    g: &Tensor<S>,
    riemann: &Tensor<S>,
    ricci: &Tensor<S>,
    scalar: &Tensor<S>,
) -> Result<Tensor<S>> {
    if a.len() != NCOEF {
        return Err(Error::BadDataLength(a.len(), NCOEF));
    }
    let n = g.dim();
    let q = scalar.rank();
    if riemann.rank() != q + 4 || ricci.rank() != q + 2 {
        return Err(Error::ShapeMismatch(format!(
            "ranks R={}, S={}, r={} are inconsistent",
            riemann.rank(),
            ricci.rank(),
            scalar.rank()
        )));
    }
    for t in [riemann, ricci, scalar] {
        if t.dim() != n {
            return Err(Error::DimMismatch(n, t.dim()));
        }
    }
    let nq = n.pow(q as u32);
    let gd = g.data();
    let rd = riemann.data();
    let sd = ricci.data();
    let xd = scalar.data();
    let gg = |x: usize, y: usize| &gd[x * n + y];
    let r_at = |i: usize, j: usize, k: usize, l: usize, x: usize| &rd[(((i * n + j) * n + k) * n + l) * nq + x];
    let s_at = |i: usize, j: usize, x: usize| &sd[(i * n + j) * nq + x];
    let mut data = Vec::with_capacity(n.pow(4) * nq);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for x in 0..nq {
                        let mut v = S::zero();
                        let mut add = |c: &S, t: S| {
                            if !c.is_zero() {
                                v += c.clone() * t;
                            }
                        };
                        add(&a[0], r_at(i, j, k, l, x).clone());
                        add(&a[1], r_at(i, k, j, l, x).clone());
                        add(&a[2], s_at(j, k, x).clone() * gg(i, l).clone());
                        add(&a[3], s_at(i, k, x).clone() * gg(j, l).clone());
                        add(&a[4], s_at(i, j, x).clone() * gg(k, l).clone());
                        add(&a[5], s_at(i, l, x).clone() * gg(j, k).clone());
                        add(&a[6], s_at(j, l, x).clone() * gg(i, k).clone());
                        add(&a[7], s_at(k, l, x).clone() * gg(i, j).clone());
                        let r = xd[x].clone();
                        add(&a[8], r.clone() * gg(i, l).clone() * gg(j, k).clone());
                        add(&a[9], r.clone() * gg(i, k).clone() * gg(j, l).clone());
                        add(&a[10], r * gg(i, j).clone() * gg(k, l).clone());
                        data.push(v);
                    }
                }
            }
        }
    }
    Tensor::new(n, Valence::covariant(4 + q), data)
}

fn check_dim(c: &BCoefficients, pkg: &CurvaturePackage) -> Result<()> {
    if c.n() != pkg.dim() {
        return Err(Error::DimMismatch(c.n(), pkg.dim()));
    }
    Ok(())
}

/// `B` at the package point.
pub fn build_tensor(c: &BCoefficients, pkg: &CurvaturePackage) -> Result<Tensor<f64>> {
    build_derivative(c, pkg, 0)
}

/// `∇^q B`; the coefficients are constants and `∇g = 0`.
pub fn build_derivative(c: &BCoefficients, pkg: &CurvaturePackage, q: usize) -> Result<Tensor<f64>> {
    check_dim(c, pkg)?;
    assemble(
        &c.to_f64(),
        pkg.g(),
        pkg.riemann_derivative(q)?,
        pkg.ricci_derivative(q)?,
        pkg.scalar_derivative(q)?,
    )
}

/// The metric part `G_{ijkl} = g_il g_jk − g_ik g_jl` style products used by the
/// class identities: `Σ_m w_m r (g g)_m` for the three index pairings.
fn r_gg(pkg: &CurvaturePackage, w: [f64; 3]) -> Tensor<f64> {
    let n = pkg.dim();
    let g = pkg.g();
    let r = pkg.scalar_curvature();
    let gg = |x: usize, y: usize| g.get(&[x, y]);
    Tensor::from_fn(n, Valence::covariant(4), |ix| {
        let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
        r * (w[0] * gg(i, l) * gg(j, k) + w[1] * gg(i, k) * gg(j, l) + w[2] * gg(i, j) * gg(k, l))
    })
}

/// Residual of the flatness identity of the class of `c`, relative to the
/// largest of `‖B‖`, `‖R‖`, `‖S‖`, `|r|` at the point:
///
/// * class 1: `B − a_0 C − a_1 C_{ikjl}`
/// * class 2: `B − a_0 K − a_1 K_{ikjl} − r(a_8 g_il g_jk + a_9 g_ik g_jl + a_10 g_ij g_kl)`
/// * class 3: `B − a_0 W − a_1 W_{ikjl} − [Σ a_m (g S)_m] + (r/n)[(a_2+a_5) g_il g_jk + (a_3+a_6) g_ik g_jl + (a_4+a_7) g_ij g_kl]`
///
/// Class 4 has no identity beyond the definition; `None` is returned.
pub fn class_identity_residual(c: &BCoefficients, pkg: &CurvaturePackage) -> Result<Option<(ClassId, f64)>> {
    check_dim(c, pkg)?;
    let class = contraction_profile(c).class();
    let rep = match class {
        ClassId::Class1 => TensorName::C,
        ClassId::Class2 => TensorName::K,
        ClassId::Class3 => TensorName::W,
        ClassId::Class4 => return Ok(None),
    };
    let n = c.n();
    let a = c.to_f64();
    let b = build_tensor(c, pkg)?;
    let rep_t = build_tensor(&catalog(rep, n, &Default::default())?, pkg)?;
    let rep_swapped = permute(&rep_t, &[0, 2, 1, 3])?;
    let mut resid = b.sub(&rep_t.scale(&a[0]))?.sub(&rep_swapped.scale(&a[1]))?;
    match class {
        ClassId::Class2 => {
            resid = resid.sub(&r_gg(pkg, [a[8], a[9], a[10]]))?;
        }
        ClassId::Class3 => {
            let mut s_only = [0.0; NCOEF];
            s_only[2..8].copy_from_slice(&a[2..8]);
            let zero_r = Tensor::scalar(n, 0.0);
            let s_terms = assemble(
                &s_only,
                pkg.g(),
                &Tensor::zeros(n, Valence::covariant(4)),
                pkg.ricci(),
                &zero_r,
            )?;
            let trace_terms = r_gg(
                pkg,
                [
                    (a[2] + a[5]) / n as f64,
                    (a[3] + a[6]) / n as f64,
                    (a[4] + a[7]) / n as f64,
                ],
            );
            resid = resid.sub(&s_terms)?.add(&trace_terms)?;
        }
        _ => {}
    }
    let scale = [
        b.max_norm(),
        pkg.riemann().max_norm(),
        pkg.ricci().max_norm(),
        pkg.scalar_curvature().abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let rel = if scale > 0.0 {
        resid.max_norm() / scale
    } else {
        resid.max_norm()
    };
    Ok(Some((class, rel)))
}

/// `b0 R + b1 g∧S + b2 r g∧g` built with the Kulkarni–Nomizu product.
pub fn reconstruct_canonical(
    form: &super::predicates::GctCanonicalForm,
    pkg: &CurvaturePackage,
) -> Result<Tensor<f64>> {
    use crate::tensor::kulkarni_nomizu;
    let b0 = form.b0.to_f64();
    let b1 = form.b1.to_f64();
    let b2 = form.b2.to_f64();
    let g = pkg.g();
    let gs = kulkarni_nomizu(g, pkg.ricci())?;
    let gg = kulkarni_nomizu(g, g)?;
    let out = pkg
        .riemann()
        .scale(&b0)
        .add(&gs.scale(&b1))?
        .add(&gg.scale(&(b2 * pkg.scalar_curvature())))?;
    Ok(out)
}

/// True when every coefficient is zero except possibly `a_0` (used to skip work).
pub fn is_pure_riemann(c: &BCoefficients) -> bool {
    (1..NCOEF).all(|i| c.a(i).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::btensor::named::parse_named;
    use crate::btensor::predicates::gct_canonical_form;
    use crate::engine::curvature_package;
    use crate::jet::Jet;
    use crate::metric::{FnMetric, MetricField};

    fn wavy(n: usize) -> FnMetric {
        FnMetric::new(
            "wavy",
            n,
            move |i, j, x| {
                let sp = x[0].space();
                let o = x[0].order();
                let base = if i == j { 1.0 } else { 0.0 };
                let t = &(&x[i] * &x[j]).scale(0.1) + &(&x[(i + 1) % x.len()] * &x[j]).sin().scale(0.07);
                let t2 = &(&x[(j + 1) % x.len()] * &x[i]).sin().scale(0.07) + &t;
                &Jet::constant(sp, o, base) + &t2.scale(if i == j { 1.0 } else { 0.4 })
            },
            |_| true,
        )
    }

    fn pkg(n: usize) -> CurvaturePackage {
        let p: Vec<f64> = (0..n).map(|i| 0.1 * i as f64 - 0.15).collect();
        curvature_package(&wavy(n) as &dyn MetricField, &p, 1).unwrap()
    }

    #[test]
    fn pure_riemann_returns_r() {
        let pk = pkg(3);
        let b = build_tensor(&parse_named("R", 3).unwrap(), &pk).unwrap();
        assert_eq!(&b, pk.riemann());
    }

    #[test]
    fn canonical_reconstruction_matches() {
        for n in [3, 4] {
            let pk = pkg(n);
            for name in ["C", "K", "W", "R", "C*:a0=2,a2=1/3"] {
                let c = parse_named(name, n).unwrap();
                let form = gct_canonical_form(&c).unwrap();
                let b = build_tensor(&c, &pk).unwrap();
                let rec = reconstruct_canonical(&form, &pk).unwrap();
                let err = b.sub(&rec).unwrap().max_norm();
                assert!(err <= 1e-12 * (1.0 + b.max_norm()), "{name} n={n}: {err}");
            }
        }
    }

    #[test]
    fn class_identities_hold_for_rows() {
        for n in [3, 4] {
            let pk = pkg(n);
            for name in ["C", "K", "W", "P", "M", "W0", "W3*", "C':a0=1,a2=1/2,a8=1/3"] {
                let c = parse_named(name, n).unwrap();
                if let Some((_, rel)) = class_identity_residual(&c, &pk).unwrap() {
                    assert!(rel < 1e-12, "{name} n={n}: {rel}");
                }
            }
        }
    }

    #[test]
    fn derivative_assembly_shapes() {
        let pk = pkg(3);
        let c = parse_named("W", 3).unwrap();
        let db = build_derivative(&c, &pk, 1).unwrap();
        assert_eq!(db.rank(), 5);
        assert!(build_derivative(&c, &pk, 2).is_err());
        let c4 = parse_named("R", 4).unwrap();
        assert!(matches!(build_tensor(&c4, &pk), Err(Error::DimMismatch(4, 3))));
    }
}
