//! Levi-Civita curvature of a metric field at a point, computed with jets.
//!
//! Conventions: `R^ρ_{σμν} = ∂_μΓ^ρ_{νσ} − ∂_νΓ^ρ_{μσ} + Γ^ρ_{μλ}Γ^λ_{νσ} − Γ^ρ_{νλ}Γ^λ_{μσ}`,
//! `R_{ijkl} = g(R(∂_i,∂_j)∂_k, ∂_l) = g_{lρ} R^ρ_{kij}`, `S_{jk} = g^{il} R_{ijkl}`
//! and `r = g^{jk} S_{jk}`. The unit sphere has `R = ½ g∧g` and `r = n(n−1)`.
//!
//! Covariant derivatives append the derivative direction as the last slot:
//! `(∇T)[I, x] = (∇_x T)[I]`, and `(∇²T)[I, y, x] = (∇_x ∇T)[I, y]`.

use crate::error::{Error, Result};
use crate::jet::{invert_jet_matrix, Jet, MAX_ORDER};
use crate::metric::MetricField;
use crate::tensor::{flat_index, unflatten, Metric, Tensor, Valence};

/// A covariant tensor whose components are jets.
#[derive(Debug, Clone)]
pub struct TensorJet {
    pub dim: usize,
    pub rank: usize,
    pub comps: Vec<Jet>,
}

impl TensorJet {
    pub fn order(&self) -> usize {
        self.comps.iter().map(Jet::order).min().unwrap_or(0)
    }

    pub fn value(&self) -> Tensor<f64> {
        Tensor::covariant(self.dim, self.rank, self.comps.iter().map(Jet::value).collect())
            .expect("jet tensor has consistent length")
    }
}

/// Metric, connection and curvature as jets around one point.
#[derive(Debug, Clone)]
pub struct CurvatureJets {
    dim: usize,
    point: Vec<f64>,
    g: Vec<Jet>,
    g_inv: Vec<Jet>,
    /// `Γ^a_{bc}` at `[a][b][c]`.
    gamma: Vec<Jet>,
    riemann: TensorJet,
    ricci: TensorJet,
    scalar: Jet,
}

impl CurvatureJets {
    /// Expands the metric to `order` (at least 2) and derives the curvature jets.
    pub fn new(field: &dyn MetricField, p: &[f64], order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InsufficientJetOrder { have: order, need: 2 });
        }
        if order > MAX_ORDER {
            return Err(Error::InsufficientJetOrder {
                have: MAX_ORDER,
                need: order,
            });
        }
        let n = field.dim();
        let g = field.jets_at(p, order)?;
        let g_inv = invert_jet_matrix(n, &g).ok_or(Error::SingularMetric)?;
        let gamma = christoffel_jets(n, &g, &g_inv);
        let riemann = riemann_jets(n, &g, &gamma);
        let ricci = contract_14(n, &riemann, &g_inv);
        let mut scalar = Jet::zero(g[0].space(), ricci.order());
        for j in 0..n {
            for k in 0..n {
                scalar.add_product(&g_inv[j * n + k], &ricci.comps[j * n + k]);
            }
        }
        Ok(CurvatureJets {
            dim: n,
            point: p.to_vec(),
            g,
            g_inv,
            gamma,
            riemann,
            ricci,
            scalar,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric_jets(&self) -> TensorJet {
        TensorJet {
            dim: self.dim,
            rank: 2,
            comps: self.g.clone(),
        }
    }

    pub fn riemann(&self) -> &TensorJet {
        &self.riemann
    }

    pub fn ricci(&self) -> &TensorJet {
        &self.ricci
    }

    pub fn scalar_jet(&self) -> TensorJet {
        TensorJet {
            dim: self.dim,
            rank: 0,
            comps: vec![self.scalar.clone()],
        }
    }

    pub fn metric(&self) -> Result<Metric<f64>> {
        let n = self.dim;
        let g = Tensor::covariant(n, 2, self.g.iter().map(Jet::value).collect())?;
        let mut gi: Vec<f64> = self.g_inv.iter().map(Jet::value).collect();
        // symmetrize away roundoff of the elimination
        for i in 0..n {
            for j in 0..i {
                let m = 0.5 * (gi[i * n + j] + gi[j * n + i]);
                gi[i * n + j] = m;
                gi[j * n + i] = m;
            }
        }
        let g_sym = {
            let mut d = g.data().to_vec();
            for i in 0..n {
                for j in 0..i {
                    let m = 0.5 * (d[i * n + j] + d[j * n + i]);
                    d[i * n + j] = m;
                    d[j * n + i] = m;
                }
            }
            Tensor::covariant(n, 2, d)?
        };
        let g_inv = Tensor::new(n, Valence { up: 2, down: 0 }, gi)?;
        Metric::from_parts(g_sym, g_inv).or_else(|_| Metric::new(g))
    }

    /// `Γ^a_{bc}` at the base point as a (1,2) tensor.
    pub fn christoffel(&self) -> Tensor<f64> {
        Tensor::new(
            self.dim,
            Valence { up: 1, down: 2 },
            self.gamma.iter().map(Jet::value).collect(),
        )
        .expect("christoffel has n^3 entries")
    }

    /// `(∇T)[I, x] = ∂_x T[I] − Σ_m Γ^a_{x i_m} T[…a at m…]`, one jet order lower.
    pub fn covariant_derivative(&self, t: &TensorJet) -> Result<TensorJet> {
        let have = t.order();
        if have == 0 {
            return Err(Error::InsufficientJetOrder { have: 0, need: 1 });
        }
        let n = self.dim;
        let k = t.rank;
        let out_order = have - 1;
        let strides: Vec<usize> = (0..k).map(|m| n.pow((k - 1 - m) as u32)).collect();
        let mut idx = vec![0; k];
        let mut comps = Vec::with_capacity(t.comps.len() * n);
        for (tflat, c) in t.comps.iter().enumerate() {
            unflatten(n, tflat, &mut idx);
            for x in 0..n {
                let mut acc = c.derivative(x);
                for (m, &st) in strides.iter().enumerate() {
                    let base = tflat - idx[m] * st;
                    for a in 0..n {
                        let gam = &self.gamma[(a * n + x) * n + idx[m]];
                        let prod = gam * &t.comps[base + a * st];
                        acc.add_scaled(-1.0, &prod);
                    }
                }
                comps.push(acc.truncate(out_order));
            }
        }
        Ok(TensorJet {
            dim: n,
            rank: k + 1,
            comps,
        })
    }

    /// Successive covariant derivatives `T, ∇T, …, ∇^depth T` at the base point.
    pub fn derivative_tower(&self, t: &TensorJet, depth: usize) -> Result<Vec<Tensor<f64>>> {
        let mut cur = t.clone();
        let mut out = vec![cur.value()];
        for _ in 0..depth {
            cur = self.covariant_derivative(&cur)?;
            out.push(cur.value());
        }
        Ok(out)
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }
}

fn christoffel_jets(n: usize, g: &[Jet], g_inv: &[Jet]) -> Vec<Jet> {
    let space = g[0].space().clone();
    let order = g[0].order() - 1;
    // dg[d][b][c] = ∂_d g_bc
    let dg: Vec<Jet> = (0..n * n * n)
        .map(|f| {
            let (d, bc) = (f / (n * n), f % (n * n));
            g[bc].derivative(d)
        })
        .collect();
    let mut first = Vec::with_capacity(n * n * n);
    for d in 0..n {
        for b in 0..n {
            for c in 0..n {
                // Γ_{d,bc} = ½(∂_b g_dc + ∂_c g_bd − ∂_d g_bc)
                let mut s = dg[(b * n + d) * n + c].clone();
                s.add_scaled(1.0, &dg[(c * n + b) * n + d]);
                s.add_scaled(-1.0, &dg[(d * n + b) * n + c]);
                first.push(s.scale(0.5));
            }
        }
    }
    let mut gamma: Vec<Jet> = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if c < b {
                    let sym: Jet = gamma[(a * n + c) * n + b].clone();
                    gamma.push(sym);
                    continue;
                }
                let mut acc = Jet::zero(&space, order);
                for d in 0..n {
                    acc.add_product(&g_inv[a * n + d], &first[(d * n + b) * n + c]);
                }
                gamma.push(acc);
            }
        }
    }
    gamma
}

fn riemann_jets(n: usize, g: &[Jet], gamma: &[Jet]) -> TensorJet {
    let space = g[0].space().clone();
    let order = gamma[0].order() - 1;
    let gam = |a: usize, b: usize, c: usize| &gamma[(a * n + b) * n + c];
    // rup[ρ][σ][μ][ν]
    let mut rup: Vec<Jet> = vec![Jet::zero(&space, order); n.pow(4)];
    for rho in 0..n {
        for sigma in 0..n {
            for mu in 0..n {
                for nu in (mu + 1)..n {
                    let mut acc = gam(rho, nu, sigma).derivative(mu);
                    acc.add_scaled(-1.0, &gam(rho, mu, sigma).derivative(nu));
                    for l in 0..n {
                        acc.add_product(gam(rho, mu, l), gam(l, nu, sigma));
                        let p = gam(rho, nu, l) * gam(l, mu, sigma);
                        acc.add_scaled(-1.0, &p);
                    }
                    let base = (rho * n + sigma) * n;
                    rup[(base + nu) * n + mu] = acc.scale(-1.0);
                    rup[(base + mu) * n + nu] = acc;
                }
            }
        }
    }
    let mut comps = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut acc = Jet::zero(&space, order);
                    if i != j {
                        for rho in 0..n {
                            acc.add_product(&g[l * n + rho], &rup[((rho * n + k) * n + i) * n + j]);
                        }
                    }
                    comps.push(acc);
                }
            }
        }
    }
    TensorJet { dim: n, rank: 4, comps }
}

fn contract_14(n: usize, r: &TensorJet, g_inv: &[Jet]) -> TensorJet {
    let space = g_inv[0].space().clone();
    let order = r.order();
    let mut comps = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let mut acc = Jet::zero(&space, order);
            for i in 0..n {
                for l in 0..n {
                    acc.add_product(&g_inv[i * n + l], &r.comps[flat_index(n, &[i, j, k, l])]);
                }
            }
            comps.push(acc);
        }
    }
    TensorJet { dim: n, rank: 2, comps }
}

/// `Γ^a_{bc}` of a metric field at `p`.
pub fn christoffel(field: &dyn MetricField, p: &[f64]) -> Result<Tensor<f64>> {
    let n = field.dim();
    let g = field.jets_at(p, 1)?;
    let g_inv = invert_jet_matrix(n, &g).ok_or(Error::SingularMetric)?;
    Tensor::new(
        n,
        Valence { up: 1, down: 2 },
        christoffel_jets(n, &g, &g_inv).iter().map(Jet::value).collect(),
    )
}

/// Pointwise curvature data: `R, S, r` and their covariant derivatives up to `depth`.
#[derive(Debug, Clone)]
pub struct CurvaturePackage {
    point: Vec<f64>,
    metric: Metric<f64>,
    depth: usize,
    /// `riemann[q] = ∇^q R`, likewise for `ricci` and `scalar`.
    riemann: Vec<Tensor<f64>>,
    ricci: Vec<Tensor<f64>>,
    scalar: Vec<Tensor<f64>>,
    nabla_g: Option<Tensor<f64>>,
}

impl CurvaturePackage {
    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn metric(&self) -> &Metric<f64> {
        &self.metric
    }

    pub fn g(&self) -> &Tensor<f64> {
        self.metric.g()
    }

    pub fn riemann(&self) -> &Tensor<f64> {
        &self.riemann[0]
    }

    pub fn ricci(&self) -> &Tensor<f64> {
        &self.ricci[0]
    }

    pub fn scalar_curvature(&self) -> f64 {
        *self.scalar[0].as_scalar()
    }

    fn level<'a>(&self, v: &'a [Tensor<f64>], q: usize) -> Result<&'a Tensor<f64>> {
        v.get(q).ok_or(Error::InsufficientJetOrder {
            have: self.depth + 2,
            need: q + 2,
        })
    }

    /// `∇^q R` for `q ≤ depth`.
    pub fn riemann_derivative(&self, q: usize) -> Result<&Tensor<f64>> {
        self.level(&self.riemann, q)
    }

    pub fn ricci_derivative(&self, q: usize) -> Result<&Tensor<f64>> {
        self.level(&self.ricci, q)
    }

    /// `∇^q r` as a rank-`q` tensor.
    pub fn scalar_derivative(&self, q: usize) -> Result<&Tensor<f64>> {
        self.level(&self.scalar, q)
    }

    pub fn nabla_riemann(&self) -> Option<&Tensor<f64>> {
        self.riemann.get(1)
    }

    pub fn nabla2_riemann(&self) -> Option<&Tensor<f64>> {
        self.riemann.get(2)
    }

    pub fn nabla_ricci(&self) -> Option<&Tensor<f64>> {
        self.ricci.get(1)
    }

    pub fn nabla_scalar(&self) -> Option<&Tensor<f64>> {
        self.scalar.get(1)
    }

    /// `∇g` computed from the jets (zero up to roundoff).
    pub fn nabla_g(&self) -> Option<&Tensor<f64>> {
        self.nabla_g.as_ref()
    }

    pub fn max_component(&self) -> f64 {
        self.riemann[0].max_norm()
    }
}

/// Curvature package at `p`; `depth ∈ {0, 1, 2}` selects how many covariant
/// derivatives of `R, S, r` are included.
pub fn curvature_package(field: &dyn MetricField, p: &[f64], depth: usize) -> Result<CurvaturePackage> {
    if depth > 2 {
        return Err(Error::InsufficientJetOrder {
            have: MAX_ORDER,
            need: depth + 2,
        });
    }
    let jets = CurvatureJets::new(field, p, depth + 2)?;
    package_from_jets(&jets, depth)
}

pub fn package_from_jets(jets: &CurvatureJets, depth: usize) -> Result<CurvaturePackage> {
    let riemann = jets.derivative_tower(jets.riemann(), depth)?;
    let ricci = jets.derivative_tower(jets.ricci(), depth)?;
    let scalar = jets.derivative_tower(&jets.scalar_jet(), depth)?;
    let nabla_g = if depth >= 1 {
        Some(jets.covariant_derivative(&jets.metric_jets())?.value())
    } else {
        None
    };
    Ok(CurvaturePackage {
        point: jets.point().to_vec(),
        metric: jets.metric()?,
        depth,
        riemann,
        ricci,
        scalar,
        nabla_g,
    })
}

/// Max-norm of `∇R[i,j,k,l,x] + ∇R[j,x,k,l,i] + ∇R[x,i,k,l,j]`.
pub fn bianchi2_residual(pkg: &CurvaturePackage) -> Result<f64> {
    let dr = pkg.riemann_derivative(1)?;
    let n = pkg.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for x in 0..n {
                        let s = dr.get(&[i, j, k, l, x]) + dr.get(&[j, x, k, l, i]) + dr.get(&[x, i, k, l, j]);
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::FnMetric;
    use crate::tensor::{gct_violations, metric_contract, metric_g_tensor};
    use approx::assert_relative_eq;

    /// Round sphere of radius one in polar coordinates, `n = 2`.
    fn sphere2() -> FnMetric {
        FnMetric::new(
            "s2",
            2,
            |i, j, x| {
                let sp = x[0].space();
                let o = x[0].order();
                match (i, j) {
                    (0, 0) => Jet::constant(sp, o, 1.0),
                    (1, 1) => x[0].sin().powi(2),
                    _ => Jet::zero(sp, o),
                }
            },
            |p| p[0].sin().abs() > 1e-3,
        )
    }

    fn sphere3() -> FnMetric {
        FnMetric::new(
            "s3",
            3,
            |i, j, x| {
                let sp = x[0].space();
                let o = x[0].order();
                match (i, j) {
                    (0, 0) => Jet::constant(sp, o, 1.0),
                    (1, 1) => x[0].sin().powi(2),
                    (2, 2) => &x[0].sin().powi(2) * &x[1].sin().powi(2),
                    _ => Jet::zero(sp, o),
                }
            },
            |_| true,
        )
    }

    fn wavy3() -> FnMetric {
        FnMetric::new(
            "wavy",
            3,
            |i, j, x| {
                let sp = x[0].space();
                let o = x[0].order();
                let base = if i == j { 1.0 } else { 0.0 };
                let pert = (&(&x[i] * &x[j]).scale(0.1) + &(&x[0] * &x[1]).sin().scale(0.05)).scale(if i == j {
                    1.0
                } else {
                    0.3
                });
                &Jet::constant(sp, o, base) + &pert
            },
            |_| true,
        )
    }

    #[test]
    fn christoffel_of_two_sphere() {
        let th = 0.8f64;
        let gam = christoffel(&sphere2(), &[th, 0.3]).unwrap();
        assert_relative_eq!(*gam.get(&[0, 1, 1]), -th.sin() * th.cos(), epsilon = 1e-14);
        assert_relative_eq!(*gam.get(&[1, 0, 1]), th.cos() / th.sin(), epsilon = 1e-14);
        assert_relative_eq!(*gam.get(&[1, 1, 0]), th.cos() / th.sin(), epsilon = 1e-14);
        assert_eq!(*gam.get(&[0, 0, 0]), 0.0);
    }

    #[test]
    fn christoffel_is_symmetric_in_lower_slots() {
        let gam = christoffel(&wavy3(), &[0.2, -0.1, 0.3]).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert_eq!(gam.get(&[a, b, c]), gam.get(&[a, c, b]));
                }
            }
        }
    }

    #[test]
    fn two_sphere_sign_lock() {
        let pkg = curvature_package(&sphere2(), &[1.1, 0.0], 0).unwrap();
        assert_relative_eq!(pkg.scalar_curvature(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn unit_three_sphere() {
        let pkg = curvature_package(&sphere3(), &[0.9, 1.2, 0.4], 1).unwrap();
        assert_relative_eq!(pkg.scalar_curvature(), 6.0, epsilon = 1e-12);
        let g = pkg.g();
        let s_minus = pkg.ricci().sub(&g.scale(&2.0)).unwrap();
        assert!(s_minus.max_norm() < 1e-12);
        let big_g = metric_g_tensor(pkg.metric());
        assert!(pkg.riemann().sub(&big_g).unwrap().max_norm() < 1e-12);
        assert!(pkg.nabla_riemann().unwrap().max_norm() < 1e-10);
        assert!(bianchi2_residual(&pkg).unwrap() < 1e-10);
        assert!(pkg.nabla_g().unwrap().max_norm() < 1e-12);
    }

    #[test]
    fn ricci_matches_tensor_core_contraction() {
        let pkg = curvature_package(&wavy3(), &[0.2, -0.1, 0.3], 0).unwrap();
        let s = metric_contract(pkg.riemann(), 0, 3, pkg.metric()).unwrap();
        assert!(s.sub(pkg.ricci()).unwrap().max_norm() < 1e-13);
        let r = metric_contract(pkg.ricci(), 0, 1, pkg.metric()).unwrap();
        assert_relative_eq!(*r.as_scalar(), pkg.scalar_curvature(), epsilon = 1e-13);
    }

    #[test]
    fn riemann_is_a_proper_gct() {
        let pkg = curvature_package(&wavy3(), &[0.2, -0.1, 0.3], 1).unwrap();
        let scale = pkg.riemann().max_norm();
        assert!(scale > 1e-3);
        for v in gct_violations(pkg.riemann()) {
            assert!(v <= 1e-12 * scale, "{v}");
        }
        assert!(bianchi2_residual(&pkg).unwrap() < 1e-10);
        assert!(pkg.nabla_g().unwrap().max_norm() < 1e-13);
    }

    #[test]
    fn depth_limits_are_reported() {
        let pkg = curvature_package(&wavy3(), &[0.0, 0.0, 0.0], 0).unwrap();
        assert!(matches!(
            bianchi2_residual(&pkg),
            Err(Error::InsufficientJetOrder { .. })
        ));
        assert!(curvature_package(&wavy3(), &[0.0, 0.0, 0.0], 3).is_err());
    }
}
