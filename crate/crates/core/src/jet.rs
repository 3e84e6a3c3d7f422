//! Truncated multivariate Taylor expansions ("jets") of scalar fields.
//!
//! A jet of order `d` over `n` variables stores the Taylor coefficients
//! `c_α` of `f(x0 + h) = Σ_{|α| ≤ d} c_α h^α`. Arithmetic is exact truncated
//! power-series algebra, so partial derivatives come out at machine precision.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// Highest order any jet may carry.
pub const MAX_ORDER: usize = 4;

#[derive(Debug)]
pub struct JetSpace {
    nvars: usize,
    monomials: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    /// `count[d]` = number of monomials of degree ≤ d.
    count: Vec<usize>,
    /// `(i, j, k)` with `m_i · m_j = m_k`, sorted by degree of `m_k`.
    products: Vec<(u32, u32, u32)>,
    products_end: Vec<usize>,
    /// Per variable: `(src, dst, factor)` for `∂_v (c h^α) = α_v c h^{α-e_v}`.
    derivs: Vec<Vec<(u32, u32, f64)>>,
}

impl JetSpace {
    fn build(nvars: usize) -> Self {
        let mut monomials: Vec<Vec<u8>> = vec![vec![0; nvars]];
        let mut count = vec![1];
        let mut frontier = vec![vec![0u8; nvars]];
        for _ in 1..=MAX_ORDER {
            let mut next: Vec<Vec<u8>> = Vec::new();
            for m in &frontier {
                // only bump variables at or after the last nonzero one to avoid duplicates
                let start = m.iter().rposition(|&e| e > 0).unwrap_or(0);
                for v in start..nvars {
                    let mut e = m.clone();
                    e[v] += 1;
                    next.push(e);
                }
            }
            monomials.extend(next.iter().cloned());
            count.push(monomials.len());
            frontier = next;
        }
        let index: HashMap<Vec<u8>, usize> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();

        let mut products = Vec::new();
        let mut products_end = Vec::new();
        for d in 0..=MAX_ORDER {
            let lo = if d == 0 { 0 } else { count[d - 1] };
            for k in lo..count[d] {
                let mk = &monomials[k];
                for i in 0..count[d] {
                    let mi = &monomials[i];
                    if mi.iter().zip(mk).any(|(a, b)| a > b) {
                        continue;
                    }
                    let mj: Vec<u8> = mk.iter().zip(mi).map(|(b, a)| b - a).collect();
                    products.push((i as u32, index[&mj] as u32, k as u32));
                }
            }
            products_end.push(products.len());
        }

        let derivs = (0..nvars)
            .map(|v| {
                monomials
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| m[v] > 0)
                    .map(|(src, m)| {
                        let mut lower = m.clone();
                        lower[v] -= 1;
                        (src as u32, index[&lower] as u32, m[v] as f64)
                    })
                    .collect()
            })
            .collect();

        JetSpace {
            nvars,
            monomials,
            index,
            count,
            products,
            products_end,
            derivs,
        }
    }

    /// Shared space for `nvars` variables.
    pub fn get(nvars: usize) -> Arc<JetSpace> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<JetSpace>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(nvars)
            .or_insert_with(|| Arc::new(JetSpace::build(nvars)))
            .clone()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self, order: usize) -> usize {
        self.count[order]
    }

    pub fn monomial(&self, i: usize) -> &[u8] {
        &self.monomials[i]
    }

    pub fn index_of(&self, exps: &[u8]) -> Option<usize> {
        self.index.get(exps).copied()
    }
}

#[derive(Debug, Clone)]
pub struct Jet {
    space: Arc<JetSpace>,
    order: usize,
    c: Vec<f64>,
}

impl Jet {
    pub fn constant(space: &Arc<JetSpace>, order: usize, value: f64) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        let mut c = vec![0.0; space.len(order)];
        c[0] = value;
        Jet {
            space: space.clone(),
            order,
            c,
        }
    }

    pub fn zero(space: &Arc<JetSpace>, order: usize) -> Self {
        Self::constant(space, order, 0.0)
    }

    /// The coordinate function `x_v` expanded around `x0 = base`.
    pub fn variable(space: &Arc<JetSpace>, order: usize, v: usize, base: f64) -> Self {
        let mut j = Self::constant(space, order, base);
        if order >= 1 {
            j.c[1 + v] = 1.0;
        }
        j
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    /// Taylor coefficient of `h^α`.
    pub fn coeff(&self, exps: &[u8]) -> f64 {
        match self.space.index_of(exps) {
            Some(i) if i < self.c.len() => self.c[i],
            _ => 0.0,
        }
    }

    /// Partial derivative `∂^α f(x0) = α! c_α`.
    pub fn partial(&self, exps: &[u8]) -> f64 {
        let fact: f64 = exps.iter().map(|&e| (1..=e as u32).product::<u32>() as f64).product();
        fact * self.coeff(exps)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Jet {
            space: self.space.clone(),
            order,
            c: self.c[..self.space.len(order)].to_vec(),
        }
    }

    /// `∂f/∂x_v` as a jet of one lower order.
    pub fn derivative(&self, v: usize) -> Self {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let order = self.order - 1;
        let len = self.space.len(order);
        let mut c = vec![0.0; len];
        for &(src, dst, f) in &self.space.derivs[v] {
            let (src, dst) = (src as usize, dst as usize);
            if src < self.c.len() && dst < len {
                c[dst] += f * self.c[src];
            }
        }
        Jet {
            space: self.space.clone(),
            order,
            c,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Jet {
            space: self.space.clone(),
            order: self.order,
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add_const(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.c[0] += s;
        out
    }

    /// `self += s · other`, truncating to the lower order of the two.
    pub fn add_scaled(&mut self, s: f64, other: &Jet) {
        if other.order < self.order {
            *self = self.truncate(other.order);
        }
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a += s * b;
        }
    }

    /// `self += a · b`, truncating to the lowest order involved.
    pub fn add_product(&mut self, a: &Jet, b: &Jet) {
        let order = self.order.min(a.order).min(b.order);
        if order < self.order {
            *self = self.truncate(order);
        }
        let end = self.space.products_end[order];
        for &(i, j, k) in &self.space.products[..end] {
            self.c[k as usize] += a.c[i as usize] * b.c[j as usize];
        }
    }

    fn mul_jet(&self, other: &Jet) -> Jet {
        let mut out = Jet::zero(&self.space, self.order.min(other.order));
        out.add_product(self, other);
        out
    }

    /// `Σ_k coef[k] h^k` with `h = self − self(x0)`.
    fn compose(&self, coef: &[f64]) -> Jet {
        let mut h = self.clone();
        h.c[0] = 0.0;
        let mut out = Jet::constant(&self.space, self.order, coef[0]);
        let mut power = Jet::constant(&self.space, self.order, 1.0);
        for &ck in coef.iter().take(self.order + 1).skip(1) {
            power = power.mul_jet(&h);
            out.add_scaled(ck, &power);
        }
        out
    }

    /// Applies a univariate function given its derivatives at the base value.
    pub fn apply(&self, derivs: impl Fn(usize) -> f64) -> Jet {
        let mut fact = 1.0;
        let coef: Vec<f64> = (0..=self.order)
            .map(|k| {
                if k > 0 {
                    fact *= k as f64;
                }
                derivs(k) / fact
            })
            .collect();
        self.compose(&coef)
    }

    pub fn recip(&self) -> Jet {
        let x = self.value();
        assert!(x != 0.0, "reciprocal of a jet with zero constant term");
        // d^k/dx^k 1/x = (-1)^k k! / x^{k+1}
        let coef: Vec<f64> = (0..=self.order)
            .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / x.powi(k as i32 + 1))
            .collect();
        self.compose(&coef)
    }

    pub fn div(&self, other: &Jet) -> Jet {
        self.mul_jet(&other.recip())
    }

    pub fn exp(&self) -> Jet {
        let e = self.value().exp();
        self.apply(|_| e)
    }

    pub fn ln(&self) -> Jet {
        let x = self.value();
        self.apply(|k| {
            if k == 0 {
                x.ln()
            } else {
                let f: f64 = (1..k).map(|i| i as f64).product();
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * f / x.powi(k as i32)
            }
        })
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = self.value().sin_cos();
        self.apply(|k| [s, c, -s, -c][k % 4])
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = self.value().sin_cos();
        self.apply(|k| [c, -s, -c, s][k % 4])
    }

    /// `self^p` for real `p`; needs a positive base value unless `p` is a whole number.
    pub fn powf(&self, p: f64) -> Jet {
        let x = self.value();
        self.apply(|k| {
            let falling: f64 = (0..k).map(|i| p - i as f64).product();
            falling * x.powf(p - k as f64)
        })
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    pub fn powi(&self, p: u32) -> Jet {
        let mut out = Jet::constant(&self.space, self.order, 1.0);
        for _ in 0..p {
            out = out.mul_jet(self);
        }
        out
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        let mut out = self.truncate(o.order);
        out.add_scaled(1.0, o);
        out
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        let mut out = self.truncate(o.order);
        out.add_scaled(-1.0, o);
        out
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        self.mul_jet(o)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

/// Inverse of a symmetric matrix of jets by Gauss–Jordan elimination with
/// pivoting on the constant terms.
pub fn invert_jet_matrix(n: usize, m: &[Jet]) -> Option<Vec<Jet>> {
    let space = m[0].space().clone();
    let order = m.iter().map(|j| j.order()).min().unwrap_or(0);
    let mut a: Vec<Jet> = m.iter().map(|j| j.truncate(order)).collect();
    let mut inv: Vec<Jet> = (0..n * n)
        .map(|k| Jet::constant(&space, order, if k / n == k % n { 1.0 } else { 0.0 }))
        .collect();
    let scale = m.iter().map(|j| j.value().abs()).fold(0.0, f64::max);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r1, &r2| a[r1 * n + col].value().abs().total_cmp(&a[r2 * n + col].value().abs()))
            .unwrap();
        if a[pivot * n + col].value().abs() <= 1e-14 * scale {
            return None;
        }
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                inv.swap(pivot * n + j, col * n + j);
            }
        }
        let p = a[col * n + col].recip();
        for j in 0..n {
            a[col * n + j] = &a[col * n + j] * &p;
            inv[col * n + j] = &inv[col * n + j] * &p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r * n + col].clone();
            if f.coeffs().iter().all(|&x| x == 0.0) {
                continue;
            }
            for j in 0..n {
                let da = &f * &a[col * n + j];
                let di = &f * &inv[col * n + j];
                a[r * n + j].add_scaled(-1.0, &da);
                inv[r * n + j].add_scaled(-1.0, &di);
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn vars(n: usize, order: usize, at: &[f64]) -> Vec<Jet> {
        let sp = JetSpace::get(n);
        (0..n).map(|v| Jet::variable(&sp, order, v, at[v])).collect()
    }

    #[test]
    fn monomial_counts_are_binomial() {
        let sp = JetSpace::get(3);
        // C(3 + d, d)
        assert_eq!((0..=4).map(|d| sp.len(d)).collect::<Vec<_>>(), vec![1, 4, 10, 20, 35]);
    }

    #[test]
    fn polynomial_partials_are_exact() {
        let x = vars(2, 4, &[0.5, -1.5]);
        // f = x^3 y^2
        let f = &(&x[0] * &x[0]) * &(&x[0] * &(&x[1] * &x[1]));
        let (a, b) = (0.5f64, -1.5f64);
        assert_relative_eq!(f.value(), a.powi(3) * b * b, epsilon = 1e-15);
        assert_relative_eq!(f.partial(&[1, 0]), 3.0 * a * a * b * b, epsilon = 1e-14);
        assert_relative_eq!(f.partial(&[1, 1]), 6.0 * a * a * b, epsilon = 1e-14);
        assert_relative_eq!(f.partial(&[2, 2]), 12.0 * a, epsilon = 1e-14);
        assert_relative_eq!(f.partial(&[3, 1]), 12.0 * b, epsilon = 1e-14);
    }

    #[test]
    fn elementary_functions_match_closed_forms() {
        let x = vars(1, 4, &[0.7]);
        let s = x[0].sin();
        let c = x[0].cos();
        let e = x[0].exp();
        let l = x[0].ln();
        for k in 0..=4u8 {
            let t = 0.7f64;
            assert_relative_eq!(
                s.partial(&[k]),
                [t.sin(), t.cos(), -t.sin(), -t.cos()][k as usize % 4],
                epsilon = 1e-13
            );
            assert_relative_eq!(
                c.partial(&[k]),
                [t.cos(), -t.sin(), -t.cos(), t.sin()][k as usize % 4],
                epsilon = 1e-13
            );
            assert_relative_eq!(e.partial(&[k]), t.exp(), epsilon = 1e-13);
        }
        assert_relative_eq!(l.partial(&[3]), 2.0 / 0.7f64.powi(3), epsilon = 1e-12);
        let one = &(&s * &s) + &(&c * &c);
        assert_relative_eq!(one.value(), 1.0, epsilon = 1e-15);
        assert!(one.coeffs()[1..].iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn derivative_commutes_with_partial() {
        let x = vars(2, 4, &[0.3, 0.2]);
        let f = (&(&x[0] * &x[1]).sin() * &x[0].exp()).div(&x[1].add_const(2.0));
        let fx = f.derivative(0);
        assert_eq!(fx.order(), 3);
        assert_relative_eq!(fx.partial(&[0, 2]), f.partial(&[1, 2]), epsilon = 1e-12);
        assert_relative_eq!(fx.derivative(1).value(), f.partial(&[1, 1]), epsilon = 1e-12);
    }

    #[test]
    fn jets_agree_with_central_differences() {
        let g = |a: f64, b: f64| (a * b).sin() * a.exp() / (b + 2.0) + (a * a + b).sqrt();
        let (a, b) = (0.3, 0.2);
        let x = vars(2, 3, &[a, b]);
        let f = &(&(&x[0] * &x[1]).sin() * &x[0].exp()).div(&x[1].add_const(2.0)) + &(&(&x[0] * &x[0]) + &x[1]).sqrt();
        let h = 1e-4;
        let fx = (g(a + h, b) - g(a - h, b)) / (2.0 * h);
        let fxy = (g(a + h, b + h) - g(a + h, b - h) - g(a - h, b + h) + g(a - h, b - h)) / (4.0 * h * h);
        let fyy = (g(a, b + h) - 2.0 * g(a, b) + g(a, b - h)) / (h * h);
        assert_relative_eq!(f.partial(&[1, 0]), fx, max_relative = 1e-6);
        assert_relative_eq!(f.partial(&[1, 1]), fxy, max_relative = 1e-6);
        assert_relative_eq!(f.partial(&[0, 2]), fyy, max_relative = 1e-5);
    }

    #[test]
    fn jet_matrix_inverse() {
        let x = vars(2, 3, &[0.1, 0.4]);
        let m = vec![x[0].exp(), &x[0] * &x[1], &x[0] * &x[1], x[1].cos().add_const(1.0)];
        let inv = invert_jet_matrix(2, &m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Jet::zero(x[0].space(), 3);
                for k in 0..2 {
                    acc.add_product(&m[i * 2 + k], &inv[k * 2 + j]);
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(acc.value(), want, epsilon = 1e-14);
                assert!(acc.coeffs()[1..].iter().all(|v| v.abs() < 1e-13));
            }
        }
    }

    #[test]
    #[should_panic]
    fn recip_of_zero_panics() {
        let sp = JetSpace::get(1);
        Jet::zero(&sp, 2).recip();
    }
}
