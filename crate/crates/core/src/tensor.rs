//! Dense pointwise tensors and the metric-independent algebra on them:
//! slot permutation, weighted sums, metric traces, the Kulkarni–Nomizu
//! product, the action of a curvature operator `D·T`, the Tachibana tensor
//! `Q(A, T)` and the 1-form action `Π_X T`.
//!
//! Storage is row-major over index tuples with no symmetry compression.
//! Contravariant slots (if any) come first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarKind};

/// Relative tolerance used by zero checks when the caller does not pass one.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Valence {
    pub up: usize,
    pub down: usize,
}

impl Valence {
    pub const fn covariant(k: usize) -> Self {
        Valence { up: 0, down: k }
    }

    pub const fn rank(&self) -> usize {
        self.up + self.down
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<S: Scalar = f64> {
    dim: usize,
    valence: Valence,
    data: Vec<S>,
}

/// Iterates all index tuples of `rank` slots over `0..dim` in row-major order.
#[derive(Debug, Clone)]
pub struct IndexTuples {
    dim: usize,
    current: Vec<usize>,
    done: bool,
}

impl IndexTuples {
    pub fn new(dim: usize, rank: usize) -> Self {
        IndexTuples {
            dim,
            current: vec![0; rank],
            done: dim == 0 && rank > 0,
        }
    }
}

impl Iterator for IndexTuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut pos = self.current.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.current[pos] += 1;
            if self.current[pos] < self.dim {
                break;
            }
            self.current[pos] = 0;
        }
        Some(out)
    }
}

#[inline]
pub(crate) fn flat_index(dim: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * dim + i)
}

#[inline]
pub(crate) fn unflatten(dim: usize, mut flat: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
}

impl<S: Scalar> Tensor<S> {
    pub fn new(dim: usize, valence: Valence, data: Vec<S>) -> Result<Self> {
        let expected = dim.pow(valence.rank() as u32);
        if data.len() != expected {
            return Err(Error::BadDataLength(data.len(), expected));
        }
        Ok(Tensor { dim, valence, data })
    }

    pub fn covariant(dim: usize, k: usize, data: Vec<S>) -> Result<Self> {
        Self::new(dim, Valence::covariant(k), data)
    }

    pub fn zeros(dim: usize, valence: Valence) -> Self {
        Tensor {
            dim,
            valence,
            data: vec![S::zero(); dim.pow(valence.rank() as u32)],
        }
    }

    /// A rank-0 tensor.
    pub fn scalar(dim: usize, value: S) -> Self {
        Tensor {
            dim,
            valence: Valence::covariant(0),
            data: vec![value],
        }
    }

    pub fn from_fn(dim: usize, valence: Valence, mut f: impl FnMut(&[usize]) -> S) -> Self {
        let data = IndexTuples::new(dim, valence.rank()).map(|idx| f(&idx)).collect();
        Tensor { dim, valence, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, Valence::covariant(2), |i| {
            if i[0] == i[1] {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valence(&self) -> Valence {
        self.valence
    }

    pub fn rank(&self) -> usize {
        self.valence.rank()
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        S::KIND
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn into_data(self) -> Vec<S> {
        self.data
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        debug_assert_eq!(idx.len(), self.rank());
        &self.data[flat_index(self.dim, idx)]
    }

    /// Value of a rank-0 tensor.
    pub fn as_scalar(&self) -> &S {
        &self.data[0]
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// `‖self‖_max ≤ tol · reference`. With a zero reference the check is absolute.
    pub fn is_zero_within(&self, reference: f64, tol: f64) -> bool {
        let scale = if reference > 0.0 { reference } else { 1.0 };
        self.max_norm() <= tol * scale
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tensor<T> {
        Tensor {
            dim: self.dim,
            valence: self.valence,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Tensor<f64> {
        self.map(|x| x.to_f64())
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        if self.valence != other.valence {
            return Err(Error::ShapeMismatch(format!(
                "valence {:?} vs {:?}",
                self.valence, other.valence
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Tensor {
            dim: self.dim,
            valence: self.valence,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Tensor {
            dim: self.dim,
            valence: self.valence,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// Componentwise (coordinate) inner product `Σ T_I U_I`.
    pub fn frobenius_dot(&self, other: &Self) -> Result<S> {
        self.check_same_shape(other)?;
        let mut acc = S::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            acc += a.clone() * b.clone();
        }
        Ok(acc)
    }

    /// Outer product, slots of `self` first.
    pub fn tensor_product(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(a.clone() * b.clone());
            }
        }
        Ok(Tensor {
            dim: self.dim,
            valence: Valence {
                up: self.valence.up + other.valence.up,
                down: self.valence.down + other.valence.down,
            },
            data,
        })
    }

    fn require_covariant(&self) -> Result<()> {
        if self.valence.up != 0 {
            return Err(Error::ShapeMismatch(format!(
                "expected a covariant tensor, got valence {:?}",
                self.valence
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "valence": [self.valence.up, self.valence.down],
            "data": self.data.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let dim = v["dim"]
            .as_u64()
            .ok_or_else(|| Error::Parse("tensor: missing dim".into()))? as usize;
        let val = v["valence"]
            .as_array()
            .ok_or_else(|| Error::Parse("tensor: missing valence".into()))?;
        if val.len() != 2 {
            return Err(Error::Parse("tensor: valence must be [up, down]".into()));
        }
        let valence = Valence {
            up: val[0].as_u64().unwrap_or(0) as usize,
            down: val[1].as_u64().unwrap_or(0) as usize,
        };
        let data = v["data"]
            .as_array()
            .ok_or_else(|| Error::Parse("tensor: missing data".into()))?
            .iter()
            .map(S::from_json)
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, valence, data)
    }
}

impl<S: Scalar> Serialize for Tensor<S> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Tensor<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Tensor::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Metric at a point together with its inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric<S: Scalar = f64> {
    g: Tensor<S>,
    g_inv: Tensor<S>,
}

impl<S: Scalar> Metric<S> {
    /// Builds the metric from its covariant components, computing the inverse
    /// by Gauss–Jordan elimination.
    pub fn new(g: Tensor<S>) -> Result<Self> {
        if g.valence != Valence::covariant(2) {
            return Err(Error::ShapeMismatch("metric must be a (0,2) tensor".into()));
        }
        let n = g.dim;
        for i in 0..n {
            for j in 0..i {
                let a = g.get(&[i, j]);
                let b = g.get(&[j, i]);
                if S::KIND == ScalarKind::Rational {
                    if a != b {
                        return Err(Error::NotSymmetric);
                    }
                } else if (a.to_f64() - b.to_f64()).abs() > 1e-12 * (1.0 + a.magnitude().max(b.magnitude())) {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let inv = invert(n, g.data())?;
        let g_inv = Tensor {
            dim: n,
            valence: Valence { up: 2, down: 0 },
            data: inv,
        };
        Ok(Metric { g, g_inv })
    }

    /// Pairs given components with a given inverse after checking `g·g_inv = I`.
    pub fn from_parts(g: Tensor<S>, g_inv: Tensor<S>) -> Result<Self> {
        let n = g.dim;
        if g_inv.dim != n || g_inv.rank() != 2 || g.rank() != 2 {
            return Err(Error::ShapeMismatch("metric parts must be n×n".into()));
        }
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = S::zero();
                for k in 0..n {
                    acc += g.get(&[i, k]).clone() * g_inv.get(&[k, j]).clone();
                }
                if i == j {
                    acc -= S::one();
                }
                if S::KIND == ScalarKind::Rational && acc.is_nonzero() {
                    return Err(Error::BadInverse(acc.magnitude()));
                }
                worst = worst.max(acc.magnitude());
            }
        }
        if worst > 1e-12 {
            return Err(Error::BadInverse(worst));
        }
        let g_inv = Tensor {
            dim: n,
            valence: Valence { up: 2, down: 0 },
            data: g_inv.data,
        };
        Ok(Metric { g, g_inv })
    }

    pub fn dim(&self) -> usize {
        self.g.dim
    }

    pub fn g(&self) -> &Tensor<S> {
        &self.g
    }

    pub fn g_inv(&self) -> &Tensor<S> {
        &self.g_inv
    }

    #[inline]
    pub fn inv(&self, a: usize, b: usize) -> &S {
        &self.g_inv.data[a * self.g.dim + b]
    }

    /// Metric pairing `g^{i1 j1}⋯g^{ik jk} T_I U_J` of two covariant tensors.
    pub fn pairing(&self, t: &Tensor<S>, u: &Tensor<S>) -> Result<S> {
        t.check_same_shape(u)?;
        t.require_covariant()?;
        let n = self.dim();
        // raise every slot of u, then contract componentwise
        let mut raised = u.data.clone();
        let k = u.rank();
        let stride: Vec<usize> = (0..k).map(|m| n.pow((k - 1 - m) as u32)).collect();
        for (m, &st) in stride.iter().enumerate() {
            let mut next = vec![S::zero(); raised.len()];
            let mut idx = vec![0; k];
            for (flat, slot) in next.iter_mut().enumerate() {
                unflatten(n, flat, &mut idx);
                let base = flat - idx[m] * st;
                let mut acc = S::zero();
                for b in 0..n {
                    acc += self.inv(idx[m], b).clone() * raised[base + b * st].clone();
                }
                *slot = acc;
            }
            raised = next;
        }
        let mut acc = S::zero();
        for (a, b) in t.data.iter().zip(&raised) {
            acc += a.clone() * b.clone();
        }
        Ok(acc)
    }
}

/// Inverse of a row-major n×n matrix with partial pivoting.
pub(crate) fn invert<S: Scalar>(n: usize, m: &[S]) -> Result<Vec<S>> {
    let mut a: Vec<S> = m.to_vec();
    let mut inv: Vec<S> = Tensor::<S>::identity(n).into_data();
    let scale = m.iter().map(|x| x.magnitude()).fold(0.0, f64::max);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r1, &r2| {
                a[r1 * n + col]
                    .pivot_weight()
                    .total_cmp(&a[r2 * n + col].pivot_weight())
            })
            .unwrap();
        let p = a[pivot * n + col].clone();
        let singular = match S::KIND {
            ScalarKind::Rational => p.is_zero(),
            ScalarKind::Float64 => p.magnitude() <= 1e-14 * scale.max(f64::MIN_POSITIVE),
        };
        if singular {
            return Err(Error::SingularMetric);
        }
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                inv.swap(pivot * n + j, col * n + j);
            }
        }
        for j in 0..n {
            a[col * n + j] = a[col * n + j].clone() / p.clone();
            inv[col * n + j] = inv[col * n + j].clone() / p.clone();
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r * n + col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let aj = a[col * n + j].clone();
                let ij = inv[col * n + j].clone();
                a[r * n + j] -= f.clone() * aj;
                inv[r * n + j] -= f.clone() * ij;
            }
        }
    }
    Ok(inv)
}

/// `out[i_{σ(1)},…,i_{σ(k)}] = T[i_1,…,i_k]`, with 0-based `sigma`.
pub fn permute<S: Scalar>(t: &Tensor<S>, sigma: &[usize]) -> Result<Tensor<S>> {
    let k = t.rank();
    let mut seen = vec![false; k];
    if sigma.len() != k || sigma.iter().any(|&s| s >= k || std::mem::replace(&mut seen[s], true)) {
        return Err(Error::BadPermutation(sigma.to_vec(), k));
    }
    t.require_covariant()?;
    let n = t.dim;
    let mut data = vec![S::zero(); t.data.len()];
    let mut src = vec![0; k];
    let mut dst = vec![0; k];
    for (flat, v) in t.data.iter().enumerate() {
        unflatten(n, flat, &mut src);
        for m in 0..k {
            dst[sigma[m]] = src[m];
        }
        data[flat_index(n, &dst)] = v.clone();
    }
    Ok(Tensor {
        dim: n,
        valence: t.valence,
        data,
    })
}

/// Componentwise weighted sum `Σ c_m T_m`.
pub fn linear_combine<S: Scalar>(terms: &[(S, &Tensor<S>)]) -> Result<Tensor<S>> {
    let (first_c, first) = terms.first().ok_or(Error::EmptyCombination)?;
    let mut acc = first.scale(first_c);
    for (c, t) in &terms[1..] {
        acc.check_same_shape(t)?;
        for (a, b) in acc.data.iter_mut().zip(&t.data) {
            *a += c.clone() * b.clone();
        }
    }
    Ok(acc)
}

/// Trace over slots `i < j` (0-based) with the inverse metric.
pub fn metric_contract<S: Scalar>(t: &Tensor<S>, i: usize, j: usize, m: &Metric<S>) -> Result<Tensor<S>> {
    t.require_covariant()?;
    let k = t.rank();
    if k < 2 || i >= j || j >= k {
        return Err(Error::SlotOutOfRange(i, j, k));
    }
    if t.dim != m.dim() {
        return Err(Error::DimMismatch(t.dim, m.dim()));
    }
    let n = t.dim;
    let mut full = vec![0; k];
    let out = Tensor::from_fn(n, Valence::covariant(k - 2), |rest| {
        let mut r = rest.iter();
        for (s, slot) in full.iter_mut().enumerate() {
            if s != i && s != j {
                *slot = *r.next().unwrap();
            }
        }
        let mut acc = S::zero();
        for a in 0..n {
            for b in 0..n {
                let gab = m.inv(a, b);
                if gab.is_zero() {
                    continue;
                }
                full[i] = a;
                full[j] = b;
                acc += gab.clone() * t.get(&full).clone();
            }
        }
        acc
    });
    Ok(out)
}

/// `(A∧E)_{ijkl} = A_il E_jk + A_jk E_il − A_ik E_jl − A_jl E_ik`.
pub fn kulkarni_nomizu<S: Scalar>(a: &Tensor<S>, e: &Tensor<S>) -> Result<Tensor<S>> {
    if a.dim != e.dim {
        return Err(Error::DimMismatch(a.dim, e.dim));
    }
    if a.valence != Valence::covariant(2) || e.valence != Valence::covariant(2) {
        return Err(Error::ShapeMismatch("Kulkarni–Nomizu needs two (0,2) tensors".into()));
    }
    let n = a.dim;
    let at = |x: usize, y: usize| a.data[x * n + y].clone();
    let et = |x: usize, y: usize| e.data[x * n + y].clone();
    Ok(Tensor::from_fn(n, Valence::covariant(4), |ix| {
        let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
        at(i, l) * et(j, k) + at(j, k) * et(i, l) - at(i, k) * et(j, l) - at(j, l) * et(i, k)
    }))
}

/// `G = ½ g∧g`, i.e. `G_{ijkl} = g_il g_jk − g_ik g_jl`.
pub fn metric_g_tensor<S: Scalar>(m: &Metric<S>) -> Tensor<S> {
    let g = m.g();
    let n = g.dim;
    Tensor::from_fn(n, Valence::covariant(4), |ix| {
        let gg = |x: usize, y: usize| g.data[x * n + y].clone();
        gg(ix[0], ix[3]) * gg(ix[1], ix[2]) - gg(ix[0], ix[2]) * gg(ix[1], ix[3])
    })
}

/// Endomorphism coefficients `E[x][y][c][a] = g^{ab} D[x,y,c,b]` of a (0,4) tensor.
fn raise_last<S: Scalar>(d: &Tensor<S>, m: &Metric<S>) -> Vec<S> {
    let n = d.dim;
    let mut out = vec![S::zero(); n.pow(4)];
    for base in 0..n * n * n {
        for a in 0..n {
            let mut acc = S::zero();
            for b in 0..n {
                let gab = m.inv(a, b);
                if gab.is_zero() {
                    continue;
                }
                acc += gab.clone() * d.data[base * n + b].clone();
            }
            out[base * n + a] = acc;
        }
    }
    out
}

/// Applies a family of endomorphisms `H(x,y)` (given by `h[x][y][c][a]`,
/// image of basis vector `c` has component `a`) to a (0,k) tensor as a
/// derivation: `out[I, x, y] = −Σ_m Σ_a h[x,y,i_m,a] T[…a at m…]`.
fn derivation_action<S: Scalar>(h: &[S], t: &Tensor<S>) -> Tensor<S> {
    let n = t.dim;
    let k = t.rank();
    let nk = t.data.len();
    let mut data = vec![S::zero(); nk * n * n];
    let mut idx = vec![0; k];
    let strides: Vec<usize> = (0..k).map(|m| n.pow((k - 1 - m) as u32)).collect();
    for tflat in 0..nk {
        unflatten(n, tflat, &mut idx);
        for x in 0..n {
            for y in 0..n {
                let hxy = &h[(x * n + y) * n * n..(x * n + y + 1) * n * n];
                let mut acc = S::zero();
                for (m, &st) in strides.iter().enumerate() {
                    let c = idx[m];
                    let base = tflat - c * st;
                    for a in 0..n {
                        let coef = &hxy[c * n + a];
                        if coef.is_zero() {
                            continue;
                        }
                        acc -= coef.clone() * t.data[base + a * st].clone();
                    }
                }
                data[(tflat * n + x) * n + y] = acc;
            }
        }
    }
    Tensor {
        dim: n,
        valence: Valence::covariant(k + 2),
        data,
    }
}

/// `(D·T)[I, x, y] = −Σ_m g^{ab} D[x,y,i_m,b] T[…a at m…]`.
pub fn curvature_dot<S: Scalar>(d: &Tensor<S>, t: &Tensor<S>, m: &Metric<S>) -> Result<Tensor<S>> {
    if d.dim != t.dim {
        return Err(Error::DimMismatch(d.dim, t.dim));
    }
    if d.dim != m.dim() {
        return Err(Error::DimMismatch(d.dim, m.dim()));
    }
    if d.valence != Valence::covariant(4) {
        return Err(Error::ShapeMismatch("curvature operator must be (0,4)".into()));
    }
    t.require_covariant()?;
    if t.rank() == 0 {
        // the operator acts on scalars as zero
        return Ok(Tensor::zeros(t.dim, Valence::covariant(2)));
    }
    let h = raise_last(d, m);
    Ok(derivation_action(&h, t))
}

/// `Q(A,T)[I, x, y] = Σ_m ( A[x,i_m] T[…y at m…] − A[y,i_m] T[…x at m…] )`.
pub fn q_operator<S: Scalar>(a: &Tensor<S>, t: &Tensor<S>) -> Result<Tensor<S>> {
    if a.dim != t.dim {
        return Err(Error::DimMismatch(a.dim, t.dim));
    }
    if a.valence != Valence::covariant(2) {
        return Err(Error::ShapeMismatch("Q(A,T) needs a (0,2) tensor A".into()));
    }
    t.require_covariant()?;
    let n = t.dim;
    if t.rank() == 0 {
        return Ok(Tensor::zeros(n, Valence::covariant(2)));
    }
    // (X∧_A Y) e_c = A(Y,e_c) X − A(X,e_c) Y, so h[x,y,c,a] = A[y,c]δ_{a x} − A[x,c]δ_{a y}
    let mut h = vec![S::zero(); n.pow(4)];
    for x in 0..n {
        for y in 0..n {
            for c in 0..n {
                let base = ((x * n + y) * n + c) * n;
                h[base + x] += a.data[y * n + c].clone();
                h[base + y] -= a.data[x * n + c].clone();
            }
        }
    }
    Ok(derivation_action(&h, t))
}

/// `(Π_X T)[I, x] = −Σ_m Π[i_m] T[…x at m…]`.
pub fn oneform_action<S: Scalar>(pi: &Tensor<S>, t: &Tensor<S>) -> Result<Tensor<S>> {
    if pi.dim != t.dim {
        return Err(Error::DimMismatch(pi.dim, t.dim));
    }
    if pi.valence != Valence::covariant(1) {
        return Err(Error::ShapeMismatch("1-form must be (0,1)".into()));
    }
    t.require_covariant()?;
    let n = t.dim;
    let k = t.rank();
    let strides: Vec<usize> = (0..k).map(|m| n.pow((k - 1 - m) as u32)).collect();
    let mut idx = vec![0; k];
    let mut data = vec![S::zero(); t.data.len() * n];
    for tflat in 0..t.data.len() {
        unflatten(n, tflat, &mut idx);
        for x in 0..n {
            let mut acc = S::zero();
            for (m, &st) in strides.iter().enumerate() {
                let c = idx[m];
                let p = &pi.data[c];
                if p.is_zero() {
                    continue;
                }
                acc -= p.clone() * t.data[tflat - c * st + x * st].clone();
            }
            data[tflat * n + x] = acc;
        }
    }
    Ok(Tensor {
        dim: n,
        valence: Valence::covariant(k + 1),
        data,
    })
}

/// Max-norm scan of the generalized-curvature-tensor identities:
/// antisymmetry in (1,2), antisymmetry in (3,4), pair symmetry and first Bianchi.
/// Returns the four worst absolute violations in that order.
pub fn gct_violations<S: Scalar>(d: &Tensor<S>) -> [f64; 4] {
    let n = d.dim;
    let mut worst = [0.0f64; 4];
    let v = |i: usize, j: usize, k: usize, l: usize| d.get(&[i, j, k, l]).clone();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let x = v(i, j, k, l);
                    worst[0] = worst[0].max((x.clone() + v(j, i, k, l)).magnitude());
                    worst[1] = worst[1].max((x.clone() + v(i, j, l, k)).magnitude());
                    worst[2] = worst[2].max((x.clone() - v(k, l, i, j)).magnitude());
                    worst[3] = worst[3].max((x + v(j, k, i, l) + v(k, i, j, l)).magnitude());
                }
            }
        }
    }
    worst
}
