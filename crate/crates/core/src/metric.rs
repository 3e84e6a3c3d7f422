//! Metric fields: component functions evaluated as jets at admissible points.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{Jet, JetSpace};

pub trait MetricField: Send + Sync {
    fn name(&self) -> String;

    fn dim(&self) -> usize;

    fn is_admissible(&self, p: &[f64]) -> bool;

    /// `g_ij` (only called with `i ≤ j`) in terms of the coordinate jets `x`.
    fn component(&self, i: usize, j: usize, x: &[Jet]) -> Jet;

    /// All `n²` components as jets of the given order around `p`.
    fn jets_at(&self, p: &[f64], order: usize) -> Result<Vec<Jet>> {
        let n = self.dim();
        if p.len() != n {
            return Err(Error::DimMismatch(n, p.len()));
        }
        if !self.is_admissible(p) {
            return Err(Error::InadmissiblePoint(p.to_vec(), self.name()));
        }
        let space = JetSpace::get(n);
        let x: Vec<Jet> = (0..n).map(|v| Jet::variable(&space, order, v, p[v])).collect();
        let mut out: Vec<Option<Jet>> = vec![None; n * n];
        for i in 0..n {
            for j in i..n {
                let c = self.component(i, j, &x);
                out[j * n + i] = Some(c.clone());
                out[i * n + j] = Some(c);
            }
        }
        Ok(out.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Point values `g_ij(p)`.
    fn values_at(&self, p: &[f64]) -> Result<Vec<f64>> {
        Ok(self.jets_at(p, 0)?.iter().map(Jet::value).collect())
    }
}

type ComponentFn = dyn Fn(usize, usize, &[Jet]) -> Jet + Send + Sync;
type DomainFn = dyn Fn(&[f64]) -> bool + Send + Sync;

/// A metric given by closures.
#[derive(Clone)]
pub struct FnMetric {
    name: String,
    dim: usize,
    component: Arc<ComponentFn>,
    domain: Arc<DomainFn>,
}

impl FnMetric {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        component: impl Fn(usize, usize, &[Jet]) -> Jet + Send + Sync + 'static,
        domain: impl Fn(&[f64]) -> bool + Send + Sync + 'static,
    ) -> Self {
        FnMetric {
            name: name.into(),
            dim,
            component: Arc::new(component),
            domain: Arc::new(domain),
        }
    }
}

impl fmt::Debug for FnMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnMetric")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish()
    }
}

impl MetricField for FnMetric {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn is_admissible(&self, p: &[f64]) -> bool {
        (self.domain)(p)
    }

    fn component(&self, i: usize, j: usize, x: &[Jet]) -> Jet {
        (self.component)(i, j, x)
    }
}

/// `Σ coef · x^exps`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Polynomial {
    pub terms: Vec<(f64, Vec<u32>)>,
}

impl Polynomial {
    pub fn constant(c: f64) -> Self {
        Polynomial {
            terms: vec![(c, vec![])],
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| c * e.iter().zip(x).map(|(&k, &xv)| xv.powi(k as i32)).product::<f64>())
            .sum()
    }

    pub fn eval_jet(&self, x: &[Jet]) -> Jet {
        let mut out = Jet::zero(x[0].space(), x[0].order());
        for (c, e) in &self.terms {
            let mut term = Jet::constant(x[0].space(), x[0].order(), *c);
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = &term * &x[v].powi(k);
                }
            }
            out.add_scaled(1.0, &term);
        }
        out
    }
}

/// Metric with polynomial components, stored for `i ≤ j` in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialMetric {
    pub name: String,
    pub dim: usize,
    pub upper: Vec<Polynomial>,
    /// Points with `|x_v| > bound` are treated as inadmissible.
    #[serde(default)]
    pub bound: Option<f64>,
}

impl PolynomialMetric {
    pub fn new(name: impl Into<String>, dim: usize, upper: Vec<Polynomial>) -> Result<Self> {
        let expected = dim * (dim + 1) / 2;
        if upper.len() != expected {
            return Err(Error::BadDataLength(upper.len(), expected));
        }
        Ok(PolynomialMetric {
            name: name.into(),
            dim,
            upper,
            bound: None,
        })
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * self.dim - i * (i + 1) / 2 + j
    }

    pub fn poly(&self, i: usize, j: usize) -> &Polynomial {
        &self.upper[self.slot(i, j)]
    }
}

impl MetricField for PolynomialMetric {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn is_admissible(&self, p: &[f64]) -> bool {
        if let Some(b) = self.bound {
            if p.iter().any(|x| x.abs() > b) {
                return false;
            }
        }
        let n = self.dim;
        let g: Vec<f64> = (0..n * n).map(|k| self.poly(k / n, k % n).eval(p)).collect();
        crate::tensor::invert(n, &g).is_ok()
    }

    fn component(&self, i: usize, j: usize, x: &[Jet]) -> Jet {
        self.poly(i, j).eval_jet(x)
    }
}

/// JSON metric description: `{name, dim, kind: builtin|polynomial, params}`.
///
/// For `builtin`, `params` is a list of strings forwarded to the catalog
/// (`["3", "1"]` for `sphere:3:1`). For `polynomial`, `params` is
/// `{"components": [[[coef, [e1, …, en]], …], …]}` over `i ≤ j`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricSpec {
    pub name: String,
    #[serde(default)]
    pub dim: Option<usize>,
    pub kind: MetricKind,
    #[serde(default)]
    pub params: serde_json::Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Builtin,
    Polynomial,
}

impl MetricSpec {
    pub fn build(&self) -> Result<Arc<dyn MetricField>> {
        match self.kind {
            MetricKind::Builtin => {
                let args: Vec<String> = match &self.params {
                    serde_json::Value::Null => vec![],
                    serde_json::Value::Array(a) => a
                        .iter()
                        .map(|v| match v {
                            serde_json::Value::String(s) => s.clone(),
                            other => other.to_string(),
                        })
                        .collect(),
                    other => return Err(Error::Parse(format!("builtin params must be a list, got {other}"))),
                };
                let mut spec = self.name.clone();
                for a in args {
                    spec.push(':');
                    spec.push_str(&a);
                }
                let m = crate::catalog::get(&spec)?;
                if let Some(d) = self.dim {
                    if d != m.field.dim() {
                        return Err(Error::DimMismatch(d, m.field.dim()));
                    }
                }
                Ok(m.field)
            }
            MetricKind::Polynomial => {
                let dim = self
                    .dim
                    .ok_or_else(|| Error::Parse("polynomial metric needs dim".into()))?;
                let comps: Vec<Vec<(f64, Vec<u32>)>> = serde_json::from_value(self.params["components"].clone())?;
                let upper = comps.into_iter().map(|terms| Polynomial { terms }).collect();
                Ok(Arc::new(PolynomialMetric::new(self.name.clone(), dim, upper)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_poly(n: usize) -> PolynomialMetric {
        let mut upper = Vec::new();
        for i in 0..n {
            for j in i..n {
                upper.push(if i == j {
                    let mut e = vec![0; n];
                    e[0] = 2;
                    Polynomial {
                        terms: vec![(1.0, vec![]), (0.5, e)],
                    }
                } else {
                    Polynomial::default()
                });
            }
        }
        PolynomialMetric::new("diag", n, upper).unwrap()
    }

    #[test]
    fn polynomial_metric_components() {
        let m = diag_poly(3);
        let g = m.values_at(&[2.0, 0.0, 0.0]).unwrap();
        assert_eq!(g, vec![3.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 3.0]);
        let jets = m.jets_at(&[2.0, 0.0, 0.0], 2).unwrap();
        assert_eq!(jets[4].partial(&[1, 0, 0]), 2.0);
        assert_eq!(jets[4].partial(&[2, 0, 0]), 1.0);
    }

    #[test]
    fn wrong_length_and_bounds() {
        assert!(PolynomialMetric::new("x", 3, vec![]).is_err());
        let mut m = diag_poly(3);
        m.bound = Some(1.0);
        assert!(matches!(
            m.jets_at(&[2.0, 0.0, 0.0], 1),
            Err(Error::InadmissiblePoint(..))
        ));
        assert!(matches!(m.jets_at(&[0.0, 0.0], 1), Err(Error::DimMismatch(3, 2))));
    }

    #[test]
    fn spec_round_trip() {
        let spec: MetricSpec = serde_json::from_str(
            r#"{"name":"p","dim":3,"kind":"polynomial","params":{"components":[
                [[1.0,[]]],[],[],[[1.0,[]]],[],[[1.0,[]],[0.1,[1,0,0]]]]}}"#,
        )
        .unwrap();
        let m = spec.build().unwrap();
        assert_eq!(m.values_at(&[1.0, 0.0, 0.0]).unwrap()[8], 1.1);
        let s = serde_json::to_string(&spec).unwrap();
        let again: MetricSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(again.kind, MetricKind::Polynomial);
    }
}
