use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, rational_to_string, Rational};

pub const NCOEF: usize = 11;

/// The eleven coefficients `a_0 … a_10` at a fixed dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCoefficients", into = "RawCoefficients")]
pub struct BCoefficients {
    n: usize,
    a: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RawCoefficients {
    n: usize,
    #[serde(with = "crate::scalar::serde_rational_vec")]
    a: Vec<Rational>,
}

impl TryFrom<RawCoefficients> for BCoefficients {
    type Error = Error;

    fn try_from(raw: RawCoefficients) -> Result<Self> {
        BCoefficients::new(raw.n, raw.a)
    }
}

impl From<BCoefficients> for RawCoefficients {
    fn from(c: BCoefficients) -> Self {
        RawCoefficients { n: c.n, a: c.a }
    }
}

impl BCoefficients {
    pub fn new(n: usize, a: Vec<Rational>) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall { min: 3, got: n });
        }
        if a.len() != NCOEF {
            return Err(Error::BadDataLength(a.len(), NCOEF));
        }
        if a.iter().all(Zero::is_zero) {
            return Err(Error::ZeroCoefficients);
        }
        Ok(BCoefficients { n, a })
    }

    /// Parses a comma-separated list such as `"1, 0, -1/2, …"`.
    pub fn parse(n: usize, list: &str) -> Result<Self> {
        let a = list.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Self::new(n, a)
    }

    pub fn pure_riemann(n: usize) -> Result<Self> {
        let mut a = vec![Rational::zero(); NCOEF];
        a[0] = Rational::one();
        Self::new(n, a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self, i: usize) -> &Rational {
        &self.a[i]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.a
    }

    pub fn to_f64(&self) -> [f64; NCOEF] {
        let mut out = [0.0; NCOEF];
        for (o, x) in out.iter_mut().zip(&self.a) {
            *o = crate::scalar::Scalar::to_f64(x);
        }
        out
    }

    pub fn scaled(&self, s: &Rational) -> Result<Self> {
        Self::new(self.n, self.a.iter().map(|x| x * s).collect())
    }

    /// `μ·c1 + η·c2`, rejecting a zero result.
    pub fn linear(mu: &Rational, c1: &Self, eta: &Rational, c2: &Self) -> Result<Self> {
        if c1.n != c2.n {
            return Err(Error::DimMismatch(c1.n, c2.n));
        }
        let a: Vec<Rational> = c1.a.iter().zip(&c2.a).map(|(x, y)| mu * x + eta * y).collect();
        if a.iter().all(Zero::is_zero) {
            return Err(Error::ZeroCombination);
        }
        Self::new(c1.n, a)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("coefficients serialize")
    }
}

impl fmt::Display for BCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(rational_to_string).collect();
        write!(f, "n={} a=[{}]", self.n, parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn rejects_zero_and_small_dimension() {
        assert_eq!(
            BCoefficients::new(4, vec![Rational::zero(); 11]),
            Err(Error::ZeroCoefficients)
        );
        assert!(matches!(
            BCoefficients::pure_riemann(2),
            Err(Error::DimensionTooSmall { .. })
        ));
        assert!(BCoefficients::parse(3, "1,0").is_err());
    }

    #[test]
    fn json_uses_fraction_strings() {
        let c = BCoefficients::parse(4, "1,0,-1/2,1/2,0,-1/2,1/2,0,1/6,-1/6,0").unwrap();
        let v = c.to_json();
        assert_eq!(v["n"], 4);
        assert_eq!(v["a"][2], "-1/2");
        let back: BCoefficients = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
        assert!(
            serde_json::from_str::<BCoefficients>(r#"{"n":4,"a":["0","0","0","0","0","0","0","0","0","0","0"]}"#)
                .is_err()
        );
    }

    #[test]
    fn linear_combination() {
        let r = BCoefficients::pure_riemann(3).unwrap();
        assert_eq!(
            BCoefficients::linear(&rat(1, 1), &r, &rat(-1, 1), &r),
            Err(Error::ZeroCombination)
        );
        let two = BCoefficients::linear(&rat(1, 1), &r, &rat(1, 1), &r).unwrap();
        assert_eq!(two.a(0), &rat(2, 1));
    }
}
