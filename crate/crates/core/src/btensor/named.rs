//! Named coefficient sets: the classical curvature tensors as B-tensors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::coefficients::{BCoefficients, NCOEF};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TensorName {
    R,
    C,
    P,
    W,
    K,
    CStar,
    CPrime,
    PStar,
    WStar,
    WTilde,
    M,
    /// `𝓦_i`, `i = 0..9`.
    Wi(u8),
    /// `𝓦_i*`, `i = 0..9`.
    WiStar(u8),
    Tau,
}

impl TensorName {
    pub fn all() -> Vec<TensorName> {
        let mut v = vec![
            TensorName::R,
            TensorName::C,
            TensorName::P,
            TensorName::W,
            TensorName::K,
            TensorName::CStar,
            TensorName::CPrime,
            TensorName::PStar,
            TensorName::WStar,
            TensorName::WTilde,
            TensorName::M,
        ];
        for i in 0..10 {
            v.push(TensorName::Wi(i));
            v.push(TensorName::WiStar(i));
        }
        v.push(TensorName::Tau);
        v
    }

    /// Rows with no free parameters.
    pub fn fixed() -> Vec<TensorName> {
        Self::all().into_iter().filter(|t| t.params().is_empty()).collect()
    }

    /// Parameter names a row needs, in order.
    pub fn params(&self) -> &'static [&'static str] {
        match self {
            TensorName::CStar | TensorName::PStar => &["a0", "a2"],
            TensorName::CPrime => &["a0", "a2", "a8"],
            TensorName::WStar => &["a0", "b"],
            TensorName::WTilde => &["a0", "a2", "a5"],
            TensorName::Tau => &["a0", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9"],
            _ => &[],
        }
    }
}

impl fmt::Display for TensorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorName::R => write!(f, "R"),
            TensorName::C => write!(f, "C"),
            TensorName::P => write!(f, "P"),
            TensorName::W => write!(f, "W"),
            TensorName::K => write!(f, "K"),
            TensorName::CStar => write!(f, "C*"),
            TensorName::CPrime => write!(f, "C'"),
            TensorName::PStar => write!(f, "P*"),
            TensorName::WStar => write!(f, "W*"),
            TensorName::WTilde => write!(f, "W~"),
            TensorName::M => write!(f, "M"),
            TensorName::Wi(i) => write!(f, "W{i}"),
            TensorName::WiStar(i) => write!(f, "W{i}*"),
            TensorName::Tau => write!(f, "T"),
        }
    }
}

impl FromStr for TensorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let named = match t {
            "R" => TensorName::R,
            "C" => TensorName::C,
            "P" => TensorName::P,
            "W" => TensorName::W,
            "K" => TensorName::K,
            "C*" => TensorName::CStar,
            "C'" => TensorName::CPrime,
            "P*" => TensorName::PStar,
            "W*" => TensorName::WStar,
            "W~" | "W̃" | "Wtilde" => TensorName::WTilde,
            "M" => TensorName::M,
            "T" | "tau" | "τ" => TensorName::Tau,
            _ => {
                let body = t.strip_prefix('W').or_else(|| t.strip_prefix("W_"));
                let parsed = body.and_then(|b| {
                    let b = b.trim_start_matches('_');
                    let (digits, star) = match b.strip_suffix('*') {
                        Some(d) => (d, true),
                        None => (b, false),
                    };
                    match digits.parse::<u8>() {
                        Ok(i) if i <= 9 && digits.len() == 1 => {
                            Some(if star { TensorName::WiStar(i) } else { TensorName::Wi(i) })
                        }
                        _ => None,
                    }
                });
                return parsed.ok_or_else(|| Error::UnknownTensor(s.to_string()));
            }
        };
        Ok(named)
    }
}

/// Which of `a_2 … a_7` carry `−1/(n−1)` and `+1/(n−1)` in the 𝓦_i rows.
fn w_row(i: u8) -> (usize, usize) {
    match i {
        0 => (2, 6),
        1 => (2, 3),
        2 => (5, 6),
        3 => (3, 5),
        4 => (6, 7),
        5 => (3, 6),
        6 => (2, 7),
        7 => (2, 5),
        8 => (2, 4),
        9 => (4, 5),
        _ => unreachable!("W index out of range"),
    }
}

fn param(name: TensorName, params: &BTreeMap<String, Rational>, key: &str) -> Result<Rational> {
    params.get(key).cloned().ok_or_else(|| Error::MissingParam {
        tensor: name.to_string(),
        param: key.to_string(),
    })
}

/// Options that only affect the W* row.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RowOptions {
    /// Use the W* row exactly as tabulated (equal signs on `a_8` and `a_9`).
    pub wstar_verbatim: bool,
}

/// The coefficient row of `name` at dimension `n`.
pub fn catalog(name: TensorName, n: usize, params: &BTreeMap<String, Rational>) -> Result<BCoefficients> {
    catalog_with(name, n, params, RowOptions::default())
}

pub fn catalog_with(
    name: TensorName,
    n: usize,
    params: &BTreeMap<String, Rational>,
    opts: RowOptions,
) -> Result<BCoefficients> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { min: 3, got: n });
    }
    let ni = n as i64;
    let mut a = vec![Rational::zero(); NCOEF];
    let one = Rational::one();
    let inv_n1 = rat(1, ni - 1);
    let inv_n2 = rat(1, ni - 2);
    let p = |k: &str| param(name, params, k);
    match name {
        TensorName::R => a[0] = one,
        TensorName::C | TensorName::K => {
            a[0] = one;
            a[2] = -inv_n2.clone();
            a[3] = inv_n2.clone();
            a[5] = -inv_n2.clone();
            a[6] = inv_n2;
            if name == TensorName::C {
                let c = rat(1, (ni - 1) * (ni - 2));
                a[8] = c.clone();
                a[9] = -c;
            }
        }
        TensorName::P => {
            a[0] = one;
            a[2] = -inv_n1.clone();
            a[3] = inv_n1;
        }
        TensorName::W => {
            a[0] = one;
            let c = rat(1, ni * (ni - 1));
            a[8] = -c.clone();
            a[9] = c;
        }
        TensorName::M => {
            a[0] = one;
            let c = rat(1, 2 * (ni - 1));
            a[2] = -c.clone();
            a[3] = c.clone();
            a[5] = -c.clone();
            a[6] = c;
        }
        TensorName::CStar => {
            let (a0, a2) = (p("a0")?, p("a2")?);
            let c = (&a0 / rat(ni - 1, 1) + &a2 * rat(2, 1)) / rat(ni, 1);
            a[0] = a0;
            a[2] = a2.clone();
            a[3] = -a2.clone();
            a[5] = a2.clone();
            a[6] = -a2;
            a[8] = -c.clone();
            a[9] = c;
        }
        TensorName::CPrime => {
            let (a0, a2, a8) = (p("a0")?, p("a2")?, p("a8")?);
            a[0] = a0;
            a[2] = a2.clone();
            a[3] = -a2.clone();
            a[5] = a2.clone();
            a[6] = -a2;
            a[9] = -a8.clone();
            a[8] = a8;
        }
        TensorName::PStar => {
            let (a0, a2) = (p("a0")?, p("a2")?);
            let c = (&a0 / rat(ni - 1, 1) + &a2) / rat(ni, 1);
            a[0] = a0;
            a[2] = a2.clone();
            a[3] = -a2;
            a[8] = -c.clone();
            a[9] = c;
        }
        TensorName::WStar => {
            let (a0, b) = (p("a0")?, p("b")?);
            let c = (&a0 / rat(ni - 1, 1) + &b * rat(2, 1)) / rat(ni, 1);
            a[0] = a0;
            a[8] = if opts.wstar_verbatim { c.clone() } else { -c.clone() };
            a[9] = c;
        }
        TensorName::WTilde => {
            let (a0, a2, a5) = (p("a0")?, p("a2")?, p("a5")?);
            let c = (&a0 + rat(ni - 1, 1) * (&a2 + &a5)) / rat(ni * (ni - 1), 1);
            a[0] = a0;
            a[2] = a2.clone();
            a[3] = -a2;
            a[5] = a5.clone();
            a[6] = -a5;
            a[8] = -c.clone();
            a[9] = c;
        }
        TensorName::Wi(i) | TensorName::WiStar(i) => {
            if i > 9 {
                return Err(Error::UnknownTensor(name.to_string()));
            }
            let (minus, plus) = w_row(i);
            let sign = if matches!(name, TensorName::WiStar(_)) { -1 } else { 1 };
            a[0] = one;
            a[minus] = rat(-sign, ni - 1);
            a[plus] = rat(sign, ni - 1);
        }
        TensorName::Tau => {
            for (k, key) in ["a0", "", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9"]
                .iter()
                .enumerate()
            {
                if !key.is_empty() {
                    a[k] = p(key)?;
                }
            }
        }
    }
    BCoefficients::new(n, a)
}

/// Parses `name[:key=value,…]`, e.g. `C*:a0=1,a2=-1/3` or `W*:a0=1,b=2,verbatim=1`.
pub fn parse_named(spec: &str, n: usize) -> Result<BCoefficients> {
    let (name, rest) = match spec.split_once(':') {
        Some((a, b)) => (a, b),
        None => (spec, ""),
    };
    let name: TensorName = name.parse()?;
    let mut params = BTreeMap::new();
    let mut opts = RowOptions::default();
    for kv in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got `{kv}`")))?;
        let (k, v) = (k.trim(), v.trim());
        if k == "verbatim" {
            opts.wstar_verbatim = matches!(v, "1" | "true" | "yes");
            continue;
        }
        if !name.params().contains(&k) {
            return Err(Error::Parse(format!("tensor {name} has no parameter `{k}`")));
        }
        params.insert(k.to_string(), parse_rational(v)?);
    }
    catalog_with(name, n, &params, opts)
}

/// Generic parameter values used whenever a parametrized row must be
/// instantiated without user input.
pub fn default_params(name: TensorName) -> BTreeMap<String, Rational> {
    let mut m = BTreeMap::new();
    let defaults: [(&str, Rational); 10] = [
        ("a0", rat(1, 1)),
        ("a2", rat(1, 3)),
        ("a3", rat(-2, 7)),
        ("a4", rat(1, 5)),
        ("a5", rat(-1, 4)),
        ("a6", rat(3, 8)),
        ("a7", rat(-1, 9)),
        ("a8", rat(2, 11)),
        ("a9", rat(-1, 6)),
        ("b", rat(1, 2)),
    ];
    for (k, v) in defaults {
        if name.params().contains(&k) {
            m.insert(k.to_string(), v);
        }
    }
    m
}

/// Every row at dimension `n`, parametrized rows at [`default_params`].
pub fn all_rows(n: usize) -> Result<Vec<(TensorName, BCoefficients)>> {
    TensorName::all()
        .into_iter()
        .map(|t| catalog(t, n, &default_params(t)).map(|c| (t, c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(name: &str, n: usize) -> BCoefficients {
        parse_named(name, n).unwrap()
    }

    #[test]
    fn conformal_row_at_four() {
        let c = row("C", 4);
        let want = ["1", "0", "-1/2", "1/2", "0", "-1/2", "1/2", "0", "1/6", "-1/6", "0"];
        let want: Vec<Rational> = want.iter().map(|s| parse_rational(s).unwrap()).collect();
        assert_eq!(c.as_slice(), &want[..]);
    }

    #[test]
    fn riemann_and_m_rows() {
        assert_eq!(row("R", 6), BCoefficients::pure_riemann(6).unwrap());
        let m = row("M", 5);
        assert_eq!(m.a(0), &rat(1, 1));
        assert_eq!(m.a(2), &rat(-1, 8));
        assert_eq!(m.a(5), &rat(-1, 8));
        assert_eq!(m.a(3), &rat(1, 8));
        assert_eq!(m.a(6), &rat(1, 8));
        assert!(m.a(8).is_zero() && m.a(9).is_zero());
    }

    #[test]
    fn w_rows_have_opposite_stars() {
        for i in 0..10u8 {
            let w = catalog(TensorName::Wi(i), 4, &BTreeMap::new()).unwrap();
            let ws = catalog(TensorName::WiStar(i), 4, &BTreeMap::new()).unwrap();
            for k in 1..NCOEF {
                assert_eq!(w.a(k), &-ws.a(k).clone());
            }
        }
        // 𝓦_1 coincides with the projective row
        assert_eq!(row("W1", 5), row("P", 5));
    }

    #[test]
    fn name_parsing() {
        for t in TensorName::all() {
            assert_eq!(t.to_string().parse::<TensorName>().unwrap(), t);
        }
        assert_eq!("W_3*".parse::<TensorName>().unwrap(), TensorName::WiStar(3));
        assert!("W10".parse::<TensorName>().is_err());
        assert!("Q".parse::<TensorName>().is_err());
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(parse_named("C*:a0=1", 4), Err(Error::MissingParam { .. })));
        assert!(matches!(parse_named("C*:a0=1,zz=2", 4), Err(Error::Parse(_))));
        assert!(matches!(parse_named("R", 2), Err(Error::DimensionTooSmall { .. })));
        assert!(parse_named("C*:a0=1,a2=1/3", 4).is_ok());
    }

    #[test]
    fn wstar_sign_variants() {
        let fixed = row("W*:a0=1,b=1", 4);
        let verbatim = row("W*:a0=1,b=1,verbatim=1", 4);
        assert_eq!(fixed.a(8), &-fixed.a(9).clone());
        assert_eq!(verbatim.a(8), verbatim.a(9));
    }

    #[test]
    fn parametrized_row_classes() {
        use crate::btensor::profile::{classify, ClassId};
        let vals = ["-2", "-1", "0", "1/2", "1", "3"];
        for n in 3..=6i64 {
            for a0 in vals {
                for a2 in vals {
                    let (q0, q2) = (parse_rational(a0).unwrap(), parse_rational(a2).unwrap());
                    let flat = (&q0 + rat(n - 2, 1) * &q2).is_zero();
                    let cls = |s: &str| parse_named(s, n as usize).ok().map(|c| classify(&c).class);
                    if let Some(k) = cls(&format!("C*:a0={a0},a2={a2}")) {
                        assert_eq!(k, if flat { ClassId::Class1 } else { ClassId::Class3 }, "C* {a0} {a2}");
                    }
                    // a0 = 0 leaves only the r g∧g term
                    if let (false, Some(k)) = (q0.is_zero(), cls(&format!("W*:a0={a0},b={a2}"))) {
                        assert_eq!(
                            k,
                            if q2.is_zero() { ClassId::Class3 } else { ClassId::Class4 },
                            "W* {a0} {a2}"
                        );
                    }
                    for a5 in vals {
                        let q5 = parse_rational(a5).unwrap();
                        let Some(k) = cls(&format!("W~:a0={a0},a2={a2},a5={a5}")) else {
                            continue;
                        };
                        let class1 = q2 == q5 && flat;
                        assert_eq!(k, if class1 { ClassId::Class1 } else { ClassId::Class3 });
                        if !(&q0 - &q2 + rat(n - 1, 1) * &q5).is_zero() {
                            assert_eq!(k, ClassId::Class3);
                        }
                    }
                }
            }
            // vanishing of a0 − a2 + (n−1)a5 alone does not force class 1
            assert_eq!(classify(&row("W~:a0=1,a2=1,a5=0", n as usize)).class, ClassId::Class3);
        }
    }

    #[test]
    fn every_row_builds() {
        for n in 3..=6 {
            assert_eq!(all_rows(n).unwrap().len(), 32);
        }
    }
}
