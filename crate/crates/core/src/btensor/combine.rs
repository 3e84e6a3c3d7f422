//! Class of a linear combination `μ B̄ + η B̃` predicted from the classes of
//! the two members.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::coefficients::BCoefficients;
use super::profile::{class1_relations, class2_relations, contraction_profile, ClassId};
use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};

/// Condition deciding whether two class-2 members combine into class 1:
/// `a8+a9+a10 = 0`, `a0 + (n−1)(n−2) a9 = 0`, `a2 = (n−1)(a9+a10)` on the
/// combined coefficients.
pub fn condition_c1(combined: &BCoefficients) -> bool {
    let a = |i| combined.a(i).clone();
    let n = combined.n() as i64;
    (a(8) + a(9) + a(10)).is_zero()
        && (a(0) + rat((n - 1) * (n - 2), 1) * a(9)).is_zero()
        && a(2) == rat(n - 1, 1) * (a(9) + a(10))
}

/// Condition deciding whether two class-3 members combine into class 1:
/// the combined coefficients satisfy the class-2 relations (all `p` vanish).
pub fn condition_c2(combined: &BCoefficients) -> bool {
    class2_relations(combined)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinationPrediction {
    pub first: ClassId,
    pub second: ClassId,
    pub predicted: ClassId,
}

/// Predicted class of `μ c1 + η c2` from the case table.
pub fn predict_combination(
    c1: &BCoefficients,
    c2: &BCoefficients,
    mu: &Rational,
    eta: &Rational,
) -> Result<CombinationPrediction> {
    let combined = BCoefficients::linear(mu, c1, eta, c2)?;
    let p1 = contraction_profile(c1);
    let p2 = contraction_profile(c2);
    let (k1, k2) = (p1.class(), p2.class());
    use ClassId::*;
    let predicted = if mu.is_zero() {
        k2
    } else if eta.is_zero() {
        k1
    } else {
        match (k1, k2) {
            (Class1, k) | (k, Class1) => k,
            (Class2, Class2) => {
                if condition_c1(&combined) {
                    Class1
                } else {
                    Class2
                }
            }
            (Class3, Class3) => {
                if condition_c2(&combined) {
                    Class1
                } else {
                    Class3
                }
            }
            (Class2, Class3) | (Class3, Class2) => Class4,
            // the profile is linear in the coefficients
            (Class4, _) | (_, Class4) => {
                let lin = p1.combine(mu, &p2, eta);
                match (k1, k2) {
                    (Class4, Class2) | (Class2, Class4) => {
                        if lin.all_r_zero() {
                            Class3
                        } else {
                            Class4
                        }
                    }
                    (Class4, Class3) | (Class3, Class4) => {
                        if lin.all_p_zero() {
                            Class2
                        } else {
                            Class4
                        }
                    }
                    _ => lin.class(),
                }
            }
        }
    };
    Ok(CombinationPrediction {
        first: k1,
        second: k2,
        predicted,
    })
}

/// `μ c1 + η c2` together with its predicted class.
pub fn combine(
    c1: &BCoefficients,
    c2: &BCoefficients,
    mu: &Rational,
    eta: &Rational,
) -> Result<(BCoefficients, ClassId)> {
    if c1.n() != c2.n() {
        return Err(Error::DimMismatch(c1.n(), c2.n()));
    }
    let combined = BCoefficients::linear(mu, c1, eta, c2)?;
    let pred = predict_combination(c1, c2, mu, eta)?;
    Ok((combined, pred.predicted))
}

/// Whether `combined` satisfies the class-1 relations; exposed for diagnostics.
pub fn is_class1_by_relations(combined: &BCoefficients) -> bool {
    class1_relations(combined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::btensor::named::parse_named;
    use crate::btensor::profile::classify;

    fn row(s: &str, n: usize) -> BCoefficients {
        parse_named(s, n).unwrap()
    }

    #[test]
    fn class1_pair_stays_class1() {
        let c = row("C", 4);
        let c2 = c.scaled(&rat(3, 2)).unwrap();
        let (sum, k) = combine(&c, &c2, &rat(1, 1), &rat(2, 1)).unwrap();
        assert_eq!(k, ClassId::Class1);
        assert_eq!(classify(&sum).class, ClassId::Class1);
    }

    #[test]
    fn conharmonic_pairs() {
        let k = row("K", 5);
        let (_, cls) = combine(&k, &k.scaled(&rat(2, 1)).unwrap(), &rat(1, 1), &rat(1, 1)).unwrap();
        assert_eq!(cls, ClassId::Class2);
        // K + (C − K) = C
        let c = row("C", 5);
        let diff = BCoefficients::linear(&rat(1, 1), &c, &rat(-1, 1), &k).unwrap();
        let (sum, cls) = combine(&k, &diff, &rat(1, 1), &rat(1, 1)).unwrap();
        assert_eq!(sum, c);
        assert_eq!(cls, ClassId::Class1);
    }

    #[test]
    fn class2_with_class3_is_class4() {
        let (sum, cls) = combine(&row("K", 4), &row("W", 4), &rat(1, 1), &rat(1, 1)).unwrap();
        assert_eq!(cls, ClassId::Class4);
        assert_eq!(classify(&sum).class, ClassId::Class4);
    }

    #[test]
    fn class3_pair_can_collapse() {
        // W − (W − C) = C with both members in class 3
        let w = row("W", 4);
        let c = row("C", 4);
        let d = BCoefficients::linear(&rat(1, 1), &w, &rat(-1, 1), &c).unwrap();
        assert_eq!(classify(&d).class, ClassId::Class3);
        let (sum, cls) = combine(&w, &d, &rat(1, 1), &rat(-1, 1)).unwrap();
        assert_eq!(sum, c);
        assert_eq!(cls, ClassId::Class1);
    }

    #[test]
    fn zero_combination_is_rejected() {
        let r = row("R", 3);
        assert_eq!(
            combine(&r, &r, &rat(1, 1), &rat(-1, 1)).unwrap_err(),
            Error::ZeroCombination
        );
    }
}
