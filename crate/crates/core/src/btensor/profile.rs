//! Contraction profile and the four-class decision.
//!
//! Contracting slots `(i, j)` of `B` gives `^{ij}S = ^{ij}p S + ^{ij}q r g`;
//! contracting once more gives `^{ij}r = (^{ij}p + n ^{ij}q) r`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::coefficients::BCoefficients;
use crate::scalar::{rat, Rational};

pub const PAIRS: [&str; 6] = ["12", "13", "14", "23", "24", "34"];
pub const RPAIRS: [&str; 3] = ["12=34", "13=24", "14=23"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionProfile {
    #[serde(with = "crate::scalar::serde_rational_vec")]
    pub p: Vec<Rational>,
    #[serde(with = "crate::scalar::serde_rational_vec")]
    pub q: Vec<Rational>,
    #[serde(with = "crate::scalar::serde_rational_vec")]
    pub r: Vec<Rational>,
}

impl ContractionProfile {
    fn from_pq(n: usize, p: Vec<Rational>, q: Vec<Rational>) -> Self {
        let nn = rat(n as i64, 1);
        // pairs 12, 13, 14 represent the three distinct double traces
        let r = (0..3).map(|k| &p[k] + &nn * &q[k]).collect();
        ContractionProfile { p, q, r }
    }

    /// `μ·self + η·other`, computed on the profile entries directly.
    pub fn combine(&self, mu: &Rational, other: &Self, eta: &Rational) -> Self {
        let lin = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
            x.iter().zip(y).map(|(a, b)| mu * a + eta * b).collect()
        };
        ContractionProfile {
            p: lin(&self.p, &other.p),
            q: lin(&self.q, &other.q),
            r: lin(&self.r, &other.r),
        }
    }

    pub fn all_p_zero(&self) -> bool {
        self.p.iter().all(Zero::is_zero)
    }

    pub fn all_q_zero(&self) -> bool {
        self.q.iter().all(Zero::is_zero)
    }

    pub fn all_r_zero(&self) -> bool {
        self.r.iter().all(Zero::is_zero)
    }

    pub fn class(&self) -> ClassId {
        match (self.all_p_zero(), self.all_q_zero(), self.all_r_zero()) {
            (true, true, _) => ClassId::Class1,
            (true, false, _) => ClassId::Class2,
            (false, _, true) => ClassId::Class3,
            _ => ClassId::Class4,
        }
    }
}

pub fn contraction_profile(c: &BCoefficients) -> ContractionProfile {
    let a: Vec<&Rational> = (0..11).map(|i| c.a(i)).collect();
    let n = rat(c.n() as i64, 1);
    let p = vec![
        -a[1] + a[2] + a[3] + a[5] + a[6] + &n * a[7],
        -a[0] + a[2] + a[4] + a[5] + &n * a[6] + a[7],
        a[0] + a[1] + &n * a[2] + a[3] + a[4] + a[6] + a[7],
        a[0] + a[1] + a[3] + a[4] + &n * a[5] + a[6] + a[7],
        -a[0] + a[2] + &n * a[3] + a[4] + a[5] + a[7],
        -a[1] + a[2] + a[3] + &n * a[4] + a[5] + a[6],
    ];
    let q = vec![
        a[4] + a[8] + a[9] + &n * a[10],
        a[3] + a[8] + &n * a[9] + a[10],
        a[5] + &n * a[8] + a[9] + a[10],
        a[2] + &n * a[8] + a[9] + a[10],
        a[6] + a[8] + &n * a[9] + a[10],
        a[7] + a[8] + a[9] + &n * a[10],
    ];
    ContractionProfile::from_pq(c.n(), p, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    Class1,
    Class2,
    Class3,
    Class4,
}

impl ClassId {
    pub fn number(&self) -> u8 {
        match self {
            ClassId::Class1 => 1,
            ClassId::Class2 => 2,
            ClassId::Class3 => 3,
            ClassId::Class4 => 4,
        }
    }

    pub fn from_number(k: u8) -> Option<Self> {
        match k {
            1 => Some(ClassId::Class1),
            2 => Some(ClassId::Class2),
            3 => Some(ClassId::Class3),
            4 => Some(ClassId::Class4),
            _ => None,
        }
    }

    /// Representative member: C, K, W, R.
    pub fn representative(&self) -> &'static str {
        match self {
            ClassId::Class1 => "C",
            ClassId::Class2 => "K",
            ClassId::Class3 => "W",
            ClassId::Class4 => "R",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class {}", self.number())
    }
}

impl Serialize for ClassId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

impl<'de> Deserialize<'de> for ClassId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let k = u8::deserialize(d)?;
        ClassId::from_number(k).ok_or_else(|| serde::de::Error::custom(format!("no class {k}")))
    }
}

/// Class together with the vanishing pattern that decided it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub class: ClassId,
    pub profile: ContractionProfile,
    pub p_zero: Vec<bool>,
    pub q_zero: Vec<bool>,
    pub r_zero: Vec<bool>,
}

pub fn classify(c: &BCoefficients) -> Classification {
    let profile = contraction_profile(c);
    let z = |v: &[Rational]| v.iter().map(Zero::is_zero).collect::<Vec<_>>();
    Classification {
        class: profile.class(),
        p_zero: z(&profile.p),
        q_zero: z(&profile.q),
        r_zero: z(&profile.r),
        profile,
    }
}

/// Outcome of testing the explicit coefficient relations of each class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsVerdict {
    /// Class 1 relations (everything in terms of `a_7, a_9`).
    pub class1: bool,
    /// Class 2 relations (`a_0 … a_5` in terms of `a_6, a_7`).
    pub class2: bool,
    /// Class 3 relations (`a_0, a_8, a_10` in terms of the rest).
    pub class3: bool,
    pub implied: ClassId,
    pub classified: ClassId,
    pub agrees: bool,
}

pub fn class1_relations(c: &BCoefficients) -> bool {
    let a = |i| c.a(i).clone();
    let n = c.n() as i64;
    let n1 = rat(n - 1, 1);
    let n2 = rat(n - 2, 1);
    let two = -a(7) + &n1 * a(9);
    a(0) == -a(9) * &n2 * &n1
        && a(1) == a(7) * &n2
        && a(2) == two
        && a(5) == two
        && a(3) == -(&n1 * a(9))
        && a(6) == -(&n1 * a(9))
        && a(4) == a(7)
        && a(8) == -a(9) + a(7) / &n1
        && a(10) == -(a(7) / &n1)
}

pub fn class2_relations(c: &BCoefficients) -> bool {
    let a = |i| c.a(i).clone();
    let n2 = rat(c.n() as i64 - 2, 1);
    let two = -a(6) - a(7);
    a(0) == a(6) * &n2 && a(1) == a(7) * &n2 && a(2) == two && a(5) == two && a(3) == a(6) && a(4) == a(7)
}

pub fn class3_relations(c: &BCoefficients) -> bool {
    let a = |i| c.a(i).clone();
    let ni = c.n() as i64;
    let n = rat(ni, 1);
    let n1 = rat(ni - 1, 1);
    let nn1 = rat(ni * (ni - 1), 1);
    a(0) == &n1 * (a(3) + a(6) + &n * a(9))
        && a(8) == -(a(1) + &n1 * (a(2) + a(3) + a(5) + a(6) + &n * a(9))) / &nn1
        && a(10) == (a(1) - &n1 * (a(4) + a(7))) / &nn1
}

pub fn class_relations_check(c: &BCoefficients) -> RelationsVerdict {
    let (r1, r2, r3) = (class1_relations(c), class2_relations(c), class3_relations(c));
    let implied = if r1 {
        ClassId::Class1
    } else if r2 {
        ClassId::Class2
    } else if r3 {
        ClassId::Class3
    } else {
        ClassId::Class4
    };
    let classified = contraction_profile(c).class();
    RelationsVerdict {
        class1: r1,
        class2: r2,
        class3: r3,
        implied,
        classified,
        agrees: implied == classified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::btensor::named::parse_named;

    fn prof(name: &str, n: usize) -> ContractionProfile {
        contraction_profile(&parse_named(name, n).unwrap())
    }

    #[test]
    fn conformal_profile_vanishes() {
        for n in 3..=6 {
            let p = prof("C", n);
            assert!(p.all_p_zero() && p.all_q_zero(), "n={n}");
        }
    }

    #[test]
    fn conharmonic_profile() {
        for n in 3..=6i64 {
            let p = prof("K", n as usize);
            assert!(p.all_p_zero());
            assert!(!p.all_q_zero());
            // a_3 + n a_9 + … with only a_3 = 1/(n−2) among the q-13 entries
            assert_eq!(p.q[1], rat(1, n - 2));
            assert_eq!(p.q[0], rat(0, 1));
        }
    }

    #[test]
    fn riemann_profile() {
        let p = prof("R", 4);
        assert_eq!(p.p[0], rat(0, 1));
        assert_eq!(p.p[1], rat(-1, 1));
        assert_eq!(p.p[2], rat(1, 1));
        assert!(p.all_q_zero());
        assert_eq!(p.r[1], rat(-1, 1));
    }

    #[test]
    fn representative_classes() {
        for n in 3..=6 {
            assert_eq!(classify(&parse_named("C", n).unwrap()).class, ClassId::Class1);
            assert_eq!(classify(&parse_named("K", n).unwrap()).class, ClassId::Class2);
            assert_eq!(classify(&parse_named("W", n).unwrap()).class, ClassId::Class3);
            assert_eq!(classify(&parse_named("R", n).unwrap()).class, ClassId::Class4);
        }
    }

    #[test]
    fn relations_of_representatives() {
        for n in 3..=6 {
            let c = class_relations_check(&parse_named("C", n).unwrap());
            assert!(c.class1 && c.agrees);
            let k = class_relations_check(&parse_named("K", n).unwrap());
            assert!(k.class2 && !k.class1 && k.agrees);
            let w = class_relations_check(&parse_named("W", n).unwrap());
            assert!(w.class3 && !w.class1 && w.agrees);
        }
    }

    #[test]
    fn class_serializes_as_number() {
        assert_eq!(serde_json::to_string(&ClassId::Class3).unwrap(), "3");
        assert_eq!(serde_json::from_str::<ClassId>("2").unwrap(), ClassId::Class2);
        assert!(serde_json::from_str::<ClassId>("5").is_err());
    }
}
