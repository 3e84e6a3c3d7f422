//! Symmetry predicates on coefficient sets and the canonical GCT form.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::coefficients::BCoefficients;
use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};

/// Coefficients for which `B` is a generalized curvature tensor for every metric:
/// `a_1 = a_4 = a_7 = a_10 = 0`, `a_2 = −a_3 = a_5 = −a_6`, `a_8 = −a_9`.
pub fn is_gct(c: &BCoefficients) -> bool {
    let a = |i| c.a(i);
    [1, 4, 7, 10].iter().all(|&i| a(i).is_zero())
        && a(2) == &-a(3).clone()
        && a(2) == a(5)
        && a(5) == &-a(6).clone()
        && a(8) == &-a(9).clone()
}

/// A GCT whose canonical form is a constant multiple of `R`.
pub fn is_proper_gct(c: &BCoefficients) -> bool {
    match gct_canonical_form(c) {
        Ok(f) => f.b1.is_zero() && f.b2.is_zero(),
        Err(_) => false,
    }
}

/// `B` is skew in its last two slots for every metric, i.e. the induced
/// endomorphisms are skew-adjoint.
pub fn is_skew_endomorphism(c: &BCoefficients) -> bool {
    let a = |i| c.a(i);
    [1, 4, 7, 10].iter().all(|&i| a(i).is_zero())
        && a(2) == &-a(6).clone()
        && a(3) == &-a(5).clone()
        && a(8) == &-a(9).clone()
}

/// `B = b0 R + b1 g∧S + b2 r g∧g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GctCanonicalForm {
    #[serde(with = "crate::scalar::serde_rational")]
    pub b0: Rational,
    #[serde(with = "crate::scalar::serde_rational")]
    pub b1: Rational,
    #[serde(with = "crate::scalar::serde_rational")]
    pub b2: Rational,
}

pub fn gct_canonical_form(c: &BCoefficients) -> Result<GctCanonicalForm> {
    if !is_gct(c) {
        return Err(Error::NotGct);
    }
    // g∧g carries g_il g_jk − g_ik g_jl twice, hence the half
    Ok(GctCanonicalForm {
        b0: c.a(0).clone(),
        b1: c.a(5).clone(),
        b2: c.a(8) * rat(1, 2),
    })
}
