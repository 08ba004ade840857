//! Kac-style labels `(r, s)`, lattice coordinates and exact conformal weights.
//!
//! Every lattice vector in play lives in the dual lattice `Z·α/(2p)`, so a
//! weight `λ` is carried only through its integer coordinate `k` with
//! `λ = k·α/(2p)`. Nothing irrational is ever formed.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number in reduced form.
pub type Rational = num_rational::Rational64;

/// The singlet parameter `p ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    p: i64,
}

impl Params {
    pub fn new(p: i64) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParams(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> i64 {
        self.p
    }

    /// Central charge `c_p = 13 − 6p − 6/p`.
    pub fn central_charge(self) -> Rational {
        Rational::from_integer(13 - 6 * self.p) - Rational::new(6, self.p)
    }

    /// `−(p−1)²/(4p)`, the infimum of conformal weights of simple modules.
    pub fn weight_lower_bound(self) -> Rational {
        -Rational::new((self.p - 1) * (self.p - 1), 4 * self.p)
    }
}

/// A pair `(r, s)`. Constructed through [`KacLabel::new`] it satisfies
/// `1 ≤ s ≤ p`; [`KacLabel::extended`] lifts that restriction for weight and
/// lattice computations with shifted indices such as `α_{r−1,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KacLabel {
    pub r: i64,
    pub s: i64,
}

impl KacLabel {
    pub fn new(params: Params, r: i64, s: i64) -> Result<Self> {
        if !(1..=params.p()).contains(&s) {
            return Err(Error::InvalidLabel(format!(
                "s = {s} outside 1..={} for p = {}",
                params.p(),
                params.p()
            )));
        }
        Ok(Self { r, s })
    }

    pub const fn extended(r: i64, s: i64) -> Self {
        Self { r, s }
    }
}

impl fmt::Display for KacLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

/// `h_{r,s} = (r²−1)p/4 − (rs−1)/2 + (s²−1)/(4p)`.
pub fn weight(params: Params, label: KacLabel) -> Rational {
    let p = params.p();
    let KacLabel { r, s } = label;
    Rational::new((r * r - 1) * p, 4) - Rational::new(r * s - 1, 2) + Rational::new(s * s - 1, 4 * p)
}

/// Lowest conformal weight of the simple module `M_{r,s}`.
pub fn lowest_weight_of_simple(params: Params, label: KacLabel) -> Rational {
    if label.r >= 1 {
        weight(params, label)
    } else {
        weight(params, KacLabel::extended(2 - label.r, label.s))
    }
}

/// Integer `k` with `α_{r,s} = k·α/(2p)`, namely `k = p(1−r) − (1−s)`.
pub fn alpha_coordinate(params: Params, label: KacLabel) -> i64 {
    params.p() * (1 - label.r) - (1 - label.s)
}

/// Lowest conformal weight `λ(λ−α₀)/2` of the Fock module `F_λ`, with
/// `λ = k·α/(2p)` and `⟨α,α⟩ = 2p`.
///
/// With `λ = k/√(2p)` and `α₀ = (p−1)·√(2/p)` this is `k(k − 2(p−1))/(4p)`.
pub fn fock_weight(params: Params, lambda_coeff: Rational) -> Rational {
    let p = params.p();
    let k = lambda_coeff;
    k * (k - Rational::from_integer(2 * (p - 1))) / Rational::from_integer(4 * p)
}

/// Parity class `r̄ ∈ {1, 2}`: 1 for odd `r`, 2 for even `r`.
#[inline]
pub fn rbar(r: i64) -> i64 {
    if r.rem_euclid(2) == 1 {
        1
    } else {
        2
    }
}

/// Fractional part of `h_A − h_B`, in `[0, 1)`.
pub fn weight_coset_diff(params: Params, a: KacLabel, b: KacLabel) -> Rational {
    frac(weight(params, a) - weight(params, b))
}

pub(crate) fn frac(x: Rational) -> Rational {
    let f = x - x.floor();
    debug_assert!(f >= Rational::zero() && f < Rational::one());
    f
}
