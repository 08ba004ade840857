//! Fusion with the generating modules `M_{2n+1,1}`, `M_{2,1}` and `M_{1,2}`.
//!
//! These rules are the only fusion input the recursion in [`crate::oracle`]
//! is allowed to use.

use crate::catalog::{FormalSum, Indecomposable};
use crate::error::{Error, Result};
use crate::labels::{KacLabel, Params};

/// Which generator a label is, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `M_{2n+1,1}`, carrying the shift `2n`.
    OddCurrent(i64),
    /// `M_{2,1}`.
    EvenCurrent,
    /// `M_{1,2}`.
    Doublet,
}

impl Generator {
    pub fn classify(params: Params, g: &Indecomposable) -> Option<Self> {
        let Indecomposable::Simple(KacLabel { r, s }) = *g else {
            return None;
        };
        match (r, s) {
            (2, 1) => Some(Self::EvenCurrent),
            (1, 2) if params.p() >= 2 => Some(Self::Doublet),
            (r, 1) if r.rem_euclid(2) == 1 => Some(Self::OddCurrent(r - 1)),
            _ => None,
        }
    }

    pub fn module(self) -> Indecomposable {
        match self {
            Self::OddCurrent(shift) => Indecomposable::m(shift + 1, 1),
            Self::EvenCurrent => Indecomposable::m(2, 1),
            Self::Doublet => Indecomposable::m(1, 2),
        }
    }
}

/// `g ⊠ x` for a generator `g` and `x` simple, projective or Fock.
pub fn fuse_generators(params: Params, g: &Indecomposable, x: &Indecomposable) -> Result<FormalSum> {
    let gen = Generator::classify(params, g)
        .ok_or_else(|| Error::Unsupported(format!("{g} is not a generator")))?;
    apply(params, gen, x)
}

pub fn apply(params: Params, gen: Generator, x: &Indecomposable) -> Result<FormalSum> {
    let p = params.p();
    let m = Indecomposable::m;
    let pp = |r, s| Indecomposable::p_norm(params, r, s);
    let unsupported = || Err(Error::Unsupported(format!("{} ⊠ {x}", gen.module())));

    let one = |y: Indecomposable| Ok(FormalSum::single(y));
    let sum = |terms: &[(Indecomposable, u64)]| Ok(FormalSum::from_terms(terms.iter().copied()));

    match (gen, *x) {
        (Generator::OddCurrent(k), Indecomposable::Simple(KacLabel { r, s })) => one(m(r + k, s)),
        (Generator::OddCurrent(k), Indecomposable::Proj(KacLabel { r, s })) => one(pp(r + k, s)),
        (Generator::OddCurrent(k), Indecomposable::Fock(KacLabel { r, s })) => {
            one(Indecomposable::Fock(KacLabel::extended(r + k, s)))
        }

        (Generator::EvenCurrent, Indecomposable::Simple(KacLabel { r, s })) => one(m(r + 1, s)),
        (Generator::EvenCurrent, Indecomposable::Proj(KacLabel { r, s })) => one(pp(r + 1, s)),

        (Generator::Doublet, Indecomposable::Simple(KacLabel { r, s })) => {
            if s == 1 {
                one(m(r, 2))
            } else if s < p {
                sum(&[(m(r, s - 1), 1), (m(r, s + 1), 1)])
            } else {
                one(pp(r, p - 1))
            }
        }
        (Generator::Doublet, Indecomposable::Proj(KacLabel { r, s })) => {
            if p == 2 {
                sum(&[(pp(r + 1, 2), 1), (pp(r, 2), 2), (pp(r - 1, 2), 1)])
            } else if s == 1 {
                sum(&[(pp(r, 2), 1), (pp(r + 1, p), 1), (pp(r - 1, p), 1)])
            } else if s < p - 1 {
                sum(&[(pp(r, s - 1), 1), (pp(r, s + 1), 1)])
            } else {
                sum(&[(pp(r, p - 2), 1), (pp(r, p), 2)])
            }
        }
        _ => unsupported(),
    }
}
