//! The triplet algebra `W(p)` seen through induction from the singlet.
//!
//! Induction collapses `r` to its parity class `r̄` and is monoidal, so every
//! triplet fusion product of simple and projective labels can be computed
//! from a singlet product of preimages.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::catalog::{FormalSum, Indecomposable};
use crate::error::{Error, Result};
use crate::fusion;
use crate::labels::{rbar, weight, KacLabel, Params, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TripletKind {
    SimpleW,
    LatticeV,
    ProjR,
}

impl TripletKind {
    pub fn tag(self) -> &'static str {
        match self {
            Self::SimpleW => "W",
            Self::LatticeV => "V",
            Self::ProjR => "R",
        }
    }
}

/// `W_{r̄,s}`, `V_{α_{r̄,s}+L}` or `R_{r̄,s}`. `V` and `R` with `s = p` are
/// stored as `W_{r̄,p}`. `R` is constructed in the literature only for
/// `s = p−1`; other `s` are kept as extended labels so induction is total on
/// singlet projectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripletIndec {
    pub kind: TripletKind,
    pub rbar: i64,
    pub s: i64,
}

impl TripletIndec {
    pub fn new(params: Params, kind: TripletKind, r: i64, s: i64) -> Result<Self> {
        let p = params.p();
        if !(1..=p).contains(&s) {
            return Err(Error::InvalidLabel(format!("triplet label s = {s} outside 1..={p}")));
        }
        let kind = if s == p { TripletKind::SimpleW } else { kind };
        Ok(Self { kind, rbar: rbar(r), s })
    }

    pub fn w(params: Params, r: i64, s: i64) -> Result<Self> {
        Self::new(params, TripletKind::SimpleW, r, s)
    }

    pub fn v(params: Params, r: i64, s: i64) -> Result<Self> {
        Self::new(params, TripletKind::LatticeV, r, s)
    }

    pub fn r(params: Params, r: i64, s: i64) -> Result<Self> {
        Self::new(params, TripletKind::ProjR, r, s)
    }

    /// True for `R_{r̄,s}` with `s < p−1`.
    pub fn is_extended(&self, params: Params) -> bool {
        self.kind == TripletKind::ProjR && self.s != params.p() - 1
    }
}

impl fmt::Display for TripletIndec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{}", self.kind.tag(), self.rbar, self.s)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TripletSum {
    terms: BTreeMap<TripletIndec, u64>,
}

impl TripletSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(x: TripletIndec) -> Self {
        Self::from_terms([(x, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (TripletIndec, u64)>) -> Self {
        let mut out = Self::zero();
        for (x, m) in terms {
            out.insert(x, m);
        }
        out
    }

    pub fn insert(&mut self, x: TripletIndec, mult: u64) {
        if mult > 0 {
            *self.terms.entry(x).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, x: &TripletIndec) -> u64 {
        self.terms.get(x).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TripletIndec, u64)> + '_ {
        self.terms.iter().map(|(x, m)| (x, *m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for TripletSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (x, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m == 1 {
                write!(f, "{x}")?;
            } else {
                write!(f, "{m}*{x}")?;
            }
        }
        Ok(())
    }
}

/// Induction of a singlet indecomposable.
pub fn induce(params: Params, x: &Indecomposable) -> Result<TripletIndec> {
    let KacLabel { r, s } = x.label();
    match x {
        Indecomposable::Simple(_) => TripletIndec::w(params, r, s),
        Indecomposable::Fock(_) => TripletIndec::v(params, r, s),
        Indecomposable::Proj(_) => TripletIndec::r(params, r, s),
        Indecomposable::JordanFock(..) => {
            Err(Error::Unsupported(format!("{x} induces to a non-local module")))
        }
    }
}

pub fn induce_sum(params: Params, x: &FormalSum) -> Result<TripletSum> {
    let mut out = TripletSum::zero();
    for (y, m) in x.iter() {
        out.insert(induce(params, y)?, m);
    }
    Ok(out)
}

/// Simple composition factors of a triplet indecomposable.
pub fn triplet_composition_factors(params: Params, x: &TripletIndec) -> TripletSum {
    let p = params.p();
    let w = |r, s| TripletIndec { kind: TripletKind::SimpleW, rbar: rbar(r), s };
    match x.kind {
        TripletKind::SimpleW => TripletSum::single(*x),
        TripletKind::LatticeV => TripletSum::from_terms([(w(x.rbar, x.s), 1), (w(3 - x.rbar, p - x.s), 1)]),
        TripletKind::ProjR => triplet_loewy(params, x)
            .expect("R labels always have a Loewy diagram")
            .into_iter()
            .flatten()
            .fold(TripletSum::zero(), |mut acc, y| {
                acc.insert(y, 1);
                acc
            }),
    }
}

/// Loewy layers of `R_{r̄,s}`, top to socle:
/// `W_{r̄,s}` / `W_{3−r̄,p−s} ⊕ W_{3−r̄,p−s}` / `W_{r̄,s}`.
pub fn triplet_loewy(params: Params, x: &TripletIndec) -> Result<Vec<Vec<TripletIndec>>> {
    if x.kind != TripletKind::ProjR {
        return Err(Error::Unsupported(format!("Loewy diagram of {x}")));
    }
    let head = TripletIndec { kind: TripletKind::SimpleW, rbar: x.rbar, s: x.s };
    let mid = TripletIndec { kind: TripletKind::SimpleW, rbar: 3 - x.rbar, s: params.p() - x.s };
    Ok(vec![vec![head], vec![mid, mid], vec![head]])
}

/// Virasoro content `W_{r̄,s} = ⊕_n (2n+r̄)·L(h_{2n+r̄,s})`, truncated at
/// `n_max`.
pub fn triplet_virasoro_decomposition(params: Params, x: &TripletIndec, n_max: u32) -> Result<Vec<(Rational, u64)>> {
    if x.kind != TripletKind::SimpleW {
        return Err(Error::Unsupported(format!("Virasoro decomposition of {x}")));
    }
    Ok((0..=i64::from(n_max))
        .map(|n| {
            let r = 2 * n + x.rbar;
            (weight(params, KacLabel::extended(r, x.s)), r as u64)
        })
        .collect())
}

/// Fusion with the generators `W_{2,1}` and `W_{1,2}`, for simple `x`.
pub fn triplet_fuse_generator(params: Params, g: &TripletIndec, x: &TripletIndec) -> Result<TripletSum> {
    let p = params.p();
    if x.kind != TripletKind::SimpleW {
        return Err(Error::Unsupported(format!("generator fusion with {x}")));
    }
    let w = |r, s| TripletIndec::w(params, r, s);
    let (r, s) = (x.rbar, x.s);
    match (g.kind, g.rbar, g.s) {
        (TripletKind::SimpleW, 2, 1) => Ok(TripletSum::single(w(3 - r, s)?)),
        (TripletKind::SimpleW, 1, 2) => {
            if s == 1 {
                Ok(TripletSum::single(w(r, 2)?))
            } else if s < p {
                Ok(TripletSum::from_terms([(w(r, s - 1)?, 1), (w(r, s + 1)?, 1)]))
            } else {
                Ok(TripletSum::single(TripletIndec::r(params, r, p - 1)?))
            }
        }
        _ => Err(Error::Unsupported(format!("{g} is not a triplet generator"))),
    }
}

/// Singlet preimage of a simple or projective triplet label, with `r`
/// shifted to `r̄ + 2·shift`.
pub fn preimage(params: Params, x: &TripletIndec, shift: i64) -> Result<Indecomposable> {
    let r = x.rbar + 2 * shift;
    match x.kind {
        TripletKind::SimpleW => Indecomposable::simple(params, r, x.s),
        TripletKind::ProjR => Indecomposable::proj(params, r, x.s),
        TripletKind::LatticeV => Err(Error::Unsupported(format!("fusion with {x}"))),
    }
}

/// `a ⊠ b` computed as the induction of a singlet product of preimages.
pub fn derived_triplet_fuse(params: Params, a: &TripletIndec, b: &TripletIndec) -> Result<TripletSum> {
    derived_triplet_fuse_with(params, a, b, 0, 0)
}

/// [`derived_triplet_fuse`] with explicit preimage shifts.
pub fn derived_triplet_fuse_with(
    params: Params,
    a: &TripletIndec,
    b: &TripletIndec,
    shift_a: i64,
    shift_b: i64,
) -> Result<TripletSum> {
    let x = preimage(params, a, shift_a)?;
    let y = preimage(params, b, shift_b)?;
    induce_sum(params, &fusion::fuse_indecomposable(params, &x, &y)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: i64) -> Params {
        Params::new(p).unwrap()
    }

    fn w(p: i64, r: i64, s: i64) -> TripletIndec {
        TripletIndec::w(params(p), r, s).unwrap()
    }

    fn rr(p: i64, r: i64, s: i64) -> TripletIndec {
        TripletIndec::r(params(p), r, s).unwrap()
    }

    #[test]
    fn normalization() {
        let pr = params(3);
        assert_eq!(TripletIndec::v(pr, 1, 3).unwrap(), w(3, 1, 3));
        assert_eq!(TripletIndec::r(pr, 4, 3).unwrap(), w(3, 2, 3));
        assert_eq!(w(3, -1, 2), w(3, 1, 2));
        assert!(TripletIndec::w(pr, 1, 4).is_err());
        assert!(rr(3, 1, 1).is_extended(pr));
        assert!(!rr(3, 1, 2).is_extended(pr));
    }

    #[test]
    fn induce_examples() {
        let p3 = params(3);
        assert_eq!(induce(p3, &Indecomposable::m(3, 2)).unwrap(), w(3, 1, 2));
        assert_eq!(induce(p3, &Indecomposable::m(4, 2)).unwrap(), w(3, 2, 2));
        assert_eq!(induce(p3, &Indecomposable::proj(p3, 0, 2).unwrap()).unwrap(), rr(3, 2, 2));
        let v = induce(p3, &Indecomposable::fock(p3, 1, 1).unwrap()).unwrap();
        assert_eq!((v.kind, v.rbar, v.s), (TripletKind::LatticeV, 1, 1));
        let ext = induce(p3, &Indecomposable::proj(p3, 1, 1).unwrap()).unwrap();
        assert!(ext.is_extended(p3));
        let fj = Indecomposable::jordan_fock(p3, 1, 2).unwrap();
        assert!(induce(p3, &fj).is_err());
    }

    #[test]
    fn induce_sum_examples() {
        let p3 = params(3);
        assert!(induce_sum(p3, &FormalSum::zero()).unwrap().is_zero());
        let x = FormalSum::from_terms([(Indecomposable::m(1, 2), 1), (Indecomposable::m(2, 2), 1)]);
        assert_eq!(induce_sum(p3, &x).unwrap(), TripletSum::from_terms([(w(3, 1, 2), 1), (w(3, 2, 2), 1)]));
        let y = FormalSum::from_terms([(Indecomposable::proj(p3, 1, 2).unwrap(), 2)]);
        assert_eq!(induce_sum(p3, &y).unwrap(), TripletSum::from_terms([(rr(3, 1, 2), 2)]));
        // parity collapse adds multiplicities
        let z = FormalSum::from_terms([(Indecomposable::m(1, 1), 1), (Indecomposable::m(3, 1), 1)]);
        assert_eq!(induce_sum(p3, &z).unwrap(), TripletSum::from_terms([(w(3, 1, 1), 2)]));
    }

    #[test]
    fn generator_examples() {
        for p in 3..=6 {
            let pr = params(p);
            assert_eq!(
                triplet_fuse_generator(pr, &w(p, 2, 1), &w(p, 2, 3)).unwrap(),
                TripletSum::single(w(p, 1, 3))
            );
        }
        for p in 2..=6 {
            let pr = params(p);
            assert_eq!(
                triplet_fuse_generator(pr, &w(p, 1, 2), &w(p, 1, p)).unwrap(),
                TripletSum::single(rr(p, 1, p - 1))
            );
            assert_eq!(
                triplet_fuse_generator(pr, &w(p, 1, 2), &w(p, 2, 1)).unwrap(),
                TripletSum::single(w(p, 2, 2))
            );
            assert!(triplet_fuse_generator(pr, &w(p, 1, 1), &w(p, 2, 1)).is_err());
        }
    }

    #[test]
    fn derived_examples() {
        for p in 2..=6 {
            let pr = params(p);
            assert_eq!(
                derived_triplet_fuse(pr, &w(p, 1, 2), &w(p, 1, p)).unwrap(),
                TripletSum::single(rr(p, 1, p - 1))
            );
            for (sa, sb) in [(0, 0), (1, -1), (0, 1)] {
                assert_eq!(
                    derived_triplet_fuse_with(pr, &w(p, 2, 1), &w(p, 2, 1), sa, sb).unwrap(),
                    TripletSum::single(w(p, 1, 1))
                );
            }
        }
        assert_eq!(
            derived_triplet_fuse(params(2), &w(2, 1, 2), &w(2, 1, 2)).unwrap(),
            TripletSum::single(rr(2, 1, 1))
        );
    }

    #[test]
    fn projective_factors_match_induced_factors() {
        for p in 2..=6 {
            let pr = params(p);
            for r in -3..=3 {
                let px = Indecomposable::proj(pr, r, p - 1).unwrap();
                let induced = induce_sum(pr, &crate::catalog::composition_factors(pr, &px)).unwrap();
                let rx = induce(pr, &px).unwrap();
                assert_eq!(induced, triplet_composition_factors(pr, &rx));
                assert_eq!(
                    induced,
                    TripletSum::from_terms([(w(p, r, p - 1), 2), (w(p, 3 - rbar(r), 1), 2)])
                );
            }
        }
    }

    #[test]
    fn lattice_factors_match_induced_fock_factors() {
        for p in 2..=5 {
            let pr = params(p);
            for r in -2..=2 {
                for s in 1..p {
                    let f = Indecomposable::fock(pr, r, s).unwrap();
                    let induced = induce_sum(pr, &crate::catalog::composition_factors(pr, &f)).unwrap();
                    assert_eq!(induced, triplet_composition_factors(pr, &induce(pr, &f).unwrap()));
                }
            }
        }
    }

    #[test]
    fn virasoro_content() {
        let v = triplet_virasoro_decomposition(params(2), &w(2, 1, 1), 2).unwrap();
        assert_eq!(v, vec![(Rational::from_integer(0), 1), (Rational::from_integer(3), 3), (Rational::from_integer(10), 5)]);
        let v = triplet_virasoro_decomposition(params(3), &w(3, 2, 1), 0).unwrap();
        assert_eq!(v, vec![(Rational::new(7, 4), 2)]);
        assert!(triplet_virasoro_decomposition(params(3), &rr(3, 1, 2), 1).is_err());
    }
}
