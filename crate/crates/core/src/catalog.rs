//! Indecomposable singlet modules: labels, composition factors, Loewy
//! diagrams, contragredients and Virasoro decompositions, together with the
//! explicit lowest-weight-space matrices of the Jordan-block Fock modules.
//!
//! Labels are normalized on construction: `P_{r,p}`, `F_{α_{r,p}}` and
//! `F^{(1)}_{α_{r,p}}` are all the simple projective module `M_{r,p}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labels::{alpha_coordinate, weight, KacLabel, Params, Rational};
use crate::matrix::RatMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    SimpleM,
    ProjP,
    FockF,
    JordanFock,
}

impl Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Kind::SimpleM => "M",
            Kind::ProjP => "P",
            Kind::FockF => "F",
            Kind::JordanFock => "FJ",
        }
    }
}

/// A normalized label for an indecomposable module.
///
/// Derived ordering is lexicographic on (kind, r, s, n), which is the order
/// used by every [`FormalSum`] and hence by all printed output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indecomposable {
    Simple(KacLabel),
    Proj(KacLabel),
    Fock(KacLabel),
    /// `F^{(n)}_{α_{r,p}}`, `n ≥ 2`; the label always carries `s = p`.
    JordanFock(KacLabel, u32),
}

impl Indecomposable {
    pub fn simple(params: Params, r: i64, s: i64) -> Result<Self> {
        Ok(Self::Simple(KacLabel::new(params, r, s)?))
    }

    pub fn proj(params: Params, r: i64, s: i64) -> Result<Self> {
        let label = KacLabel::new(params, r, s)?;
        Ok(if s == params.p() { Self::Simple(label) } else { Self::Proj(label) })
    }

    pub fn fock(params: Params, r: i64, s: i64) -> Result<Self> {
        let label = KacLabel::new(params, r, s)?;
        Ok(if s == params.p() { Self::Simple(label) } else { Self::Fock(label) })
    }

    pub fn jordan_fock(params: Params, r: i64, n: u32) -> Result<Self> {
        let label = KacLabel::new(params, r, params.p())?;
        match n {
            0 => Err(Error::InvalidLabel("Jordan Fock module needs n >= 1".into())),
            1 => Ok(Self::Simple(label)),
            _ => Ok(Self::JordanFock(label, n)),
        }
    }

    /// Unvalidated normalizing constructor for `P_{r,s}` used inside the
    /// fusion sums, where `1 ≤ s ≤ p` holds by construction.
    pub(crate) fn p_norm(params: Params, r: i64, s: i64) -> Self {
        debug_assert!((1..=params.p()).contains(&s));
        let label = KacLabel::extended(r, s);
        if s == params.p() {
            Self::Simple(label)
        } else {
            Self::Proj(label)
        }
    }

    pub(crate) fn m(r: i64, s: i64) -> Self {
        Self::Simple(KacLabel::extended(r, s))
    }

    pub fn kind(&self) -> Kind {
        match self {
            Self::Simple(_) => Kind::SimpleM,
            Self::Proj(_) => Kind::ProjP,
            Self::Fock(_) => Kind::FockF,
            Self::JordanFock(..) => Kind::JordanFock,
        }
    }

    pub fn label(&self) -> KacLabel {
        match *self {
            Self::Simple(l) | Self::Proj(l) | Self::Fock(l) | Self::JordanFock(l, _) => l,
        }
    }

    pub fn r(&self) -> i64 {
        self.label().r
    }

    pub fn s(&self) -> i64 {
        self.label().s
    }

    /// Jordan block size; 1 for everything but `F^{(n)}`.
    pub fn n(&self) -> u32 {
        match *self {
            Self::JordanFock(_, n) => n,
            _ => 1,
        }
    }

    pub fn is_simple(&self) -> bool {
        matches!(self, Self::Simple(_))
    }

    /// Parse the `KIND:r,s[,n]` grammar (`KIND ∈ {M, P, F, FJ}`). For `FJ`
    /// the `s` slot must equal `p`.
    pub fn parse(params: Params, text: &str) -> Result<Self> {
        let bad = || Error::InvalidLabel(format!("cannot parse `{text}` (expected KIND:r,s[,n])"));
        let (kind, rest) = text.trim().split_once(':').ok_or_else(bad)?;
        let nums = rest
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        match (kind.trim(), nums.as_slice()) {
            ("M", &[r, s]) => Self::simple(params, r, s),
            ("P", &[r, s]) => Self::proj(params, r, s),
            ("F", &[r, s]) => Self::fock(params, r, s),
            ("FJ", &[r, s, n]) => {
                if s != params.p() {
                    return Err(Error::InvalidLabel(format!("FJ requires s = p = {}", params.p())));
                }
                let n = u32::try_from(n).map_err(|_| bad())?;
                Self::jordan_fock(params, r, n)
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let KacLabel { r, s } = self.label();
        match self {
            Self::JordanFock(_, n) => write!(f, "FJ:{r},{s},{n}"),
            other => write!(f, "{}:{r},{s}", other.kind().tag()),
        }
    }
}

/// Finite direct sum of indecomposables with positive multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSum {
    terms: BTreeMap<Indecomposable, u64>,
}

impl FormalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(x: Indecomposable) -> Self {
        Self::from_terms([(x, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Indecomposable, u64)>) -> Self {
        let mut out = Self::zero();
        for (x, m) in terms {
            out.insert(x, m);
        }
        out
    }

    pub fn insert(&mut self, x: Indecomposable, mult: u64) {
        if mult > 0 {
            *self.terms.entry(x).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, x: &Indecomposable) -> u64 {
        self.terms.get(x).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Indecomposable, u64)> + '_ {
        self.terms.iter().map(|(x, m)| (x, *m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct indecomposables.
    pub fn distinct(&self) -> usize {
        self.terms.len()
    }

    /// Total number of summands counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn scaled(&self, k: u64) -> Self {
        Self::from_terms(self.iter().map(|(x, m)| (*x, m * k)))
    }

    /// Exact multiset difference, failing if `other` is not contained in `self`.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (x, take) in other.iter() {
            let have = out.multiplicity(x);
            if take > have {
                return Err(Error::NegativeMultiplicity { label: *x, have, take });
            }
            if take == have {
                out.terms.remove(x);
            } else {
                out.terms.insert(*x, have - take);
            }
        }
        Ok(out)
    }
}

impl From<Indecomposable> for FormalSum {
    fn from(x: Indecomposable) -> Self {
        Self::single(x)
    }
}

impl FromIterator<(Indecomposable, u64)> for FormalSum {
    fn from_iter<I: IntoIterator<Item = (Indecomposable, u64)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl AddAssign<&FormalSum> for FormalSum {
    fn add_assign(&mut self, rhs: &FormalSum) {
        for (x, m) in rhs.iter() {
            self.insert(*x, m);
        }
    }
}

impl Add for FormalSum {
    type Output = FormalSum;
    fn add(mut self, rhs: FormalSum) -> FormalSum {
        self += &rhs;
        self
    }
}

impl fmt::Display for FormalSum {
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

/// Socle filtration, listed from the top layer down to the socle. Each edge
/// `(i, a, b)` joins factor `a` of layer `i` to factor `b` of layer `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoewyDiagram {
    pub layers: Vec<FormalSum>,
    pub edges: Vec<(usize, Indecomposable, Indecomposable)>,
}

impl LoewyDiagram {
    pub fn socle(&self) -> &FormalSum {
        self.layers.last().expect("Loewy diagram has at least one layer")
    }

    pub fn top(&self) -> &FormalSum {
        &self.layers[0]
    }

    pub fn flatten(&self) -> FormalSum {
        self.layers.iter().fold(FormalSum::zero(), |acc, l| acc + l.clone())
    }
}

pub fn composition_factors(params: Params, x: &Indecomposable) -> FormalSum {
    let p = params.p();
    match *x {
        Indecomposable::Simple(_) => FormalSum::single(*x),
        Indecomposable::Proj(KacLabel { r, s }) => FormalSum::from_terms([
            (Indecomposable::m(r, s), 2),
            (Indecomposable::m(r - 1, p - s), 1),
            (Indecomposable::m(r + 1, p - s), 1),
        ]),
        Indecomposable::Fock(KacLabel { r, s }) => {
            FormalSum::from_terms([(Indecomposable::m(r, s), 1), (Indecomposable::m(r + 1, p - s), 1)])
        }
        Indecomposable::JordanFock(KacLabel { r, s }, n) => {
            FormalSum::from_terms([(Indecomposable::m(r, s), u64::from(n))])
        }
    }
}

/// Composition factors of every summand, with multiplicity.
pub fn flatten(params: Params, x: &FormalSum) -> FormalSum {
    let mut out = FormalSum::zero();
    for (y, m) in x.iter() {
        out += &composition_factors(params, y).scaled(m);
    }
    out
}

pub fn loewy(params: Params, x: &Indecomposable) -> Result<LoewyDiagram> {
    let p = params.p();
    match *x {
        Indecomposable::Simple(_) => Ok(LoewyDiagram { layers: vec![FormalSum::single(*x)], edges: vec![] }),
        Indecomposable::Proj(KacLabel { r, s }) => {
            let head = Indecomposable::m(r, s);
            let left = Indecomposable::m(r - 1, p - s);
            let right = Indecomposable::m(r + 1, p - s);
            Ok(LoewyDiagram {
                layers: vec![
                    FormalSum::single(head),
                    FormalSum::from_terms([(left, 1), (right, 1)]),
                    FormalSum::single(head),
                ],
                edges: vec![(0, head, left), (0, head, right), (1, left, head), (1, right, head)],
            })
        }
        Indecomposable::Fock(KacLabel { r, s }) => {
            let top = Indecomposable::m(r + 1, p - s);
            let soc = Indecomposable::m(r, s);
            Ok(LoewyDiagram {
                layers: vec![FormalSum::single(top), FormalSum::single(soc)],
                edges: vec![(0, top, soc)],
            })
        }
        Indecomposable::JordanFock(..) => {
            Err(Error::Unsupported(format!("Loewy diagram of {x} is not modeled")))
        }
    }
}

/// Loewy diagram of `Z_{r,s}`, the unique maximal proper submodule of
/// `P_{r,s}` for `1 ≤ s ≤ p−1`.
pub fn maximal_submodule_loewy(params: Params, label: KacLabel) -> Result<LoewyDiagram> {
    let p = params.p();
    let KacLabel { r, s } = KacLabel::new(params, label.r, label.s)?;
    if s == p {
        return Err(Error::Unsupported(format!("M({r},{p}) is its own projective cover")));
    }
    let soc = Indecomposable::m(r, s);
    let left = Indecomposable::m(r - 1, p - s);
    let right = Indecomposable::m(r + 1, p - s);
    Ok(LoewyDiagram {
        layers: vec![FormalSum::from_terms([(left, 1), (right, 1)]), FormalSum::single(soc)],
        edges: vec![(0, left, soc), (0, right, soc)],
    })
}

/// Contragredient: `M_{r,s}' = M_{2−r,s}` and `P_{r,s}' = P_{2−r,s}`.
pub fn dual(x: &Indecomposable) -> Result<Indecomposable> {
    match *x {
        Indecomposable::Simple(KacLabel { r, s }) => Ok(Indecomposable::Simple(KacLabel::extended(2 - r, s))),
        Indecomposable::Proj(KacLabel { r, s }) => Ok(Indecomposable::Proj(KacLabel::extended(2 - r, s))),
        _ => Err(Error::Unsupported(format!("contragredient of {x}"))),
    }
}

/// Decomposition of a simple `M_{r,s}` into irreducible Virasoro modules
/// `L(c_p, h)`, truncated to `n = 0..=n_max`. Returns `(h, multiplicity)`.
pub fn virasoro_decomposition(params: Params, x: &Indecomposable, n_max: u32) -> Result<Vec<(Rational, u64)>> {
    let Indecomposable::Simple(KacLabel { r, s }) = *x else {
        return Err(Error::Unsupported(format!("Virasoro decomposition of {x}")));
    };
    let p = params.p();
    let n_max = i64::from(n_max);
    Ok((0..=n_max)
        .map(|n| {
            let label = if r >= 1 {
                KacLabel::extended(r + 2 * n, s)
            } else {
                // M_{ρ+1,p−σ} = ⊕ L(h_{ρ−2n,σ}) with ρ = r − 1, σ = p − s
                KacLabel::extended(r - 1 - 2 * n, p - s)
            };
            (weight(params, label), 1)
        })
        .collect())
}

/// Lowest-weight-space action on `F^{(n)}_{α_{r,p}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanFockMatrices {
    /// Zero-mode `α(0)` of the Heisenberg field, `k·Id + 2·N`.
    pub a: RatMatrix,
    pub l0: RatMatrix,
    pub h0: RatMatrix,
}

/// `A = √(2p)·(α_{r,p}·Id + N)`, `L(0) = A²/(4p) − (p−1)A/(2p)`,
/// `H(0) = binom(A, 2p−1)`.
///
/// `√(2p)·α_{r,p}` is the integer `k = alpha_coordinate(r, p)`. The
/// superdiagonal `√(2p)` is irrational unless `2p` is a square, so the basis
/// is rescaled by `(√(2p)/2)^i`, which turns it into `2` (no change at
/// `p = 2`). All three matrices are then rational and related to the literal
/// ones by one common similarity.
pub fn jordan_fock_matrices(params: Params, r: i64, n: usize) -> Result<JordanFockMatrices> {
    if n < 2 {
        return Err(Error::InvalidLabel(format!("Jordan Fock block size {n} < 2")));
    }
    let p = params.p();
    let k = alpha_coordinate(params, KacLabel::extended(r, p));
    let a = RatMatrix::jordan(n, Rational::from_integer(k), Rational::from_integer(2));
    let l0 = &(&a * &a).scale(Rational::new(1, 4 * p)) - &a.scale(Rational::new(p - 1, 2 * p));

    // binom(A, m) built as Π_{j<m} (A − j)/(j + 1) to keep entries small
    let mut h0 = RatMatrix::identity(n);
    for j in 0..(2 * p - 1) {
        let shifted = &a - &RatMatrix::scalar(n, Rational::from_integer(j));
        h0 = (&h0 * &shifted).scale(Rational::new(1, j + 1));
    }
    Ok(JordanFockMatrices { a, l0, h0 })
}
