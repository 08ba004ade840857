//! Fusion products rebuilt from the generator rules and Krull–Schmidt
//! cancellation alone.
//!
//! For any `X`, fusing with the column `M_{1,s}` obeys
//!
//! ```text
//! X ⊠ M_{1,1}   = X
//! X ⊠ M_{1,2}   = M_{1,2} ⊠ X
//! X ⊠ M_{1,s+1} = M_{1,2} ⊠ (X ⊠ M_{1,s}) ⊖ X ⊠ M_{1,s−1}
//! ```
//!
//! and the remaining `r` dependence is a shift by the simple currents
//! `M_{2n+1,1}` and `M_{2,1}`. Projective right factors reduce to simple ones
//! through the split sequence `2·M_{r,s} + M_{r+1,p−s} + M_{r−1,p−s}`.
//! Nothing in this module calls into [`crate::fusion`].

use std::collections::HashMap;
use std::sync::RwLock;

use crate::catalog::{FormalSum, Indecomposable};
use crate::error::{Error, Result};
use crate::generators::{apply, Generator};
use crate::labels::{KacLabel, Params};

/// Exact multiset difference `a ⊖ b`; fails if any multiplicity would go
/// negative.
pub fn ks_subtract(a: &FormalSum, b: &FormalSum) -> Result<FormalSum> {
    a.checked_sub(b)
}

/// Recursion oracle for one value of `p`. The column memo is shared, so one
/// instance can serve many threads.
#[derive(Debug)]
pub struct Oracle {
    params: Params,
    memo: RwLock<HashMap<(FormalSum, i64), FormalSum>>,
}

impl Oracle {
    pub fn new(params: Params) -> Self {
        Self { params, memo: RwLock::new(HashMap::new()) }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock poisoned").len()
    }

    fn apply_sum(&self, gen: Generator, x: &FormalSum) -> Result<FormalSum> {
        let mut out = FormalSum::zero();
        for (y, m) in x.iter() {
            out += &apply(self.params, gen, y)?.scaled(m);
        }
        Ok(out)
    }

    /// Fuse with `M_{2n+1,1}` and then, for odd `k`, with `M_{2,1}`, where
    /// `k = 2n + e`.
    pub fn shift(&self, x: &FormalSum, k: i64) -> Result<FormalSum> {
        let (n, e) = (k.div_euclid(2), k.rem_euclid(2));
        let mut out = if n == 0 { x.clone() } else { self.apply_sum(Generator::OddCurrent(2 * n), x)? };
        if e == 1 {
            out = self.apply_sum(Generator::EvenCurrent, &out)?;
        }
        Ok(out)
    }

    /// `x ⊠ M_{1,s}`.
    pub fn fuse_with_column(&self, x: &FormalSum, s_target: i64) -> Result<FormalSum> {
        let p = self.params.p();
        if !(1..=p).contains(&s_target) {
            return Err(Error::InvalidLabel(format!("column index {s_target} outside 1..={p}")));
        }
        if s_target == 1 {
            return Ok(x.clone());
        }
        let key = (x.clone(), s_target);
        if let Some(hit) = self.memo.read().expect("memo lock poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let out = if s_target == 2 {
            self.apply_sum(Generator::Doublet, x)?
        } else {
            let prev = self.fuse_with_column(x, s_target - 1)?;
            let prev2 = self.fuse_with_column(x, s_target - 2)?;
            ks_subtract(&self.apply_sum(Generator::Doublet, &prev)?, &prev2)?
        };
        self.memo.write().expect("memo lock poisoned").insert(key, out.clone());
        Ok(out)
    }

    /// `M_{r,s} ⊠ M_{r′,s′}`.
    pub fn fuse_mm(&self, a: &Indecomposable, b: &Indecomposable) -> Result<FormalSum> {
        let (Indecomposable::Simple(la), Indecomposable::Simple(lb)) = (*a, *b) else {
            return Err(Error::Unsupported(format!("oracle fuse_mm on {a}, {b}")));
        };
        let col = self.fuse_with_column(&FormalSum::single(Indecomposable::m(1, lb.s)), la.s)?;
        self.shift(&col, la.r + lb.r - 2)
    }

    /// `P_{r,s} ⊠ b` for `b` simple or projective.
    pub fn fuse_p(&self, a: &Indecomposable, b: &Indecomposable) -> Result<FormalSum> {
        let Indecomposable::Proj(_) = a else {
            return Err(Error::Unsupported(format!("oracle fuse_p expects a projective, got {a}")));
        };
        let x = FormalSum::single(*a);
        match *b {
            Indecomposable::Simple(KacLabel { r, s }) => {
                let col = self.fuse_with_column(&x, s)?;
                self.shift(&col, r - 1)
            }
            Indecomposable::Proj(KacLabel { r, s }) => {
                let p = self.params.p();
                let mut out = self.fuse_p(a, &Indecomposable::m(r, s))?.scaled(2);
                out += &self.fuse_p(a, &Indecomposable::m(r + 1, p - s))?;
                out += &self.fuse_p(a, &Indecomposable::m(r - 1, p - s))?;
                Ok(out)
            }
            _ => Err(Error::Unsupported(format!("oracle fusion {a} ⊠ {b}"))),
        }
    }

    pub fn fuse_indecomposable(&self, a: &Indecomposable, b: &Indecomposable) -> Result<FormalSum> {
        use Indecomposable::*;
        match (a, b) {
            (Simple(_), Simple(_)) => self.fuse_mm(a, b),
            (Proj(_), _) => self.fuse_p(a, b),
            (Simple(_), Proj(_)) => self.fuse_p(b, a),
            (Simple(_), Fock(_)) | (Fock(_), Simple(_)) => {
                let (g, f) = if a.is_simple() { (a, b) } else { (b, a) };
                match Generator::classify(self.params, g) {
                    Some(gen) => apply(self.params, gen, f),
                    None => Err(Error::Unsupported(format!("oracle fusion {a} ⊠ {b}"))),
                }
            }
            _ => Err(Error::Unsupported(format!("oracle fusion {a} ⊠ {b}"))),
        }
    }

    /// Bilinear extension.
    pub fn fuse(&self, a: &FormalSum, b: &FormalSum) -> Result<FormalSum> {
        let mut out = FormalSum::zero();
        for (x, m) in a.iter() {
            for (y, n) in b.iter() {
                out += &self.fuse_indecomposable(x, y)?.scaled(m * n);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{self, CLOSED_FORM_CALLS};

    fn params(p: i64) -> Params {
        Params::new(p).unwrap()
    }

    fn m(r: i64, s: i64) -> Indecomposable {
        Indecomposable::m(r, s)
    }

    fn proj(p: i64, r: i64, s: i64) -> Indecomposable {
        Indecomposable::proj(params(p), r, s).unwrap()
    }

    fn sum(terms: &[(Indecomposable, u64)]) -> FormalSum {
        FormalSum::from_terms(terms.iter().copied())
    }

    #[test]
    fn ks_subtract_examples() {
        let a = sum(&[(m(1, 1), 1), (m(1, 3), 2)]);
        assert_eq!(ks_subtract(&a, &sum(&[(m(1, 3), 1)])).unwrap(), sum(&[(m(1, 1), 1), (m(1, 3), 1)]));
        assert_eq!(ks_subtract(&a, &a).unwrap(), FormalSum::zero());
        let err = ks_subtract(&sum(&[(m(1, 1), 1)]), &sum(&[(m(2, 1), 1)])).unwrap_err();
        assert_eq!(err, Error::NegativeMultiplicity { label: m(2, 1), have: 0, take: 1 });
    }

    #[test]
    fn column_examples() {
        for p in 2..=5 {
            let o = Oracle::new(params(p));
            for s in 1..=p {
                assert_eq!(o.fuse_with_column(&FormalSum::single(m(1, 1)), s).unwrap(), FormalSum::single(m(1, s)));
            }
            assert!(o.fuse_with_column(&FormalSum::single(m(1, 1)), p + 1).is_err());
        }
        let o3 = Oracle::new(params(3));
        let col = o3.fuse_with_column(&FormalSum::single(m(1, 2)), 3).unwrap();
        assert_eq!(col, sum(&[(proj(3, 1, 2), 1)]));
        assert_eq!(col, fusion::fuse_mm(params(3), &m(1, 2), &m(1, 3)).unwrap());

        let o2 = Oracle::new(params(2));
        let col = o2.fuse_with_column(&FormalSum::single(proj(2, 1, 1)), 2).unwrap();
        assert_eq!(col, fusion::fuse_pm(params(2), &proj(2, 1, 1), &m(1, 2)).unwrap());
    }

    #[test]
    fn oracle_examples() {
        let o2 = Oracle::new(params(2));
        assert_eq!(o2.fuse_mm(&m(2, 1), &m(0, 1)).unwrap(), FormalSum::single(m(1, 1)));
        assert_eq!(o2.fuse_mm(&m(1, 2), &m(1, 2)).unwrap(), FormalSum::single(proj(2, 1, 1)));
        assert_eq!(
            o2.fuse_p(&proj(2, 1, 1), &proj(2, 1, 1)).unwrap(),
            sum(&[(proj(2, 1, 1), 2), (proj(2, 2, 1), 1), (proj(2, 0, 1), 1)])
        );
        let o3 = Oracle::new(params(3));
        assert_eq!(o3.fuse_p(&proj(3, -2, 2), &m(1, 1)).unwrap(), FormalSum::single(proj(3, -2, 2)));
        assert_eq!(
            o3.fuse_p(&proj(3, 1, 2), &m(0, 2)).unwrap(),
            fusion::fuse_pm(params(3), &proj(3, 1, 2), &m(0, 2)).unwrap()
        );
        assert!(o3.fuse_p(&m(1, 1), &m(1, 1)).is_err());
        let f = Indecomposable::fock(params(3), 0, 1).unwrap();
        assert!(o3.fuse_indecomposable(&f, &f).is_err());
        assert!(o3.fuse_indecomposable(&m(1, 2), &f).is_err());
    }

    #[test]
    fn negative_shifts() {
        let o = Oracle::new(params(3));
        let x = FormalSum::single(m(0, 2));
        for k in -5..=5 {
            assert_eq!(o.shift(&x, k).unwrap(), FormalSum::single(m(k, 2)));
        }
    }

    #[test]
    fn oracle_never_calls_closed_forms() {
        let before = CLOSED_FORM_CALLS.with(|c| c.get());
        for p in 2..=4 {
            let o = Oracle::new(params(p));
            for s in 1..=p {
                for s2 in 1..=p {
                    o.fuse_mm(&m(-1, s), &m(2, s2)).unwrap();
                    if s < p {
                        o.fuse_p(&proj(p, 0, s), &m(1, s2)).unwrap();
                        if s2 < p {
                            o.fuse_p(&proj(p, 0, s), &proj(p, 3, s2)).unwrap();
                        }
                    }
                }
            }
        }
        assert_eq!(CLOSED_FORM_CALLS.with(|c| c.get()), before);
        fusion::fuse_mm(params(2), &m(1, 1), &m(1, 1)).unwrap();
        assert_eq!(CLOSED_FORM_CALLS.with(|c| c.get()), before + 1);
    }

    #[test]
    fn concurrent_matches_sequential() {
        let o = std::sync::Arc::new(Oracle::new(params(5)));
        let labels: Vec<_> = (1..5).map(|s| proj(5, 1, s)).collect();
        let sequential: Vec<_> = labels
            .iter()
            .map(|a| Oracle::new(params(5)).fuse_p(a, &proj(5, 0, 3)).unwrap())
            .collect();
        let handles: Vec<_> = labels
            .into_iter()
            .map(|a| {
                let o = o.clone();
                std::thread::spawn(move || o.fuse_p(&a, &proj(5, 0, 3)).unwrap())
            })
            .collect();
        let parallel: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert_eq!(parallel, sequential);
        assert!(o.memo_len() > 0);
    }
}
