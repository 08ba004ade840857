//! Closed-form fusion products of simple and projective singlet modules,
//! extended bilinearly to formal sums.
//!
//! A range `lo..=hi` with `lo > hi` is empty; the parity filter is applied to
//! whatever survives the bounds. `P_{r,p}` is normalized to `M_{r,p}` inside
//! every sum.

use crate::catalog::{composition_factors, flatten, FormalSum, Indecomposable};
use crate::error::{Error, Result};
use crate::generators::{fuse_generators, Generator};
use crate::labels::{KacLabel, Params};

#[cfg(test)]
thread_local! {
    pub(crate) static CLOSED_FORM_CALLS: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
}

#[inline]
fn count_call() {
    #[cfg(test)]
    CLOSED_FORM_CALLS.with(|c| c.set(c.get() + 1));
}

/// `ℓ` in `lo..=hi` with `ℓ ≡ parity (mod 2)`.
fn ells(lo: i64, hi: i64, parity: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).filter(move |l| (l - parity).rem_euclid(2) == 0)
}

fn simple_label(x: &Indecomposable, what: &str) -> Result<KacLabel> {
    match *x {
        Indecomposable::Simple(l) => Ok(l),
        _ => Err(Error::Unsupported(format!("{what} expects a simple module, got {x}"))),
    }
}

fn proj_label(x: &Indecomposable, what: &str) -> Result<KacLabel> {
    match *x {
        Indecomposable::Proj(l) => Ok(l),
        _ => Err(Error::Unsupported(format!("{what} expects a projective P_{{r,s}} with s < p, got {x}"))),
    }
}

/// `M_{r,s} ⊠ M_{r′,s′}`.
pub fn fuse_mm(params: Params, a: &Indecomposable, b: &Indecomposable) -> Result<FormalSum> {
    count_call();
    let KacLabel { r, s } = simple_label(a, "fuse_mm")?;
    let KacLabel { r: r2, s: s2 } = simple_label(b, "fuse_mm")?;
    let p = params.p();
    let r0 = r + r2 - 1;
    // ℓ + s + s′ odd
    let parity = (s + s2 + 1).rem_euclid(2);

    let mut out = FormalSum::zero();
    for l in ells((s - s2).abs() + 1, (s + s2 - 1).min(2 * p - 1 - s - s2), parity) {
        out.insert(Indecomposable::m(r0, l), 1);
    }
    for l in ells(2 * p + 1 - s - s2, p, parity) {
        out.insert(Indecomposable::p_norm(params, r0, l), 1);
    }
    Ok(out)
}

/// The first three sums of `P_{r,s} ⊠ M_{r′,s′}`, scaled by `k`.
fn pm_sums(params: Params, a: KacLabel, b: KacLabel, k: u64, out: &mut FormalSum) {
    let p = params.p();
    let KacLabel { r, s } = a;
    let KacLabel { r: r2, s: s2 } = b;
    let pp = |r, l| Indecomposable::p_norm(params, r, l);
    let r0 = r + r2 - 1;
    let odd = (s + s2 + 1).rem_euclid(2);
    let odd_p = (p + s + s2 + 1).rem_euclid(2);

    for l in ells((s - s2).abs() + 1, (s + s2 - 1).min(p), odd) {
        out.insert(pp(r0, l), k);
    }
    for l in ells(2 * p + 1 - s - s2, p, odd) {
        out.insert(pp(r0, l), k);
    }
    for l in ells(p + s - s2 + 1, p, odd_p) {
        out.insert(pp(r + r2, l), k);
        out.insert(pp(r + r2 - 2, l), k);
    }
}

/// `P_{r,s} ⊠ M_{r′,s′}` for `1 ≤ s ≤ p−1`.
pub fn fuse_pm(params: Params, a: &Indecomposable, b: &Indecomposable) -> Result<FormalSum> {
    count_call();
    let pa = proj_label(a, "fuse_pm")?;
    let mb = simple_label(b, "fuse_pm")?;
    let mut out = FormalSum::zero();
    pm_sums(params, pa, mb, 1, &mut out);
    Ok(out)
}

/// `P_{r,s} ⊠ P_{r′,s′}` for `1 ≤ s, s′ ≤ p−1`.
pub fn fuse_pp(params: Params, a: &Indecomposable, b: &Indecomposable) -> Result<FormalSum> {
    count_call();
    let KacLabel { r, s } = proj_label(a, "fuse_pp")?;
    let KacLabel { r: r2, s: s2 } = proj_label(b, "fuse_pp")?;
    let p = params.p();
    let pp = |r, l| Indecomposable::p_norm(params, r, l);
    let odd = (s + s2 + 1).rem_euclid(2);
    let odd_p = (p + s + s2 + 1).rem_euclid(2);
    let rr = r + r2;

    let mut out = FormalSum::zero();
    pm_sums(params, KacLabel::extended(r, s), KacLabel::extended(r2, s2), 2, &mut out);
    for l in ells((s + s2 - p).abs() + 1, (s - s2 + p - 1).min(p), odd_p) {
        out.insert(pp(rr, l), 1);
        out.insert(pp(rr - 2, l), 1);
    }
    for l in ells(p - s + s2 + 1, p, odd_p) {
        out.insert(pp(rr, l), 1);
        out.insert(pp(rr - 2, l), 1);
    }
    for l in ells(s + s2 + 1, p, odd) {
        out.insert(pp(rr + 1, l), 1);
        out.insert(pp(rr - 1, l), 2);
        out.insert(pp(rr - 3, l), 1);
    }
    Ok(out)
}

/// Fusion of two indecomposables. Simple and projective pairs use the
/// closed forms; Fock modules are accepted only against a generator.
pub fn fuse_indecomposable(params: Params, a: &Indecomposable, b: &Indecomposable) -> Result<FormalSum> {
    use Indecomposable::*;
    match (a, b) {
        (Simple(_), Simple(_)) => fuse_mm(params, a, b),
        (Proj(_), Simple(_)) => fuse_pm(params, a, b),
        (Simple(_), Proj(_)) => fuse_pm(params, b, a),
        (Proj(_), Proj(_)) => fuse_pp(params, a, b),
        (Simple(_), Fock(_)) if Generator::classify(params, a).is_some() => fuse_generators(params, a, b),
        (Fock(_), Simple(_)) if Generator::classify(params, b).is_some() => fuse_generators(params, b, a),
        _ => Err(Error::Unsupported(format!("fusion {a} ⊠ {b}"))),
    }
}

/// Bilinear extension of [`fuse_indecomposable`].
pub fn fuse(params: Params, a: &FormalSum, b: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero();
    for (x, m) in a.iter() {
        for (y, n) in b.iter() {
            out += &fuse_indecomposable(params, x, y)?.scaled(m * n);
        }
    }
    Ok(out)
}

/// Product of composition-factor classes: flatten both sides, fuse the
/// simples, flatten again.
pub fn grothendieck_product(params: Params, a: &FormalSum, b: &FormalSum) -> Result<FormalSum> {
    let fa = flatten(params, a);
    let fb = flatten(params, b);
    let mut out = FormalSum::zero();
    for (x, m) in fa.iter() {
        for (y, n) in fb.iter() {
            for (z, k) in fuse_mm(params, x, y)?.iter() {
                out += &composition_factors(params, z).scaled(m * n * k);
            }
        }
    }
    Ok(out)
}
