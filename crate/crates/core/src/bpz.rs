//! Solutions of the second-order BPZ equation
//!
//! ```text
//! p x(1−x) f″ + (1−2x) f′ − h_{1,2} f / (x(1−x)) = 0
//! ```
//!
//! as Frobenius series at `x = 0` and `x = 1`, and the 2×2 matrices relating
//! the two bases, both from Γ-function closed forms and by matching the
//! series on the overlap of their discs.
//!
//! With `g = x^{−1/2p}(1−x)^{−1/2p} f` the equation becomes Gauss's
//! hypergeometric equation with `a = 1/p`, `b = 3/p − 1`, `c = 2/p`, so
//!
//! ```text
//! φ₁ = x^{1/2p}(1−x)^{1/2p} ₂F₁(1/p, 3/p−1; 2/p; x)
//! φ₂ = x^{1−3/2p}(1−x)^{1/2p} ₂F₁(1−1/p, 1/p; 2−2/p; x)
//! ```
//!
//! and `ψᵢ(x) = φᵢ(1−x)`. At `p = 2` the exponents coincide and `φ₂` picks
//! up a logarithm.

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::labels::{weight, KacLabel, Params};

pub const DEFAULT_TERMS: usize = 400;
/// Points in the overlap of the two discs used for basis matching.
pub const MATCH_POINTS: [f64; 3] = [0.6, 0.65, 0.7];
pub const MATCH_TOLERANCE: f64 = 1e-8;
const SERIES_TOLERANCE: f64 = 1e-15;
const MAX_SERIES_TERMS: usize = 200_000;

/// Value and first two derivatives of a function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        Self { v, d1: 0.0, d2: 0.0 }
    }

    pub fn mul(self, o: Self) -> Self {
        Self {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }

    pub fn add(self, o: Self) -> Self {
        Self { v: self.v + o.v, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }

    /// Jet of `t^e (1−t)^q` at `t ∈ (0,1)`.
    pub fn prefactor(t: f64, e: f64, q: f64) -> Self {
        let v = t.powf(e) * (1.0 - t).powf(q);
        let l1 = e / t - q / (1.0 - t);
        let l2 = -e / (t * t) - q / ((1.0 - t) * (1.0 - t));
        Self { v, d1: v * l1, d2: v * (l1 * l1 + l2) }
    }

    pub fn log(t: f64) -> Self {
        Self { v: t.ln(), d1: 1.0 / t, d2: -1.0 / (t * t) }
    }

    /// Jet of `x ↦ f(1−x)` given the jet of `f` at `1−x`.
    pub fn reflect(self) -> Self {
        Self { v: self.v, d1: -self.d1, d2: self.d2 }
    }
}

/// Gauss hypergeometric series `₂F₁(a, b; c; x)` for `|x| < 1`, summed until
/// a geometric bound on the tail drops below `1e−15` relative to the sum.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::NonConvergent(format!("2F1 series needs |x| < 1, got {x}")));
    }
    if c <= 0.0 && c == c.round() {
        return Err(Error::NonConvergent(format!("2F1 undefined for c = {c}")));
    }
    let (aa, ab, ac) = (a.abs(), b.abs(), c.abs());
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        // for k ≥ m > |c| every ratio |t_{k+1}/t_k| is at most q
        let m = nf + 1.0;
        if m > ac {
            let q = x.abs() * (1.0 + aa / m) * (1.0 + ab / m) / (1.0 - ac / m);
            if q < 1.0 && term.abs() * q / (1.0 - q) < SERIES_TOLERANCE * sum.abs().max(1.0) {
                return Ok(sum);
            }
        }
    }
    Err(Error::NonConvergent(format!("2F1({a}, {b}; {c}; {x}) did not converge")))
}

/// Residual of the BPZ equation for a function given by its jet.
pub fn ode_residual(params: Params, f: impl Fn(f64) -> Jet, x: f64) -> f64 {
    let p = params.p() as f64;
    let h = h12(params);
    let j = f(x);
    p * x * (1.0 - x) * j.d2 + (1.0 - 2.0 * x) * j.d1 - h / (x * (1.0 - x)) * j.v
}

/// Residual of `p x(1−x) g″ + 2(1−2x) g′ + (1−3/p) g` for
/// `g = x^{−1/2p}(1−x)^{−1/2p} f`.
pub fn substituted_residual(params: Params, f: impl Fn(f64) -> Jet, x: f64) -> f64 {
    let p = params.p() as f64;
    let e = -1.0 / (2.0 * p);
    let g = Jet::prefactor(x, e, e).mul(f(x));
    p * x * (1.0 - x) * g.d2 + 2.0 * (1.0 - 2.0 * x) * g.d1 + (1.0 - 3.0 / p) * g.v
}

fn h12(params: Params) -> f64 {
    let h = weight(params, KacLabel::extended(1, 2));
    *h.numer() as f64 / *h.denom() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionPoint {
    Zero,
    One,
}

/// A Frobenius solution around `x = 0` or `x = 1`. With `t = x` or `1−x`:
///
/// ```text
/// f = t^{exponent} (1−t)^{1/2p} Σ cₙ tⁿ                      (no log)
/// f = log t · t^{exponent} (1−t)^{1/2p} Σ c′ₙ tⁿ
///     + t^{exponent} (1−t)^{1/2p} Σ cₙ tⁿ                    (log_flag)
/// ```
///
/// where `c′` is stored in `log_partner`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSolution {
    pub exponent: f64,
    pub log_flag: bool,
    pub coefficients: Vec<f64>,
    pub log_partner: Option<Vec<f64>>,
    pub expansion_point: ExpansionPoint,
    /// `(a, b, c)` of the hypergeometric series carrying the recurrence.
    pub hypergeometric: (f64, f64, f64),
    tail_exponent: f64,
}

fn hypergeometric_coefficients(a: f64, b: f64, c: f64, n_terms: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_terms);
    let mut cn = 1.0;
    for n in 0..n_terms {
        out.push(cn);
        let nf = n as f64;
        cn *= (nf + a) * (nf + b) / ((nf + 1.0) * (nf + c));
    }
    out
}

fn series_jet(coeffs: &[f64], t: f64) -> Jet {
    let (mut v, mut d1, mut d2) = (0.0, 0.0, 0.0);
    let mut pow = 1.0; // t^n
    let mut pow1 = 0.0; // t^{n−1}
    let mut pow2 = 0.0; // t^{n−2}
    for (n, c) in coeffs.iter().enumerate() {
        let nf = n as f64;
        v += c * pow;
        d1 += c * nf * pow1;
        d2 += c * nf * (nf - 1.0) * pow2;
        pow2 = pow1;
        pow1 = pow;
        pow *= t;
    }
    Jet { v, d1, d2 }
}

impl FrobeniusSolution {
    /// Jet in the variable `t` of the expansion point.
    fn local_jet(&self, t: f64) -> Jet {
        let pre = Jet::prefactor(t, self.exponent, self.tail_exponent);
        let main = pre.mul(series_jet(&self.coefficients, t));
        match &self.log_partner {
            Some(partner) => main.add(Jet::log(t).mul(pre.mul(series_jet(partner, t)))),
            None => main,
        }
    }

    /// Value and `x`-derivatives at `x ∈ (0, 1)`.
    pub fn eval(&self, x: f64) -> Jet {
        match self.expansion_point {
            ExpansionPoint::Zero => self.local_jet(x),
            ExpansionPoint::One => self.local_jet(1.0 - x).reflect(),
        }
    }

    /// Largest relative violation of
    /// `c_{n+1}(n+1)(n+c) = cₙ(n+a)(n+b)` by the hypergeometric coefficients.
    pub fn recurrence_residual(&self) -> f64 {
        let (a, b, c) = self.hypergeometric;
        let coeffs = self.log_partner.as_ref().unwrap_or(&self.coefficients);
        coeffs
            .windows(2)
            .enumerate()
            .map(|(n, w)| {
                let nf = n as f64;
                let lhs = w[1] * (nf + 1.0) * (nf + c);
                let rhs = w[0] * (nf + a) * (nf + b);
                (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE)
            })
            .fold(0.0, f64::max)
    }

    fn mirrored(&self) -> Self {
        let expansion_point = match self.expansion_point {
            ExpansionPoint::Zero => ExpansionPoint::One,
            ExpansionPoint::One => ExpansionPoint::Zero,
        };
        Self { expansion_point, ..self.clone() }
    }
}

/// `(φ₁, φ₂)` at `x = 0`.
pub fn phi_basis(params: Params, n_terms: usize) -> Result<(FrobeniusSolution, FrobeniusSolution)> {
    if n_terms < 16 {
        return Err(Error::InvalidLabel(format!("need at least 16 series terms, got {n_terms}")));
    }
    let p = params.p() as f64;
    let q = 1.0 / (2.0 * p);
    let h1 = (1.0 / p, 3.0 / p - 1.0, 2.0 / p);
    let c1 = hypergeometric_coefficients(h1.0, h1.1, h1.2, n_terms);
    let phi1 = FrobeniusSolution {
        exponent: q,
        log_flag: false,
        coefficients: c1.clone(),
        log_partner: None,
        expansion_point: ExpansionPoint::Zero,
        hypergeometric: h1,
        tail_exponent: q,
    };
    let phi2 = if params.p() == 2 {
        // repeated root: G has dₙ = cₙ Σ_{k<n} [1/(a+k) + 1/(b+k) − 2/(k+1)], G(0) = 0
        let (a, b, _) = h1;
        let mut harmonic = 0.0;
        let mut d = Vec::with_capacity(n_terms);
        for (n, cn) in c1.iter().enumerate() {
            d.push(cn * harmonic);
            let k = n as f64;
            harmonic += 1.0 / (a + k) + 1.0 / (b + k) - 2.0 / (k + 1.0);
        }
        FrobeniusSolution {
            exponent: q,
            log_flag: true,
            coefficients: d,
            log_partner: Some(c1),
            expansion_point: ExpansionPoint::Zero,
            hypergeometric: h1,
            tail_exponent: q,
        }
    } else {
        let h2 = (1.0 - 1.0 / p, 1.0 / p, 2.0 - 2.0 / p);
        FrobeniusSolution {
            exponent: 1.0 - 3.0 * q,
            log_flag: false,
            coefficients: hypergeometric_coefficients(h2.0, h2.1, h2.2, n_terms),
            log_partner: None,
            expansion_point: ExpansionPoint::Zero,
            hypergeometric: h2,
            tail_exponent: q,
        }
    };
    Ok((phi1, phi2))
}

/// `(ψ₁, ψ₂)` at `x = 1`, with `ψᵢ(x) = φᵢ(1−x)`.
pub fn psi_basis(params: Params, n_terms: usize) -> Result<(FrobeniusSolution, FrobeniusSolution)> {
    let (a, b) = phi_basis(params, n_terms)?;
    Ok((a.mirrored(), b.mirrored()))
}

/// Sample grid inside the disc of convergence of a basis.
pub fn validity_grid(point: ExpansionPoint) -> Vec<f64> {
    let near: Vec<f64> = (0..12).map(|i| 0.05 + 0.05 * i as f64).collect();
    match point {
        ExpansionPoint::Zero => near,
        ExpansionPoint::One => near.iter().rev().map(|t| 1.0 - t).collect(),
    }
}

/// `rows[i]` expresses the i-th function of one basis in the other:
/// `φᵢ = Σⱼ forward[i][j] ψⱼ` and `ψᵢ = Σⱼ inverse[i][j] φⱼ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionMatrix {
    pub forward: [[f64; 2]; 2],
    pub inverse: [[f64; 2]; 2],
}

/// Basis-matching result with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConnection {
    pub matrix: ConnectionMatrix,
    /// Worst 2-norm condition number of the matching systems.
    pub condition: f64,
    /// Largest disagreement between the matching points.
    pub spread: f64,
}

pub fn mat_mul(a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn mat_inv(m: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]]
}

fn condition_number(m: &[[f64; 2]; 2]) -> f64 {
    let (a, b, c, d) = (m[0][0], m[0][1], m[1][0], m[1][1]);
    let fro2 = a * a + b * b + c * c + d * d;
    let det = (a * d - b * c).abs();
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    let smax = ((fro2 + disc) / 2.0).sqrt();
    let smin = ((fro2 - disc) / 2.0).max(0.0).sqrt();
    if smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    }
}

/// Closed-form connection matrix.
///
/// For `p ≥ 3`, with `A = 1/(2cos(π/p))`:
/// `φ₁ = A ψ₁ + ((3−p)/(2−p)) Γ(2/p)²/(Γ(1/p)Γ(3/p)) ψ₂` and
/// `φ₂ = Γ(2−2/p)Γ(1−2/p)/(Γ(1−1/p)Γ(2−3/p)) ψ₁ − A ψ₂`.
/// For `p = 2` the first row is `(ln 4/π, −1/π)`; the second row follows
/// from `C² = I`, which holds because the equation is symmetric under
/// `x ↦ 1−x`.
pub fn connection_closed(params: Params) -> ConnectionMatrix {
    let forward = if params.p() == 2 {
        let a = 4f64.ln() / PI;
        let b = -1.0 / PI;
        [[a, b], [(1.0 - a * a) / b, -a]]
    } else {
        let p = params.p() as f64;
        let a = 1.0 / (2.0 * (PI / p).cos());
        let b = (3.0 - p) / (2.0 - p) * gamma(2.0 / p).powi(2) / (gamma(1.0 / p) * gamma(3.0 / p));
        let c = gamma(2.0 - 2.0 / p) * gamma(1.0 - 2.0 / p) / (gamma(1.0 - 1.0 / p) * gamma(2.0 - 3.0 / p));
        [[a, b], [c, -a]]
    };
    ConnectionMatrix { forward, inverse: mat_inv(&forward) }
}

/// Express `targets` in the basis `basis` by solving the value/derivative
/// system at each matching point and averaging.
fn match_bases(
    targets: &(FrobeniusSolution, FrobeniusSolution),
    basis: &(FrobeniusSolution, FrobeniusSolution),
) -> ([[f64; 2]; 2], f64, f64) {
    let mut solutions = Vec::new();
    let mut condition: f64 = 0.0;
    for &x in &MATCH_POINTS {
        let (b1, b2) = (basis.0.eval(x), basis.1.eval(x));
        let w = [[b1.v, b2.v], [b1.d1, b2.d1]];
        condition = condition.max(condition_number(&w));
        let winv = mat_inv(&w);
        let mut rows = [[0.0; 2]; 2];
        for (i, t) in [&targets.0, &targets.1].into_iter().enumerate() {
            let j = t.eval(x);
            rows[i] = [winv[0][0] * j.v + winv[0][1] * j.d1, winv[1][0] * j.v + winv[1][1] * j.d1];
        }
        solutions.push(rows);
    }
    let k = solutions.len() as f64;
    let mut mean = [[0.0; 2]; 2];
    for s in &solutions {
        for i in 0..2 {
            for j in 0..2 {
                mean[i][j] += s[i][j] / k;
            }
        }
    }
    let spread = solutions
        .iter()
        .flat_map(|s| (0..4).map(move |ij| (s[ij / 2][ij % 2] - mean[ij / 2][ij % 2]).abs()))
        .fold(0.0, f64::max);
    (mean, condition, spread)
}

/// Connection matrix obtained by matching the φ- and ψ-series at the points
/// in [`MATCH_POINTS`].
pub fn connection_numeric(params: Params, n_terms: usize) -> Result<NumericConnection> {
    let phi = phi_basis(params, n_terms)?;
    let psi = psi_basis(params, n_terms)?;
    let (forward, c1, s1) = match_bases(&phi, &psi);
    let (inverse, c2, s2) = match_bases(&psi, &phi);
    let (condition, spread) = (c1.max(c2), s1.max(s2));
    if !condition.is_finite() || condition > 1e10 || spread > MATCH_TOLERANCE {
        return Err(Error::IllConditioned { condition, spread });
    }
    Ok(NumericConnection { matrix: ConnectionMatrix { forward, inverse }, condition, spread })
}

/// The nonzero quantity the rigidity of `M_{1,2}` rests on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RigidityWitness {
    /// `p ≥ 4`: the `ψ₁`-coefficient of `φ₁`, equal to `1/(2cos(π/p))`.
    Generic(f64),
    /// `p = 3`: Wronskian of `ψ₁, ψ₂` at `x = 3/4` (they are independent
    /// while `φ₁ = ψ₁`).
    Wronskian(f64),
    /// `p = 2`: minus the `ψ₂`-coefficient of `φ₁`, equal to `1/π`.
    Logarithmic(f64),
}

impl RigidityWitness {
    pub fn value(self) -> f64 {
        match self {
            Self::Generic(v) | Self::Wronskian(v) | Self::Logarithmic(v) => v,
        }
    }
}

pub fn rigidity_coefficient(params: Params) -> Result<RigidityWitness> {
    match params.p() {
        2 => {
            let c = connection_numeric(params, DEFAULT_TERMS)?;
            Ok(RigidityWitness::Logarithmic(-c.matrix.forward[0][1]))
        }
        3 => {
            let (a, b) = psi_basis(params, DEFAULT_TERMS)?;
            let (ja, jb) = (a.eval(0.75), b.eval(0.75));
            Ok(RigidityWitness::Wronskian(ja.v * jb.d1 - ja.d1 * jb.v))
        }
        _ => {
            let c = connection_numeric(params, DEFAULT_TERMS)?;
            Ok(RigidityWitness::Generic(c.matrix.forward[0][0]))
        }
    }
}
