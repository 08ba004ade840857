use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use singlet_core::bpz::{
    connection_closed, connection_numeric, mat_mul, ode_residual, phi_basis, psi_basis, rigidity_coefficient,
    substituted_residual, validity_grid, DEFAULT_TERMS, MATCH_TOLERANCE,
};
use singlet_core::catalog::{composition_factors, dual, flatten, jordan_fock_matrices, loewy};
use singlet_core::fusion::{fuse_indecomposable, grothendieck_product};
use singlet_core::labels::{alpha_coordinate, fock_weight, lowest_weight_of_simple, weight};
use singlet_core::oracle::Oracle;
use singlet_core::triplet::{
    derived_triplet_fuse_with, induce, induce_sum, triplet_composition_factors, triplet_fuse_generator, TripletIndec,
};
use singlet_core::{FormalSum, Indecomposable, KacLabel, Params, Rational};

use crate::output::float12;

const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Suite {
    Fusion,
    Triplet,
    Bpz,
    Catalog,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Fusion => "fusion",
            Suite::Triplet => "triplet",
            Suite::Bpz => "bpz",
            Suite::Catalog => "catalog",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Catalog, Suite::Fusion, Suite::Triplet, Suite::Bpz],
            s => vec![s],
        }
    }
}

#[derive(Default)]
struct Tally {
    checks: u64,
    failures: u64,
    examples: Vec<String>,
    values: Map<String, Value>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(what());
            }
        }
    }

    fn check_result<T>(&mut self, r: singlet_core::Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }
}

pub struct SuiteResult {
    suite: Suite,
    p: i64,
    tally: Tally,
}

pub struct Summary {
    results: Vec<SuiteResult>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.tally.failures == 0)
    }

    pub fn to_json(&self) -> Value {
        let suites: Vec<Value> = self
            .results
            .iter()
            .map(|r| {
                let mut v = json!({
                    "suite": r.suite.name(),
                    "p": r.p,
                    "checks": r.tally.checks,
                    "failures": r.tally.failures,
                });
                if !r.tally.examples.is_empty() {
                    v["examples"] = json!(r.tally.examples);
                }
                if !r.tally.values.is_empty() {
                    v["values"] = Value::Object(r.tally.values.clone());
                }
                v
            })
            .collect();
        json!({
            "schema": 1,
            "passed": self.passed(),
            "checks": self.results.iter().map(|r| r.tally.checks).sum::<u64>(),
            "failures": self.results.iter().map(|r| r.tally.failures).sum::<u64>(),
            "suites": suites,
        })
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("suite\tp\tchecks\tfailures\n");
        for r in &self.results {
            s.push_str(&format!("{}\t{}\t{}\t{}\n", r.suite.name(), r.p, r.tally.checks, r.tally.failures));
        }
        s
    }
}

pub fn run(suite: Suite, ps: &[Params], rwin: i64) -> Summary {
    let tasks: Vec<(Suite, Params)> = suite.expand().into_iter().flat_map(|s| ps.iter().map(move |p| (s, *p))).collect();
    let results = tasks
        .par_iter()
        .map(|&(s, pr)| {
            let mut t = Tally::default();
            match s {
                Suite::Fusion => fusion_suite(pr, rwin, &mut t),
                Suite::Triplet => triplet_suite(pr, &mut t),
                Suite::Bpz => bpz_suite(pr, &mut t),
                Suite::Catalog => catalog_suite(pr, rwin, &mut t),
                Suite::All => unreachable!("expanded above"),
            }
            SuiteResult { suite: s, p: pr.p(), tally: t }
        })
        .collect();
    Summary { results }
}

fn window(pr: Params, rwin: i64) -> Vec<Indecomposable> {
    let p = pr.p();
    let mut v = Vec::new();
    for r in -rwin..=rwin {
        for s in 1..=p {
            v.push(Indecomposable::simple(pr, r, s).unwrap());
            if s < p {
                v.push(Indecomposable::proj(pr, r, s).unwrap());
            }
        }
    }
    v.sort();
    v
}

fn fusion_suite(pr: Params, rwin: i64, t: &mut Tally) {
    let oracle = Oracle::new(pr);
    let labels = window(pr, rwin);
    let unit = Indecomposable::simple(pr, 1, 1).unwrap();
    for a in &labels {
        let Some(u) = t.check_result(fuse_indecomposable(pr, &unit, a), || format!("unit x {a}")) else { continue };
        t.check(u == FormalSum::single(*a), || format!("unit x {a} = {u}"));
        for b in &labels {
            let what = || format!("{a} x {b}");
            let Some(closed) = t.check_result(fuse_indecomposable(pr, a, b), what) else { continue };
            let Some(rec) = t.check_result(oracle.fuse_indecomposable(a, b), what) else { continue };
            t.check(closed == rec, || format!("{a} x {b}: closed {closed}, oracle {rec}"));
            if let Some(swapped) = t.check_result(fuse_indecomposable(pr, b, a), what) {
                t.check(closed == swapped, || format!("{a} x {b} not commutative"));
            }
            let (x, y) = (FormalSum::single(*a), FormalSum::single(*b));
            if let Some(g) = t.check_result(grothendieck_product(pr, &x, &y), what) {
                t.check(flatten(pr, &closed) == g, || format!("{a} x {b}: composition factors differ"));
            }
        }
        if a.is_simple() {
            let d = dual(a).unwrap();
            if let Some(prod) = t.check_result(fuse_indecomposable(pr, a, &d), || format!("{a} x dual")) {
                let target = Indecomposable::proj(pr, 1, a.s()).map(|_| {
                    if a.s() < pr.p() {
                        unit
                    } else {
                        Indecomposable::proj(pr, 1, 1).unwrap()
                    }
                });
                let target = target.unwrap();
                t.check(prod.multiplicity(&target) == 1, || format!("{a} x {d} = {prod}"));
            }
        }
    }
}

fn triplet_suite(pr: Params, t: &mut Tally) {
    let p = pr.p();
    let w = |r, s| TripletIndec::w(pr, r, s).unwrap();
    let simples: Vec<TripletIndec> = (1..=2).flat_map(|r| (1..=p).map(move |s| (r, s))).map(|(r, s)| w(r, s)).collect();
    let mut labels = simples.clone();
    labels.extend((1..=2).map(|r| TripletIndec::r(pr, r, p - 1).unwrap()));
    let shifts = [-1, 0, 1];

    for g in [w(2, 1), w(1, 2)] {
        for x in &simples {
            let Some(expected) = t.check_result(triplet_fuse_generator(pr, &g, x), || format!("{g} x {x}")) else {
                continue;
            };
            for sa in shifts {
                for sb in shifts {
                    let got = derived_triplet_fuse_with(pr, &g, x, sa, sb);
                    if let Some(got) = t.check_result(got, || format!("{g} x {x}")) {
                        t.check(got == expected, || format!("{g} x {x} ({sa},{sb}): {got} vs {expected}"));
                    }
                }
            }
        }
    }
    for a in &labels {
        for b in &labels {
            let Some(base) = t.check_result(derived_triplet_fuse_with(pr, a, b, 0, 0), || format!("{a} x {b}")) else {
                continue;
            };
            for sa in shifts {
                for sb in shifts {
                    if let Some(got) = t.check_result(derived_triplet_fuse_with(pr, a, b, sa, sb), || format!("{a} x {b}")) {
                        t.check(got == base, || format!("{a} x {b} depends on preimage ({sa},{sb})"));
                    }
                }
            }
        }
    }
    for r in -2..=2 {
        let px = Indecomposable::proj(pr, r, p - 1).unwrap();
        let rx = induce(pr, &px).unwrap();
        let induced = induce_sum(pr, &composition_factors(pr, &px)).unwrap();
        t.check(induced == triplet_composition_factors(pr, &rx), || format!("factors of {px} vs {rx}"));
    }
}

fn bpz_suite(pr: Params, t: &mut Tally) {
    let p = pr.p();
    let closed = connection_closed(pr);
    if let Some(num) = t.check_result(connection_numeric(pr, DEFAULT_TERMS), || "basis matching".into()) {
        for i in 0..2 {
            for j in 0..2 {
                let (a, b) = (num.matrix.forward[i][j], closed.forward[i][j]);
                t.check((a - b).abs() < MATCH_TOLERANCE, || {
                    format!("entry {}{}: numeric {a:.12} vs closed {b:.12}", i + 1, j + 1)
                });
            }
        }
        let id = mat_mul(&num.matrix.forward, &num.matrix.inverse);
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                t.check((id[i][j] - want).abs() < 1e-7, || format!("round trip entry {}{}", i + 1, j + 1));
            }
        }
        let flat = |m: &[[f64; 2]; 2]| json!([[float12(m[0][0]), float12(m[0][1])], [float12(m[1][0]), float12(m[1][1])]]);
        t.values.insert("numeric".into(), flat(&num.matrix.forward));
        t.values.insert("closed".into(), flat(&closed.forward));
        t.values.insert("condition".into(), float12(num.condition));
        t.values.insert("spread".into(), float12(num.spread));
    }
    if let Some(w) = t.check_result(rigidity_coefficient(pr), || "rigidity coefficient".into()) {
        t.check(w.value().abs() > 1e-10, || format!("rigidity coefficient {w:?}"));
        t.values.insert("rigidity".into(), float12(w.value()));
    }
    let bases = phi_basis(pr, DEFAULT_TERMS).and_then(|a| Ok((a, psi_basis(pr, DEFAULT_TERMS)?)));
    if let Some(((a, b), (c, d))) = t.check_result(bases, || format!("Frobenius bases at p = {p}")) {
        for (name, f) in [("phi1", &a), ("phi2", &b), ("psi1", &c), ("psi2", &d)] {
            for x in validity_grid(f.expansion_point) {
                let r = ode_residual(pr, |y| f.eval(y), x);
                t.check(r.abs() < 1e-8, || format!("{name} residual {r:e} at {x}"));
                let g = substituted_residual(pr, |y| f.eval(y), x);
                t.check(g.abs() < 1e-8, || format!("{name} substituted residual {g:e} at {x}"));
            }
        }
    }
}

fn catalog_suite(pr: Params, rwin: i64, t: &mut Tally) {
    let p = pr.p();
    for x in window(pr, rwin) {
        let d = loewy(pr, &x).unwrap();
        t.check(d.flatten() == composition_factors(pr, &x), || format!("Loewy layers of {x}"));
        let y = dual(&x).unwrap();
        t.check(dual(&y).unwrap() == x && (y == x) == (x.r() == 1), || format!("dual of {x}"));
        let expected = if x.is_simple() { 1 } else { 4 };
        t.check(composition_factors(pr, &x).total() == expected, || format!("length of {x}"));
    }
    for r in -rwin..=rwin {
        for s in 1..=p {
            let l = KacLabel::extended(r, s);
            let k = Rational::from_integer(alpha_coordinate(pr, l));
            t.check(fock_weight(pr, k) == weight(pr, l), || format!("Fock weight at ({r},{s})"));
            t.check(lowest_weight_of_simple(pr, l) >= pr.weight_lower_bound(), || format!("weight bound at ({r},{s})"));
            t.check(alpha_coordinate(pr, KacLabel::extended(r + 1, s + p)) == alpha_coordinate(pr, l), || {
                format!("periodicity at ({r},{s})")
            });
        }
    }
    for r in -1..=2 {
        for n in 2..=3 {
            let j = jordan_fock_matrices(pr, r, n).unwrap();
            t.check(j.l0.commutator(&j.h0).is_zero(), || format!("[L0, H0] at r={r}, n={n}"));
            if r == 1 {
                t.check(j.h0.is_nilpotent() && j.h0.is_single_jordan_block(), || format!("H0 at n={n}"));
            } else {
                t.check(j.l0.is_single_jordan_block(), || format!("L0 at r={r}, n={n}"));
            }
        }
    }
}
