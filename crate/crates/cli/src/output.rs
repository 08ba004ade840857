use serde::Serialize;
use serde_json::{json, Value};

use singlet_core::triplet::TripletIndec;
use singlet_core::{FormalSum, Indecomposable, Kind};

#[derive(Serialize)]
pub struct Term {
    pub kind: &'static str,
    pub r: i64,
    pub s: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub mult: u64,
}

pub fn term(x: &Indecomposable, mult: u64) -> Term {
    Term {
        kind: x.kind().tag(),
        r: x.r(),
        s: x.s(),
        n: (x.kind() == Kind::JordanFock).then(|| x.n()),
        mult,
    }
}

pub fn sum_json(x: &FormalSum) -> Vec<Term> {
    x.iter().map(|(y, m)| term(y, m)).collect()
}

pub fn triplet_json(t: &TripletIndec) -> Value {
    json!({ "kind": t.kind.tag(), "rbar": t.rbar, "s": t.s })
}

/// Round to 12 significant digits so printed floats are stable.
pub fn float12(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    json!(rounded)
}

pub fn to_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values serialize");
    s.push('\n');
    s
}
