#![allow(dead_code)]
//! Shared helpers for integration tests: frozen high-precision values.

pub mod oracles;

use prabhakar_core::Complex64;
use serde_json::Value;
use std::sync::OnceLock;

pub fn reference() -> &'static Value {
    static REF: OnceLock<Value> = OnceLock::new();
    REF.get_or_init(|| {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/reference_values.json");
        serde_json::from_str(&std::fs::read_to_string(path).expect("reference file")).expect("valid json")
    })
}

pub fn num(v: &Value) -> f64 {
    v.as_str().expect("string number").parse().expect("parsable number")
}

pub fn cnum(v: &Value) -> Complex64 {
    Complex64::new(num(&v[0]), num(&v[1]))
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}
