//! Frozen `F_k`/`m_k` sequences against both the table scan and the module
//! pipeline.

mod common;

use common::*;
use genfrob_core::frobenius::sequence_report;
use serde_json::Value;

fn fixtures() -> serde_json::Map<String, Value> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/sequences.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

fn parse_key(key: &str) -> Vec<i64> {
    key.split(',').map(|t| t.parse().unwrap()).collect()
}

#[test]
fn sequences_match_fixtures() {
    for (key, fx) in fixtures() {
        let f = ints(&fx["F_k"]);
        let r = sequence_report(&kernel(&parse_key(&key)), f.len()).unwrap();
        assert_eq!(r.f_values, f, "{key}");
        assert_eq!(r.m_values, ints(&fx["m_k"]), "{key}");
        assert_eq!(r.b_values, ints(&fx["b"]), "{key}");
        assert_eq!(r.f_diffs, ints(&fx["F_diffs"]), "{key}");
        assert_eq!(r.m_diffs, ints(&fx["m_diffs"]), "{key}");
        assert_eq!(r.dimension as i64, fx["dimension"].as_i64().unwrap(), "{key}");
        assert!(r.bound_checks.all(), "{key}");
    }
}

#[test]
fn module_pipeline_matches_fixtures() {
    for (key, fx) in fixtures() {
        let f = ints(&fx["F_k"]);
        let m = ints(&fx["m_k"]);
        let k_max = f.len().min(4);
        let an = analysis(&parse_key(&key), k_max);
        for k in 1..=k_max {
            assert_eq!(an.m_value(k).unwrap(), m[k - 1], "{key} k={k}");
            assert_eq!(an.frobenius_via_module(k).unwrap(), f[k - 1], "{key} k={k}");
        }
    }
}
