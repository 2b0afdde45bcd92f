//! Browser bindings for the demo page. Every entry point takes weights as a
//! comma separated string and returns a JSON document or an error message.

use genfrob_core::frobenius::ScanOptions;
use genfrob_core::job::{self, Command, Format, JobSpec};
use genfrob_core::module::Analysis;
use genfrob_core::poset::{module_poset, structure_poset};
use genfrob_core::LatticeBasis;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Degree scans stop here so a careless input cannot freeze the tab.
const DEGREE_CAP: i64 = 200_000;
const MAX_K: usize = 12;
const MAX_WEIGHT: i64 = 500;

fn spec(weights: &str, command: Command, k: usize, k_max: usize) -> Result<JobSpec, String> {
    let weights = job::parse_weights(weights).map_err(|e| e.to_string())?;
    if weights.as_slice().iter().any(|&a| a > MAX_WEIGHT) {
        return Err(format!("weights above {MAX_WEIGHT} are not supported here"));
    }
    if k > MAX_K || k_max > MAX_K {
        return Err(format!("k above {MAX_K} is not supported here"));
    }
    let mut spec = JobSpec::new(weights, command);
    spec.k = k;
    spec.k_max = k_max;
    spec.format = Format::Json;
    spec.scan = ScanOptions { degree_cap: Some(DEGREE_CAP) };
    Ok(spec)
}

fn run(spec: &JobSpec) -> Result<String, String> {
    job::run(spec).map(|out| out.text).map_err(|e| e.message)
}

/// `F_k`, `m_k` and `b_k` for `k = 1..=k_max`.
pub fn sequence(weights: &str, k_max: usize) -> Result<String, String> {
    run(&spec(weights, Command::Sequence, 1, k_max)?)
}

/// Minimal generators of `M^(k)` with supports and classification.
pub fn module(weights: &str, k: usize) -> Result<String, String> {
    run(&spec(weights, Command::Module, k, k)?)
}

/// The whole structure poset with its cover relations, and which elements
/// the module poset of `M^(k)` occupies.
pub fn poset(weights: &str, k: usize) -> Result<String, String> {
    let spec = spec(weights, Command::Poset, k, k)?;
    if k == 0 {
        return Err("k must be at least 1".into());
    }
    let basis = LatticeBasis::kernel(spec.weights).map_err(|e| e.to_string())?;
    let an = Analysis::new(&basis, k).map_err(|e| e.to_string())?;
    let sp = structure_poset(&an);
    let mp = module_poset(&an, &sp, k).map_err(|e| e.to_string())?;
    let f_k = an.frobenius(k).map_err(|e| e.to_string())?;
    let index = |cs: &[genfrob_core::QuotientClass]| -> Vec<usize> {
        cs.iter().filter_map(|c| sp.position(c)).collect()
    };
    let doc = json!({
        "k": k,
        "m_k": mp.m_k,
        "F_k": f_k,
        "elements": sp.elements.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "degrees": sp.elements.iter().map(|c| c.degree).collect::<Vec<_>>(),
        "hasse": sp.hasse,
        "module": index(&mp.labels),
        "minimal": index(&mp.minimal),
        "full": mp.is_full(&sp),
    });
    Ok(doc.to_string())
}

#[wasm_bindgen(js_name = sequence)]
pub fn sequence_js(weights: &str, k_max: usize) -> Result<String, JsError> {
    sequence(weights, k_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = module)]
pub fn module_js(weights: &str, k: usize) -> Result<String, JsError> {
    module(weights, k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = poset)]
pub fn poset_js(weights: &str, k: usize) -> Result<String, JsError> {
    poset(weights, k).map_err(|e| JsError::new(&e))
}
