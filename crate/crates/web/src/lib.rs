//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes plain numbers or text and returns a JSON string; errors
//! come back as a thrown string. The `*_json` functions do the work and are
//! what the native tests exercise.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use gonal_core::action::build_action;
use gonal_core::atlas::{galois_closure, orbit_classes, Hyperplane};
use gonal_core::calculus::{decomposition_report, genus_quotient_by_core};
use gonal_core::words::parse_generator_words;
use gonal_core::CoverParams;

/// Keeps the atlas responsive in a browser tab: `q^n <= 3^13`.
pub const BROWSER_ATLAS_CAP: u128 = 1_594_323;

/// Most classes listed in an atlas response.
pub const MAX_LISTED: usize = 200;

fn params(p: u32, q: u32, r: u32) -> Result<CoverParams, String> {
    CoverParams::new(p, q, r).map_err(|e| e.to_string())
}

pub fn cover_invariants_json(p: u32, q: u32, r: u32) -> Result<String, String> {
    let c = params(p, q, r)?;
    let rep = decomposition_report(&c).map_err(|e| e.to_string())?;
    let genus_z: serde_json::Map<String, Value> =
        rep.genus_z.iter().map(|(d, g)| (d.to_string(), json!(g.to_string()))).collect();
    Ok(json!({
        "p": p, "q": q, "r": r,
        "n": c.n(),
        "g": rep.g,
        "g_tilde": rep.g_tilde.to_string(),
        "g_y": rep.g_y.to_string(),
        "g_t": rep.g_t.to_string(),
        "prym_dim": rep.prym_dim.to_string(),
        "m": rep.m.to_string(),
        "t": rep.t.to_string(),
        "s0": rep.s0,
        "genus_by_core_dim": genus_z,
        "checks": rep.checks.iter().map(|(n, ok)| json!({"name": n, "pass": ok})).collect::<Vec<_>>(),
    })
    .to_string())
}

pub fn orbit_atlas_json(p: u32, q: u32, r: u32, limit: usize) -> Result<String, String> {
    let c = params(p, q, r)?;
    let action = build_action(&c);
    let classes = orbit_classes(&action, BROWSER_ATLAS_CAP).map_err(|e| e.to_string())?;
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for k in &classes {
        *histogram.entry(k.core_dim()).or_default() += 1;
    }
    let listed: Vec<Value> = classes
        .iter()
        .take(limit.min(MAX_LISTED))
        .map(|k| {
            json!({
                "representative": k.representative.to_string(),
                "core_dim": k.core_dim(),
                "group": format!("Z_{q}^{} ⋊ Z_{p}", c.n() - k.core_dim()),
            })
        })
        .collect();
    Ok(json!({
        "n": c.n(),
        "s0": c.s0(),
        "t": classes.len(),
        "histogram": histogram.iter().map(|(d, n)| json!({"core_dim": d, "classes": n})).collect::<Vec<_>>(),
        "classes": listed,
    })
    .to_string())
}

pub fn galois_from_words_json(p: u32, q: u32, r: u32, words: &str) -> Result<String, String> {
    let c = params(p, q, r)?;
    let l = parse_generator_words(words, &c).map_err(|e| e.to_string())?;
    let h = Hyperplane::from_subspace(&l).map_err(|e| e.to_string())?;
    let g = galois_closure(&h, &build_action(&c)).map_err(|e| e.to_string())?;
    let genus = genus_quotient_by_core(&c, g.core_dim).map_err(|e| e.to_string())?;
    Ok(json!({
        "normal": h.to_string(),
        "core_dim": g.core_dim,
        "core_order": g.core_order().to_string(),
        "k": g.k,
        "group": g.descriptor(),
        "group_order": g.group_order().to_string(),
        "quotient_genus": genus.to_string(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn cover_invariants(p: u32, q: u32, r: u32) -> Result<String, JsValue> {
    cover_invariants_json(p, q, r).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn orbit_atlas(p: u32, q: u32, r: u32, limit: usize) -> Result<String, JsValue> {
    orbit_atlas_json(p, q, r, limit).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn galois_from_words(p: u32, q: u32, r: u32, words: &str) -> Result<String, JsValue> {
    galois_from_words_json(p, q, r, words).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn invariants() {
        let v = parse(&cover_invariants_json(5, 2, 3).unwrap());
        assert_eq!(v["t"], "3");
        assert_eq!(v["g_t"], "3");
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
        assert!(cover_invariants_json(4, 2, 3).unwrap_err().contains("p=4"));
    }

    #[test]
    fn atlas_histogram() {
        let v = parse(&orbit_atlas_json(3, 2, 4, 3).unwrap());
        assert_eq!(v["t"], 5);
        assert_eq!(v["classes"].as_array().unwrap().len(), 3);
        assert_eq!(v["histogram"], json!([{"core_dim": 2, "classes": 5}]));

        let v = parse(&orbit_atlas_json(13, 3, 3, 10_000).unwrap());
        assert_eq!(v["t"], 20_440);
        assert_eq!(v["classes"].as_array().unwrap().len(), MAX_LISTED);
        let total: u64 = v["histogram"].as_array().unwrap().iter().map(|h| h["classes"].as_u64().unwrap()).sum();
        assert_eq!(total, 20_440);
    }

    #[test]
    fn atlas_refuses_large_ambient() {
        assert!(orbit_atlas_json(13, 3, 4, 10).unwrap_err().contains("cap"));
    }

    #[test]
    fn galois_words() {
        let v = parse(&galois_from_words_json(13, 3, 3, gonal_core::fixtures::L4).unwrap());
        assert_eq!(v["group"], "Z_3^3 ⋊ Z_13");
        assert_eq!(v["quotient_genus"], "136");
        assert!(galois_from_words_json(13, 3, 3, "a_1").unwrap_err().contains("not a hyperplane"));
    }
}
