//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function returns a JSON string: `{"ok": true, ...}` on success or
//! `{"ok": false, "error": "..."}` on bad input.

use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use hecke_dedekind::exact::is_prime;
use hecke_dedekind::hecke::{self, CuspSpace};
use hecke_dedekind::qoracle::qexp_eigenform;
use hecke_dedekind::symbols::s_reciprocity_poly;
use hecke_dedekind::verify::check_cocycle;
use hecke_dedekind::{DedekindSymbol, SymbolFamilyParams, SymbolPoint};

pub const MAX_GRID_H: i64 = 24;
pub const MAX_GRID_K: i64 = 48;
pub const MAX_TAU_M: u64 = 40;

fn wrap(r: Result<Value, String>) -> String {
    match r {
        Ok(mut v) => {
            v["ok"] = json!(true);
            v.to_string()
        }
        Err(e) => json!({ "ok": false, "error": e }).to_string(),
    }
}

/// Values of a symbol on `1 <= h <= h_max`, `k_min <= k <= k_max`.
///
/// Each cell carries the exact value and an `f64` approximation for colouring.
pub fn symbol_grid_value(spec: &str, h_max: i64, k_min: i64, k_max: i64) -> Result<Value, String> {
    if !(1..=MAX_GRID_H).contains(&h_max) {
        return Err(format!("h_max must be in 1..={MAX_GRID_H}"));
    }
    if k_min > k_max || k_max - k_min > MAX_GRID_K {
        return Err(format!(
            "need k_min <= k_max with at most {MAX_GRID_K} columns"
        ));
    }
    let symbol = DedekindSymbol::parse(spec, 0).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = (1..=h_max)
        .map(|h| {
            let cells: Vec<Value> = (k_min..=k_max)
                .map(|k| {
                    let v = symbol.eval(SymbolPoint::new(h, k).expect("h >= 1"));
                    json!({ "exact": v.to_string(), "approx": v.to_f64().unwrap_or(f64::NAN) })
                })
                .collect();
            json!({ "h": h, "cells": cells })
        })
        .collect();
    Ok(json!({
        "symbol": symbol.name(),
        "weight": symbol.weight(),
        "parity": symbol.parity().to_string(),
        "k_min": k_min,
        "k_max": k_max,
        "rows": rows,
    }))
}

/// `τ_{ℓ+2}(m)` for `1 <= m <= m_max` by the operator route, the closed form (primes) and
/// the q-expansion.
pub fn tau_table_value(ell: u32, m_max: u64) -> Result<Value, String> {
    let space = CuspSpace::from_weight(ell).map_err(|e| e.to_string())?;
    if !(1..=MAX_TAU_M).contains(&m_max) {
        return Err(format!("m_max must be in 1..={MAX_TAU_M}"));
    }
    let series = qexp_eigenform(space, m_max as usize).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let operator = hecke::tau(space, m).map_err(|e| e.to_string())?;
        let closed = if is_prime(m) {
            Some(hecke::tau_prime_closed_form(space, m).map_err(|e| e.to_string())?)
        } else {
            None
        };
        let oracle = series
            .coeff(m as usize)
            .expect("truncation covers m_max")
            .clone();
        let agree = operator == oracle && closed.as_ref().is_none_or(|c| *c == oracle);
        rows.push(json!({
            "m": m,
            "operator": operator.to_string(),
            "closed": closed.map(|c| c.to_string()),
            "oracle": oracle.to_string(),
            "agree": agree,
        }));
    }
    Ok(json!({
        "ell": ell,
        "weight": ell + 2,
        "n0": space.odd_index(),
        "rows": rows,
    }))
}

/// `S_{w,n}` with its cocycle check and `E(h,k) - E(k,-h)` compared against it on a few points.
pub fn reciprocity_value(w: i64, n: i64) -> Result<Value, String> {
    if w > 24 {
        return Err("w must be at most 24 in the demo".to_string());
    }
    let params = SymbolFamilyParams::new(w, n).map_err(|e| e.to_string())?;
    let poly = s_reciprocity_poly(params);
    let cocycle = check_cocycle(params);
    let symbol = DedekindSymbol::e_family(params);
    let samples: Vec<Value> = [(1, 1), (2, 1), (3, 2), (5, 3), (4, 6)]
        .iter()
        .map(|&(h, k)| {
            let at = |h, k| symbol.eval(SymbolPoint::new(h, k).expect("h >= 1"));
            let lhs = at(h, k) - at(k, -h);
            let rhs = poly.eval_int(h, k);
            json!({
                "h": h,
                "k": k,
                "lhs": lhs.to_string(),
                "rhs": rhs.to_string(),
                "equal": lhs == rhs,
            })
        })
        .collect();
    Ok(json!({
        "w": w,
        "n": n,
        "polynomial": poly.to_string(),
        "cocycle_passed": cocycle.passed,
        "samples": samples,
    }))
}

#[wasm_bindgen]
pub fn symbol_grid(spec: &str, h_max: i32, k_min: i32, k_max: i32) -> String {
    wrap(symbol_grid_value(
        spec,
        h_max as i64,
        k_min as i64,
        k_max as i64,
    ))
}

#[wasm_bindgen]
pub fn tau_table(ell: u32, m_max: u32) -> String {
    wrap(tau_table_value(ell, m_max as u64))
}

#[wasm_bindgen]
pub fn reciprocity(w: i32, n: i32) -> String {
    wrap(reciprocity_value(w as i64, n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape_and_values() {
        let v = symbol_grid_value("E:10:5", 3, -2, 2).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0]["cells"].as_array().unwrap().len(), 5);
        assert_eq!(rows[0]["cells"][2]["exact"], "-6/691");
        assert_eq!(v["parity"], "even");
        assert!(symbol_grid_value("E:10", 3, 0, 1).is_err());
        assert!(symbol_grid_value("G:2", 0, 0, 1).is_err());
        assert!(symbol_grid_value("G:2", 2, 3, 1).is_err());
    }

    #[test]
    fn tau_table_agrees() {
        let v = tau_table_value(10, 7).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 7);
        assert!(rows.iter().all(|r| r["agree"] == true));
        assert_eq!(rows[1]["operator"], "-24");
        assert_eq!(rows[3]["closed"], Value::Null);
        assert!(tau_table_value(12, 3).is_err());
    }

    #[test]
    fn reciprocity_panel() {
        let v = reciprocity_value(10, 4).unwrap();
        assert_eq!(v["cocycle_passed"], true);
        assert!(v["samples"]
            .as_array()
            .unwrap()
            .iter()
            .all(|s| s["equal"] == true));
        assert!(reciprocity_value(10, 10).is_err());
    }

    #[test]
    fn wrapper_reports_errors() {
        let v: Value = serde_json::from_str(&tau_table(11, 3)).unwrap();
        assert_eq!(v["ok"], false);
        let v: Value = serde_json::from_str(&reciprocity(10, 5)).unwrap();
        assert_eq!(v["ok"], true);
    }
}
