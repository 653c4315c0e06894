//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string; failures come back as
//! `{"error": "..."}` so the page never has to catch.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use salvetti::arrangement::{braid_arrangement, covectors};
use salvetti::braid::symbol::{all_symbols, render_symbol};
use salvetti::braid::{build_pages, GradedModule, Normalization, PageConfig};
use salvetti::complexes::{betti_numbers, salvetti_cw, smith_homology, ChainComplex, Coefficients};
use salvetti::{build_l_ell, Result};

// Kept small so a click answers in well under a second.
const MAX_K: usize = 4;
const MAX_CELLS: usize = 2_000;
const MAX_SYMBOL_K: usize = 4;
const MAX_PAGE_K: usize = 4;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn refuse(msg: String) -> String {
    json!({ "error": msg }).to_string()
}

/// f-vector, Euler characteristic and integral homology of `Sal^(ℓ)(A_{k-1})`.
#[wasm_bindgen]
pub fn explore(k: usize, ell: u8) -> String {
    if !(2..=MAX_K).contains(&k) || !(1..=3).contains(&ell) {
        return refuse(format!("need 2 <= k <= {MAX_K} and 1 <= ell <= 3"));
    }
    respond((|| {
        let l = covectors(&braid_arrangement(k)?)?;
        let lell = build_l_ell(&l, ell)?;
        if lell.len() > MAX_CELLS {
            return Ok(json!({ "error": format!("{} cells is too many for the browser", lell.len()) }));
        }
        let sal = salvetti_cw(&lell)?;
        let groups = smith_homology(&ChainComplex::from_cw(&sal.cw, Coefficients::Z)?)?;
        let torsion: Vec<Vec<String>> =
            groups.iter().map(|g| g.torsion.iter().map(ToString::to_string).collect()).collect();
        Ok(json!({
            "k": k,
            "ell": ell,
            "cells": lell.len(),
            "f_vector": sal.cw.f_vector(),
            "euler_characteristic": sal.cw.euler_characteristic(),
            "betti": betti_numbers(&groups),
            "torsion": torsion,
        }))
    })())
}

/// Every cube symbol for `k` points, drawn with box characters.
#[wasm_bindgen]
pub fn symbols(k: usize) -> String {
    if !(1..=MAX_SYMBOL_K).contains(&k) {
        return refuse(format!("need 1 <= k <= {MAX_SYMBOL_K}"));
    }
    respond(
        all_symbols(k)
            .into_iter()
            .map(|(lambda, sigma)| {
                let art = render_symbol(&lambda, &sigma)?;
                Ok(json!({ "lambda": lambda.to_string(), "sigma": sigma.to_string(), "art": art }))
            })
            .collect::<Result<Vec<Value>>>()
            .map(Value::from),
    )
}

/// `E¹` and `E²` of the braid spectral sequence. `degrees` is a
/// comma-separated list of generator degrees, `field` is `Q` or `Fp:p`.
#[wasm_bindgen]
pub fn pages(k_max: usize, ell: u8, degrees: &str, field: &str, shifted: bool) -> String {
    if !(1..=MAX_PAGE_K).contains(&k_max) || !(2..=3).contains(&ell) {
        return refuse(format!("need 1 <= k_max <= {MAX_PAGE_K} and ell in 2..=3"));
    }
    let degrees: std::result::Result<Vec<i64>, _> =
        degrees.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::parse).collect();
    let degrees = match degrees {
        Ok(d) if !d.is_empty() => d,
        _ => return refuse("degrees must be a comma-separated list of integers".into()),
    };
    respond((|| {
        let field: Coefficients = field.parse()?;
        if !field.is_field() {
            return Ok(json!({ "error": "pages need Q or Fp:p" }));
        }
        let cfg = PageConfig {
            coefficients: GradedModule { degrees, field },
            k_max,
            ell,
            normalization: if shifted { Normalization::Shifted } else { Normalization::Unshifted },
            koszul: true,
        };
        Ok(json!({ "blocks": build_pages(&cfg)? }))
    })())
}
