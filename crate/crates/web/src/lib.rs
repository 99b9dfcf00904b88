//! WebAssembly bindings for the browser demo in `www/`.

use std::collections::BTreeSet;

use seaweed_core::index::closed_form_gcd;
use seaweed_core::render::{to_json, to_svg};
use seaweed_core::{analyze, BruteConfig, CutPair, Family, Flavor, Oracles};
use wasm_bindgen::prelude::*;

fn parse_list(s: &str) -> Result<BTreeSet<usize>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("bad index {t:?}: {e}")))
        .collect()
}

fn instance(family: &str, rank: usize, outer: &str, inner: &str) -> Result<(Flavor, CutPair), String> {
    let flavor = Flavor::new(family.parse::<Family>()?, rank).map_err(|e| e.to_string())?;
    let cuts = CutPair {
        outer: parse_list(outer)?,
        inner: parse_list(inner)?,
    };
    cuts.validate(flavor).map_err(|e| e.to_string())?;
    Ok((flavor, cuts))
}

/// Canonical JSON report; the brute-force oracle runs for type A when asked.
pub fn report(family: &str, rank: usize, outer: &str, inner: &str, brute: bool) -> Result<String, String> {
    let (flavor, cuts) = instance(family, rank, outer, inner)?;
    let oracles = Oracles {
        tyj: true,
        brute: (brute && flavor.family.is_type_a()).then(BruteConfig::default),
    };
    let a = analyze(flavor, &cuts, &oracles).map_err(|e| e.to_string())?;
    Ok(to_json(&a))
}

pub fn graph(family: &str, rank: usize, outer: &str, inner: &str) -> Result<String, String> {
    let (flavor, cuts) = instance(family, rank, outer, inner)?;
    let a = analyze(flavor, &cuts, &Oracles::default()).map_err(|e| e.to_string())?;
    Ok(to_svg(&a.graph))
}

/// `[[d, index, closed form], …]` for affine A with I={0}, I′={d}.
pub fn gcd_sweep(n: usize) -> Result<String, String> {
    let flavor = Flavor::affine_a(n).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for d in 1..=n / 2 {
        let a = analyze(flavor, &CutPair::new([0], [d]), &Oracles::default()).map_err(|e| e.to_string())?;
        let closed = closed_form_gcd(n, d).map_err(|e| e.to_string())?;
        rows.push(format!("[{d},{},{closed}]", a.report.index_combinatorial));
    }
    Ok(format!("[{}]", rows.join(",")))
}

#[wasm_bindgen(js_name = indexReport)]
pub fn index_report_js(family: &str, rank: usize, outer: &str, inner: &str, brute: bool) -> Result<String, JsError> {
    report(family, rank, outer, inner, brute).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = graphSvg)]
pub fn graph_svg_js(family: &str, rank: usize, outer: &str, inner: &str) -> Result<String, JsError> {
    graph(family, rank, outer, inner).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = gcdSweep)]
pub fn gcd_sweep_js(n: usize) -> Result<String, JsError> {
    gcd_sweep(n).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_of_first_figure() {
        let json = report("affine-a", 10, "9", "4, 8", true).unwrap();
        assert!(json.contains("\"combinatorial\": 0"));
        assert!(json.contains("\"brute\": 0"));
    }

    #[test]
    fn brute_is_skipped_outside_type_a() {
        let json = report("affine-c", 5, "2", "4", true).unwrap();
        assert!(json.contains("\"brute\": null"));
    }

    #[test]
    fn bad_input_is_reported() {
        assert!(graph("affine-a", 4, "", "1").is_err());
        assert!(graph("affine-z", 4, "1", "1").is_err());
        assert!(graph("finite-a", 4, "x", "").is_err());
        assert!(graph("finite-a", 4, "1", "").unwrap().starts_with("<svg"));
    }

    #[test]
    fn sweep_agrees_with_closed_form() {
        let s = gcd_sweep(12).unwrap();
        assert_eq!(s, "[[1,0,0],[2,2,2],[3,4,4],[4,4,4],[5,0,0],[6,10,10]]");
    }
}
