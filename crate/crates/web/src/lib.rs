//! WebAssembly bindings for the browser demo. Every export takes the strand
//! count (0 to infer it) and a braid word, and returns a JSON string; failures
//! come back as `{"error": "..."}`.

use kappa_core::{
    kappa, parse_braid, psi_gradings, self_linking, skh_dims, BasepointAddress, BraidWord, Kappa, Variant,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest crossing count the demo accepts, to keep the page responsive.
pub const MAX_CROSSINGS: usize = 16;

fn braid(strands: u32, word: &str) -> Result<BraidWord, String> {
    let n = (strands > 0).then_some(strands as usize);
    let b = parse_braid(word, n).map_err(|e| e.to_string())?;
    if b.crossings() > MAX_CROSSINGS {
        return Err(format!("the demo handles at most {MAX_CROSSINGS} crossings"));
    }
    Ok(b)
}

fn kappa_value(k: Kappa) -> Value {
    match k {
        Kappa::Finite(v) => json!(v),
        Kappa::Infinite => json!("infinity"),
    }
}

fn render(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Normalized braid, strand count, letters and self-linking number.
pub fn describe(strands: u32, word: &str) -> Result<Value, String> {
    let b = braid(strands, word)?;
    Ok(json!({
        "word": b.normalized_text(),
        "n": b.strands(),
        "letters": b.letters(),
        "sl": self_linking(&b),
    }))
}

/// κ with its realizing chain and the gradings of ψ.
pub fn kappa_report(strands: u32, word: &str) -> Result<Value, String> {
    let b = braid(strands, word)?;
    let r = kappa(&b, Variant::Unreduced);
    let g = psi_gradings(&b, Variant::Unreduced);
    let mut out = json!({
        "word": b.normalized_text(),
        "n": b.strands(),
        "value": kappa_value(r.value),
        "psi": { "h": g.h, "q": g.q, "k": g.k },
    });
    if let Some(w) = r.witness {
        out["witness_k"] = json!(w.k);
        out["witness"] = w
            .generators
            .iter()
            .map(|g| json!({ "res": g.res.0, "labels": g.labels }))
            .collect();
    }
    Ok(out)
}

/// Nonzero annular Khovanov homology dimensions as `{h, q, k, dim}` rows.
pub fn skh_report(strands: u32, word: &str) -> Result<Value, String> {
    let b = braid(strands, word)?;
    let rows: Vec<Value> = skh_dims(&b, Variant::Unreduced)
        .iter()
        .map(|((h, q, k), dim)| json!({ "h": h, "q": q, "k": k, "dim": dim }))
        .collect();
    Ok(json!({ "word": b.normalized_text(), "n": b.strands(), "rows": rows }))
}

/// κ̃_p and κ̲_p at every basepoint.
pub fn reduced_report(strands: u32, word: &str) -> Result<Value, String> {
    let b = braid(strands, word)?;
    let rows: Vec<Value> = BasepointAddress::all(&b)
        .into_iter()
        .map(|p| {
            json!({
                "position": p.position,
                "gap": p.gap,
                "sub": kappa_value(kappa(&b, Variant::ReducedSub(p)).value),
                "quot": kappa_value(kappa(&b, Variant::ReducedQuot(p)).value),
            })
        })
        .collect();
    Ok(json!({
        "word": b.normalized_text(),
        "n": b.strands(),
        "kappa": kappa_value(kappa(&b, Variant::Unreduced).value),
        "rows": rows,
    }))
}

#[wasm_bindgen(js_name = describeBraid)]
pub fn describe_braid(strands: u32, word: &str) -> String {
    render(describe(strands, word))
}

#[wasm_bindgen(js_name = kappaJson)]
pub fn kappa_json(strands: u32, word: &str) -> String {
    render(kappa_report(strands, word))
}

#[wasm_bindgen(js_name = skhJson)]
pub fn skh_json(strands: u32, word: &str) -> String {
    render(skh_report(strands, word))
}

#[wasm_bindgen(js_name = reducedJson)]
pub fn reduced_json(strands: u32, word: &str) -> String {
    render(reduced_report(strands, word))
}
