//! Browser bindings. Each exported function returns a JSON string of the
//! form `{"ok": ...}` or `{"error": "..."}` so the page never has to deal
//! with thrown exceptions.

use ndet::absint::analyze;
use ndet::chunked::ChunkedSemantics;
use ndet::cli::parse_input;
use ndet::codegen::{compile, Compiled};
use ndet::list::ListSemantics;
use ndet::term::programs::{perm_term, sort_term};
use ndet::term::syntax::parse_term;
use ndet::{Observer, Term};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn envelope(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => json!({ "ok": v }).to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// `source` is `perm`, `sort`, or the text of a term. `input` is only used
/// for the named programs.
fn load(source: &str, input: &str) -> Result<Term, String> {
    match source.trim() {
        "perm" => Ok(perm_term(&parse_input(input)?)),
        "sort" => Ok(sort_term(&parse_input(input)?)),
        text => parse_term(text).map_err(|e| e.to_string()),
    }
}

fn observe(source: &str, backend: &str, input: &str) -> Result<Value, String> {
    let t = load(source, input)?;
    let chunked = ChunkedSemantics::default();
    let sem: &dyn Observer = match backend {
        "list" => &ListSemantics,
        "chunked" => &chunked,
        "compiled" => &Compiled,
        other => return Err(format!("unknown backend `{other}`")),
    };
    let bag = sem.observe(&t).map_err(|e| e.to_string())?;
    serde_json::to_value(bag).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn run_program(source: &str, backend: &str, input: &str) -> String {
    envelope(observe(source, backend, input))
}

#[wasm_bindgen]
pub fn analyze_program(source: &str, input: &str) -> String {
    envelope(
        load(source, input)
            .and_then(|t| analyze(&t).map_err(|e| e.to_string()))
            .and_then(|d| serde_json::to_value(d).map_err(|e| e.to_string())),
    )
}

#[wasm_bindgen]
pub fn compile_program(source: &str, input: &str) -> String {
    envelope(
        load(source, input)
            .and_then(|t| compile(&t).map_err(|e| e.to_string()))
            .map(|p| Value::String(p.to_sexp())),
    )
}
