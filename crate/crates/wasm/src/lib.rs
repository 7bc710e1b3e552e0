//! Browser bindings. Every export returns a JSON string so the page needs no glue beyond
//! `JSON.parse`.

use std::sync::OnceLock;

use multicross::census::{petal_diagram, InvariantTable, TableEntry};
use multicross::diagram::{MultiCrossingDiagram, Orientation};
use multicross::skein::{build_relation, realized_widths, CrossingType};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const REFERENCE: &str = include_str!("../../core/fixtures/reference_jones.json");

/// Largest order the page will expand; the relation at 8 takes a while but stays usable.
const MAX_RELATION_ORDER: usize = 8;
const MAX_WIDTH_ORDER: usize = 7;

fn table() -> &'static InvariantTable {
    static TABLE: OnceLock<InvariantTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let raw: std::collections::BTreeMap<String, Vec<(i64, i64)>> =
            serde_json::from_str(REFERENCE).expect("bundled reference table parses");
        let entries = raw
            .into_iter()
            .map(|(name, terms)| TableEntry {
                name,
                jones_machine_form: terms.into_iter().map(|(e, c)| (e, c.into())).collect(),
            })
            .collect();
        InvariantTable::from_entries(entries).expect("bundled reference table has no collisions")
    })
}

/// Accepts `12345` or `1,2,3,4,5`.
pub fn parse_heights(text: &str) -> Result<Vec<u8>, String> {
    let text = text.trim();
    let parts: Vec<&str> = if text.contains(',') {
        text.split(',').map(str::trim).collect()
    } else {
        text.split("").filter(|s| !s.is_empty() && !s.trim().is_empty()).collect()
    };
    parts.iter().map(|p| p.parse::<u8>().map_err(|_| format!("`{p}` is not a height"))).collect()
}

pub fn relation_json(heights: &str) -> Result<String, String> {
    let t = CrossingType::new(parse_heights(heights)?).map_err(|e| e.to_string())?;
    if t.n() > MAX_RELATION_ORDER {
        return Err(format!("order {} is above {MAX_RELATION_ORDER}", t.n()));
    }
    let rel = build_relation(&t).map_err(|e| e.to_string())?;
    let terms: Vec<Value> = rel
        .by_split()
        .into_iter()
        .map(|(split, powers)| json!({"split": split.to_string(), "terms": powers}))
        .collect();
    Ok(json!({
        "type": t.to_string(),
        "width": rel.width(),
        "highest": rel.highest(),
        "lowest": rel.lowest(),
        "histogram": rel.histogram(),
        "support": rel.support().len(),
        "splits": terms,
    })
    .to_string())
}

pub fn evaluate_json(diagram: &str) -> Result<String, String> {
    let d = MultiCrossingDiagram::from_json(diagram).map_err(|e| e.to_string())?;
    let components = d.validate().map_err(|e| e.to_string())?.components;
    let bracket = d.bracket().map_err(|e| e.to_string())?;
    let writhe = d.writhe(&Orientation::default());
    let jones = d.jones().map_err(|e| e.to_string())?;
    let knot = if components == 1 { table().identify(&jones).map(|i| i.display_name()) } else { None };
    Ok(json!({
        "components": components,
        "writhe": writhe,
        "bracket": bracket.to_string(),
        "jones": jones.to_string(),
        "span": bracket.span().ok(),
        "knot": knot,
    })
    .to_string())
}

pub fn petal_json(heights: &str) -> Result<String, String> {
    let d = petal_diagram(&parse_heights(heights)?).map_err(|e| e.to_string())?;
    Ok(d.to_json())
}

pub fn widths_json(n: usize) -> Result<String, String> {
    if n > MAX_WIDTH_ORDER {
        return Err(format!("order {n} is above {MAX_WIDTH_ORDER}"));
    }
    let widths = realized_widths(n).map_err(|e| e.to_string())?;
    Ok(json!({"n": n, "widths": widths}).to_string())
}

#[wasm_bindgen]
pub fn relation(heights: &str) -> Result<String, JsError> {
    relation_json(heights).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn evaluate(diagram: &str) -> Result<String, JsError> {
    evaluate_json(diagram).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn petal(heights: &str) -> Result<String, JsError> {
    petal_json(heights).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn widths(n: usize) -> Result<String, JsError> {
    widths_json(n).map_err(|e| JsError::new(&e))
}
