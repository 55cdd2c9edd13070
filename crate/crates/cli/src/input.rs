//! Loading inputs: quiver DSL files or radical quiver JSON.

use std::path::Path;

use dgl_core::fdalgebra::{radical_quiver, AlgebraPresentation, RadicalQuiverData};
use dgl_core::foundation::Field;
use dgl_core::quiver::parse_quiver_file;

/// Accepts `Q`, `Fp 7`, `Fp7` and `F7`.
pub fn parse_field(text: &str) -> Result<Field, String> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    let digits = t
        .strip_prefix("Fp")
        .or_else(|| t.strip_prefix('F'))
        .map(str::trim)
        .ok_or_else(|| format!("unknown field `{t}` (expected Q or Fp <prime>)"))?;
    let p: u64 = digits.parse().map_err(|_| format!("bad characteristic in `{t}`"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

/// Radical JSON is recognised by a `.json` extension or a leading `{`.
pub fn is_json(path: &Path, text: &str) -> bool {
    path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{')
}

pub fn load(path: &Path, field: Field, max_word_length: usize) -> Result<RadicalQuiverData, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    load_text(path, &text, field, max_word_length)
}

pub fn load_text(path: &Path, text: &str, field: Field, max_word_length: usize) -> Result<RadicalQuiverData, String> {
    let where_ = path.display();
    if is_json(path, text) {
        return RadicalQuiverData::from_json(text).map_err(|e| format!("{where_}: {e}"));
    }
    let pq = parse_quiver_file(text, field).map_err(|e| format!("{where_}: {e}"))?;
    let ap = AlgebraPresentation::from_parsed(&pq, max_word_length).map_err(|e| format!("{where_}: {e}"))?;
    Ok(radical_quiver(&ap))
}
