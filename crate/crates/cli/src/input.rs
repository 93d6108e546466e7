//! Input documents: a single algebra entry, or `{"algebras": [...],
//! "options": {...}}` with one or two entries.

use invlim::seqspec::{AlgebraType, InvariantProfile, SpecEntry, Triple, TripleSequence};
use serde::Deserialize;
use serde_json::Value;
use std::path::Path;

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocOptions {
    pub horizon: Option<usize>,
    pub depth: Option<usize>,
    pub levels: Option<usize>,
    pub seed: Option<String>,
    pub format: Option<String>,
    pub sigma_equal: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct Document {
    pub entries: Vec<SpecEntry>,
    pub options: DocOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileEntry {
    profile: InvariantProfile,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentedEntry {
    #[serde(rename = "type")]
    algebra_type: AlgebraType,
    #[serde(rename = "char", default)]
    characteristic: u64,
    #[serde(default)]
    prefix: Vec<Triple>,
    period: Vec<Triple>,
    #[serde(default)]
    first_convention: bool,
}

fn typed<T: for<'de> Deserialize<'de>>(value: &Value, at: &str) -> Result<T, String> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            format!("{at}: {}", e.inner())
        } else {
            format!("{at}.{path}: {}", e.inner())
        }
    })
}

fn entry(value: &Value, at: &str) -> Result<SpecEntry, String> {
    if value.get("profile").is_some() {
        let ProfileEntry { profile } = typed(value, at)?;
        profile.validate().map_err(|e| format!("{at}.profile: {e}"))?;
        return Ok(SpecEntry::Profile { profile });
    }
    let raw: PresentedEntry = typed(value, at)?;
    let sequence = TripleSequence::with_convention(raw.prefix, raw.period, raw.first_convention)
        .map_err(|e| format!("{at}: {e}"))?;
    Ok(SpecEntry::Presented { algebra_type: raw.algebra_type, characteristic: raw.characteristic, sequence })
}

/// Parses a document. Syntax errors report line and column; schema errors
/// report the path of the offending field.
pub fn parse_document(text: &str, name: &str) -> Result<Document, String> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| format!("{name}:{}:{}: {e}", e.line(), e.column()))?;
    let Some(algebras) = value.get("algebras") else {
        return Ok(Document { entries: vec![entry(&value, name)?], options: DocOptions::default() });
    };
    let Value::Array(list) = algebras else {
        return Err(format!("{name}.algebras: expected an array"));
    };
    if list.is_empty() || list.len() > 2 {
        return Err(format!("{name}.algebras: expected one or two entries, found {}", list.len()));
    }
    if let Some(extra) = value.as_object().and_then(|o| o.keys().find(|k| *k != "algebras" && *k != "options")) {
        return Err(format!("{name}: unknown field `{extra}`"));
    }
    let entries = list
        .iter()
        .enumerate()
        .map(|(k, v)| entry(v, &format!("{name}.algebras[{k}]")))
        .collect::<Result<_, _>>()?;
    let options = match value.get("options") {
        Some(v) => typed(v, &format!("{name}.options"))?,
        None => DocOptions::default(),
    };
    Ok(Document { entries, options })
}

pub fn read_document(path: &Path) -> Result<Document, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_document(&text, &path.display().to_string())
}

/// Reads the given files and concatenates their entries; options come from
/// the first document that has any.
pub fn read_all(paths: &[std::path::PathBuf]) -> Result<Document, String> {
    let mut entries = Vec::new();
    let mut options = DocOptions::default();
    for path in paths {
        let doc = read_document(path)?;
        if options == DocOptions::default() {
            options = doc.options;
        }
        entries.extend(doc.entries);
    }
    Ok(Document { entries, options })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_entry() {
        let doc = parse_document(r#"{"type":"O","period":[[2,0,0]]}"#, "a").unwrap();
        assert_eq!(doc.entries.len(), 1);
        assert_eq!(doc.entries[0].algebra_type(), AlgebraType::O);
    }

    #[test]
    fn pair_with_options() {
        let text = r#"{"algebras":[{"type":"A","period":[[1,1,0]]},{"type":"O","period":[[2,0,0]]}],
                       "options":{"depth":3}}"#;
        let doc = parse_document(text, "doc").unwrap();
        assert_eq!(doc.entries.len(), 2);
        assert_eq!(doc.options.depth, Some(3));
    }

    #[test]
    fn diagnostics() {
        let err = parse_document("{\n  \"type\": \"O\",\n  \"period\": [[2,0,0]\n}", "f").unwrap_err();
        assert!(err.starts_with("f:4:"), "{err}");
        let err = parse_document(r#"{"type":"O","period":[[2,0,0],[0,0,1]]}"#, "f").unwrap_err();
        assert!(err.contains("period[1]"), "{err}");
        let err = parse_document(r#"{"period":[[2,0,0]]}"#, "f").unwrap_err();
        assert!(err.contains("type"), "{err}");
        let err = parse_document(r#"{"type":"O","period":[[2,0,0]],"colour":1}"#, "f").unwrap_err();
        assert!(err.contains("colour"), "{err}");
    }
}
