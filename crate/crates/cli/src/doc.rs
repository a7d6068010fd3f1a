//! JSON profile documents.
//!
//! Documents are validated strictly: every trait or factor must be present,
//! unknown keys are rejected and values must be in range.

use std::fmt;

use profile_galois::{CattellProfile, Factor, Signature, SzondiProfile, TraitId, TraitValue};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Ppp(CattellProfile),
    Spp(SzondiProfile),
    PppSet(Vec<CattellProfile>),
    SppSet(Vec<SzondiProfile>),
}

/// A validation failure at a JSON path such as `profiles[2].traits.LE`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for DocError {}

fn err(path: &str, message: impl Into<String>) -> DocError {
    DocError {
        path: path.to_string(),
        message: message.into(),
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, DocError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| err("", format!("invalid JSON: {e}")))?;
        Document::from_value(&value, "")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Ppp(_) => "ppp",
            Document::Spp(_) => "spp",
            Document::PppSet(_) => "ppp_set",
            Document::SppSet(_) => "spp_set",
        }
    }

    pub fn from_value(value: &Value, path: &str) -> Result<Document, DocError> {
        let obj = value
            .as_object()
            .ok_or_else(|| err(path, "expected an object"))?;
        let kind = obj
            .get("type")
            .ok_or_else(|| err(path, "missing \"type\""))?
            .as_str()
            .ok_or_else(|| err(&join(path, "type"), "expected a string"))?;
        let body = match kind {
            "ppp" => "traits",
            "spp" => "factors",
            "ppp_set" | "spp_set" => "profiles",
            other => {
                return Err(err(
                    &join(path, "type"),
                    format!("unknown document type {other:?}"),
                ))
            }
        };
        if let Some(key) = obj.keys().find(|k| *k != "type" && *k != body) {
            return Err(err(path, format!("unknown key {key:?}")));
        }
        let inner = obj
            .get(body)
            .ok_or_else(|| err(path, format!("missing {body:?}")))?;
        let inner_path = join(path, body);
        match kind {
            "ppp" => parse_traits(inner, &inner_path).map(Document::Ppp),
            "spp" => parse_factors(inner, &inner_path).map(Document::Spp),
            "ppp_set" => members(inner, &inner_path, "ppp", |d| match d {
                Document::Ppp(f) => Some(f),
                _ => None,
            })
            .map(Document::PppSet),
            _ => members(inner, &inner_path, "spp", |d| match d {
                Document::Spp(p) => Some(p),
                _ => None,
            })
            .map(Document::SppSet),
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Document::Ppp(f) => ppp_value(f),
            Document::Spp(p) => spp_value(p),
            Document::PppSet(fs) => json!({
                "type": "ppp_set",
                "profiles": fs.iter().map(ppp_value).collect::<Vec<_>>(),
            }),
            Document::SppSet(ps) => json!({
                "type": "spp_set",
                "profiles": ps.iter().map(spp_value).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("documents serialize")
    }
}

fn members<T>(
    value: &Value,
    path: &str,
    expected: &str,
    pick: impl Fn(Document) -> Option<T>,
) -> Result<Vec<T>, DocError> {
    let items = value
        .as_array()
        .ok_or_else(|| err(path, "expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let p = format!("{path}[{i}]");
            let doc = Document::from_value(item, &p)?;
            let kind = doc.kind();
            pick(doc).ok_or_else(|| err(&p, format!("expected a {expected} document, got {kind}")))
        })
        .collect()
}

fn parse_traits(value: &Value, path: &str) -> Result<CattellProfile, DocError> {
    let obj = value
        .as_object()
        .ok_or_else(|| err(path, "expected an object"))?;
    if let Some(key) = obj.keys().find(|k| k.parse::<TraitId>().is_err()) {
        return Err(err(path, format!("unknown trait {key:?}")));
    }
    let mut values = [TraitValue::new(1).expect("in range"); 28];
    for t in TraitId::ALL {
        let p = join(path, t.token());
        let v = obj
            .get(t.token())
            .ok_or_else(|| err(path, format!("missing trait {:?}", t.token())))?;
        let n = v
            .as_i64()
            .ok_or_else(|| err(&p, format!("expected an integer in 1..10, got {v}")))?;
        values[t.index()] =
            TraitValue::new(n).map_err(|_| err(&p, format!("value {n} out of range 1..10")))?;
    }
    Ok(CattellProfile::new(values))
}

fn parse_factors(value: &Value, path: &str) -> Result<SzondiProfile, DocError> {
    let obj = value
        .as_object()
        .ok_or_else(|| err(path, "expected an object"))?;
    if let Some(key) = obj.keys().find(|k| k.parse::<Factor>().is_err()) {
        return Err(err(path, format!("unknown factor {key:?}")));
    }
    let mut sigs = [Signature::Zero; 8];
    for (i, g) in Factor::ALL.into_iter().enumerate() {
        let p = join(path, g.token());
        let v = obj
            .get(g.token())
            .ok_or_else(|| err(path, format!("missing factor {:?}", g.token())))?;
        let s = v
            .as_str()
            .ok_or_else(|| err(&p, format!("expected a signature string, got {v}")))?;
        sigs[i] = s
            .parse()
            .map_err(|_| err(&p, format!("unknown signature {s:?}")))?;
    }
    Ok(SzondiProfile::new(sigs))
}

pub fn ppp_value(f: &CattellProfile) -> Value {
    let traits: Map<String, Value> = f
        .iter()
        .map(|(t, v)| (t.token().to_string(), json!(v.get())))
        .collect();
    json!({"type": "ppp", "traits": traits})
}

pub fn spp_value(p: &SzondiProfile) -> Value {
    let factors: Map<String, Value> = p
        .iter()
        .map(|(g, s)| (g.token().to_string(), json!(s.token())))
        .collect();
    json!({"type": "spp", "factors": factors})
}
