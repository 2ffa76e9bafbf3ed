//! JSON report types. Field order is fixed by declaration, scalars are
//! rendered as exact strings, and intersection numbers appear as
//! `{"exact": n}` or `{"atLeast": n}`, so identical inputs always produce
//! byte-identical output.

use germ_core::blowup::{Chart, NearPoint};
use germ_core::diffeo::DiffeoClass;
use germ_core::series::OrderResult;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrderJson {
    #[serde(rename = "exact")]
    Exact(u32),
    #[serde(rename = "atLeast")]
    AtLeast(u32),
}

impl From<OrderResult> for OrderJson {
    fn from(o: OrderResult) -> Self {
        match o {
            OrderResult::Exact(n) => OrderJson::Exact(n),
            OrderResult::AtLeast(n) => OrderJson::AtLeast(n),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointJson {
    pub chart: u8,
    pub coord: String,
}

impl From<&NearPoint> for PointJson {
    fn from(p: &NearPoint) -> Self {
        PointJson {
            chart: match p.chart() {
                Chart::First => 1,
                Chart::Second => 2,
            },
            coord: p.coord().to_string(),
        }
    }
}

pub fn class_name(class: DiffeoClass) -> &'static str {
    match class {
        DiffeoClass::TangentToIdentity => "tangent-to-identity",
        DiffeoClass::Unipotent => "unipotent",
        DiffeoClass::General => "general",
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntersectReport {
    pub alpha: String,
    pub beta: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noether: Option<OrderJson>,
    pub truncation: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InpReport {
    pub curve: String,
    pub multiplicities: Vec<u32>,
    pub points: Vec<PointJson>,
    pub transforms: Vec<String>,
    pub depth: u32,
    pub truncation: u32,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlowupReport {
    pub curve: String,
    pub tangent: String,
    pub point: PointJson,
    pub transform: String,
    pub truncation: u32,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LiftReport {
    pub line: String,
    pub kind: &'static str,
    /// Display form in the blow-up chart coordinates (x, t).
    pub lift: String,
    /// Re-parseable literal with t written as y.
    pub literal: String,
    pub truncation: u32,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ActReport {
    pub curve: String,
    pub multiplicity: OrderJson,
    pub tangent: String,
    pub truncation: u32,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExpReport {
    pub diffeo: String,
    pub literal: String,
    pub truncation: u32,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LogReport {
    pub vfield: String,
    pub literal: String,
    pub class: &'static str,
    pub truncation: u32,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JetMatrixReport {
    pub kind: &'static str,
    pub level: u32,
    pub dim: usize,
    pub basis: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FdJson {
    pub determined: bool,
    pub k: u32,
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub truncation: u32,
    pub complete: bool,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UiValueJson {
    pub value: OrderJson,
    pub count: usize,
    pub witness: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UiJson {
    pub curve: String,
    #[serde(rename = "L")]
    pub l: u32,
    pub values: Vec<UiValueJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_exact: Option<UiValueJson>,
    pub truncation: u32,
    pub complete: bool,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitJson {
    pub curve: String,
    #[serde(rename = "L")]
    pub l: u32,
    pub depth: u32,
    pub distinct_images: usize,
    pub level_counts: Vec<usize>,
    pub leaves: usize,
    pub max_shared_depth: Option<u32>,
    pub truncated_prefixes: bool,
    pub truncation: u32,
    pub complete: bool,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DerivedElementJson {
    pub label: String,
    pub class: &'static str,
    pub map: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DerivedJson {
    pub rounds: u32,
    #[serde(rename = "L")]
    pub l: u32,
    pub trivial: bool,
    pub elements: Vec<DerivedElementJson>,
    pub truncation: u32,
    pub complete: bool,
}

/// Render any JSON value as an indented human-readable block.
pub fn to_table(value: &serde_json::Value) -> String {
    let mut out = String::new();
    render(value, 0, &mut out);
    out
}

fn render(value: &serde_json::Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                if v.is_object() || v.is_array() {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(v, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", plain(v)));
                }
            }
        }
        serde_json::Value::Array(items) => {
            for v in items {
                if v.is_object() || v.is_array() {
                    out.push_str(&format!("{pad}-\n"));
                    render(v, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", plain(v)));
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", plain(other))),
    }
}

fn plain(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
