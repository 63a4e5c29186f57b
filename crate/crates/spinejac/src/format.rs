//! JSON documents for curves, polarizations, sheaves and class tables.
//!
//! Rationals travel as `"p/q"` strings. Every document may carry a
//! `schemaVersion`; it is always written and, when present on input, must
//! match [`SCHEMA_VERSION`].

use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use spinejac_core::{
    ClassRow, Component, DualGraph, EdgeSet, GraphError, IntegerPolarization, JhError, Polarization,
    Rational, SEquivClass, SheafClass, SheafPiece, StabilityError, Subcurve, Thresholds,
};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Malformed(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("unsupported schemaVersion {0} (expected {SCHEMA_VERSION})")]
    Version(u32),
    #[error("{path}: unknown vertex `{id}`")]
    UnknownVertex { path: String, id: String },
    #[error("{path}: duplicate vertex id `{id}`")]
    DuplicateVertex { path: String, id: String },
    #[error("{path}: {source}")]
    Graph { path: String, source: GraphError },
    #[error("{path}: {source}")]
    Polarization { path: String, source: StabilityError },
    #[error("{path}: `{text}` is not an exact rational")]
    Rational { path: String, text: String },
    #[error("chi is missing; give it in the polarization file or with --chi")]
    MissingChi,
}

impl FormatError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Self::Malformed(_) => "malformed-json",
            Self::Schema { .. } => "schema",
            Self::Version(_) => "schema-version",
            Self::UnknownVertex { .. } => "unknown-vertex",
            Self::DuplicateVertex { .. } => "duplicate-vertex",
            Self::Graph { source: GraphError::Disconnected, .. } => "disconnected-graph",
            Self::Graph { .. } => "invalid-graph",
            Self::Polarization { source: StabilityError::WeightSum(_), .. } => "weight-sum",
            Self::Polarization { .. } => "invalid-polarization",
            Self::Rational { .. } => "invalid-rational",
            Self::MissingChi => "missing-chi",
        }
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Schema { path: path.into(), message: message.into() }
}

fn decode<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    let value: Value = serde_json::from_str(text).map_err(|e| FormatError::Malformed(e.to_string()))?;
    decode_value(value)
}

fn decode_value<T: DeserializeOwned>(value: Value) -> Result<T, FormatError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let path = match path.as_str() {
            "." => "$".to_owned(),
            p if p.starts_with('[') => format!("${p}"),
            p => format!("$.{p}"),
        };
        schema(path, e.into_inner().to_string())
    })
}

fn check_version(v: Option<u32>) -> Result<(), FormatError> {
    match v {
        Some(v) if v != SCHEMA_VERSION => Err(FormatError::Version(v)),
        _ => Ok(()),
    }
}

fn vertex(g: &DualGraph, id: &str, path: String) -> Result<usize, FormatError> {
    g.index_of(id).ok_or_else(|| FormatError::UnknownVertex { path, id: id.to_owned() })
}

/// Reads a per-component map keyed by vertex id; every vertex must appear.
fn per_vertex<T: Clone>(
    g: &DualGraph,
    map: &Map<String, Value>,
    path: &str,
    mut parse: impl FnMut(&Value, String) -> Result<T, FormatError>,
) -> Result<Vec<T>, FormatError> {
    let mut out: Vec<Option<T>> = vec![None; g.n()];
    for (id, value) in map {
        let at = format!("{path}.{id}");
        let v = vertex(g, id, at.clone())?;
        out[v] = Some(parse(value, at)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(v, x)| x.ok_or_else(|| schema(path, format!("missing vertex `{}`", g.name(v)))))
        .collect()
}

fn vertex_map<T: Into<Value>>(g: &DualGraph, values: impl IntoIterator<Item = T>) -> Value {
    Value::Object(
        values.into_iter().enumerate().map(|(v, x)| (g.name(v).to_owned(), x.into())).collect(),
    )
}

fn int_at(value: &Value, path: String) -> Result<i64, FormatError> {
    value.as_i64().ok_or_else(|| schema(path, "expected an integer"))
}

pub fn parse_rational(text: &str, path: &str) -> Result<Rational, FormatError> {
    let bad = || FormatError::Rational { path: path.to_owned(), text: text.to_owned() };
    let trimmed = text.trim();
    if trimmed.ends_with("/0") || trimmed.contains("/-") {
        return Err(bad());
    }
    Rational::from_str(trimmed).map_err(|_| bad())
}

fn rational_at(value: &Value, path: String) -> Result<Rational, FormatError> {
    match value {
        Value::String(s) => parse_rational(s, &path),
        Value::Number(n) => n.as_i64().map(Rational::from).ok_or_else(|| {
            FormatError::Rational { path, text: n.to_string() }
        }),
        _ => Err(schema(path, "expected a rational string \"p/q\"")),
    }
}

pub fn format_rational(r: Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---- graphs ----

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct GraphDoc {
    #[serde(default)]
    schema_version: Option<u32>,
    vertices: Vec<VertexDoc>,
    edges: Vec<(String, String)>,
    #[serde(default)]
    basepoint: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: String,
    #[serde(default)]
    genus: u32,
}

/// Parses a curve; the basepoint defaults to the first vertex.
pub fn parse_graph(text: &str) -> Result<DualGraph, FormatError> {
    graph_from_doc(decode(text)?)
}

pub fn graph_from_value(value: Value) -> Result<DualGraph, FormatError> {
    graph_from_doc(decode_value(value)?)
}

fn graph_from_doc(doc: GraphDoc) -> Result<DualGraph, FormatError> {
    check_version(doc.schema_version)?;
    let mut components: Vec<Component> = Vec::with_capacity(doc.vertices.len());
    for (i, v) in doc.vertices.iter().enumerate() {
        if components.iter().any(|c| c.name == v.id) {
            return Err(FormatError::DuplicateVertex {
                path: format!("$.vertices[{i}].id"),
                id: v.id.clone(),
            });
        }
        components.push(Component::new(v.id.clone(), v.genus));
    }
    let index = |id: &str, path: String| {
        components
            .iter()
            .position(|c| c.name == id)
            .ok_or_else(|| FormatError::UnknownVertex { path, id: id.to_owned() })
    };
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (i, (a, b)) in doc.edges.iter().enumerate() {
        edges.push((index(a, format!("$.edges[{i}][0]"))?, index(b, format!("$.edges[{i}][1]"))?));
    }
    let basepoint = match &doc.basepoint {
        Some(id) => index(id, "$.basepoint".to_owned())?,
        None => 0,
    };
    DualGraph::new(components, edges, basepoint)
        .map_err(|source| FormatError::Graph { path: "$".to_owned(), source })
}

pub fn graph_to_value(g: &DualGraph) -> Value {
    let doc = GraphDoc {
        schema_version: Some(SCHEMA_VERSION),
        vertices: g
            .components()
            .iter()
            .map(|c| VertexDoc { id: c.name.clone(), genus: c.genus })
            .collect(),
        edges: g.edges().iter().map(|&(a, b)| (g.name(a).to_owned(), g.name(b).to_owned())).collect(),
        basepoint: Some(g.name(g.basepoint()).to_owned()),
    };
    serde_json::to_value(doc).expect("graph documents always serialize")
}

// ---- polarizations ----

/// A polarization as given on input: coarse `(χ, 𝔞)` or a bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolarizationInput {
    Weights(Polarization),
    Bundle(IntegerPolarization),
}

impl PolarizationInput {
    pub fn thresholds(&self) -> Thresholds {
        match self {
            Self::Weights(p) => p.thresholds(),
            Self::Bundle(e) => e.thresholds(),
        }
    }

    pub fn chi(&self) -> i64 {
        match self {
            Self::Weights(p) => p.chi(),
            Self::Bundle(e) => -e.slope(),
        }
    }
}

/// Parses either `{"chi", "a"}` or `{"rank", "degrees"}`. `chi` overrides
/// (or supplies) the Euler characteristic of a weight polarization.
pub fn parse_polarization(
    g: &DualGraph,
    text: &str,
    chi: Option<i64>,
) -> Result<PolarizationInput, FormatError> {
    let value: Value = serde_json::from_str(text).map_err(|e| FormatError::Malformed(e.to_string()))?;
    polarization_from_value(g, &value, chi)
}

pub fn polarization_from_value(
    g: &DualGraph,
    value: &Value,
    chi_override: Option<i64>,
) -> Result<PolarizationInput, FormatError> {
    let obj = value.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    for key in obj.keys() {
        if !["schemaVersion", "chi", "a", "rank", "degrees"].contains(&key.as_str()) {
            return Err(schema(format!("$.{key}"), "unknown field"));
        }
    }
    if let Some(v) = obj.get("schemaVersion") {
        let v = v.as_u64().ok_or_else(|| schema("$.schemaVersion", "expected an integer"))?;
        check_version(Some(u32::try_from(v).unwrap_or(u32::MAX)))?;
    }
    let pol_err = |path: &str| {
        let path = path.to_owned();
        move |source| FormatError::Polarization { path, source }
    };
    match (obj.get("a"), obj.get("rank")) {
        (Some(a), None) => {
            let a = a.as_object().ok_or_else(|| schema("$.a", "expected a map from vertex id to rational"))?;
            let weights = per_vertex(g, a, "$.a", rational_at)?;
            let chi = match (chi_override, obj.get("chi")) {
                (Some(c), _) => c,
                (None, Some(c)) => int_at(c, "$.chi".to_owned())?,
                (None, None) => return Err(FormatError::MissingChi),
            };
            Polarization::new(chi, weights).map(PolarizationInput::Weights).map_err(pol_err("$.a"))
        }
        (None, Some(rank)) => {
            if obj.contains_key("chi") {
                return Err(schema("$.chi", "a bundle determines chi; drop the field"));
            }
            let rank = rank
                .as_u64()
                .and_then(|r| u32::try_from(r).ok())
                .ok_or_else(|| schema("$.rank", "expected a positive integer"))?;
            let degrees = obj
                .get("degrees")
                .and_then(Value::as_object)
                .ok_or_else(|| schema("$.degrees", "expected a map from vertex id to integer"))?;
            let degrees = per_vertex(g, degrees, "$.degrees", int_at)?;
            IntegerPolarization::new(rank, degrees).map(PolarizationInput::Bundle).map_err(pol_err("$"))
        }
        (Some(_), Some(_)) => Err(schema("$", "give either `a` or `rank`, not both")),
        (None, None) => Err(schema("$", "expected `a` (with `chi`) or `rank` and `degrees`")),
    }
}

pub fn polarization_to_value(g: &DualGraph, p: &Polarization) -> Value {
    let mut m = Map::new();
    m.insert("schemaVersion".into(), SCHEMA_VERSION.into());
    m.insert("chi".into(), p.chi().into());
    m.insert("a".into(), vertex_map(g, p.weights().iter().map(|&w| format_rational(w))));
    Value::Object(m)
}

pub fn bundle_to_value(g: &DualGraph, e: &IntegerPolarization) -> Value {
    let mut m = Map::new();
    m.insert("schemaVersion".into(), SCHEMA_VERSION.into());
    m.insert("rank".into(), e.rank().into());
    m.insert("degrees".into(), vertex_map(g, e.degrees().iter().copied()));
    Value::Object(m)
}

pub fn input_to_value(g: &DualGraph, p: &PolarizationInput) -> Value {
    match p {
        PolarizationInput::Weights(p) => polarization_to_value(g, p),
        PolarizationInput::Bundle(e) => bundle_to_value(g, e),
    }
}

// ---- sheaves ----

fn edge_list(s: EdgeSet) -> Value {
    s.iter().collect::<Vec<_>>().into()
}

fn sheaf_fields(g: &DualGraph, support: Subcurve, s: &SheafClass) -> (Value, Value) {
    let multidegree = Value::Object(
        support.iter().map(|v| (g.name(v).to_owned(), s.degrees[v].into())).collect(),
    );
    (edge_list(s.non_inv), multidegree)
}

/// `{"nonInvEdges": [..], "multidegree": {id: d}}`.
pub fn sheaf_to_value(g: &DualGraph, s: &SheafClass) -> Value {
    let (non_inv, multidegree) = sheaf_fields(g, g.all(), s);
    let mut m = Map::new();
    m.insert("nonInvEdges".into(), non_inv);
    m.insert("multidegree".into(), multidegree);
    Value::Object(m)
}

pub fn parse_sheaf(g: &DualGraph, text: &str) -> Result<SheafClass, FormatError> {
    let value: Value = serde_json::from_str(text).map_err(|e| FormatError::Malformed(e.to_string()))?;
    sheaf_from_value(g, &value)
}

pub fn sheaf_from_value(g: &DualGraph, value: &Value) -> Result<SheafClass, FormatError> {
    let obj = value.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    for key in obj.keys() {
        if !["schemaVersion", "nonInvEdges", "multidegree"].contains(&key.as_str()) {
            return Err(schema(format!("$.{key}"), "unknown field"));
        }
    }
    let edges = obj
        .get("nonInvEdges")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("$.nonInvEdges", "expected an array of edge ids"))?;
    let mut non_inv = EdgeSet::EMPTY;
    for (i, e) in edges.iter().enumerate() {
        let path = format!("$.nonInvEdges[{i}]");
        let e = e
            .as_u64()
            .and_then(|e| usize::try_from(e).ok())
            .filter(|&e| e < g.edge_count())
            .ok_or_else(|| schema(path, format!("expected an edge id below {}", g.edge_count())))?;
        non_inv.insert(e);
    }
    let degrees = obj
        .get("multidegree")
        .and_then(Value::as_object)
        .ok_or_else(|| schema("$.multidegree", "expected a map from vertex id to integer"))?;
    let degrees = per_vertex(g, degrees, "$.multidegree", int_at)?;
    Ok(SheafClass::new(non_inv, degrees))
}

pub fn subcurve_to_value(g: &DualGraph, y: Subcurve) -> Value {
    y.iter().map(|v| Value::from(g.name(v))).collect::<Vec<_>>().into()
}

pub fn piece_to_value(g: &DualGraph, p: &SheafPiece) -> Value {
    let (non_inv, multidegree) = sheaf_fields(g, p.support, &p.sheaf);
    let mut m = Map::new();
    m.insert("subcurve".into(), subcurve_to_value(g, p.support));
    m.insert("nonInvEdges".into(), non_inv);
    m.insert("multidegree".into(), multidegree);
    Value::Object(m)
}

pub fn class_to_value(g: &DualGraph, c: &SEquivClass) -> Value {
    c.parts().iter().map(|p| piece_to_value(g, p)).collect::<Vec<_>>().into()
}

pub fn jh_error_to_value(g: &DualGraph, e: &JhError) -> Value {
    let mut m = Map::new();
    let code = match e {
        JhError::NotSemistable => "not-semistable",
        JhError::NoFiltration => "no-filtration",
        JhError::NotPartition => "not-partition",
        JhError::NotSpine(_) => "not-spine",
        JhError::HypothesisFails(_) => "hypothesis-fails",
    };
    m.insert("error".into(), code.into());
    if let JhError::NotSpine(y) | JhError::HypothesisFails(y) = e {
        m.insert("subcurve".into(), subcurve_to_value(g, *y));
    }
    Value::Object(m)
}

/// One row of the S-equivalence table.
pub fn class_row_to_value(g: &DualGraph, row: &ClassRow) -> Value {
    let mut m = Map::new();
    m.insert("parts".into(), class_to_value(g, &row.class));
    m.insert(
        "quasistableRep".into(),
        match &row.representative {
            Ok(s) => sheaf_to_value(g, s),
            Err(e) => jh_error_to_value(g, e),
        },
    );
    m.insert("memberCount".into(), row.members.len().into());
    m.insert("quasistableCount".into(), row.quasistable.len().into());
    m.insert("members".into(), row.members.iter().map(|s| sheaf_to_value(g, s)).collect::<Vec<_>>().into());
    Value::Object(m)
}
