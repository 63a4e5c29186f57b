//! Requests and their dispatch to the analysis library.

use std::time::Instant;

use serde_json::{json, Map, Value};
use spinejac_core::{
    check_prop35_hypotheses, check_theorem_hypothesis, is_integer_at, quasistable_to_stable_polarization,
    tabulate_classes, BijectionFailure, ClassTable, DualGraph, Mode, Query, ScanMode, Subcurve, Thresholds,
};
use thiserror::Error;

use crate::format::{self, FormatError, PolarizationInput};
use crate::parallel;
use crate::properties;
use crate::report::{columns, digest, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Spines,
    Decompositions,
    Enumerate,
    Classify,
    CheckThm,
    CheckProp35,
    TransformPolarization,
    Verify,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Spines,
        Command::Decompositions,
        Command::Enumerate,
        Command::Classify,
        Command::CheckThm,
        Command::CheckProp35,
        Command::TransformPolarization,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Spines => "spines",
            Command::Decompositions => "decompositions",
            Command::Enumerate => "enumerate",
            Command::Classify => "classify",
            Command::CheckThm => "check-thm",
            Command::CheckProp35 => "check-prop35",
            Command::TransformPolarization => "transform-polarization",
            Command::Verify => "verify",
        }
    }

    pub fn needs_polarization(self) -> bool {
        !matches!(self, Command::Spines | Command::Decompositions)
    }
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Semistable => "semistable",
        Mode::Stable => "stable",
        Mode::Quasistable => "quasistable",
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub command: Command,
    pub graph: DualGraph,
    pub polarization: Option<PolarizationInput>,
    pub mode: Mode,
    pub simple_only: bool,
    /// Worker cap for parallel enumeration; `None` uses every core.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommandError {
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("`{0}` needs a polarization (--pol)")]
    MissingPolarization(&'static str),
    #[error("`transform-polarization` needs a bundle polarization {{\"rank\", \"degrees\"}}")]
    NeedsBundle,
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl CommandError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Format(e) => e.code(),
            Self::MissingPolarization(_) => "missing-polarization",
            Self::NeedsBundle => "needs-bundle",
            Self::Io { .. } => "io",
        }
    }
}

/// Builds a request from file contents.
pub fn parse_request(
    command: Command,
    graph_text: &str,
    polarization_text: Option<&str>,
    chi: Option<i64>,
    mode: Mode,
    simple_only: bool,
) -> Result<Request, CommandError> {
    let graph = format::parse_graph(graph_text)?;
    let polarization = match polarization_text {
        Some(text) => Some(format::parse_polarization(&graph, text, chi)?),
        None if command.needs_polarization() => return Err(CommandError::MissingPolarization(command.name())),
        None => None,
    };
    Ok(Request { command, graph, polarization, mode, simple_only, threads: None })
}

fn names(g: &DualGraph, y: Subcurve) -> String {
    let v: Vec<&str> = y.iter().map(|v| g.name(v)).collect();
    format!("{{{}}}", v.join(","))
}

fn ids(e: spinejac_core::EdgeSet) -> String {
    let v: Vec<String> = e.iter().map(|i| i.to_string()).collect();
    format!("[{}]", v.join(","))
}

fn degrees_text(d: &[i64]) -> String {
    let v: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(","))
}

struct Output {
    payload: Value,
    table: String,
}

pub fn run(req: &Request) -> Result<Report, CommandError> {
    let start = Instant::now();
    let g = &req.graph;
    let graph_value = format::graph_to_value(g);
    let pol_value = req.polarization.as_ref().map_or(Value::Null, |p| format::input_to_value(g, p));
    let options = json!({"mode": mode_name(req.mode), "simpleOnly": req.simple_only});
    let input_digest = digest(&[&Value::from(req.command.name()), &graph_value, &pol_value, &options]);
    let pol = || req.polarization.as_ref().ok_or(CommandError::MissingPolarization(req.command.name()));
    let out = match req.command {
        Command::Spines => spines(g),
        Command::Decompositions => decompositions(g),
        Command::Enumerate => enumerate(req, &pol()?.thresholds()),
        Command::Classify => classify(g, &pol()?.thresholds()),
        Command::CheckThm => check_thm(g, &pol()?.thresholds()),
        Command::CheckProp35 => check_prop35(g, &pol()?.thresholds()),
        Command::TransformPolarization => match pol()? {
            PolarizationInput::Bundle(e) => {
                let f = quasistable_to_stable_polarization(e, g)
                    .map_err(|source| FormatError::Polarization { path: "$".into(), source })?;
                let payload = json!({
                    "basepoint": g.name(g.basepoint()),
                    "input": format::bundle_to_value(g, e),
                    "output": format::bundle_to_value(g, &f),
                });
                let table = format!(
                    "E: rank {} degrees {}\nF: rank {} degrees {}\n",
                    e.rank(),
                    degrees_text(e.degrees()),
                    f.rank(),
                    degrees_text(f.degrees())
                );
                Output { payload, table }
            }
            PolarizationInput::Weights(_) => return Err(CommandError::NeedsBundle),
        },
        Command::Verify => {
            let p = pol()?;
            let bundle = match p {
                PolarizationInput::Bundle(e) => Some(e),
                PolarizationInput::Weights(_) => None,
            };
            verify(g, &p.thresholds(), bundle)
        }
    };
    Ok(Report {
        command: req.command.name().to_owned(),
        input_digest,
        payload: out.payload,
        table: out.table,
        elapsed: start.elapsed(),
    })
}

fn spines(g: &DualGraph) -> Output {
    let spines = g.spines();
    let payload = json!({
        "separatingNodes": g.separating_nodes().iter().collect::<Vec<_>>(),
        "spines": spines.iter().map(|&s| format::subcurve_to_value(g, s)).collect::<Vec<_>>(),
    });
    let mut table = format!("separating nodes: {}\n", ids(g.separating_nodes()));
    for s in &spines {
        table.push_str(&format!("spine {}\n", names(g, *s)));
    }
    Output { payload, table }
}

fn decompositions(g: &DualGraph) -> Output {
    let decs = g.spine_decompositions();
    let rows: Vec<Value> = decs
        .iter()
        .map(|d| {
            let cut = d
                .parts()
                .iter()
                .enumerate()
                .fold(spinejac_core::EdgeSet::EMPTY, |acc, (i, &a)| {
                    d.parts()[i + 1..].iter().fold(acc, |acc, &b| acc.union(g.edges_between(a, b)))
                });
            json!({
                "cut": cut.iter().collect::<Vec<_>>(),
                "parts": d.parts().iter().map(|&z| format::subcurve_to_value(g, z)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let table = columns(
        &["#", "parts"],
        &decs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let parts: Vec<String> = d.parts().iter().map(|&z| names(g, z)).collect();
                vec![i.to_string(), parts.join(" ")]
            })
            .collect::<Vec<_>>(),
    );
    Output { payload: json!({"count": decs.len(), "decompositions": rows}), table }
}

fn enumerate(req: &Request, t: &Thresholds) -> Output {
    let g = &req.graph;
    let query = Query { mode: req.mode, simple_only: req.simple_only, scan: ScanMode::All };
    let sheaves = parallel::with_workers(req.threads.or_else(parallel::thread_cap), || {
        parallel::enumerate_on(g, g.all(), t, query)
    });
    let payload = json!({
        "mode": mode_name(req.mode),
        "simpleOnly": req.simple_only,
        "count": sheaves.len(),
        "sheaves": sheaves.iter().map(|s| format::sheaf_to_value(g, s)).collect::<Vec<_>>(),
    });
    let rows: Vec<Vec<String>> =
        sheaves.iter().map(|s| vec![ids(s.non_inv), degrees_text(&s.degrees)]).collect();
    let table = format!("{} {} sheaves\n{}", sheaves.len(), mode_name(req.mode), columns(&["S", "d"], &rows));
    Output { payload, table }
}

fn table_payload(g: &DualGraph, table: &ClassTable) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("semistableCount".into(), table.semistable_count.into());
    m.insert("quasistableCount".into(), table.quasistable_count.into());
    m.insert("classCount".into(), table.rows.len().into());
    m.insert("classes".into(), table.rows.iter().map(|r| format::class_row_to_value(g, r)).collect::<Vec<_>>().into());
    m
}

fn table_text(g: &DualGraph, table: &ClassTable) -> String {
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| {
            let parts: Vec<String> = r
                .class
                .parts()
                .iter()
                .map(|p| {
                    let d: Vec<i64> = p.support.iter().map(|v| p.sheaf.degrees[v]).collect();
                    format!("{}:{}", names(g, p.support), degrees_text(&d))
                })
                .collect();
            let rep = match &r.representative {
                Ok(s) => format!("{} {}", ids(s.non_inv), degrees_text(&s.degrees)),
                Err(e) => e.to_string(),
            };
            vec![parts.join(" "), r.members.len().to_string(), r.quasistable.len().to_string(), rep]
        })
        .collect();
    format!(
        "{} semistable, {} quasistable, {} classes\n{}",
        table.semistable_count,
        table.quasistable_count,
        table.rows.len(),
        columns(&["class", "members", "quasistable", "representative"], &rows)
    )
}

fn jh_failure(g: &DualGraph, e: &spinejac_core::JhError) -> Output {
    Output { payload: json!({"error": format::jh_error_to_value(g, e)}), table: format!("error: {e}\n") }
}

fn classify(g: &DualGraph, t: &Thresholds) -> Output {
    match tabulate_classes(g, t) {
        Ok(table) => Output { payload: Value::Object(table_payload(g, &table)), table: table_text(g, &table) },
        Err(e) => jh_failure(g, &e),
    }
}

fn failure_value(g: &DualGraph, f: &BijectionFailure) -> Value {
    match f {
        BijectionFailure::QuasistableCount { row, count } => {
            json!({"kind": "quasistable-count", "row": row, "count": count})
        }
        BijectionFailure::RepresentativeMismatch { row, expected, found } => json!({
            "kind": "representative-mismatch",
            "row": row,
            "expected": format::sheaf_to_value(g, expected),
            "found": format::sheaf_to_value(g, found),
        }),
        BijectionFailure::RepresentativeUnsupported { row, reason } => json!({
            "kind": "representative-unsupported",
            "row": row,
            "reason": format::jh_error_to_value(g, reason),
        }),
    }
}

fn check_thm(g: &DualGraph, t: &Thresholds) -> Output {
    let hyp = check_theorem_hypothesis(g, t);
    let witness = |w: Option<Subcurve>| w.map_or(Value::Null, |y| format::subcurve_to_value(g, y));
    let hypothesis = json!({
        "holds": hyp.holds,
        "holdsForConnected": hyp.holds_for_connected,
        "dependsOnReading": hyp.depends_on_reading(),
        "witness": witness(hyp.witness),
        "connectedWitness": witness(hyp.connected_witness),
    });
    let table = match tabulate_classes(g, t) {
        Ok(table) => table,
        Err(e) => return jh_failure(g, &e),
    };
    let failures = spinejac_core::bijection_failures(&table);
    let mut m = Map::new();
    m.insert("hypothesis".into(), hypothesis);
    m.insert("bijectionHolds".into(), failures.is_empty().into());
    m.insert("failures".into(), failures.iter().map(|f| failure_value(g, f)).collect::<Vec<_>>().into());
    m.extend(table_payload(g, &table));
    let mut text = format!(
        "hypothesis: {} (connected subcurves only: {})\n",
        if hyp.holds { "holds" } else { "fails" },
        if hyp.holds_for_connected { "holds" } else { "fails" }
    );
    if let Some(w) = hyp.witness {
        text.push_str(&format!("witness: {}\n", names(g, w)));
    }
    text.push_str(&format!(
        "one quasistable sheaf per class, matching the representative: {}\n",
        if failures.is_empty() { "yes" } else { "no" }
    ));
    text.push_str(&table_text(g, &table));
    Output { payload: Value::Object(m), table: text }
}

fn check_prop35(g: &DualGraph, t: &Thresholds) -> Output {
    let flags = check_prop35_hypotheses(g, t);
    let integer_at: Vec<Subcurve> = g
        .all()
        .subsets()
        .filter(|&y| is_integer_at(g, t, y).unwrap_or(false))
        .collect();
    let payload = json!({
        "notIntegerAnywhere": flags.not_integer_anywhere,
        "integerOnlyAtPSubcurves": flags.integer_only_at_p_subcurves,
        "integerAt": integer_at.iter().map(|&y| format::subcurve_to_value(g, y)).collect::<Vec<_>>(),
    });
    let mut table = format!(
        "not integer anywhere: {}\ninteger only at subcurves through {}: {}\n",
        flags.not_integer_anywhere,
        g.name(g.basepoint()),
        flags.integer_only_at_p_subcurves
    );
    for y in integer_at {
        table.push_str(&format!("integer at {}\n", names(g, y)));
    }
    Output { payload, table }
}

fn verify(g: &DualGraph, t: &Thresholds, bundle: Option<&spinejac_core::IntegerPolarization>) -> Output {
    let checks = properties::run_all(g, t, bundle);
    let all_hold = checks.iter().all(|c| c.holds != Some(false));
    let payload = json!({
        "allHold": all_hold,
        "checks": checks.iter().map(|c| json!({"name": c.name, "holds": c.holds, "detail": c.detail})).collect::<Vec<_>>(),
    });
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            let verdict = match c.holds {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "n/a",
            };
            vec![c.name.to_owned(), verdict.to_owned(), c.detail.clone()]
        })
        .collect();
    Output { payload, table: columns(&["check", "result", "detail"], &rows) }
}
