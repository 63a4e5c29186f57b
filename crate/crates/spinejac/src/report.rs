//! Command reports: a deterministic JSON envelope plus a text rendering.

use std::time::Duration;

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::format::SCHEMA_VERSION;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    /// SHA-256 of the canonical inputs, hex encoded.
    pub input_digest: String,
    pub payload: Value,
    /// Human-readable rendering of the payload.
    pub table: String,
    /// Wall-clock time; never part of the JSON.
    pub elapsed: Duration,
}

impl Report {
    /// The envelope `{schemaVersion, command, inputDigest, payload}`.
    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("schemaVersion".into(), SCHEMA_VERSION.into());
        m.insert("command".into(), self.command.clone().into());
        m.insert("inputDigest".into(), self.input_digest.clone().into());
        m.insert("payload".into(), self.payload.clone());
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("reports always serialize")
    }

    pub fn render_table(&self) -> String {
        format!(
            "command: {}\ninput:   {}\n{}\nelapsed: {:.3}s\n",
            self.command,
            &self.input_digest[..16],
            self.table.trim_end(),
            self.elapsed.as_secs_f64()
        )
    }
}

/// Hashes the canonical JSON of each input, separated by NUL bytes.
pub fn digest(parts: &[&Value]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.to_string().as_bytes());
        h.update([0u8]);
    }
    hex::encode(h.finalize())
}

/// Rows of cells as aligned columns.
pub fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(c);
            if i + 1 < cells.len() {
                s.extend(std::iter::repeat_n(' ', w - c.chars().count()));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_excludes_timing() {
        let r = Report {
            command: "spines".into(),
            input_digest: digest(&[&Value::from(1)]),
            payload: serde_json::json!({"x": 1}),
            table: "x 1".into(),
            elapsed: Duration::from_millis(5),
        };
        let v = r.to_value();
        assert_eq!(v.as_object().unwrap().keys().collect::<Vec<_>>(), ["schemaVersion", "command", "inputDigest", "payload"]);
        assert_eq!(serde_json::from_str::<Value>(&r.to_json()).unwrap(), v);
        assert_eq!(r.input_digest.len(), 64);
    }

    #[test]
    fn columns_align() {
        let t = columns(&["a", "bb"], &[vec!["ccc".into(), "d".into()]]);
        assert_eq!(t, "a    bb\nccc  d\n");
    }
}
