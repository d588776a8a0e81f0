//! Machine-readable result tables: one stable JSON schema, fixed-column CSV,
//! and an aligned text rendering.
//!
//! The JSON document is an object with a `metadata` header and a `rows`
//! array (an empty computation still yields a valid document with an empty
//! array). Field order is fixed by the struct definitions, so identical
//! inputs and flags produce byte-identical JSON except for the `timestamp`
//! field — which is excluded from [`ResultTable::content_hash`].
//!
//! CSV columns are fixed: `p, degree, dim, safe`. The text mode prints the
//! same rows human-aligned.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Provenance header of a [`ResultTable`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    /// SHA-256 of the input spec bytes (hex), or `"builtin:<name>"`.
    pub input: String,
    /// The subcommand or operation that produced the table.
    pub command: String,
    /// Truncation bounds, e.g. `"max-weight=4 max-degree=3"`.
    pub truncation: String,
    /// Computation route (`"cyclic"`, `"kassel"`, …) when relevant.
    pub route: String,
    /// Wall-clock timestamp; excluded from the content hash.
    pub timestamp: String,
}

/// One row: a `(Hodge weight, homological degree)` cell with its dimension
/// and whether the degree lies inside the safe truncation window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRow {
    pub p: usize,
    pub degree: i64,
    pub dim: usize,
    pub safe: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub representatives: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultTable {
    pub metadata: Metadata,
    pub rows: Vec<ResultRow>,
}

/// Hex SHA-256 of raw input bytes, for the `input` metadata field.
pub fn input_hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl ResultTable {
    pub fn new(metadata: Metadata, rows: Vec<ResultRow>) -> Self {
        ResultTable { metadata, rows }
    }

    /// Deterministic pretty JSON (stable field order, trailing newline).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("tables serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// SHA-256 of the JSON rendering with the timestamp field blanked, so
    /// identical inputs and flags hash identically across runs.
    pub fn content_hash(&self) -> String {
        let mut copy = self.clone();
        copy.metadata.timestamp = String::new();
        input_hash(copy.to_json().as_bytes())
    }

    /// Fixed-column CSV: `p, degree, dim, safe`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["p", "degree", "dim", "safe"]).expect("csv");
        for r in &self.rows {
            w.write_record([
                r.p.to_string(),
                r.degree.to_string(),
                r.dim.to_string(),
                r.safe.to_string(),
            ])
            .expect("csv");
        }
        String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
    }

    /// Human-aligned text rendering with the metadata header.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# {} | input {} | {} | route {}\n",
            self.metadata.command, self.metadata.input, self.metadata.truncation, self.metadata.route
        ));
        out.push_str(&format!(
            "{:>4} {:>7} {:>5} {:>5}\n",
            "p", "degree", "dim", "safe"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:>4} {:>7} {:>5} {:>5}",
                r.p, r.degree, r.dim, r.safe
            ));
            if let Some(reps) = &r.representatives {
                out.push_str(&format!("   {}", reps.join("; ")));
            }
            out.push('\n');
        }
        if self.rows.is_empty() {
            out.push_str("(no rows)\n");
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Text => self.to_text(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta() -> Metadata {
        Metadata {
            input: "builtin:sl2".into(),
            command: "hodge-hc".into(),
            truncation: "max-weight=3 max-degree=3".into(),
            route: "cyclic".into(),
            timestamp: "2026-08-24T00:00:00Z".into(),
        }
    }

    fn table() -> ResultTable {
        ResultTable::new(
            meta(),
            vec![
                ResultRow {
                    p: 1,
                    degree: 0,
                    dim: 1,
                    safe: true,
                    representatives: None,
                },
                ResultRow {
                    p: 2,
                    degree: 3,
                    dim: 2,
                    safe: false,
                    representatives: Some(vec!["♮(σe σf)".into()]),
                },
            ],
        )
    }

    #[test]
    fn json_round_trips_exactly() {
        let t = table();
        let json = t.to_json();
        let back = ResultTable::from_json(&json).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn empty_table_is_a_valid_document_with_metadata() {
        let t = ResultTable::new(meta(), Vec::new());
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert!(v["metadata"].is_object());
        assert_eq!(v["rows"], serde_json::json!([]));
        assert!(t.to_text().contains("no rows"));
        assert_eq!(t.to_csv().lines().next(), Some("p,degree,dim,safe"));
    }

    #[test]
    fn content_hash_ignores_the_timestamp() {
        let a = table();
        let mut b = table();
        b.metadata.timestamp = "1999-01-01T00:00:00Z".into();
        assert_ne!(a.to_json(), b.to_json());
        assert_eq!(a.content_hash(), b.content_hash());
        let mut c = table();
        c.rows[0].dim = 7;
        assert_ne!(a.content_hash(), c.content_hash());
    }

    #[test]
    fn csv_has_the_fixed_columns() {
        let csv = table().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "p,degree,dim,safe");
        assert_eq!(lines[1], "1,0,1,true");
        assert_eq!(lines[2], "2,3,2,false");
    }
}
