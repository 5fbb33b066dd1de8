//! Deterministic serialization: alist and Matrix Market matrix formats,
//! structured claim-report text, and the export bundle metadata record.
//!
//! The alist layout is column-section-first and the parser accepts only that
//! layout; round-trips are bit-exact.

use crate::analysis::ClaimReport;
use crate::binmat::BinMatrix;
use crate::geometry::ORDERING_VERSION;
use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

/// Schema tag carried by every serialized report.
pub const REPORT_SCHEMA: &str = "report-v1";

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum AlistError {
    #[error("MalformedAlist at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

fn malformed(line: usize, reason: impl Into<String>) -> AlistError {
    AlistError::Malformed {
        line,
        reason: reason.into(),
    }
}

/// Serialize in the standard alist layout: header "cols rows", max weights,
/// column weights, row weights, then per-column and per-row 1-based index
/// lines padded with 0.
pub fn write_alist(m: &BinMatrix) -> String {
    let col_weights = m.col_weights();
    let row_weights = m.row_weights();
    let max_col = *col_weights.iter().max().unwrap();
    let max_row = *row_weights.iter().max().unwrap();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", m.cols(), m.rows());
    let _ = writeln!(out, "{max_col} {max_row}");
    let _ = writeln!(out, "{}", join(&col_weights));
    let _ = writeln!(out, "{}", join(&row_weights));
    for c in 0..m.cols() {
        let mut indices: Vec<usize> = (0..m.rows())
            .filter(|&r| m.get(r, c))
            .map(|r| r + 1)
            .collect();
        indices.resize(max_col, 0);
        let _ = writeln!(out, "{}", join(&indices));
    }
    for r in 0..m.rows() {
        let mut indices: Vec<usize> = (0..m.cols())
            .filter(|&c| m.get(r, c))
            .map(|c| c + 1)
            .collect();
        indices.resize(max_row, 0);
        let _ = writeln!(out, "{}", join(&indices));
    }
    out
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_numbers(line_no: usize, line: &str, expected: usize) -> Result<Vec<usize>, AlistError> {
    let nums: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
    let nums = nums.map_err(|_| malformed(line_no, "expected whitespace-separated integers"))?;
    if nums.len() != expected {
        return Err(malformed(
            line_no,
            format!("expected {expected} values, got {}", nums.len()),
        ));
    }
    Ok(nums)
}

/// Inverse of [`write_alist`]. Rejects inconsistent weights, out-of-range
/// indices and duplicate indices within a line.
#[allow(clippy::needless_range_loop)]
pub fn parse_alist(text: &str) -> Result<BinMatrix, AlistError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut no = 0usize;
    let mut next = |reason: &str| -> Result<&str, AlistError> {
        let line = lines
            .get(no)
            .ok_or_else(|| malformed(no + 1, format!("missing {reason}")))?;
        no += 1;
        Ok(line)
    };

    let header = parse_numbers(1, next("header")?, 2)?;
    let (cols, rows) = (header[0], header[1]);
    if cols == 0 || rows == 0 {
        return Err(malformed(1, "zero dimension"));
    }
    let maxes = parse_numbers(2, next("max weights")?, 2)?;
    let (max_col, max_row) = (maxes[0], maxes[1]);
    if max_col > rows || max_row > cols {
        return Err(malformed(2, "max weight exceeds dimension"));
    }
    let col_weights = parse_numbers(3, next("column weights")?, cols)?;
    let row_weights = parse_numbers(4, next("row weights")?, rows)?;
    if col_weights.iter().any(|&w| w > max_col) {
        return Err(malformed(3, "column weight exceeds declared maximum"));
    }
    if row_weights.iter().any(|&w| w > max_row) {
        return Err(malformed(4, "row weight exceeds declared maximum"));
    }
    if col_weights.iter().sum::<usize>() != row_weights.iter().sum::<usize>() {
        return Err(malformed(4, "column and row weight totals differ"));
    }

    let mut m = BinMatrix::zeros(rows, cols);
    for c in 0..cols {
        let line_no = 5 + c;
        let entries = parse_numbers(line_no, next("column index line")?, max_col)?;
        let (real, padding) = entries.split_at(col_weights[c]);
        if padding.iter().any(|&x| x != 0) {
            return Err(malformed(
                line_no,
                "nonzero entry beyond declared column weight",
            ));
        }
        let mut seen = vec![false; rows];
        for &r in real {
            if r == 0 || r > rows {
                return Err(malformed(line_no, format!("row index {r} out of range")));
            }
            if seen[r - 1] {
                return Err(malformed(line_no, format!("duplicate row index {r}")));
            }
            seen[r - 1] = true;
            m.set(r - 1, c, true);
        }
    }
    for r in 0..rows {
        let line_no = 5 + cols + r;
        let entries = parse_numbers(line_no, next("row index line")?, max_row)?;
        let (real, padding) = entries.split_at(row_weights[r]);
        if padding.iter().any(|&x| x != 0) {
            return Err(malformed(
                line_no,
                "nonzero entry beyond declared row weight",
            ));
        }
        let mut seen = vec![false; cols];
        for &c in real {
            if c == 0 || c > cols {
                return Err(malformed(line_no, format!("column index {c} out of range")));
            }
            if seen[c - 1] {
                return Err(malformed(line_no, format!("duplicate column index {c}")));
            }
            seen[c - 1] = true;
            if !m.get(r, c - 1) {
                return Err(malformed(
                    line_no,
                    "row section disagrees with column section",
                ));
            }
        }
        if real.len() != (0..cols).filter(|&c| m.get(r, c)).count() {
            return Err(malformed(
                line_no,
                "row weight disagrees with column section",
            ));
        }
    }
    if lines.len() > no && lines[no..].iter().any(|l| !l.trim().is_empty()) {
        return Err(malformed(no + 1, "trailing content"));
    }
    Ok(m)
}

/// Matrix Market coordinate format, entries in row-major order.
pub fn write_mtx(m: &BinMatrix) -> String {
    let mut entries = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if m.get(r, c) {
                entries.push((r + 1, c + 1));
            }
        }
    }
    let mut out = String::from("%%MatrixMarket matrix coordinate integer general\n");
    let _ = writeln!(out, "{} {} {}", m.rows(), m.cols(), entries.len());
    for (r, c) in entries {
        let _ = writeln!(out, "{r} {c} 1");
    }
    out
}

/// Key-sorted, schema-versioned text serialization of a claim report.
pub fn write_report(r: &ClaimReport) -> String {
    let mut fields: Vec<(String, String)> = vec![
        ("schema".into(), REPORT_SCHEMA.into()),
        ("ordering_version".into(), ORDERING_VERSION.to_string()),
        ("family".into(), r.family_name().into()),
        ("m".into(), r.m.to_string()),
        ("q".into(), r.q.to_string()),
        ("case_label".into(), r.case_label.clone()),
        ("recipe".into(), r.recipe.clone()),
        ("n".into(), r.n.to_string()),
        ("gen_rows".into(), r.gen_rows.to_string()),
        ("rank".into(), r.computed_rank.to_string()),
        ("k_paper".into(), r.paper.k.to_string()),
        ("k_computed".into(), r.computed_k.to_string()),
        ("d_paper".into(), r.paper.d_bound.to_string()),
        ("d_paper_kind".into(), r.paper.d_kind.to_string()),
        ("d_computed".into(), r.distance.value_display()),
        ("d_computed_kind".into(), r.distance.kind.to_string()),
        ("distance_work".into(), r.distance.work.to_string()),
        ("self_orthogonal".into(), r.self_orth.ok.to_string()),
        (
            "violation_count".into(),
            (r.self_orth.violating_pairs.len() + r.self_orth.odd_weight_rows.len()).to_string(),
        ),
    ];
    if let Some(i) = r.class_index() {
        fields.push(("class_index".into(), i.to_string()));
    }
    for (name, verdict) in &r.verdicts {
        fields.push((
            format!("verdict_{}", name.replace('-', "_")),
            verdict.to_string(),
        ));
    }
    if !r.self_orth.ok {
        let pairs: Vec<String> = r
            .self_orth
            .violating_pairs
            .iter()
            .take(20)
            .map(|(i, j)| format!("{i}:{j}"))
            .collect();
        fields.push(("violating_pairs".into(), pairs.join(";")));
        let odd: Vec<String> = r
            .self_orth
            .odd_weight_rows
            .iter()
            .take(20)
            .map(|i| i.to_string())
            .collect();
        fields.push(("odd_weight_rows".into(), odd.join(";")));
    }
    if let Some(w) = &r.distance.witness {
        let support: Vec<String> = w.support().iter().map(|c| c.to_string()).collect();
        fields.push(("d_witness".into(), support.join(",")));
    }
    fields.sort();
    let mut out = String::new();
    for (k, v) in fields {
        let _ = writeln!(out, "{k}={v}");
    }
    out
}

/// Metadata record written alongside exported matrices.
#[derive(Debug, Clone, Serialize)]
pub struct BundleMetadata {
    pub family: String,
    pub m: usize,
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_index: Option<usize>,
    pub case_label: String,
    pub recipe: String,
    pub n: usize,
    pub gen_rows: usize,
    pub rank: usize,
    pub k_paper: i64,
    pub k_computed: i64,
    pub d_paper: u64,
    pub d_paper_kind: String,
    pub d_computed: String,
    pub d_computed_kind: String,
    pub self_orthogonal: bool,
    pub violation_count: usize,
    pub ordering_version: u32,
}

impl BundleMetadata {
    pub fn from_report(r: &ClaimReport) -> BundleMetadata {
        BundleMetadata {
            family: r.family_name().into(),
            m: r.m,
            q: r.q,
            class_index: r.class_index(),
            case_label: r.case_label.clone(),
            recipe: r.recipe.clone(),
            n: r.n,
            gen_rows: r.gen_rows,
            rank: r.computed_rank,
            k_paper: r.paper.k,
            k_computed: r.computed_k,
            d_paper: r.paper.d_bound,
            d_paper_kind: r.paper.d_kind.to_string(),
            d_computed: r.distance.value_display(),
            d_computed_kind: r.distance.kind.to_string(),
            self_orthogonal: r.self_orth.ok,
            violation_count: r.self_orth.violating_pairs.len() + r.self_orth.odd_weight_rows.len(),
            ordering_version: ORDERING_VERSION,
        }
    }

    /// Plain key=value rendering, key-sorted.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("metadata serializes");
        let map = value.as_object().expect("metadata is a map");
        let mut keys: Vec<&String> = map.keys().collect();
        keys.sort();
        let mut out = String::new();
        for k in keys {
            let v = &map[k];
            let rendered = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "{k}={rendered}");
        }
        out
    }
}

/// Matrices exported inline for the JSON format, one 0/1 string per row.
#[derive(Debug, Clone, Serialize)]
pub struct ExportBundle {
    pub metadata: BundleMetadata,
    pub core: Vec<String>,
    pub h_orth: Vec<String>,
    pub stabilizer: Vec<String>,
}

pub fn matrix_rows_as_strings(m: &BinMatrix) -> Vec<String> {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| if m.get(r, c) { '1' } else { '0' })
                .collect()
        })
        .collect()
}
