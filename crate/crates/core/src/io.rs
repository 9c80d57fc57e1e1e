//! JSON instance and certificate files, and report rendering.
//!
//! An instance file carries a whole triple:
//!
//! ```json
//! {
//!   "field": "Q",
//!   "A": {"rows": 3, "cols": 2, "data": [["1", "1"], ["1", "1"], ["0", "0"]]},
//!   "B": {"rows": 2, "cols": 3, "data": [["1", "2", "3"], ["0", "1", "0"]]},
//!   "C": {"rows": 3, "cols": 2, "data": [["1", "1"], ["0", "-1"], ["1", "0"]]}
//! }
//! ```
//!
//! Scalars are strings: integers (`"-3"`) or fractions (`"-1/2"`). Over
//! `GF(p)` a fraction is accepted when its denominator is invertible and is
//! reduced on load. Output JSON has sorted keys so it is byte-stable.

use serde_json::{json, Map, Value};

use crate::analysis::{equality_criteria, rank_profile, CriteriaReport, RankProfile};
use crate::certificate::{construct_with_criteria, ConstructionTrace, Outcome};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub field: FieldSpec,
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

fn parse_json(text: &[u8]) -> Result<Value> {
    serde_json::from_slice(text).map_err(|e| Error::Parse(e.to_string()))
}

fn field_of<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing key {key:?}")))
}

fn matrix_from_value(field: FieldSpec, name: &str, v: &Value) -> Result<Matrix> {
    let dim = |key: &str| -> Result<usize> {
        field_of(v, key)?
            .as_u64()
            .map(|d| d as usize)
            .ok_or_else(|| Error::Parse(format!("{name}.{key} must be a non-negative integer")))
    };
    let rows = dim("rows")?;
    let cols = dim("cols")?;
    let data = field_of(v, "data")?
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{name}.data must be an array of rows")))?;
    if data.len() != rows {
        return Err(Error::Parse(format!(
            "{name} declares {rows} rows but data has {}",
            data.len()
        )));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in data.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("{name}.data[{i}] must be an array")))?;
        if row.len() != cols {
            return Err(Error::Parse(format!(
                "{name}.data[{i}] has {} entries, expected {cols}",
                row.len()
            )));
        }
        for cell in row {
            let text = match cell {
                Value::String(s) => s.clone(),
                Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                other => {
                    return Err(Error::Scalar {
                        text: other.to_string(),
                        reason: "expected an integer or fraction string".into(),
                    })
                }
            };
            entries.push(field.parse_scalar(&text)?);
        }
    }
    Matrix::new(field, rows, cols, entries)
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    let data: Vec<Value> = m
        .row_iter()
        .map(|row| Value::Array(row.iter().map(|s| Value::String(s.to_string())).collect()))
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "data": data })
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &[u8]) -> Result<Instance> {
    let doc = parse_json(text)?;
    let tag = field_of(&doc, "field")?
        .as_str()
        .ok_or_else(|| Error::Parse("field must be a string".into()))?;
    let field: FieldSpec = tag.parse()?;
    let a = matrix_from_value(field, "A", field_of(&doc, "A")?)?;
    let b = matrix_from_value(field, "B", field_of(&doc, "B")?)?;
    let c = matrix_from_value(field, "C", field_of(&doc, "C")?)?;
    crate::analysis::check_chain(&a, &b, &c)?;
    Ok(Instance { field, a, b, c })
}

pub fn emit_instance(inst: &Instance) -> String {
    let doc = json!({
        "field": inst.field.to_string(),
        "A": matrix_to_value(&inst.a),
        "B": matrix_to_value(&inst.b),
        "C": matrix_to_value(&inst.c),
    });
    pretty(&doc)
}

/// Reads `X` and `Y` from a certificate document. Both a bare
/// `{"X": .., "Y": ..}` object and a full report with a `certificate` entry
/// are accepted.
pub fn parse_certificate(field: FieldSpec, text: &[u8]) -> Result<(Matrix, Matrix)> {
    let doc = parse_json(text)?;
    let body = doc.get("certificate").unwrap_or(&doc);
    let x = matrix_from_value(field, "X", field_of(body, "X")?)?;
    let y = matrix_from_value(field, "Y", field_of(body, "Y")?)?;
    Ok((x, y))
}

pub fn emit_certificate(x: &Matrix, y: &Matrix) -> String {
    pretty(&json!({ "X": matrix_to_value(x), "Y": matrix_to_value(y) }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub field: FieldSpec,
    pub profile: RankProfile,
    pub criteria: CriteriaReport,
    /// Certificate or witness; absent for summary-only reports.
    pub outcome: Option<Outcome>,
    pub include_trace: bool,
}

impl Report {
    pub fn verdict(&self) -> &'static str {
        if self.criteria.equality() {
            "equality"
        } else {
            "strict"
        }
    }
}

/// Ranks and criteria only.
pub fn check_report(inst: &Instance) -> Result<Report> {
    let profile = rank_profile(&inst.a, &inst.b, &inst.c)?;
    let criteria = equality_criteria(&inst.a, &inst.b, &inst.c)?;
    Ok(Report {
        field: inst.field,
        profile,
        criteria,
        outcome: None,
        include_trace: false,
    })
}

/// Ranks, criteria, and a certificate or witness.
pub fn certify_report(inst: &Instance, include_trace: bool) -> Result<Report> {
    let mut report = check_report(inst)?;
    report.outcome = Some(construct_with_criteria(
        &inst.a,
        &inst.b,
        &inst.c,
        &report.criteria,
    )?);
    report.include_trace = include_trace;
    Ok(report)
}

fn trace_to_value(t: &ConstructionTrace) -> Value {
    json!({
        "D_B": matrix_to_value(&t.d_b),
        "V_B": matrix_to_value(&t.v_b),
        "s": t.s,
        "r": t.r,
        "extended_basis": matrix_to_value(&t.extended_basis),
        "v_tilde": matrix_to_value(&t.v_tilde),
        "M": matrix_to_value(&t.m),
        "Y_images": matrix_to_value(&t.y_images),
    })
}

fn trace_entries(t: &ConstructionTrace) -> [(&'static str, &Matrix); 6] {
    [
        ("D_B", &t.d_b),
        ("V_B", &t.v_b),
        ("extended_basis", &t.extended_basis),
        ("v_tilde", &t.v_tilde),
        ("M", &t.m),
        ("Y_images", &t.y_images),
    ]
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

pub fn report_to_value(r: &Report) -> Value {
    let p = &r.profile;
    let mut doc = Map::new();
    doc.insert("field".into(), json!(r.field.to_string()));
    doc.insert(
        "rank_profile".into(),
        json!({
            "rank_B": p.n1,
            "rank_AB": p.n2,
            "rank_BC": p.m1,
            "rank_ABC": p.m2,
            "lhs": p.lhs(),
            "rhs": p.rhs(),
            "gap": p.gap,
        }),
    );
    let c = &r.criteria;
    doc.insert(
        "criteria".into(),
        json!({
            "gap_zero": c.gap_zero,
            "quotient_block_invertible": c.quotient_block_invertible,
            "intersections_equal": c.intersections_equal,
            "factor_exists": c.factor_exists,
        }),
    );
    doc.insert("verdict".into(), json!(r.verdict()));
    match &r.outcome {
        Some(Outcome::Equality(cert)) => {
            doc.insert(
                "certificate".into(),
                json!({ "X": matrix_to_value(&cert.x), "Y": matrix_to_value(&cert.y) }),
            );
            if r.include_trace {
                doc.insert("trace".into(), trace_to_value(&cert.trace));
            }
        }
        Some(Outcome::Strict(w)) => {
            doc.insert("witness".into(), matrix_to_value(&w.vector));
        }
        None => {}
    }
    Value::Object(doc)
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => pretty(&report_to_value(r)),
        Format::Text => report_text(r),
    }
}

fn push_matrix(out: &mut String, name: &str, m: &Matrix) {
    out.push_str(name);
    out.push_str("=\n");
    out.push_str(&m.to_string());
    out.push('\n');
}

fn report_text(r: &Report) -> String {
    let p = &r.profile;
    let c = &r.criteria;
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        out.push_str(k);
        out.push('=');
        out.push_str(&v);
        out.push('\n');
    };
    line("field", r.field.to_string());
    line("rank(B)", p.n1.to_string());
    line("rank(AB)", p.n2.to_string());
    line("rank(BC)", p.m1.to_string());
    line("rank(ABC)", p.m2.to_string());
    line("rank(ABC)+rank(B)", p.lhs().to_string());
    line("rank(AB)+rank(BC)", p.rhs().to_string());
    line("gap", p.gap.to_string());
    line("gap_zero", c.gap_zero.to_string());
    line(
        "quotient_block_invertible",
        c.quotient_block_invertible.to_string(),
    );
    line("intersections_equal", c.intersections_equal.to_string());
    line("factor_exists", c.factor_exists.to_string());
    line("verdict", r.verdict().to_string());
    match &r.outcome {
        Some(Outcome::Equality(cert)) => {
            push_matrix(&mut out, "X", &cert.x);
            push_matrix(&mut out, "Y", &cert.y);
            if r.include_trace {
                let t = &cert.trace;
                out.push_str(&format!("trace.s={}\ntrace.r={}\n", t.s, t.r));
                for (name, m) in trace_entries(t) {
                    push_matrix(&mut out, &format!("trace.{name}"), m);
                }
            }
        }
        Some(Outcome::Strict(w)) => push_matrix(&mut out, "witness", &w.vector),
        None => {}
    }
    out
}

pub fn emit_family(pairs: &[(Matrix, Matrix)], format: Format) -> String {
    match format {
        Format::Json => {
            let list: Vec<Value> = pairs
                .iter()
                .map(|(x, y)| json!({ "X": matrix_to_value(x), "Y": matrix_to_value(y) }))
                .collect();
            pretty(&json!({ "count": pairs.len(), "pairs": list }))
        }
        Format::Text => {
            let mut out = format!("count={}\n", pairs.len());
            for (i, (x, y)) in pairs.iter().enumerate() {
                push_matrix(&mut out, &format!("pair[{i}].X"), x);
                push_matrix(&mut out, &format!("pair[{i}].Y"), y);
            }
            out
        }
    }
}
