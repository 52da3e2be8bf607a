//! JSON documents: matrix input, Jordan specs for generation, and result output.

use ch_eigen::oracle::{JordanSpec, NullSpaceBasis};
use ch_eigen::{
    CharPoly, ColumnCaseProfile, DynMatrix, EigenStructure, Field, Rational, Scalar, SmallMatrix,
    SmallVector, TolerancePolicy, VerificationReport,
};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Validation {
        path: path.into(),
        message: message.into(),
    }
}

fn parse_json(text: &[u8]) -> Result<Value, DocumentError> {
    serde_json::from_slice(text).map_err(|e| DocumentError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Input matrix as read from JSON. Exact entries are strings (`"p"` or
/// `"p/q"`), float entries are numbers; one document uses one kind.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixDocument {
    pub name: Option<String>,
    pub rows: Vec<Vec<Scalar>>,
    pub matrix: DynMatrix,
}

impl MatrixDocument {
    pub fn from_matrix(matrix: DynMatrix, name: Option<String>) -> Self {
        let rows = match &matrix {
            DynMatrix::Exact(m) => rows_of(m, |x| Scalar::Exact(x.clone())),
            DynMatrix::Float(m) => rows_of(m, |x| Scalar::Float(*x)),
        };
        Self { name, rows, matrix }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert(
            "matrix".into(),
            Value::Array(
                self.rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(scalar_json).collect()))
                    .collect(),
            ),
        );
        if let Some(name) = &self.name {
            obj.insert("name".into(), Value::String(name.clone()));
        }
        Value::Object(obj)
    }

    /// Compact canonical text; parsing it back yields the same document.
    pub fn to_canonical_string(&self) -> String {
        self.to_json().to_string()
    }
}

fn rows_of<T: Field>(m: &SmallMatrix<T>, f: impl Fn(&T) -> Scalar) -> Vec<Vec<Scalar>> {
    m.rows().map(|r| r.iter().map(&f).collect()).collect()
}

fn scalar_json(s: &Scalar) -> Value {
    match s {
        Scalar::Exact(r) => Value::String(r.to_string()),
        Scalar::Float(x) => json!(x),
    }
}

pub fn parse_matrix(text: &[u8]) -> Result<MatrixDocument, DocumentError> {
    let value = parse_json(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| invalid("$", "expected an object with a \"matrix\" field"))?;
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(invalid("$.name", "expected a string")),
    };
    let rows_json = obj
        .get("matrix")
        .ok_or_else(|| invalid("$", "missing \"matrix\" field"))?
        .as_array()
        .ok_or_else(|| invalid("$.matrix", "expected an array of rows"))?;
    let dim = rows_json.len();
    if dim != 2 && dim != 3 {
        return Err(invalid(
            "$.matrix",
            format!("expected 2 or 3 rows, found {dim}"),
        ));
    }
    let mut rows = Vec::with_capacity(dim);
    let mut kind: Option<(&'static str, String)> = None;
    for (i, row) in rows_json.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| invalid(format!("$.matrix[{i}]"), "expected an array"))?;
        if row.len() != dim {
            return Err(invalid(
                format!("$.matrix[{i}]"),
                format!("expected {dim} entries, found {}", row.len()),
            ));
        }
        let mut parsed = Vec::with_capacity(dim);
        for (j, entry) in row.iter().enumerate() {
            let path = format!("$.matrix[{i}][{j}]");
            let (this_kind, scalar) = match entry {
                Value::String(s) => (
                    "string",
                    s.parse::<Scalar>()
                        .map_err(|e| invalid(&path, e.to_string()))?,
                ),
                Value::Number(n) => (
                    "number",
                    Scalar::Float(
                        n.as_f64()
                            .filter(|x| x.is_finite())
                            .ok_or_else(|| invalid(&path, "number out of range"))?,
                    ),
                ),
                _ => return Err(invalid(&path, "expected a number or a \"p/q\" string")),
            };
            match &kind {
                None => kind = Some((this_kind, path.clone())),
                Some((k, first)) if *k != this_kind => {
                    return Err(invalid(
                        &path,
                        format!("mixes a {this_kind} with the {k} at {first}"),
                    ))
                }
                _ => {}
            }
            parsed.push(scalar);
        }
        rows.push(parsed);
    }
    let matrix = DynMatrix::from_scalars(&rows).map_err(|e| invalid("$.matrix", e.to_string()))?;
    Ok(MatrixDocument { name, rows, matrix })
}

/// `{"dim": 3, "blocks": [{"eigenvalue": "1", "size": 2}, ...]}`; `dim` may be
/// omitted and then equals the total block size.
pub fn parse_jordan_spec(text: &[u8]) -> Result<JordanSpec, DocumentError> {
    let value = parse_json(text)?;
    let blocks_json = value
        .get("blocks")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("$.blocks", "expected an array of blocks"))?;
    let mut blocks = Vec::with_capacity(blocks_json.len());
    for (i, b) in blocks_json.iter().enumerate() {
        let path = format!("$.blocks[{i}]");
        let lam = match b.get("eigenvalue") {
            Some(Value::String(s)) => s
                .parse::<Scalar>()
                .map_err(|e| invalid(&path, e.to_string()))?,
            Some(Value::Number(n)) if n.is_i64() => Scalar::integer(n.as_i64().unwrap()),
            _ => {
                return Err(invalid(
                    &path,
                    "eigenvalue must be an integer or a \"p/q\" string",
                ))
            }
        };
        let size = b
            .get("size")
            .and_then(Value::as_u64)
            .ok_or_else(|| invalid(&path, "size must be a positive integer"))?;
        let Scalar::Exact(lam) = lam else {
            unreachable!()
        };
        blocks.push((lam, size as usize));
    }
    let total: usize = blocks.iter().map(|b| b.1).sum();
    let dim = match value.get("dim") {
        None => total,
        Some(d) => d
            .as_u64()
            .ok_or_else(|| invalid("$.dim", "expected an integer"))? as usize,
    };
    JordanSpec::new(dim, blocks).map_err(|e| invalid("$", e.to_string()))
}

pub fn vector_json<T: Field>(v: &SmallVector<T>) -> Value {
    Value::Array(v.entries().iter().map(field_json).collect())
}

pub fn field_json<T: Field>(x: &T) -> Value {
    if T::EXACT {
        Value::String(x.to_string())
    } else {
        json!(x.to_f64().unwrap_or(f64::NAN))
    }
}

pub fn poly_json<T: Field>(p: &CharPoly<T>) -> Value {
    json!({
        "coefficients": p.coeffs().iter().map(field_json).collect::<Vec<_>>(),
        "polynomial": p.to_string(),
    })
}

pub fn tolerance_json(tol: &TolerancePolicy) -> Value {
    json!({
        "cluster_eps": tol.cluster_eps,
        "relative": tol.relative,
        "zero_threshold": tol.zero_threshold,
    })
}

pub fn verification_json(report: &VerificationReport) -> Value {
    json!({
        "passed": report.passed(),
        "max_residual": report.max_residual(),
        "checks": report.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "residual": c.residual,
        })).collect::<Vec<_>>(),
    })
}

fn profile_json<T: Field>(p: &ColumnCaseProfile<T>) -> Value {
    json!({
        "case": p.case_id,
        "pivot_index": p.pivot_index,
        "pivot_column": vector_json(&p.pivot_column),
        "t": p.t.as_ref().map(field_json),
        "s": p.s.as_ref().map(field_json),
        "condition_value": field_json(&p.condition_value),
    })
}

/// Full result of an analysis, with fixed top-level field names.
pub fn result_json<T: Field>(
    input: &MatrixDocument,
    es: &EigenStructure<T>,
    report: &VerificationReport,
    tol: &TolerancePolicy,
) -> Value {
    let spectrum: Vec<Value> = es
        .eigenspaces
        .iter()
        .map(|r| {
            json!({
                "eigenvalue": field_json(&r.eigenvalue),
                "algebraic": r.algebraic,
                "geometric": r.geometric,
            })
        })
        .collect();
    let eigenspaces: Vec<Value> = es
        .eigenspaces
        .iter()
        .map(|r| {
            json!({
                "eigenvalue": field_json(&r.eigenvalue),
                "algebraic": r.algebraic,
                "geometric": r.geometric,
                "basis": r.basis.iter().map(vector_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let chains: Vec<Value> = es
        .chains()
        .map(|c| {
            json!({
                "eigenvalue": field_json(&c.eigenvalue),
                "vectors": c.vectors.iter().map(vector_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "input": input.to_json(),
        "mode": T::NAME,
        "tolerance": tolerance_json(tol),
        "class": es.class.to_string(),
        "spectrum": spectrum,
        "eigenspaces": eigenspaces,
        "chains": chains,
        "profile": es.profile.as_ref().map(profile_json),
        "trace": es.trace.entries(),
        "verification": verification_json(report),
    })
}

pub fn null_space_json(ns: &NullSpaceBasis) -> Value {
    Value::Array(ns.vectors.iter().map(vector_json::<Rational>).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exact_matrix() {
        let doc = parse_matrix(br#"{"matrix": [["4","1"],["2","5"]]}"#).unwrap();
        let DynMatrix::Exact(m) = &doc.matrix else {
            panic!("expected exact")
        };
        assert_eq!(
            m,
            &ch_eigen::ExactMatrix::from_i64(&[&[4, 1], &[2, 5]]).unwrap()
        );
    }

    #[test]
    fn parses_float_matrix() {
        let doc = parse_matrix(br#"{"matrix": [[1.0, 0.0],[0.0, 1.0]], "name": "id"}"#).unwrap();
        assert_eq!(
            doc.matrix,
            DynMatrix::Float(ch_eigen::FloatMatrix::identity(2))
        );
        assert_eq!(doc.name.as_deref(), Some("id"));
    }

    #[test]
    fn canonicalizes_fractions() {
        let doc = parse_matrix(br#"{"matrix": [["3","-10/4"],["0","1"]]}"#).unwrap();
        assert_eq!(
            doc.to_canonical_string(),
            r#"{"matrix":[["3","-5/2"],["0","1"]]}"#
        );
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = parse_matrix(br#"{"matrix": [["1","2"],["3"]]}"#).unwrap_err();
        assert!(matches!(err, DocumentError::Validation { ref path, .. } if path == "$.matrix[1]"));
    }

    #[test]
    fn rejects_mixed_modes() {
        let err = parse_matrix(br#"{"matrix": [["1", 2.0],["3","4"]]}"#).unwrap_err();
        assert!(err.to_string().contains("$.matrix[0][1]"), "{err}");
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_matrix(b"{\"matrix\": [[1, 2],\n [3, 4]").unwrap_err();
        match err {
            DocumentError::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(parse_matrix(br#"{"matrix": [["1/0","2"],["3","4"]]}"#).is_err());
        assert!(parse_matrix(br#"{"matrix": [[true, 2],[3, 4]]}"#).is_err());
        assert!(parse_matrix(br#"{"matrix": [["1"]]}"#).is_err());
        assert!(parse_matrix(br#"[1, 2]"#).is_err());
    }

    #[test]
    fn jordan_spec_document() {
        let spec = parse_jordan_spec(br#"{"blocks": [{"eigenvalue": "3", "size": 2}]}"#).unwrap();
        assert_eq!(spec.dim(), 2);
        let spec = parse_jordan_spec(
            br#"{"dim": 3, "blocks": [{"eigenvalue": 1, "size": 1}, {"eigenvalue": "-1/2", "size": 2}]}"#,
        )
        .unwrap();
        assert_eq!(spec.blocks().len(), 2);
        assert!(
            parse_jordan_spec(br#"{"dim": 3, "blocks": [{"eigenvalue": 1, "size": 1}]}"#).is_err()
        );
    }
}
