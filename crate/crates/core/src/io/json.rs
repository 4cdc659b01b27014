use nalgebra::DMatrix;
use ndarray::{Array2, Array4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ops::{parse_term, TermOperator, Variant};
use crate::tensors::{BasisRotation, InteractionTensor};

#[derive(Serialize, Deserialize)]
struct TermEntry {
    term: String,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct OperatorDocument {
    variant: Variant,
    terms: Vec<TermEntry>,
}

/// Operator JSON: `{"variant": "fermion", "terms": [{"term", "re", "im"}]}`.
pub fn operator_to_json(op: &TermOperator) -> Result<String> {
    let doc = OperatorDocument {
        variant: op.variant(),
        terms: op
            .terms()
            .map(|(t, c)| TermEntry {
                term: t.to_string(),
                re: c.re,
                im: c.im,
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Guesses the variant of a bare term list from its symbols. Ladder terms
/// without further context are read as fermionic.
fn infer_variant(terms: &[TermEntry]) -> Variant {
    let has = |f: &dyn Fn(char) -> bool| terms.iter().any(|t| t.term.chars().any(f));
    if has(&|c| matches!(c, 'X' | 'Y' | 'Z')) {
        Variant::Qubit
    } else if has(&|c| matches!(c, 'q' | 'p')) {
        Variant::Quad
    } else {
        Variant::Fermion
    }
}

/// Reads operator JSON, either the object form or a bare term list.
pub fn operator_from_json(text: &str) -> Result<TermOperator> {
    let value: Value = serde_json::from_str(text)?;
    let (variant, terms) = match value {
        Value::Array(_) => {
            let terms: Vec<TermEntry> =
                serde_json::from_value(value).map_err(|e| Error::schema("terms", e.to_string()))?;
            (infer_variant(&terms), terms)
        }
        Value::Object(_) => {
            let doc: OperatorDocument = serde_json::from_value(value)
                .map_err(|e| Error::schema("operator", e.to_string()))?;
            (doc.variant, doc.terms)
        }
        _ => {
            return Err(Error::schema(
                "operator",
                "expected an object or a list of terms",
            ))
        }
    };
    let mut op = TermOperator::zero(variant);
    for (k, entry) in terms.iter().enumerate() {
        let term = parse_term(variant, &entry.term)
            .map_err(|e| Error::schema(format!("terms[{k}].term"), e.to_string()))?;
        op += TermOperator::from_canonical(variant, term, Complex64::new(entry.re, entry.im));
    }
    Ok(op)
}

/// A complex number in JSON: `[re, im]` or a bare real.
#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonComplex {
    Pair([f64; 2]),
    Real(f64),
}

impl From<JsonComplex> for Complex64 {
    fn from(c: JsonComplex) -> Self {
        match c {
            JsonComplex::Pair([re, im]) => Complex64::new(re, im),
            JsonComplex::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

impl From<Complex64> for JsonComplex {
    fn from(c: Complex64) -> Self {
        JsonComplex::Pair([c.re, c.im])
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TensorDocument {
    n: usize,
    constant: JsonComplex,
    one_body: Vec<Vec<JsonComplex>>,
    two_body: Vec<Vec<Vec<Vec<JsonComplex>>>>,
}

impl TensorDocument {
    pub(crate) fn from_tensor(t: &InteractionTensor) -> Self {
        let n = t.n_modes();
        TensorDocument {
            n,
            constant: t.constant.into(),
            one_body: (0..n)
                .map(|p| (0..n).map(|q| t.one_body[[p, q]].into()).collect())
                .collect(),
            two_body: (0..n)
                .map(|p| {
                    (0..n)
                        .map(|q| {
                            (0..n)
                                .map(|r| (0..n).map(|s| t.two_body[[p, q, r, s]].into()).collect())
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Builds the tensor, reporting shape errors under `prefix`.
    pub(crate) fn into_tensor(self, prefix: &str) -> Result<InteractionTensor> {
        let n = self.n;
        let path = |field: &str| {
            if prefix.is_empty() {
                field.to_string()
            } else {
                format!("{prefix}.{field}")
            }
        };
        let bad = |field: &str| {
            Error::schema(
                path(field),
                format!("expected a {n}-wide nested array in every axis"),
            )
        };
        if self.one_body.len() != n || self.one_body.iter().any(|r| r.len() != n) {
            return Err(bad("one_body"));
        }
        let two_ok = self.two_body.len() == n
            && self.two_body.iter().all(|a| {
                a.len() == n
                    && a.iter()
                        .all(|b| b.len() == n && b.iter().all(|c| c.len() == n))
            });
        if !two_ok {
            return Err(bad("two_body"));
        }
        let one = Array2::from_shape_fn((n, n), |(p, q)| self.one_body[p][q].into());
        let two = Array4::from_shape_fn((n, n, n, n), |(p, q, r, s)| {
            self.two_body[p][q][r][s].into()
        });
        InteractionTensor::new(self.constant.into(), one, two)
    }
}

/// Tensor JSON: `{"n", "constant": [re, im], "one_body", "two_body"}` with
/// every entry a `[re, im]` pair.
pub fn tensor_to_json(t: &InteractionTensor) -> Result<String> {
    Ok(serde_json::to_string(&TensorDocument::from_tensor(t))?)
}

pub fn tensor_from_json(text: &str) -> Result<InteractionTensor> {
    let doc: TensorDocument =
        serde_json::from_str(text).map_err(|e| Error::schema("tensor", e.to_string()))?;
    doc.into_tensor("")
}

/// Matrix JSON: list of rows whose entries are `[re, im]` or reals.
pub fn matrix_from_json(text: &str) -> Result<DMatrix<Complex64>> {
    let rows: Vec<Vec<JsonComplex>> =
        serde_json::from_str(text).map_err(|e| Error::schema("matrix", e.to_string()))?;
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::schema("matrix", "rows have different lengths"));
    }
    Ok(DMatrix::from_fn(n_rows, n_cols, |r, c| rows[r][c].into()))
}

/// Unitary basis rotation from matrix JSON.
pub fn rotation_from_json(text: &str) -> Result<BasisRotation> {
    let m = matrix_from_json(text)?;
    BasisRotation::new(Array2::from_shape_fn((m.nrows(), m.ncols()), |(r, c)| {
        m[(r, c)]
    }))
}

pub fn matrix_to_json(m: &DMatrix<Complex64>) -> Result<String> {
    let rows: Vec<Vec<JsonComplex>> = (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)].into()).collect())
        .collect();
    Ok(serde_json::to_string(&rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_round_trip() {
        let op = TermOperator::fermion(&[(3, true), (1, false)], Complex64::new(0.5, -0.25))
            + TermOperator::identity(Variant::Fermion).scale(2.0);
        let back = operator_from_json(&operator_to_json(&op).unwrap()).unwrap();
        assert_eq!(back, op);
    }

    #[test]
    fn bare_list_infers_variant() {
        let op = operator_from_json(
            r#"[{"term": "", "re": 0.5, "im": 0}, {"term": "Z0", "re": -0.5, "im": 0}]"#,
        )
        .unwrap();
        assert_eq!(op.variant(), Variant::Qubit);
        assert_eq!(op.len(), 2);
        let bad = operator_from_json(r#"[{"term": "1^ x", "re": 1, "im": 0}]"#);
        assert!(matches!(bad, Err(Error::Schema { path, .. }) if path == "terms[0].term"));
    }

    #[test]
    fn tensor_round_trip_and_shape_errors() {
        let mut t = InteractionTensor::zeros(2);
        t.constant = Complex64::new(0.1, 0.0);
        t.one_body[[0, 1]] = Complex64::new(0.2, 0.3);
        t.two_body[[0, 1, 1, 0]] = Complex64::new(-0.4, 0.0);
        let text = tensor_to_json(&t).unwrap();
        assert_eq!(tensor_from_json(&text).unwrap(), t);
        let broken = text.replacen("[[[[", "[[[[[0,0],", 1);
        assert!(
            matches!(tensor_from_json(&broken), Err(Error::Schema { path, .. }) if path == "two_body")
        );
    }

    #[test]
    fn matrix_accepts_reals() {
        let m = matrix_from_json("[[0, 1], [1, 0]]").unwrap();
        assert_eq!(m[(0, 1)], Complex64::new(1.0, 0.0));
        assert!(matrix_from_json("[[0, 1], [1]]").is_err());
        let back = matrix_from_json(&matrix_to_json(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
