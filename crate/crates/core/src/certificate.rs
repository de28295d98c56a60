//! Certificate files: JSON with exact scalar encodings.
//!
//! Rationals are strings `"p/q"` (or `"p"`), number-field elements are
//! objects `{minpoly, interval, coeffs}` with the minimal polynomial as an
//! integer array (constant term first), the isolating interval as two
//! rational strings and the power-basis coefficients as rational strings.
//! Floats are plain JSON numbers. Object keys are emitted in sorted order, so
//! emitting a parsed certificate reproduces the input byte for byte.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::immersion::{verify_full, GramOperator, MatrixData, VerificationReport};
use crate::linalg::{IntMatrix, SymMatrix};
use crate::scalar::rational::{format_rational, parse_rational};
use crate::scalar::{AlgebraicScalar, NumberField, Rational, Scalar};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum CertificateBody {
    Homogeneous(MatrixData),
    General {
        q: SymMatrix<Scalar>,
        y: IntMatrix,
        gram: GramOperator,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub body: CertificateBody,
    pub metadata: BTreeMap<String, Value>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn encode_scalar(s: &Scalar) -> Result<Value> {
    Ok(match s {
        Scalar::Rational(r) => Value::String(format_rational(r)),
        Scalar::Float(x) => {
            if !x.is_finite() {
                return Err(parse_err(format!("non-finite float {x}")));
            }
            json!(x)
        }
        Scalar::Algebraic(a) => {
            let f = a.field();
            let minpoly = f
                .minpoly()
                .iter()
                .map(|c| {
                    c.to_i64()
                        .map(Value::from)
                        .ok_or_else(|| parse_err("minimal polynomial coefficient exceeds 64 bits"))
                })
                .collect::<Result<Vec<_>>>()?;
            json!({
                "minpoly": minpoly,
                "interval": [format_rational(&f.interval().lo), format_rational(&f.interval().hi)],
                "coeffs": a.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
            })
        }
    })
}

/// Decoder that shares one field object per (minpoly, interval).
#[derive(Default)]
pub struct ScalarDecoder {
    fields: Vec<(Vec<BigInt>, Rational, Rational, Arc<NumberField>)>,
}

impl ScalarDecoder {
    pub fn decode(&mut self, v: &Value) -> Result<Scalar> {
        match v {
            Value::String(s) => Ok(Scalar::Rational(parse_rational(s)?)),
            Value::Number(n) => n
                .as_f64()
                .map(Scalar::Float)
                .ok_or_else(|| parse_err(format!("bad number {n}"))),
            Value::Object(o) => {
                let minpoly = o
                    .get("minpoly")
                    .and_then(Value::as_array)
                    .ok_or_else(|| parse_err("algebraic scalar without `minpoly` array"))?
                    .iter()
                    .map(|c| {
                        c.as_i64()
                            .map(BigInt::from)
                            .ok_or_else(|| parse_err("minpoly entries must be integers"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let iv = o
                    .get("interval")
                    .and_then(Value::as_array)
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| parse_err("algebraic scalar needs a two-element `interval`"))?;
                let lo = parse_rational(
                    iv[0]
                        .as_str()
                        .ok_or_else(|| parse_err("interval ends must be strings"))?,
                )?;
                let hi = parse_rational(
                    iv[1]
                        .as_str()
                        .ok_or_else(|| parse_err("interval ends must be strings"))?,
                )?;
                let coeffs = o
                    .get("coeffs")
                    .and_then(Value::as_array)
                    .ok_or_else(|| parse_err("algebraic scalar without `coeffs` array"))?
                    .iter()
                    .map(|c| {
                        c.as_str()
                            .ok_or_else(|| parse_err("coeffs must be strings"))
                            .and_then(parse_rational)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let field = match self
                    .fields
                    .iter()
                    .find(|(m, l, h, _)| *m == minpoly && *l == lo && *h == hi)
                {
                    Some((_, _, _, f)) => f.clone(),
                    None => {
                        let f = NumberField::new(minpoly.clone(), lo.clone(), hi.clone())?;
                        self.fields.push((minpoly, lo, hi, f.clone()));
                        f
                    }
                };
                Ok(Scalar::Algebraic(AlgebraicScalar::new(field, coeffs)?))
            }
            other => Err(parse_err(format!("cannot read a scalar from {other}"))),
        }
    }
}

fn encode_matrix(q: &SymMatrix<Scalar>) -> Result<Value> {
    let n = q.dim();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| encode_scalar(q.get(i, j)))
                .collect::<Result<Vec<_>>>()
                .map(Value::from)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Value::from(rows))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    o.get(key)
        .ok_or_else(|| parse_err(format!("missing `{key}`")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("`{what}` must be a nonnegative integer")))
}

impl Certificate {
    pub fn homogeneous(data: MatrixData) -> Self {
        Certificate {
            body: CertificateBody::Homogeneous(data),
            metadata: BTreeMap::new(),
        }
    }

    pub fn general(q: SymMatrix<Scalar>, y: IntMatrix, gram: GramOperator) -> Self {
        Certificate {
            body: CertificateBody::General { q, y, gram },
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn q(&self) -> &SymMatrix<Scalar> {
        match &self.body {
            CertificateBody::Homogeneous(d) => &d.q,
            CertificateBody::General { q, .. } => q,
        }
    }

    pub fn y(&self) -> &IntMatrix {
        match &self.body {
            CertificateBody::Homogeneous(d) => &d.y,
            CertificateBody::General { y, .. } => y,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.body {
            CertificateBody::Homogeneous(_) => "homogeneous",
            CertificateBody::General { .. } => "general",
        }
    }

    pub fn verify(&self, tol: f64) -> Result<VerificationReport> {
        match &self.body {
            CertificateBody::Homogeneous(d) => Ok(d.verify(tol)),
            CertificateBody::General { q, y, gram } => verify_full(gram, q, y, tol),
        }
    }

    pub fn to_value(&self) -> Result<Value> {
        let y = self.y();
        let mut o = Map::new();
        o.insert("format_version".into(), json!(FORMAT_VERSION));
        o.insert("kind".into(), json!(self.kind()));
        o.insert("n".into(), json!(y.nrows()));
        o.insert("N".into(), json!(y.ncols()));
        o.insert("Q".into(), encode_matrix(self.q())?);
        o.insert("Y".into(), json!(y.columns()));
        match &self.body {
            CertificateBody::Homogeneous(d) => {
                let w = d
                    .weights
                    .iter()
                    .map(encode_scalar)
                    .collect::<Result<Vec<_>>>()?;
                o.insert("weights".into(), Value::from(w));
            }
            CertificateBody::General { gram, .. } => {
                let mut blocks = Vec::new();
                for r in 0..gram.classes() {
                    for s in r..gram.classes() {
                        let b = gram.block(r, s);
                        if b.iter().flatten().any(|&v| v != 0.0) {
                            blocks.push(json!({"r": r, "s": s, "block": b}));
                        }
                    }
                }
                o.insert("blocks".into(), Value::from(blocks));
            }
        }
        o.insert("metadata".into(), json!(self.metadata));
        Ok(Value::Object(o))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(&self.to_value()?)
            .map_err(|e| parse_err(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let o = v
            .as_object()
            .ok_or_else(|| parse_err("certificate must be a JSON object"))?;
        let version = field(o, "format_version")?.as_u64();
        if version != Some(FORMAT_VERSION) {
            return Err(parse_err(format!(
                "unsupported format_version {:?}",
                field(o, "format_version")?
            )));
        }
        let n = as_usize(field(o, "n")?, "n")?;
        let big_n = as_usize(field(o, "N")?, "N")?;
        let mut dec = ScalarDecoder::default();

        let rows = field(o, "Q")?
            .as_array()
            .ok_or_else(|| parse_err("`Q` must be an array of rows"))?;
        if rows.len() != n {
            return Err(parse_err(format!(
                "`Q` has {} rows, expected {n}",
                rows.len()
            )));
        }
        let mut qrows = Vec::with_capacity(n);
        for row in rows {
            let row = row
                .as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| parse_err(format!("`Q` rows must have {n} entries")))?;
            qrows.push(
                row.iter()
                    .map(|x| dec.decode(x))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        for i in 0..n {
            for j in 0..i {
                if qrows[i][j] != qrows[j][i] {
                    return Err(parse_err(format!("`Q` is not symmetric at ({i}, {j})")));
                }
            }
        }
        let q = SymMatrix::from_rows(&qrows)?;

        let cols = field(o, "Y")?
            .as_array()
            .ok_or_else(|| parse_err("`Y` must be a list of columns"))?;
        let cols = cols
            .iter()
            .map(|c| {
                c.as_array()
                    .filter(|c| c.len() == n)
                    .ok_or_else(|| parse_err(format!("columns of `Y` must have {n} integers")))?
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .ok_or_else(|| parse_err("`Y` entries must be integers"))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if cols.len() != big_n {
            return Err(parse_err(format!(
                "`Y` has {} columns, expected N = {big_n}",
                cols.len()
            )));
        }
        let y = IntMatrix::from_columns(n, cols)?;

        let metadata = match o.get("metadata") {
            None => BTreeMap::new(),
            Some(Value::Object(m)) => m.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            Some(_) => return Err(parse_err("`metadata` must be an object")),
        };

        let body = match field(o, "kind")?.as_str() {
            Some("homogeneous") => {
                let w = field(o, "weights")?
                    .as_array()
                    .ok_or_else(|| parse_err("`weights` must be an array"))?;
                if w.len() != big_n {
                    return Err(parse_err(format!("{} weights for N = {big_n}", w.len())));
                }
                let weights = w
                    .iter()
                    .map(|x| dec.decode(x))
                    .collect::<Result<Vec<_>>>()?;
                CertificateBody::Homogeneous(MatrixData::new(q, y, weights)?)
            }
            Some("general") => {
                let list = field(o, "blocks")?
                    .as_array()
                    .ok_or_else(|| parse_err("`blocks` must be an array"))?;
                let mut gram = GramOperator::zeros(big_n);
                for b in list {
                    let r = as_usize(b.get("r").unwrap_or(&Value::Null), "r")?;
                    let s = as_usize(b.get("s").unwrap_or(&Value::Null), "s")?;
                    if r > s || s >= big_n {
                        return Err(parse_err(format!(
                            "block index ({r}, {s}) must satisfy r ≤ s < N"
                        )));
                    }
                    let m: [[f64; 2]; 2] =
                        serde_json::from_value(b.get("block").cloned().unwrap_or(Value::Null))
                            .map_err(|e| parse_err(format!("block ({r}, {s}): {e}")))?;
                    gram.set_block(r, s, m);
                }
                CertificateBody::General { q, y, gram }
            }
            _ => return Err(parse_err("`kind` must be \"homogeneous\" or \"general\"")),
        };
        Ok(Certificate { body, metadata })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{catalog, catalog_ids, pythagorean_family, PythagoreanParams};

    #[test]
    fn catalog_round_trip_is_byte_identical() {
        for (id, _) in catalog_ids() {
            let cert =
                Certificate::homogeneous(catalog(id).unwrap()).with_metadata("catalog_id", id);
            let text = cert.to_json().unwrap();
            let back = Certificate::from_json(&text).unwrap();
            assert_eq!(back.to_json().unwrap(), text, "{id}");
            assert!(back.verify(1e-10).unwrap().is_verified(), "{id}");
        }
    }

    #[test]
    fn general_round_trip() {
        let mut p = PythagoreanParams::centroid((3, 4, 5)).unwrap();
        p.r1 = 0.01;
        let (g, q, y) = pythagorean_family(&p).unwrap();
        let cert = Certificate::general(q, y, g.clone());
        let text = cert.to_json().unwrap();
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back.to_json().unwrap(), text);
        match back.body {
            CertificateBody::General { gram, .. } => assert_eq!(gram, g),
            _ => panic!(),
        }
    }

    #[test]
    fn malformed_inputs() {
        let text = Certificate::homogeneous(catalog("clifford-3").unwrap())
            .to_json()
            .unwrap();
        assert!(matches!(
            Certificate::from_json(&text[..text.len() / 2]),
            Err(Error::Parse(_))
        ));
        let bad = text.replace("\"format_version\": 1", "\"format_version\": 2");
        assert!(matches!(Certificate::from_json(&bad), Err(Error::Parse(_))));
        let bad = text.replace("\"homogeneous\"", "\"other\"");
        assert!(matches!(Certificate::from_json(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn scalar_encodings() {
        let v = encode_scalar(&Scalar::from(crate::scalar::rational::rat(-3, 4))).unwrap();
        assert_eq!(v, json!("-3/4"));
        let f = NumberField::quadratic(&BigInt::from(2)).unwrap();
        let s = Scalar::Algebraic(f.generator());
        let v = encode_scalar(&s).unwrap();
        assert_eq!(
            v,
            json!({"minpoly": [-2, 0, 1], "interval": ["1", "2"], "coeffs": ["0", "1"]})
        );
        assert_eq!(ScalarDecoder::default().decode(&v).unwrap(), s);
    }
}
