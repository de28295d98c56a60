//! Verification reports and the verdict rule.

use serde::{Serialize, Serializer};

/// Float residuals above `tol` but at most this multiple of it are reported
/// as indeterminate rather than falsified.
pub const INDETERMINATE_BAND: f64 = 1e3;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Falsified(String),
    Indeterminate(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

fn decimal<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn decimal_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Residual of one equation at one η.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EtaResidual {
    pub eta: Vec<i64>,
    #[serde(serialize_with = "decimal")]
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    #[serde(serialize_with = "decimal")]
    pub tolerance: f64,
    /// True when every residual was evaluated in exact arithmetic.
    pub exact: bool,
    /// max_j |Y_jᵗQY_j − 1|
    #[serde(serialize_with = "decimal")]
    pub ellipsoid: f64,
    /// max entry of Σ c_j² Y_jY_jᵗ − Q⁻¹/n
    #[serde(serialize_with = "decimal")]
    pub flat: f64,
    /// |Σ c_j² − 1|
    #[serde(serialize_with = "decimal")]
    pub weight_sum: f64,
    /// Non-scalar part of the diagonal blocks (general operators only).
    #[serde(serialize_with = "decimal_opt")]
    pub diagonal_blocks: Option<f64>,
    pub unit_cos: Vec<EtaResidual>,
    pub unit_sin: Vec<EtaResidual>,
    pub isometry_cos: Vec<EtaResidual>,
    pub isometry_sin: Vec<EtaResidual>,
    /// Smallest weight (homogeneous) or smallest eigenvalue of AAᵗ.
    #[serde(serialize_with = "decimal")]
    pub psd_margin: f64,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.verdict.is_verified()
    }

    /// Largest residual over all equations.
    pub fn max_residual(&self) -> f64 {
        let eta = self
            .unit_cos
            .iter()
            .chain(&self.unit_sin)
            .chain(&self.isometry_cos)
            .chain(&self.isometry_sin)
            .map(|e| e.residual);
        [
            self.ellipsoid,
            self.flat,
            self.weight_sum,
            self.diagonal_blocks.unwrap_or(0.0),
        ]
        .into_iter()
        .chain(eta)
        .fold(0.0, f64::max)
    }
}

/// Accumulates checks in order and derives the verdict: the first exact
/// nonzero residual or float residual beyond the band falsifies; otherwise
/// a float residual above `tol` makes the result indeterminate.
pub(crate) struct Judge {
    tol: f64,
    falsified: Option<String>,
    indeterminate: Option<String>,
}

impl Judge {
    pub fn new(tol: f64) -> Self {
        Judge {
            tol,
            falsified: None,
            indeterminate: None,
        }
    }

    pub fn exact(&mut self, name: &str, zero: bool, value: f64) {
        if !zero && self.falsified.is_none() {
            self.falsified = Some(format!("{name} fails (exact residual {value:e})"));
        }
    }

    pub fn float(&mut self, name: &str, value: f64) {
        if value.is_nan() || value > INDETERMINATE_BAND * self.tol {
            if self.falsified.is_none() {
                self.falsified = Some(format!("{name} fails (residual {value:e})"));
            }
        } else if value > self.tol && self.indeterminate.is_none() {
            self.indeterminate = Some(format!(
                "{name} residual {value:e} exceeds tolerance {:e}",
                self.tol
            ));
        }
    }

    pub fn fail(&mut self, reason: String) {
        if self.falsified.is_none() {
            self.falsified = Some(reason);
        }
    }

    /// `margin` must be ≥ −tol; strictly positive when exact.
    pub fn margin(&mut self, name: &str, margin: f64, exact_sign: Option<i8>) {
        match exact_sign {
            Some(s) => {
                if s <= 0 {
                    self.fail(format!("{name} fails (nonpositive value)"));
                }
            }
            None => self.float(name, (-margin).max(0.0)),
        }
    }

    pub fn verdict(self) -> Verdict {
        if let Some(r) = self.falsified {
            Verdict::Falsified(r)
        } else if let Some(r) = self.indeterminate {
            Verdict::Indeterminate(r)
        } else {
            Verdict::Verified
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bands() {
        let mut j = Judge::new(1e-10);
        j.float("a", 1e-11);
        assert_eq!(j.verdict(), Verdict::Verified);
        let mut j = Judge::new(1e-10);
        j.float("a", 1e-9);
        assert!(matches!(j.verdict(), Verdict::Indeterminate(_)));
        let mut j = Judge::new(1e-10);
        j.float("a", 1e-9);
        j.float("b", 1e-3);
        match j.verdict() {
            Verdict::Falsified(r) => assert!(r.starts_with('b')),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn serializes_residuals_as_strings() {
        let r = EtaResidual {
            eta: vec![1, 0],
            residual: 0.25,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"eta":[1,0],"residual":"0.25"}"#
        );
        let v = serde_json::to_string(&Verdict::Falsified("flat".into())).unwrap();
        assert_eq!(v, r#"{"status":"falsified","reason":"flat"}"#);
    }
}
