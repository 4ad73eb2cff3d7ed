//! Structured outcome of a model check, and its file representation.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::vector::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// Evidence attached to a failing check.
///
/// `direction` is the sampled unit vector for spectral checks, `e_i` for the
/// Einstein check (with `entry = (i, j)` naming the offending Ricci entry),
/// and an eigenvector of the offending Weyl block, in `Λ±` coordinates, for the
/// self-duality part of the exact Osserman check.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<S> {
    pub direction: Vector<S>,
    pub eigenvalue: S,
    pub residual: S,
    pub entry: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport<S> {
    pub check: String,
    pub verdict: Verdict,
    pub max_residual: S,
    pub tolerance: S,
    /// The verdict is `max_residual ≤ tolerance · scale`.
    pub scale: S,
    pub samples: usize,
    pub witness: Option<Witness<S>>,
    /// Residual within a factor of ten of the decision bound.
    pub marginal: bool,
}

impl<S: Scalar> CheckReport<S> {
    /// Builds a report from the reduced residual. `witness` is only consulted
    /// when the check fails.
    pub fn from_residual(
        check: impl Into<String>,
        max_residual: S,
        tolerance: S,
        scale: S,
        samples: usize,
        witness: impl FnOnce() -> Witness<S>,
    ) -> Self {
        let bound = tolerance * scale;
        let passed = max_residual <= bound;
        let ten = S::lit(10.0);
        let marginal = max_residual > bound / ten && max_residual <= bound * ten;
        CheckReport {
            check: check.into(),
            verdict: if passed { Verdict::Pass } else { Verdict::Fail },
            max_residual,
            tolerance,
            scale,
            samples,
            witness: if passed { None } else { Some(witness()) },
            marginal,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn to_record(&self) -> ReportRecord {
        ReportRecord {
            check: self.check.clone(),
            verdict: self.verdict,
            max_residual: self.max_residual.as_f64(),
            tolerance: self.tolerance.as_f64(),
            scale: self.scale.as_f64(),
            samples: self.samples,
            witness: self.witness.as_ref().map(|w| WitnessRecord {
                direction: w.direction.to_f64(),
                eigenvalue: w.eigenvalue.as_f64(),
                residual: w.residual.as_f64(),
                entry: w.entry.map(|(i, j)| [i + 1, j + 1]),
            }),
            marginal: self.marginal,
        }
    }
}

/// Report file schema. Entry indices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ReportRecord {
    pub check: String,
    pub verdict: Verdict,
    pub max_residual: f64,
    pub tolerance: f64,
    pub scale: f64,
    pub samples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    pub marginal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRecord {
    pub direction: Vec<f64>,
    pub eigenvalue: f64,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<[usize; 2]>,
}
