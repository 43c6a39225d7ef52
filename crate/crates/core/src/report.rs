//! Structured verification reports.

use serde::Serialize;

use crate::algebra::ParamValues;

/// Outcome for one scalar equation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub id: String,
    pub symbolic_zero: bool,
    /// `max |residual| / (1 + max |part|)` over the samples, if sampled.
    pub numeric_max_rel: Option<f64>,
    pub samples: usize,
    /// Canonical text of a nonzero residual, for diagnosis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl ResidualEntry {
    pub fn symbolic(id: impl Into<String>, residual: &crate::algebra::SymField) -> Self {
        ResidualEntry {
            id: id.into(),
            symbolic_zero: residual.is_zero(),
            numeric_max_rel: None,
            samples: 0,
            residual: (!residual.is_zero()).then(|| residual.to_string()),
        }
    }

    /// An equality check reported in the same shape as a residual.
    pub fn check(id: impl Into<String>, holds: bool, detail: Option<String>) -> Self {
        ResidualEntry {
            id: id.into(),
            symbolic_zero: holds,
            numeric_max_rel: None,
            samples: 0,
            residual: detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub family: String,
    pub entries: Vec<ResidualEntry>,
    pub params: Option<ParamValues>,
    pub seed: Option<u64>,
}

impl ResidualReport {
    pub fn new(family: impl Into<String>) -> Self {
        ResidualReport {
            family: family.into(),
            entries: Vec::new(),
            params: None,
            seed: None,
        }
    }

    pub fn all_symbolic_zero(&self) -> bool {
        self.entries.iter().all(|e| e.symbolic_zero)
    }

    /// Largest sampled relative residual, if any equation was sampled.
    pub fn max_rel(&self) -> Option<f64> {
        self.entries
            .iter()
            .filter_map(|e| e.numeric_max_rel)
            .fold(None, |m, v| Some(m.map_or(v, |m: f64| m.max(v))))
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// Pretty JSON with a trailing newline; output is byte-stable.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
