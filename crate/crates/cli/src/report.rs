//! Machine-readable check results.

use std::collections::BTreeMap;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A named constant disagrees with its claimed value while the engine's
    /// own derivation is internally consistent; reported, exit code 0.
    Discrepancy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    SymbolicExact,
    Numeric,
}

/// Residual of one check; exact residuals are rationals serialized as
/// `p/q` strings to preserve exactness, numeric ones are doubles.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "type", content = "value")]
pub enum Residual {
    Exact(String),
    Float(f64),
}

impl Residual {
    pub fn exact_zero() -> Self {
        Residual::Exact("0".into())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub kind: Kind,
    pub residual: Residual,
    /// Normalization constants discovered during the run (`c_norm`, the
    /// difference constant, derived couplings), as `p/q` strings.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, String>,
    /// Parameters the check ran with.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    /// Named deviations or sub-check notes.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl CheckResult {
    pub fn symbolic(id: &str) -> Self {
        Self {
            id: id.into(),
            status: Status::Pass,
            kind: Kind::SymbolicExact,
            residual: Residual::exact_zero(),
            constants: BTreeMap::new(),
            params: BTreeMap::new(),
            details: Vec::new(),
        }
    }

    pub fn numeric(id: &str, residual: f64, tolerance: f64) -> Self {
        let status = if residual.is_finite() && residual <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        let mut params = BTreeMap::new();
        params.insert("tolerance".into(), format!("{tolerance:e}"));
        Self {
            id: id.into(),
            status,
            kind: Kind::Numeric,
            residual: Residual::Float(residual),
            constants: BTreeMap::new(),
            params,
            details: Vec::new(),
        }
    }

    pub fn fail_symbolic(id: &str, residual: String, details: Vec<String>) -> Self {
        Self {
            id: id.into(),
            status: Status::Fail,
            kind: Kind::SymbolicExact,
            residual: Residual::Exact(residual),
            constants: BTreeMap::new(),
            params: BTreeMap::new(),
            details,
        }
    }

    pub fn with_constant(mut self, name: &str, value: impl ToString) -> Self {
        self.constants.insert(name.into(), value.to_string());
        self
    }

    pub fn with_param(mut self, name: &str, value: impl ToString) -> Self {
        self.params.insert(name.into(), value.to_string());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.details.push(detail.into());
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(checks: Vec<CheckResult>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            checks,
        }
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Deterministic human rendering: one line per check plus details.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Discrepancy => "discrepancy",
            };
            let kind = match c.kind {
                Kind::SymbolicExact => "symbolic-exact",
                Kind::Numeric => "numeric",
            };
            let residual = match &c.residual {
                Residual::Exact(s) => s.clone(),
                Residual::Float(v) => format!("{v:.3e}"),
            };
            out.push_str(&format!(
                "{:<22} {:<11} {:<14} residual {}\n",
                c.id, status, kind, residual
            ));
            for (k, v) in &c.constants {
                out.push_str(&format!("    {k} = {v}\n"));
            }
            for d in &c.details {
                out.push_str(&format!("    - {d}\n"));
            }
        }
        out
    }
}
