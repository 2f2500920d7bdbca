//! Machine-readable check outcomes and run summaries.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ComplexScalar;

/// Where a reference value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Paper,
    DerivedOracle,
    Trivial,
}

/// Which error a check is judged on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Absolute,
    Relative,
    /// Passes when either error is within tolerance.
    Either,
}

const REL_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub inputs: BTreeMap<String, String>,
    #[serde(with = "crate::serde_complex")]
    pub computed: ComplexScalar,
    #[serde(with = "crate::serde_complex")]
    pub reference: ComplexScalar,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub mode: CheckMode,
    pub pass: bool,
    pub provenance: Provenance,
}

impl CheckReport {
    pub fn new(
        name: impl Into<String>,
        computed: ComplexScalar,
        reference: ComplexScalar,
        tol: f64,
        mode: CheckMode,
        provenance: Provenance,
    ) -> Self {
        let abs_err = (computed - reference).norm();
        let rel_err = abs_err / reference.norm().max(REL_FLOOR);
        let pass = match mode {
            CheckMode::Absolute => abs_err <= tol,
            CheckMode::Relative => rel_err <= tol,
            CheckMode::Either => abs_err <= tol || rel_err <= tol,
        };
        Self {
            name: name.into(),
            inputs: BTreeMap::new(),
            computed,
            reference,
            abs_err,
            rel_err,
            tol,
            mode,
            pass,
            provenance,
        }
    }

    /// Real-valued convenience constructor.
    pub fn real(name: impl Into<String>, computed: f64, reference: f64, tol: f64, mode: CheckMode, provenance: Provenance) -> Self {
        Self::new(
            name,
            ComplexScalar::new(computed, 0.0),
            ComplexScalar::new(reference, 0.0),
            tol,
            mode,
            provenance,
        )
    }

    /// A yes/no property; `computed` is 1 when it holds and the reference is 1.
    pub fn holds(name: impl Into<String>, ok: bool, provenance: Provenance) -> Self {
        Self::real(name, if ok { 1.0 } else { 0.0 }, 1.0, 0.0, CheckMode::Absolute, provenance)
    }

    /// A failed check for a computation that returned an error.
    pub fn errored(name: impl Into<String>, err: &crate::Error, provenance: Provenance) -> Self {
        let mut r = Self::real(name, f64::NAN, 0.0, 0.0, CheckMode::Absolute, provenance);
        r.pass = false;
        r.inputs.insert("error".into(), err.to_string());
        r
    }

    pub fn with_input(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub wall_time_s: f64,
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command_line: Vec<String>,
    pub tol_scale: f64,
    pub suites: Vec<SuiteSummary>,
    pub total_pass: usize,
    pub total_fail: usize,
}

impl RunManifest {
    pub fn new(command_line: Vec<String>, tol_scale: f64) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command_line,
            tol_scale,
            suites: Vec::new(),
            total_pass: 0,
            total_fail: 0,
        }
    }

    pub fn record(&mut self, suite: &str, wall_time_s: f64, reports: &[CheckReport]) {
        let pass = reports.iter().filter(|r| r.pass).count();
        let fail = reports.len() - pass;
        self.total_pass += pass;
        self.total_fail += fail;
        self.suites.push(SuiteSummary {
            suite: suite.to_string(),
            wall_time_s,
            pass,
            fail,
        });
    }

    pub fn to_json_line(&self) -> String {
        serde_json::json!({ "manifest": self }).to_string()
    }
}

/// Fixed 17-significant-digit formatting for tables.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
