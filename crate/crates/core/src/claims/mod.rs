//! Per-instance evaluation of the systolic and filling inequalities, the
//! threshold genus estimate and report output.

mod bound;
mod report;
mod suite;

pub use bound::{estimate_g0, SRBoundFunction};
pub use report::{emit_report, read_report, render_report, ReportFormat};
pub use suite::{check_membership, cor_threshold, run_claim_suite, InstanceMeta, SuiteOptions};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::systole::SystoleError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    /// Whether `lhs rel rhs` holds with relative slack `tol`.
    pub fn holds(self, lhs: f64, rhs: f64, tol: f64) -> bool {
        let slack = tol * lhs.abs().max(rhs.abs());
        match self {
            Relation::Eq => (lhs - rhs).abs() <= slack,
            Relation::Le => lhs <= rhs + slack,
            Relation::Ge => lhs + slack >= rhs,
            Relation::Lt => lhs < rhs + slack,
            Relation::Gt => lhs + slack > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "==",
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Lt => "<",
            Relation::Gt => ">",
        }
    }
}

/// One evaluated inequality or equality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub description: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub relation: Relation,
    pub status: Status,
    /// Relative tolerance used for the comparison.
    pub tolerance: f64,
    /// A required claim makes the run fail when its status is `FAIL`.
    pub required: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub instance: InstanceMeta,
    pub claims: Vec<Claim>,
}

impl ClaimReport {
    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// `true` when no required claim failed.
    pub fn passed(&self) -> bool {
        self.claims
            .iter()
            .all(|c| !(c.required && c.status == Status::Fail))
    }
}

#[derive(Debug, Error)]
pub enum ClaimsError {
    #[error("the filling is simply connected (genus 0); the suite needs genus >= 1")]
    SimplyConnected,
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Systole(#[from] SystoleError),
    #[error("report output: {0}")]
    Io(#[from] std::io::Error),
    #[error("report encoding: {0}")]
    Encoding(String),
}
