//! Result record shared by the discrete and continuous bound computations.

use serde::{Deserialize, Serialize};

use crate::lattice::OrderedVec;

/// Which estimate produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MatrixSharp,
    DiscreteClosedForm,
    DiscreteVarcoef,
    ClassicExp,
    VarcoefSharp,
    VarcoefSimple,
    ResolventKernel,
    HatMajorant,
}

/// Admissibility data for the hypothesis `B * rho_K < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Admissibility {
    pub b_times_rho_upper: f64,
    pub admissible: bool,
}

impl Admissibility {
    /// For operators that are exactly nilpotent at the discrete level the
    /// product `B * rho_K` is zero and the hypothesis always holds.
    pub fn nilpotent() -> Self {
        Admissibility { b_times_rho_upper: 0.0, admissible: true }
    }
}

/// Outcome of a bound computation.
///
/// `sharpness_residual` is `||y - (A + Ky)||_inf` for the sharp methods
/// (the bound is the fixed point of the inequality's right-hand side) and
/// `None` for the majorants that do not claim sharpness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound: OrderedVec,
    pub method: Method,
    pub admissibility: Admissibility,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sharpness_residual: Option<f64>,
    /// Certified truncation tail, for series-based methods.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
}
