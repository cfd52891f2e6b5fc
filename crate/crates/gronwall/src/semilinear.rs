//! Picard iteration for the integral form `x = x0 + K N(x)` of the abstract
//! semilinear problem, with lattice-Lipschitz probing, a uniqueness
//! certificate, and the continuous-dependence bound.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Grid, OrderedVec};
use crate::matrix::{Matrix, NonnegMatrix};
use crate::spectral;

const DIVERGENCE_NORM: f64 = 1e10;

/// Pointwise or matrix nonlinearity selected from a small registry; arbitrary
/// closures are allowed programmatically but are not part of the CLI schema.
#[derive(Clone)]
pub enum Nonlinearity {
    Zero,
    /// `N(x) = c * x`.
    Scale(f64),
    /// `N(x) = M x`.
    Linear(Arc<Matrix>),
    /// `N(x)_i = amplitude * sin(frequency * x_i)`.
    Sin { amplitude: f64, frequency: f64 },
    /// `N(x)_i = amplitude * exp(rate * x_i)`.
    Exp { amplitude: f64, rate: f64 },
    /// `N(x)_i = c_0 + c_1 x_i + c_2 x_i^2 + ...`.
    Polynomial(Vec<f64>),
    /// Caller-supplied evaluator; must be a pure function.
    Custom(Arc<dyn Fn(&OrderedVec) -> Result<OrderedVec> + Send + Sync>),
}

impl std::fmt::Debug for Nonlinearity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Nonlinearity::Zero => write!(f, "Zero"),
            Nonlinearity::Scale(c) => write!(f, "Scale({c})"),
            Nonlinearity::Linear(_) => write!(f, "Linear"),
            Nonlinearity::Sin { amplitude, frequency } => {
                write!(f, "Sin {{ amplitude: {amplitude}, frequency: {frequency} }}")
            }
            Nonlinearity::Exp { amplitude, rate } => {
                write!(f, "Exp {{ amplitude: {amplitude}, rate: {rate} }}")
            }
            Nonlinearity::Polynomial(c) => write!(f, "Polynomial({c:?})"),
            Nonlinearity::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl Nonlinearity {
    pub fn eval(&self, x: &OrderedVec) -> Result<OrderedVec> {
        match self {
            Nonlinearity::Zero => Ok(OrderedVec::zeros(x.len())),
            Nonlinearity::Scale(c) => x.scale(*c),
            Nonlinearity::Linear(m) => {
                if x.len() != m.dim() {
                    return Err(Error::DimensionMismatch { left: m.dim(), right: x.len() });
                }
                OrderedVec::new(m.matvec(x.as_slice()))
            }
            Nonlinearity::Sin { amplitude, frequency } => {
                OrderedVec::new(x.iter().map(|&v| amplitude * (frequency * v).sin()).collect())
            }
            Nonlinearity::Exp { amplitude, rate } => {
                OrderedVec::new(x.iter().map(|&v| amplitude * (rate * v).exp()).collect())
            }
            Nonlinearity::Polynomial(coeffs) => OrderedVec::new(
                x.iter()
                    .map(|&v| coeffs.iter().rev().fold(0.0, |acc, &c| acc * v + c))
                    .collect(),
            ),
            Nonlinearity::Custom(f) => f(x),
        }
    }
}

/// Data of the problem `Lx = N(x)`, `Px = x0` in integral form
/// `x = x0 + K N(x)`.
///
/// `lipschitz` is the caller-declared lattice-Lipschitz constant of `N`;
/// admissibility of the uniqueness and dependence claims requires
/// `lipschitz * rho_K < 1`.
#[derive(Debug, Clone)]
pub struct SemilinearProblem {
    pub k: NonnegMatrix,
    pub x0: OrderedVec,
    pub nonlinearity: Nonlinearity,
    pub lipschitz: f64,
}

impl SemilinearProblem {
    pub fn new(
        k: NonnegMatrix,
        x0: OrderedVec,
        nonlinearity: Nonlinearity,
        lipschitz: f64,
    ) -> Result<Self> {
        if x0.len() != k.dim() {
            return Err(Error::DimensionMismatch { left: k.dim(), right: x0.len() });
        }
        if !(lipschitz >= 0.0) {
            return Err(Error::Parameter(format!(
                "Lipschitz constant must be nonnegative, got {lipschitz}"
            )));
        }
        Ok(SemilinearProblem { k, x0, nonlinearity, lipschitz })
    }

    fn check_admissible(&self) -> Result<f64> {
        let c_rho = self.lipschitz * self.k.spectral_bracket().upper;
        if c_rho >= 1.0 {
            return Err(Error::Admissibility(format!(
                "uniqueness/dependence requires C*rho_K < 1; got C*rho_K >= {c_rho}"
            )));
        }
        Ok(c_rho)
    }
}

/// Iteration history of a Picard solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveTrace {
    /// Successive sup-norm differences `||x_{k+1} - x_k||`.
    pub iterate_norms: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    /// `||x - x0 - K N(x)||_inf` at the final iterate.
    pub final_residual: f64,
}

#[derive(Debug, Clone)]
pub struct PicardSolution {
    pub x: OrderedVec,
    pub trace: SolveTrace,
}

/// Successive approximations `x_{k+1} = x0 + K N(x_k)` starting at `x0`.
///
/// Returns with `converged = false` when `max_iter` is exhausted; blows up
/// loudly (error) when iterates exceed the divergence guard, since the
/// theorems promise nothing outside admissibility.
pub fn picard_solve(p: &SemilinearProblem, tol: f64, max_iter: usize) -> Result<PicardSolution> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    let mut x = p.x0.clone();
    let mut diffs = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    for _ in 0..max_iter {
        iterations += 1;
        let next = p.x0.add(&p.k.apply(&p.nonlinearity.eval(&x)?)?)?;
        let diff = next.sub(&x)?.sup_norm();
        diffs.push(diff);
        x = next;
        if x.sup_norm() > DIVERGENCE_NORM {
            return Err(Error::Convergence(format!(
                "Picard iterates diverged: ||x|| = {} after {iterations} iterations",
                x.sup_norm()
            )));
        }
        if diff < tol {
            converged = true;
            break;
        }
    }
    let residual = x.sub(&p.x0)?.sub(&p.k.apply(&p.nonlinearity.eval(&x)?)?)?.sup_norm();
    Ok(PicardSolution {
        x,
        trace: SolveTrace { iterate_norms: diffs, converged, iterations, final_residual: residual },
    })
}

/// Empirical lower bound for the lattice-Lipschitz constant of `n` from
/// sampled pairs: the largest componentwise ratio
/// `|N(x)_i - N(y)_i| / |x_i - y_i|`. A probe, never a certificate.
pub fn lattice_lipschitz_estimate(
    n: &Nonlinearity,
    pairs: &[(OrderedVec, OrderedVec)],
) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::Parameter("need at least one sample pair".into()));
    }
    const EPS_FLOOR: f64 = 1e-30;
    let mut best = 0.0f64;
    for (x, y) in pairs {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch { left: x.len(), right: y.len() });
        }
        let nx = n.eval(x)?;
        let ny = n.eval(y)?;
        for i in 0..x.len() {
            let dx = (x[i] - y[i]).abs();
            if dx == 0.0 {
                continue;
            }
            best = best.max((nx[i] - ny[i]).abs() / dx.max(EPS_FLOOR));
        }
    }
    Ok(best)
}

/// Result of checking two candidate solutions for coincidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessOutcome {
    pub both_solutions: bool,
    pub coincide: bool,
}

/// `||(I - C K)^{-1}||_inf`, valid because the inverse is nonnegative under
/// `C * rho_K < 1` (Neumann series of a nonnegative matrix).
fn dependence_operator_norm(k: &NonnegMatrix, c: f64) -> Result<f64> {
    let ones = OrderedVec::constant(k.dim(), 1.0)?;
    Ok(apply_dependence_inverse(k, c, &ones)?.sup_norm())
}

/// `(I - C K)^{-1} v`.
fn apply_dependence_inverse(k: &NonnegMatrix, c: f64, v: &OrderedVec) -> Result<OrderedVec> {
    if c == 0.0 {
        return Ok(v.clone());
    }
    spectral::resolvent_direct(k, 1.0 / c, v)?.scale(1.0 / c)
}

/// Certify that two residual-checked solutions of the same problem coincide
/// within the tolerance amplified by `||(I - CK)^{-1}||`.
pub fn uniqueness_certificate(
    p: &SemilinearProblem,
    x1: &OrderedVec,
    x2: &OrderedVec,
    tol: f64,
) -> Result<UniquenessOutcome> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    p.check_admissible()?;
    let residual = |x: &OrderedVec| -> Result<f64> {
        Ok(x.sub(&p.x0)?.sub(&p.k.apply(&p.nonlinearity.eval(x)?)?)?.sup_norm())
    };
    let both_solutions = residual(x1)? <= tol && residual(x2)? <= tol;
    if !both_solutions {
        return Ok(UniquenessOutcome { both_solutions, coincide: false });
    }
    // |x1 - x2| <= (I - CK)^{-1} (r1 + r2) <= 2 tol * ||(I-CK)^{-1}||
    let eta = dependence_operator_norm(&p.k, p.lipschitz)?;
    let coincide = x1.sub(x2)?.sup_norm() <= 2.0 * tol * eta + 1e-14;
    Ok(UniquenessOutcome { both_solutions, coincide })
}

/// Continuous-dependence bound `(I - CK)^{-1} |x0 - x0_hat|`: solutions for
/// the two kernel elements differ by at most this, componentwise, up to
/// solver tolerances.
pub fn continuous_dependence_bound(
    p: &SemilinearProblem,
    x0_hat: &OrderedVec,
) -> Result<OrderedVec> {
    p.check_admissible()?;
    let delta = p.x0.sub(x0_hat)?.abs_val();
    apply_dependence_inverse(&p.k, p.lipschitz, &delta)
}

/// Which quadrature weights back the cumulative integration matrix for
/// initial value problems on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadRule {
    /// `h` on every past node: first order, matches the kernel
    /// discretization used elsewhere.
    LeftEndpoint,
    /// Cumulative Adams-Bashforth-2 weights `(h/2, h, ..., h, 3h/2)`:
    /// second order, still strictly lower triangular.
    AdamsBashforth2,
}

/// Strictly lower-triangular (hence nilpotent) matrix representing
/// `x(t) -> int_a^t x(s) ds` on the grid.
pub fn cumulative_integration_matrix(grid: &Grid, rule: QuadRule) -> Result<NonnegMatrix> {
    let n = grid.len();
    let h = grid.step();
    let mut m = Matrix::zeros(n);
    for i in 1..n {
        match rule {
            QuadRule::LeftEndpoint => {
                for j in 0..i {
                    m.set(i, j, h);
                }
            }
            QuadRule::AdamsBashforth2 => {
                if i == 1 {
                    // single Euler step to start the multistep weights
                    m.set(1, 0, h);
                } else {
                    m.set(i, 0, 0.5 * h);
                    for j in 1..i - 1 {
                        m.set(i, j, h);
                    }
                    m.set(i, i - 1, 1.5 * h);
                }
            }
        }
    }
    NonnegMatrix::new(m)
}
