//! Perron-root bracketing for nonnegative matrices and three resolvent
//! evaluators: a direct solve (the designated ground truth), the
//! Laplace-transform integral, and the Neumann series. The latter two act as
//! independent validators of the first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::OrderedVec;
use crate::matrix::{Matrix, NonnegMatrix};

/// Two-sided bracket for the Perron root of a nonnegative matrix.
///
/// `lower` and `upper` are certified bounds regardless of `converged`;
/// `converged` records whether `upper - lower` met the requested tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralBracket {
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Bracket the Perron root of `k` by Collatz-Wielandt quotients on power
/// iterates of the primitivity-shifted matrix `K + eps*I`, `eps = tol/10`.
///
/// For any strictly positive `x`, `min_i (Kx)_i/x_i <= rho(K) <= max_i
/// (Kx)_i/x_i`; the shift keeps iterates strictly positive so the quotients
/// are always defined, and is subtracted from the final bracket.
pub fn spectral_bound(k: &NonnegMatrix, tol: f64, max_iter: usize) -> Result<SpectralBracket> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    if max_iter == 0 {
        return Err(Error::Parameter("max_iter must be at least 1".into()));
    }
    let n = k.dim();
    let eps = tol / 10.0;
    let mut x = vec![1.0; n];
    let mut lower = f64::NEG_INFINITY;
    let mut upper = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    for _ in 0..max_iter {
        iterations += 1;
        let mut y = k.matvec(&x);
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += eps * xi;
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("non-finite iterate in spectral bracketing".into()));
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (yi, xi) in y.iter().zip(&x) {
            let q = yi / xi;
            lo = lo.min(q);
            hi = hi.max(q);
        }
        // every iterate yields valid bounds, so keep the running extremes
        lower = lower.max(lo);
        upper = upper.min(hi);
        if upper - lower <= tol {
            converged = true;
            break;
        }
        let norm = y.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        for yi in &mut y {
            *yi /= norm;
        }
        x = y;
    }
    Ok(SpectralBracket {
        lower: (lower - eps).max(0.0),
        upper: (upper - eps).max(0.0),
        iterations,
        converged,
    })
}

fn check_admissible(k: &NonnegMatrix, s: f64) -> Result<SpectralBracket> {
    let bracket = k.spectral_bracket();
    if s <= bracket.upper {
        return Err(Error::Admissibility(format!(
            "resolvent requires s > rho_K; got s = {s} with certified upper bound rho_K <= {}",
            bracket.upper
        )));
    }
    Ok(bracket)
}

/// Solve `(sI - K) y = A` directly (partial-pivot elimination).
///
/// This is the ground-truth route for `y(s, A)`; `resolvent_laplace` and
/// `neumann_resolvent` validate it.
pub fn resolvent_direct(k: &NonnegMatrix, s: f64, a: &OrderedVec) -> Result<OrderedVec> {
    if a.len() != k.dim() {
        return Err(Error::DimensionMismatch { left: k.dim(), right: a.len() });
    }
    check_admissible(k, s)?;
    let system = k.as_matrix().scale(-1.0).sub_scaled_identity(-s);
    OrderedVec::new(system.solve(a.as_slice())?)
}

/// Relative residual `||s*y - K*y - A||_inf / (1 + ||A||_inf)` of a candidate
/// resolvent value.
pub fn resolvent_residual(k: &NonnegMatrix, s: f64, a: &OrderedVec, y: &OrderedVec) -> Result<f64> {
    let ky = k.apply(y)?;
    let r = y.scale(s)?.sub(&ky)?.sub(a)?;
    Ok(r.sup_norm() / (1.0 + a.sup_norm()))
}

/// Matrix exponential `e^{tM}` by scaling and squaring with a truncated
/// Taylor series; the scaled argument is kept below 1/2 so the local
/// truncation sits at roundoff level.
pub fn expm_matrix(m: &Matrix, t: f64) -> Result<Matrix> {
    if !(t >= 0.0) {
        return Err(Error::Parameter(format!("time must be nonnegative, got {t}")));
    }
    let scaled_norm = m.inf_norm() * t;
    if !scaled_norm.is_finite() || scaled_norm > 1e6 {
        return Err(Error::Numeric(format!(
            "t*||M|| = {scaled_norm} too large for the matrix exponential"
        )));
    }
    let squarings = if scaled_norm <= 0.5 {
        0
    } else {
        (scaled_norm / 0.5).log2().ceil() as u32
    };
    let step = t / 2f64.powi(squarings as i32);
    let s = m.scale(step);
    let n = m.dim();
    let mut result = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for kk in 1..=30 {
        term = term.matmul(&s).scale(1.0 / kk as f64);
        let tn = term.inf_norm();
        result = result.add(&term);
        if tn <= 1e-17 * result.inf_norm().max(1.0) {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
        if !result.inf_norm().is_finite() {
            return Err(Error::Numeric("overflow while squaring the matrix exponential".into()));
        }
    }
    Ok(result)
}

/// `e^{tM} x` for a general square matrix `M` and `t >= 0`.
pub fn expm_action(m: &Matrix, t: f64, x: &OrderedVec) -> Result<OrderedVec> {
    if x.len() != m.dim() {
        return Err(Error::DimensionMismatch { left: m.dim(), right: x.len() });
    }
    let e = expm_matrix(m, t)?;
    OrderedVec::new(e.matvec(x.as_slice()))
}

/// Evaluate `(sI - K)^{-1} A` through the truncated Laplace integral
/// `int_0^r e^{-ts} e^{tK} A dt` with composite Simpson quadrature.
///
/// The integrand is propagated as `v_{j+1} = e^{dt (K - sI)} v_j`, folding the
/// scalar decay into the matrix factor so nothing overflows for large `r`.
pub fn resolvent_laplace(
    k: &NonnegMatrix,
    s: f64,
    a: &OrderedVec,
    r: f64,
    steps: usize,
) -> Result<OrderedVec> {
    if a.len() != k.dim() {
        return Err(Error::DimensionMismatch { left: k.dim(), right: a.len() });
    }
    if steps < 2 {
        return Err(Error::Parameter(format!("Simpson rule needs at least 2 steps, got {steps}")));
    }
    if !(r > 0.0) {
        return Err(Error::Parameter(format!("truncation radius must be positive, got {r}")));
    }
    check_admissible(k, s)?;
    let steps = if steps % 2 == 0 { steps } else { steps + 1 };
    let dt = r / steps as f64;
    let propagator = expm_matrix(&k.as_matrix().sub_scaled_identity(s), dt)?;
    let n = k.dim();
    let mut v: Vec<f64> = a.as_slice().to_vec();
    let mut acc = vec![0.0; n];
    for j in 0..=steps {
        let w = if j == 0 || j == steps {
            1.0
        } else if j % 2 == 1 {
            4.0
        } else {
            2.0
        };
        for (ai, vi) in acc.iter_mut().zip(&v) {
            *ai += w * vi;
        }
        if j < steps {
            v = propagator.matvec(&v);
        }
    }
    for ai in &mut acc {
        *ai *= dt / 3.0;
    }
    OrderedVec::new(acc)
}

/// Partial sum of the Neumann series `(1/s) sum_j (K/s)^j A` with the first
/// omitted term below `tail_tol` in sup norm.
pub fn neumann_resolvent(
    k: &NonnegMatrix,
    s: f64,
    a: &OrderedVec,
    max_terms: usize,
    tail_tol: f64,
) -> Result<OrderedVec> {
    if a.len() != k.dim() {
        return Err(Error::DimensionMismatch { left: k.dim(), right: a.len() });
    }
    if !(tail_tol > 0.0) {
        return Err(Error::Parameter(format!("tail_tol must be positive, got {tail_tol}")));
    }
    check_admissible(k, s)?;
    let mut term = a.scale(1.0 / s)?;
    let mut sum = OrderedVec::zeros(k.dim());
    let mut prev_norm = f64::INFINITY;
    for _ in 0..max_terms {
        sum = sum.add(&term)?;
        term = k.apply(&term)?.scale(1.0 / s)?;
        let norm = term.sup_norm();
        if norm <= tail_tol {
            return Ok(sum);
        }
        if norm >= prev_norm {
            return Err(Error::Convergence(format!(
                "Neumann term norms stopped decreasing at {norm}; the series route does not apply"
            )));
        }
        prev_norm = norm;
    }
    Err(Error::Convergence(format!(
        "Neumann tail still {prev_norm} after {max_terms} terms (tail_tol = {tail_tol})"
    )))
}
