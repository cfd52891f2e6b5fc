//! 1D Dirichlet Laplacian on [0,1] at desk scale: Green matrix, first
//! eigenvalue, and the `B < lambda_1` maximum-principle checker.
//!
//! Interior nodes carry the unknowns; boundary values travel separately as a
//! pair. The continuum operator's infinite-dimensional kernel has no discrete
//! counterpart here (the discrete kernel is spanned by affine functions), a
//! fidelity gap that is documented rather than simulated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::OrderedVec;
use crate::matrix::{Matrix, NonnegMatrix};

const MAX_DENSE_NODES: usize = 5000;

/// Discretized `-d^2/dt^2` on `(0,1)` with homogeneous Dirichlet data:
/// `(1/h^2) tridiag(-1, 2, -1)` on `n` interior nodes, `h = 1/(n+1)`.
#[derive(Debug, Clone)]
pub struct DirichletLaplacian1D {
    n: usize,
    h: f64,
    green: NonnegMatrix,
    /// Smallest raw entry of the inverse before clamping into the
    /// nonnegative wrapper; positivity of the Green matrix asserts this
    /// stays above a roundoff threshold.
    raw_green_min: f64,
    lambda1: f64,
    first_eigvec: OrderedVec,
}

/// Solve the interior system `(1/h^2) tridiag(-1,2,-1) x = f` by the Thomas
/// algorithm.
fn thomas_solve(n: usize, h: f64, f: &[f64]) -> Vec<f64> {
    let scale = h * h;
    let mut c = vec![0.0; n]; // superdiagonal multipliers
    let mut d = vec![0.0; n];
    let mut denom = 2.0;
    c[0] = -1.0 / denom;
    d[0] = scale * f[0] / denom;
    for i in 1..n {
        denom = 2.0 + c[i - 1];
        if i < n - 1 {
            c[i] = -1.0 / denom;
        }
        d[i] = (scale * f[i] + d[i - 1]) / denom;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] -= c[i] * next;
    }
    x
}

impl DirichletLaplacian1D {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("need at least 2 interior nodes, got {n}")));
        }
        if n > MAX_DENSE_NODES {
            return Err(Error::Resource(format!(
                "n = {n} exceeds the dense-storage cap of {MAX_DENSE_NODES}"
            )));
        }
        let h = 1.0 / (n + 1) as f64;
        // Green matrix: tridiagonal solve against identity columns
        let mut green = Matrix::zeros(n);
        let mut raw_min = f64::INFINITY;
        let mut unit = vec![0.0; n];
        for j in 0..n {
            unit[j] = 1.0;
            let col = thomas_solve(n, h, &unit);
            unit[j] = 0.0;
            for (i, &v) in col.iter().enumerate() {
                raw_min = raw_min.min(v);
                green.set(i, j, v.max(0.0));
            }
        }
        if raw_min < -1e-10 {
            return Err(Error::Numeric(format!(
                "Green matrix entry {raw_min} violates discrete positivity"
            )));
        }
        let green = NonnegMatrix::new(green)?;

        // first eigenvalue by power iteration on the Green matrix
        // (inverse iteration on L), cross-checked against the closed form
        let mut v: Vec<f64> = (0..n)
            .map(|i| (std::f64::consts::PI * (i + 1) as f64 * h).sin())
            .collect();
        let mut mu = 0.0;
        for _ in 0..500 {
            let w = green.matvec(&v);
            let norm = w.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
            let next: Vec<f64> = w.iter().map(|&x| x / norm).collect();
            // Rayleigh quotient, green is symmetric
            let num: f64 = next.iter().zip(green.matvec(&next)).map(|(&a, b)| a * b).sum();
            let den: f64 = next.iter().map(|&a| a * a).sum();
            let mu_next = num / den;
            let done = (mu_next - mu).abs() <= 1e-15 * mu_next;
            mu = mu_next;
            v = next;
            if done {
                break;
            }
        }
        let lambda1 = 1.0 / mu;
        let closed_form = 4.0 / (h * h) * (std::f64::consts::PI * h / 2.0).sin().powi(2);
        if (lambda1 - closed_form).abs() > 1e-9 * closed_form {
            return Err(Error::Numeric(format!(
                "eigenvalue iteration {lambda1} disagrees with the discrete closed form {closed_form}"
            )));
        }
        // normalize the eigenvector to be positive with sup norm 1
        if v.iter().sum::<f64>() < 0.0 {
            for x in &mut v {
                *x = -*x;
            }
        }
        let first_eigvec = OrderedVec::new(v)?;

        Ok(DirichletLaplacian1D { n, h, green, raw_green_min: raw_min, lambda1, first_eigvec })
    }

    pub fn interior_nodes(&self) -> usize {
        self.n
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn green(&self) -> &NonnegMatrix {
        &self.green
    }

    pub fn raw_green_min(&self) -> f64 {
        self.raw_green_min
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    /// First discrete eigenvector, positive, sup norm 1.
    pub fn first_eigvec(&self) -> &OrderedVec {
        &self.first_eigvec
    }

    /// Interior node coordinate `t_i = (i+1) h`.
    pub fn node(&self, i: usize) -> f64 {
        (i + 1) as f64 * self.h
    }

    /// `z = green * f`: the solution of `-z'' = f`, `z(0) = z(1) = 0`.
    pub fn green_apply(&self, f: &OrderedVec) -> Result<OrderedVec> {
        self.green.apply(f)
    }

    /// Discrete `-x''` at the interior nodes, with the given boundary values.
    pub fn apply_laplacian(&self, x: &OrderedVec, boundary: (f64, f64)) -> Result<OrderedVec> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: x.len() });
        }
        let h2 = self.h * self.h;
        let v = x.as_slice();
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let left = if i == 0 { boundary.0 } else { v[i - 1] };
            let right = if i == self.n - 1 { boundary.1 } else { v[i + 1] };
            out.push((-left + 2.0 * v[i] - right) / h2);
        }
        OrderedVec::new(out)
    }
}

/// Exact Green function of `-d^2/dt^2` on `[0,1]` with Dirichlet conditions:
/// `G(t, s) = min(t,s) (1 - max(t,s))`. Analytic oracle for the matrix.
pub fn continuous_green_oracle(t: f64, s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) || !(0.0..=1.0).contains(&s) {
        return Err(Error::Parameter(format!("Green oracle needs 0 <= t,s <= 1, got ({t}, {s})")));
    }
    Ok(t.min(s) * (1.0 - t.max(s)))
}

/// Outcome of the maximum-principle check.
///
/// `certificate` is `(I - B*green)^{-1}` applied to the positive parts of the
/// interior defect image and the boundary lift; when the premises hold it
/// dominates `-x`, which is how the conclusion follows from the abstract
/// Gronwall bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxPrincipleOutcome {
    pub premises_hold: bool,
    pub conclusion_holds: bool,
    pub certificate: OrderedVec,
}

/// Check `-x'' <= Bx` (interior) and `x <= 0` on the boundary, and whether
/// `x <= 0` follows. Requires the admissibility threshold `0 <= B < lambda_1`.
pub fn max_principle_check(
    op: &DirichletLaplacian1D,
    x: &OrderedVec,
    boundary: (f64, f64),
    b: f64,
    tol: f64,
) -> Result<MaxPrincipleOutcome> {
    if !(b >= 0.0) || b >= op.lambda1() {
        return Err(Error::Admissibility(format!(
            "maximum principle requires 0 <= B < lambda_1 = {}; got B = {b}",
            op.lambda1()
        )));
    }
    if !(tol >= 0.0) {
        return Err(Error::Parameter(format!("tolerance must be nonnegative, got {tol}")));
    }
    let n = op.interior_nodes();
    let lap = op.apply_laplacian(x, boundary)?;
    let bx = x.scale(b)?;
    let premises_hold =
        lap.leq(&bx, tol)? && boundary.0 <= tol && boundary.1 <= tol;
    let conclusion_holds =
        x.leq(&OrderedVec::zeros(n), tol)? && boundary.0 <= tol && boundary.1 <= tol;

    // x = green*(Bx - g) + lift with g := Bx - Lx and the harmonic boundary
    // lift; the certificate solves (I - B*green) c = green*g_+ + lift_-
    let defect = bx.sub(&lap)?.pos_part();
    let lift_neg = OrderedVec::new(
        (0..n)
            .map(|i| {
                let t = op.node(i);
                -(boundary.0 * (1.0 - t) + boundary.1 * t)
            })
            .collect(),
    )?
    .pos_part();
    let rhs = op.green_apply(&defect)?.add(&lift_neg)?;
    let system = op.green().as_matrix().scale(-b).sub_scaled_identity(-1.0);
    let certificate = OrderedVec::new(system.solve(rhs.as_slice())?)?;
    Ok(MaxPrincipleOutcome { premises_hold, conclusion_holds, certificate })
}
