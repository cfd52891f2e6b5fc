//! Continuous-case Gronwall bounds: the classical exponential estimate,
//! variable-coefficient sharp and simple majorants, resolvent-kernel series
//! with certified factorial tails, kernel discretization, and a
//! quasinilpotence probe.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Grid, OrderedVec};
use crate::matrix::{Matrix, NonnegMatrix};
use crate::report::{Admissibility, BoundReport, Method};

/// How the kernel `k(t, s)` on the triangle `a <= s <= t <= b` is given.
#[derive(Clone)]
pub enum KernelForm {
    /// `k(t, s) = B`.
    Constant(f64),
    /// `k(t, s) = C(t) * B(s)` with both factors tabulated on the grid.
    Separable { c: OrderedVec, b: OrderedVec },
    /// Values tabulated on the closed lower triangle of the grid.
    Tabulated(KernelTable),
    /// Arbitrary evaluator.
    Closure(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for KernelForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KernelForm::Constant(b) => write!(f, "Constant({b})"),
            KernelForm::Separable { .. } => write!(f, "Separable"),
            KernelForm::Tabulated(_) => write!(f, "Tabulated"),
            KernelForm::Closure(_) => write!(f, "Closure"),
        }
    }
}

/// Lower-triangular table of kernel values on the grid; entries above the
/// diagonal are defined as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTable {
    n: usize,
    // row i holds entries j = 0..=i
    data: Vec<f64>,
}

impl KernelTable {
    pub fn zeros(n: usize) -> Self {
        KernelTable { n, data: vec![0.0; n * (n + 1) / 2] }
    }

    pub fn from_fn<F: Fn(usize, usize) -> f64>(n: usize, f: F) -> Self {
        let mut t = KernelTable::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                t.set(i, j, f(i, j));
            }
        }
        t
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (i + 1) / 2 + j
    }

    /// Value at `(t_i, t_j)`; zero above the diagonal.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j > i {
            0.0
        } else {
            self.data[self.idx(i, j)]
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let at = self.idx(i, j);
        self.data[at] = v;
    }

    pub fn max_value(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }

    pub fn add_assign(&mut self, other: &KernelTable) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }
}

/// Nonnegative Volterra kernel on the triangle `{a <= s <= t <= b}` together
/// with a certified sup-norm bound.
#[derive(Debug, Clone)]
pub struct VolterraKernel {
    grid: Grid,
    form: KernelForm,
    sup_norm_bound: f64,
}

impl VolterraKernel {
    pub fn new(grid: Grid, form: KernelForm) -> Result<Self> {
        let n = grid.len();
        let mut max_sample = 0.0f64;
        for i in 0..n {
            for j in 0..=i {
                let v = eval_form(&form, &grid, i, j);
                if !v.is_finite() {
                    return Err(Error::Invariant(format!("non-finite kernel sample {v}")));
                }
                if v < 0.0 {
                    return Err(Error::Invariant(format!(
                        "negative kernel sample {v} at (t={}, s={})",
                        grid.node(i),
                        grid.node(j)
                    )));
                }
                max_sample = max_sample.max(v);
            }
        }
        Ok(VolterraKernel { grid, form, sup_norm_bound: max_sample })
    }

    pub fn constant(grid: Grid, b: f64) -> Result<Self> {
        Self::new(grid, KernelForm::Constant(b))
    }

    pub fn from_closure<F: Fn(f64, f64) -> f64 + Send + Sync + 'static>(
        grid: Grid,
        f: F,
    ) -> Result<Self> {
        Self::new(grid, KernelForm::Closure(Arc::new(f)))
    }

    pub fn tabulated(grid: Grid, table: KernelTable) -> Result<Self> {
        if table.len() != grid.len() {
            return Err(Error::DimensionMismatch { left: grid.len(), right: table.len() });
        }
        Self::new(grid, KernelForm::Tabulated(table))
    }

    pub fn separable(grid: Grid, c: OrderedVec, b: OrderedVec) -> Result<Self> {
        if c.len() != grid.len() || b.len() != grid.len() {
            return Err(Error::DimensionMismatch { left: grid.len(), right: c.len().min(b.len()) });
        }
        Self::new(grid, KernelForm::Separable { c, b })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Certified bound on `||k||_inf` over the triangle (max of the grid
    /// samples; closed forms are sampled at the same resolution they are
    /// later used at).
    pub fn sup_norm_bound(&self) -> f64 {
        self.sup_norm_bound
    }

    /// `k(t_i, t_j)` for `j <= i`; zero above the diagonal.
    pub fn eval(&self, i: usize, j: usize) -> f64 {
        if j > i {
            0.0
        } else {
            eval_form(&self.form, &self.grid, i, j)
        }
    }

    /// Table of the kernel values on the triangle.
    pub fn table(&self) -> KernelTable {
        KernelTable::from_fn(self.grid.len(), |i, j| self.eval(i, j))
    }
}

fn eval_form(form: &KernelForm, grid: &Grid, i: usize, j: usize) -> f64 {
    match form {
        KernelForm::Constant(b) => *b,
        KernelForm::Separable { c, b } => c[i] * b[j],
        KernelForm::Tabulated(t) => t.get(i, j),
        KernelForm::Closure(f) => f(grid.node(i), grid.node(j)),
    }
}

/// Coefficients of the inequality `x <= A + C * int_a^t B x` sampled on a
/// common grid, with `B, C >= 0`.
#[derive(Debug, Clone)]
pub struct CoefficientTriple {
    pub grid: Grid,
    pub a: OrderedVec,
    pub b: OrderedVec,
    pub c: OrderedVec,
}

impl CoefficientTriple {
    pub fn new(grid: Grid, a: OrderedVec, b: OrderedVec, c: OrderedVec) -> Result<Self> {
        let n = grid.len();
        for (name, v) in [("A", &a), ("B", &b), ("C", &c)] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: v.len() });
            }
            if name != "A" && v.iter().any(|&x| x < 0.0) {
                return Err(Error::Invariant(format!("coefficient {name} must be nonnegative")));
            }
        }
        Ok(CoefficientTriple { grid, a, b, c })
    }
}

/// Classical bound `A e^{B (t-a)}` evaluated on the grid.
pub fn classic_bound(a: f64, b: f64, grid: &Grid) -> Result<OrderedVec> {
    if !(b >= 0.0) {
        return Err(Error::Parameter(format!("coefficient B must be nonnegative, got {b}")));
    }
    if !a.is_finite() {
        return Err(Error::Parameter(format!("coefficient A must be finite, got {a}")));
    }
    let left = grid.a();
    grid.sample(|t| a * (b * (t - left)).exp())
}

/// Cumulative trapezoid of nodal values: `out[i] = int_a^{t_i}`.
fn cumulative_trapezoid(grid: &Grid, values: &[f64]) -> Vec<f64> {
    let h = grid.step();
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(0.0);
    for w in values.windows(2) {
        acc += 0.5 * h * (w[0] + w[1]);
        out.push(acc);
    }
    out
}

/// Trapezoid of `values[lo..=hi]` over the grid.
fn trapezoid_segment(grid: &Grid, values: &[f64], lo: usize, hi: usize) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let h = grid.step();
    let mut acc = 0.5 * (values[lo] + values[hi]);
    for v in &values[lo + 1..hi] {
        acc += v;
    }
    acc * h
}

/// Sharp variable-coefficient bound
/// `A(t) + C(t) int_a^t A(s) B(s) e^{int_s^t B C} ds`,
/// the fixed point of `y = A + C int B y`.
pub fn varcoef_sharp_bound(coef: &CoefficientTriple) -> Result<BoundReport> {
    let n = coef.grid.len();
    // E_i = int_a^{t_i} B*C
    let bc: Vec<f64> = (0..n).map(|i| coef.b[i] * coef.c[i]).collect();
    let e = cumulative_trapezoid(&coef.grid, &bc);
    // inner integrand A*B*e^{-E(s)}, accumulated once
    let g: Vec<f64> = (0..n).map(|i| coef.a[i] * coef.b[i] * (-e[i]).exp()).collect();
    let gint = cumulative_trapezoid(&coef.grid, &g);
    let bound = OrderedVec::new(
        (0..n)
            .map(|i| coef.a[i] + coef.c[i] * e[i].exp() * gint[i])
            .collect(),
    )?;
    let residual = varcoef_residual(coef, &bound);
    Ok(BoundReport {
        bound,
        method: Method::VarcoefSharp,
        admissibility: Admissibility::nilpotent(),
        sharpness_residual: Some(residual),
        tail_bound: None,
    })
}

/// `||y - (A + C * int_a^t B y)||_inf` against the trapezoid discretization.
pub fn varcoef_residual(coef: &CoefficientTriple, y: &OrderedVec) -> f64 {
    let n = coef.grid.len();
    let by: Vec<f64> = (0..n).map(|i| coef.b[i] * y[i]).collect();
    let byint = cumulative_trapezoid(&coef.grid, &by);
    (0..n)
        .map(|i| (y[i] - coef.a[i] - coef.c[i] * byint[i]).abs())
        .fold(0.0, f64::max)
}

/// Unsharp majorant `A(t) e^{C(t) int_a^t B}`, valid for `A >= 0` with `A`
/// and `C` nondecreasing (checked).
pub fn varcoef_simple_bound(coef: &CoefficientTriple) -> Result<BoundReport> {
    let n = coef.grid.len();
    if coef.a.iter().any(|&v| v < 0.0) {
        return Err(Error::Parameter("simple majorant requires A >= 0".into()));
    }
    for (name, v) in [("A", &coef.a), ("C", &coef.c)] {
        let scale = v.sup_norm().max(1.0);
        if v.as_slice().windows(2).any(|w| w[1] < w[0] - 1e-12 * scale) {
            return Err(Error::Parameter(format!("simple majorant requires {name} nondecreasing")));
        }
    }
    let bint = cumulative_trapezoid(&coef.grid, coef.b.as_slice());
    let bound = OrderedVec::new(
        (0..n)
            .map(|i| coef.a[i] * (coef.c[i] * bint[i]).exp())
            .collect(),
    )?;
    Ok(BoundReport {
        bound,
        method: Method::VarcoefSimple,
        admissibility: Admissibility::nilpotent(),
        sharpness_residual: None,
        tail_bound: None,
    })
}

/// Left-endpoint quadrature matrix of the operator `int_a^t k(t,s) x(s) ds`:
/// `M[i][j] = h * k(t_i, t_j)` for `j < i`, zero otherwise.
///
/// The rule is chosen over trapezoid so the matrix is strictly lower
/// triangular and therefore exactly nilpotent, keeping the discrete spectral
/// bracket pinned at zero.
pub fn discretize_kernel(kernel: &VolterraKernel) -> Result<NonnegMatrix> {
    let n = kernel.grid().len();
    let h = kernel.grid().step();
    let mut m = Matrix::zeros(n);
    for i in 1..n {
        for j in 0..i {
            m.set(i, j, h * kernel.eval(i, j));
        }
    }
    NonnegMatrix::new(m)
}

/// Iterated kernels `k_1 = k`, `k_{m+1}(t,s) = int_s^t k(t,r) k_m(r,s) dr`,
/// tabulated on the grid with trapezoid quadrature.
pub fn iterated_kernels(kernel: &VolterraKernel, count: usize) -> Result<Vec<KernelTable>> {
    if count < 1 {
        return Err(Error::Parameter("need at least one iterated kernel".into()));
    }
    let grid = kernel.grid();
    let n = grid.len();
    let h = grid.step();
    let mut tables = Vec::with_capacity(count);
    tables.push(kernel.table());
    for _ in 1..count {
        let prev = tables.last().unwrap();
        let mut next = KernelTable::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                if i == j {
                    continue;
                }
                // trapezoid over r = t_j .. t_i, fixed summation order
                let mut acc = 0.5 * (kernel.eval(i, j) * prev.get(j, j) + kernel.eval(i, i) * prev.get(i, j));
                for l in j + 1..i {
                    acc += kernel.eval(i, l) * prev.get(l, j);
                }
                next.set(i, j, acc * h);
            }
        }
        tables.push(next);
    }
    Ok(tables)
}

/// Report of the Gelfand values `||M^m||_inf^{1/m}` for the discretized
/// kernel matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasinilpotenceReport {
    pub gelfand_values: Vec<f64>,
    pub decreasing_to_zero: bool,
}

/// Probe quasinilpotence: the Gelfand sequence of the discretized operator
/// must sit below the factorial decay envelope
/// `10 * ||k||_inf * (b-a) / ceil(m/e)`.
pub fn quasinilpotence_check(kernel: &VolterraKernel, m_max: usize) -> Result<QuasinilpotenceReport> {
    if m_max < 2 {
        return Err(Error::Parameter(format!("m_max must be at least 2, got {m_max}")));
    }
    let m = discretize_kernel(kernel)?;
    let width = kernel.grid().b() - kernel.grid().a();
    let kb = kernel.sup_norm_bound();
    let mut power = m.as_matrix().clone();
    let mut values = Vec::with_capacity(m_max);
    let mut ok = true;
    for step in 1..=m_max {
        let norm = power.inf_norm();
        let gelfand = norm.powf(1.0 / step as f64);
        values.push(gelfand);
        let envelope = 10.0 * kb * width / (step as f64 / std::f64::consts::E).ceil();
        if gelfand > envelope + 1e-12 {
            ok = false;
        }
        if step < m_max {
            power = power.matmul(m.as_matrix());
        }
    }
    if *values.last().unwrap() > values[0] {
        ok = false;
    }
    Ok(QuasinilpotenceReport { gelfand_values: values, decreasing_to_zero: ok })
}

/// Truncation index for the resolvent series: smallest `N` whose certified
/// tail `||A|| sum_{n>N} x^n/n!` (with `x = ||k||(b-a)`) is below `tail_tol`.
fn series_truncation_index(x: f64, a_norm: f64, tail_tol: f64) -> Option<(usize, f64)> {
    let mut term = 1.0f64; // x^n / n! at n = 0
    for n in 0..=200usize {
        // term currently holds x^n/n!; the tail after N = n starts at n+1
        let next = term * x / (n + 1) as f64;
        let ratio = x / (n + 2) as f64;
        if ratio < 1.0 {
            let tail = a_norm * next / (1.0 - ratio);
            if tail < tail_tol {
                return Some((n, tail));
            }
        }
        term = next;
    }
    None
}

/// Sharp (not closed-form) bound `A(t) + int_a^t R(t,s) A(s) ds` with the
/// resolvent kernel `R = sum_n k_n` truncated via the certified factorial
/// envelope, never from observed term decay.
pub fn resolvent_kernel_bound(
    kernel: &VolterraKernel,
    a: &OrderedVec,
    tail_tol: f64,
) -> Result<BoundReport> {
    let grid = kernel.grid();
    let n = grid.len();
    if a.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: a.len() });
    }
    if !(tail_tol > 0.0) {
        return Err(Error::Parameter(format!("tail_tol must be positive, got {tail_tol}")));
    }
    let x = kernel.sup_norm_bound() * (grid.b() - grid.a());
    let (terms, tail) = series_truncation_index(x, a.sup_norm(), tail_tol)
        .ok_or_else(|| Error::Resource("factorial envelope did not certify within 200 terms".into()))?;
    const HARD_CAP: usize = 80;
    if terms > HARD_CAP {
        return Err(Error::Resource(format!(
            "resolvent series needs {terms} iterated kernels, above the cap of {HARD_CAP}"
        )));
    }
    let bound = if terms == 0 {
        a.clone()
    } else {
        let tables = iterated_kernels(kernel, terms)?;
        let mut resolvent = KernelTable::zeros(n);
        for t in &tables {
            resolvent.add_assign(t);
        }
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let row: Vec<f64> = (0..=i).map(|j| resolvent.get(i, j) * a[j]).collect();
            values.push(a[i] + trapezoid_segment(grid, &row, 0, i));
        }
        OrderedVec::new(values)?
    };
    // defect against the trapezoid-discretized operator y = A + K y
    let mut residual = 0.0f64;
    for i in 0..n {
        let row: Vec<f64> = (0..=i).map(|j| kernel.eval(i, j) * bound[j]).collect();
        let coupled = trapezoid_segment(grid, &row, 0, i);
        residual = residual.max((bound[i] - a[i] - coupled).abs());
    }
    Ok(BoundReport {
        bound,
        method: Method::ResolventKernel,
        admissibility: Admissibility::nilpotent(),
        sharpness_residual: Some(residual),
        tail_bound: Some(tail),
    })
}

/// Running-max majorant `hat A(t) e^{int_a^t hat k(t,s) ds}` with
/// `hat A(t) = max_{r<=t} A(r)` and `hat k(t,s) = max_{s<=r<=t} k(r,s)`.
pub fn hat_majorant_bound(kernel: &VolterraKernel, a: &OrderedVec) -> Result<BoundReport> {
    let grid = kernel.grid();
    let n = grid.len();
    if a.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: a.len() });
    }
    let mut a_hat = Vec::with_capacity(n);
    let mut running = f64::NEG_INFINITY;
    for i in 0..n {
        running = running.max(a[i]);
        a_hat.push(running);
    }
    let table = kernel.table();
    // hat k(t_i, t_j) = max over rows r = j..=i of k(t_r, t_j); build by
    // column-wise running max so the whole triangle costs O(n^2)
    let mut k_hat = KernelTable::zeros(n);
    for j in 0..n {
        let mut col_max = f64::NEG_INFINITY;
        for i in j..n {
            col_max = col_max.max(table.get(i, j));
            k_hat.set(i, j, col_max);
        }
    }
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let row: Vec<f64> = (0..=i).map(|j| k_hat.get(i, j)).collect();
        let integral = trapezoid_segment(grid, &row, 0, i);
        values.push(a_hat[i] * integral.exp());
    }
    Ok(BoundReport {
        bound: OrderedVec::new(values)?,
        method: Method::HatMajorant,
        admissibility: Admissibility::nilpotent(),
        sharpness_residual: None,
        tail_bound: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::matrix_gronwall;

    fn unit_grid(n: usize) -> Grid {
        Grid::new(0.0, 1.0, n).unwrap()
    }

    #[test]
    fn classic_bound_examples() {
        let g = unit_grid(11);
        let flat = classic_bound(1.0, 0.0, &g).unwrap();
        assert!(flat.iter().all(|&v| v == 1.0));
        let e = classic_bound(1.0, 1.0, &g).unwrap();
        assert!((e[10] - std::f64::consts::E).abs() < 1e-12);
        let zero = classic_bound(0.0, 3.0, &g).unwrap();
        assert!(zero.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn sharp_bound_reduces_to_classic_for_constant_data() {
        let g = unit_grid(401);
        let coef = CoefficientTriple::new(
            g.clone(),
            OrderedVec::constant(401, 2.0).unwrap(),
            OrderedVec::constant(401, 1.5).unwrap(),
            OrderedVec::constant(401, 1.0).unwrap(),
        )
        .unwrap();
        let sharp = varcoef_sharp_bound(&coef).unwrap();
        let classic = classic_bound(2.0, 1.5, &g).unwrap();
        assert!(sharp.bound.sub(&classic).unwrap().sup_norm() < 2e-3);
    }

    #[test]
    fn sharp_bound_with_b_zero_is_a() {
        let g = unit_grid(21);
        let a = g.sample(|t| 1.0 + t * t).unwrap();
        let coef = CoefficientTriple::new(
            g,
            a.clone(),
            OrderedVec::zeros(21),
            OrderedVec::constant(21, 1.0).unwrap(),
        )
        .unwrap();
        let sharp = varcoef_sharp_bound(&coef).unwrap();
        assert!(sharp.bound.sub(&a).unwrap().sup_norm() < 1e-14);
        let simple = varcoef_simple_bound(&coef).unwrap();
        assert!(simple.bound.sub(&a).unwrap().sup_norm() < 1e-14);
    }

    #[test]
    fn sharp_bound_linear_a_oracle() {
        // y = t + int_0^t y solves to y(t) = e^t - 1, so y(1) = e - 1
        let g = unit_grid(801);
        let coef = CoefficientTriple::new(
            g.clone(),
            g.sample(|t| t).unwrap(),
            OrderedVec::constant(801, 1.0).unwrap(),
            OrderedVec::constant(801, 1.0).unwrap(),
        )
        .unwrap();
        let sharp = varcoef_sharp_bound(&coef).unwrap();
        let expected = std::f64::consts::E - 1.0;
        assert!((sharp.bound[800] - expected).abs() < 1e-5);
    }

    #[test]
    fn simple_majorant_dominates_sharp() {
        let g = unit_grid(201);
        let coef = CoefficientTriple::new(
            g.clone(),
            g.sample(|t| 1.0 + t).unwrap(),
            OrderedVec::constant(201, 1.0).unwrap(),
            OrderedVec::constant(201, 1.0).unwrap(),
        )
        .unwrap();
        let sharp = varcoef_sharp_bound(&coef).unwrap();
        let simple = varcoef_simple_bound(&coef).unwrap();
        assert!(sharp.bound.leq(&simple.bound, 1e-9).unwrap());
        // strict gap somewhere for non-trivial data
        let gap = simple.bound.sub(&sharp.bound).unwrap().sup_norm();
        assert!(gap > 0.01 * simple.bound.sup_norm());
    }

    #[test]
    fn simple_majorant_rejects_decreasing_a() {
        let g = unit_grid(11);
        let coef = CoefficientTriple::new(
            g.clone(),
            g.sample(|t| 1.0 - t).unwrap(),
            OrderedVec::constant(11, 1.0).unwrap(),
            OrderedVec::constant(11, 1.0).unwrap(),
        )
        .unwrap();
        assert!(matches!(varcoef_simple_bound(&coef), Err(Error::Parameter(_))));
    }

    #[test]
    fn discretize_constant_kernel() {
        let g = unit_grid(2);
        let k = VolterraKernel::constant(g.clone(), 3.0).unwrap();
        let m = discretize_kernel(&k).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.get(1, 0), 3.0 * g.step());
        assert_eq!(m.get(0, 0), 0.0);
        assert_eq!(m.get(1, 1), 0.0);
    }

    #[test]
    fn discretized_bound_converges_to_classic() {
        // matrix_gronwall on the discretized kernel approaches A e^{Bt} at O(h)
        let mut prev_err = f64::INFINITY;
        for n in [51usize, 101, 201] {
            let g = unit_grid(n);
            let k = VolterraKernel::constant(g.clone(), 1.0).unwrap();
            let m = discretize_kernel(&k).unwrap();
            let a = OrderedVec::constant(n, 1.0).unwrap();
            let bound = matrix_gronwall(&m, &a, 1.0).unwrap().bound;
            let exact = classic_bound(1.0, 1.0, &g).unwrap();
            let err = bound.sub(&exact).unwrap().sup_norm();
            assert!(err < 4.0 * g.step());
            assert!(err < prev_err);
            prev_err = err;
        }
    }

    #[test]
    fn iterated_kernels_constant_closed_form() {
        // k_n(t,s) = B^n (t-s)^{n-1} / (n-1)! for constant kernels
        let g = unit_grid(41);
        let b = 1.3f64;
        let k = VolterraKernel::constant(g.clone(), b).unwrap();
        let tables = iterated_kernels(&k, 4).unwrap();
        let mut factorial = 1.0;
        for (idx, table) in tables.iter().enumerate() {
            let n = idx + 1;
            if n > 1 {
                factorial *= (n - 1) as f64;
            }
            for i in 0..g.len() {
                for j in 0..=i {
                    let dt: f64 = g.node(i) - g.node(j);
                    let exact = b.powi(n as i32) * dt.powi(n as i32 - 1) / factorial;
                    // composite trapezoid error: O(h^2) per unit length, but
                    // only O(h^3) absolute right next to the diagonal
                    let tol = if n == 1 { 1e-14 } else { 5.0 * g.step().powi(2) * (dt + g.step()) };
                    assert!(
                        (table.get(i, j) - exact).abs() < tol,
                        "k_{n} at ({i},{j}): {} vs {exact}",
                        table.get(i, j)
                    );
                }
            }
        }
    }

    #[test]
    fn iterated_kernels_first_is_kernel_itself() {
        let g = unit_grid(9);
        let k = VolterraKernel::from_closure(g.clone(), |t, s| (t + s).sin().abs()).unwrap();
        let tables = iterated_kernels(&k, 1).unwrap();
        assert_eq!(tables.len(), 1);
        for i in 0..9 {
            for j in 0..=i {
                assert_eq!(tables[0].get(i, j), k.eval(i, j));
            }
        }
    }

    #[test]
    fn iterated_kernels_factorial_envelope() {
        let g = unit_grid(31);
        let k = VolterraKernel::from_closure(g.clone(), |t, s| 0.5 + 0.5 * (3.0 * t * s).cos().abs())
            .unwrap();
        let kb = k.sup_norm_bound();
        let width = 1.0f64;
        let tables = iterated_kernels(&k, 6).unwrap();
        let mut factorial = 1.0;
        for (idx, table) in tables.iter().enumerate() {
            let n = idx + 1;
            if n > 1 {
                factorial *= (n - 1) as f64;
            }
            let envelope = kb.powi(n as i32) * width.powi(n as i32 - 1) / factorial;
            assert!(table.max_value() <= envelope * (1.0 + 1e-9) + 1e-12);
        }
    }

    #[test]
    fn resolvent_kernel_trivial_and_exponential() {
        let g = unit_grid(201);
        let zero = VolterraKernel::constant(g.clone(), 0.0).unwrap();
        let a = g.sample(|t| 1.0 + t).unwrap();
        let r = resolvent_kernel_bound(&zero, &a, 1e-10).unwrap();
        assert!(r.bound.sub(&a).unwrap().sup_norm() < 1e-14);

        // k = 1, A = 1: R(t,s) = e^{t-s}, bound(t) = e^t
        let one = VolterraKernel::constant(g.clone(), 1.0).unwrap();
        let ones = OrderedVec::constant(201, 1.0).unwrap();
        let r = resolvent_kernel_bound(&one, &ones, 1e-8).unwrap();
        let exact = classic_bound(1.0, 1.0, &g).unwrap();
        assert!(r.bound.sub(&exact).unwrap().sup_norm() < 1e-3 + 1e-8);
    }

    #[test]
    fn resolvent_kernel_agrees_with_matrix_route() {
        let g = unit_grid(101);
        let k = VolterraKernel::from_closure(g.clone(), |t, s| 0.4 + 0.3 * (t - s)).unwrap();
        let a = g.sample(|t| 1.0 + 0.5 * t).unwrap();
        let series = resolvent_kernel_bound(&k, &a, 1e-9).unwrap();
        let m = discretize_kernel(&k).unwrap();
        let matrix = matrix_gronwall(&m, &a, 1.0).unwrap();
        let gap = series.bound.sub(&matrix.bound).unwrap().sup_norm();
        assert!(gap < 10.0 * g.step() + 1e-9, "gap {gap}");
    }

    #[test]
    fn hat_majorant_examples() {
        let g = unit_grid(51);
        // monotone data: running maxes change nothing
        let k = VolterraKernel::from_closure(g.clone(), |t, s| t + s).unwrap();
        let a = g.sample(|t| t).unwrap();
        let r = hat_majorant_bound(&k, &a).unwrap();
        let table = k.table();
        for i in 0..51 {
            let row: Vec<f64> = (0..=i).map(|j| table.get(i, j)).collect();
            let integral = trapezoid_segment(&g, &row, 0, i);
            assert!((r.bound[i] - a[i] * integral.exp()).abs() < 1e-12);
        }
        // constant data: equals the classic bound
        let kc = VolterraKernel::constant(g.clone(), 0.8).unwrap();
        let ac = OrderedVec::constant(51, 2.0).unwrap();
        let r = hat_majorant_bound(&kc, &ac).unwrap();
        let exact = classic_bound(2.0, 0.8, &g).unwrap();
        assert!(r.bound.sub(&exact).unwrap().sup_norm() < 1e-12);
    }

    #[test]
    fn hat_dominates_resolvent_bound() {
        let g = unit_grid(101);
        let k = VolterraKernel::from_closure(g.clone(), |t, s| 0.5 + 0.4 * ((2.0 * t).sin() * s).abs())
            .unwrap();
        let a = g.sample(|t| 1.0 + 0.3 * (4.0 * t).sin().abs()).unwrap();
        let sharp = resolvent_kernel_bound(&k, &a, 1e-9).unwrap();
        let hat = hat_majorant_bound(&k, &a).unwrap();
        assert!(sharp.bound.leq(&hat.bound, 1e-6).unwrap());
    }

    #[test]
    fn quasinilpotence_probe() {
        let g = unit_grid(100);
        let k = VolterraKernel::constant(g.clone(), 1.0).unwrap();
        let report = quasinilpotence_check(&k, 20).unwrap();
        assert!(report.decreasing_to_zero);
        assert!(report.gelfand_values[19] < 0.3);

        let zero = VolterraKernel::constant(g, 0.0).unwrap();
        let report = quasinilpotence_check(&zero, 5).unwrap();
        assert!(report.gelfand_values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn quasinilpotence_hits_zero_at_dimension() {
        let g = unit_grid(6);
        let k = VolterraKernel::constant(g, 2.0).unwrap();
        let report = quasinilpotence_check(&k, 8).unwrap();
        // strictly lower triangular 6x6: M^6 = 0
        assert_eq!(report.gelfand_values[5], 0.0);
        assert!(report.gelfand_values[4] > 0.0);
    }

    #[test]
    fn negative_kernel_rejected() {
        let g = unit_grid(5);
        assert!(matches!(
            VolterraKernel::from_closure(g, |t, s| t - s - 0.5),
            Err(Error::Invariant(_))
        ));
    }
}
