//! Finite-dimensional Gronwall machinery: the matrix lemma, the classical
//! discrete inequality with closed-form products, the nilpotent proof matrix,
//! and a recursive brute-force oracle.
//!
//! Sequences use 0-based indices; the classical `a..b` indexing maps affinely
//! onto `0..n-1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::OrderedVec;
use crate::matrix::{Matrix, NonnegMatrix};
use crate::report::{Admissibility, BoundReport, Method};
use crate::spectral;

/// Data of the inequality `x_i <= A_i + C_i * sum_{j<i} B_j x_j`.
///
/// `b` has one entry fewer than `a` (coefficients act on the strict past);
/// `c` defaults to all ones.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscreteInequality {
    pub a: OrderedVec,
    pub b: OrderedVec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<OrderedVec>,
}

impl DiscreteInequality {
    pub fn new(a: OrderedVec, b: OrderedVec, c: Option<OrderedVec>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Parameter("sequence A must be nonempty".into()));
        }
        if b.len() + 1 != a.len() {
            return Err(Error::DimensionMismatch { left: a.len(), right: b.len() + 1 });
        }
        if b.iter().any(|&v| v < 0.0) {
            return Err(Error::Invariant("coefficients B must be nonnegative".into()));
        }
        if let Some(c) = &c {
            if c.len() != a.len() {
                return Err(Error::DimensionMismatch { left: a.len(), right: c.len() });
            }
            if c.iter().any(|&v| v < 0.0) {
                return Err(Error::Invariant("coefficients C must be nonnegative".into()));
            }
        }
        Ok(DiscreteInequality { a, b, c })
    }

    fn c_at(&self, i: usize) -> f64 {
        self.c.as_ref().map_or(1.0, |c| c[i])
    }
}

/// Sharp matrix bound: any `x` with `x <= A + B*K*x` componentwise satisfies
/// `x <= (I - BK)^{-1} A`, provided `B * rho_K < 1`.
pub fn matrix_gronwall(k: &NonnegMatrix, a: &OrderedVec, b: f64) -> Result<BoundReport> {
    if !(b > 0.0) {
        return Err(Error::Parameter(format!("factor B must be positive, got {b}")));
    }
    if a.len() != k.dim() {
        return Err(Error::DimensionMismatch { left: k.dim(), right: a.len() });
    }
    let bracket = k.spectral_bracket();
    let b_rho = b * bracket.upper;
    if b_rho >= 1.0 {
        return Err(Error::Admissibility(format!(
            "matrix Gronwall requires B*rho_K < 1; got B*rho_K >= {b_rho}"
        )));
    }
    // (I - BK)^{-1} A = (1/B) * ((1/B) I - K)^{-1} A
    let bound = spectral::resolvent_direct(k, 1.0 / b, a)?.scale(1.0 / b)?;
    let residual = bound
        .sub(&a.add(&k.apply(&bound)?.scale(b)?)?)?
        .sup_norm();
    Ok(BoundReport {
        bound,
        method: Method::MatrixSharp,
        admissibility: Admissibility { b_times_rho_upper: b_rho, admissible: true },
        sharpness_residual: Some(residual),
        tail_bound: None,
    })
}

/// Strictly lower-triangular matrix from the proof of the discrete lemma:
/// row `i` carries `B_0 .. B_{i-1}` and zeros elsewhere. Nilpotent, so its
/// spectral bracket contains 0.
pub fn build_proof_matrix(b: &OrderedVec) -> Result<NonnegMatrix> {
    if b.iter().any(|&v| v < 0.0) {
        return Err(Error::Invariant("coefficients B must be nonnegative".into()));
    }
    let n = b.len() + 1;
    let mut m = Matrix::zeros(n);
    for i in 1..n {
        for j in 0..i {
            m.set(i, j, b[j]);
        }
    }
    NonnegMatrix::new(m)
}

/// Closed-form discrete Gronwall bound
/// `A_i + C_i * sum_{j<i} A_j B_j prod_{s=j+1}^{i-1} (1 + B_s C_s)`,
/// with the empty product equal to 1.
pub fn discrete_bound(ineq: &DiscreteInequality) -> Result<BoundReport> {
    let n = ineq.a.len();
    let mut bound = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..i {
            let mut prod = 1.0;
            for s in j + 1..i {
                prod *= 1.0 + ineq.b[s] * ineq.c_at(s);
            }
            acc += ineq.a[j] * ineq.b[j] * prod;
        }
        bound.push(ineq.a[i] + ineq.c_at(i) * acc);
    }
    let bound = OrderedVec::new(bound)?;
    // the bound solves the recursion with equality, so its defect against
    // the discretized operator is pure roundoff
    let mut residual = 0.0f64;
    for i in 0..n {
        let coupled: f64 = (0..i).map(|j| ineq.b[j] * bound[j]).sum();
        residual = residual.max((bound[i] - ineq.a[i] - ineq.c_at(i) * coupled).abs());
    }
    Ok(BoundReport {
        bound,
        method: if ineq.c.is_some() { Method::DiscreteVarcoef } else { Method::DiscreteClosedForm },
        admissibility: Admissibility::nilpotent(),
        sharpness_residual: Some(residual),
        tail_bound: None,
    })
}

/// Independent oracle: the extremal sequence solving the recursion with
/// equality, `Y_0 = A_0`, `Y_i = A_i + C_i * sum_{j<i} B_j Y_j`.
pub fn brute_force_discrete(ineq: &DiscreteInequality) -> Result<OrderedVec> {
    let n = ineq.a.len();
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let coupled: f64 = (0..i).map(|j| ineq.b[j] * y[j]).sum();
        y.push(ineq.a[i] + ineq.c_at(i) * coupled);
    }
    OrderedVec::new(y)
}

/// Feasibility/boundedness check for a candidate `x` against the sharp
/// matrix bound. Contract: `feasible` implies `bounded` whenever the
/// hypothesis `B*rho_K < 1` holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutcome {
    pub feasible: bool,
    pub bounded: bool,
}

pub fn verify_bound(
    k: &NonnegMatrix,
    a: &OrderedVec,
    b: f64,
    x: &OrderedVec,
    tol: f64,
) -> Result<VerifyOutcome> {
    let rhs = a.add(&k.apply(x)?.scale(b)?)?;
    let feasible = x.leq(&rhs, tol)?;
    let report = matrix_gronwall(k, a, b)?;
    let bounded = x.leq(&report.bound, tol)?;
    Ok(VerifyOutcome { feasible, bounded })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand::Rng as _;
    use rand_chacha::ChaCha8Rng;

    fn vec_of(v: &[f64]) -> OrderedVec {
        OrderedVec::new(v.to_vec()).unwrap()
    }

    #[test]
    fn matrix_gronwall_zero_coupling() {
        let k = NonnegMatrix::zero(3);
        let a = vec_of(&[1.0, -0.5, 2.0]);
        let r = matrix_gronwall(&k, &a, 1.0).unwrap();
        assert!(r.bound.sub(&a).unwrap().sup_norm() < 1e-14);
        assert_eq!(r.method, Method::MatrixSharp);
    }

    #[test]
    fn matrix_gronwall_forward_substitution() {
        let k = NonnegMatrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let r = matrix_gronwall(&k, &vec_of(&[1.0, 1.0]), 1.0).unwrap();
        assert!((r.bound[0] - 1.0).abs() < 1e-12);
        assert!((r.bound[1] - 2.0).abs() < 1e-12);
        assert!(r.sharpness_residual.unwrap() < 1e-12);
    }

    #[test]
    fn matrix_gronwall_rejects_inadmissible() {
        let k = NonnegMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let a = vec_of(&[1.0, 1.0]);
        assert!(matches!(matrix_gronwall(&k, &a, 0.5), Err(Error::Admissibility(_))));
    }

    #[test]
    fn proof_matrix_shapes() {
        let m = build_proof_matrix(&vec_of(&[0.7])).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.get(1, 0), 0.7);
        assert_eq!(m.get(0, 0), 0.0);
        assert_eq!(m.get(0, 1), 0.0);
        let empty = build_proof_matrix(&OrderedVec::zeros(0)).unwrap();
        assert_eq!(empty.dim(), 1);
        assert_eq!(empty.get(0, 0), 0.0);
    }

    #[test]
    fn proof_matrix_nilpotent() {
        let m = build_proof_matrix(&vec_of(&[1.0, 1.0])).unwrap();
        let m2 = m.as_matrix().matmul(m.as_matrix());
        let m3 = m2.matmul(m.as_matrix());
        assert_eq!(m3.inf_norm(), 0.0);
        let b = m.spectral_bracket();
        assert!(b.lower <= 0.0 + 1e-15 && b.upper >= 0.0);
    }

    #[test]
    fn discrete_bound_examples() {
        // recursive oracle: x0 <= 1, x1 <= 1+x0 = 2, x2 <= 1+x0+x1 = 4
        let ineq = DiscreteInequality::new(vec_of(&[1.0, 1.0, 1.0]), vec_of(&[1.0, 1.0]), None).unwrap();
        let r = discrete_bound(&ineq).unwrap();
        assert_eq!(r.bound.as_slice(), &[1.0, 2.0, 4.0]);
        assert_eq!(brute_force_discrete(&ineq).unwrap().as_slice(), &[1.0, 2.0, 4.0]);

        // B = 0 leaves A unchanged
        let flat = DiscreteInequality::new(vec_of(&[2.0, 3.0]), vec_of(&[0.0]), None).unwrap();
        assert_eq!(discrete_bound(&flat).unwrap().bound.as_slice(), &[2.0, 3.0]);

        // one-step variable-C recursion by hand: [1, 1 + c2*b]
        let var = DiscreteInequality::new(
            vec_of(&[1.0, 1.0]),
            vec_of(&[0.5]),
            Some(vec_of(&[0.3, 2.0])),
        )
        .unwrap();
        let r = discrete_bound(&var).unwrap();
        assert_eq!(r.bound.as_slice(), &[1.0, 1.0 + 2.0 * 0.5]);
        assert_eq!(r.method, Method::DiscreteVarcoef);
    }

    #[test]
    fn brute_force_homogeneous_zero() {
        let ineq = DiscreteInequality::new(OrderedVec::zeros(4), vec_of(&[1.0, 2.0, 0.5]), None).unwrap();
        assert_eq!(brute_force_discrete(&ineq).unwrap().as_slice(), &[0.0; 4]);
    }

    #[test]
    fn three_routes_agree_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(2..=20);
            let a = vec_of(&(0..n).map(|_| rng.gen_range(0.0..2.0)).collect::<Vec<_>>());
            let b = vec_of(&(0..n - 1).map(|_| rng.gen_range(0.0..2.0)).collect::<Vec<_>>());
            let ineq = DiscreteInequality::new(a.clone(), b.clone(), None).unwrap();
            let closed = discrete_bound(&ineq).unwrap().bound;
            let brute = brute_force_discrete(&ineq).unwrap();
            let via_matrix = matrix_gronwall(&build_proof_matrix(&b).unwrap(), &a, 1.0).unwrap().bound;
            let scale = closed.sup_norm().max(1.0);
            assert!(closed.sub(&brute).unwrap().sup_norm() <= 1e-12 * scale);
            assert!(closed.sub(&via_matrix).unwrap().sup_norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn verify_bound_fixed_point_and_slack() {
        let k = NonnegMatrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let a = vec_of(&[1.0, 1.0]);
        let report = matrix_gronwall(&k, &a, 1.0).unwrap();
        let out = verify_bound(&k, &a, 1.0, &report.bound, 1e-10).unwrap();
        assert!(out.feasible && out.bounded);

        let z = NonnegMatrix::zero(2);
        let shifted = vec_of(&[0.5, 0.5]);
        let out = verify_bound(&z, &a, 1.0, &shifted, 0.0).unwrap();
        assert!(out.feasible && out.bounded);
    }

    #[test]
    fn maximum_principle_constructive() {
        // x = P + B*K*x + K*g with P <= 0, g <= 0 implies x <= 0
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let n = rng.gen_range(2..=8);
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(0.0..1.0)).collect())
                .collect();
            let k = NonnegMatrix::from_rows(&rows).unwrap();
            let b = rng.gen_range(0.0..0.95) / k.spectral_bracket().upper.max(1e-6);
            if b <= 0.0 {
                continue;
            }
            let p = vec_of(&(0..n).map(|_| -rng.gen_range(0.0..1.0)).collect::<Vec<_>>());
            let g = vec_of(&(0..n).map(|_| -rng.gen_range(0.0..1.0)).collect::<Vec<_>>());
            // solve (I - BK) x = P + K g
            let rhs = p.add(&k.apply(&g).unwrap()).unwrap();
            let x = spectral::resolvent_direct(&k, 1.0 / b, &rhs)
                .unwrap()
                .scale(1.0 / b)
                .unwrap();
            assert!(x.leq(&OrderedVec::zeros(n), 1e-9).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn feasible_implies_bounded(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(2..=10);
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(0.0..1.0)).collect())
                .collect();
            let k = NonnegMatrix::from_rows(&rows).unwrap();
            let b = 0.5 / k.spectral_bracket().upper.max(0.5);
            let a = vec_of(&(0..n).map(|_| rng.gen_range(0.0..2.0)).collect::<Vec<_>>());
            // constructive feasible point: x = (I-BK)^{-1}(A - w), w >= 0
            let w = vec_of(&(0..n).map(|_| rng.gen_range(0.0..1.0)).collect::<Vec<_>>());
            let x = spectral::resolvent_direct(&k, 1.0 / b, &a.sub(&w).unwrap())
                .unwrap()
                .scale(1.0 / b)
                .unwrap();
            let out = verify_bound(&k, &a, b, &x, 1e-9).unwrap();
            prop_assert!(out.feasible);
            prop_assert!(out.bounded);
        }

        #[test]
        fn bound_monotone_in_data(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(2..=10);
            let a = vec_of(&(0..n).map(|_| rng.gen_range(0.0..2.0)).collect::<Vec<_>>());
            let b = vec_of(&(0..n - 1).map(|_| rng.gen_range(0.0..2.0)).collect::<Vec<_>>());
            let bigger_a = a.add(&OrderedVec::constant(n, 0.3).unwrap()).unwrap();
            let bigger_b = b.add(&OrderedVec::constant(n - 1, 0.3).unwrap()).unwrap();
            let base = discrete_bound(&DiscreteInequality::new(a.clone(), b.clone(), None).unwrap()).unwrap();
            let more_a = discrete_bound(&DiscreteInequality::new(bigger_a, b, None).unwrap()).unwrap();
            let more_b = discrete_bound(&DiscreteInequality::new(a, bigger_b, None).unwrap()).unwrap();
            prop_assert!(base.bound.leq(&more_a.bound, 1e-9).unwrap());
            prop_assert!(base.bound.leq(&more_b.bound, 1e-9).unwrap());
        }
    }
}
