//! Finite-dimensional Banach-lattice primitives: grid functions with the
//! componentwise order, join/meet, absolute value and the sup norm.
//!
//! The lattice is realized concretely as R^n. Infinite-dimensional spaces
//! (C[a,b] and friends) enter only through grid refinement.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Uniform grid on `[a, b]` with `n >= 2` nodes, `nodes[0] = a`,
/// `nodes[n-1] = b`, step `h = (b - a)/(n - 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    a: f64,
    b: f64,
    n: usize,
    nodes: Vec<f64>,
}

impl Grid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Invariant("grid endpoints must be finite".into()));
        }
        if b <= a {
            return Err(Error::Parameter(format!("grid requires b > a, got a={a}, b={b}")));
        }
        if n < 2 {
            return Err(Error::Parameter(format!("grid requires n >= 2 nodes, got {n}")));
        }
        let h = (b - a) / (n - 1) as f64;
        let mut nodes: Vec<f64> = (0..n).map(|i| a + i as f64 * h).collect();
        // pin the right endpoint exactly
        nodes[n - 1] = b;
        Ok(Grid { a, b, n, nodes })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.b - self.a) / (self.n - 1) as f64
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    /// Evaluate a scalar function at every node.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Result<OrderedVec> {
        OrderedVec::new(self.nodes.iter().map(|&t| f(t)).collect())
    }
}

/// A finite vector carrying the componentwise lattice order.
///
/// All entries are finite by construction; NaN and infinities are rejected
/// eagerly because the partial order is meaningless with them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct OrderedVec(Vec<f64>);

impl TryFrom<Vec<f64>> for OrderedVec {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        OrderedVec::new(v)
    }
}

impl From<OrderedVec> for Vec<f64> {
    fn from(v: OrderedVec) -> Vec<f64> {
        v.0
    }
}

impl OrderedVec {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Invariant(format!("non-finite component {bad} in vector")));
        }
        Ok(OrderedVec(values))
    }

    pub fn zeros(n: usize) -> Self {
        OrderedVec(vec![0.0; n])
    }

    pub fn constant(n: usize, v: f64) -> Result<Self> {
        OrderedVec::new(vec![v; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    fn check_len(&self, other: &OrderedVec) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }

    /// Componentwise supremum `x v y`.
    pub fn join(&self, other: &OrderedVec) -> Result<OrderedVec> {
        self.check_len(other)?;
        Ok(OrderedVec(
            self.iter().zip(other.iter()).map(|(&x, &y)| x.max(y)).collect(),
        ))
    }

    /// Componentwise infimum, by De Morgan's law: `x ^ y = -((-x) v (-y))`.
    pub fn meet(&self, other: &OrderedVec) -> Result<OrderedVec> {
        self.neg().join(&other.neg()).map(|v| v.neg())
    }

    /// Lattice absolute value `|x| = x v (-x)`.
    pub fn abs_val(&self) -> OrderedVec {
        self.join(&self.neg()).expect("same length")
    }

    /// Tolerance-relaxed partial order: `x_i <= y_i + tol` for all i.
    pub fn leq(&self, other: &OrderedVec, tol: f64) -> Result<bool> {
        self.check_len(other)?;
        if !(tol >= 0.0) {
            return Err(Error::Parameter(format!("tolerance must be nonnegative, got {tol}")));
        }
        Ok(self.iter().zip(other.iter()).all(|(&x, &y)| x <= y + tol))
    }

    /// `max_i |x_i|`. Coincides with `sup_norm(abs_val(x))`.
    pub fn sup_norm(&self) -> f64 {
        self.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }

    pub fn neg(&self) -> OrderedVec {
        OrderedVec(self.iter().map(|&x| -x).collect())
    }

    pub fn add(&self, other: &OrderedVec) -> Result<OrderedVec> {
        self.check_len(other)?;
        OrderedVec::new(self.iter().zip(other.iter()).map(|(&x, &y)| x + y).collect())
    }

    pub fn sub(&self, other: &OrderedVec) -> Result<OrderedVec> {
        self.check_len(other)?;
        OrderedVec::new(self.iter().zip(other.iter()).map(|(&x, &y)| x - y).collect())
    }

    pub fn scale(&self, c: f64) -> Result<OrderedVec> {
        OrderedVec::new(self.iter().map(|&x| c * x).collect())
    }

    /// Componentwise positive part `max(x_i, 0)`.
    pub fn pos_part(&self) -> OrderedVec {
        OrderedVec(self.iter().map(|&x| x.max(0.0)).collect())
    }
}

impl std::ops::Index<usize> for OrderedVec {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}
