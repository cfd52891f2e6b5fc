//! Certified numerical bounds for Gronwall-type inequalities on ordered
//! vector data.
//!
//! The crate turns one structural observation into computable certificates:
//! an inequality `s x <= A + K x` with a nonnegative coupling `K` and
//! `s > rho_K` forces the sharp bound `x <= (sI - K)^{-1} A`. Everything
//! else here is an instantiation of that principle:
//!
//! - [`discrete`] — sequence inequalities `x_i <= A_i + C_i sum_{j<i} B_j x_j`
//!   via closed forms and a nilpotent proof matrix;
//! - [`volterra`] — continuous kernels `x(t) <= A(t) + int_a^t k(t,s) x(s) ds`
//!   via resolvent-kernel series and running-max majorants;
//! - [`laplace`] — the 1D Dirichlet Laplacian, its Green operator, and a
//!   maximum-principle checker with the threshold `B < lambda_1`;
//! - [`semilinear`] — Picard iteration for `x = x0 + K N(x)` with
//!   uniqueness and continuous-dependence certificates;
//! - [`spectral`] — certified Perron-root brackets and three independent
//!   resolvent evaluation routes;
//! - [`cli`] — a JSON-spec frontend and seeded property suites.
//!
//! Start with the runnable programs in `examples/` — one per capability.

pub mod cli;
pub mod discrete;
pub mod error;
pub mod laplace;
pub mod lattice;
pub mod matrix;
pub mod report;
pub mod semilinear;
pub mod spectral;
pub mod volterra;

pub use error::{Error, Result};
pub use lattice::{Grid, OrderedVec};
pub use matrix::{Matrix, NonnegMatrix};
pub use report::{Admissibility, BoundReport, Method};
pub use spectral::SpectralBracket;
