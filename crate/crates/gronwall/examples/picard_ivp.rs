//! Picard iteration for `x = x0 + K N(x)`, including a case the contraction
//! mapping theorem does not cover: for `x' = 5x` on [0,1] the product of
//! Lipschitz constant and operator norm exceeds 1, yet the cumulative
//! quadrature matrix is nilpotent and the iteration still converges.

use gronwall::lattice::{Grid, OrderedVec};
use gronwall::semilinear::{
    cumulative_integration_matrix, picard_solve, Nonlinearity, QuadRule, SemilinearProblem,
};

fn main() -> gronwall::Result<()> {
    let n = 400;
    let grid = Grid::new(0.0, 1.0, n)?;
    let k = cumulative_integration_matrix(&grid, QuadRule::AdamsBashforth2)?;

    for rate in [1.0, 5.0] {
        let p = SemilinearProblem::new(
            k.clone(),
            OrderedVec::constant(n, 1.0)?,
            Nonlinearity::Scale(rate),
            rate,
        )?;
        let product = p.lipschitz * k.as_matrix().inf_norm();
        let sol = picard_solve(&p, 1e-12, 5000)?;
        let exact = rate.exp();
        println!(
            "x' = {rate}x:  C*||K|| = {product:.2} ({}), {} iterations, x(1) = {:.6} (exact {exact:.6}, rel err {:.2e})",
            if product < 1.0 { "contraction" } else { "no contraction" },
            sol.trace.iterations,
            sol.x[n - 1],
            (sol.x[n - 1] - exact).abs() / exact,
        );
    }

    // a genuinely nonlinear right-hand side: x' = sin(x), x(0) = 1
    let p = SemilinearProblem::new(
        k.clone(),
        OrderedVec::constant(n, 1.0)?,
        Nonlinearity::Sin { amplitude: 1.0, frequency: 1.0 },
        1.0,
    )?;
    let sol = picard_solve(&p, 1e-12, 5000)?;
    // closed form: x(t) = 2 atan(tan(1/2) e^t)
    let exact = 2.0 * (0.5f64.tan() * 1.0f64.exp()).atan();
    println!(
        "x' = sin(x): x(1) = {:.8} (closed form {exact:.8})",
        sol.x[n - 1]
    );
    Ok(())
}
