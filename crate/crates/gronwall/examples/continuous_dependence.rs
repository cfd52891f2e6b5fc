//! Uniqueness and continuous dependence for the semilinear problem: two
//! residual-checked solutions must coincide, and perturbing the kernel
//! element `x0` moves the solution by at most `(I - CK)^{-1} |x0 - x0_hat|`.

use gronwall::lattice::{Grid, OrderedVec};
use gronwall::semilinear::{
    continuous_dependence_bound, cumulative_integration_matrix, picard_solve,
    uniqueness_certificate, Nonlinearity, QuadRule, SemilinearProblem,
};

fn main() -> gronwall::Result<()> {
    let n = 200;
    let grid = Grid::new(0.0, 1.0, n)?;
    let k = cumulative_integration_matrix(&grid, QuadRule::AdamsBashforth2)?;
    let p = SemilinearProblem::new(
        k.clone(),
        OrderedVec::constant(n, 1.0)?,
        Nonlinearity::Scale(1.0),
        1.0,
    )?;

    let sol = picard_solve(&p, 1e-13, 5000)?;
    let again = picard_solve(&p, 1e-13, 5000)?;
    let unique = uniqueness_certificate(&p, &sol.x, &again.x, 1e-10)?;
    println!(
        "two solves of x' = x: both residual-checked = {}, coincide = {}",
        unique.both_solutions, unique.coincide
    );

    let x0_hat = OrderedVec::constant(n, 1.1)?;
    let p_hat = SemilinearProblem { x0: x0_hat.clone(), ..p.clone() };
    let x_hat = picard_solve(&p_hat, 1e-13, 5000)?.x;
    let bound = continuous_dependence_bound(&p, &x0_hat)?;
    let actual = sol.x.sub(&x_hat)?.abs_val();
    println!("\nperturb x(0) from 1 to 1.1; |difference| vs certified bound:");
    println!("{:>5} {:>12} {:>12}", "t", "actual", "bound");
    for i in (0..n).step_by(40) {
        println!("{:>5.2} {:>12.6} {:>12.6}", grid.node(i), actual[i], bound[i]);
    }
    println!(
        "dominated at every node: {}",
        actual.leq(&bound, 1e-6)?
    );
    Ok(())
}
