//! Maximum principle for `-x'' <= B x` on (0,1) with Dirichlet data: below
//! the first eigenvalue the premises force `x <= 0`; at `B = 1.5 lambda_1`
//! the first eigenfunction is an explicit counterexample, so the threshold
//! is not an artifact of the method.

use gronwall::laplace::{max_principle_check, DirichletLaplacian1D};
use gronwall::lattice::OrderedVec;

fn main() -> gronwall::Result<()> {
    let op = DirichletLaplacian1D::new(100)?;
    println!(
        "lambda_1 = {:.8} (continuum value pi^2 = {:.8})",
        op.lambda1(),
        std::f64::consts::PI.powi(2)
    );

    // a compliant instance: x = -green * f for f >= 0
    let f = OrderedVec::constant(op.interior_nodes(), 1.0)?;
    let x = op.green_apply(&f)?.neg();
    let out = max_principle_check(&op, &x, (0.0, 0.0), 0.5 * op.lambda1(), 1e-10)?;
    println!(
        "B = lambda_1/2: premises hold = {}, conclusion holds = {}",
        out.premises_hold, out.conclusion_holds
    );

    // past the threshold the checker refuses, and rightly so: the first
    // eigenfunction satisfies the premises while being positive everywhere
    let b_bad = 1.5 * op.lambda1();
    match max_principle_check(&op, op.first_eigvec(), (0.0, 0.0), b_bad, 1e-10) {
        Err(e) => println!("B = 1.5 lambda_1: {e}"),
        Ok(_) => unreachable!(),
    }
    let v1 = op.first_eigvec();
    let lap = op.apply_laplacian(v1, (0.0, 0.0))?;
    let premises = lap.leq(&v1.scale(b_bad)?, 1e-9)?;
    let conclusion = v1.leq(&OrderedVec::zeros(op.interior_nodes()), 1e-9)?;
    println!(
        "witness x = v_1: -x'' <= 1.5 lambda_1 x holds = {premises}, x <= 0 holds = {conclusion}"
    );
    Ok(())
}
