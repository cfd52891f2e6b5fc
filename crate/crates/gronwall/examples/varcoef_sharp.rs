//! Variable-coefficient Gronwall inequality `x <= A + C int_a^t B x`: the
//! sharp bound versus the textbook majorant `A_hat e^{int B C_hat}`. For
//! A(t) = t, B = C = 1 the sharp bound is `e^t - 1`, visibly below the
//! majorant `t e^t`.

use gronwall::lattice::Grid;
use gronwall::volterra::{varcoef_sharp_bound, varcoef_simple_bound, CoefficientTriple};

fn main() -> gronwall::Result<()> {
    let n = 101;
    let grid = Grid::new(0.0, 1.0, n)?;
    let coef = CoefficientTriple::new(
        grid.clone(),
        grid.sample(|t| t)?,
        grid.sample(|_| 1.0)?,
        grid.sample(|_| 1.0)?,
    )?;
    let sharp = varcoef_sharp_bound(&coef)?;
    let simple = varcoef_simple_bound(&coef)?;

    println!("x(t) <= t + int_0^t x(s) ds");
    println!("{:>5} {:>12} {:>12} {:>12}", "t", "sharp", "e^t - 1", "simple");
    for i in (0..n).step_by(20) {
        let t = grid.node(i);
        println!(
            "{t:>5.2} {:>12.6} {:>12.6} {:>12.6}",
            sharp.bound[i],
            t.exp() - 1.0,
            simple.bound[i]
        );
    }
    println!("fixed-point residual of the sharp bound: {:.3e}", sharp.sharpness_residual.unwrap());
    Ok(())
}
