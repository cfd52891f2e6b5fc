//! Three independent routes to the resolvent value `(sI - K)^{-1} A`:
//! a direct pivoted solve, the truncated Laplace integral of the matrix
//! exponential, and the Neumann series. Their agreement is the library's
//! working definition of "the right answer".

use gronwall::lattice::OrderedVec;
use gronwall::matrix::NonnegMatrix;
use gronwall::spectral::{neumann_resolvent, resolvent_direct, resolvent_laplace, resolvent_residual};

fn main() -> gronwall::Result<()> {
    let k = NonnegMatrix::from_rows(&[vec![0.3, 0.6], vec![0.5, 0.2]])?;
    let a = OrderedVec::new(vec![1.0, 2.0])?;
    let bracket = k.spectral_bracket();
    let s = 2.0 * bracket.upper + 1.0;
    println!("rho_K in [{:.10}, {:.10}], s = {s:.6}", bracket.lower, bracket.upper);

    let direct = resolvent_direct(&k, s, &a)?;
    let laplace = resolvent_laplace(&k, s, &a, 40.0, 2000)?;
    let neumann = neumann_resolvent(&k, s, &a, 10_000, 1e-14)?;

    println!("direct : {:?}", direct.as_slice());
    println!("laplace: {:?}", laplace.as_slice());
    println!("neumann: {:?}", neumann.as_slice());
    println!("laplace gap: {:.3e}", laplace.sub(&direct)?.sup_norm());
    println!("neumann gap: {:.3e}", neumann.sub(&direct)?.sup_norm());
    println!("relative residual of direct: {:.3e}", resolvent_residual(&k, s, &a, &direct)?);

    // below the spectral bound the hypothesis fails and every route refuses
    match resolvent_direct(&k, 0.5, &a) {
        Err(e) => println!("s = 0.5: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
