//! Discrete Gronwall bound three ways: the closed-form product formula, the
//! extremal recursion, and the matrix route through the nilpotent proof
//! matrix. All three agree to roundoff.

use gronwall::discrete::{
    brute_force_discrete, build_proof_matrix, discrete_bound, matrix_gronwall, DiscreteInequality,
};
use gronwall::lattice::OrderedVec;

fn main() -> gronwall::Result<()> {
    let a = OrderedVec::new(vec![1.0, 1.0, 1.0, 1.0, 1.0])?;
    let b = OrderedVec::new(vec![1.0, 1.0, 0.5, 2.0])?;
    let ineq = DiscreteInequality::new(a.clone(), b.clone(), None)?;

    let closed = discrete_bound(&ineq)?;
    let brute = brute_force_discrete(&ineq)?;
    let k = build_proof_matrix(&b)?;
    let via_matrix = matrix_gronwall(&k, &a, 1.0)?;

    println!("x_i <= 1 + sum_(j<i) B_j x_j with B = [1, 1, 0.5, 2]");
    println!("{:>4} {:>12} {:>12} {:>12}", "i", "closed form", "recursion", "matrix route");
    for i in 0..a.len() {
        println!(
            "{:>4} {:>12.4} {:>12.4} {:>12.4}",
            i, closed.bound[i], brute[i], via_matrix.bound[i]
        );
    }
    println!(
        "\nproof matrix is nilpotent: certified rho_K in [{:.2e}, {:.2e}]",
        k.spectral_bracket().lower,
        k.spectral_bracket().upper
    );
    Ok(())
}
