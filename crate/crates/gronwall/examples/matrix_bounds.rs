//! Sharp matrix bound: a componentwise inequality `x <= A + B K x` with a
//! nonnegative coupling matrix forces `x <= (I - BK)^{-1} A`, provided the
//! certified Perron-root bracket confirms `B rho_K < 1`. Push B past the
//! threshold and the admissibility gate refuses to produce a bound.

use gronwall::discrete::matrix_gronwall;
use gronwall::lattice::OrderedVec;
use gronwall::matrix::NonnegMatrix;

fn main() -> gronwall::Result<()> {
    let k = NonnegMatrix::from_rows(&[
        vec![0.0, 0.5, 0.1],
        vec![0.2, 0.0, 0.4],
        vec![0.1, 0.3, 0.0],
    ])?;
    let a = OrderedVec::new(vec![1.0, 2.0, 0.5])?;
    let bracket = k.spectral_bracket();
    println!(
        "certified Perron root bracket: [{:.12}, {:.12}]",
        bracket.lower, bracket.upper
    );

    for b in [1.0, 1.5, 2.5] {
        match matrix_gronwall(&k, &a, b) {
            Ok(report) => println!(
                "B = {b}: bound = {:?}  (B*rho <= {:.4}, fixed-point residual {:.2e})",
                report.bound.as_slice(),
                report.admissibility.b_times_rho_upper,
                report.sharpness_residual.unwrap(),
            ),
            Err(e) => println!("B = {b}: {e}"),
        }
    }
    Ok(())
}
