//! The classic Gronwall bound `x(t) <= A e^{B (t - a)}` for constant data:
//! any continuous solution of `x(t) <= A + B int_a^t x(s) ds` sits below the
//! exponential envelope, and the envelope itself is attained by the equality
//! case, so nothing sharper exists.

use gronwall::lattice::Grid;
use gronwall::volterra::classic_bound;

fn main() -> gronwall::Result<()> {
    let grid = Grid::new(0.0, 1.0, 11)?;
    let bound = classic_bound(1.0, 1.0, &grid)?;
    println!("x(t) <= 1 + int_0^t x  implies  x(t) <= e^t:");
    for i in 0..grid.len() {
        println!("  t = {:.1}   bound = {:.6}", grid.node(i), bound[i]);
    }
    println!(
        "endpoint vs e: {:+.3e}",
        bound[grid.len() - 1] - std::f64::consts::E
    );
    Ok(())
}
