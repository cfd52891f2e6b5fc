//! Continuous Volterra bounds: the sharp resolvent-kernel series with a
//! certified truncation tail, the cruder running-max (hat) majorant, and the
//! Gelfand quasinilpotence probe for the discretized kernel operator.

use gronwall::lattice::Grid;
use gronwall::volterra::{
    hat_majorant_bound, quasinilpotence_check, resolvent_kernel_bound, VolterraKernel,
};

fn main() -> gronwall::Result<()> {
    let n = 101;
    let grid = Grid::new(0.0, 1.0, n)?;
    // k(t, s) = (1.5 - 0.5 t) * (1 + s): smooth, nonnegative, nonseparated
    let kernel = VolterraKernel::from_closure(grid.clone(), |t, s| (1.5 - 0.5 * t) * (1.0 + s))?;
    let a = grid.sample(|t| 1.0 + 0.5 * t)?;

    let sharp = resolvent_kernel_bound(&kernel, &a, 1e-10)?;
    let hat = hat_majorant_bound(&kernel, &a)?;
    println!("x(t) <= A(t) + int_0^t k(t,s) x(s) ds");
    println!("certified series tail: {:.3e}", sharp.tail_bound.unwrap());
    println!("{:>5} {:>12} {:>12}", "t", "sharp", "hat majorant");
    for i in (0..n).step_by(20) {
        println!("{:>5.2} {:>12.5} {:>12.5}", grid.node(i), sharp.bound[i], hat.bound[i]);
    }
    let ordered = sharp.bound.leq(&hat.bound, 1e-9 * hat.bound.sup_norm())?;
    println!("sharp <= hat at every node: {ordered}");

    let probe = quasinilpotence_check(&kernel, 8)?;
    println!("\nGelfand values ||M^m||^(1/m) of the discretized operator:");
    for (m, v) in probe.gelfand_values.iter().enumerate() {
        println!("  m = {:>2}   {v:.6e}", m + 1);
    }
    println!("decreasing toward zero: {}", probe.decreasing_to_zero);
    Ok(())
}
