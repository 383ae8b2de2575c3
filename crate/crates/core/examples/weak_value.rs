// Weak value, branch overlap and postselection probability across the
// preselection angle.

use std::f64::consts::PI;

use tmsv_postselect::model::{normalization, ModelParams};

pub fn run() -> tmsv_postselect::Result<()> {
    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10}",
        "alpha", "Re w", "beta", "kappa", "p_post"
    );
    for alpha in [0.0, PI / 3.0, 2.0 * PI / 3.0, 8.0 * PI / 9.0] {
        let p = ModelParams::new(0.5, 0.5, alpha, 0.0)?;
        let w = p.weak_value()?;
        let n = normalization(&p, &w);
        println!(
            "{:>8.4} {:>10.5} {:>10.5} {:>10.5} {:>10.5}",
            alpha, w.re, n.beta, n.kappa, n.p_post
        );
    }

    // A phase rotates w off the real axis without changing |w|.
    let w = ModelParams::new(0.5, 0.5, PI / 3.0, PI / 4.0)?.weak_value()?;
    println!(
        "delta=pi/4: w = {:.5} + {:.5}i, |w|^2 = {:.5}",
        w.re, w.im, w.modulus_sq
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmsv_postselect::Result<()> {
    run()
}
