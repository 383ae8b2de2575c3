// Analytic moment table of the postselected state, and how each moment
// splits into direct, odd, cross and odd-cross branch sums.

use std::f64::consts::PI;

use tmsv_postselect::closed_form::{moments_final, moments_initial, ClosedFormKernel, Op};
use tmsv_postselect::model::{normalization, ModelParams};

pub fn run() -> tmsv_postselect::Result<()> {
    let p = ModelParams::new(0.5, 0.5, PI / 3.0, 0.0)?;
    let m = moments_final(&p)?;
    for (name, z) in m.entries() {
        println!("{name:>7} = {:+.10} {:+.10}i", z.re, z.im);
    }

    let before = moments_initial(p.lambda);
    println!("n_a before {:.6}, after {:.6}", before.n_a, m.n_a);

    let w = p.weak_value()?;
    let norm = normalization(&p, &w);
    let t = ClosedFormKernel::new(p.s, p.lambda).terms(Op::A);
    println!(
        "<a> branches: direct {:.6} odd {:.6} cross {:.6} cross_odd {:.6} -> {:.6}",
        t.direct,
        t.odd,
        t.cross,
        t.cross_odd,
        t.combine(&norm, &w).re
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmsv_postselect::Result<()> {
    run()
}
