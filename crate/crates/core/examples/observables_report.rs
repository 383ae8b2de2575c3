// Every derived observable at one point, from both backends.

use std::f64::consts::PI;

use tmsv_postselect::observables::{compare_backends, report, Backend, REPORT_FIELDS};
use tmsv_postselect::ModelParams;

pub fn run() -> tmsv_postselect::Result<()> {
    let p = ModelParams::new(1.5, 0.5, 8.0 * PI / 9.0, 0.0)?;
    let c = compare_backends(&p, 1e-12)?;
    println!("{:>20} {:>18} {:>18}", "field", "closed", "oracle");
    for f in REPORT_FIELDS {
        let show = |v: Option<f64>| v.map_or("undefined".to_string(), |v| format!("{v:.12}"));
        println!(
            "{f:>20} {:>18} {:>18}",
            show(c.closed.report.get(f)),
            show(c.oracle.report.get(f))
        );
    }
    println!("worst: {} {:.2e}", c.worst_field, c.worst);

    // g2 and the CSI index have no value without cross-mode photons.
    let vacuum = report(
        &ModelParams::new(0.0, 0.5, PI / 3.0, 0.0)?,
        Backend::Closed,
        1e-12,
    )?;
    println!("lambda=0: g2_ab {:?}, i0 {:?}", vacuum.g2_ab, vacuum.i0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmsv_postselect::Result<()> {
    run()
}
