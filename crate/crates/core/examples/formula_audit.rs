// Puts the uncorrected reference expressions for the moments next to the
// corrected closed form and the Fock oracle.

use std::f64::consts::PI;

use tmsv_postselect::closed_form::moments_final;
use tmsv_postselect::closed_form::printed::printed_moments;
use tmsv_postselect::fock::run_oracle_adaptive;
use tmsv_postselect::moments::scaled_discrepancy_c;
use tmsv_postselect::ModelParams;

pub fn run() -> tmsv_postselect::Result<()> {
    let p = ModelParams::new(0.5, 0.5, PI / 3.0, 0.0)?;
    let printed = printed_moments(&p)?;
    let corrected = moments_final(&p)?;
    let oracle = run_oracle_adaptive(&p, 1e-12)?.moments;

    println!(
        "{:>7} {:>12} {:>12} {:>10}",
        "field", "printed", "corrected", "oracle gap"
    );
    for ((name, x), (_, y)) in printed
        .to_table()
        .entries()
        .into_iter()
        .zip(corrected.entries())
    {
        let z = oracle
            .entries()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|e| e.1)
            .unwrap_or_default();
        let flag = if scaled_discrepancy_c(x, y) > 1e-10 {
            "  <- differs"
        } else {
            ""
        };
        println!(
            "{name:>7} {:>12.6} {:>12.6} {:>10.1e}{flag}",
            x.re,
            y.re,
            scaled_discrepancy_c(y, z)
        );
    }
    for (pair, d) in printed.conjugate_violations(1e-10) {
        println!("not conjugate: {pair} ({d:.2e})");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmsv_postselect::Result<()> {
    run()
}
