// Brute-force evaluation in a truncated Fock basis: cutoff choice, the
// state itself, and agreement with the closed form.

use std::f64::consts::PI;

use tmsv_postselect::closed_form::moments_final;
use tmsv_postselect::fock::{
    build_final_state, choose_truncation, run_oracle, run_oracle_adaptive,
};
use tmsv_postselect::model::ModelParams;

pub fn run() -> tmsv_postselect::Result<()> {
    let p = ModelParams::new(1.0, 0.5, 2.0 * PI / 3.0, PI / 4.0)?;

    let spec = choose_truncation(&p, 1e-12)?;
    let (state, p_post) = build_final_state(&p, &spec)?;
    println!(
        "n_max {} ({}x{} amplitudes), p_post {:.8}, edge mass {:.2e}",
        spec.n_max,
        spec.dim(),
        spec.dim(),
        p_post,
        state.edge_mass()
    );

    let run = run_oracle_adaptive(&p, 1e-12)?;
    let closed = moments_final(&p)?;
    let (field, d) = closed.max_discrepancy(&run.moments);
    println!("largest closed/oracle gap: {field} {d:.2e}");

    // Doubling the cutoff should not move anything.
    let doubled = run_oracle(&p, &spec.doubled())?;
    let (field, d) = run.moments.max_discrepancy(&doubled.moments);
    println!(
        "n_max {} -> {}: {field} moved {d:.2e}",
        run.spec.n_max, doubled.spec.n_max
    );
    println!("fidelity with input {:.10}", run.fidelity);
    Ok(())
}

#[allow(dead_code)]
fn main() -> tmsv_postselect::Result<()> {
    run()
}
