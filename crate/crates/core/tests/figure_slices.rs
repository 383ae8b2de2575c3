// Orderings between specific plotted curves, oracle first.

use std::f64::consts::PI;

use tmsv_postselect::observables::compare_backends;
use tmsv_postselect::validate::GRID_ALPHA;
use tmsv_postselect::ModelParams;

fn i0(lambda: f64, s: f64, alpha: f64) -> f64 {
    let c = compare_backends(&ModelParams::new(lambda, s, alpha, 0.0).unwrap(), 1e-12).unwrap();
    assert!(c.worst < 1e-8, "{} off by {:e}", c.worst_field, c.worst);
    c.oracle.report.i0.unwrap()
}

#[test]
fn weak_values_pull_i0_toward_zero_below_lambda_one() {
    for lambda in [0.2, 0.5, 0.8] {
        let curve: Vec<f64> = GRID_ALPHA.iter().map(|&a| i0(lambda, 0.5, a)).collect();
        assert!(curve.iter().all(|&v| v < 0.0), "lambda={lambda}: {curve:?}");
        assert!(
            curve.windows(2).all(|w| w[1] > w[0]),
            "lambda={lambda}: {curve:?}"
        );
    }
}

#[test]
fn alpha_curves_cross_before_lambda_two() {
    let gap = |lambda| i0(lambda, 0.5, 8.0 * PI / 9.0) - i0(lambda, 0.5, 0.0);
    assert!(gap(1.0) > 0.0);
    assert!(gap(2.0) < 0.0);
}

#[test]
fn strong_coupling_erases_alpha_dependence() {
    let spread = |s| {
        let v: Vec<f64> = GRID_ALPHA.iter().map(|&a| i0(1.5, s, a)).collect();
        v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min)
    };
    assert!(spread(2.0) < 1e-5);
    assert!(spread(0.4) > 1e-2);
}
