use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use tmsv_postselect::closed_form::{moments_final, moments_initial};
use tmsv_postselect::fock::{choose_truncation, run_oracle, run_oracle_adaptive};
use tmsv_postselect::model::normalization;
use tmsv_postselect::moments::scaled_discrepancy;
use tmsv_postselect::observables::{compare_backends, evaluate_closed, uncertainty_product};
use tmsv_postselect::ModelParams;

fn params() -> impl Strategy<Value = ModelParams> {
    (0.0..1.5f64, 0.0..2.0f64, 0.0..0.95 * PI, 0.0..TAU)
        .prop_map(|(l, s, a, d)| ModelParams::new(l, s, a, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn backends_agree(p in params()) {
        let c = compare_backends(&p, 1e-12).unwrap();
        prop_assert!(c.worst < 1e-8, "{} off by {:e}", c.worst_field, c.worst);
    }

    #[test]
    fn heisenberg_bound(p in params()) {
        let r = evaluate_closed(&p).unwrap().report;
        prop_assert!(r.uncertainty_product >= 1.0 / 16.0 - 1e-10);
        prop_assert_eq!(r.uncertainty_product, uncertainty_product(r.q1, r.q2));
    }

    #[test]
    fn quadrature_variance_floor(p in params()) {
        let r = evaluate_closed(&p).unwrap().report;
        prop_assert!(r.q1 >= -0.25 && r.q2 >= -0.25);
    }

    #[test]
    fn probabilities_in_unit_interval(p in params()) {
        let r = evaluate_closed(&p).unwrap().report;
        prop_assert!(r.p_post > 0.0 && r.p_post <= 1.0 + 1e-12);
        prop_assert!(r.fidelity > 0.0 && r.fidelity <= 1.0 + 1e-12);
    }

    #[test]
    fn number_moments_nonnegative(p in params()) {
        let m = moments_final(&p).unwrap();
        for v in [m.n_a, m.n_b, m.n_ab, m.aa2, m.bb2] {
            prop_assert!(v >= -1e-12);
        }
        // Cauchy-Schwarz on a and on a².
        prop_assert!(m.ex_a.norm_sqr() <= m.n_a * (1.0 + 1e-12) + 1e-14);
        prop_assert!(m.ex_a2.norm_sqr() <= m.aa2 * (1.0 + m.n_a) + 1e-12);
    }

    #[test]
    fn oracle_p_post_is_state_norm(p in params()) {
        let run = run_oracle_adaptive(&p, 1e-12).unwrap();
        let closed = normalization(&p, &p.weak_value().unwrap()).p_post;
        prop_assert!(scaled_discrepancy(run.p_post, closed) < 1e-10);
    }

    #[test]
    fn no_coupling_leaves_state_alone(l in 0.0..1.5f64, a in 0.0..0.95 * PI, d in 0.0..TAU) {
        let p = ModelParams::new(l, 0.0, a, d).unwrap();
        let m = moments_final(&p).unwrap();
        let (field, dev) = m.max_discrepancy(&moments_initial(l));
        prop_assert!(dev < 1e-12, "{} off by {:e}", field, dev);
        prop_assert!((evaluate_closed(&p).unwrap().report.fidelity - 1.0).abs() < 1e-14);
    }

    #[test]
    fn n_a_even_in_phase(l in 0.1..1.5f64, s in 0.0..2.0f64, a in 0.0..0.95 * PI) {
        // n_a sees δ only through Re w.
        let at = |d: f64| moments_final(&ModelParams::new(l, s, a, d).unwrap()).unwrap().n_a;
        prop_assert!(scaled_discrepancy(at(PI / 3.0), at(TAU - PI / 3.0)) < 1e-12);
    }

    #[test]
    fn doubling_cutoff_converges(p in params()) {
        let spec = choose_truncation(&p, 1e-10).unwrap();
        let base = run_oracle(&p, &spec).unwrap();
        let doubled = run_oracle(&p, &spec.doubled()).unwrap();
        let (field, d) = base.moments.max_discrepancy(&doubled.moments);
        prop_assert!(d < 1e-8, "{} moved {:e} at n_max {}", field, d, spec.n_max);
    }
}
