//! Every example compiles into this test binary and runs to completion.

macro_rules! example {
    ($module:ident, $test:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run().expect(concat!($file, " should run"));
        }
    };
}

example!(weak_value, weak_value_runs, "weak_value.rs");
example!(
    closed_form_moments,
    closed_form_moments_runs,
    "closed_form_moments.rs"
);
example!(fock_oracle, fock_oracle_runs, "fock_oracle.rs");
example!(
    observables_report,
    observables_report_runs,
    "observables_report.rs"
);
example!(parameter_sweep, parameter_sweep_runs, "parameter_sweep.rs");
example!(figure_datasets, figure_datasets_runs, "figure_datasets.rs");
example!(
    dual_backend_validation,
    dual_backend_validation_runs,
    "dual_backend_validation.rs"
);
example!(formula_audit, formula_audit_runs, "formula_audit.rs");
