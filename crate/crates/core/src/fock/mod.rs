//! Brute-force backend: the postselected state in a truncated two-mode Fock
//! basis, stored as a coefficient matrix, with moments by direct contraction.

pub mod operators;
pub mod state;
pub mod truncation;

pub use operators::OperatorMatrix;
pub use state::{
    build_final_state, moments_numeric, overlap, run_oracle, run_oracle_adaptive,
    tmsv_coefficients, OracleRun, TwoModeState,
};
pub use truncation::{choose_truncation, TruncationSpec, MAX_N_MAX};
