//! Two-mode squeezed vacuum after a postselected von Neumann measurement on
//! one mode.
//!
//! Mode `a` of the squeezed vacuum `S(λ)|00⟩` is coupled to a qubit pointer
//! with strength `s`, the qubit is postselected, and the surviving two-mode
//! state is a weighted superposition of two displaced copies. The weight is
//! the weak value `w = e^{iδ} tan(α/2)`.
//!
//! Two independent backends compute the same moments:
//!
//! * [`closed_form`] evaluates analytic branch sums in O(1).
//! * [`fock`] builds the state in a truncated Fock basis and contracts it.
//!
//! [`observables`] turns either [`moments::MomentTable`] into squeezing,
//! correlation and entanglement figures; [`sweep`] and [`presets`] run them
//! over parameter grids; [`validate`] cross-checks the two backends.
//!
//! ```
//! use tmsv_postselect::model::ModelParams;
//! use tmsv_postselect::observables::evaluate_closed;
//!
//! let p = ModelParams::new(0.5, 0.2, std::f64::consts::FRAC_PI_3, 0.0).unwrap();
//! let r = evaluate_closed(&p).unwrap().report;
//! assert!(r.epr < 2.0);
//! ```

pub mod cli;
pub mod closed_form;
pub mod error;
pub mod fock;
pub mod model;
pub mod moments;
pub mod observables;
pub mod presets;
pub mod sweep;
pub mod validate;

pub use error::{Error, Result};
pub use model::ModelParams;
pub use observables::{report, Backend, ObservableReport};
