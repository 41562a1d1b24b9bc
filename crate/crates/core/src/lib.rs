//! Maximal violation of the three-party Svetlichny inequality by generalized
//! GHZ states `cos θ₁|000⟩ + sin θ₁|111⟩`.
//!
//! The crate computes `max ⟨S⟩` over all six measurement directions by
//! multi-start alternating best response, the 3-tangle of any three-qubit
//! pure state, and the two competing piecewise analytic bounds on the
//! maximum (crossover at `τ = 1/3` or `τ = 1/2`), together with tools that
//! decide which of them the numeric maximum follows.
//!
//! Qubit A is the most significant bit of every basis index.
//!
//! With the default `parallel` feature, independent optimizer starts, sweep
//! points, audit chunks and grid-oracle slices run on rayon. Results are
//! identical with the feature disabled and for any thread count.

pub mod bounds;
pub mod entanglement;
pub mod error;
pub mod operators;
pub mod optimizer;
pub mod par;
pub mod rng;
pub mod state;
pub mod sweep;

pub use bounds::{
    audit_chain, bound, check_point, classical_bound, continuity_scan, crossover_scan, eq2_bound, BoundValue,
    BoundVariant, Branch, ChainAudit, ConstraintMode, Crossover, Eq2Bound, Eq2Branch, Eq2Point, Verdict,
};
pub use entanglement::{gghz_tangle, theta_for_tangle, three_tangle, Tangle};
pub use error::{Error, Result};
pub use operators::{
    pauli_dot, svetlichny_expectation, svetlichny_operator, tensor3, BlochVector, MeasurementSettings, Operator2,
    Operator8, Slot,
};
pub use optimizer::{best_response, grid_oracle, maximize, MaxResult, OptimizerConfig};
pub use par::Exec;
pub use state::{expectation, gghz_state, inner_product, GghzParam, PureState3};
pub use sweep::{sweep, SweepPoint, SweepRow};
