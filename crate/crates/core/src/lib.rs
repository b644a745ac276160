//! Squeezing analysis of coupled pure states of two spin-1/2 systems.
//!
//! A state is referred to each subsystem's Lakin frame (z axis along that
//! spinor's mean spin); it is squeezed when the variance of a transverse
//! collective component drops below half the sum of the mean-spin
//! magnitudes. The crate covers state construction and classification
//! ([`spinor`]), spin operators and frames ([`frames`]), the criterion
//! ([`squeezing`]), spin-spin correlations ([`correlations`]) and evolution
//! under a quadratic spin-spin coupling ([`dynamics`]).
//!
//! Everything is generic over [`Real`]; the aliases below fix `f64`.

pub mod cli;
pub mod correlations;
pub mod dynamics;
pub mod error;
pub mod frames;
pub mod linalg;
pub mod scalar;
pub mod spinor;
pub mod squeezing;

pub use correlations::{canonical_correlations, mutual_correlations, CorrelationTensor, FrameTag};
pub use dynamics::{
    dyn_correlations, dyn_observables, dyn_squeezing, evolve_closed, evolve_oracle, hamiltonian, q_dynamic,
    DynObservables, DynSqueezing, EvolutionParams,
};
pub use error::{Error, Result};
pub use frames::{
    expectation, lakin_angles, lakin_frame, mean_spin, rotate_state, spin_operators, variance, verify_joint_eigenstate,
    Euler, LakinAngles, LakinFrame, SpinOperatorSet, Subsystem,
};
pub use linalg::{Op, Vec3};
pub use scalar::Real;
pub use spinor::{
    canonical_form, eigenbasis_quadruple, is_entangled, make_spinor, product_state, CanonicalForm, Classification,
    SpinorOrientation, TwoSpinorState,
};
pub use squeezing::{q_canonical, q_optimized, squeezing_report, variance_sum, OptimizedQ, SqueezingReport};

pub type State = TwoSpinorState<f64>;
pub type Orientation = SpinorOrientation<f64>;
pub type Frame = LakinFrame<f64>;
pub type Report = SqueezingReport<f64>;
pub type Tensor = CorrelationTensor<f64>;
pub type Operator = Op<f64>;
pub type Rotation = Euler<f64>;
