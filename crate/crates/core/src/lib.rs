//! Return probabilities of one-dimensional quantum walks and correlated
//! random walks whose coin depends on the final time.
//!
//! Three routes compute the same quantity: exact evolution
//! ([`quantum_walk`], [`classical_walk`]), combinatorial sums
//! ([`closed_form`]) and large-time limits ([`asymptotics`]).

pub mod asymptotics;
pub mod classical_walk;
pub mod closed_form;
pub mod coin;
pub mod error;
pub mod experiments;
mod extended;
pub mod quantum_walk;
pub mod special_functions;

pub use classical_walk::{evolve_classical, return_probability_classical, ClassicalState};
pub use closed_form::{p0_classical_closed_form, p0_quantum_closed_form, p0_via_lemma1, p0_via_lemma2};
pub use coin::{make_coin, Coin, CoinKind, Family, FamilySpec};
pub use error::{Result, WalkError};
pub use quantum_walk::{evolve, return_probability_exact, InitialQubit, QuantumState};
pub use asymptotics::{asymptotic_return_probability, limit_constant, LimitConstant, Regime};
pub use experiments::{compare_models, estimate_rate, run_sweep, ReturnReport, SweepConfig};
