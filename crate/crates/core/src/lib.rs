//! Hadamard quantum walks on a line, evolved through a four-state Markov lift.
//!
//! The two-state Hadamard coin is embedded into a doubly stochastic
//! four-state chain over the signed coin states `(|0>, |1>, -|1>, -|0>)`.
//! Evolving populations with that chain and folding them with the
//! interference matrix at the end reproduces the quantum walk, while summing
//! them reproduces the classical random walk.
//!
//! * [`coin`] holds the 4x4 coin algebra and the lift/fold of single coin states.
//! * [`walk`] assembles the line operators and evolves lifted and quantum states.
//! * [`boundary`] provides reflecting and absorbing end sites.
//! * [`oracle`] has dense, deliberately literal reference implementations.
//!
//! ```
//! use lifted_walk::{coin::{LiftMode, QubitState}, walk::*, boundary::BoundarySpec};
//!
//! let (lattice, center) = Lattice::centered(100);
//! let op = make_markov_step(lattice, BoundarySpec::none())?;
//! let mut state = LiftedState::point(
//!     lattice, center, QubitState::real(1.0, 0.0), LiftMode::SignSplit, Scaling::PerStepSqrt2,
//! )?;
//! state.evolve(&op, 100)?;
//! let probs = state.quantum_probabilities()?;
//! assert!((probs.total() - 1.0).abs() < 1e-9);
//! # Ok::<(), lifted_walk::WalkError>(())
//! ```

pub mod boundary;
pub mod coin;
mod error;
pub mod oracle;
pub mod walk;

pub use error::{Result, WalkError};
