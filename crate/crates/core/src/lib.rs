//! Spectral bounds for the cutoff Coulomb Hamiltonian `H = -ωΔ - v/(r+b)`.
//!
//! The crate is `no_std` (with `alloc`) and purely numerical:
//!
//! * [`model`]: problem parameters, the potential, its hydrogenic
//!   sandwich and the scaling reduction to the one-parameter family.
//! * [`envelope`]: comparison and envelope bounds, P-numbers and the
//!   parametric energy curves.
//! * [`exact_swave`]: Tricomi's `U(x, 2, z)` and the exact S-wave
//!   eigencondition.
//! * [`oracle`]: an independent Numerov shooting solver for the radial
//!   equation, used as the numerical reference.
//!
//! Energies are in the reduced convention `ħ = 2m = 1` (ω = 1); other
//! values of ω are handled through [`model::scale_reduce`].
#![no_std]
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod envelope;
mod error;
pub mod exact_swave;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod roots;

pub use error::{Error, Result};
pub use model::{ProblemParams, QuantumNumbers, ScaledProblem};
