//! Twisted convolution algebras, their Mackey extensions, and Gabor frame
//! duality on finite groups.
//!
//! The crate builds a small, fully checkable model of time-frequency analysis:
//!
//! - [`finite_group`]: multiplication-table groups, abelian groups with exact
//!   dual pairings, phase spaces `G × Ĝ`, and lattices inside them;
//! - [`cocycle`]: circle-valued 2-cocycles with exact rational phases,
//!   including the Heisenberg cocycle of a phase space;
//! - [`twisted_algebra`]: the algebra `ℓ¹(G, c)` with twisted convolution and
//!   involution, spectra, dyadic spectral-radius sequences, inversion, and
//!   positive square roots;
//! - [`mackey`]: the circle extension `G_c` discretized at the cocycle order,
//!   the Fourier grading of `L¹(G_c)`, the grade-one embedding, and faithful
//!   block-diagonal extended representations;
//! - [`gabor`]: time-frequency shifts, short-time Fourier transforms, frame
//!   operators, adjoint lattices, Janssen coefficients, and canonical dual and
//!   tight atoms computed by inversion inside the adjoint algebra;
//! - [`spectral_harness`]: registered matrix representations with verified
//!   axioms, spectra comparison across representations, norm-limit and
//!   transfer checks;
//! - [`cli`]: a JSON-job front end used by the `twisted-gabor` binary.
//!
//! Runnable walkthroughs live in `examples/`; each major capability has one.

pub mod cli;
pub mod cocycle;
pub mod finite_group;
pub mod gabor;
mod linalg;
pub mod mackey;
pub mod phase;
pub mod spectral_harness;
pub mod twisted_algebra;

pub use cocycle::{Cocycle, CocycleDefect};
pub use finite_group::{FiniteAbelianGroup, FiniteGroup, GroupError, PhaseSpace, PhaseSubgroup};
pub use gabor::{AdjointAlgebra, FrameReport, GaborError, GaborSystem, Window};
pub use mackey::{ExtendedRepresentation, MackeyError, MackeyFunction, MackeyGroup};
pub use phase::Phase;
pub use spectral_harness::{RepresentationError, RepresentationSpec, Side};
pub use twisted_algebra::{AlgebraError, TwistedElement};
