//! Exact polyhedral computations for toric fiber fans.
//!
//! Given a lattice projection `pi : Z^n -> Z^r` and an affine monoid `Omega`
//! in `Z^n`, this crate computes the fibers `P_chi` over characters, their
//! normal fans, the chamber decomposition of the image cone, the Hilbert fan
//! and state polytope, and the combinatorial data of one-parameter
//! degenerations. Every number is an exact integer or rational.

pub mod error;
pub mod exact;
pub mod check;
pub mod degeneration;
pub mod git;
pub mod hilbert;
pub mod instance;
pub mod oracle;
pub mod pipeline;
pub mod polyhedral;
pub mod report;

pub use error::{Error, Result};
pub use instance::{load_instance, OmegaKind, OmegaSpec, ToricInstance};
pub use polyhedral::{Cone, Fan, Polyhedron};
