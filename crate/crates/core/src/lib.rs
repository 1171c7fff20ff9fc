//! Optimal motion planning for discrete reconfigurable systems whose
//! configuration spaces are CAT(0) cube complexes.
//!
//! The central object is the [`Pip`], a finite poset together with an
//! upward-closed inconsistency relation. Its consistent order ideals are the
//! vertices of a rooted CAT(0) cube complex, and conversely every rooted CAT(0)
//! cube complex has such a poset, read off from its hyperplanes. The poset is
//! small where the complex is huge, which makes it a practical controller for
//! steering a system along cost-optimal (ℓ1) and time-optimal
//! (ℓ∞) paths.
//!
//! Modules:
//! - [`pip`]: posets with inconsistent pairs, consistent ideals, available moves.
//! - [`complex`]: cube complexes, hyperplanes, links, and CAT(0) certification.
//! - [`geodesic`]: ℓ1 and ℓ∞ geodesics, plus breadth-first oracles.
//! - [`arm`]: the pinned robotic arm in a tunnel of finite height.

pub mod arm;
pub mod complex;
pub mod generate;
pub mod geodesic;
pub mod pip;

mod guard;

pub use arm::{ArmMove, ArmSpec, ArmState, Direction};
pub use complex::{CubeComplex, Verdict};
pub use geodesic::{GeodesicPlan, Metric};
pub use guard::{Guard, GUARD_ENV_VAR};
pub use pip::{Ideal, Pip};
