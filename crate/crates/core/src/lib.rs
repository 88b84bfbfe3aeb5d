//! Exact unique-neighbor-like (δ₁) and cosystolic expansion of simplicial
//! complexes over finite groups.
//!
//! All weights and bounds are exact rationals. Spectral quantities are the
//! only floating-point values; they enter inequalities through certified
//! rational upper bounds.

pub mod cochain;
pub mod complex;
pub mod correction;
pub mod delta1;
pub mod error;
pub mod generate;
pub mod group;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod spectral;
pub mod verify;

pub use cochain::Cochain;
pub use complex::{Face, FaceSet, LinkView, SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupElement};
pub use rational::{RealPower, Rational};
