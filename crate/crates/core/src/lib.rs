//! Exact intersection theory on two-dimensional tropical complexes.
//!
//! Everything is computed over `ℤ` and `ℚ` with arbitrary precision. The
//! main entry points are [`surface::WeakTropicalSurface`] for Δ-complexes
//! with structure constants, [`divisors::Divisors`] for ridge divisors and
//! their pairing, and [`fans::EmbeddedFan2`] for local fans.

pub mod cohomology;
pub mod complex;
pub mod corpus;
pub mod divisors;
pub mod error;
pub mod fans;
pub mod linalg;
pub mod matroid;
pub mod par;
pub mod random;
pub mod surface;
pub mod sweeps;
pub mod text;
pub mod todd;
mod util;

pub use error::{Error, ParseError, ParseErrorKind};
pub use par::Execution;
