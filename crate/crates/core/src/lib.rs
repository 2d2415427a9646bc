//! Orbital integrals on the K-theory of reduced group C*-algebras of
//! equal-rank semisimple Lie groups, computed from root-system data.
//!
//! The crate is organised bottom-up:
//!
//! - [`rootsys`]: Cartan data, roots, Weyl groups, the invariant form and
//!   brute-force character oracles (Weyl dimension, Freudenthal).
//! - [`realform`]: compact/noncompact root splittings, the compact Weyl
//!   group, coset representatives and the indexing of K-theory generators.
//! - [`toruschar`]: torus points and the exponential sums built on them.
//! - [`ktrace`]: the orbital-integral trace on generators and classes,
//!   its vanishing off the elliptic set, and (limits of) discrete-series
//!   character values.
//! - [`stable`]: stable orbital integrals, L-packet sums, the limit at the
//!   identity and formal degrees.
//! - [`tannaka`]: recovery of dimensions, characters, highest weights and
//!   noncompact weights from sampled trace functions.
//!
//! Lattice arithmetic is exact (doubled integer coordinates, `Rational64`).
//! Floating point only enters through the final exponentials.

pub mod ktrace;
pub mod realform;
pub mod rootsys;
pub mod stable;
pub mod tannaka;
pub mod toruschar;

mod error;
mod linalg;
pub mod serde_complex;

pub use error::{Error, Result};

pub use realform::{CharacterLattice, GeneratorKey, KClass, PositiveSystem, RealFormSpec};
pub use rootsys::{CartanDatum, Weight, WeylElement, WeylGroup};

pub use ktrace::{TauValue, Verdict};
pub use stable::{ContinuityReport, LimitReport};
pub use toruschar::{ConjugacyDescriptor, TorusPoint};

pub use num_complex::Complex64;
pub use num_rational::Rational64;
