//! Numerical verification of semi-slant ξ⊥-Riemannian submersions from
//! Sasakian manifolds.
//!
//! The crate is layered:
//!
//! * [`diffgeo`]: metrics, Levi-Civita connections, brackets and forms on a
//!   coordinate chart, all by central differences.
//! * [`contact`]: almost contact metric structures and the standard Sasakian
//!   structure on `R^(2n+1)`.
//! * [`submersion`]: vertical/horizontal splittings, O'Neill tensors and the
//!   second fundamental form of a map.
//! * [`semislant`]: the invariant/slant decomposition of the vertical space,
//!   slant angle detection, structure identities and characterization
//!   conditions.
//! * [`report`]: the example registry, point sampling, suite orchestration
//!   and report emission.
//!
//! Every identity is evaluated as a residual at sampled points and reported
//! as a [`check::CheckEntry`]; identity failures are data, never errors.

pub mod catalog;
pub mod check;
pub mod contact;
pub mod diffgeo;
pub mod error;
pub mod report;
pub mod semislant;
pub mod submersion;

pub use check::{CheckEntry, CrossValidation, PointFailure, Status};
pub use error::{Error, Result};
