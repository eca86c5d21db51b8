//! Symbolic-plus-numeric verification engine for torsion geometry on
//! six-dimensional nilmanifolds.
//!
//! The crate reconstructs, from structure constants and exact arithmetic,
//! the torsion, connections, curvature and first Pontrjagin forms of the
//! conformally rescaled bundle metrics on the two-step nilmanifold families
//! that fiber as `T²`-bundles over `T⁴`, and certifies the associated
//! anomaly-cancellation identities and dilaton profiles.
//!
//! Layering, bottom up:
//!
//! * [`scalar`] — the exact coefficient ring (rationals × parameter Laurent
//!   monomials × `e^{kf}` × dilaton jets) with differentiation and
//!   substitution;
//! * [`exterior`] — differential forms over that ring on a six-dimensional
//!   coframe: wedge, exterior derivative from structure constants, Hodge
//!   star, contraction and the standard complex structure;
//! * [`geometry`] — SU(3)-structures, torsion, Koszul and torsion
//!   connections, curvature, Pontrjagin forms and the instanton and
//!   conformally-balanced conditions;
//! * [`models`] — the concrete nilmanifold families, the two instanton
//!   bundles, the anomaly residual and the one-dimensional reduction
//!   identities;
//! * [`elliptic`] — numeric evaluation of the lemniscatic Weierstrass
//!   function and of the dilaton profiles, producing jet values for the
//!   symbolic residuals.
//!
//! Data-parallel inner loops (curvature entries, residual grids, parameter
//! sweeps) run on rayon when the default `parallel` feature is enabled and
//! fall back to sequential iteration without it.

pub mod elliptic;
pub mod exterior;
pub mod geometry;
pub mod models;
pub(crate) mod par;
pub mod reference;
pub mod scalar;

pub use scalar::{q, qi, Q};
