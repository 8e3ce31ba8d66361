//! Exact computation of Cartan's CR invariant `Q` and the weight-3 invariant
//! `Q;11` for strictly pseudoconvex 3-dimensional CR manifolds with
//! transverse symmetry.
//!
//! The symbolic layers work in [`TruncatedSeries`] over [`GaussianRational`]
//! so every identity between invariants can be checked as an exactly
//! vanishing residual. The [`quadrature`] module is the floating-point
//! counterpart used for global (compact-surface) statements.

pub mod error;
pub mod gaussian;
pub mod series;
pub mod poly;
pub mod surface;
pub mod transverse;
pub mod invariants;
pub mod quadrature;

pub use error::{Error, Result};
pub use gaussian::GaussianRational;
pub use series::{ArithOp, Elementary, TruncatedSeries, Var};
pub use invariants::{calibrate_c, is_spherical, q11_at_origin, CalibrationResult, RigidSurface, SphericityVerdict};
pub use quadrature::{CompactMetric, Integral, QuadratureScheme};
pub use surface::{cartan_r, cartan_s, gauss_curvature, SurfaceChart};
pub use transverse::{FiberPoint, PseudohermitianChart};
