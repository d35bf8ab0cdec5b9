//! Exact divisor-class computations for families of trigonal curves.
//!
//! A family of triple covers `C -> S -> B` over a fibration of rational
//! (orbi-)curves is described by a rank-2 bundle `E` on `S`. From the Chern
//! data of `E` this crate computes the Hodge class `lambda`, `kappa` and the
//! boundary degree `delta` of the induced family, evaluates the test-curve
//! tables for the Maroni and tangency divisors, and checks the sweeping-family
//! slopes `7 + 6/g` (even `g`) and `7 + 20/(3g+1)` (odd `g`). All arithmetic
//! is exact.

pub mod catalog;
pub mod chow;
pub mod cover;
pub mod error;
pub mod expr;
pub mod orbifold;
pub mod rational;
pub mod report;
pub mod sweep;
pub mod verify;

pub use catalog::{
    assemble_class, catalog, residual, BoundaryKind, BoundaryLabel, ClassExpression, Parity,
    RowReport, TestCurveRow,
};
pub use chow::{make_surface, Basis, DivisorClass, OrbiPoint, SurfaceId, SurfaceModel};
pub use cover::{adjust_delta, chern, kappa_lambda, BundleKind, BundleSpec, CoverInvariants};
pub use error::{Error, Result};
pub use orbifold::{chi, chi_numeric, ChiQuery};
pub use rational::Rational;
pub use sweep::{sharp_slope, sweep_even, sweep_odd, SweepResult};
