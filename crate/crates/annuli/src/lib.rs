//! Weighted fourth-order eigenvalue problems on annuli.
//!
//! First eigenvalues (and zero spectra) of two weighted eigenvalue problems
//! for the operator family `L_m = Delta + 2(m-1) x/|x|^2 . grad + (m-1)^2/|x|^2`
//! on planar annuli, and of the clamped bilaplacian analogues in every
//! dimension — computed from closed-form characteristic roots and bracketed
//! secular equations, validated by an independent finite-difference
//! Rayleigh-quotient oracle, together with numerical verification of the
//! associated weighted Poincare / Rellich / Hardy-Rellich inequalities and
//! the biharmonic interpolation estimate via closed-form Laurent-series
//! norms.
//!
//! The numerical core is generic over the scalar type (any
//! `num_traits::Float`); `f64` is the instantiation used by the test suites
//! and re-exported through the type aliases below.

pub mod biharmonic;
pub mod characteristic;
pub mod eigensolve;
pub mod error;
pub mod geometry;
pub mod modes;
pub mod oracle;
pub mod quad;
pub mod scalar;
pub mod secular;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{AnnulusGeometry, ProblemKind};
pub use scalar::Real;

/// Working precision of the shipped tools.
pub type Scalar = f64;
/// `f64` geometry.
pub type Geometry = geometry::AnnulusGeometry<Scalar>;
/// `f64` root quadruple.
pub type Roots = characteristic::RootQuadruple<Scalar>;
/// `f64` eigenvalue result.
pub type Eigen = eigensolve::EigenResult<Scalar>;
/// `f64` biharmonic function.
pub type Biharmonic = biharmonic::BiharmonicFun<Scalar>;
