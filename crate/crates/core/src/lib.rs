//! Marcinkiewicz-Zygmund sampling and uniform interpolation families for
//! polynomials in the Bargmann-Fock space.
//!
//! The Fock space carries the Gaussian weight `exp(-pi |z|^2)` on the plane;
//! its polynomials of degree at most `n` form an `(n+1)`-dimensional space
//! with reproducing kernel `k_n(z, w) = sum_{k<=n} (pi z conj(w))^k / k!`.
//! This crate builds finite point families by truncating planar lattices to
//! disks whose radius is tuned to the degree, and measures the frame/Riesz
//! bounds that make those families sampling or interpolating sets:
//!
//! * [`specfun`] - regularized incomplete gamma functions, scaled complex
//!   arithmetic, and the Gaussian-tail asymptotics the radius tuning rests on.
//! * [`fock`] - reproducing kernels, disk masses, and tail-energy bounds.
//! * [`pointsets`] - lattice truncation, family construction, cardinality
//!   and separation diagnostics.
//! * [`spectral`] - frame and Gram matrices with dense Hermitian
//!   eigenbounds.
//! * [`gabor`] - the equivalent time-frequency picture: Hermite functions,
//!   Gaussian short-time inner products, and a cross-check that the two
//!   routes assemble the same matrices.
//!
//! All numerics are generic over the floating-point scalar through [`Real`];
//! the concrete `f64` aliases at the crate root are the intended entry point
//! for most callers.

pub mod fock;
pub mod gabor;
pub mod pointsets;
pub mod specfun;
pub mod spectral;

mod error;
mod real;

pub use error::{Error, Result};
pub use real::Real;

/// Library version, embedded in every emitted report for reproducibility.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `f64` scaled complex number (log-modulus plus phase).
pub type ScaledComplex = specfun::ScaledComplex<f64>;
/// `f64` regularized incomplete gamma evaluation.
pub type RegGammaValue = specfun::RegGammaValue<f64>;
/// `f64` asymptotic-gap diagnostic.
pub type AsymptoticGap = specfun::AsymptoticGap<f64>;
/// `f64` point in the plane.
pub type Point = fock::Point<f64>;
/// `f64` coefficient vector in the normalized monomial basis.
pub type CoefficientVector = fock::CoefficientVector<f64>;
/// `f64` kernel-ratio range over a bulk disk.
pub type BulkEquivalence = fock::BulkEquivalence<f64>;
/// `f64` planar lattice description.
pub type LatticeSpec = pointsets::LatticeSpec<f64>;
/// `f64` family construction request.
pub type FamilySpec = pointsets::FamilySpec<f64>;
/// `f64` finite point set, sorted lexicographically.
pub type PointSet = pointsets::PointSet<f64>;
/// `f64` cardinality report row.
pub type CardinalityRow = pointsets::CardinalityRow<f64>;
/// `f64` local counting diagnostics.
pub type LocalCounts = pointsets::LocalCounts<f64>;
/// `f64` dense Hermitian matrix.
pub type HermitianMatrix = spectral::HermitianMatrix<f64>;
/// `f64` extreme eigenvalue bounds.
pub type SpectralBounds = spectral::SpectralBounds<f64>;
/// `f64` frame report row.
pub type FrameReport = spectral::FrameReport<f64>;
/// `f64` interpolation report row.
pub type InterpReport = spectral::InterpReport<f64>;
/// `f64` time-frequency point.
pub type TFPoint = gabor::TFPoint<f64>;
/// `f64` quadrature window/step pair.
pub type QuadratureSpec = gabor::QuadratureSpec<f64>;
/// `f64` Gabor-vs-Fock cross-check report.
pub type CrosscheckReport = gabor::CrosscheckReport<f64>;
