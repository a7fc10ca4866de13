//! Sets and indefinite paradigms over a finite universe.
//!
//! A subset `S` has two readings: the set of distinct `S`-things, carried by
//! the diagonal incidence matrix `In(ΔS)`, and the single indefinite
//! `S`-thing `u_S`, carried by `In(S×S)`. The modules build both readings up
//! through exact classical density matrices to complex quantum densities,
//! with measurement modelled as sharpening by a partition.
//!
//! Numerical code is generic: quantum types over [`Real`] (`f32`/`f64`),
//! exact types over the integer [`ExactInt`] under `Ratio<I>`. The aliases
//! below fix the common choices.

pub mod classical;
pub mod cmatrix;
pub mod error;
pub mod incidence;
pub mod io;
pub mod quantum;
pub mod scalar;
pub mod statistics;
pub mod surd;
pub mod universe;

pub use error::{Error, Result};
pub use scalar::{ExactInt, Real};

pub use num_bigint::BigInt;

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
pub type ExactSurd = surd::Surd<BigInt>;
pub type ExactPointDistribution = classical::PointDistribution<BigInt>;
pub type ExactDensity = classical::ClassicalDensity<BigInt>;
pub type ExactTable = statistics::DistributionTable<BigInt>;

pub type ComplexMatrix64 = cmatrix::CMatrix<f64>;
pub type Amplitudes64 = quantum::AmplitudeVector<f64>;
pub type QuantumDensity64 = quantum::QuantumDensity<f64>;
pub type Observable64 = quantum::Observable<f64>;

pub type ComplexMatrix32 = cmatrix::CMatrix<f32>;
pub type Amplitudes32 = quantum::AmplitudeVector<f32>;
pub type QuantumDensity32 = quantum::QuantumDensity<f32>;
pub type Observable32 = quantum::Observable<f32>;
