//! Scalar traits the library is generic over.
//!
//! Floating-point code (the quantum layer) is written against [`Real`];
//! exact code (classical densities and statistics tables) against
//! [`ExactInt`], the integer type underneath `Ratio<I>`.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, NumAssign, Signed, ToPrimitive};

/// Binary floating point with the tolerances used for checks at that precision.
pub trait Real: Float + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static {
    /// Algebraic identities (Hermiticity, trace, Lüders cross-check).
    const IDENTITY_TOL: Self;
    /// Spectral checks (PSD lower bound, unitarity).
    const SPECTRAL_TOL: Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal fits in scalar type")
    }
}

impl Real for f64 {
    const IDENTITY_TOL: f64 = 1e-12;
    const SPECTRAL_TOL: f64 = 1e-10;
}

impl Real for f32 {
    const IDENTITY_TOL: f32 = 1e-5;
    const SPECTRAL_TOL: f32 = 1e-4;
}

/// Integer type backing exact rationals.
pub trait ExactInt:
    Integer
    + Signed
    + Roots
    + Clone
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl ExactInt for i64 {}
impl ExactInt for i128 {}
impl ExactInt for BigInt {}

/// Exact rational over `I`.
pub type Q<I> = Ratio<I>;

pub(crate) fn q_int<I: ExactInt>(n: i64) -> Q<I> {
    Ratio::from_integer(I::from_i64(n).expect("small integer fits"))
}

/// Always `num/den`, including `1/1` and `0/1`.
pub fn fraction_string<I: ExactInt>(q: &Q<I>) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `num/den` or a plain integer.
pub fn parse_fraction<I: ExactInt>(s: &str) -> Option<Q<I>> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = I::from_str(n.trim()).ok()?;
            let d = I::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Ratio::new(n, d))
        }
        None => I::from_str(s).ok().map(Ratio::from_integer),
    }
}

/// Nearest float to a rational; exact for small numerators and denominators.
pub fn ratio_to_real<I: ExactInt, T: Real>(q: &Q<I>) -> T {
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    T::lit(n / d)
}

/// `Some(r)` with `r ≥ 0` and `r² = q` when `q` is the square of a rational.
pub fn exact_sqrt<I: ExactInt>(q: &Q<I>) -> Option<Q<I>> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if n.clone() * n.clone() == *q.numer() && d.clone() * d.clone() == *q.denom() {
        Some(Ratio::new(n, d))
    } else {
        None
    }
}
