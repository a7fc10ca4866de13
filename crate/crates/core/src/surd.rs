//! Signed square roots of non-negative rationals, `±√q`.
//!
//! Off-diagonal entries `√(p_j p_k)/Pr(S)` of classical paradigm densities are
//! generally irrational; keeping the square exact lets every identity be
//! checked without floating point.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::scalar::{exact_sqrt, fraction_string, ratio_to_real, ExactInt, Real, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd<I: ExactInt> {
    negative: bool,
    square: Q<I>,
}

impl<I: ExactInt> Surd<I> {
    pub fn zero() -> Self {
        Self { negative: false, square: Q::zero() }
    }

    pub fn from_rational(q: &Q<I>) -> Self {
        Self { negative: q.is_negative(), square: q.clone() * q.clone() }
    }

    /// Non-negative root of `square`; `None` if `square < 0`.
    pub fn sqrt_of(square: Q<I>) -> Option<Self> {
        (!square.is_negative()).then_some(Self { negative: false, square })
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.negative && !self.is_zero()
    }

    /// Exact square of the value.
    pub fn square(&self) -> &Q<I> {
        &self.square
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Q<I>> {
        let root = exact_sqrt(&self.square)?;
        Some(if self.negative { -root } else { root })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let square = self.square.clone() * other.square.clone();
        let negative = (self.negative != other.negative) && !square.is_zero();
        Self { negative, square }
    }

    /// Multiplies by a rational factor.
    pub fn scale(&self, factor: &Q<I>) -> Self {
        self.mul(&Self::from_rational(factor))
    }

    pub fn to_real<T: Real>(&self) -> T {
        let root = ratio_to_real::<I, T>(&self.square).sqrt();
        if self.negative {
            -root
        } else {
            root
        }
    }
}

impl<I: ExactInt> fmt::Display for Surd<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.is_negative() { "-" } else { "" };
        match exact_sqrt(&self.square) {
            Some(root) => write!(f, "{sign}{}", fraction_string(&root)),
            None => write!(f, "{sign}sqrt({})", fraction_string(&self.square)),
        }
    }
}
