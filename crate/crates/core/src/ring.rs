//! Minimal ring interface shared by scalars, polynomials and operator-algebra elements.

use std::fmt::{Debug, Display};

use crate::scalar::Scalar;

pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_scalar(s: Scalar) -> Self;
    /// Formal adjoint: complex conjugation, and for operators also reversal of order.
    fn adjoint(&self) -> Self;

    fn scale(&self, s: &Scalar) -> Self {
        self.mul(&Self::from_scalar(s.clone()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn adjoint(&self) -> Self {
        self.conj()
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
}
