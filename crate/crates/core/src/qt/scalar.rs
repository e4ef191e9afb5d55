use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{CoreError, Result};

/// Exact field element usable as a polynomial coefficient.
///
/// Implemented by [`QTScalar`](super::QTScalar) for symbolic work and by
/// [`BigRational`] for evaluation at a sampled `(q, t)` point.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn checked_div(&self, other: &Self) -> Result<Self>;

    /// Size estimate used for pivot selection in elimination.
    fn weight(&self) -> usize;

    fn checked_inv(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    fn pow(&self, k: i32) -> Result<Self> {
        let mut base = if k < 0 { self.checked_inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        Ok(acc)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn checked_div(&self, other: &Self) -> Result<Self> {
        if Zero::is_zero(other) {
            return Err(CoreError::DivisionByZero);
        }
        Ok(self / other)
    }

    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

/// The parameters `q`, `t` and their inverses in a chosen scalar domain.
#[derive(Clone, Debug, PartialEq)]
pub struct Params<S> {
    pub q: S,
    pub t: S,
    pub q_inv: S,
    pub t_inv: S,
}

impl<S: Scalar> Params<S> {
    pub fn new(q: S, t: S) -> Result<Self> {
        let q_inv = q.checked_inv()?;
        let t_inv = t.checked_inv()?;
        Ok(Params { q, t, q_inv, t_inv })
    }

    /// The same parameters with `(q, t)` replaced by `(1/q, 1/t)`.
    pub fn inverted(&self) -> Self {
        Params { q: self.q_inv.clone(), t: self.t_inv.clone(), q_inv: self.q.clone(), t_inv: self.t.clone() }
    }

    pub fn q_pow(&self, k: i64) -> S {
        pow_signed(&self.q, &self.q_inv, k)
    }

    pub fn t_pow(&self, k: i64) -> S {
        pow_signed(&self.t, &self.t_inv, k)
    }

    /// `q^a t^b`.
    pub fn qt_pow(&self, a: i64, b: i64) -> S {
        self.q_pow(a) * &self.t_pow(b)
    }
}

fn pow_signed<S: Scalar>(x: &S, x_inv: &S, k: i64) -> S {
    let base = if k < 0 { x_inv } else { x };
    let e = i32::try_from(k.unsigned_abs()).expect("exponent fits in i32");
    base.pow(e).expect("non-negative power cannot fail")
}

impl Params<BigRational> {
    pub fn at(q0: BigRational, t0: BigRational) -> Result<Self> {
        Params::new(q0, t0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn signed_powers() {
        let p = Params::at(r(3, 2), r(2, 1)).unwrap();
        assert_eq!(p.q_pow(-2), r(4, 9));
        assert_eq!(p.t_pow(3), r(8, 1));
        assert_eq!(p.qt_pow(1, -1), r(3, 4));
        assert_eq!(p.inverted().q, r(2, 3));
    }

    #[test]
    fn zero_parameter_is_rejected() {
        assert_eq!(Params::at(r(0, 1), r(2, 1)).unwrap_err(), CoreError::DivisionByZero);
    }
}
