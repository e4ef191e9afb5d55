use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::UPoly;
use crate::error::{CoreError, Result};

/// Rational function in a single variable `s`, the image of `Q(q, t)` under
/// `q = s^alpha`, `t = s`.
///
/// Numerator and denominator are coprime integer polynomials (content
/// included) with a positive leading denominator coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SParamScalar {
    num: UPoly,
    den: UPoly,
}

impl SParamScalar {
    pub fn from_parts(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(SParamScalar { num, den: UPoly::one() });
        }
        let (_, n, d) = UPoly::gcd_cofactors(&num, &den);
        if d.lc().is_negative() {
            Ok(SParamScalar { num: -n, den: -d })
        } else {
            Ok(SParamScalar { num: n, den: d })
        }
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    /// Value at `s = 1`. The fraction is reduced, so a vanishing denominator
    /// means a genuine pole.
    pub fn limit_at_one(&self) -> Result<BigRational> {
        let one = BigInt::one();
        let d = self.den.eval(&one);
        if d.is_zero() {
            return Err(CoreError::PoleAtOne);
        }
        Ok(BigRational::new(self.num.eval(&one), d))
    }
}

impl Mul<&SParamScalar> for &SParamScalar {
    type Output = SParamScalar;
    fn mul(self, o: &SParamScalar) -> SParamScalar {
        SParamScalar::from_parts(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }
}

impl fmt::Display for SParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt::QTScalar;

    fn qt(s: &str) -> QTScalar {
        s.parse().unwrap()
    }

    #[test]
    fn jack_example_limit() {
        let a = qt("t*(q-1)/(q*t-1)");
        let s = a.to_s_param(2).unwrap();
        assert_eq!(s.limit_at_one().unwrap(), BigRational::new(2.into(), 3.into()));
        let s3 = a.to_s_param(3).unwrap();
        assert_eq!(s3.limit_at_one().unwrap(), BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn vanishing_and_pole() {
        assert!(qt("q-1").to_s_param(5).unwrap().limit_at_one().unwrap().is_zero());
        assert_eq!(qt("1/(q-1)").to_s_param(1).unwrap().limit_at_one().unwrap_err(), CoreError::PoleAtOne);
    }
}
