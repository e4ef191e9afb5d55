use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bpoly::BPoly;
use super::scalar::{Params, Scalar};
use super::sparam::SParamScalar;
use super::upoly::UPoly;
use crate::error::{CoreError, Result};

/// Exact element of `Q(q, t)`.
///
/// Stored as a reduced fraction of integer polynomials: numerator and
/// denominator are coprime in `Z[q, t]` (integer content included) and the
/// denominator has a positive leading coefficient. Equal field elements
/// therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QTScalar {
    num: BPoly,
    den: BPoly,
}

impl QTScalar {
    pub fn q() -> Self {
        Self::from_poly(BPoly::monomial(BigInt::one(), 1, 0))
    }

    pub fn t() -> Self {
        Self::from_poly(BPoly::monomial(BigInt::one(), 0, 1))
    }

    pub fn from_integer(n: BigInt) -> Self {
        Self::from_poly(BPoly::constant(n))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(BPoly::constant(r.numer().clone()), BPoly::constant(r.denom().clone()))
            .expect("rational has nonzero denominator")
    }

    pub fn from_poly(num: BPoly) -> Self {
        QTScalar { num, den: BPoly::one() }
    }

    /// `c q^a t^b` for arbitrary integer exponents.
    pub fn monomial(c: BigInt, a: i64, b: i64) -> Self {
        let up = |e: i64| usize::try_from(e.max(0)).expect("exponent fits");
        let down = |e: i64| usize::try_from((-e).max(0)).expect("exponent fits");
        let num = BPoly::monomial(c, up(a), up(b));
        let den = BPoly::monomial(BigInt::one(), down(a), down(b));
        Self::from_parts(num, den).expect("monomial denominator is nonzero")
    }

    /// Reduces `num / den` to canonical form.
    pub fn from_parts(num: BPoly, den: BPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero_value());
        }
        if den.is_one() {
            return Ok(QTScalar { num, den });
        }
        let (_, n, d) = BPoly::gcd_cofactors(&num, &den);
        Ok(Self::signed(n, d))
    }

    fn signed(num: BPoly, den: BPoly) -> Self {
        if den.lc().is_negative() {
            QTScalar { num: -num, den: -den }
        } else {
            QTScalar { num, den }
        }
    }

    fn zero_value() -> Self {
        QTScalar { num: BPoly::zero(), den: BPoly::one() }
    }

    pub fn numer(&self) -> &BPoly {
        &self.num
    }

    pub fn denom(&self) -> &BPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Integer value if the element is a constant integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Rational value if the element is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(BigRational::new(n, d))
    }

    /// Applies the field automorphism `q -> 1/q`, `t -> 1/t`.
    pub fn invert_params(&self) -> Self {
        if self.num.is_zero() {
            return self.clone();
        }
        let (nr, nq, nt) = self.num.reversed();
        let (dr, dq, dt) = self.den.reversed();
        // num(1/q,1/t) / den(1/q,1/t) = nr q^dq t^dt / (dr q^nq t^nt)
        let (cq, ct) = (dq.min(nq), dt.min(nt));
        let num = nr.shift(dq - cq, dt - ct);
        let den = dr.shift(nq - cq, nt - ct);
        Self::from_parts(num, den).expect("reversal keeps the denominator nonzero")
    }

    /// Exact value at a rational point.
    pub fn eval_at(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational> {
        let d = eval_bpoly(&self.den, q0, t0);
        if Zero::is_zero(&d) {
            return Err(CoreError::PoleAtSample { q: q0.to_string(), t: t0.to_string() });
        }
        Ok(eval_bpoly(&self.num, q0, t0) / d)
    }

    /// Substitutes `q = s^alpha`, `t = s`.
    pub fn to_s_param(&self, alpha: u32) -> Result<SParamScalar> {
        let a = alpha as usize;
        let sub = |p: &BPoly| {
            let mut coeffs = vec![BigInt::zero(); a * p.deg_q() + p.deg_t() + 1];
            for (i, j, c) in p.terms() {
                coeffs[a * i + j] += c;
            }
            UPoly::from_coeffs(coeffs)
        };
        SParamScalar::from_parts(sub(&self.num), sub(&self.den))
    }

    /// Number of stored integer terms; used as a size measure.
    pub fn term_count(&self) -> usize {
        self.num.term_count() + self.den.term_count()
    }
}

/// Evaluates at a rational point using Horner in both variables.
pub(crate) fn eval_bpoly(p: &BPoly, q0: &BigRational, t0: &BigRational) -> BigRational {
    let mut acc: BigRational = Zero::zero();
    for u in p.t_coeffs().iter().rev() {
        let mut inner: BigRational = Zero::zero();
        for c in u.coeffs().iter().rev() {
            inner = inner * q0 + BigRational::from_integer(c.clone());
        }
        acc = acc * t0 + inner;
    }
    acc
}

impl Scalar for QTScalar {
    fn zero() -> Self {
        Self::zero_value()
    }

    fn one() -> Self {
        Self::from_poly(BPoly::one())
    }

    fn from_int(n: i64) -> Self {
        Self::from_integer(BigInt::from(n))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.checked_inv()?)
    }

    fn checked_inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        Ok(Self::signed(self.den.clone(), self.num.clone()))
    }

    fn weight(&self) -> usize {
        self.term_count()
    }
}

impl Params<QTScalar> {
    /// Indeterminate `q` and `t`.
    pub fn symbolic() -> Self {
        Params::new(QTScalar::q(), QTScalar::t()).expect("q and t are invertible")
    }
}

fn add_ref(a: &QTScalar, b: &QTScalar) -> QTScalar {
    if a.num.is_zero() {
        return b.clone();
    }
    if b.num.is_zero() {
        return a.clone();
    }
    if a.den.is_one() && b.den.is_one() {
        return QTScalar::from_poly(&a.num + &b.num);
    }
    if a.den == b.den {
        let num = &a.num + &b.num;
        return QTScalar::from_parts(num, a.den.clone()).expect("nonzero denominator");
    }
    // Henrici: only the common part of the denominators can cancel.
    let (g, bd, dd) = BPoly::gcd_cofactors(&a.den, &b.den);
    let num = &(&a.num * &dd) + &(&b.num * &bd);
    if num.is_zero() {
        return QTScalar::zero_value();
    }
    if g.is_one() {
        return QTScalar::signed(num, &a.den * &b.den);
    }
    let (_, n, gg) = BPoly::gcd_cofactors(&num, &g);
    QTScalar::signed(n, &(&bd * &dd) * &gg)
}

fn mul_ref(a: &QTScalar, b: &QTScalar) -> QTScalar {
    if a.num.is_zero() || b.num.is_zero() {
        return QTScalar::zero_value();
    }
    if a.den.is_one() && b.den.is_one() {
        return QTScalar::from_poly(&a.num * &b.num);
    }
    let (_, an, bd) = BPoly::gcd_cofactors(&a.num, &b.den);
    let (_, bn, ad) = BPoly::gcd_cofactors(&b.num, &a.den);
    QTScalar::signed(&an * &bn, &ad * &bd)
}

impl Neg for QTScalar {
    type Output = QTScalar;
    fn neg(self) -> QTScalar {
        QTScalar { num: -self.num, den: self.den }
    }
}

impl Neg for &QTScalar {
    type Output = QTScalar;
    fn neg(self) -> QTScalar {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&QTScalar> for &QTScalar {
            type Output = QTScalar;
            fn $m(self, o: &QTScalar) -> QTScalar {
                $body(self, o)
            }
        }
        impl $tr<&QTScalar> for QTScalar {
            type Output = QTScalar;
            fn $m(self, o: &QTScalar) -> QTScalar {
                $body(&self, o)
            }
        }
        impl $tr<QTScalar> for QTScalar {
            type Output = QTScalar;
            fn $m(self, o: QTScalar) -> QTScalar {
                $body(&self, &o)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Sub, sub, |a: &QTScalar, b: &QTScalar| add_ref(a, &-b));

/// Deglex with `q` before `t`: higher total degree first, then higher `q` power.
fn deglex(a: &(usize, usize), b: &(usize, usize)) -> Ordering {
    (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.0.cmp(&a.0))
}

fn render_monomial(i: usize, j: usize) -> String {
    let var = |name: &str, e: usize| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    [var("q", i), var("t", j)].into_iter().flatten().collect::<Vec<_>>().join("*")
}

pub(crate) fn render_poly(p: &BPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(usize, usize, &BigInt)> = p.terms().collect();
    terms.sort_by(|x, y| deglex(&(x.0, x.1), &(y.0, y.1)));
    let mut out = String::new();
    for (k, (i, j, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let mono = render_monomial(i, j);
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

impl fmt::Display for QTScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = render_poly(&self.num);
        if self.den.is_one() {
            return f.write_str(&num);
        }
        let den = render_poly(&self.den);
        let num = if self.num.term_count() > 1 { format!("({num})") } else { num };
        let den = if self.den.term_count() > 1 || den.contains('*') { format!("({den})") } else { den };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for QTScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QTScalar({self})")
    }
}

impl FromStr for QTScalar {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_qt(s)
    }
}

impl Serialize for QTScalar {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QTScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt(s: &str) -> QTScalar {
        s.parse().unwrap()
    }

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn cancellation_examples() {
        assert_eq!(qt("(q-1)/(t-1)") * qt("t-1"), qt("q-1"));
        let a = qt("(q*t-1)/t");
        assert!((a.clone() + (-a.clone())).is_zero());
        assert!(a.checked_div(&a).unwrap().is_one());
    }

    #[test]
    fn rendering() {
        assert_eq!(qt("(q*t-1)/(t-1)").to_string(), "(q*t - 1)/(t - 1)");
        assert_eq!(qt("t*(q-1)/(q*t-1)").to_string(), "(q*t - t)/(q*t - 1)");
        assert_eq!(qt("q*(1 - 1/(q*t))").to_string(), "(q*t - 1)/t");
        assert_eq!(qt("-1/(q*t)").to_string(), "-1/(q*t)");
        assert_eq!(qt("1/(2*q)").to_string(), "1/(2*q)");
        assert_eq!(qt("t^2 - 3*q^2*t + q").to_string(), "-3*q^2*t + t^2 + q");
        assert_eq!(qt("0").to_string(), "0");
        assert_eq!(qt("4/6").to_string(), "2/3");
    }

    #[test]
    fn invert_params_examples() {
        assert_eq!(qt("q-1").invert_params(), qt("(1-q)/q"));
        let d = qt("(q*t-1)/(t^2+q)");
        assert_eq!(d.invert_params().invert_params(), d);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(qt("(q-1)/(t-1)").eval_at(&r(3, 1), &r(2, 1)).unwrap(), r(2, 1));
        assert_eq!(qt("t^-1").eval_at(&r(5, 1), &r(2, 1)).unwrap(), r(1, 2));
        let e = qt("1/(q*t-1)").eval_at(&r(1, 2), &r(2, 1)).unwrap_err();
        assert!(matches!(e, CoreError::PoleAtSample { .. }));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(qt("q").checked_div(&qt("0")).unwrap_err(), CoreError::DivisionByZero);
    }

    #[test]
    fn serde_round_trip() {
        let a = qt("(q^2*t - 1)/(q - t)");
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<QTScalar>(&j).unwrap(), a);
    }
}
