//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros.
//! The gcd is the heuristic evaluation/interpolation scheme, falling back to a
//! primitive pseudo-remainder sequence when the heuristic gives up.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const HEU_GCD_MAX: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        UPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn lc_ref(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Non-negative gcd of all coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        UPoly { coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.coeffs.len() == 1 {
            let c = &d.coeffs[0];
            let mut out = Vec::with_capacity(self.coeffs.len());
            for x in &self.coeffs {
                let (qq, r) = x.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.push(qq);
            }
            return Some(UPoly { coeffs: out });
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let dl = d.coeffs.len() - 1;
        let lcd = &d.coeffs[dl];
        let mut r = self.coeffs.clone();
        let qlen = r.len() - dl;
        let mut quo = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &r[k + dl];
            if top.is_zero() {
                continue;
            }
            let (qq, rem) = top.div_rem(lcd);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &qq * dc;
            }
            quo[k] = qq;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(UPoly::from_coeffs(quo))
    }

    /// Pseudo-remainder of `self` by `d`: lc(d)^(deg self - deg d + 1) * self mod d.
    pub fn pseudo_rem(&self, d: &UPoly) -> UPoly {
        assert!(!d.is_zero());
        let mut r = self.clone();
        if r.coeffs.len() < d.coeffs.len() {
            return r;
        }
        let dl = d.coeffs.len() - 1;
        let lcd = d.lc();
        let mut steps = r.coeffs.len() - dl;
        while !r.is_zero() && r.coeffs.len() > dl {
            let k = r.coeffs.len() - 1 - dl;
            let lr = r.lc();
            let mut next = r.scale(&lcd);
            for (j, dc) in d.coeffs.iter().enumerate() {
                next.coeffs[k + j] -= &lr * dc;
            }
            r = UPoly::from_coeffs(next.coeffs);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&num_traits::pow(lcd, steps));
        }
        r
    }

    pub fn primitive(&self) -> (BigInt, UPoly) {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return (c, self.clone());
        }
        (c.clone(), self.div_scalar_exact(&c))
    }

    fn normalize_sign(self) -> Self {
        if self.lc_ref().is_some_and(|c| c.is_negative()) {
            -self
        } else {
            self
        }
    }

    /// Greatest common divisor with positive leading coefficient, together
    /// with the cofactors `a / g` and `b / g`.
    pub fn gcd_cofactors(a: &UPoly, b: &UPoly) -> (UPoly, UPoly, UPoly) {
        if a.is_zero() && b.is_zero() {
            return (UPoly::zero(), UPoly::zero(), UPoly::zero());
        }
        if a.is_zero() {
            let g = b.clone().normalize_sign();
            let s = if b.lc().is_negative() { -BigInt::one() } else { BigInt::one() };
            return (g, UPoly::zero(), UPoly::constant(s));
        }
        if b.is_zero() {
            let g = a.clone().normalize_sign();
            let s = if a.lc().is_negative() { -BigInt::one() } else { BigInt::one() };
            return (g, UPoly::constant(s), UPoly::zero());
        }
        if a.is_constant() || b.is_constant() {
            let g = a.content().gcd(&b.content());
            return (UPoly::constant(g.clone()), a.div_scalar_exact(&g), b.div_scalar_exact(&g));
        }
        if let Some(res) = heu_gcd(a, b) {
            return res;
        }
        let g = prs_gcd(a, b);
        let ca = a.div_exact(&g).expect("gcd divides a");
        let cb = b.div_exact(&g).expect("gcd divides b");
        (g, ca, cb)
    }

    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        Self::gcd_cofactors(a, b).0
    }

    /// Symmetric x-adic expansion of an integer into a polynomial.
    pub fn interpolate(h: &BigInt, x: &BigInt) -> UPoly {
        let mut h = h.clone();
        let half = x / 2;
        let mut out = Vec::new();
        while !h.is_zero() {
            let mut g = h.mod_floor(x);
            if g > half {
                g -= x;
            }
            h = (&h - &g) / x;
            out.push(g);
        }
        UPoly::from_coeffs(out)
    }
}

fn heu_gcd(f: &UPoly, g: &UPoly) -> Option<(UPoly, UPoly, UPoly)> {
    let common = f.content().gcd(&g.content());
    let f = f.div_scalar_exact(&common);
    let g = g.div_scalar_exact(&common);
    let f_norm = f.max_norm();
    let g_norm = g.max_norm();
    let b: BigInt = BigInt::from(2) * f_norm.clone().min(g_norm.clone()) + 29;
    let lc_bound = (&f_norm / f.lc().abs()).min(&g_norm / g.lc().abs());
    let mut x = b.clone().min(BigInt::from(99) * b.sqrt()).max(BigInt::from(2) * lc_bound + 2);
    for _ in 0..HEU_GCD_MAX {
        let ff = f.eval(&x);
        let gg = g.eval(&x);
        if !ff.is_zero() && !gg.is_zero() {
            let h = ff.gcd(&gg);
            let cff = &ff / &h;
            let cfg = &gg / &h;
            let hp = UPoly::interpolate(&h, &x).primitive().1;
            if !hp.is_zero() {
                if let (Some(a), Some(b)) = (f.div_exact(&hp), g.div_exact(&hp)) {
                    return Some(finish(hp, a, b, &common));
                }
            }
            let cffp = UPoly::interpolate(&cff, &x);
            if !cffp.is_zero() {
                if let Some(hh) = f.div_exact(&cffp) {
                    if let Some(b) = g.div_exact(&hh) {
                        return Some(finish(hh, cffp, b, &common));
                    }
                }
            }
            let cfgp = UPoly::interpolate(&cfg, &x);
            if !cfgp.is_zero() {
                if let Some(hh) = g.div_exact(&cfgp) {
                    if let Some(a) = f.div_exact(&hh) {
                        return Some(finish(hh, a, cfgp, &common));
                    }
                }
            }
        }
        x = BigInt::from(73794) * &x * x.sqrt().sqrt() / 27011;
    }
    None
}

fn finish(h: UPoly, a: UPoly, b: UPoly, common: &BigInt) -> (UPoly, UPoly, UPoly) {
    let h = h.scale(common);
    if h.lc().is_negative() {
        (-h, -a, -b)
    } else {
        (h, a, b)
    }
}

fn prs_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let c = a.content().gcd(&b.content());
    let (mut x, mut y) = (a.primitive().1, b.primitive().1);
    if x.degree() < y.degree() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = x.pseudo_rem(&y);
        x = y;
        y = r.primitive().1;
    }
    x.primitive().1.scale(&c).normalize_sign()
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Add<&UPoly> for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Sub<&UPoly> for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(&o.coeffs) {
            *c -= s;
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Mul<&UPoly> for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match (d, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "x^{d}")?,
                (_, false) => write!(f, "{a}*x^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (x - 1)(x + 2) and (x - 1)(3x + 5)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 3]);
        let (g, ca, cb) = UPoly::gcd_cofactors(&a, &b);
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(&g * &ca, a);
        assert_eq!(&g * &cb, b);
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let a = p(&[4, 6]);
        let b = p(&[6, 9]);
        assert_eq!(UPoly::gcd(&a, &b), p(&[2, 3]));
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let a = &(&p(&[1, 0, 1]) * &p(&[3, -7, 2])) * &p(&[5, 1]);
        let b = &(&p(&[1, 0, 1]) * &p(&[-4, 1])) * &p(&[5, 1]);
        assert_eq!(prs_gcd(&a, &b), UPoly::gcd(&a, &b));
    }

    #[test]
    fn exact_division_detects_remainder() {
        assert!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])).is_none());
        assert_eq!(p(&[-1, 0, 1]).div_exact(&p(&[1, 1])), Some(p(&[-1, 1])));
    }
}
