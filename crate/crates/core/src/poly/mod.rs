//! Sparse Laurent polynomials in `z_1, ..., z_n` and the operators acting on them.

mod ops;
mod ratz;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{CoreError, Result};
use crate::qt::Scalar;

pub use ratz::{LinForm, RatTerm};

/// Exponent vector; entries may be negative.
pub type Exponent = Vec<i32>;

#[derive(Clone, PartialEq)]
pub struct LaurentPoly<S> {
    n: usize,
    terms: BTreeMap<Exponent, S>,
}

impl<S: Scalar> LaurentPoly<S> {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, S::one())
    }

    pub fn constant(n: usize, c: S) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn monomial(exp: Exponent, c: S) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// The variable `z_i`, 1-based.
    pub fn var(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(CoreError::IndexOutOfRange { index: i, max: n });
        }
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Ok(Self::monomial(e, S::one()))
    }

    /// Elementary symmetric polynomial `e_r(z_1, ..., z_n)`.
    pub fn elementary(n: usize, r: usize) -> Self {
        let mut p = Self::zero(n);
        for mask in 0u64..(1 << n) {
            if mask.count_ones() as usize == r {
                p.add_term((0..n).map(|b| (mask >> b & 1) as i32).collect(), S::one());
            }
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, S)>>(n: usize, terms: I) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &S)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Exponent, S)> {
        self.terms.into_iter()
    }

    /// Number of nonzero terms; see [`LaurentPoly::is_zero`] for emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i32]) -> S {
        self.terms.get(exp).cloned().unwrap_or_else(S::zero)
    }

    /// Adds `c z^exp`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exp: Exponent, c: S) {
        debug_assert_eq!(exp.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        if c.is_one() {
            return self.clone();
        }
        LaurentPoly { n: self.n, terms: self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c)).collect() }
    }

    /// Multiplies by `z^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        let terms =
            self.terms.iter().map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone())).collect();
        LaurentPoly { n: self.n, terms }
    }

    pub fn map_coeffs<T: Scalar, F: FnMut(&S) -> Result<T>>(&self, mut f: F) -> Result<LaurentPoly<T>> {
        let mut out = LaurentPoly::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn homogeneous_component(&self, d: i32) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e.iter().sum::<i32>() == d).map(|(e, c)| (e.clone(), c.clone()));
        LaurentPoly { n: self.n, terms: terms.collect() }
    }

    /// The homogeneous part of maximal total degree.
    pub fn top_component(&self) -> Self {
        match self.max_degree() {
            Some(d) => self.homogeneous_component(d),
            None => self.clone(),
        }
    }

    /// Distinct total degrees present, ascending.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Value at `z = v`.
    pub fn evaluate(&self, v: &[S]) -> Result<S> {
        if v.len() != self.n {
            return Err(CoreError::LengthMismatch { expected: self.n, found: v.len() });
        }
        let mut inv: Vec<Option<S>> = vec![None; self.n];
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    term = term * &v[k].pow(x)?;
                } else if x < 0 {
                    if inv[k].is_none() {
                        inv[k] = Some(v[k].checked_inv()?);
                    }
                    term = term * &inv[k].as_ref().expect("just set").pow(-x)?;
                }
            }
            acc = acc + &term;
        }
        Ok(acc)
    }

    /// Substitutes `z_k -> scale_k * z_{target_k}` for every `k` (0-based targets).
    pub fn substitute_monomial(&self, target: &[usize], scale: &[S]) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.n];
            let mut coef = c.clone();
            for (k, &x) in e.iter().enumerate() {
                ne[target[k]] += x;
                if x != 0 && !scale[k].is_one() {
                    coef = coef * &scale[k].pow(x)?;
                }
            }
            out.add_term(ne, coef);
        }
        Ok(out)
    }

    /// Product with a scalar multiple of a monomial.
    pub fn mul_monomial(&self, exp: &[i32], c: &S) -> Self {
        self.shift(exp).scale(c)
    }

    /// Terms in degree-reverse-lexicographic order, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &S)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| degrevlex(b.0, a.0));
        v
    }
}

/// Degree-reverse-lexicographic comparison of exponent vectors.
pub fn degrevlex(a: &[i32], b: &[i32]) -> Ordering {
    let da: i32 = a.iter().sum();
    let db: i32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl<S: Scalar> Add<&LaurentPoly<S>> for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    fn add(self, o: &LaurentPoly<S>) -> LaurentPoly<S> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub<&LaurentPoly<S>> for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    fn sub(self, o: &LaurentPoly<S>) -> LaurentPoly<S> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<S: Scalar> Mul<&LaurentPoly<S>> for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    // Exponent vectors add under multiplication.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: &LaurentPoly<S>) -> LaurentPoly<S> {
        let mut out = LaurentPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2);
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &LaurentPoly<S> {
    type Output = LaurentPoly<S>;
    fn neg(self) -> LaurentPoly<S> {
        LaurentPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

fn render_monomial(e: &[i32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(k, &x)| if x == 1 { format!("z{}", k + 1) } else { format!("z{}^{}", k + 1, x) })
        .collect();
    parts.join("*")
}

/// Splits a rendered coefficient into sign and magnitude when it is a single
/// negated term.
fn split_sign(s: &str) -> (bool, &str) {
    match s.strip_prefix('-') {
        Some(rest) if !rest.contains(' ') => (true, rest),
        _ => (false, s),
    }
}

impl<S: Scalar> fmt::Display for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let rendered = c.to_string();
            let (neg, mag) = split_sign(&rendered);
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = render_monomial(e);
            let simple = !mag.contains(' ') && !mag.contains('/');
            let coef = if simple { mag.to_string() } else { format!("({mag})") };
            if mono.is_empty() {
                f.write_str(&coef)?;
            } else if mag == "1" {
                f.write_str(&mono)?;
            } else {
                write!(f, "{coef}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[n={}]({self})", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt::QTScalar;

    fn qt(s: &str) -> QTScalar {
        s.parse().unwrap()
    }

    fn z(n: usize, i: usize) -> LaurentPoly<QTScalar> {
        LaurentPoly::var(n, i).unwrap()
    }

    #[test]
    fn top_component_example() {
        let one = LaurentPoly::one(2);
        let p = &(&(&z(2, 1) * &z(2, 2)) + &z(2, 1)) + &one;
        assert_eq!(p.top_component(), &z(2, 1) * &z(2, 2));
    }

    #[test]
    fn evaluate_example() {
        let p = &z(2, 1) + &z(2, 2);
        assert_eq!(p.evaluate(&[qt("1"), qt("1/t")]).unwrap(), qt("1 + 1/t"));
        let inv = LaurentPoly::monomial(vec![-1, 0], qt("1"));
        assert_eq!(inv.evaluate(&[qt("0"), qt("1")]).unwrap_err(), CoreError::DivisionByZero);
    }

    #[test]
    fn rendering() {
        let p = &(&z(2, 1) * &z(2, 1)) + &z(2, 2).scale(&qt("-1/t"));
        let p = &(&p + &z(2, 1).scale(&qt("q - 1"))) - &LaurentPoly::one(2);
        assert_eq!(p.to_string(), "z1^2 + (q - 1)*z1 - (1/t)*z2 - 1");
        let e = LaurentPoly::<QTScalar>::elementary(3, 2);
        assert_eq!(e.to_string(), "z1*z2 + z1*z3 + z2*z3");
        assert_eq!(LaurentPoly::<QTScalar>::zero(2).to_string(), "0");
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let p = &z(2, 1) - &z(2, 1);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }
}
