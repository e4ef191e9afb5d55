//! Operators on Laurent polynomials. Positions are 1-based and composite
//! operators apply their rightmost factor first.

use super::ratz::{self, RatTerm};
use super::LaurentPoly;
use crate::error::{CoreError, Result};
use crate::qt::{Params, Scalar};
use crate::subsets::IndexSet;

fn binom2(d: i64) -> i64 {
    d * (d - 1) / 2
}

impl<S: Scalar> LaurentPoly<S> {
    fn check_adjacent(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n() {
            return Err(CoreError::IndexOutOfRange { index: i, max: self.n().saturating_sub(1) });
        }
        Ok(())
    }

    fn check_position(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            return Err(CoreError::IndexOutOfRange { index: i, max: self.n() });
        }
        Ok(())
    }

    /// `s_i`: exchanges `z_i` and `z_{i+1}`.
    pub fn apply_si(&self, i: usize) -> Result<Self> {
        self.check_adjacent(i)?;
        Ok(LaurentPoly::from_terms(
            self.n(),
            self.terms().map(|(e, c)| {
                let mut e = e.clone();
                e.swap(i - 1, i);
                (e, c.clone())
            }),
        ))
    }

    /// `tau_i`: `z_i -> q z_i`.
    pub fn apply_tau(&self, i: usize, p: &Params<S>) -> Result<Self> {
        self.check_position(i)?;
        Ok(LaurentPoly::from_terms(
            self.n(),
            self.terms().map(|(e, c)| (e.clone(), c.clone() * &p.q_pow(i64::from(e[i - 1])))),
        ))
    }

    /// Cyclic variable shift `f(c z_n, z_1, ..., z_{n-1})` where the power
    /// of `z_n` picks up `q^{sign * e_1}`.
    fn cyclic(&self, p: &Params<S>, sign: i64) -> Self {
        LaurentPoly::from_terms(
            self.n(),
            self.terms().map(|(e, c)| {
                let mut ne = e[1..].to_vec();
                ne.push(e[0]);
                (ne, c.clone() * &p.q_pow(sign * i64::from(e[0])))
            }),
        )
    }

    /// `Delta f(z) = f(z_n / q, z_1, ..., z_{n-1})`.
    pub fn apply_delta(&self, p: &Params<S>) -> Self {
        self.cyclic(p, -1)
    }

    /// `omega f(z) = f(q z_n, z_1, ..., z_{n-1})`.
    pub fn apply_omega(&self, p: &Params<S>) -> Self {
        self.cyclic(p, 1)
    }

    /// `Phi = (z_n - t^{-(n-1)}) Delta`.
    pub fn apply_phi(&self, p: &Params<S>) -> Self {
        let n = self.n();
        let d = self.apply_delta(p);
        let mut zn = vec![0; n];
        zn[n - 1] = 1;
        &d.shift(&zn) - &d.scale(&p.t_pow(-(n as i64 - 1)))
    }

    /// Divided difference `(f - s_i f) / (z_i - z_{i+1})`, computed termwise.
    pub fn divided_difference(&self, i: usize) -> Result<Self> {
        self.check_adjacent(i)?;
        let (a_idx, b_idx) = (i - 1, i);
        let mut out = LaurentPoly::zero(self.n());
        for (e, c) in self.terms() {
            let (a, b) = (e[a_idx], e[b_idx]);
            if a == b {
                continue;
            }
            // (z_i z_{i+1})^m (z_i^k - z_{i+1}^k) / (z_i - z_{i+1}) = (z_i z_{i+1})^m sum_j z_i^{k-1-j} z_{i+1}^j
            let (m, k, coef) = if a > b { (b, a - b, c.clone()) } else { (a, b - a, -c.clone()) };
            for j in 0..k {
                let mut ne = e.clone();
                ne[a_idx] = m + k - 1 - j;
                ne[b_idx] = m + j;
                out.add_term(ne, coef.clone());
            }
        }
        Ok(out)
    }

    /// `lhs f - (x z_i + y z_{i+1}) d_i f`, where `d_i` is the divided difference.
    fn hecke_form(&self, i: usize, lhs: &S, x: &S, y: &S) -> Result<Self> {
        let d = self.divided_difference(i)?;
        let n = self.n();
        let mut zi = vec![0; n];
        zi[i - 1] = 1;
        let mut zj = vec![0; n];
        zj[i] = 1;
        let corr = &d.mul_monomial(&zi, x) + &d.mul_monomial(&zj, y);
        Ok(&self.scale(lhs) - &corr)
    }

    /// Demazure-Lusztig operator `T_i = t + (t z_i - z_{i+1})/(z_i - z_{i+1}) (s_i - 1)`.
    pub fn apply_ti(&self, i: usize, p: &Params<S>) -> Result<Self> {
        self.hecke_form(i, &p.t, &p.t, &-S::one())
    }

    /// `T_i^{-1} = t^{-1} - 1 + t^{-1} T_i`.
    pub fn apply_ti_inv(&self, i: usize, p: &Params<S>) -> Result<Self> {
        let ti = self.apply_ti(i, p)?;
        Ok(&self.scale(&(p.t_inv.clone() - S::one())) + &ti.scale(&p.t_inv))
    }

    /// `H_i = (t-1) z_i/(z_i - z_{i+1}) + (z_i - t z_{i+1})/(z_i - z_{i+1}) s_i`.
    pub fn apply_hi(&self, i: usize, p: &Params<S>) -> Result<Self> {
        self.hecke_form(i, &p.t, &S::one(), &-p.t.clone())
    }

    /// `Hbar_i = (t-1) z_{i+1}/(z_i - z_{i+1}) + (z_i - t z_{i+1})/(z_i - z_{i+1}) s_i`.
    pub fn apply_hbar(&self, i: usize, p: &Params<S>) -> Result<Self> {
        self.hecke_form(i, &S::one(), &S::one(), &-p.t.clone())
    }

    /// `T_i` from its defining quotient, dividing exactly by `z_i - z_{i+1}`.
    pub fn apply_ti_literal(&self, i: usize, p: &Params<S>) -> Result<Self> {
        let diff = &self.apply_si(i)? - self;
        let num = ratz::mul_binomial(&diff, i - 1, &p.t, i, &-S::one());
        let quo = ratz::div_linear(&num, i - 1, i, &S::one())?;
        Ok(&self.scale(&p.t) + &quo)
    }

    /// `H_i` from its defining quotient.
    pub fn apply_hi_literal(&self, i: usize, p: &Params<S>) -> Result<Self> {
        let a = ratz::mul_binomial(self, i - 1, &(p.t.clone() - S::one()), i, &S::zero());
        let b = ratz::mul_binomial(&self.apply_si(i)?, i - 1, &S::one(), i, &-p.t.clone());
        ratz::div_linear(&(&a + &b), i - 1, i, &S::one())
    }

    /// `Y_i = t^{-(n-i)} T_i ... T_{n-1} omega T_1^{-1} ... T_{i-1}^{-1}`.
    pub fn apply_yi(&self, i: usize, p: &Params<S>) -> Result<Self> {
        self.check_position(i)?;
        let n = self.n();
        let mut g = self.clone();
        for j in (1..i).rev() {
            g = g.apply_ti_inv(j, p)?;
        }
        g = g.apply_omega(p);
        for j in (i..n).rev() {
            g = g.apply_ti(j, p)?;
        }
        Ok(g.scale(&p.t_pow(-((n - i) as i64))))
    }

    /// `Ztilde_i = H_i ... H_{n-1} Phi H_1 ... H_{i-1}`.
    pub fn apply_ztilde(&self, i: usize, p: &Params<S>) -> Result<Self> {
        self.check_position(i)?;
        let n = self.n();
        let mut g = self.clone();
        for j in (1..i).rev() {
            g = g.apply_hi(j, p)?;
        }
        g = g.apply_phi(p);
        for j in (i..n).rev() {
            g = g.apply_hi(j, p)?;
        }
        Ok(g)
    }

    /// `Ztilde_i f = sum_{I containing i} r_I(z) f(Iz)`, assembled as one
    /// rational function in `z` whose denominator must cancel.
    pub fn apply_ztilde_expansion(&self, i: usize, p: &Params<S>) -> Result<Self> {
        self.check_position(i)?;
        let n = self.n();
        let terms: Vec<RatTerm<S>> = IndexSet::all(n)
            .into_iter()
            .filter(|set| set.contains(i))
            .map(|set| {
                let mut r = ratz::r_factor(n, &set, i, p)?;
                let (target, scale) = ratz::iz_substitution(n, &set, p);
                r.mul_poly(&self.substitute_monomial(&target, &scale)?);
                Ok(r)
            })
            .collect::<Result<_>>()?;
        ratz::sum_terms(n, terms)
    }

    /// `Xi_i = z_i^{-1} (1 + Ztilde_i)`.
    pub fn apply_xi(&self, i: usize, p: &Params<S>) -> Result<Self> {
        let z = self.apply_ztilde(i, p)?;
        let mut shift = vec![0; self.n()];
        shift[i - 1] = -1;
        Ok((self + &z).shift(&shift))
    }

    /// `Z_i = t^{-C(n,2)} (z_i Xi_i - 1) prod_{j != i} Xi_j`.
    pub fn apply_zi(&self, i: usize, p: &Params<S>) -> Result<Self> {
        self.check_position(i)?;
        let n = self.n();
        let mut g = self.clone();
        for j in (1..=n).rev().filter(|&j| j != i) {
            g = g.apply_xi(j, p)?;
        }
        let g = g.apply_ztilde(i, p)?;
        Ok(g.scale(&p.t_pow(-binom2(n as i64))))
    }

    /// `M`: scales the degree-`d` component by `q^{-C(d,2)}`.
    pub fn apply_m(&self, p: &Params<S>) -> Self {
        LaurentPoly::from_terms(
            self.n(),
            self.terms().map(|(e, c)| {
                let d: i64 = e.iter().map(|&x| i64::from(x)).sum();
                (e.clone(), c.clone() * &p.q_pow(-binom2(d)))
            }),
        )
    }
}
