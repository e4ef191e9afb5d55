//! A small layer of rational functions in `z` whose denominators are
//! products of binomials `z_a - c z_b`. Used to evaluate the subset-sum
//! form of `Ztilde_i` at the symbolic point `z` and to divide out the
//! denominators exactly.

use super::LaurentPoly;
use crate::error::{CoreError, Result};
use crate::qt::{Params, Scalar};
use crate::subsets::IndexSet;

/// The binomial `z_a - c z_b` with `a < b` (0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct LinForm<S> {
    pub a: usize,
    pub b: usize,
    pub c: S,
}

impl<S: Scalar> LinForm<S> {
    fn to_poly(&self, n: usize) -> LaurentPoly<S> {
        let mut ea = vec![0; n];
        ea[self.a] = 1;
        let mut eb = vec![0; n];
        eb[self.b] = 1;
        LaurentPoly::from_terms(n, [(ea, S::one()), (eb, -self.c.clone())])
    }
}

/// `x - y` for scaled variables, factored as `coef * form` or `coef * z_var`.
enum Diff<S> {
    Mono { coef: S, var: usize },
    Lin { coef: S, form: LinForm<S> },
}

/// A scaled variable `coef * z_var`.
type Var<S> = (S, usize);

fn diff<S: Scalar>(x: &Var<S>, y: &Var<S>) -> Diff<S> {
    let ((cx, a), (cy, b)) = (x, y);
    use std::cmp::Ordering::*;
    match a.cmp(b) {
        Equal => Diff::Mono { coef: cx.clone() - cy, var: *a },
        Less => Diff::Lin {
            coef: cx.clone(),
            form: LinForm { a: *a, b: *b, c: cy.checked_div(cx).expect("nonzero scale") },
        },
        Greater => Diff::Lin {
            coef: -cy.clone(),
            form: LinForm { a: *b, b: *a, c: cx.checked_div(cy).expect("nonzero scale") },
        },
    }
}

/// `coef * z^shift * prod(num_forms) * poly / prod(den_forms)`.
#[derive(Clone)]
pub struct RatTerm<S> {
    coef: S,
    shift: Vec<i32>,
    num_forms: Vec<LinForm<S>>,
    den_forms: Vec<LinForm<S>>,
    poly: LaurentPoly<S>,
}

impl<S: Scalar> RatTerm<S> {
    pub fn one(n: usize) -> Self {
        RatTerm { coef: S::one(), shift: vec![0; n], num_forms: vec![], den_forms: vec![], poly: LaurentPoly::one(n) }
    }

    pub fn mul_scalar(&mut self, c: &S) {
        self.coef = self.coef.clone() * c;
    }

    pub fn mul_poly(&mut self, p: &LaurentPoly<S>) {
        self.poly = &self.poly * p;
    }

    fn mul_var(&mut self, v: &Var<S>) {
        self.mul_scalar(&v.0);
        self.shift[v.1] += 1;
    }

    fn div_var(&mut self, v: &Var<S>) -> Result<()> {
        self.coef = self.coef.checked_div(&v.0)?;
        self.shift[v.1] -= 1;
        Ok(())
    }

    fn mul_diff(&mut self, d: Diff<S>) {
        match d {
            Diff::Mono { coef, var } => self.mul_var(&(coef, var)),
            Diff::Lin { coef, form } => {
                self.mul_scalar(&coef);
                if let Some(k) = self.den_forms.iter().position(|f| *f == form) {
                    self.den_forms.swap_remove(k);
                } else {
                    self.num_forms.push(form);
                }
            }
        }
    }

    fn div_diff(&mut self, d: Diff<S>) -> Result<()> {
        match d {
            Diff::Mono { coef, var } => self.div_var(&(coef, var)),
            Diff::Lin { coef, form } => {
                self.coef = self.coef.checked_div(&coef)?;
                if let Some(k) = self.num_forms.iter().position(|f| *f == form) {
                    self.num_forms.swap_remove(k);
                } else {
                    self.den_forms.push(form);
                }
                Ok(())
            }
        }
    }

    /// `(t - 1) x / (x - y)`.
    fn mul_a_hat(&mut self, x: &Var<S>, y: &Var<S>, p: &Params<S>) -> Result<()> {
        self.mul_scalar(&(p.t.clone() - S::one()));
        self.mul_var(x);
        self.div_diff(diff(x, y))
    }

    fn div_a_hat(&mut self, x: &Var<S>, y: &Var<S>, p: &Params<S>) -> Result<()> {
        self.coef = self.coef.checked_div(&(p.t.clone() - S::one()))?;
        self.div_var(x)?;
        self.mul_diff(diff(x, y));
        Ok(())
    }

    /// `(x - t y) / (x - y)`.
    fn mul_b_hat(&mut self, x: &Var<S>, y: &Var<S>, p: &Params<S>) -> Result<()> {
        let ty = (y.0.clone() * &p.t, y.1);
        self.mul_diff(diff(x, &ty));
        self.div_diff(diff(x, y))
    }

    fn numerator(&self) -> LaurentPoly<S> {
        let n = self.shift.len();
        let mut out = self.poly.mul_monomial(&self.shift, &self.coef);
        for f in &self.num_forms {
            out = &out * &f.to_poly(n);
        }
        out
    }
}

/// `p * (ca z_a + cb z_b)` (0-based).
pub fn mul_binomial<S: Scalar>(p: &LaurentPoly<S>, a: usize, ca: &S, b: usize, cb: &S) -> LaurentPoly<S> {
    let n = p.n();
    let mut ea = vec![0; n];
    ea[a] = 1;
    let mut eb = vec![0; n];
    eb[b] = 1;
    &p.mul_monomial(&ea, ca) + &p.mul_monomial(&eb, cb)
}

/// Exact quotient `p / (z_a - c z_b)`; fails if the division leaves a remainder.
pub fn div_linear<S: Scalar>(p: &LaurentPoly<S>, a: usize, b: usize, c: &S) -> Result<LaurentPoly<S>> {
    let n = p.n();
    let fail = || CoreError::NonCancellation { divisor: format!("z{} - ({})*z{}", a + 1, c, b + 1) };
    let Some(min_a) = p.terms().map(|(e, _)| e[a]).min() else {
        return Ok(LaurentPoly::zero(n));
    };
    let mut rem = p.clone();
    let mut quo = LaurentPoly::zero(n);
    while let Some((e, coef)) = rem.terms().max_by_key(|(e, _)| e[a]).map(|(e, c)| (e.clone(), c.clone())) {
        if e[a] <= min_a {
            return Err(fail());
        }
        let mut qe = e.clone();
        qe[a] -= 1;
        // rem -= coef z^qe (z_a - c z_b)
        rem.add_term(e, -coef.clone());
        let mut shifted = qe.clone();
        shifted[b] += 1;
        rem.add_term(shifted, coef.clone() * c);
        quo.add_term(qe, coef);
    }
    Ok(quo)
}

/// Adds rational terms over a common denominator and divides it out exactly.
pub fn sum_terms<S: Scalar>(n: usize, terms: Vec<RatTerm<S>>) -> Result<LaurentPoly<S>> {
    let mut common: Vec<(LinForm<S>, usize)> = Vec::new();
    for t in &terms {
        let mut counts: Vec<(LinForm<S>, usize)> = Vec::new();
        for f in &t.den_forms {
            match counts.iter_mut().find(|(g, _)| g == f) {
                Some((_, k)) => *k += 1,
                None => counts.push((f.clone(), 1)),
            }
        }
        for (f, k) in counts {
            match common.iter_mut().find(|(g, _)| *g == f) {
                Some((_, m)) => *m = (*m).max(k),
                None => common.push((f, k)),
            }
        }
    }
    let mut total = LaurentPoly::zero(n);
    for t in &terms {
        let mut num = t.numerator();
        for (f, m) in &common {
            let have = t.den_forms.iter().filter(|g| *g == f).count();
            for _ in have..*m {
                num = &num * &f.to_poly(n);
            }
        }
        total = &total + &num;
    }
    for (f, m) in &common {
        for _ in 0..*m {
            total = div_linear(&total, f.a, f.b, &f.c)?;
        }
    }
    Ok(total)
}

fn var<S: Scalar>(k: usize) -> Var<S> {
    (S::one(), k)
}

/// `chi_I^{i}(z) A_I(z) B_I(z)` as a rational function of the symbolic `z`.
pub fn r_factor<S: Scalar>(n: usize, set: &IndexSet, i: usize, p: &Params<S>) -> Result<RatTerm<S>> {
    let t: Vec<usize> = set.positions().iter().map(|x| x - 1).collect();
    let s = t.len();
    let last_over_q: Var<S> = (p.q_inv.clone(), t[s - 1]);
    let mut r = RatTerm::one(n);

    // A_I
    r.mul_a_hat(&last_over_q, &var(t[0]), p)?;
    for w in t.windows(2) {
        r.mul_a_hat(&var(w[0]), &var(w[1]), p)?;
    }

    // chi_I^{i}
    let k = set.rank(i).ok_or_else(|| CoreError::InvalidIndexSet(format!("{i} not in {set}")))?;
    if k == 0 {
        r.div_a_hat(&last_over_q, &var(t[0]), p)?;
    } else {
        r.div_a_hat(&var(t[k - 1]), &var(t[k]), p)?;
    }

    // B_I
    let mut e_last = vec![0; n];
    e_last[t[s - 1]] = 1;
    let affine = LaurentPoly::from_terms(n, [(e_last, S::one()), (vec![0; n], -p.t_pow(-(n as i64 - 1)))]);
    r.mul_poly(&affine);
    for j in 0..t[0] {
        r.mul_b_hat(&last_over_q, &var(j), p)?;
    }
    for u in 0..s {
        let next = if u + 1 < s { t[u + 1] } else { n };
        for j in t[u] + 1..next {
            r.mul_b_hat(&var(t[u]), &var(j), p)?;
        }
    }
    Ok(r)
}

/// The substitution `z -> Iz` in the form expected by
/// [`LaurentPoly::substitute_monomial`].
pub fn iz_substitution<S: Scalar>(n: usize, set: &IndexSet, p: &Params<S>) -> (Vec<usize>, Vec<S>) {
    let t: Vec<usize> = set.positions().iter().map(|x| x - 1).collect();
    let mut target: Vec<usize> = (0..n).collect();
    let mut scale = vec![S::one(); n];
    for w in t.windows(2) {
        target[w[1]] = w[0];
    }
    target[t[0]] = t[t.len() - 1];
    scale[t[0]] = p.q_inv.clone();
    (target, scale)
}
