//! Dense bivariate integer polynomials, stored recursively as polynomials in
//! `t` whose coefficients are [`UPoly`]s in `q`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::upoly::UPoly;

const HEU_GCD_MAX: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BPoly {
    /// `coeffs[j]` is the coefficient of `t^j`.
    coeffs: Vec<UPoly>,
}

impl BPoly {
    pub fn zero() -> Self {
        BPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_t_coeffs(vec![UPoly::constant(c)])
    }

    /// `c * q^i * t^j`.
    pub fn monomial(c: BigInt, i: usize, j: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![UPoly::zero(); j + 1];
        coeffs[j] = UPoly::monomial(c, i);
        BPoly { coeffs }
    }

    pub fn from_t_coeffs(mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(UPoly::is_zero) {
            coeffs.pop();
        }
        BPoly { coeffs }
    }

    /// Builds from `(q exponent, t exponent, coefficient)` triples.
    pub fn from_terms<I: IntoIterator<Item = (usize, usize, BigInt)>>(terms: I) -> Self {
        let mut grid: Vec<Vec<BigInt>> = Vec::new();
        for (i, j, c) in terms {
            if grid.len() <= j {
                grid.resize(j + 1, Vec::new());
            }
            let row = &mut grid[j];
            if row.len() <= i {
                row.resize(i + 1, BigInt::zero());
            }
            row[i] += c;
        }
        Self::from_t_coeffs(grid.into_iter().map(UPoly::from_coeffs).collect())
    }

    pub fn t_coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1 && self.coeffs.first().is_none_or(UPoly::is_constant)
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.is_constant() {
            return Some(self.coeffs[0].coeff(0));
        }
        None
    }

    pub fn deg_t(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn deg_q(&self) -> usize {
        self.coeffs.iter().map(UPoly::degree).max().unwrap_or(0)
    }

    /// Leading coefficient in the recursive order (highest `t`, then highest `q`).
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().map(UPoly::lc).unwrap_or_default()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().map(UPoly::term_count).sum()
    }

    /// Nonzero terms as `(q exponent, t exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(j, u)| u.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (i, j, c)))
    }

    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(UPoly::max_norm).max().unwrap_or_default()
    }

    /// Non-negative gcd of all integer coefficients.
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for u in &self.coeffs {
            g = g.gcd(&u.content());
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
        BPoly { coeffs: self.coeffs.iter().map(|u| u.scale(c)).collect() }
    }

    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        BPoly { coeffs: self.coeffs.iter().map(|u| u.div_scalar_exact(c)).collect() }
    }

    pub fn scale_poly_q(&self, u: &UPoly) -> Self {
        BPoly::from_t_coeffs(self.coeffs.iter().map(|c| c * u).collect())
    }

    /// Multiplies by `q^i t^j`.
    pub fn shift(&self, i: usize, j: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![UPoly::zero(); j];
        coeffs.extend(self.coeffs.iter().map(|u| u.shift(i)));
        BPoly { coeffs }
    }

    /// Substitutes `q = x`, giving a polynomial in `t`.
    pub fn eval_q(&self, x: &BigInt) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|u| u.eval(x)).collect())
    }

    /// Reverses both variables: `q^dq t^dt f(1/q, 1/t)` with `dq`, `dt` the
    /// partial degrees.
    pub fn reversed(&self) -> (Self, usize, usize) {
        let dq = self.deg_q();
        let dt = self.deg_t();
        let terms: Vec<_> = self.terms().map(|(i, j, c)| (dq - i, dt - j, c.clone())).collect();
        (BPoly::from_terms(terms), dq, dt)
    }

    /// Largest `(a, b)` such that `q^a t^b` divides every term.
    pub fn monomial_content(&self) -> (usize, usize) {
        let mut a = usize::MAX;
        let mut b = usize::MAX;
        for (i, j, _) in self.terms() {
            a = a.min(i);
            b = b.min(j);
        }
        if a == usize::MAX {
            (0, 0)
        } else {
            (a, b)
        }
    }

    /// Divides by `q^a t^b`; the caller guarantees exactness.
    pub fn unshift(&self, a: usize, b: usize) -> Self {
        let terms: Vec<_> = self.terms().map(|(i, j, c)| (i - a, j - b, c.clone())).collect();
        BPoly::from_terms(terms)
    }

    pub fn div_exact(&self, d: &BPoly) -> Option<BPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.coeffs.len() == 1 {
            let c = &d.coeffs[0];
            let mut out = Vec::with_capacity(self.coeffs.len());
            for u in &self.coeffs {
                out.push(u.div_exact(c)?);
            }
            return Some(BPoly::from_t_coeffs(out));
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let dl = d.coeffs.len() - 1;
        let lcd = &d.coeffs[dl];
        let mut r = self.coeffs.clone();
        let qlen = r.len() - dl;
        let mut quo = vec![UPoly::zero(); qlen];
        for k in (0..qlen).rev() {
            if r[k + dl].is_zero() {
                continue;
            }
            let qq = r[k + dl].div_exact(lcd)?;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&qq * dc);
            }
            quo[k] = qq;
        }
        if r.iter().any(|u| !u.is_zero()) {
            return None;
        }
        Some(BPoly::from_t_coeffs(quo))
    }

    /// Content with respect to `t`: gcd in `Z[q]` of the `t`-coefficients.
    fn content_q(&self) -> UPoly {
        let mut g = UPoly::zero();
        for u in &self.coeffs {
            g = UPoly::gcd(&g, u);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_t(&self) -> (UPoly, BPoly) {
        let c = self.content_q();
        if c.is_zero() || c.is_one() {
            return (c, self.clone());
        }
        let p = BPoly::from_t_coeffs(self.coeffs.iter().map(|u| u.div_exact(&c).expect("content divides")).collect());
        (c, p)
    }

    fn pseudo_rem_t(&self, d: &BPoly) -> BPoly {
        let mut r = self.clone();
        if r.coeffs.len() < d.coeffs.len() {
            return r;
        }
        let dl = d.coeffs.len() - 1;
        let lcd = d.coeffs[dl].clone();
        let mut steps = r.coeffs.len() - dl;
        while !r.is_zero() && r.coeffs.len() > dl {
            let k = r.coeffs.len() - 1 - dl;
            let lr = r.coeffs.last().unwrap().clone();
            let mut next: Vec<UPoly> = r.coeffs.iter().map(|u| u * &lcd).collect();
            for (j, dc) in d.coeffs.iter().enumerate() {
                next[k + j] = &next[k + j] - &(&lr * dc);
            }
            r = BPoly::from_t_coeffs(next);
            steps -= 1;
        }
        for _ in 0..steps {
            r = r.scale_poly_q(&lcd);
        }
        r
    }

    fn normalize_sign(self) -> Self {
        if self.lc().is_negative() {
            -self
        } else {
            self
        }
    }

    /// Greatest common divisor (positive leading coefficient) and cofactors.
    pub fn gcd_cofactors(a: &BPoly, b: &BPoly) -> (BPoly, BPoly, BPoly) {
        if a.is_zero() && b.is_zero() {
            return (BPoly::zero(), BPoly::zero(), BPoly::zero());
        }
        if a.is_zero() || b.is_zero() {
            let nz = if a.is_zero() { b } else { a };
            let s = if nz.lc().is_negative() { -BigInt::one() } else { BigInt::one() };
            let g = nz.scale(&s);
            let unit = BPoly::constant(s);
            return if a.is_zero() { (g, BPoly::zero(), unit) } else { (g, unit, BPoly::zero()) };
        }
        if a.is_constant() || b.is_constant() {
            let g = a.int_content().gcd(&b.int_content());
            return (BPoly::constant(g.clone()), a.div_scalar_exact(&g), b.div_scalar_exact(&g));
        }
        // Strip common monomial factors first; they are cheap to detect and
        // keep the evaluation points small.
        let (ma, na) = a.monomial_content();
        let (mb, nb) = b.monomial_content();
        let (mq, mt) = (ma.min(mb), na.min(nb));
        if mq > 0 || mt > 0 || ma > 0 || na > 0 || mb > 0 || nb > 0 {
            let a1 = a.unshift(ma, na);
            let b1 = b.unshift(mb, nb);
            let (g, ca, cb) = Self::gcd_cofactors(&a1, &b1);
            return (g.shift(mq, mt), ca.shift(ma - mq, na - mt), cb.shift(mb - mq, nb - mt));
        }
        if a.deg_t() == 0 && b.deg_t() == 0 {
            let (g, ca, cb) = UPoly::gcd_cofactors(&a.coeffs[0], &b.coeffs[0]);
            return (BPoly::from_t_coeffs(vec![g]), BPoly::from_t_coeffs(vec![ca]), BPoly::from_t_coeffs(vec![cb]));
        }
        if a == b {
            let s = if a.lc().is_negative() { -BigInt::one() } else { BigInt::one() };
            return (a.scale(&s), BPoly::constant(s.clone()), BPoly::constant(s));
        }
        if let Some(res) = heu_gcd(a, b) {
            return res;
        }
        let g = prs_gcd(a, b);
        let ca = a.div_exact(&g).expect("gcd divides a");
        let cb = b.div_exact(&g).expect("gcd divides b");
        (g, ca, cb)
    }

    pub fn gcd(a: &BPoly, b: &BPoly) -> BPoly {
        Self::gcd_cofactors(a, b).0
    }

    #[cfg(test)]
    pub(crate) fn prs_gcd(a: &BPoly, b: &BPoly) -> BPoly {
        prs_gcd(a, b)
    }
}

fn interpolate(h: &UPoly, x: &BigInt) -> BPoly {
    BPoly::from_t_coeffs(h.coeffs().iter().map(|c| UPoly::interpolate(c, x)).collect())
}

fn heu_gcd(f: &BPoly, g: &BPoly) -> Option<(BPoly, BPoly, BPoly)> {
    let common = f.int_content().gcd(&g.int_content());
    let f = f.div_scalar_exact(&common);
    let g = g.div_scalar_exact(&common);
    let f_norm = f.max_norm();
    let g_norm = g.max_norm();
    let b: BigInt = BigInt::from(2) * f_norm.clone().min(g_norm.clone()) + 29;
    let lc_bound = (&f_norm / f.lc().abs()).min(&g_norm / g.lc().abs());
    let mut x = b.clone().min(BigInt::from(99) * b.sqrt()).max(BigInt::from(2) * lc_bound + 4);
    for _ in 0..HEU_GCD_MAX {
        let ff = f.eval_q(&x);
        let gg = g.eval_q(&x);
        if !ff.is_zero() && !gg.is_zero() {
            let (h, cff, cfg) = UPoly::gcd_cofactors(&ff, &gg);
            let hp = primitive_int(interpolate(&h, &x));
            if !hp.is_zero() {
                if let (Some(a), Some(b)) = (f.div_exact(&hp), g.div_exact(&hp)) {
                    return Some(finish(hp, a, b, &common));
                }
            }
            let cffp = interpolate(&cff, &x);
            if !cffp.is_zero() {
                if let Some(hh) = f.div_exact(&cffp) {
                    if let Some(b) = g.div_exact(&hh) {
                        return Some(finish(hh, cffp, b, &common));
                    }
                }
            }
            let cfgp = interpolate(&cfg, &x);
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

fn primitive_int(p: BPoly) -> BPoly {
    let c = p.int_content();
    if c.is_zero() || c.is_one() {
        p
    } else {
        p.div_scalar_exact(&c)
    }
}

fn finish(h: BPoly, a: BPoly, b: BPoly, common: &BigInt) -> (BPoly, BPoly, BPoly) {
    let h = h.scale(common);
    if h.lc().is_negative() {
        (-h, -a, -b)
    } else {
        (h, a, b)
    }
}

fn prs_gcd(a: &BPoly, b: &BPoly) -> BPoly {
    let (ca, pa) = a.primitive_t();
    let (cb, pb) = b.primitive_t();
    let c = UPoly::gcd(&ca, &cb);
    let (mut x, mut y) = (pa, pb);
    if x.deg_t() < y.deg_t() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = x.pseudo_rem_t(&y);
        x = y;
        y = if r.is_zero() { r } else { r.primitive_t().1 };
    }
    let x = x.primitive_t().1;
    let x = primitive_int(x);
    x.scale_poly_q(&c).normalize_sign()
}

impl Neg for BPoly {
    type Output = BPoly;
    fn neg(self) -> BPoly {
        BPoly { coeffs: self.coeffs.into_iter().map(|u| -u).collect() }
    }
}

impl Add<&BPoly> for &BPoly {
    type Output = BPoly;
    fn add(self, o: &BPoly) -> BPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for j in 0..n {
            coeffs.push(match (self.coeffs.get(j), o.coeffs.get(j)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        BPoly::from_t_coeffs(coeffs)
    }
}

impl Sub<&BPoly> for &BPoly {
    type Output = BPoly;
    fn sub(self, o: &BPoly) -> BPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for j in 0..n {
            coeffs.push(match (self.coeffs.get(j), o.coeffs.get(j)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b.clone(),
                (None, None) => unreachable!(),
            });
        }
        BPoly::from_t_coeffs(coeffs)
    }
}

impl Mul<&BPoly> for &BPoly {
    type Output = BPoly;
    fn mul(self, o: &BPoly) -> BPoly {
        if self.is_zero() || o.is_zero() {
            return BPoly::zero();
        }
        // Flatten to a 2-D grid; schoolbook on the nonzero terms.
        let dq = self.deg_q() + o.deg_q() + 1;
        let dt = self.coeffs.len() + o.coeffs.len() - 1;
        let mut grid = vec![vec![BigInt::zero(); dq]; dt];
        let rhs: Vec<(usize, usize, &BigInt)> = o.terms().collect();
        for (i, j, a) in self.terms() {
            for &(k, l, b) in &rhs {
                grid[j + l][i + k] += a * b;
            }
        }
        BPoly::from_t_coeffs(grid.into_iter().map(UPoly::from_coeffs).collect())
    }
}
