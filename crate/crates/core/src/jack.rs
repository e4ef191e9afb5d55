//! The Jack limit `q = s^alpha`, `t = s`, `s -> 1` of the `e_1` Pieri rule.
//!
//! Jack spectral values are `eta_i - l'_eta(i) / alpha`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::composition::Composition;
use crate::error::{CoreError, Result};
use crate::macdonald::Macdonald;
use crate::pieri::{e1_coefficient, PieriTerm};
use crate::poly::LaurentPoly;
use crate::qt::{Params, QTScalar};
use crate::subsets::{maximal_subsets, IndexSet};

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn check_alpha(alpha: u32) -> Result<BigRational> {
    match alpha {
        0 => Err(CoreError::Unsupported("alpha must be a positive integer".into())),
        a => Ok(int(i64::from(a))),
    }
}

fn ratio(num: BigRational, den: BigRational) -> Result<BigRational> {
    if den.is_zero() {
        return Err(CoreError::DivisionByZero);
    }
    Ok(num / den)
}

/// `1 / (alpha (x - y))`.
pub fn jack_a(x: &BigRational, y: &BigRational, alpha: u32) -> Result<BigRational> {
    let a = check_alpha(alpha)?;
    ratio(BigRational::one(), a * (x - y))
}

/// `(x - y - 1/alpha) / (x - y)`.
pub fn jack_b(x: &BigRational, y: &BigRational, alpha: u32) -> Result<BigRational> {
    let a = check_alpha(alpha)?;
    let d = x - y;
    ratio(&d - a.recip(), d)
}

/// `(eta_i - l'_eta(i)/alpha)_i`.
pub fn jack_spectral_vector(eta: &Composition, alpha: u32) -> Result<Vec<BigRational>> {
    let a = check_alpha(alpha)?;
    Ok(eta.parts().iter().zip(eta.leg_colengths()).map(|(&e, l)| int(i64::from(e)) - int(l as i64) / &a).collect())
}

/// `prod_s (alpha (a(s) + 1) + l(s))`.
pub fn jack_d_prime(eta: &Composition, alpha: u32) -> Result<BigRational> {
    check_alpha(alpha)?;
    let a = i64::from(alpha);
    Ok(eta
        .arm_legs()
        .into_iter()
        .fold(BigRational::one(), |acc, (arm, leg)| acc * int(a * (arm as i64 + 1) + leg as i64)))
}

/// `a^alpha_{eta, c_I(eta)}`, the Jack `e_1` Pieri coefficient.
pub fn jack_coefficient(eta: &Composition, set: &IndexSet, alpha: u32) -> Result<BigRational> {
    if set.last() > eta.n() || !set.is_maximal(eta) {
        return Err(CoreError::InvalidIndexSet(format!("{set} is not maximal for {eta}")));
    }
    let n = eta.n();
    let al = check_alpha(alpha)?;
    let v = jack_spectral_vector(eta, alpha)?;
    let t: Vec<usize> = set.positions().iter().map(|x| x - 1).collect();
    let s = t.len();

    let mut a = jack_a(&(&v[t[s - 1]] - BigRational::one()), &v[t[0]], alpha)?;
    for w in t.windows(2) {
        a *= jack_a(&v[w[0]], &v[w[1]], alpha)?;
    }

    let first_up = &v[t[0]] + BigRational::one();
    let mut b = &first_up + int(n as i64 - 1) / &al;
    let mut prev = 0;
    for &tu in &t {
        for vj in &v[prev..tu] {
            b *= jack_b(&v[tu], vj, alpha)?;
        }
        prev = tu + 1;
    }
    for vj in &v[t[s - 1] + 1..] {
        b *= jack_b(&first_up, vj, alpha)?;
    }

    let c = set.successor(eta);
    let num = -(&al * &al) * jack_d_prime(eta, alpha)? * a * b;
    ratio(num, jack_d_prime(&c, alpha)?)
}

/// The `s -> 1` limit of the Macdonald coefficient `a_{eta, c_I(eta)}` under
/// `q = s^alpha`, `t = s`.
pub fn macdonald_limit(eta: &Composition, set: &IndexSet, alpha: u32) -> Result<BigRational> {
    check_alpha(alpha)?;
    e1_coefficient(eta, set, &Params::symbolic())?.to_s_param(alpha)?.limit_at_one()
}

/// The Jack `e_1` Pieri expansion of `E_eta(z; alpha)`.
pub fn jack_expand_e1(eta: &Composition, alpha: u32) -> Result<Vec<PieriTerm<BigRational>>> {
    let mut out = Vec::new();
    for set in maximal_subsets(eta) {
        let coefficient = jack_coefficient(eta, &set, alpha)?;
        if !coefficient.is_zero() {
            out.push(PieriTerm { target: set.successor(eta), subset: set, coefficient });
        }
    }
    Ok(out)
}

/// Entrywise limit of a rational-function coefficient.
pub fn limit(x: &QTScalar, alpha: u32) -> Result<BigRational> {
    x.to_s_param(alpha)?.limit_at_one()
}

/// The nonsymmetric Jack polynomial as the coefficientwise limit of `E_eta`.
pub fn jack_polynomial(m: &Macdonald<QTScalar>, eta: &Composition, alpha: u32) -> Result<LaurentPoly<BigRational>> {
    check_alpha(alpha)?;
    m.e_inverted(eta)?.map_coeffs(|c| limit(c, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{compositions, compositions_up_to};

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn factor_examples() {
        assert_eq!(jack_a(&int(1), &int(0), 2).unwrap(), r(1, 2));
        assert!(jack_b(&int(1), &int(0), 1).unwrap().is_zero());
        assert_eq!(jack_b(&int(2), &int(0), 2).unwrap(), r(3, 4));
        assert!(jack_a(&int(1), &int(1), 2).unwrap_err().is_pole());
        assert!(jack_a(&int(1), &int(0), 0).is_err());
    }

    #[test]
    fn d_prime_examples() {
        assert!(jack_d_prime(&c("0,0"), 3).unwrap().is_one());
        assert_eq!(jack_d_prime(&c("1,0"), 5).unwrap(), int(5));
        assert_eq!(jack_d_prime(&c("0,1"), 2).unwrap(), int(3));
    }

    #[test]
    fn worked_values() {
        let full: IndexSet = "{1,2}".parse().unwrap();
        let one: IndexSet = "{1}".parse().unwrap();
        assert_eq!(jack_coefficient(&c("0,0"), &full, 2).unwrap(), r(2, 3));
        assert_eq!(macdonald_limit(&c("0,0"), &full, 3).unwrap(), r(3, 4));
        for alpha in 1..4 {
            assert!(jack_coefficient(&c("0,0"), &one, alpha).unwrap().is_one());
            assert!(macdonald_limit(&c("0,0"), &one, alpha).unwrap().is_one());
        }
        for m in 0..3 {
            assert!(jack_coefficient(&Composition::new(vec![m]).unwrap(), &one, 2).unwrap().is_one());
        }
    }

    #[test]
    fn closed_form_matches_limit() {
        for eta in compositions_up_to(2, 2).into_iter().chain(compositions_up_to(3, 1)) {
            for set in maximal_subsets(&eta) {
                for alpha in 1..4 {
                    assert_eq!(
                        jack_coefficient(&eta, &set, alpha).unwrap(),
                        macdonald_limit(&eta, &set, alpha).unwrap(),
                        "{eta} {set} {alpha}"
                    );
                }
            }
        }
    }

    /// Expands `f` in the limiting basis by peeling leading monomials.
    fn peel(m: &Macdonald<QTScalar>, f: &LaurentPoly<BigRational>, alpha: u32) -> Vec<(Composition, BigRational)> {
        let mut rem = f.clone();
        let mut out = Vec::new();
        while let Some((lead, x)) = rem
            .terms()
            .map(|(e, x)| (Composition::new(e.iter().map(|&k| k as u32).collect()).unwrap(), x.clone()))
            .max_by(|a, b| a.0.modulus().cmp(&b.0.modulus()).then_with(|| a.0.total_cmp(&b.0)))
        {
            rem = &rem - &jack_polynomial(m, &lead, alpha).unwrap().scale(&x);
            out.push((lead, x));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    #[test]
    fn jack_pieri_matches_limit_basis() {
        let m = Macdonald::new(Params::symbolic());
        for alpha in 1..3 {
            for eta in compositions(2, 2) {
                let prod = &LaurentPoly::elementary(2, 1) * &jack_polynomial(&m, &eta, alpha).unwrap();
                let mut want: Vec<_> =
                    jack_expand_e1(&eta, alpha).unwrap().into_iter().map(|t| (t.target, t.coefficient)).collect();
                want.sort_by(|a, b| a.0.cmp(&b.0));
                assert_eq!(peel(&m, &prod, alpha), want, "{eta} {alpha}");
            }
        }
    }
}
