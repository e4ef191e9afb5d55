//! Closed-form Pieri expansions for `z_i`, `e_1` and `e_{n-1}` acting on
//! `E_eta(z; 1/q, 1/t)`, generalized binomial coefficients, and the
//! evaluation of `E*_eta` one degree up.
//!
//! Point functions take a spectral vector `v` (usually `eta_bar`) and an
//! index set `I = {t_1 < ... < t_s}`; positions are 1-based.

use log::debug;
use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{CoreError, Result};
use crate::expansion::{Basis, Expansion, ParamsKind};
use crate::macdonald::{k_eta, Macdonald};
use crate::qt::{Params, Scalar};
use crate::subsets::{maximal_subsets, IndexSet};

/// One term `coefficient * E_target` of a Pieri expansion, with the index
/// set that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieriTerm<S> {
    pub target: Composition,
    pub subset: IndexSet,
    pub coefficient: S,
}

/// `(t - 1) x / (x - y)`.
pub fn a_hat<S: Scalar>(x: &S, y: &S, p: &Params<S>) -> Result<S> {
    ((p.t.clone() - S::one()) * x).checked_div(&(x.clone() - y))
}

/// `(x - t y) / (x - y)`.
pub fn b_hat<S: Scalar>(x: &S, y: &S, p: &Params<S>) -> Result<S> {
    (x.clone() - p.t.clone() * y).checked_div(&(x.clone() - y))
}

fn check_len<S>(v: &[S], set: &IndexSet) -> Result<()> {
    match set.last() <= v.len() {
        true => Ok(()),
        false => Err(CoreError::IndexOutOfRange { index: set.last(), max: v.len() }),
    }
}

fn zero_based(set: &IndexSet) -> Vec<usize> {
    set.positions().iter().map(|x| x - 1).collect()
}

/// `A_I(v) = a_hat(v_{t_s}/q, v_{t_1}) prod_u a_hat(v_{t_u}, v_{t_{u+1}})`.
pub fn a_set<S: Scalar>(v: &[S], set: &IndexSet, p: &Params<S>) -> Result<S> {
    check_len(v, set)?;
    let t = zero_based(set);
    let mut r = a_hat(&(v[t[t.len() - 1]].clone() * &p.q_inv), &v[t[0]], p)?;
    for w in t.windows(2) {
        r = r * &a_hat(&v[w[0]], &v[w[1]], p)?;
    }
    Ok(r)
}

/// `B_I(v) = (v_{t_s} - t^{1-n}) prod_{j<t_1} b_hat(v_{t_s}/q, v_j) prod_u prod_{t_u<j<t_{u+1}} b_hat(v_{t_u}, v_j)`
/// with `t_{s+1} = n + 1`.
pub fn b_set<S: Scalar>(v: &[S], set: &IndexSet, p: &Params<S>) -> Result<S> {
    check_len(v, set)?;
    let n = v.len();
    let t = zero_based(set);
    let last = &v[t[t.len() - 1]];
    let mut r = last.clone() - p.t_pow(1 - n as i64);
    let last_q = last.clone() * &p.q_inv;
    for vj in &v[..t[0]] {
        r = r * &b_hat(&last_q, vj, p)?;
    }
    for (u, &tu) in t.iter().enumerate() {
        let next = t.get(u + 1).copied().unwrap_or(n);
        for vj in &v[tu + 1..next] {
            r = r * &b_hat(&v[tu], vj, p)?;
        }
    }
    Ok(r)
}

fn rank_of(set: &IndexSet, i: usize) -> Result<usize> {
    set.rank(i).ok_or_else(|| CoreError::InvalidIndexSet(format!("{i} is not in {set}")))
}

/// `chi_I^{i}(v)`: the reciprocal of the `A_I` factor whose second argument is `v_i`.
pub fn chi<S: Scalar>(v: &[S], set: &IndexSet, i: usize, p: &Params<S>) -> Result<S> {
    check_len(v, set)?;
    let t = zero_based(set);
    let k = rank_of(set, i)?;
    let a = match k {
        0 => a_hat(&(v[t[t.len() - 1]].clone() * &p.q_inv), &v[t[0]], p)?,
        _ => a_hat(&v[t[k - 1]], &v[t[k]], p)?,
    };
    a.checked_inv()
}

/// `r_I^{i}(v) = chi_I^{i}(v) A_I(v) B_I(v)`.
pub fn r_set<S: Scalar>(v: &[S], set: &IndexSet, i: usize, p: &Params<S>) -> Result<S> {
    Ok(chi(v, set, i, p)? * &a_set(v, set, p)? * &b_set(v, set, p)?)
}

/// `B~_I(v) = prod_u prod_{t_{u-1}<j<t_u} b_hat(v_{t_u}, v_j) prod_{j>t_s} b_hat(q v_{t_1}, v_j) (q v_{t_1} - t^{1-n})`
/// with `t_0 = 0`.
pub fn btilde<S: Scalar>(v: &[S], set: &IndexSet, p: &Params<S>) -> Result<S> {
    check_len(v, set)?;
    let n = v.len();
    let t = zero_based(set);
    let first_q = v[t[0]].clone() * &p.q;
    let mut r = first_q.clone() - p.t_pow(1 - n as i64);
    let mut prev = 0;
    for &tu in &t {
        for vj in &v[prev..tu] {
            r = r * &b_hat(&v[tu], vj, p)?;
        }
        prev = tu + 1;
    }
    for vj in &v[t[t.len() - 1] + 1..] {
        r = r * &b_hat(&first_q, vj, p)?;
    }
    Ok(r)
}

/// `chi~_I^{i}(v) = v_i / a_hat(v_i, v_{t_{k+1}})` for `i = t_k`, reading
/// `t_{s+1}` as the value `q v_{t_1}`.
pub fn chitilde<S: Scalar>(v: &[S], set: &IndexSet, i: usize, p: &Params<S>) -> Result<S> {
    check_len(v, set)?;
    let t = zero_based(set);
    let k = rank_of(set, i)?;
    let next = match t.get(k + 1) {
        Some(&j) => v[j].clone(),
        None => v[t[0]].clone() * &p.q,
    };
    v[i - 1].checked_div(&a_hat(&v[i - 1], &next, p)?)
}

/// `a_{eta, c_I(eta)}`, the coefficient of `E_{c_I(eta)}` in `e_1 E_eta`.
pub fn e1_coefficient<S: Scalar>(eta: &Composition, set: &IndexSet, p: &Params<S>) -> Result<S> {
    ensure_maximal(eta, set)?;
    let v = eta.spectral_vector(p);
    let inv = p.inverted();
    let c = set.successor(eta);
    let num = -(p.q.clone() - S::one()) * &eta.d_prime(&inv) * &a_set(&v, set, p)? * &btilde(&v, set, p)?;
    let lowest = i64::from(eta.parts()[set.first() - 1]);
    let den = p.q_pow(lowest + 1) * &(p.t.clone() - S::one()) * &c.d_prime(&inv);
    num.checked_div(&den)
}

fn ensure_maximal(eta: &Composition, set: &IndexSet) -> Result<()> {
    if set.last() > eta.n() {
        return Err(CoreError::IndexOutOfRange { index: set.last(), max: eta.n() });
    }
    if !set.is_maximal(eta) {
        return Err(CoreError::InvalidIndexSet(format!("{set} is not maximal for {eta}")));
    }
    Ok(())
}

fn collect<S: Scalar>(
    eta: &Composition,
    sets: impl IntoIterator<Item = IndexSet>,
    mut f: impl FnMut(&IndexSet) -> Result<(Composition, S)>,
) -> Result<Vec<PieriTerm<S>>> {
    let mut out = Vec::new();
    for set in sets {
        let (target, coefficient) = f(&set)?;
        if coefficient.is_zero() {
            debug!("zero coefficient for {target} from {set} acting on {eta}");
            continue;
        }
        out.push(PieriTerm { target, subset: set, coefficient });
    }
    Ok(out)
}

/// `z_i E_eta(z; 1/q, 1/t)` in the basis `E_nu(z; 1/q, 1/t)`.
pub fn expand_zi<S: Scalar>(eta: &Composition, i: usize, p: &Params<S>) -> Result<Vec<PieriTerm<S>>> {
    if i == 0 || i > eta.n() {
        return Err(CoreError::IndexOutOfRange { index: i, max: eta.n() });
    }
    let v = eta.spectral_vector(p);
    let k = k_eta(eta, p);
    let sets = maximal_subsets(eta).into_iter().filter(|s| s.contains(i));
    collect(eta, sets, |set| {
        let c = set.successor(eta);
        let coef = chitilde(&v, set, i, p)? * &a_set(&v, set, p)? * &btilde(&v, set, p)? * &k;
        Ok((c.clone(), coef.checked_div(&k_eta(&c, p))?))
    })
}

/// `e_1 E_eta(z; 1/q, 1/t)` in the basis `E_nu(z; 1/q, 1/t)`.
pub fn expand_e1<S: Scalar>(eta: &Composition, p: &Params<S>) -> Result<Vec<PieriTerm<S>>> {
    collect(eta, maximal_subsets(eta), |set| Ok((set.successor(eta), e1_coefficient(eta, set, p)?)))
}

/// `e_{n-1} E_eta(z; 1/q, 1/t)` in the basis `E_nu(z; 1/q, 1/t)`, for `n >= 2`.
///
/// Reflects `eta` to `nu = reverse(max - (eta - min))`, applies the `e_1`
/// rule to `nu`, and reflects each successor back.
pub fn expand_en1<S: Scalar>(eta: &Composition, p: &Params<S>) -> Result<Vec<PieriTerm<S>>> {
    if eta.n() < 2 {
        return Err(CoreError::Unsupported("e_{n-1} needs at least two variables".into()));
    }
    let low = eta.min_part();
    let top = eta.max_part() - low;
    let nu = Composition::new(eta.parts().iter().rev().map(|&x| top - (x - low)).collect())?;
    let cap = nu.max_part() + 1;
    collect(eta, maximal_subsets(&nu), |set| {
        let c = set.successor(&nu);
        let target = Composition::new(c.parts().iter().rev().map(|&x| cap - x + low).collect())?;
        Ok((target, e1_coefficient(&nu, set, p)?))
    })
}

/// Packs Pieri terms as an [`Expansion`] in the `E(z; 1/q, 1/t)` basis.
pub fn to_expansion<S: Scalar>(eta: &Composition, terms: &[PieriTerm<S>]) -> Result<Expansion<S>> {
    let pairs = terms.iter().map(|t| (t.target.clone(), t.coefficient.clone())).collect();
    Expansion::new(Basis::E, ParamsKind::Inv, Some(eta.clone()), pairs)
}

/// The maximal `I` with `c_I(eta) = nu`, if any. At most one exists.
pub fn successor_set(nu: &Composition, eta: &Composition) -> Result<Option<IndexSet>> {
    let mut found = maximal_subsets(eta).into_iter().filter(|s| s.successor(eta) == *nu);
    let first = found.next();
    if let Some(other) = found.next() {
        return Err(CoreError::InvalidIndexSet(format!("{nu} arises from both {} and {other}", first.expect("first"))));
    }
    Ok(first)
}

fn check_succ(nu: &Composition, eta: &Composition) -> Result<()> {
    if nu.n() != eta.n() {
        return Err(CoreError::LengthMismatch { expected: eta.n(), found: nu.n() });
    }
    if nu.modulus() != eta.modulus() + 1 {
        return Err(CoreError::ModulusMismatch { expected: eta.modulus() + 1, found: nu.modulus() });
    }
    Ok(())
}

/// Binomial coefficient `[nu; eta]` for `|nu| = |eta| + 1` in closed form.
pub fn binom_succ<S: Scalar>(nu: &Composition, eta: &Composition, p: &Params<S>) -> Result<S> {
    check_succ(nu, eta)?;
    let Some(set) = successor_set(nu, eta)? else {
        return Ok(S::zero());
    };
    let v = eta.spectral_vector(p);
    (-(a_set(&v, &set, p)? * &btilde(&v, &set, p)?)).checked_div(&(p.t.clone() - S::one()))
}

/// Binomial coefficient `[nu; eta] = E*_eta(nu_bar) / E*_eta(eta_bar)` for any `nu`.
pub fn binom_general<S: Scalar>(nu: &Composition, eta: &Composition, m: &Macdonald<S>) -> Result<S> {
    m.estar_eval(eta, nu)?.checked_div(&m.k_eta(eta))
}

/// `E*_eta(nu_bar)` for `|nu| = |eta| + 1` in closed form.
pub fn estar_eval_formula<S: Scalar>(nu: &Composition, eta: &Composition, p: &Params<S>) -> Result<S> {
    Ok(binom_succ(nu, eta, p)? * &k_eta(eta, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::compositions_up_to;
    use crate::poly::LaurentPoly;
    use crate::qt::QTScalar;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn set(s: &str) -> IndexSet {
        s.parse().unwrap()
    }

    fn qt(s: &str) -> QTScalar {
        s.parse().unwrap()
    }

    fn sym() -> Params<QTScalar> {
        Params::symbolic()
    }

    fn as_map(terms: &[PieriTerm<QTScalar>]) -> Vec<(Composition, QTScalar)> {
        let mut v: Vec<_> = terms.iter().map(|t| (t.target.clone(), t.coefficient.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    fn oracle(m: &Macdonald<QTScalar>, f: &LaurentPoly<QTScalar>, eta: &Composition) -> Vec<(Composition, QTScalar)> {
        let prod = f * &*m.e_inverted(eta).unwrap();
        let mut v = m.expand_in_e_basis(&prod).unwrap();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    #[test]
    fn hat_examples() {
        let p = sym();
        assert_eq!(a_hat(&QTScalar::one(), &qt("1/t"), &p).unwrap(), QTScalar::t());
        assert_eq!(b_hat(&QTScalar::q(), &QTScalar::one(), &p).unwrap(), qt("(q-t)/(q-1)"));
        assert!(a_hat(&QTScalar::q(), &QTScalar::q(), &p).unwrap_err().is_pole());
    }

    #[test]
    fn btilde_and_chitilde_examples() {
        let p = sym();
        let v = c("0,0").spectral_vector(&p);
        assert_eq!(btilde(&v, &set("1"), &p).unwrap(), qt("q - 1"));
        let s = set("1,2");
        let total = chitilde(&v, &s, 1, &p).unwrap() + chitilde(&v, &s, 2, &p).unwrap();
        assert_eq!(total, qt("(1-q)/(t-1)"));
    }

    #[test]
    fn r_vanishes_off_comaximal() {
        let p = sym();
        let v = c("0,0").spectral_vector(&p);
        assert!(r_set(&v, &set("1"), 1, &p).unwrap().is_zero());
    }

    #[test]
    fn e1_small_cases() {
        let p = sym();
        let x = as_map(&expand_e1(&c("0,0"), &p).unwrap());
        assert_eq!(x, vec![(c("0,1"), qt("t*(q-1)/(q*t-1)")), (c("1,0"), QTScalar::one())]);
        for m in 0..4 {
            let eta = Composition::new(vec![m]).unwrap();
            let x = expand_e1(&eta, &p).unwrap();
            assert_eq!(as_map(&x), vec![(Composition::new(vec![m + 1]).unwrap(), QTScalar::one())]);
        }
    }

    #[test]
    fn zi_small_cases() {
        let p = sym();
        let x = as_map(&expand_zi(&c("0,0"), 1, &p).unwrap());
        assert_eq!(x, vec![(c("0,1"), qt("(1-t)/(q*t-1)")), (c("1,0"), QTScalar::one())]);
        assert_eq!(as_map(&expand_zi(&c("0,0"), 2, &p).unwrap()), vec![(c("0,1"), QTScalar::one())]);
    }

    #[test]
    fn pieri_matches_change_of_basis() {
        let p = sym();
        let m = Macdonald::new(p.clone());
        for eta in compositions_up_to(2, 2).into_iter().chain(compositions_up_to(3, 1)) {
            let n = eta.n();
            assert_eq!(
                as_map(&expand_e1(&eta, &p).unwrap()),
                oracle(&m, &LaurentPoly::elementary(n, 1), &eta),
                "{eta}"
            );
            assert_eq!(
                as_map(&expand_en1(&eta, &p).unwrap()),
                oracle(&m, &LaurentPoly::elementary(n, n - 1), &eta),
                "{eta}"
            );
            for i in 1..=n {
                let z = LaurentPoly::var(n, i).unwrap();
                assert_eq!(as_map(&expand_zi(&eta, i, &p).unwrap()), oracle(&m, &z, &eta), "{eta} z{i}");
            }
        }
    }

    #[test]
    fn btilde_is_b_at_successor() {
        let p = sym();
        for eta in compositions_up_to(3, 2) {
            for s in maximal_subsets(&eta) {
                let v = eta.spectral_vector(&p);
                let w = s.successor(&eta).spectral_vector(&p);
                assert_eq!(btilde(&v, &s, &p).unwrap(), b_set(&w, &s, &p).unwrap(), "{eta} {s}");
                for &i in s.positions() {
                    let lhs = chitilde(&v, &s, i, &p).unwrap();
                    let rhs = v[i - 1].clone() * &chi(&w, &s, i, &p).unwrap();
                    assert_eq!(lhs, rhs, "{eta} {s} {i}");
                }
            }
        }
    }

    #[test]
    fn binomial_examples() {
        let p = sym();
        assert!(binom_succ(&c("1"), &c("0"), &p).unwrap().is_one());
        assert!(binom_succ(&c("1,0"), &c("0,0"), &p).unwrap().is_one());
        assert!(binom_succ(&c("0,1"), &c("0,0"), &p).unwrap().is_one());
        assert!(binom_succ(&c("2,0"), &c("0,1"), &p).unwrap().is_zero());
        assert!(binom_succ(&c("2,0"), &c("0,0"), &p).is_err());
        let m = Macdonald::new(p.clone());
        for eta in compositions_up_to(2, 2) {
            for nu in crate::composition::compositions(2, eta.modulus() + 1) {
                assert_eq!(binom_succ(&nu, &eta, &p).unwrap(), binom_general(&nu, &eta, &m).unwrap(), "{nu} {eta}");
            }
        }
        assert_eq!(estar_eval_formula(&c("2"), &c("1"), &p).unwrap(), qt("q^2 - 1"));
    }

    #[test]
    fn en1_rejects_one_variable() {
        assert!(expand_en1(&c("2"), &sym()).is_err());
    }
}
