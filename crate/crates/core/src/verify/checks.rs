//! One function per suite. Each compares two independently computed sides
//! and returns both renderings.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Case, HeckeOp, Relation};
use crate::composition::{compositions_up_to, ColengthConvention, Composition};
use crate::error::{CoreError, Result};
use crate::expansion::{Basis, Expansion, ParamsKind};
use crate::macdonald::oracle::{e_eigen, estar_linear};
use crate::macdonald::Macdonald;
use crate::pieri::{
    binom_general, binom_succ, estar_eval_formula, expand_e1, expand_en1, expand_zi, to_expansion, PieriTerm,
};
use crate::poly::LaurentPoly;
use crate::qt::{Params, Scalar};

/// Builders shared by all cases at one parameter point.
pub struct Ctx<S> {
    pub p: Params<S>,
    /// `E*(q, t)`; its top components are `E(1/q, 1/t)`.
    pub star: Macdonald<S>,
    /// `E*(1/q, 1/t)`; its top components are `E(q, t)`.
    pub std: Macdonald<S>,
    pub conv: ColengthConvention,
    pub seed: u64,
}

impl<S: Scalar> Ctx<S> {
    pub fn new(p: Params<S>, conv: ColengthConvention, seed: u64) -> Self {
        Ctx { star: Macdonald::new(p.clone()), std: Macdonald::new(p.inverted()), p, conv, seed }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub ok: bool,
    pub lhs: String,
    pub rhs: String,
}

impl Outcome {
    fn pass() -> Self {
        Outcome { ok: true, lhs: String::new(), rhs: String::new() }
    }

    fn compare<T: PartialEq + std::fmt::Display>(lhs: &T, rhs: &T) -> Self {
        match lhs == rhs {
            true => Self::pass(),
            false => Outcome { ok: false, lhs: lhs.to_string(), rhs: rhs.to_string() },
        }
    }

    fn fail(lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Outcome { ok: false, lhs: lhs.into(), rhs: rhs.into() }
    }

    /// First failure of a sequence of comparisons.
    fn all(items: impl IntoIterator<Item = Result<Outcome>>) -> Result<Self> {
        for o in items {
            let o = o?;
            if !o.ok {
                return Ok(o);
            }
        }
        Ok(Self::pass())
    }
}

fn eta(case: &Case) -> &Composition {
    case.eta.as_ref().expect("case carries eta")
}

fn flat<S: Scalar>(x: &Expansion<S>) -> String {
    x.to_string().replace('\n', "; ")
}

fn compare_expansions<S: Scalar>(a: &Expansion<S>, b: &Expansion<S>) -> Outcome {
    match a == b {
        true => Outcome::pass(),
        false => Outcome::fail(flat(a), flat(b)),
    }
}

/// `f * E_eta(1/q, 1/t)` expanded by unitriangular change of basis.
fn oracle_product<S: Scalar>(ctx: &Ctx<S>, f: &LaurentPoly<S>, eta: &Composition) -> Result<Expansion<S>> {
    let prod = f * &*ctx.star.e_inverted(eta)?;
    Expansion::new(Basis::E, ParamsKind::Inv, Some(eta.clone()), ctx.star.expand_in_e_basis(&prod)?)
}

fn random_poly<S: Scalar>(rng: &mut ChaCha8Rng, n: usize, max_deg: i32, terms: usize) -> LaurentPoly<S> {
    let mut p = LaurentPoly::zero(n);
    while p.len() < terms {
        let d = rng.gen_range(0..=max_deg);
        let mut e = vec![0; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        p.add_term(e, S::from_int(c));
    }
    p
}

fn case_input<S: Scalar>(ctx: &Ctx<S>, case: &Case, max_deg: i32) -> LaurentPoly<S> {
    match &case.monomial {
        Some(e) => LaurentPoly::monomial(e.clone(), S::one()),
        None => random_poly(&mut super::sample::rng_for(ctx.seed, &case.to_string()), case.n, max_deg, 4),
    }
}

fn hecke_apply<S: Scalar>(op: HeckeOp, i: usize, f: &LaurentPoly<S>, p: &Params<S>) -> Result<LaurentPoly<S>> {
    match op {
        HeckeOp::T => f.apply_ti(i, p),
        HeckeOp::H => f.apply_hi(i, p),
        HeckeOp::NegHbar => Ok(-&f.apply_hbar(i, p)?),
    }
}

pub fn hecke<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let (op, rel) = case.hecke.expect("hecke case");
    let i = case.index.expect("index");
    let f = case_input(ctx, case, 3);
    let x = |j: usize, g: &LaurentPoly<S>| hecke_apply(op, j, g, &ctx.p);
    match rel {
        Relation::Quadratic => {
            // (X - t)(X + 1) f = 0
            let g = &x(i, &f)? + &f;
            let h = &x(i, &g)? - &g.scale(&ctx.p.t);
            Ok(Outcome::compare(&h, &LaurentPoly::zero(case.n)))
        }
        Relation::Braid => {
            let lhs = x(i, &x(i + 1, &x(i, &f)?)?)?;
            let rhs = x(i + 1, &x(i, &x(i + 1, &f)?)?)?;
            Ok(Outcome::compare(&lhs, &rhs))
        }
        Relation::Commute(j) => Ok(Outcome::compare(&x(i, &x(j, &f)?)?, &x(j, &x(i, &f)?)?)),
    }
}

fn eigen_oracle<S: Scalar>(
    eta: &Composition,
    p: &Params<S>,
    conv: ColengthConvention,
) -> Result<std::result::Result<LaurentPoly<S>, Outcome>> {
    match e_eigen(eta, p, conv) {
        Ok(e) => Ok(Ok(e)),
        Err(CoreError::NullspaceDimension { found: 0 }) => {
            Ok(Err(Outcome::fail("no joint eigenvector", format!("spectral vector of {eta}"))))
        }
        Err(e) => Err(e),
    }
}

pub fn eigen<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let eta = eta(case);
    let p = &ctx.p;
    let e_std = ctx.std.e_inverted(eta)?;
    let e_inv = ctx.star.e_inverted(eta)?;
    let estar = ctx.star.estar(eta)?;
    let bars = eta.spectral_vector_with(p, ctx.conv);
    let mut checks: Vec<Result<Outcome>> = Vec::new();
    for (i, bar) in bars.iter().enumerate() {
        checks.push(e_std.apply_yi(i + 1, p).map(|y| Outcome::compare(&y, &e_std.scale(bar))));
        let xi = estar.apply_xi(i + 1, p);
        checks.push(bar.checked_inv().and_then(|b| xi.map(|x| Outcome::compare(&x, &estar.scale(&b)))));
    }
    for (params, built) in [(p.clone(), &e_std), (p.inverted(), &e_inv)] {
        checks.push(eigen_oracle(eta, &params, ctx.conv).map(|r| match r {
            Ok(e) => Outcome::compare(&**built, &e),
            Err(o) => o,
        }));
    }
    Outcome::all(checks)
}

pub fn vanishing<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let eta = eta(case);
    let estar = ctx.star.estar(eta)?;
    let zero = S::zero();
    let mut checks: Vec<Result<Outcome>> = compositions_up_to(eta.n(), eta.modulus())
        .into_iter()
        .filter(|nu| nu != eta)
        .map(|nu| ctx.star.estar_eval(eta, &nu).map(|v| Outcome::compare(&v, &zero)))
        .collect();
    checks.push(estar_linear(eta, &ctx.p).map(|lin| Outcome::compare(&*estar, &lin)));
    Outcome::all(checks)
}

pub fn keta<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let eta = eta(case);
    Ok(Outcome::compare(&ctx.star.estar_eval(eta, eta)?, &ctx.star.k_eta(eta)))
}

pub fn lemma1<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let i = case.index.expect("index");
    let f = case_input(ctx, case, 3);
    let direct = f.apply_ztilde(i, &ctx.p)?;
    match f.apply_ztilde_expansion(i, &ctx.p) {
        Ok(exp) => Ok(Outcome::compare(&direct, &exp)),
        Err(e @ CoreError::NonCancellation { .. }) => Ok(Outcome::fail(direct.to_string(), e.to_string())),
        Err(e) => Err(e),
    }
}

pub fn intertwine<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let eta = eta(case);
    let i = case.index.expect("index");
    let n = eta.n();
    let d = i64::from(eta.modulus());
    let p = &ctx.p;
    let lhs = ctx.star.estar(eta)?.scale(&p.q_pow(-d * (d - 1) / 2)).apply_zi(i, p)?;
    let zi = LaurentPoly::var(n, i)?;
    let terms = ctx.star.expand_in_e_basis(&(&zi * &*ctx.star.e_inverted(eta)?))?;
    let rhs = ctx.star.psi(n, &terms)?.scale(&p.q_pow(-(d + 1) * d / 2));
    Ok(Outcome::compare(&lhs, &rhs))
}

fn sum_by_target<S: Scalar>(eta: &Composition, groups: Vec<Vec<PieriTerm<S>>>) -> Result<Expansion<S>> {
    let mut acc: Vec<(Composition, S)> = Vec::new();
    for t in groups.into_iter().flatten() {
        match acc.iter_mut().find(|(c, _)| *c == t.target) {
            Some((_, x)) => *x = x.clone() + &t.coefficient,
            None => acc.push((t.target, t.coefficient)),
        }
    }
    Expansion::new(Basis::E, ParamsKind::Inv, Some(eta.clone()), acc)
}

pub fn zi<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let eta = eta(case);
    let n = eta.n();
    match case.index {
        Some(i) => {
            let closed = to_expansion(eta, &expand_zi(eta, i, &ctx.p)?)?;
            Ok(compare_expansions(&closed, &oracle_product(ctx, &LaurentPoly::var(n, i)?, eta)?))
        }
        None => {
            let groups = (1..=n).map(|i| expand_zi(eta, i, &ctx.p)).collect::<Result<Vec<_>>>()?;
            let summed = sum_by_target(eta, groups)?;
            Ok(compare_expansions(&summed, &to_expansion(eta, &expand_e1(eta, &ctx.p)?)?))
        }
    }
}

pub fn e1<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let eta = eta(case);
    let closed = to_expansion(eta, &expand_e1(eta, &ctx.p)?)?;
    Ok(compare_expansions(&closed, &oracle_product(ctx, &LaurentPoly::elementary(eta.n(), 1), eta)?))
}

pub fn en1<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let eta = eta(case);
    let n = eta.n();
    let terms = expand_en1(eta, &ctx.p)?;
    let closed = to_expansion(eta, &terms)?;
    let o = compare_expansions(&closed, &oracle_product(ctx, &LaurentPoly::elementary(n, n - 1), eta)?);
    if !o.ok || n != 2 {
        return Ok(o);
    }
    let e1 = expand_e1(eta, &ctx.p)?;
    let render = |v: &[PieriTerm<S>]| {
        v.iter().map(|t| format!("{} {} {}", t.target, t.subset, t.coefficient)).collect::<Vec<_>>().join("; ")
    };
    let (a, b) = (render(&terms), render(&e1));
    Ok(Outcome::compare(&a, &b))
}

pub fn binom<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let (eta, nu) = (eta(case), case.nu.as_ref().expect("nu"));
    Ok(Outcome::compare(&binom_succ(nu, eta, &ctx.p)?, &binom_general(nu, eta, &ctx.star)?))
}

pub fn evalstar<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let (eta, nu) = (eta(case), case.nu.as_ref().expect("nu"));
    Ok(Outcome::compare(&estar_eval_formula(nu, eta, &ctx.p)?, &ctx.star.estar_eval(eta, nu)?))
}

/// Degrees `<= |eta| + 1` of the binomial generating function against
/// `E_eta (1 + e_1 / (1 - q))`.
pub fn genfun<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let eta = eta(case);
    let n = eta.n();
    let p = &ctx.p;
    let e = ctx.star.e_inverted(eta)?;
    let mut lhs = LaurentPoly::zero(n);
    for nu in compositions_up_to(n, eta.modulus() + 1) {
        let b = binom_general(&nu, eta, &ctx.star)?;
        if b.is_zero() {
            continue;
        }
        let w =
            (b * &p.t_pow(nu.leg_sum() as i64 - eta.leg_sum() as i64) * &eta.d_prime(p)).checked_div(&nu.d_prime(p))?;
        lhs = &lhs + &ctx.star.e_inverted(&nu)?.scale(&w);
    }
    let factor = (S::one() - p.q.clone()).checked_inv()?;
    let rhs = &*e + &(&LaurentPoly::elementary(n, 1) * &*e).scale(&factor);
    Ok(Outcome::compare(&lhs, &rhs))
}

pub fn shift<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let eta = eta(case);
    let n = eta.n();
    let up = eta.plus_constant(1);
    let all = LaurentPoly::monomial(vec![1; n], S::one());
    Outcome::all(
        [&ctx.star, &ctx.std]
            .map(|m| -> Result<Outcome> { Ok(Outcome::compare(&*m.e_inverted(&up)?, &(&all * &*m.e_inverted(eta)?))) }),
    )
}

pub fn triangular<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    let eta = eta(case);
    let mut checks = Vec::new();
    for m in [&ctx.star, &ctx.std] {
        let e = m.e_inverted(eta)?;
        checks.push(Ok(Outcome::compare(&e.coeff(&eta.exponents()), &S::one())));
        for (exp, _) in e.terms() {
            let nu = Composition::new(exp.iter().map(|&x| x as u32).collect())?;
            let ok = nu == *eta || nu.precedes(eta)?;
            checks.push(Ok(if ok {
                Outcome::pass()
            } else {
                Outcome::fail(format!("z^{nu} in E{eta}"), format!("{nu} does not precede {eta}"))
            }));
        }
    }
    Outcome::all(checks)
}

/// `sum_i l'_eta(i) = C(n, 2)` on random compositions.
pub fn colength(seed: u64, case: &Case) -> Outcome {
    let n = case.n;
    let mut rng = super::sample::rng_for(seed, &case.to_string());
    let want = n * (n - 1) / 2;
    for _ in 0..case.count.expect("count") {
        let eta = Composition::new((0..n).map(|_| rng.gen_range(0..=6)).collect()).expect("n >= 1");
        let got: usize = eta.leg_colengths().iter().sum();
        if got != want {
            return Outcome::fail(format!("sum l' = {got} for {eta}"), want.to_string());
        }
    }
    Outcome::pass()
}

/// Jack coefficient against the limit of the Macdonald coefficient.
pub fn jack(case: &Case) -> Result<Outcome> {
    let eta = eta(case);
    let set = case.set.as_ref().expect("set");
    let alpha = case.alpha.expect("alpha");
    let closed = crate::jack::jack_coefficient(eta, set, alpha)?;
    let lim = crate::jack::macdonald_limit(eta, set, alpha)?;
    let o = Outcome::compare(&closed, &lim);
    match &case.expected {
        Some(x) if o.ok => Ok(Outcome::compare(&closed.to_string(), x)),
        _ => Ok(o),
    }
}
