//! Construction of interpolation polynomials `E*_eta(z; q, t)` and of the
//! nonsymmetric polynomials `E_eta(z; 1/q, 1/t)` as their top components.
//!
//! A [`Macdonald`] builder is tied to one parameter point `(q, t)`. To get
//! `E_eta(z; q, t)` itself, use a builder over [`Params::inverted`].

pub mod oracle;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use log::debug;

use crate::composition::Composition;
use crate::error::{CoreError, Result};
use crate::poly::LaurentPoly;
use crate::qt::{Params, Scalar};

/// Persistent storage for built interpolation polynomials.
pub trait PolyStore<S>: Send + Sync {
    fn load(&self, eta: &Composition) -> Option<LaurentPoly<S>>;
    fn save(&self, eta: &Composition, poly: &LaurentPoly<S>);
}

type Memo<S> = RwLock<HashMap<Composition, Arc<LaurentPoly<S>>>>;

pub struct Macdonald<S> {
    params: Params<S>,
    estar: Memo<S>,
    e_top: Memo<S>,
    store: Option<Arc<dyn PolyStore<S>>>,
}

impl<S: Scalar> Macdonald<S> {
    pub fn new(params: Params<S>) -> Self {
        Macdonald { params, estar: RwLock::default(), e_top: RwLock::default(), store: None }
    }

    pub fn with_store(mut self, store: Arc<dyn PolyStore<S>>) -> Self {
        self.store = Some(store);
        self
    }

    pub fn params(&self) -> &Params<S> {
        &self.params
    }

    pub fn cached(&self) -> usize {
        self.estar.read().expect("cache lock").len()
    }

    fn memo_get(memo: &Memo<S>, eta: &Composition) -> Option<Arc<LaurentPoly<S>>> {
        memo.read().expect("cache lock").get(eta).cloned()
    }

    fn memo_put(memo: &Memo<S>, eta: &Composition, p: LaurentPoly<S>) -> Arc<LaurentPoly<S>> {
        let arc = Arc::new(p);
        memo.write().expect("cache lock").entry(eta.clone()).or_insert(arc).clone()
    }

    /// `E*_eta(z; q, t)` by the exchange/raising recursion.
    pub fn estar(&self, eta: &Composition) -> Result<Arc<LaurentPoly<S>>> {
        if let Some(p) = Self::memo_get(&self.estar, eta) {
            return Ok(p);
        }
        if let Some(p) = self.store.as_ref().and_then(|s| s.load(eta)) {
            return Ok(Self::memo_put(&self.estar, eta, p));
        }
        let p = self.estar_step(eta)?;
        if let Some(s) = &self.store {
            s.save(eta, &p);
        }
        Ok(Self::memo_put(&self.estar, eta, p))
    }

    fn estar_step(&self, eta: &Composition) -> Result<LaurentPoly<S>> {
        let n = eta.n();
        let parts = eta.parts();
        let p = &self.params;
        if eta.modulus() == 0 {
            return Ok(LaurentPoly::one(n));
        }
        if parts[n - 1] >= 1 {
            // eta = Phi(mu): E*_eta = q^{mu_1} Phi E*_mu
            let mut mu = vec![parts[n - 1] - 1];
            mu.extend_from_slice(&parts[..n - 1]);
            let mu = Composition::new(mu)?;
            debug!("raise {mu} -> {eta}");
            let base = self.estar(&mu)?;
            return Ok(base.apply_phi(p).scale(&p.q_pow(i64::from(mu.parts()[0]))));
        }
        // Largest k with eta_k > 0; then eta_{k+1} = 0 and mu = s_k eta has an ascent at k.
        let k = parts.iter().rposition(|&x| x > 0).expect("nonzero modulus") + 1;
        let mu = eta.swap(k)?;
        debug!("exchange {mu} -> {eta} at {k}");
        let base = self.estar(&mu)?;
        let delta = mu.delta(k, &p.inverted())?;
        let c = (p.t.clone() - S::one()).checked_div(&(S::one() - delta))?;
        Ok(&base.apply_hi(k, p)? - &base.scale(&c))
    }

    /// `E_eta(z; 1/q, 1/t)`, the top homogeneous component of `E*_eta(z; q, t)`.
    pub fn e_inverted(&self, eta: &Composition) -> Result<Arc<LaurentPoly<S>>> {
        if let Some(p) = Self::memo_get(&self.e_top, eta) {
            return Ok(p);
        }
        let top = self.estar(eta)?.top_component();
        Ok(Self::memo_put(&self.e_top, eta, top))
    }

    /// `k_eta = E*_eta(eta_bar) = prod_i eta_bar_i^{eta_i} d'_eta(1/q, 1/t)`.
    pub fn k_eta(&self, eta: &Composition) -> S {
        k_eta(eta, &self.params)
    }

    /// `E*_eta(nu_bar)`.
    pub fn estar_eval(&self, eta: &Composition, nu: &Composition) -> Result<S> {
        if eta.n() != nu.n() {
            return Err(CoreError::LengthMismatch { expected: eta.n(), found: nu.n() });
        }
        self.estar(eta)?.evaluate(&nu.spectral_vector(&self.params))
    }

    /// Coefficients of `f` in the basis `E_nu(z; 1/q, 1/t)`.
    ///
    /// Each homogeneous component is reduced by repeatedly cancelling its
    /// largest monomial in the total order; `E_nu` has leading monomial
    /// `z^nu` with coefficient one, so the process is unitriangular.
    pub fn expand_in_e_basis(&self, f: &LaurentPoly<S>) -> Result<Vec<(Composition, S)>> {
        if !f.is_polynomial() {
            return Err(CoreError::Unsupported("expansion of a Laurent polynomial with negative exponents".into()));
        }
        let mut out = Vec::new();
        for d in f.degrees() {
            let mut rem = f.homogeneous_component(d);
            while !rem.is_zero() {
                let (lead, c) = rem
                    .terms()
                    .map(|(e, c)| (Composition::new(e.iter().map(|&x| x as u32).collect()).expect("n >= 1"), c))
                    .max_by(|a, b| a.0.total_cmp(&b.0))
                    .map(|(e, c)| (e, c.clone()))
                    .expect("nonzero remainder");
                let basis = self.e_inverted(&lead)?;
                rem = &rem - &basis.scale(&c);
                if !rem.coeff(&lead.exponents()).is_zero() {
                    return Err(CoreError::Unsupported(format!("E{lead} does not lead with z^{lead}")));
                }
                out.push((lead, c));
            }
        }
        Ok(out)
    }

    /// `Psi`: replaces each `E_nu(z; 1/q, 1/t)` by `E*_nu(z; q, t)`.
    pub fn psi(&self, n: usize, terms: &[(Composition, S)]) -> Result<LaurentPoly<S>> {
        let mut acc = LaurentPoly::zero(n);
        for (nu, c) in terms {
            acc = &acc + &self.estar(nu)?.scale(c);
        }
        Ok(acc)
    }
}

/// Closed form `E*_eta(eta_bar)`.
pub fn k_eta<S: Scalar>(eta: &Composition, p: &Params<S>) -> S {
    let bars = eta.spectral_vector(p);
    let lead = eta
        .parts()
        .iter()
        .zip(&bars)
        .fold(S::one(), |acc, (&e, b)| acc * &b.pow(e as i32).expect("spectral entries are nonzero"));
    lead * &eta.d_prime(&p.inverted())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{compositions, compositions_up_to};
    use crate::qt::QTScalar;

    type P = LaurentPoly<QTScalar>;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn qt(s: &str) -> QTScalar {
        s.parse().unwrap()
    }

    fn z(n: usize, i: usize) -> P {
        P::var(n, i).unwrap()
    }

    #[test]
    fn small_estar_examples() {
        let m = Macdonald::new(Params::symbolic());
        assert_eq!(*m.estar(&c("0,0,0")).unwrap(), P::one(3));
        assert_eq!(*m.estar(&c("1")).unwrap(), &z(1, 1) - &P::one(1));
        assert_eq!(*m.estar(&c("0,1")).unwrap(), &z(2, 2) - &P::constant(2, qt("1/t")));
        assert_eq!(m.estar(&c("1")).unwrap().coeff(&[1]), QTScalar::one());
    }

    #[test]
    fn e_inverted_examples() {
        let m = Macdonald::new(Params::symbolic());
        assert_eq!(*m.e_inverted(&c("1")).unwrap(), z(1, 1));
        let expected = &z(2, 1) + &z(2, 2).scale(&qt("(1-t)/(1-q*t)"));
        assert_eq!(*m.e_inverted(&c("1,0")).unwrap(), expected);
        let std = Macdonald::new(Params::symbolic().inverted());
        let expected = &z(2, 1) + &z(2, 2).scale(&qt("q*(t-1)/(q*t-1)"));
        assert_eq!(*std.e_inverted(&c("1,0")).unwrap(), expected);
        assert_eq!(*std.e_inverted(&c("0,1")).unwrap(), z(2, 2));
    }

    #[test]
    fn k_eta_examples() {
        let m = Macdonald::new(Params::symbolic());
        assert!(m.k_eta(&c("0,0,0")).is_one());
        assert_eq!(m.k_eta(&c("1")), qt("q - 1"));
        assert_eq!(m.k_eta(&c("0,1")), qt("q*(1 - 1/(q*t))"));
        for eta in compositions_up_to(2, 3) {
            assert_eq!(m.estar_eval(&eta, &eta).unwrap(), m.k_eta(&eta), "{eta}");
        }
    }

    #[test]
    fn estar_eval_examples() {
        let m = Macdonald::new(Params::symbolic());
        assert!(m.estar_eval(&c("1,0"), &c("0,0")).unwrap().is_zero());
        assert!(m.estar_eval(&c("0,0"), &c("3,1")).unwrap().is_one());
    }

    #[test]
    fn expansion_examples() {
        let m = Macdonald::new(Params::symbolic());
        let x = m.expand_in_e_basis(&z(2, 2)).unwrap();
        assert_eq!(x, vec![(c("0,1"), QTScalar::one())]);
        let e10 = m.e_inverted(&c("1,0")).unwrap();
        assert_eq!(m.expand_in_e_basis(&e10).unwrap(), vec![(c("1,0"), QTScalar::one())]);
        let e1 = &z(2, 1) + &z(2, 2);
        let x = m.expand_in_e_basis(&e1).unwrap();
        assert_eq!(x, vec![(c("1,0"), QTScalar::one()), (c("0,1"), qt("t*(q-1)/(q*t-1)"))]);
    }

    #[test]
    fn raising_step() {
        let m = Macdonald::new(Params::symbolic());
        for mu in compositions(2, 2) {
            let lhs = m.estar(&mu).unwrap().apply_phi(m.params());
            let rhs = m.estar(&mu.phi()).unwrap().scale(&m.params().q_pow(-i64::from(mu.parts()[0])));
            assert_eq!(lhs, rhs, "{mu}");
        }
    }
}
