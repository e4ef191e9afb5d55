//! Linear combinations indexed by compositions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{CoreError, Result};
use crate::poly::LaurentPoly;
use crate::qt::Scalar;

/// Which family the compositions of an [`Expansion`] index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "E")]
    E,
    #[serde(rename = "Estar")]
    Estar,
    #[serde(rename = "monomial")]
    Monomial,
}

/// Whether a basis is taken at `(q, t)` or at `(1/q, 1/t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamsKind {
    Std,
    Inv,
}

impl ParamsKind {
    pub fn flip(self) -> Self {
        match self {
            ParamsKind::Std => ParamsKind::Inv,
            ParamsKind::Inv => ParamsKind::Std,
        }
    }
}

impl fmt::Display for ParamsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamsKind::Std => "std",
            ParamsKind::Inv => "inv",
        })
    }
}

impl std::str::FromStr for ParamsKind {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "std" => Ok(ParamsKind::Std),
            "inv" => Ok(ParamsKind::Inv),
            other => Err(CoreError::Parse(format!("params must be std or inv, got {other:?}"))),
        }
    }
}

/// Ordered list of `(composition, coefficient)` pairs.
///
/// Terms are distinct, nonzero and sorted from the largest composition down
/// in the fixed total order ([`Composition::total_cmp`]); compositions of
/// different modulus sort by modulus first.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion<S> {
    pub basis: Basis,
    pub params: ParamsKind,
    pub source: Option<Composition>,
    terms: Vec<(Composition, S)>,
}

fn order(a: &Composition, b: &Composition) -> Ordering {
    a.modulus().cmp(&b.modulus()).then_with(|| a.total_cmp(b))
}

impl<S: Scalar> Expansion<S> {
    pub fn new(
        basis: Basis,
        params: ParamsKind,
        source: Option<Composition>,
        terms: Vec<(Composition, S)>,
    ) -> Result<Self> {
        let mut terms: Vec<(Composition, S)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order(&b.0, &a.0));
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(CoreError::Unsupported("expansion has repeated compositions".into()));
        }
        Ok(Expansion { basis, params, source, terms })
    }

    /// Monomial expansion of a polynomial (no negative exponents).
    pub fn from_poly(p: &LaurentPoly<S>, params: ParamsKind) -> Result<Self> {
        let terms = p
            .terms()
            .map(|(e, c)| {
                let parts = e
                    .iter()
                    .map(|&x| u32::try_from(x).map_err(|_| CoreError::Unsupported("negative exponent".into())))
                    .collect::<Result<Vec<_>>>()?;
                Ok((Composition::new(parts)?, c.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Expansion::new(Basis::Monomial, params, None, terms)
    }

    pub fn to_poly(&self, n: usize) -> Result<LaurentPoly<S>> {
        if self.basis != Basis::Monomial {
            return Err(CoreError::Unsupported("only monomial expansions convert directly".into()));
        }
        Ok(LaurentPoly::from_terms(n, self.terms.iter().map(|(c, x)| (c.exponents(), x.clone()))))
    }

    pub fn terms(&self) -> &[(Composition, S)] {
        &self.terms
    }

    pub fn coeff(&self, c: &Composition) -> S {
        self.terms.iter().find(|(k, _)| k == c).map(|(_, x)| x.clone()).unwrap_or_else(S::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_coeffs<T: Scalar, F: FnMut(&S) -> Result<T>>(&self, mut f: F) -> Result<Expansion<T>> {
        let terms = self.terms.iter().map(|(c, x)| Ok((c.clone(), f(x)?))).collect::<Result<Vec<_>>>()?;
        Expansion::new(self.basis, self.params, self.source.clone(), terms)
    }

    /// Same compositions and exactly equal coefficients.
    pub fn same_terms(&self, other: &Expansion<S>) -> bool {
        self.terms == other.terms
    }
}

impl<S: Scalar> fmt::Display for Expansion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let name = match self.basis {
            Basis::E => "E",
            Basis::Estar => "E*",
            Basis::Monomial => "z^",
        };
        for (k, (c, x)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{name}{c}: {x}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt::QTScalar;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn terms_sorted_descending_and_zero_free() {
        let x = Expansion::new(
            Basis::E,
            ParamsKind::Inv,
            None,
            vec![(c("0,1"), QTScalar::t()), (c("1,0"), QTScalar::q()), (c("0,0"), QTScalar::zero())],
        )
        .unwrap();
        assert_eq!(x.terms().iter().map(|t| t.0.clone()).collect::<Vec<_>>(), vec![c("1,0"), c("0,1")]);
    }

    #[test]
    fn repeated_compositions_rejected() {
        let r = Expansion::new(Basis::E, ParamsKind::Inv, None, vec![(c("1"), QTScalar::q()), (c("1"), QTScalar::t())]);
        assert!(r.is_err());
    }
}
