//! Independent characterizations used to check the recursive construction.

use crate::composition::{compositions, compositions_up_to, ColengthConvention, Composition};
use crate::error::{CoreError, Result};
use crate::linalg::nullspace;
use crate::poly::LaurentPoly;
use crate::qt::{Params, Scalar};

fn from_basis<S: Scalar>(n: usize, basis: &[Composition], v: &[S], lead: &Composition) -> Result<LaurentPoly<S>> {
    let k = basis.iter().position(|b| b == lead).expect("lead is in the basis");
    let norm = v[k].checked_inv()?;
    Ok(LaurentPoly::from_terms(n, basis.iter().zip(v).map(|(b, x)| (b.exponents(), x.clone() * &norm))))
}

fn single<S: Scalar>(mut ns: Vec<Vec<S>>) -> Result<Vec<S>> {
    if ns.len() != 1 {
        return Err(CoreError::NullspaceDimension { found: ns.len() });
    }
    Ok(ns.pop().expect("one vector"))
}

/// `E_eta(z; q, t)` as the common eigenvector of `Y_1..Y_n` with eigenvalues
/// `eta_bar` in the given colength convention, normalized so `[z^eta] = 1`.
///
/// A wrong convention leaves no common eigenvector, reported as
/// [`CoreError::NullspaceDimension`].
pub fn e_eigen<S: Scalar>(eta: &Composition, p: &Params<S>, conv: ColengthConvention) -> Result<LaurentPoly<S>> {
    let n = eta.n();
    let basis = compositions(n, eta.modulus());
    let bars = eta.spectral_vector_with(p, conv);
    let index = |e: &[i32]| basis.iter().position(|b| b.exponents() == e);
    let mut rows = Vec::new();
    for (i, bar) in bars.iter().enumerate() {
        let mut block = vec![vec![S::zero(); basis.len()]; basis.len()];
        for (col, b) in basis.iter().enumerate() {
            let img = LaurentPoly::monomial(b.exponents(), S::one()).apply_yi(i + 1, p)?;
            for (e, c) in img.terms() {
                let r = index(e).ok_or_else(|| CoreError::Unsupported("Y leaves the homogeneous space".into()))?;
                block[r][col] = block[r][col].clone() + c;
            }
            block[col][col] = block[col][col].clone() - bar;
        }
        rows.extend(block);
    }
    let v = single(nullspace(rows, basis.len())?)?;
    from_basis(n, &basis, &v, eta)
}

/// `E*_eta(z; q, t)` from its vanishing conditions: degree at most `|eta|`,
/// zero at `nu_bar` for every other `nu` with `|nu| <= |eta|`, and `[z^eta] = 1`.
pub fn estar_linear<S: Scalar>(eta: &Composition, p: &Params<S>) -> Result<LaurentPoly<S>> {
    let n = eta.n();
    let basis = compositions_up_to(n, eta.modulus());
    let rows = basis
        .iter()
        .filter(|nu| *nu != eta)
        .map(|nu| {
            let pt = nu.spectral_vector(p);
            basis.iter().map(|b| LaurentPoly::monomial(b.exponents(), S::one()).evaluate(&pt)).collect()
        })
        .collect::<Result<Vec<Vec<S>>>>()?;
    let v = single(nullspace(rows, basis.len())?)?;
    from_basis(n, &basis, &v, eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::Macdonald;
    use crate::qt::QTScalar;

    #[test]
    fn recursion_matches_vanishing_characterization() {
        let p = Params::<QTScalar>::symbolic();
        let m = Macdonald::new(p.clone());
        for eta in compositions_up_to(2, 3).into_iter().chain(compositions_up_to(3, 2)) {
            assert_eq!(*m.estar(&eta).unwrap(), estar_linear(&eta, &p).unwrap(), "{eta}");
        }
    }

    #[test]
    fn top_component_matches_eigenvector() {
        let p = Params::<QTScalar>::symbolic();
        let m = Macdonald::new(p.clone());
        for eta in compositions_up_to(2, 3).into_iter().chain(compositions_up_to(3, 2)) {
            let e = e_eigen(&eta, &p.inverted(), ColengthConvention::Plus).unwrap();
            assert_eq!(*m.e_inverted(&eta).unwrap(), e, "{eta}");
        }
    }

    #[test]
    fn printed_minus_colength_has_no_eigenvector() {
        let p = Params::<QTScalar>::symbolic();
        let eta: Composition = "0,1".parse().unwrap();
        let r = e_eigen(&eta, &p, ColengthConvention::PrintedMinus);
        assert!(matches!(r, Err(CoreError::NullspaceDimension { found: 0 })), "{r:?}");
    }
}
