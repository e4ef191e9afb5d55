//! JSON forms of polynomials and expansions. Coefficients are always
//! canonical strings so that no precision is lost.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::composition::Composition;
use crate::error::{CoreError, Result};
use crate::expansion::{Basis, Expansion, ParamsKind};
use crate::poly::LaurentPoly;
use crate::qt::{QTScalar, Scalar};

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct CompTermJson {
    comp: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ExpansionJson {
    params: ParamsKind,
    basis: Basis,
    #[serde(default)]
    source: Option<Vec<u32>>,
    terms: Vec<CompTermJson>,
}

/// Terms of a polynomial in the display order, as `[{"exp", "coeff"}]`.
pub fn poly_terms_json<S: Scalar>(p: &LaurentPoly<S>) -> Value {
    let terms: Vec<TermJson> =
        p.sorted_terms().into_iter().map(|(e, c)| TermJson { exp: e.clone(), coeff: c.to_string() }).collect();
    json!(terms)
}

pub fn poly_terms_from_json(n: usize, v: &Value) -> Result<LaurentPoly<QTScalar>> {
    let terms: Vec<TermJson> = serde_json::from_value(v.clone()).map_err(|e| CoreError::Parse(e.to_string()))?;
    let mut out = LaurentPoly::zero(n);
    for t in terms {
        if t.exp.len() != n {
            return Err(CoreError::LengthMismatch { expected: n, found: t.exp.len() });
        }
        out.add_term(t.exp, t.coeff.parse()?);
    }
    Ok(out)
}

/// A built polynomial with its provenance: `kind` is `E` or `Estar`.
pub fn poly_json<S: Scalar>(kind: Basis, params: ParamsKind, eta: &Composition, p: &LaurentPoly<S>) -> Value {
    json!({
        "n": eta.n(),
        "eta": eta.parts(),
        "kind": kind,
        "params": params,
        "text": p.to_string(),
        "terms": poly_terms_json(p),
    })
}

pub fn expansion_json<S: Scalar>(x: &Expansion<S>) -> Value {
    let e = ExpansionJson {
        params: x.params,
        basis: x.basis,
        source: x.source.as_ref().map(|c| c.parts().to_vec()),
        terms: x.terms().iter().map(|(c, v)| CompTermJson { comp: c.parts().to_vec(), coeff: v.to_string() }).collect(),
    };
    serde_json::to_value(e).expect("plain data serializes")
}

pub fn expansion_from_json(v: &Value) -> Result<Expansion<QTScalar>> {
    let e: ExpansionJson = serde_json::from_value(v.clone()).map_err(|e| CoreError::Parse(e.to_string()))?;
    let terms =
        e.terms.into_iter().map(|t| Ok((Composition::new(t.comp)?, t.coeff.parse()?))).collect::<Result<Vec<_>>>()?;
    let source = e.source.map(Composition::new).transpose()?;
    Expansion::new(e.basis, e.params, source, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_round_trip() {
        let x = Expansion::new(
            Basis::E,
            ParamsKind::Inv,
            Some("0,0".parse().unwrap()),
            vec![
                ("1,0".parse().unwrap(), QTScalar::one()),
                ("0,1".parse().unwrap(), "t*(q-1)/(q*t-1)".parse().unwrap()),
            ],
        )
        .unwrap();
        let v = expansion_json(&x);
        assert_eq!(v["params"], "inv");
        assert_eq!(v["basis"], "E");
        assert_eq!(v["terms"][1]["coeff"], "(q*t - t)/(q*t - 1)");
        assert_eq!(expansion_from_json(&v).unwrap(), x);
    }

    #[test]
    fn poly_round_trip() {
        let p: LaurentPoly<QTScalar> =
            LaurentPoly::from_terms(2, [(vec![1, 0], QTScalar::q()), (vec![0, 0], "1/t".parse().unwrap())]);
        let v = poly_terms_json(&p);
        assert_eq!(poly_terms_from_json(2, &v).unwrap(), p);
        assert!(poly_terms_from_json(3, &v).is_err());
    }
}
