//! Deterministic choice of rational `(q, t)` points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CoreError, Result};

const RETRIES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplePoint {
    #[serde(serialize_with = "as_string")]
    pub q: BigRational,
    #[serde(serialize_with = "as_string")]
    pub t: BigRational,
}

fn as_string<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl std::fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(q, t) = ({}, {})", self.q, self.t)
    }
}

/// RNG derived from the run seed and a label, independent of scheduling.
pub fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let digest = Sha256::digest(format!("{seed}|{label}").as_bytes());
    ChaCha8Rng::from_seed(digest.into())
}

fn fraction(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(2..=97)), BigInt::from(rng.gen_range(2..=97)))
}

/// `q^j t^k = 1` for small exponents would make some denominator vanish.
fn degenerate(q: &BigRational, t: &BigRational, n: usize, m: u32) -> bool {
    let one = BigRational::one();
    if *q == one || *t == one || q == t {
        return true;
    }
    let kmax = 2 * n as i32;
    (1..=m as i32 + 2)
        .any(|j| (-kmax..=kmax).any(|k| num_traits::pow::Pow::pow(q, j) * num_traits::pow::Pow::pow(t, k) == one))
}

/// A nondegenerate point for `n` variables and modulus up to `m`.
pub fn draw(rng: &mut ChaCha8Rng, n: usize, m: u32) -> Result<SamplePoint> {
    for _ in 0..RETRIES {
        let (q, t) = (fraction(rng), fraction(rng));
        if !degenerate(&q, &t, n, m) {
            return Ok(SamplePoint { q, t });
        }
    }
    Err(CoreError::Unsupported(format!("no admissible sample point after {RETRIES} draws")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_admissible() {
        let a: Vec<_> = (0..5).map(|_| ()).scan(rng_for(7, "x"), |r, _| Some(draw(r, 3, 3).unwrap())).collect();
        let b: Vec<_> = (0..5).map(|_| ()).scan(rng_for(7, "x"), |r, _| Some(draw(r, 3, 3).unwrap())).collect();
        assert_eq!(a, b);
        for p in &a {
            assert!(!degenerate(&p.q, &p.t, 3, 3));
        }
        let two = BigRational::from_integer(2.into());
        assert!(degenerate(&two, &two.recip(), 2, 2));
    }
}
