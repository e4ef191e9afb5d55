//! Index sets `I = {t_1 < ... < t_s}` and the maximal/comaximal machinery.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{CoreError, Result};
use crate::qt::{Params, Scalar};

/// Strictly increasing nonempty list of 1-based positions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSet {
    positions: Vec<usize>,
}

impl IndexSet {
    pub fn new(positions: Vec<usize>, n: usize) -> Result<Self> {
        if positions.is_empty() {
            return Err(CoreError::InvalidIndexSet("empty".into()));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CoreError::InvalidIndexSet(format!("{positions:?} is not strictly increasing")));
        }
        if positions[0] == 0 || positions[positions.len() - 1] > n {
            return Err(CoreError::InvalidIndexSet(format!("{positions:?} not within 1..={n}")));
        }
        Ok(IndexSet { positions })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> usize {
        self.positions[0]
    }

    pub fn last(&self) -> usize {
        self.positions[self.positions.len() - 1]
    }

    pub fn contains(&self, i: usize) -> bool {
        self.positions.binary_search(&i).is_ok()
    }

    /// 0-based rank of `i` within the set.
    pub fn rank(&self, i: usize) -> Option<usize> {
        self.positions.binary_search(&i).ok()
    }

    /// Every nonempty subset of `{1, ..., n}`, lexicographic on position lists.
    pub fn all(n: usize) -> Vec<IndexSet> {
        let mut out: Vec<IndexSet> = (1u64..(1 << n))
            .map(|mask| IndexSet { positions: (0..n).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect() })
            .collect();
        out.sort();
        out
    }

    /// Maximality with respect to `lambda`:
    /// `lambda_j != lambda_{t_u}` for `t_{u-1} < j < t_u` and
    /// `lambda_j != lambda_{t_1} + 1` for `j > t_s`.
    pub fn is_maximal(&self, lambda: &Composition) -> bool {
        let l = lambda.parts();
        let mut prev = 0;
        for &tu in &self.positions {
            if l[prev..tu - 1].contains(&l[tu - 1]) {
                return false;
            }
            prev = tu;
        }
        let bump = l[self.first() - 1] + 1;
        !l[self.last()..].contains(&bump)
    }

    /// Comaximality with respect to `lambda`:
    /// `lambda_j != lambda_{t_u}` for `t_u < j < t_{u+1}` (with `t_{s+1} = n + 1`),
    /// `lambda_j != lambda_{t_s} - 1` for `j < t_1`, and `lambda_{t_s} != 0`.
    pub fn is_comaximal(&self, lambda: &Composition) -> bool {
        let l = lambda.parts();
        let n = l.len();
        let last = l[self.last() - 1];
        if last == 0 {
            return false;
        }
        for (u, &tu) in self.positions.iter().enumerate() {
            let next = self.positions.get(u + 1).copied().unwrap_or(n + 1);
            if l[tu..next - 1].contains(&l[tu - 1]) {
                return false;
            }
        }
        !l[..self.first() - 1].contains(&(last - 1))
    }

    /// `c_I(lambda)`: position `t_k` receives `lambda_{t_{k+1}}`, position
    /// `t_s` receives `lambda_{t_1} + 1`.
    pub fn successor(&self, lambda: &Composition) -> Composition {
        let l = lambda.parts();
        let mut c = l.to_vec();
        for w in self.positions.windows(2) {
            c[w[0] - 1] = l[w[1] - 1];
        }
        c[self.last() - 1] = l[self.first() - 1] + 1;
        Composition::new(c).expect("same length")
    }

    /// `Iv`: position `t_u` receives `v_{t_{u-1}}`, position `t_1` receives `v_{t_s}/q`.
    pub fn act<S: Scalar>(&self, v: &[S], p: &Params<S>) -> Vec<S> {
        let mut w = v.to_vec();
        for win in self.positions.windows(2) {
            w[win[1] - 1] = v[win[0] - 1].clone();
        }
        w[self.first() - 1] = v[self.last() - 1].clone() * &p.q_inv;
        w
    }
}

/// `J_eta`: the index sets maximal with respect to `eta`, lexicographically.
pub fn maximal_subsets(eta: &Composition) -> Vec<IndexSet> {
    IndexSet::all(eta.n()).into_iter().filter(|i| i.is_maximal(eta)).collect()
}

impl FromStr for IndexSet {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let positions = body
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| CoreError::Parse(format!("index {p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let n = positions.iter().copied().max().unwrap_or(0);
        IndexSet::new(positions, n)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.positions.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::compositions_up_to;
    use crate::qt::QTScalar;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn set(s: &str) -> IndexSet {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(IndexSet::new(vec![], 2).is_err());
        assert!(IndexSet::new(vec![2, 1], 2).is_err());
        assert!(IndexSet::new(vec![1, 3], 2).is_err());
        assert!(IndexSet::new(vec![0], 2).is_err());
    }

    #[test]
    fn maximal_examples() {
        assert_eq!(maximal_subsets(&c("0,0")), vec![set("1"), set("1,2")]);
        assert_eq!(maximal_subsets(&c("0")), vec![set("1")]);
    }

    #[test]
    fn comaximal_examples() {
        assert!(set("1,2").is_comaximal(&c("0,1")));
        assert!(!set("1").is_comaximal(&c("0,0")));
    }

    #[test]
    fn successor_examples() {
        assert_eq!(set("1").successor(&c("0,0")), c("1,0"));
        assert_eq!(set("1,2").successor(&c("0,0")), c("0,1"));
        assert_eq!(set("1,3").successor(&c("2,0,1")), c("1,0,3"));
    }

    #[test]
    fn act_examples() {
        let p = Params::symbolic();
        let z: Vec<QTScalar> = vec!["2".parse().unwrap(), "3".parse().unwrap(), "5".parse().unwrap()];
        let w = set("1,2").act(&z[..2], &p);
        assert_eq!(w, vec!["3/q".parse().unwrap(), z[0].clone()]);
        let w = set("2").act(&z, &p);
        assert_eq!(w, vec![z[0].clone(), "3/q".parse().unwrap(), z[2].clone()]);
    }

    #[test]
    fn comaximal_iff_successor_of_maximal() {
        for lambda in compositions_up_to(2, 3) {
            for i in IndexSet::all(2) {
                let from_maximal =
                    compositions_up_to(2, 3).into_iter().any(|nu| i.is_maximal(&nu) && i.successor(&nu) == lambda);
                assert_eq!(i.is_comaximal(&lambda), from_maximal, "I={i}, lambda={lambda}");
            }
        }
    }

    #[test]
    fn successor_spectral_vector_maps_back() {
        let p = Params::symbolic();
        for n in 1..=3 {
            for eta in compositions_up_to(n, 3) {
                for i in maximal_subsets(&eta) {
                    let lam = i.successor(&eta);
                    assert!(i.is_comaximal(&lam));
                    assert_eq!(lam.modulus(), eta.modulus() + 1);
                    assert_eq!(i.act(&lam.spectral_vector(&p), &p), eta.spectral_vector(&p), "eta={eta} I={i}");
                }
            }
        }
    }
}
