//! Compositions and their statistics.
//!
//! Positions are 1-based in every public method, matching the usual
//! indexing `eta = (eta_1, ..., eta_n)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::qt::{Params, Scalar};

/// Which sign joins the two counts in the leg colength.
///
/// `Plus` is the correct statistic. `PrintedMinus` exists only so the
/// verification harness can show that it breaks the eigenvalue problem.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ColengthConvention {
    #[default]
    Plus,
    PrintedMinus,
}

/// A finite sequence of non-negative integers of fixed length `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition {
    parts: Vec<u32>,
}

/// A cell `(row, col)` of the diagram `{(i, j) : 1 <= j <= eta_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiagramCell {
    pub row: usize,
    pub col: usize,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(CoreError::LengthMismatch { expected: 1, found: 0 });
        }
        Ok(Composition { parts })
    }

    pub fn zeros(n: usize) -> Self {
        Composition::new(vec![0; n]).expect("n >= 1")
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn modulus(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The part at 1-based position `i`.
    pub fn get(&self, i: usize) -> Result<u32> {
        self.check(i)?;
        Ok(self.parts[i - 1])
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            return Err(CoreError::IndexOutOfRange { index: i, max: self.n() });
        }
        Ok(())
    }

    pub fn min_part(&self) -> u32 {
        *self.parts.iter().min().expect("nonempty")
    }

    pub fn max_part(&self) -> u32 {
        *self.parts.iter().max().expect("nonempty")
    }

    /// Decreasing rearrangement `eta^+`.
    pub fn partition(&self) -> Vec<u32> {
        let mut p = self.parts.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    pub fn reversed(&self) -> Self {
        Composition { parts: self.parts.iter().rev().copied().collect() }
    }

    /// `eta + (m^n)`.
    pub fn plus_constant(&self, m: u32) -> Self {
        Composition { parts: self.parts.iter().map(|p| p + m).collect() }
    }

    /// `eta - (min(eta)^n)`.
    pub fn minus_min(&self) -> Self {
        let m = self.min_part();
        Composition { parts: self.parts.iter().map(|p| p - m).collect() }
    }

    pub fn exponents(&self) -> Vec<i32> {
        self.parts.iter().map(|&p| p as i32).collect()
    }

    /// `l'_eta(i)` under the plus convention.
    pub fn leg_colength(&self, i: usize) -> Result<usize> {
        self.check(i)?;
        Ok(self.colength0(i - 1))
    }

    fn colength0(&self, i: usize) -> usize {
        let e = self.parts[i];
        let before = self.parts[..i].iter().filter(|&&x| x >= e).count();
        let after = self.parts[i + 1..].iter().filter(|&&x| x > e).count();
        before + after
    }

    pub fn leg_colengths(&self) -> Vec<usize> {
        (0..self.n()).map(|i| self.colength0(i)).collect()
    }

    /// Colength vector under an explicit sign convention.
    pub fn leg_colengths_with(&self, conv: ColengthConvention) -> Vec<i64> {
        (0..self.n())
            .map(|i| {
                let e = self.parts[i];
                let before = self.parts[..i].iter().filter(|&&x| x >= e).count() as i64;
                let after = self.parts[i + 1..].iter().filter(|&&x| x > e).count() as i64;
                match conv {
                    ColengthConvention::Plus => before + after,
                    ColengthConvention::PrintedMinus => before - after,
                }
            })
            .collect()
    }

    /// `(eta_bar_1, ..., eta_bar_n)` with `eta_bar_i = q^{eta_i} t^{-l'(i)}`.
    pub fn spectral_vector<S: Scalar>(&self, p: &Params<S>) -> Vec<S> {
        self.spectral_vector_with(p, ColengthConvention::Plus)
    }

    pub fn spectral_vector_with<S: Scalar>(&self, p: &Params<S>, conv: ColengthConvention) -> Vec<S> {
        self.parts.iter().zip(self.leg_colengths_with(conv)).map(|(&e, l)| p.qt_pow(i64::from(e), -l)).collect()
    }

    /// `eta_bar_i / eta_bar_{i+1}` for `1 <= i <= n - 1`.
    pub fn delta<S: Scalar>(&self, i: usize, p: &Params<S>) -> Result<S> {
        if i == 0 || i >= self.n() {
            return Err(CoreError::IndexOutOfRange { index: i, max: self.n().saturating_sub(1) });
        }
        let l = self.leg_colengths();
        let dq = i64::from(self.parts[i - 1]) - i64::from(self.parts[i]);
        let dt = l[i] as i64 - l[i - 1] as i64;
        Ok(p.qt_pow(dq, dt))
    }

    pub fn cells(&self) -> impl Iterator<Item = DiagramCell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| (1..=e as usize).map(move |j| DiagramCell { row: i + 1, col: j }))
    }

    fn check_cell(&self, s: DiagramCell) -> Result<()> {
        if s.row == 0 || s.row > self.n() || s.col == 0 || s.col > self.parts[s.row - 1] as usize {
            return Err(CoreError::CellOutsideDiagram { row: s.row, col: s.col, composition: self.to_string() });
        }
        Ok(())
    }

    pub fn arm(&self, s: DiagramCell) -> Result<usize> {
        self.check_cell(s)?;
        Ok(self.parts[s.row - 1] as usize - s.col)
    }

    pub fn leg(&self, s: DiagramCell) -> Result<usize> {
        self.check_cell(s)?;
        let (i, j) = (s.row - 1, s.col as u32);
        let e = self.parts[i];
        let below = self.parts[i + 1..].iter().filter(|&&x| (j..=e).contains(&x)).count();
        let above = self.parts[..i].iter().filter(|&&x| (j..=e).contains(&(x + 1))).count();
        Ok(below + above)
    }

    /// `(arm, leg)` of every cell, row by row.
    pub fn arm_legs(&self) -> Vec<(usize, usize)> {
        self.cells().map(|s| (self.arm(s).expect("own cell"), self.leg(s).expect("own cell"))).collect()
    }

    /// `prod_s (1 - q^{a(s)+1} t^{l(s)})` in the given parameters; pass
    /// inverted parameters for `d'_eta(1/q, 1/t)`.
    pub fn d_prime<S: Scalar>(&self, p: &Params<S>) -> S {
        self.arm_legs().into_iter().fold(S::one(), |acc, (a, l)| acc * &(S::one() - p.qt_pow(a as i64 + 1, l as i64)))
    }

    /// `l(eta)`, the total leg length.
    pub fn leg_sum(&self) -> usize {
        self.arm_legs().iter().map(|&(_, l)| l).sum()
    }

    /// `(eta_2, ..., eta_n, eta_1 + 1)`.
    pub fn phi(&self) -> Self {
        let mut parts = self.parts[1..].to_vec();
        parts.push(self.parts[0] + 1);
        Composition { parts }
    }

    /// Exchanges positions `i` and `i + 1`.
    pub fn swap(&self, i: usize) -> Result<Self> {
        if i == 0 || i >= self.n() {
            return Err(CoreError::IndexOutOfRange { index: i, max: self.n().saturating_sub(1) });
        }
        let mut parts = self.parts.clone();
        parts.swap(i - 1, i);
        Ok(Composition { parts })
    }

    /// Strict order `self < other` used for triangularity.
    pub fn precedes(&self, other: &Composition) -> Result<bool> {
        if self.n() != other.n() {
            return Err(CoreError::LengthMismatch { expected: other.n(), found: self.n() });
        }
        if self.modulus() != other.modulus() {
            return Err(CoreError::ModulusMismatch { expected: other.modulus(), found: self.modulus() });
        }
        if self == other {
            return Ok(false);
        }
        let (a, b) = (self.partition(), other.partition());
        if a != b {
            return Ok(dominated(&a, &b));
        }
        Ok(dominated(&self.parts, &other.parts))
    }

    /// Comparison in the fixed linear extension of [`precedes`](Self::precedes):
    /// lexicographic on `eta^+`, then lexicographic on `eta`.
    pub fn total_cmp(&self, other: &Composition) -> Ordering {
        self.partition().cmp(&other.partition()).then_with(|| self.parts.cmp(&other.parts))
    }

    /// Sort key realizing [`total_cmp`](Self::total_cmp).
    pub fn total_key(&self) -> (Vec<u32>, Vec<u32>) {
        (self.partition(), self.parts.clone())
    }
}

/// Partial-sum dominance `a <= b`.
fn dominated(a: &[u32], b: &[u32]) -> bool {
    let mut s = 0i64;
    for (x, y) in a.iter().zip(b) {
        s += i64::from(*y) - i64::from(*x);
        if s < 0 {
            return false;
        }
    }
    true
}

/// All compositions of length `n` and modulus `m`, in lexicographic order.
pub fn compositions(n: usize, m: u32) -> Vec<Composition> {
    fn rec(n: usize, m: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if n == 1 {
            prefix.push(m);
            out.push(Composition { parts: prefix.clone() });
            prefix.pop();
            return;
        }
        for a in 0..=m {
            prefix.push(a);
            rec(n - 1, m - a, prefix, out);
            prefix.pop();
        }
    }
    assert!(n >= 1, "compositions need at least one part");
    let mut out = Vec::new();
    rec(n, m, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All compositions of length `n` with modulus at most `max`, by modulus then lexicographically.
pub fn compositions_up_to(n: usize, max: u32) -> Vec<Composition> {
    (0..=max).flat_map(|m| compositions(n, m)).collect()
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = CoreError;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Composition::new(v)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Vec<u32> {
        c.parts
    }
}

impl FromStr for Composition {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = body
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| CoreError::Parse(format!("composition part {p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt::QTScalar;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn qt(s: &str) -> QTScalar {
        s.parse().unwrap()
    }

    #[test]
    fn colength_examples() {
        assert_eq!(c("0,0,0").leg_colength(2).unwrap(), 1);
        assert_eq!(c("0,0,0").leg_colengths(), vec![0, 1, 2]);
        assert_eq!(c("1,0,0").leg_colengths(), vec![0, 1, 2]);
        assert_eq!(c("0,1,0").leg_colengths(), vec![1, 0, 2]);
        assert_eq!(c("0,1").leg_colength(3).unwrap_err(), CoreError::IndexOutOfRange { index: 3, max: 2 });
    }

    #[test]
    fn spectral_and_delta_examples() {
        let p = Params::symbolic();
        assert_eq!(c("0,0").spectral_vector(&p), vec![qt("1"), qt("1/t")]);
        assert_eq!(c("0,1").spectral_vector(&p), vec![qt("1/t"), qt("q")]);
        assert_eq!(c("1,0,0").spectral_vector(&p), vec![qt("q"), qt("1/t"), qt("t^-2")]);
        assert_eq!(c("0,0").delta(1, &p).unwrap(), qt("t"));
        assert_eq!(c("1,0").delta(1, &p).unwrap(), qt("q*t"));
        assert_eq!(c("0,1").delta(1, &p).unwrap(), qt("1/(q*t)"));
    }

    #[test]
    fn arm_leg_examples() {
        let s = DiagramCell { row: 1, col: 1 };
        assert_eq!((c("1").arm(s).unwrap(), c("1").leg(s).unwrap()), (0, 0));
        let s = DiagramCell { row: 2, col: 1 };
        assert_eq!((c("0,1").arm(s).unwrap(), c("0,1").leg(s).unwrap()), (0, 1));
        assert_eq!(c("2,1").arm_legs(), vec![(1, 1), (0, 0), (0, 0)]);
        assert!(matches!(c("0,1").arm(DiagramCell { row: 1, col: 1 }), Err(CoreError::CellOutsideDiagram { .. })));
    }

    #[test]
    fn d_prime_examples() {
        let inv = Params::symbolic().inverted();
        assert_eq!(c("0,0").d_prime(&inv), qt("1"));
        assert_eq!(c("1,0").d_prime(&inv), qt("1 - 1/q"));
        assert_eq!(c("0,1").d_prime(&inv), qt("1 - 1/(q*t)"));
        assert_eq!(c("0,1").leg_sum(), 1);
        assert_eq!(c("1,1").leg_sum(), 1);
    }

    #[test]
    fn order_examples() {
        assert!(c("0,1").precedes(&c("1,0")).unwrap());
        assert!(c("1,1").precedes(&c("2,0")).unwrap());
        assert!(!c("1,1").precedes(&c("1,1")).unwrap());
        assert!(matches!(c("1,1").precedes(&c("1,0")), Err(CoreError::ModulusMismatch { .. })));
    }

    #[test]
    fn phi_and_swap_examples() {
        assert_eq!(c("0,0").phi(), c("0,1"));
        assert_eq!(c("2,1").phi(), c("1,3"));
        assert_eq!(c("0,1").swap(1).unwrap(), c("1,0"));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all = compositions(2, 2);
        assert_eq!(all, vec![c("0,2"), c("1,1"), c("2,0")]);
        assert_eq!(compositions_up_to(3, 3).len(), 1 + 3 + 6 + 10);
    }

    #[test]
    fn precedes_is_a_strict_partial_order() {
        for n in 1..=3 {
            for m in 0..=4 {
                let all = compositions(n, m);
                for a in &all {
                    assert!(!a.precedes(a).unwrap());
                    for b in &all {
                        let ab = a.precedes(b).unwrap();
                        assert!(!(ab && b.precedes(a).unwrap()));
                        if ab {
                            assert_eq!(a.total_cmp(b), Ordering::Less, "{a} < {b} must be respected");
                            for d in &all {
                                if b.precedes(d).unwrap() {
                                    assert!(a.precedes(d).unwrap());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        assert_eq!(c("2,0,1").to_string(), "(2,0,1)");
        assert_eq!(c("(2,0,1)"), c("2,0,1"));
        assert!(matches!("2,x".parse::<Composition>(), Err(CoreError::Parse(_))));
    }
}
