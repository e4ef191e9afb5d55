//! The verification harness: every closed form and structural identity is
//! checked against an independent computation, either symbolically over
//! `Q(q, t)` or at seeded rational sample points.
//!
//! Reports come back in a canonical order (suite, then `n`, then case) no
//! matter how many worker threads ran them.

pub mod checks;
pub mod sample;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use log::info;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::DiskStore;
use crate::composition::{compositions, compositions_up_to, ColengthConvention, Composition};
use crate::error::{CoreError, Result};
use crate::expansion::ParamsKind;
use crate::macdonald::Macdonald;
use crate::qt::{Params, QTScalar, Scalar};
use crate::subsets::{maximal_subsets, IndexSet};
use checks::{Ctx, Outcome};
use sample::SamplePoint;

macro_rules! suites {
    ($($v:ident => $s:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        #[serde(rename_all = "lowercase")]
        pub enum Suite { $($v),* }

        impl Suite {
            /// All suites in report order.
            pub const ALL: &'static [Suite] = &[$(Suite::$v),*];

            pub fn name(self) -> &'static str {
                match self { $(Suite::$v => $s),* }
            }
        }

        impl FromStr for Suite {
            type Err = CoreError;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($s => Ok(Suite::$v),)*
                    _ => Err(CoreError::Parse(format!("unknown suite {s:?}"))),
                }
            }
        }
    };
}

suites! {
    Hecke => "hecke",
    Eigen => "eigen",
    Vanishing => "vanishing",
    Keta => "keta",
    Triangular => "triangular",
    Shift => "shift",
    Lemma1 => "lemma1",
    Intertwine => "intertwine",
    Zi => "zi",
    E1 => "e1",
    En1 => "en1",
    Binom => "binom",
    Evalstar => "evalstar",
    Genfun => "genfun",
    Jack => "jack",
    Colength => "colength",
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a comma-separated suite list; `all` selects everything.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s.trim() == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut v = s.split(',').map(|x| x.trim().parse()).collect::<Result<Vec<Suite>>>()?;
    v.sort();
    v.dedup();
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Sampled,
}

impl FromStr for Mode {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "sampled" => Ok(Mode::Sampled),
            _ => Err(CoreError::Parse(format!("mode must be symbolic or sampled, got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckeOp {
    T,
    H,
    NegHbar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Quadratic,
    Braid,
    Commute(usize),
}

/// One verification case. Unused fields stay `None`.
#[derive(Clone, Debug, Default)]
pub struct Case {
    pub suite: Option<Suite>,
    pub n: usize,
    pub eta: Option<Composition>,
    pub nu: Option<Composition>,
    pub index: Option<usize>,
    pub set: Option<IndexSet>,
    pub alpha: Option<u32>,
    pub hecke: Option<(HeckeOp, Relation)>,
    pub monomial: Option<Vec<i32>>,
    pub draw: Option<usize>,
    pub count: Option<usize>,
    pub expected: Option<String>,
}

impl Case {
    fn new(suite: Suite, n: usize) -> Self {
        Case { suite: Some(suite), n, ..Default::default() }
    }

    fn with_eta(suite: Suite, eta: &Composition) -> Self {
        Case { eta: Some(eta.clone()), ..Case::new(suite, eta.n()) }
    }

    pub fn suite(&self) -> Suite {
        self.suite.expect("case has a suite")
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        if let Some(e) = &self.eta {
            write!(f, " eta={e}")?;
        }
        if let Some(nu) = &self.nu {
            write!(f, " nu={nu}")?;
        }
        if let Some((op, rel)) = &self.hecke {
            write!(f, " op={op:?} rel={rel:?}")?;
        }
        match (self.suite, self.index) {
            (Some(Suite::Zi), None) => write!(f, " sum over i")?,
            (_, Some(i)) => write!(f, " i={i}")?,
            _ => {}
        }
        if let Some(s) = &self.set {
            write!(f, " I={s}")?;
        }
        if let Some(a) = self.alpha {
            write!(f, " alpha={a}")?;
        }
        if let Some(m) = &self.monomial {
            write!(f, " input=z^{m:?}")?;
        }
        if let Some(d) = self.draw {
            write!(f, " draw={d}")?;
        }
        if let Some(c) = self.count {
            write!(f, " count={c}")?;
        }
        if let Some(x) = &self.expected {
            write!(f, " expect={x}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suites: Vec<Suite>,
    pub ns: Vec<usize>,
    /// Per-run override of the modulus bound; `None` uses [`default_max_modulus`].
    pub max_modulus: Option<u32>,
    pub mode: Mode,
    pub seed: u64,
    /// Sample points per case in sampled mode (the `lemma1` suite uses at least 5).
    pub samples: usize,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    pub colength: ColengthConvention,
    pub cache_dir: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suites: Suite::ALL.to_vec(),
            ns: vec![1, 2, 3],
            max_modulus: None,
            mode: Mode::Symbolic,
            seed: 0,
            samples: 3,
            jobs: 0,
            colength: ColengthConvention::Plus,
            cache_dir: None,
        }
    }
}

pub fn default_max_modulus(n: usize) -> u32 {
    if n <= 2 {
        4
    } else {
        3
    }
}

const LEMMA1_POINTS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub suite: Suite,
    pub case: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<u32>>,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<SamplePoint>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{tag} {} {} [{}", self.suite, self.case, self.mode)?;
        if let Some(s) = self.seed {
            write!(f, " seed={s}")?;
        }
        f.write_str("]")?;
        for p in &self.points {
            write!(f, "\n    at {p}")?;
        }
        if let (Some(l), Some(r)) = (&self.lhs, &self.rhs) {
            write!(f, "\n    lhs: {l}\n    rhs: {r}")?;
        }
        Ok(())
    }
}

fn etas(n: usize, m: u32) -> Vec<Composition> {
    compositions_up_to(n, m)
}

fn hecke_cases(n: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for op in [HeckeOp::T, HeckeOp::H, HeckeOp::NegHbar] {
        for i in 1..n {
            let mut rels = vec![Relation::Quadratic];
            if i + 1 < n {
                rels.push(Relation::Braid);
            }
            rels.extend((i + 2..n).map(Relation::Commute));
            for rel in rels {
                out.push(Case { hecke: Some((op, rel)), index: Some(i), ..Case::new(Suite::Hecke, n) });
            }
        }
    }
    out
}

fn lemma1_cases(n: usize, mode: Mode) -> Vec<Case> {
    let mut out = Vec::new();
    for i in 1..=n {
        match mode {
            Mode::Symbolic => {
                for eta in etas(n, 2) {
                    out.push(Case { index: Some(i), monomial: Some(eta.exponents()), ..Case::new(Suite::Lemma1, n) });
                }
            }
            Mode::Sampled => {
                for d in 0..3 {
                    out.push(Case { index: Some(i), draw: Some(d), ..Case::new(Suite::Lemma1, n) });
                }
            }
        }
    }
    out
}

fn successor_pairs(suite: Suite, n: usize, m: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for eta in etas(n, m.saturating_sub(1)) {
        for nu in compositions(n, eta.modulus() + 1) {
            out.push(Case { nu: Some(nu), ..Case::with_eta(suite, &eta) });
        }
    }
    out
}

fn suite_cases(suite: Suite, n: usize, m: u32, mode: Mode) -> Vec<Case> {
    let per_eta = |range: Vec<Composition>| range.iter().map(|e| Case::with_eta(suite, e)).collect::<Vec<_>>();
    match suite {
        Suite::Hecke => hecke_cases(n),
        Suite::Eigen | Suite::Vanishing | Suite::Keta | Suite::Triangular | Suite::E1 => per_eta(etas(n, m)),
        Suite::En1 if n >= 2 => per_eta(etas(n, m)),
        Suite::En1 => Vec::new(),
        Suite::Shift => per_eta(etas(n, (m + 1).saturating_sub(n as u32))),
        Suite::Lemma1 if n <= 3 => lemma1_cases(n, mode),
        Suite::Lemma1 => Vec::new(),
        Suite::Intertwine if n <= 2 => etas(n, m.min(2))
            .into_iter()
            .flat_map(|e| (1..=n).map(move |i| Case { index: Some(i), ..Case::with_eta(suite, &e) }))
            .collect(),
        Suite::Intertwine => Vec::new(),
        Suite::Genfun if n == 2 => per_eta(etas(n, m.min(2))),
        Suite::Genfun => Vec::new(),
        Suite::Zi => etas(n, m)
            .into_iter()
            .flat_map(|e| {
                let base = Case::with_eta(suite, &e);
                (1..=n)
                    .map(|i| Case { index: Some(i), ..base.clone() })
                    .chain(std::iter::once(base.clone()))
                    .collect::<Vec<_>>()
            })
            .collect(),
        Suite::Binom | Suite::Evalstar => successor_pairs(suite, n, m),
        Suite::Jack => {
            let mut out = Vec::new();
            for e in etas(n, m.min(3)) {
                for set in maximal_subsets(&e) {
                    for alpha in 1..=3 {
                        out.push(Case { set: Some(set.clone()), alpha: Some(alpha), ..Case::with_eta(suite, &e) });
                    }
                }
            }
            if n == 2 {
                let zero = Composition::zeros(2);
                let set = IndexSet::new(vec![1, 2], 2).expect("valid");
                out.push(Case {
                    set: Some(set),
                    alpha: Some(2),
                    expected: Some("2/3".into()),
                    ..Case::with_eta(suite, &zero)
                });
            }
            out
        }
        Suite::Colength => Vec::new(),
    }
}

/// All cases of a run in report order.
pub fn cases(config: &VerifyConfig) -> Vec<Case> {
    let mut ns = config.ns.clone();
    ns.sort_unstable();
    ns.dedup();
    let mut out = Vec::new();
    for &suite in Suite::ALL.iter().filter(|s| config.suites.contains(s)) {
        if suite == Suite::Colength {
            out.extend((1..=8).map(|n| Case { count: Some(125), ..Case::new(suite, n) }));
            continue;
        }
        for &n in ns.iter().filter(|&&n| n >= 1) {
            let m = config.max_modulus.unwrap_or_else(|| default_max_modulus(n));
            out.extend(suite_cases(suite, n, m, config.mode));
        }
    }
    out
}

fn dispatch<S: Scalar>(ctx: &Ctx<S>, case: &Case) -> Result<Outcome> {
    match case.suite() {
        Suite::Hecke => checks::hecke(ctx, case),
        Suite::Eigen => checks::eigen(ctx, case),
        Suite::Vanishing => checks::vanishing(ctx, case),
        Suite::Keta => checks::keta(ctx, case),
        Suite::Triangular => checks::triangular(ctx, case),
        Suite::Shift => checks::shift(ctx, case),
        Suite::Lemma1 => checks::lemma1(ctx, case),
        Suite::Intertwine => checks::intertwine(ctx, case),
        Suite::Zi => checks::zi(ctx, case),
        Suite::E1 => checks::e1(ctx, case),
        Suite::En1 => checks::en1(ctx, case),
        Suite::Binom => checks::binom(ctx, case),
        Suite::Evalstar => checks::evalstar(ctx, case),
        Suite::Genfun => checks::genfun(ctx, case),
        Suite::Jack | Suite::Colength => unreachable!("exact suites do not use a parameter point"),
    }
}

fn errored(e: CoreError) -> Outcome {
    Outcome { ok: false, lhs: "error".into(), rhs: e.to_string() }
}

fn report(config: &VerifyConfig, case: &Case, mode: &'static str, points: Vec<SamplePoint>, o: Outcome) -> CaseReport {
    CaseReport {
        suite: case.suite(),
        case: case.to_string(),
        n: case.n,
        eta: case.eta.as_ref().map(|e| e.parts().to_vec()),
        mode,
        seed: (config.mode == Mode::Sampled || matches!(case.suite(), Suite::Colength | Suite::Hecke))
            .then_some(config.seed),
        points,
        status: if o.ok { Status::Pass } else { Status::Fail },
        lhs: (!o.ok).then_some(o.lhs),
        rhs: (!o.ok).then_some(o.rhs),
    }
}

fn is_exact(suite: Suite) -> bool {
    matches!(suite, Suite::Jack | Suite::Colength)
}

fn run_exact(config: &VerifyConfig, case: &Case) -> CaseReport {
    let o = match case.suite() {
        Suite::Colength => checks::colength(config.seed, case),
        _ => checks::jack(case).unwrap_or_else(errored),
    };
    report(config, case, "exact", Vec::new(), o)
}

fn symbolic_ctx(config: &VerifyConfig) -> Result<Ctx<QTScalar>> {
    let mut ctx = Ctx::new(Params::symbolic(), config.colength, config.seed);
    if let Some(dir) = &config.cache_dir {
        ctx.star = Macdonald::new(ctx.p.clone()).with_store(Arc::new(DiskStore::open(dir, ParamsKind::Std)?));
        ctx.std = Macdonald::new(ctx.p.inverted()).with_store(Arc::new(DiskStore::open(dir, ParamsKind::Inv)?));
    }
    Ok(ctx)
}

struct SampledCtx {
    point: SamplePoint,
    ctx: Ctx<BigRational>,
}

impl SampledCtx {
    fn new(point: SamplePoint, config: &VerifyConfig) -> Result<Self> {
        let p = Params::at(point.q.clone(), point.t.clone())?;
        Ok(SampledCtx { ctx: Ctx::new(p, config.colength, config.seed), point })
    }
}

fn run_sampled(config: &VerifyConfig, case: &Case, shared: &[SampledCtx], bound: (usize, u32)) -> Result<CaseReport> {
    let wanted = match case.suite() {
        Suite::Lemma1 => config.samples.max(LEMMA1_POINTS),
        _ => config.samples.max(1),
    };
    let mut points = Vec::with_capacity(wanted);
    let mut rng = sample::rng_for(config.seed, &format!("resample|{}|{case}", case.suite()));
    for base in &shared[..wanted] {
        let mut replacement: Option<SampledCtx> = None;
        let mut attempts = 0;
        loop {
            let here = replacement.as_ref().unwrap_or(base);
            match dispatch(&here.ctx, case) {
                Err(e) if e.is_pole() && attempts < 20 => {
                    attempts += 1;
                    replacement = Some(SampledCtx::new(sample::draw(&mut rng, bound.0, bound.1)?, config)?);
                }
                res => {
                    points.push(here.point.clone());
                    let o = res.unwrap_or_else(errored);
                    if !o.ok {
                        return Ok(report(config, case, "sampled", points, o));
                    }
                    break;
                }
            }
        }
    }
    Ok(report(config, case, "sampled", points, Outcome { ok: true, lhs: String::new(), rhs: String::new() }))
}

/// Runs every case of the configuration. `Err` means the harness itself
/// could not run (thread pool, cache directory, sampling); verification
/// failures are reported per case.
pub fn run(config: &VerifyConfig) -> Result<Vec<CaseReport>> {
    let all = cases(config);
    info!("running {} cases in {:?} mode", all.len(), config.mode);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CoreError::Io(format!("thread pool: {e}")))?;
    pool.install(|| match config.mode {
        Mode::Symbolic => {
            let ctx = symbolic_ctx(config)?;
            Ok(all
                .par_iter()
                .map(|c| match is_exact(c.suite()) {
                    true => run_exact(config, c),
                    false => report(config, c, "symbolic", Vec::new(), dispatch(&ctx, c).unwrap_or_else(errored)),
                })
                .collect())
        }
        Mode::Sampled => {
            let n = config.ns.iter().copied().max().unwrap_or(1).max(1);
            let m = config
                .ns
                .iter()
                .map(|&k| config.max_modulus.unwrap_or_else(|| default_max_modulus(k)))
                .max()
                .unwrap_or(4);
            let mut rng = sample::rng_for(config.seed, "points");
            let count = config.samples.max(LEMMA1_POINTS);
            let shared = (0..count)
                .map(|_| sample::draw(&mut rng, n, m).and_then(|pt| SampledCtx::new(pt, config)))
                .collect::<Result<Vec<_>>>()?;
            all.par_iter()
                .map(|c| match is_exact(c.suite()) {
                    true => Ok(run_exact(config, c)),
                    false => run_sampled(config, c, &shared, (n, m)),
                })
                .collect()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suites: &str, n: usize, m: u32, mode: Mode) -> VerifyConfig {
        VerifyConfig {
            suites: parse_suites(suites).unwrap(),
            ns: vec![n],
            max_modulus: Some(m),
            mode,
            seed: 7,
            ..Default::default()
        }
    }

    fn all_pass(r: &[CaseReport]) -> bool {
        r.iter().all(|x| x.passed())
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(parse_suites("e1, zi,e1").unwrap(), vec![Suite::Zi, Suite::E1]);
    }

    #[test]
    fn small_symbolic_run_passes() {
        let r = run(&cfg("all", 2, 2, Mode::Symbolic)).unwrap();
        let failed: Vec<_> = r.iter().filter(|x| !x.passed()).map(|x| x.to_string()).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn small_sampled_run_passes_and_lists_points() {
        let r = run(&cfg("hecke,eigen,lemma1,e1,zi,intertwine", 2, 2, Mode::Sampled)).unwrap();
        assert!(all_pass(&r), "{:#?}", r.iter().filter(|x| !x.passed()).collect::<Vec<_>>());
        let lemma = r.iter().find(|x| x.suite == Suite::Lemma1).unwrap();
        assert_eq!(lemma.points.len(), LEMMA1_POINTS);
        assert!(r.iter().filter(|x| x.suite == Suite::E1).all(|x| x.points.len() == 3));
    }

    #[test]
    fn report_order_and_content_are_deterministic() {
        let mut c = cfg("e1,hecke,binom", 2, 2, Mode::Sampled);
        c.jobs = 1;
        let a: Vec<String> = run(&c).unwrap().iter().map(|x| serde_json::to_string(x).unwrap()).collect();
        c.jobs = 4;
        let b: Vec<String> = run(&c).unwrap().iter().map(|x| serde_json::to_string(x).unwrap()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn printed_minus_colength_fails_eigen() {
        let mut c = cfg("eigen", 2, 2, Mode::Symbolic);
        c.colength = ColengthConvention::PrintedMinus;
        let r = run(&c).unwrap();
        assert!(r.iter().any(|x| !x.passed()));
    }
}
