mod args;

use std::process::ExitCode;
use std::sync::Arc;

use clap::Parser;
use log::LevelFilter;
use serde_json::json;

use args::{CacheAction, Cli, ColengthArg, Command, Common, Format, ModeArg, Op, ParamsArg, VerifyArgs};
use pieri_core::cache::{self, DiskStore};
use pieri_core::composition::compositions_up_to;
use pieri_core::pieri::{self, binom_general, binom_succ};
use pieri_core::serial::{expansion_json, poly_json};
use pieri_core::verify::{self, default_max_modulus, parse_suites, Mode, VerifyConfig};
use pieri_core::{
    Basis, ColengthConvention, Composition, CoreError, Expansion, Macdonald, Params, ParamsKind, QTScalar,
};

enum Failure {
    Verification,
    Usage(String),
    Infra(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse(_)
            | CoreError::InvalidIndexSet(_)
            | CoreError::IndexOutOfRange { .. }
            | CoreError::LengthMismatch { .. }
            | CoreError::ModulusMismatch { .. }
            | CoreError::CellOutsideDiagram { .. }
            | CoreError::Unsupported(_) => Failure::Usage(e.to_string()),
            _ => Failure::Infra(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Builder whose `estar` is `E*` at the given orientation.
fn builder(params: ParamsArg, cache_dir: Option<&std::path::Path>) -> Result<Macdonald<QTScalar>, Failure> {
    let kind = ParamsKind::from(params);
    let p = match kind {
        ParamsKind::Std => Params::symbolic(),
        ParamsKind::Inv => Params::symbolic().inverted(),
    };
    let m = Macdonald::new(p);
    Ok(match cache_dir {
        Some(dir) => m.with_store(Arc::new(DiskStore::open(dir, kind)?)),
        None => m,
    })
}

fn print_scalar(format: Format, key: &str, x: &QTScalar) {
    match format {
        Format::Text => println!("{x}"),
        Format::Json => println!("{}", json!({ key: x.to_string() })),
    }
}

fn cmd_poly(kind: Basis, eta: &Composition, params: ParamsArg, common: &Common) -> Outcome {
    let poly = match kind {
        // E at one orientation is the top part of E* at the other.
        Basis::E => builder(flip(params), common.cache_dir.as_deref())?.e_inverted(eta)?,
        _ => builder(params, common.cache_dir.as_deref())?.estar(eta)?,
    };
    match common.format {
        Format::Text => println!("{poly}"),
        Format::Json => println!("{}", poly_json(kind, params.into(), eta, &poly)),
    }
    Ok(())
}

fn flip(p: ParamsArg) -> ParamsArg {
    match p {
        ParamsArg::Std => ParamsArg::Inv,
        ParamsArg::Inv => ParamsArg::Std,
    }
}

fn orient(x: QTScalar, params: ParamsArg) -> QTScalar {
    match params {
        ParamsArg::Std => x,
        ParamsArg::Inv => x.invert_params(),
    }
}

fn cmd_expand(op: Op, eta: &Composition, i: Option<usize>, params: ParamsArg, common: &Common) -> Outcome {
    let p = Params::symbolic();
    let terms = match (op, i) {
        (Op::Zi, Some(i)) => pieri::expand_zi(eta, i, &p)?,
        (Op::Zi, None) => return Err(Failure::Usage("--op zi needs --i".into())),
        (_, Some(_)) => return Err(Failure::Usage("--i only applies to --op zi".into())),
        (Op::E1, None) => pieri::expand_e1(eta, &p)?,
        (Op::En1, None) => pieri::expand_en1(eta, &p)?,
    };
    let mut x = pieri::to_expansion(eta, &terms)?;
    if params == ParamsArg::Std {
        x = x.map_coeffs(|c| Ok(c.invert_params()))?;
        x.params = ParamsKind::Std;
    }
    print_expansion(&x, common.format);
    Ok(())
}

fn print_expansion<S: pieri_core::Scalar>(x: &Expansion<S>, format: Format) {
    match format {
        Format::Text => println!("{x}"),
        Format::Json => println!("{}", expansion_json(x)),
    }
}

fn cmd_binom(nu: &Composition, eta: &Composition, params: ParamsArg, common: &Common) -> Outcome {
    let value = if nu.n() == eta.n() && nu.modulus() == eta.modulus() + 1 {
        binom_succ(nu, eta, &Params::symbolic())?
    } else {
        binom_general(nu, eta, &builder(ParamsArg::Std, common.cache_dir.as_deref())?)?
    };
    print_scalar(common.format, "binom", &orient(value, params));
    Ok(())
}

fn cmd_keta(eta: &Composition, params: ParamsArg, common: &Common) -> Outcome {
    let k = pieri_core::macdonald::k_eta(eta, &Params::symbolic());
    print_scalar(common.format, "keta", &orient(k, params));
    Ok(())
}

fn cmd_jack(alpha: u32, op: Op, eta: &Composition, format: Format) -> Outcome {
    if op != Op::E1 {
        return Err(Failure::Usage("the Jack limit is available for --op e1 only".into()));
    }
    let terms = pieri_core::jack::jack_expand_e1(eta, alpha)?;
    let pairs = terms.into_iter().map(|t| (t.target, t.coefficient)).collect();
    let x = Expansion::new(Basis::E, ParamsKind::Std, Some(eta.clone()), pairs)?;
    match format {
        Format::Text => println!("{x}"),
        Format::Json => {
            let mut v = expansion_json(&x);
            v["alpha"] = json!(alpha);
            v.as_object_mut().expect("object").remove("params");
            println!("{v}");
        }
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let config = VerifyConfig {
        suites: parse_suites(&a.suites)?,
        ns: a.n.clone(),
        max_modulus: a.max_modulus,
        mode: match a.mode {
            ModeArg::Symbolic => Mode::Symbolic,
            ModeArg::Sampled => Mode::Sampled,
        },
        seed: a.seed,
        samples: a.samples,
        jobs: a.jobs,
        colength: match a.colength {
            ColengthArg::Plus => ColengthConvention::Plus,
            ColengthArg::PrintedMinus => ColengthConvention::PrintedMinus,
        },
        cache_dir: a.common.cache_dir.clone(),
    };
    if config.ns.contains(&0) {
        return Err(Failure::Usage("--n values must be positive".into()));
    }
    let reports = verify::run(&config)?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    for r in &reports {
        match a.common.format {
            Format::Text => println!("{r}"),
            Format::Json => println!("{}", serde_json::to_string(r).expect("report serializes")),
        }
    }
    let passed = reports.len() - failed;
    match a.common.format {
        Format::Text => println!("{passed} passed, {failed} failed"),
        Format::Json => println!("{}", json!({ "summary": { "passed": passed, "failed": failed } })),
    }
    if failed > 0 {
        return Err(Failure::Verification);
    }
    Ok(())
}

fn cmd_cache(action: &CacheAction) -> Outcome {
    match action {
        CacheAction::Stats { cache_dir } => {
            let (files, bytes) = cache::stats(cache_dir)?;
            println!("{files} records, {bytes} bytes in {}", cache_dir.display());
        }
        CacheAction::Clear { cache_dir } => {
            let removed = cache::clear(cache_dir)?;
            println!("removed {removed} records from {}", cache_dir.display());
        }
        CacheAction::Warm { cache_dir, n, max_modulus } => {
            let mut built = 0;
            for params in [ParamsArg::Std, ParamsArg::Inv] {
                let m = builder(params, Some(cache_dir))?;
                for &k in n.iter().filter(|&&k| k > 0) {
                    for eta in compositions_up_to(k, max_modulus.unwrap_or_else(|| default_max_modulus(k))) {
                        m.estar(&eta)?;
                        built += 1;
                    }
                }
            }
            println!("warmed {built} polynomials in {}", cache_dir.display());
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::E { eta, params, common } => cmd_poly(Basis::E, eta, *params, common),
        Command::Estar { eta, params, common } => cmd_poly(Basis::Estar, eta, *params, common),
        Command::Expand { op, eta, i, params, common } => cmd_expand(*op, eta, *i, *params, common),
        Command::Binom { nu, eta, params, common } => cmd_binom(nu, eta, *params, common),
        Command::Keta { eta, params, common } => cmd_keta(eta, *params, common),
        Command::Jack { alpha, op, eta, format } => cmd_jack(*alpha, *op, eta, *format),
        Command::Verify(a) => cmd_verify(a),
        Command::Cache { action } => cmd_cache(action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => LevelFilter::Warn,
        1 => LevelFilter::Info,
        _ => LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).parse_default_env().init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Infra(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
