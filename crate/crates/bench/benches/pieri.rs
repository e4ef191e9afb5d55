use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_rational::BigRational;
use pieri_bench::{hardest, workload};
use pieri_core::pieri::expand_e1;
use pieri_core::{LaurentPoly, Macdonald, Params, QTScalar, Scalar};

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    g.sample_size(10);
    for (n, m) in [(2, 4), (3, 3)] {
        g.bench_function(format!("estar n={n} |eta|={m}"), |b| {
            b.iter_batched(
                || Macdonald::new(Params::<QTScalar>::symbolic()),
                |mac| {
                    for eta in workload(n, m) {
                        mac.estar(&eta).unwrap();
                    }
                },
                BatchSize::LargeInput,
            )
        });
    }
    g.bench_function("estar n=3 |eta|=3 sampled", |b| {
        let p = Params::<BigRational>::at(BigRational::new(3.into(), 7.into()), BigRational::new(11.into(), 5.into()))
            .unwrap();
        b.iter_batched(
            || Macdonald::new(p.clone()),
            |mac| {
                for eta in workload(3, 3) {
                    mac.estar(&eta).unwrap();
                }
            },
            BatchSize::LargeInput,
        )
    });
    g.finish();
}

fn pieri(c: &mut Criterion) {
    let p = Params::<QTScalar>::symbolic();
    let eta = hardest(3, 3);
    c.bench_function("closed-form e1 n=3 |eta|=3", |b| b.iter(|| expand_e1(&eta, &p).unwrap()));

    let mac = Macdonald::new(p.clone());
    let prod = &LaurentPoly::elementary(3, 1) * &*mac.e_inverted(&eta).unwrap();
    for nu in workload(3, 4) {
        mac.e_inverted(&nu).unwrap();
    }
    c.bench_function("change-of-basis e1 n=3 |eta|=3", |b| b.iter(|| mac.expand_in_e_basis(&prod).unwrap()));
}

fn scalar(c: &mut Criterion) {
    let a: QTScalar = "(q^3*t - 2*q*t^2 + 1)/(q*t - 1)".parse().unwrap();
    let b: QTScalar = "(q^2 - t)/(q*t^2 + q - 3)".parse().unwrap();
    c.bench_function("qt add", |x| x.iter(|| a.clone() + &b));
    c.bench_function("qt mul", |x| x.iter(|| a.clone() * &b));
    c.bench_function("qt div", |x| x.iter(|| a.checked_div(&b).unwrap()));
}

criterion_group!(benches, build, pieri, scalar);
criterion_main!(benches);
