use num_bigint::BigInt;
use num_rational::BigRational;
use pieri_core::composition::compositions_up_to;
use pieri_core::qt::BPoly;
use pieri_core::*;
use proptest::prelude::*;

type Op<'a> = dyn Fn(&LaurentPoly<QTScalar>) -> LaurentPoly<QTScalar> + 'a;

fn bpoly() -> impl Strategy<Value = BPoly> {
    prop::collection::vec((0usize..3, 0usize..3, -6i64..=6), 1..4)
        .prop_map(|terms| BPoly::from_terms(terms.into_iter().map(|(i, j, c)| (i, j, BigInt::from(c)))))
}

fn nonzero_bpoly() -> impl Strategy<Value = BPoly> {
    bpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn scalar() -> impl Strategy<Value = QTScalar> {
    (bpoly(), nonzero_bpoly()).prop_map(|(n, d)| QTScalar::from_parts(n, d).unwrap())
}

fn point() -> impl Strategy<Value = (BigRational, BigRational)> {
    (2i64..40, 2i64..40, 2i64..40, 2i64..40)
        .prop_map(|(a, b, c, d)| (BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into())))
}

fn composition(max_n: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(0u32..7, 1..=max_n).prop_map(|v| Composition::new(v).unwrap())
}

fn poly(n: usize) -> impl Strategy<Value = LaurentPoly<QTScalar>> {
    prop::collection::vec((prop::collection::vec(0i32..3, n), -5i64..=5), 1..4)
        .prop_map(move |terms| LaurentPoly::from_terms(n, terms.into_iter().map(|(e, c)| (e, QTScalar::from_int(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_unique(n in bpoly(), d in nonzero_bpoly(), k in nonzero_bpoly()) {
        let a = QTScalar::from_parts(n.clone(), d.clone()).unwrap();
        let b = QTScalar::from_parts(&n * &k, &d * &k).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.to_string(), b.to_string());
        prop_assert_eq!(a.to_string().parse::<QTScalar>().unwrap(), a);
    }

    #[test]
    fn field_axioms_hold(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + a.clone() * &c);
        prop_assert_eq!((a.clone() - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.checked_div(&b).unwrap() * &b, a);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), (q, t) in point()) {
        let (Ok(x), Ok(y)) = (a.eval_at(&q, &t), b.eval_at(&q, &t)) else { return Ok(()) };
        prop_assert_eq!((a.clone() + &b).eval_at(&q, &t).unwrap(), &x + &y);
        prop_assert_eq!((a.clone() * &b).eval_at(&q, &t).unwrap(), &x * &y);
    }

    #[test]
    fn parameter_inversion_is_an_involution(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.invert_params().invert_params(), a.clone());
        prop_assert_eq!((a.clone() * &b).invert_params(), a.invert_params() * &b.invert_params());
    }

    #[test]
    fn inversion_commutes_with_evaluation(a in scalar(), (q, t) in point()) {
        let Ok(x) = a.invert_params().eval_at(&q, &t) else { return Ok(()) };
        prop_assert_eq!(x, a.eval_at(&q.recip(), &t.recip()).unwrap());
    }

    #[test]
    fn leg_colengths_sum_to_binomial(eta in composition(8)) {
        let n = eta.n();
        prop_assert_eq!(eta.leg_colengths().iter().sum::<usize>(), n * (n - 1) / 2);
        let mut sorted = eta.leg_colengths();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn total_order_extends_dominance(a in composition(3), b in composition(3)) {
        if a.n() == b.n() && a.modulus() == b.modulus() && a.precedes(&b).unwrap() {
            prop_assert_eq!(a.total_cmp(&b), std::cmp::Ordering::Less);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hecke_quadratic_relations(f in poly(3), i in 1usize..3) {
        let p = Params::symbolic();
        let ops: [&Op<'_>; 3] = [
            &|g| g.apply_ti(i, &p).unwrap(),
            &|g| g.apply_hi(i, &p).unwrap(),
            &|g| -&g.apply_hbar(i, &p).unwrap(),
        ];
        for x in ops {
            let g = &x(&f) + &f;
            prop_assert!((&x(&g) - &g.scale(&p.t)).is_zero());
        }
    }

    #[test]
    fn hecke_braid_relations(f in poly(3)) {
        let p = Params::symbolic();
        for x in [LaurentPoly::apply_ti, LaurentPoly::apply_hi, LaurentPoly::apply_hbar] {
            let a = x(&x(&x(&f, 1, &p).unwrap(), 2, &p).unwrap(), 1, &p).unwrap();
            let b = x(&x(&x(&f, 2, &p).unwrap(), 1, &p).unwrap(), 2, &p).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn expansion_in_e_basis_reconstructs(f in poly(2)) {
        let m = Macdonald::new(Params::symbolic());
        let terms = m.expand_in_e_basis(&f).unwrap();
        let mut back = LaurentPoly::zero(2);
        for (nu, c) in &terms {
            back = &back + &m.e_inverted(nu).unwrap().scale(c);
        }
        prop_assert_eq!(back, f);
    }
}

#[test]
fn estar_vanishes_below_its_index() {
    let m = Macdonald::new(Params::<QTScalar>::symbolic());
    for eta in compositions_up_to(3, 2) {
        for nu in compositions_up_to(3, eta.modulus()) {
            let v = m.estar_eval(&eta, &nu).unwrap();
            assert_eq!(v.is_zero(), nu != eta, "{eta} at {nu}");
        }
    }
}
