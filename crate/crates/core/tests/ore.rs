use std::sync::Arc;

use ores_core::algebra::{presets, Presentation, Rule};
use ores_core::ore::{verify_equality, FractionEquality, Localization, OreBudget, OreError, OreSearch, SProduct};
use ores_core::{sample, AlgebraElement, Scalar, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;
use common::{naive_product, RatFn};

fn gen(p: &Arc<Presentation>, name: &str) -> AlgebraElement {
    AlgebraElement::generator(p, name).unwrap()
}

fn one(p: &Arc<Presentation>) -> AlgebraElement {
    AlgebraElement::one(p)
}

fn loc(p: &Arc<Presentation>) -> Localization {
    Localization::new(p, OreBudget::default(), 4).unwrap()
}

fn assert_right_witness(a: &AlgebraElement, s: &SProduct, found: OreSearch) -> (AlgebraElement, SProduct) {
    let w = found.found().expect("witness");
    assert_eq!(naive_product(a, w.t.value()), naive_product(s.value(), &w.b));
    (w.b, w.t)
}

#[test]
fn commutative_witnesses_exist() {
    let p = presets::polynomial_ring();
    let l = loc(&p);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let a = sample::element(&p, &mut rng, 3, 3).unwrap();
        let s = sample::sproduct(&p, &mut rng, 2, 2).unwrap();
        assert_right_witness(&a, &s, l.solve_right(&a, &s).unwrap());
    }
}

#[test]
fn heisenberg_witnesses() {
    let p = presets::heisenberg();
    let l = loc(&p);
    let (a, ad) = (gen(&p, "a"), gen(&p, "a'"));
    let s = SProduct::single(a.clone()).unwrap();

    // a'·(1 + a a') = (1 + a'a)·a'
    let (b, t) = assert_right_witness(&ad, &s, l.solve_right(&ad, &s).unwrap());
    assert_eq!(b, ad);
    assert_eq!(t.value(), &one(&p).add(&a.mul(&ad).unwrap()).unwrap());

    // a·t ∈ (1 + a'a)·A has no solution with t ∈ S
    assert_eq!(l.solve_right(&a, &s).unwrap(), OreSearch::NotFoundWithinBudget);

    // (1 + a a')·a = a·(1 + a'a)
    let w = l.solve_left(&a, &s).unwrap().found().unwrap();
    assert_eq!(w.b, a);
    assert_eq!(naive_product(w.t.value(), &a), naive_product(&w.b, s.value()));
}

#[test]
fn free_algebra_tight_budget_fails() {
    let p = presets::free_pair();
    let l = Localization::new(&p, OreBudget { max_factors: 1, max_degree: 1 }, 2).unwrap();
    let s = SProduct::single(gen(&p, "y")).unwrap();
    assert_eq!(l.solve_right(&gen(&p, "x"), &s).unwrap(), OreSearch::NotFoundWithinBudget);
}

#[test]
fn irregular_denominator_is_rejected() {
    // x·x = −1 makes 1 + x†x vanish
    let rule = Rule { lhs: Word(vec![0, 0]), rhs: vec![(-Scalar::one(), Word::unit())] };
    let p = Presentation::new(vec!["x".into()], vec![vec!["x".into()]], vec![rule], 6).unwrap();
    let l = loc(&p);
    let s = SProduct::single(gen(&p, "x")).unwrap();
    assert!(s.value().is_zero());
    assert!(matches!(l.fraction(one(&p), s.clone()), Err(OreError::IrregularDenominator { .. })));
    assert!(matches!(l.solve_right(&one(&p), &s), Err(OreError::IrregularDenominator { .. })));
}

#[test]
fn solver_is_deterministic_across_thread_counts() {
    let p = presets::heisenberg();
    let l = loc(&p);
    let ad = gen(&p, "a'");
    let s = SProduct::new(&p, vec![gen(&p, "a"), ad.clone().add(&one(&p)).unwrap()]).unwrap();
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| l.solve_right(&ad, &s).unwrap())
    };
    let first = run(1);
    assert_eq!(first, run(3));
    assert_eq!(first, run(1));
}

fn cx() -> (Arc<Presentation>, Localization, AlgebraElement, SProduct) {
    let p = presets::polynomial_ring();
    let x = gen(&p, "x");
    let s = SProduct::single(x.clone()).unwrap();
    (p.clone(), loc(&p), x, s)
}

#[test]
fn equality_examples() {
    let (p, l, x, s) = cx();
    let f = l.fraction(x.clone(), s.clone()).unwrap();
    match l.eq(&f, &f).unwrap() {
        FractionEquality::Equal(c) => {
            assert!(c.u.is_one() && c.v.is_one());
            assert!(verify_equality(&f, &f, &c).unwrap());
        }
        other => panic!("{other:?}"),
    }

    let ss = SProduct::new(&p, vec![x.clone(), x.clone()]).unwrap();
    let g = l.fraction(x.mul(s.value()).unwrap(), ss).unwrap();
    let FractionEquality::Equal(c) = l.eq(&f, &g).unwrap() else { panic!() };
    assert!(verify_equality(&f, &g, &c).unwrap());

    let h = l.fraction(one(&p), s.clone()).unwrap();
    assert_eq!(l.eq(&f, &h).unwrap(), FractionEquality::Distinct);
    assert!(!RatFn::of(&f).same(&RatFn::of(&h)));
}

#[test]
fn arithmetic_examples() {
    let (p, l, x, s) = cx();
    let f = l.fraction(x.clone(), s.clone()).unwrap();

    assert!(l.eq(&l.add(&Scalar::one(), &f, &l.zero()).unwrap(), &f).unwrap().is_equal());
    assert!(l.eq(&l.add(&-Scalar::one(), &f, &f).unwrap(), &l.zero()).unwrap().is_equal());

    let sum = l.add(&Scalar::one(), &f, &l.one()).unwrap();
    let expected = l.fraction(x.add(s.value()).unwrap(), s.clone()).unwrap();
    assert!(l.eq(&sum, &expected).unwrap().is_equal());
    assert!(RatFn::of(&sum).same(&RatFn::of(&expected)));

    let sq = l.mul(&f, &f).unwrap();
    let expected = l.fraction(x.mul(&x).unwrap(), SProduct::new(&p, vec![x.clone(), x.clone()]).unwrap()).unwrap();
    assert!(l.eq(&sq, &expected).unwrap().is_equal());

    assert!(l.eq(&l.mul(&l.one(), &f).unwrap(), &f).unwrap().is_equal());
    let inv = l.fraction(one(&p), s.clone()).unwrap();
    assert!(l.eq(&l.mul(&l.embed(s.value()), &inv).unwrap(), &l.one()).unwrap().is_equal());

    assert!(l.eq(&l.dagger(&f).unwrap(), &f).unwrap().is_equal());
    assert!(l.eq(&l.dagger(&l.one()).unwrap(), &l.one()).unwrap().is_equal());
}

#[test]
fn embedding_examples() {
    let p = presets::heisenberg();
    let l = loc(&p);
    assert_eq!(l.embed(&one(&p)), l.one());
    let (a, ad) = (gen(&p, "a"), gen(&p, "a'"));
    let prod = l.mul(&l.embed(&a), &l.embed(&ad)).unwrap();
    let rhs = l.embed(&ad.mul(&a).unwrap().add(&one(&p)).unwrap());
    assert!(l.eq(&prod, &rhs).unwrap().is_equal());
    assert!(l.eq(&l.dagger(&l.embed(&a)).unwrap(), &l.embed(&ad)).unwrap().is_equal());
}

#[test]
fn remark_examples() {
    let (p, l, x, s) = cx();
    assert!(l.remark_mult_property_check(&x, &s, &one(&p), &s).unwrap());
    let us = SProduct::new(&p, vec![x.clone(), x.clone()]).unwrap();
    assert!(l.remark_mult_property_check(&x, &s, s.value(), &us).unwrap());
    assert!(matches!(
        l.remark_mult_property_check(&x, &s, &x, &us),
        Err(OreError::InvalidCertificate(_))
    ));

    let h = presets::heisenberg();
    let lh = loc(&h);
    let ad = gen(&h, "a'");
    let s = SProduct::single(gen(&h, "a")).unwrap();
    let u = SProduct::single(ad.clone()).unwrap();
    let us = u.then(&s).unwrap();
    assert!(lh.remark_mult_property_check(&ad, &s, u.value(), &us).unwrap());
}

#[test]
fn commutative_field_axioms_match_rational_functions() {
    let p = presets::polynomial_ring();
    let l = loc(&p);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let mut frac = || {
            let a = sample::element(&p, &mut rng, 2, 3).unwrap();
            let s = sample::sproduct(&p, &mut rng, 2, 1).unwrap();
            l.fraction(a, s).unwrap()
        };
        let (f, g, h) = (frac(), frac(), frac());
        let lambda = sample::scalar(&mut rng);
        let (rf, rg) = (RatFn::of(&f), RatFn::of(&g));

        let sum = l.add(&lambda, &f, &g).unwrap();
        assert!(RatFn::of(&sum).same(&rf.add(&lambda, &rg)));
        let prod = l.mul(&f, &g).unwrap();
        assert!(RatFn::of(&prod).same(&rf.mul(&rg)));
        assert!(RatFn::of(&l.dagger(&f).unwrap()).same(&rf.conj()));

        let left = l.mul(&l.mul(&f, &g).unwrap(), &h).unwrap();
        let right = l.mul(&f, &l.mul(&g, &h).unwrap()).unwrap();
        assert!(l.eq(&left, &right).unwrap().is_equal());
        let dist_l = l.mul(&f, &l.add(&Scalar::one(), &g, &h).unwrap()).unwrap();
        let dist_r = l.add(&Scalar::one(), &l.mul(&f, &g).unwrap(), &l.mul(&f, &h).unwrap()).unwrap();
        assert!(l.eq(&dist_l, &dist_r).unwrap().is_equal());
    }
}

#[test]
fn equality_is_reflexive_and_symmetric_on_heisenberg_samples() {
    let p = presets::heisenberg();
    let l = loc(&p);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..8 {
        let a = sample::element(&p, &mut rng, 2, 2).unwrap();
        let s = sample::sproduct(&p, &mut rng, 1, 1).unwrap();
        let f = l.fraction(a.clone(), s.clone()).unwrap();
        assert!(l.eq(&f, &f).unwrap().is_equal());
        // [a, s] = [a·u, s·u] for u = t from any right witness
        if let Some(w) = l.solve_right(s.value(), &s).unwrap().found() {
            let g = l.fraction(a.mul(w.t.value()).unwrap(), s.then(&w.t).unwrap()).unwrap();
            let fg = l.eq(&f, &g).unwrap();
            let gf = l.eq(&g, &f).unwrap();
            assert_eq!(fg.is_equal(), gf.is_equal());
            if let FractionEquality::Equal(c) = fg {
                assert!(verify_equality(&f, &g, &c).unwrap());
            }
        }
    }
}

#[test]
fn embedding_is_injective_on_samples() {
    for p in [presets::polynomial_ring(), presets::heisenberg(), presets::free_pair()] {
        let l = loc(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = sample::element(&p, &mut rng, 2, 2).unwrap();
            let b = sample::element(&p, &mut rng, 2, 2).unwrap();
            if l.eq(&l.embed(&a), &l.embed(&b)).unwrap().is_equal() {
                assert_eq!(a, b);
            }
        }
    }
}
