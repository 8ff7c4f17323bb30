use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use ores_core::algebra::presets;
use ores_core::operators::{
    core_density_probe, extend_representation, invert_one_plus_astar_a, invert_positive, invert_sproduct,
    lemma_pis_equals_s_check, lemma_pis_equals_s_check_with, pi_s_surjectivity_probe, BandedOperator, FockAssignment,
    Formula, OperatorError, OperatorSpec, Poly, SurdSum, DEFAULT_TRUNCATION_CAP,
};
use ores_core::ore::{Localization, OreBudget, SProduct};
use ores_core::positivity::check_state_axioms;
use ores_core::{AlgebraElement, Scalar, Word};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn e(n: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0); n + 1];
    v[n] = c(1.0);
    v
}

fn exact_e(n: usize) -> Vec<SurdSum> {
    let mut v = vec![SurdSum::zero(); n + 1];
    v[n] = SurdSum::one();
    v
}

fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    let n = a.len().max(b.len());
    let z = c(0.0);
    (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(z) - b.get(i).copied().unwrap_or(z)).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn sqrt_of(n: i64) -> SurdSum {
    SurdSum::sqrt(&BigRational::from_integer(BigInt::from(n)))
}

/// Dense `size × size` matrix of a weighted shift with `A e_{n+1} = w(n)·e_n`.
fn dense_shift(size: usize, w: impl Fn(usize) -> f64) -> DMatrix<Complex64> {
    DMatrix::from_fn(size, size, |i, j| if j == i + 1 { c(w(i)) } else { c(0.0) })
}

/// `(1 + AᴴA)` restricted to the leading block, computed from a padded
/// dense `A` so that no boundary row is lost.
fn dense_one_plus_square(a: &DMatrix<Complex64>, size: usize) -> DMatrix<Complex64> {
    let full = DMatrix::identity(a.ncols(), a.ncols()) + a.adjoint() * a;
    full.view((0, 0), (size, size)).into_owned()
}

fn dense_solve(t: &DMatrix<Complex64>, y: &[Complex64]) -> Vec<Complex64> {
    let mut rhs = DVector::zeros(t.nrows());
    for (i, v) in y.iter().enumerate() {
        rhs[i] = *v;
    }
    t.clone().lu().solve(&rhs).expect("invertible").iter().copied().collect()
}

#[test]
fn apply_examples() {
    let xi = vec![c(1.0), c(-2.0), c(0.5)];
    assert_eq!(BandedOperator::identity().apply(&xi), xi);

    let a = BandedOperator::annihilation();
    let out = a.apply_exact(&exact_e(2));
    assert_eq!(out, vec![SurdSum::zero(), sqrt_of(2)]);

    let number = a.adjoint().strong_product(&a);
    for n in 0..12 {
        let mut expected = exact_e(n);
        expected[n] = SurdSum::from_scalar(Scalar::from(n as i64));
        if n == 0 {
            expected.clear();
        }
        assert_eq!(number.apply_exact(&exact_e(n)), expected);
    }
}

#[test]
fn strong_operations() {
    let a = BandedOperator::annihilation();
    assert!(a.strong_sum(&a.neg()).is_zero());

    let d = BandedOperator::diagonal(Poly::index_plus(0));
    let n2 = Poly::index_plus(0).mul(&Poly::index_plus(0));
    assert_eq!(d.strong_product(&d), BandedOperator::diagonal(n2));

    let mixed = BandedOperator::from_bands([
        (-1, Formula::poly(Poly::new(vec![Scalar::from_parts(1, 2, 1, 1), Scalar::from(3)]))),
        (0, Formula::sqrt_poly(Poly::index_plus(2))),
        (2, Formula::constant(Scalar::from_parts(0, 1, -1, 1))),
    ]);
    for op in [a.clone(), a.adjoint(), mixed.clone(), mixed.strong_product(&a)] {
        assert_eq!(op.adjoint().adjoint(), op);
    }
}

#[test]
fn adjoint_identity_on_basis_pairs() {
    let mixed = BandedOperator::from_bands([
        (-2, Formula::poly(Poly::new(vec![Scalar::from_parts(1, 3, 2, 1), Scalar::from(1)]))),
        (1, Formula::sqrt_poly(Poly::index_plus(1)).scale(&Scalar::from_parts(0, 1, 1, 1))),
        (3, Formula::constant(Scalar::from(5))),
    ]);
    let ops = [mixed.clone(), BandedOperator::annihilation().strong_product(&mixed)];
    for op in ops {
        let adj = op.adjoint();
        for i in 0..12 {
            for j in 0..12 {
                // ⟨A* e_j, e_i⟩ = ⟨e_j, A e_i⟩
                let lhs = adj.apply_exact(&exact_e(j)).get(i).cloned().unwrap_or_default().conj();
                let rhs = op.apply_exact(&exact_e(i)).get(j).cloned().unwrap_or_default();
                assert_eq!(lhs, rhs, "i={i} j={j}");
            }
        }
    }
}

#[test]
fn heisenberg_relation_holds_exactly() {
    let fock = FockAssignment::heisenberg();
    assert_eq!(fock.check_relations(40), None);
    let a = BandedOperator::annihilation();
    let ad = a.adjoint();
    let commutator = a.strong_product(&ad).strong_sum(&ad.strong_product(&a).neg());
    for n in 0..30 {
        assert_eq!(commutator.apply_exact(&exact_e(n)), exact_e(n));
    }
    assert_eq!(commutator.strong_sum(&BandedOperator::identity().neg()), BandedOperator::zero());
}

#[test]
fn wrong_adjoint_is_not_an_assignment() {
    let a = BandedOperator::annihilation();
    let r = FockAssignment::new(&presets::heisenberg(), vec![a.clone(), a]);
    assert!(matches!(r, Err(OperatorError::NotAnAssignment(_))));
}

#[test]
fn annihilation_inverse_is_diagonal() {
    let a = BandedOperator::annihilation();
    for n in 0..=20 {
        let r = invert_one_plus_astar_a(&a, &e(n), 1e-12, DEFAULT_TRUNCATION_CAP).unwrap();
        let mut expected = e(n);
        expected[n] = c(1.0 / (1.0 + n as f64));
        assert!(dist(&r.x, &expected) <= 1e-15, "n={n}");
        assert!(r.residual <= 1e-12);
    }
    let y = vec![c(1.0), c(0.0), c(-3.0)];
    let r = invert_one_plus_astar_a(&BandedOperator::zero(), &y, 1e-12, DEFAULT_TRUNCATION_CAP).unwrap();
    assert!(dist(&r.x, &y) == 0.0);
}

fn check_against_dense(a: &BandedOperator, dense_a: impl Fn(usize) -> DMatrix<Complex64>, y: &[Complex64], tol: f64) {
    let r = invert_one_plus_astar_a(a, y, tol, DEFAULT_TRUNCATION_CAP).unwrap();
    assert!(r.residual <= tol);
    assert!(r.truncation_size <= 256, "{}", r.truncation_size);
    let big = 4 * r.truncation_size;
    let da = dense_a(big + 4);
    let t = dense_one_plus_square(&da, big);
    let oracle = dense_solve(&t, y);
    let err = dist(&r.x, &oracle);
    assert!(err <= 1e-9, "error {err}");
    assert!(err <= r.residual + 1e-13, "error {err} above residual {}", r.residual);

    // residual recomputed with the dense operator
    let full = DMatrix::identity(da.ncols(), da.ncols()) + da.adjoint() * &da;
    let mut x = DVector::zeros(da.ncols());
    for (i, v) in r.x.iter().enumerate() {
        x[i] = *v;
    }
    let mut res = &full * x;
    for (i, v) in y.iter().enumerate() {
        res[i] -= v;
    }
    assert!((res.norm() - r.residual).abs() <= 1e-12 * (1.0 + r.residual));

    for w in r.history.windows(2) {
        assert!(w[1].1 <= w[0].1, "{:?}", r.history);
    }
}

#[test]
fn polynomial_shift_matches_dense_oracle() {
    let y: Vec<Complex64> = e(5).iter().zip(e(0).iter().chain([c(0.0); 5].iter())).map(|(a, b)| a + b).collect();
    check_against_dense(&BandedOperator::polynomial_shift(), |n| dense_shift(n, |i| (i + 1) as f64), &y, 1e-10);

    // a shift plus the identity, so that 1 + A*A is genuinely tridiagonal
    let a = BandedOperator::polynomial_shift().strong_sum(&BandedOperator::identity());
    let dense = |n| dense_shift(n, |i| (i + 1) as f64) + DMatrix::identity(n, n);
    check_against_dense(&a, dense, &y, 1e-10);
}

#[test]
fn inversion_errors() {
    let a = BandedOperator::annihilation();
    assert_eq!(invert_one_plus_astar_a(&a, &e(0), 0.0, 64), Err(OperatorError::InvalidTolerance(0.0)));
    let ladder = a.strong_sum(&a.adjoint());
    assert!(matches!(
        invert_one_plus_astar_a(&ladder, &e(0), 1e-300, 32),
        Err(OperatorError::TruncationLimit { .. })
    ));
    let indefinite = BandedOperator::diagonal(Poly::constant(Scalar::from(-1)));
    assert!(matches!(invert_positive(&indefinite, &e(0), 1e-8, 64), Err(OperatorError::NotPositiveDefinite { index: 0 })));
}

fn heisenberg_parts() -> (FockAssignment, AlgebraElement, AlgebraElement) {
    let fock = FockAssignment::heisenberg();
    let p = fock.presentation().clone();
    let a = AlgebraElement::generator(&p, "a").unwrap();
    let ad = AlgebraElement::generator(&p, "a'").unwrap();
    (fock, a, ad)
}

fn probe_denominators() -> Vec<SProduct> {
    let (fock, a, ad) = heisenberg_parts();
    let p = fock.presentation();
    vec![
        SProduct::single(a.clone()).unwrap(),
        SProduct::new(p, vec![a.clone(), a.clone()]).unwrap(),
        SProduct::new(p, vec![a.clone(), a.add(&ad).unwrap()]).unwrap(),
    ]
}

/// Dense truncation of `π(s)` built from dense `a`, `a*`.
fn dense_pi_s(s: &SProduct, size: usize) -> DMatrix<Complex64> {
    let pad = size + 8;
    let a = dense_shift(pad, |i| ((i + 1) as f64).sqrt());
    let ad = a.adjoint();
    let one = DMatrix::<Complex64>::identity(pad, pad);
    let mut out = one.clone();
    for f in s.factors() {
        let mut op = DMatrix::zeros(pad, pad);
        for (w, coeff) in f.p().terms() {
            let mut m = one.clone();
            for &g in w.letters() {
                m *= if g == 0 { &a } else { &ad };
            }
            let z = coeff.to_complex();
            op += m * z;
        }
        out *= &one + op.adjoint() * &op;
    }
    out.view((0, 0), (size, size)).into_owned()
}

#[test]
fn surjectivity_probes_meet_tolerance() {
    let (fock, ..) = heisenberg_parts();
    let targets: Vec<_> = (0..=5).map(e).collect();
    for s in probe_denominators() {
        let report = pi_s_surjectivity_probe(&fock, &s, &targets, 1e-8, DEFAULT_TRUNCATION_CAP).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.residuals.len(), 6);
    }

    let one = SProduct::one(fock.presentation());
    let y = vec![c(2.0), c(0.0), c(1.0)];
    let r = invert_sproduct(&fock, &one, &y, 1e-8, 64).unwrap();
    assert_eq!(r.x, y);

    let s = &probe_denominators()[0];
    for n in 0..8 {
        let r = invert_sproduct(&fock, s, &e(n), 1e-12, DEFAULT_TRUNCATION_CAP).unwrap();
        assert!((r.x[n].re - 1.0 / (1.0 + n as f64)).abs() <= 1e-15);
    }
}

/// `E[h(X)]` for standard normal `X`, by the trapezoid rule on [−40, 40].
fn gaussian_expectation(h: impl Fn(f64) -> f64) -> f64 {
    let step = 1.0 / 64.0;
    let n = (80.0 / step) as i64;
    let mut sum = 0.0;
    for k in 0..=n {
        let x = -40.0 + k as f64 * step;
        sum += h(x) * (-x * x / 2.0).exp();
    }
    sum * step / (2.0 * std::f64::consts::PI).sqrt()
}

/// Orthonormal Hermite polynomials for the standard normal law.
fn hermite(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = (x * cur - (k as f64).sqrt() * prev) / ((k + 1) as f64).sqrt();
        prev = cur;
        cur = next;
    }
    cur
}

#[test]
fn composite_inversion_matches_gaussian_oracle() {
    // a + a' acts on eₙ ↔ hₙ as multiplication by X, so with s = (1 + a'a)(1 + (a + a')²)
    // π(s)⁻¹e₀ has components E[hₙ(X)/(1 + X²)]
    let (fock, ..) = heisenberg_parts();
    let s = &probe_denominators()[2];
    let r = invert_sproduct(&fock, s, &e(0), 1e-8, DEFAULT_TRUNCATION_CAP).unwrap();
    assert!(r.residual <= 1e-8);
    assert!((r.x[0].re - 0.6556795424187986).abs() <= 1e-8);
    for n in 0..40 {
        let want = gaussian_expectation(|x| hermite(n, x) / (1.0 + x * x));
        assert!((r.x[n] - c(want)).norm() <= 1e-8, "n={n}: {} vs {want}", r.x[n]);
    }
}

#[test]
fn pi_s_agrees_with_factor_product() {
    let (fock, a, ad) = heisenberg_parts();
    let samples: Vec<Vec<Scalar>> = (0..=8)
        .map(|n| {
            let mut v = vec![Scalar::zero(); n + 1];
            v[n] = Scalar::one();
            v
        })
        .collect();
    for s in probe_denominators() {
        let report = lemma_pis_equals_s_check(&fock, &s, &samples);
        assert!(report.pass, "{report:?}");
        assert!(report.residuals.iter().all(|r| *r == 0.0));
    }

    // independent dense evaluation of π(s) on e₀..e₈
    let s = SProduct::new(fock.presentation(), vec![a.clone(), ad.mul(&ad).unwrap().add(&a).unwrap()]).unwrap();
    let op = fock.represent(s.value());
    let dense = dense_pi_s(&s, 24);
    for n in 0..=8 {
        let got = op.apply(&e(n));
        let want: Vec<Complex64> = dense.column(n).iter().copied().collect();
        assert!(dist(&got, &want) <= 1e-9 * (1.0 + got.iter().map(|z| z.norm()).sum::<f64>()), "n={n}");
    }

    // planting a wrong adjoint is detected
    let annihilation = BandedOperator::annihilation();
    let wrong = annihilation.strong_sum(&BandedOperator::identity());
    let report = lemma_pis_equals_s_check_with(&fock, &probe_denominators()[0], &[(annihilation, wrong)], &samples);
    assert!(!report.pass);
}

#[test]
fn core_density_examples() {
    let (fock, a, _) = heisenberg_parts();
    let s = &probe_denominators()[0];
    let xi: Vec<Complex64> = (0..48).map(|n| c(0.5f64.powi(n))).collect();
    let report = core_density_probe(&fock, &a, s, &xi, 1e-6, DEFAULT_TRUNCATION_CAP).unwrap();
    assert!(report.pass, "{report:?}");
    assert!(*report.residuals.last().unwrap() <= 1e-6);

    // ξ − ξ₄ alone has norm above 2⁻⁴
    assert!(report.residuals.first().unwrap() >= &0.5f64.powi(4));

    let zero = AlgebraElement::zero(fock.presentation());
    let plain = core_density_probe(&fock, &zero, s, &xi, 1e-6, DEFAULT_TRUNCATION_CAP).unwrap();
    assert!(plain.pass);
    assert!(plain.truncation_size <= report.truncation_size);

    let image = vec![c(0.0), c(0.0), c(3.0)];
    let exact = core_density_probe(&fock, &a, s, &image, 1e-12, DEFAULT_TRUNCATION_CAP).unwrap();
    assert!(exact.pass);
    assert!(exact.residuals[0] <= 1e-14);
}

#[test]
fn extension_examples() {
    let (fock, a, _) = heisenberg_parts();
    let p = fock.presentation().clone();
    let l = Localization::new(&p, OreBudget::default(), 4).unwrap();
    let s = SProduct::single(a.clone()).unwrap();
    let xi = e(3);

    let unit = extend_representation(&fock, &l.one(), &xi, 1e-10, DEFAULT_TRUNCATION_CAP, None).unwrap();
    assert!(dist(&unit.value, &xi) <= 1e-15);

    let f = l.fraction(AlgebraElement::one(&p), s.clone()).unwrap();
    let r = extend_representation(&fock, &f, &xi, 1e-10, DEFAULT_TRUNCATION_CAP, None).unwrap();
    let mut quarter = e(3);
    quarter[3] = c(0.25);
    assert!(dist(&r.value, &quarter) <= 1e-15);

    let f = l.fraction(a.clone(), s.clone()).unwrap();
    let w = l.solve_left(&a, &s).unwrap().found().unwrap();
    let r = extend_representation(&fock, &f, &xi, 1e-10, DEFAULT_TRUNCATION_CAP, Some(&w)).unwrap();
    let mut expected = e(2);
    expected[2] = c(3f64.sqrt() / 4.0);
    assert!(dist(&r.value, &expected) <= 1e-10);
    let (route, gap) = r.witness_route.unwrap();
    assert!(gap <= 1e-8);
    assert!(dist(&route, &expected) <= 1e-8);
}

#[test]
fn operator_spec_round_trip() {
    let text = r#"{"bands":[{"offset":1,"formula":{"kind":"sqrt_poly","coeffs":[[1,1,0,1],[1,1,0,1]]}}]}"#;
    let spec = OperatorSpec::from_json(text).unwrap();
    assert_eq!(spec.build().unwrap(), BandedOperator::annihilation());
    assert_eq!(serde_json::to_string(&spec).unwrap(), text);

    let diag = r#"{"bands":[{"offset":0,"formula":{"kind":"poly","coeffs":[[0,1,0,1],[1,2,0,1]]}},{"offset":-1,"formula":{"kind":"const","value":[0,1,1,1]}}]}"#;
    let op = OperatorSpec::from_json(diag).unwrap().build().unwrap();
    assert_eq!(op.coefficient(0, 4).as_scalar(), Some(Scalar::from(2)));
    assert_eq!(op.coefficient(-1, 0), SurdSum::zero());
    assert_eq!(op.coefficient(-1, 1).as_scalar(), Some(Scalar::from_parts(0, 1, 1, 1)));

    for bad in [
        r#"{"bands":[{"offset":0,"formula":{"kind":"table","values":[]}}]}"#,
        r#"{"bands":[{"offset":0,"formula":{"kind":"const","value":[1,0,0,1]}}]}"#,
        r#"{"bands":[{"offset":0,"formula":{"kind":"sqrt_poly","coeffs":[[0,1,1,1]]}}]}"#,
    ] {
        assert!(OperatorSpec::from_json(bad).and_then(|s| s.build()).is_err(), "{bad}");
    }
}

#[test]
fn fock_vacuum_is_a_state() {
    let (fock, ..) = heisenberg_parts();
    let state = fock.vector_state(&[Scalar::one()], 3).unwrap();
    assert!(check_state_axioms(&state).unwrap().passes());
    let p = fock.presentation();
    // ⟨Ω, a a' Ω⟩ = 1, ⟨Ω, a' a Ω⟩ = 0
    let aad = AlgebraElement::word(p, Word(vec![0, 1])).unwrap();
    assert_eq!(state.evaluate(&aad).unwrap(), Scalar::one());
    assert_eq!(state.evaluate(&AlgebraElement::word(p, Word(vec![1, 0])).unwrap()).unwrap(), Scalar::zero());
}
