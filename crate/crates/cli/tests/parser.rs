use num_bigint::BigInt;
use num_rational::BigRational;
use ores_cli::ast::Literal;
use ores_cli::{parse, Expr};
use proptest::prelude::*;

fn gen(name: &str) -> Expr {
    Expr::Gen(name.into())
}

fn int(n: u64) -> Expr {
    Expr::Scalar(Literal::integer(n))
}

fn dagger(e: Expr) -> Expr {
    Expr::Dagger(Box::new(e))
}

fn neg(e: Expr) -> Expr {
    Expr::Neg(Box::new(e))
}

#[test]
fn documented_examples() {
    assert_eq!(
        parse("a*a' - a'*a").unwrap(),
        Expr::Sum(vec![Expr::Prod(vec![gen("a"), dagger(gen("a"))]), neg(Expr::Prod(vec![dagger(gen("a")), gen("a")]))])
    );
    let square = Expr::Sum(vec![int(1), Expr::Prod(vec![gen("x"), gen("x")])]);
    assert_eq!(parse("(1+ x*x)'").unwrap().strip_parens(), dagger(square.clone()));
    assert_eq!(parse("frac(x; 1+x*x)").unwrap(), Expr::Frac(Box::new(gen("x")), vec![square]));
}

#[test]
fn literals_and_scaling() {
    let half_i = Literal { value: BigRational::new(BigInt::from(1), BigInt::from(2)), imaginary: true };
    assert_eq!(parse("1/2i*x").unwrap(), Expr::Scale(half_i, Box::new(gen("x"))));
    assert_eq!(parse("4/6").unwrap().to_string(), "2/3");
    assert_eq!(parse("2*x*y").unwrap(), Expr::Scale(Literal::integer(2), Box::new(Expr::Prod(vec![gen("x"), gen("y")]))));
    assert_eq!(parse("x*2").unwrap(), Expr::Prod(vec![gen("x"), int(2)]));
    assert_eq!(parse("x''").unwrap(), dagger(dagger(gen("x"))));
    assert_eq!(parse("--x").unwrap(), neg(neg(gen("x"))));
}

#[test]
fn canonical_printing() {
    for (input, canonical) in [
        ("a*a'-a'*a", "a*a' - a'*a"),
        ("frac( x ;1+x*x,1 + y'*y )", "frac(x; 1 + x*x, 1 + y'*y)"),
        ("(x+y)*(x-y)", "(x + y)*(x - y)"),
        ("((x))", "((x))"),
        ("3 * (x)", "3*(x)"),
    ] {
        assert_eq!(parse(input).unwrap().to_string(), canonical, "{input}");
    }
    // printing a tree built without parentheses inserts the needed ones
    let e = Expr::Prod(vec![Expr::Sum(vec![gen("x"), int(1)]), dagger(Expr::Sum(vec![gen("y"), neg(gen("z"))]))]);
    assert_eq!(e.to_string(), "(x + 1)*(y - z)'");
    assert_eq!(parse(&e.to_string()).unwrap().strip_parens(), e);
}

fn position(text: &str) -> (usize, usize) {
    let e = parse(text).unwrap_err();
    (e.line, e.column)
}

#[test]
fn errors_carry_positions() {
    assert_eq!(position("x +\n  * y"), (2, 3));
    assert_eq!(position(""), (1, 1));
    assert_eq!(position("x y"), (1, 3));
    assert_eq!(position("(x"), (1, 3));
    assert_eq!(position("frac(x)"), (1, 7));
    assert_eq!(position("frac(x; )"), (1, 9));
    assert_eq!(position("1/0"), (1, 3));
    assert_eq!(position("x # y"), (1, 3));
    let e = parse("x +").unwrap_err();
    assert_eq!(e.found, "end of input");
    assert!(e.to_string().starts_with("line 1, column 4: expected "), "{e}");
}

fn literal() -> impl Strategy<Value = Literal> {
    (0u64..30, 1u64..5, any::<bool>()).prop_map(|(n, d, imaginary)| Literal {
        value: BigRational::new(BigInt::from(n), BigInt::from(d)),
        imaginary,
    })
}

fn ident() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,3}".prop_filter("reserved", |s| s != "frac")
}

/// Trees respecting the node invariants; parentheses appear only where the
/// strategy chooses to wrap.
fn tree() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![literal().prop_map(Expr::Scalar), ident().prop_map(Expr::Gen)];
    leaf.prop_recursive(4, 32, 4, |inner| {
        let not_literal = inner.clone().prop_filter("literal first factor", |e| !matches!(e, Expr::Scalar(_)));
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Dagger(Box::new(e))),
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            inner.clone().prop_map(|e| Expr::Paren(Box::new(e))),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Sum),
            (not_literal, prop::collection::vec(inner.clone(), 1..3)).prop_map(|(first, rest)| {
                Expr::Prod(std::iter::once(first).chain(rest).collect())
            }),
            (literal(), inner.clone())
                .prop_filter("nested scale", |(_, e)| !matches!(e, Expr::Scale(..) | Expr::Scalar(_)))
                .prop_filter("literal-led product", |(_, e)| !matches!(e, Expr::Prod(v) if matches!(v[0], Expr::Scalar(_))))
                .prop_map(|(l, e)| Expr::Scale(l, Box::new(e))),
            (inner.clone(), prop::collection::vec(inner, 1..3)).prop_map(|(n, d)| Expr::Frac(Box::new(n), d)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_round_trips(e in tree()) {
        let text = e.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text:?}: {err}")))?;
        prop_assert_eq!(back.strip_parens(), e.strip_parens(), "{}", text);
        prop_assert_eq!(back.to_string(), text.clone());
        // on parser output the round trip is exact
        prop_assert_eq!(parse(&back.to_string()).unwrap(), back);
    }

    #[test]
    fn arbitrary_input_never_panics(text in "[ax'()+*/;,0-9i\\- \nfrc#]{0,40}") {
        match parse(&text) {
            Ok(e) => prop_assert_eq!(parse(&e.to_string()).unwrap(), e),
            Err(err) => {
                let lines: Vec<&str> = text.split('\n').collect();
                prop_assert!(err.line >= 1 && err.line <= lines.len());
                prop_assert!(err.column >= 1 && err.column <= lines[err.line - 1].chars().count() + 1);
                prop_assert!(!err.expected.is_empty());
            }
        }
    }
}
