//! Expression colorings against a small interpreter kept in this file.

use gallai::coloring::{parse_expr, Coloring};
use gallai::error::Error;
use gallai::geometry::Point;
use gallai::scalar::{QuadScalar, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

#[derive(Clone, Debug)]
enum Ast {
    Lit(i64),
    Var(usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Floor(Box<Ast>),
    FloorMod(Box<Ast>, u32),
}

fn value(e: &Ast, p: &[Rational]) -> Rational {
    match e {
        Ast::Lit(n) => Rational::from_integer(BigInt::from(*n)),
        Ast::Var(i) => p[*i].clone(),
        Ast::Neg(a) => -value(a, p),
        Ast::Add(a, b) => value(a, p) + value(b, p),
        Ast::Sub(a, b) => value(a, p) - value(b, p),
        Ast::Mul(a, b) => value(a, p) * value(b, p),
        Ast::Floor(a) => value(a, p).floor(),
        Ast::FloorMod(a, m) => {
            let n = value(a, p).floor().to_integer();
            Rational::from_integer(n.mod_floor(&BigInt::from(*m)))
        }
    }
}

fn level(e: &Ast) -> u8 {
    match e {
        Ast::Add(..) | Ast::Sub(..) => 1,
        Ast::Mul(..) | Ast::FloorMod(..) => 2,
        Ast::Neg(_) => 3,
        Ast::Lit(n) if *n < 0 => 3,
        _ => 4,
    }
}

/// Text with only the parentheses precedence requires.
fn render(e: &Ast, alt_names: bool) -> String {
    let wrap = |child: &Ast, min: u8| {
        let s = render(child, alt_names);
        if level(child) < min {
            format!("({s})")
        } else {
            s
        }
    };
    match e {
        Ast::Lit(n) => n.to_string(),
        Ast::Var(i) if alt_names => format!("x{}", i + 1),
        Ast::Var(i) => ["x", "y", "z"][*i].to_string(),
        Ast::Neg(a) => format!("-{}", wrap(a, 3)),
        Ast::Add(a, b) => format!("{} + {}", wrap(a, 1), wrap(b, 2)),
        Ast::Sub(a, b) => format!("{} - {}", wrap(a, 1), wrap(b, 2)),
        Ast::Mul(a, b) => format!("{} * {}", wrap(a, 2), wrap(b, 3)),
        Ast::Floor(a) => format!("floor({})", render(a, alt_names)),
        Ast::FloorMod(a, m) => format!("floor({}) mod {m}", render(a, alt_names)),
    }
}

/// Every node parenthesized.
fn render_full(e: &Ast) -> String {
    match e {
        Ast::Lit(n) => format!("({n})"),
        Ast::Var(i) => ["x", "y", "z"][*i].to_string(),
        Ast::Neg(a) => format!("(-{})", render_full(a)),
        Ast::Add(a, b) => format!("({}+{})", render_full(a), render_full(b)),
        Ast::Sub(a, b) => format!("({}-{})", render_full(a), render_full(b)),
        Ast::Mul(a, b) => format!("({}×{})", render_full(a), render_full(b)),
        Ast::Floor(a) => format!("floor({})", render_full(a)),
        Ast::FloorMod(a, m) => format!("(floor({}) % {m})", render_full(a)),
    }
}

fn ast() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![(-6i64..7).prop_map(Ast::Lit), (0usize..3).prop_map(Ast::Var)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Ast::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Mul(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Ast::Floor(Box::new(a))),
            (inner, 1u32..6).prop_map(|(a, m)| Ast::FloorMod(Box::new(a), m)),
        ]
    })
}

fn coords() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-20i64..20, 1i64..7).prop_map(|(n, d)| Rational::new(n.into(), d.into())), 3)
}

fn as_point(p: &[Rational]) -> Point {
    Point::new(p.iter().cloned().map(QuadScalar::from_rational).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn parsed_expressions_evaluate_exactly(e in ast(), p in coords(), alt in any::<bool>()) {
        let expected = QuadScalar::from_rational(value(&e, &p));
        let point: Vec<QuadScalar> = p.iter().cloned().map(QuadScalar::from_rational).collect();
        for text in [render(&e, alt), render_full(&e)] {
            let parsed = parse_expr(&text).unwrap();
            prop_assert_eq!(parsed.eval(&point).unwrap(), expected.clone(), "{}", text);
            let simplified = parsed.simplify().unwrap();
            prop_assert_eq!(simplified.eval(&point).unwrap(), expected.clone(), "{}", text);
        }
    }

    #[test]
    fn expression_colors_reduce_the_value(e in ast(), p in coords(), colors in 1u32..5) {
        let text = render(&e, false);
        let chi = Coloring::expression(&text, Some(colors)).unwrap();
        let v = value(&e, &p);
        match chi.color(&as_point(&p)) {
            Ok(c) => {
                prop_assert!(v.is_integer());
                let expected = v.to_integer().mod_floor(&BigInt::from(colors));
                prop_assert_eq!(BigInt::from(c), expected);
            }
            Err(Error::NonIntegerColor(_)) => prop_assert!(!v.is_integer()),
            Err(other) => prop_assert!(false, "unexpected error {}", other),
        }
    }

    #[test]
    fn wrapped_expressions_infer_their_color_count(e in ast(), m in 1u32..7, p in coords()) {
        let text = format!("floor({}) mod {m}", render(&e, true));
        let chi = Coloring::expression(&text, None).unwrap();
        prop_assert_eq!(chi.colors(), m);
        let expected = value(&Ast::FloorMod(Box::new(e), m), &p);
        prop_assert_eq!(Rational::from_integer(chi.color(&as_point(&p)).unwrap().into()), expected);
    }
}

#[test]
fn precedence_and_errors() {
    let at = |text: &str, p: &[i64]| {
        let coords: Vec<QuadScalar> = p.iter().map(|&c| QuadScalar::from_int(c)).collect();
        parse_expr(text).unwrap().eval(&coords).unwrap()
    };
    assert_eq!(at("1 + 2 * 3", &[]), QuadScalar::from_int(7));
    assert_eq!(at("10 - 3 - 2", &[]), QuadScalar::from_int(5));
    assert_eq!(at("-2 * -3", &[]), QuadScalar::from_int(6));
    assert_eq!(at("x + y mod 3", &[1, 5]), QuadScalar::from_int(3));
    assert_eq!(at("-7 mod 3", &[]), QuadScalar::from_int(2));
    assert!(matches!(parse_expr("x +"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_expr("floor x"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_expr("w + 1"), Err(Error::UnknownIdentifier { .. })));
    assert!(matches!(parse_expr("x0"), Err(Error::UnknownIdentifier { .. })));
    let surd = Point::new(vec![QuadScalar::sqrt_of(2)]).unwrap();
    let chi = Coloring::expression("floor(3*x) mod 2", None).unwrap();
    assert_eq!(chi.color(&surd).unwrap(), 0); // floor(3√2) = 4
    assert!(Coloring::expression("x + y", None).is_err());
}
