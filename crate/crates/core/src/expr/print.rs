//! Printing in the same syntax the parser reads, with minimal parentheses.

use std::fmt;

use super::{Expr, ExprKind};
use crate::monoid::MonoidElement;
use crate::semiring::Semiring;

// Binding strength of each syntactic level.
const SUM: u8 = 0;
const PRODUCT: u8 = 1;
const PREFIX: u8 = 2;
const POSTFIX: u8 = 3;

fn level<S: Semiring>(e: &Expr<S>) -> u8 {
    match e.kind() {
        ExprKind::Sum(..) => SUM,
        ExprKind::Product(..) => PRODUCT,
        ExprKind::LeftScale(..) => PREFIX,
        _ => POSTFIX,
    }
}

fn write_at<S: Semiring>(f: &mut fmt::Formatter<'_>, e: &Expr<S>, min: u8) -> fmt::Result {
    if level(e) < min {
        f.write_str("(")?;
        write_at(f, e, SUM)?;
        return f.write_str(")");
    }
    match e.kind() {
        ExprKind::Zero => f.write_str("\\z"),
        ExprKind::One => f.write_str("\\e"),
        ExprKind::Atom(m) => write_atom(f, m),
        ExprKind::Sum(l, r) => {
            write_at(f, l, SUM)?;
            f.write_str("+")?;
            write_at(f, r, PRODUCT)
        }
        ExprKind::Product(l, r) => {
            write_at(f, l, PRODUCT)?;
            f.write_str(".")?;
            write_at(f, r, PREFIX)
        }
        ExprKind::LeftScale(k, c) => {
            write!(f, "<{k}>")?;
            write_at(f, c, PREFIX)
        }
        ExprKind::RightScale(c, k) => {
            write_at(f, c, POSTFIX)?;
            write!(f, "<{k}>")
        }
        ExprKind::Star(c) => {
            write_at(f, c, POSTFIX)?;
            f.write_str("*")
        }
    }
}

/// Atom syntax: `a`, `(ab)`, `a|x`, `\e|y`, `(ab|\e)`.
fn write_atom(f: &mut fmt::Formatter<'_>, m: &MonoidElement) -> fmt::Result {
    match m {
        MonoidElement::Word(w) if w.chars().count() == 1 => f.write_str(w),
        MonoidElement::Word(w) => write!(f, "({w})"),
        MonoidElement::Pair(u, v) if u.chars().count() <= 1 && v.chars().count() <= 1 => {
            write!(f, "{m}")
        }
        MonoidElement::Pair(..) => write!(f, "({m})"),
    }
}

/// Displays a monoid element in atom syntax.
pub struct AtomSyntax<'a>(pub &'a MonoidElement);

impl fmt::Display for AtomSyntax<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_atom(f, self.0)
    }
}

impl<S: Semiring> fmt::Display for Expr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, SUM)
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::{parse, Expr};
    use crate::monoid::{Monoid, MonoidElement};
    use crate::semiring::{Integer, Rational};
    use proptest::prelude::*;

    #[test]
    fn prints_minimal_parentheses() {
        let m = Monoid::free("a,b").unwrap();
        for text in [
            "a*.(a*+<-1>b*)*",
            "a+b.a",
            "(a+b).a",
            "a.(b.a)",
            "<2>(a+b)",
            "(<2>a)<3>",
            "<2>a<3>",
            "(ab)*",
            "\\z+\\e",
            "a<3>*",
            "(<2>a)*",
        ] {
            let e: Expr<Integer> = parse(text, &m).unwrap();
            assert_eq!(e.to_string(), text);
        }
    }

    #[test]
    fn prints_pair_atoms() {
        let m = Monoid::product("a", "x,y").unwrap();
        let e: Expr<Integer> = parse("a|x.\\e|y.(a|xy)", &m).unwrap();
        assert_eq!(e.to_string(), "a|x.\\e|y.(a|xy)");
    }

    fn arb_expr() -> impl Strategy<Value = Expr<Rational>> {
        let leaf = prop_oneof![
            Just(Expr::zero()),
            Just(Expr::one()),
            prop::sample::select(vec!["a", "b", "ab", "ba", "aab"])
                .prop_map(|w| Expr::atom(MonoidElement::word(w)).unwrap()),
        ];
        let weight = (-3i64..4, 1i64..4).prop_map(|(n, d)| Rational::new(n, d));
        leaf.prop_recursive(6, 64, 2, move |inner| {
            prop_oneof![
                (weight.clone(), inner.clone()).prop_map(|(k, e)| Expr::left_scale(k, e)),
                (inner.clone(), weight.clone()).prop_map(|(e, k)| Expr::right_scale(e, k)),
                (inner.clone(), inner.clone()).prop_map(|(f, g)| Expr::sum(f, g)),
                (inner.clone(), inner.clone()).prop_map(|(f, g)| Expr::product(f, g)),
                inner.prop_map(Expr::star),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn parse_print_round_trip(e in arb_expr()) {
            let m = Monoid::free("a,b").unwrap();
            let text = e.to_string();
            let back: Expr<Rational> = parse(&text, &m).unwrap();
            prop_assert_eq!(back, e, "{}", text);
        }
    }
}
