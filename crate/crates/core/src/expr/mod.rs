//! Weighted rational expressions.
//!
//! Expressions are immutable and hash-consed: structural equality is
//! pointer equality, and it is the only equality used when derived terms are
//! merged. No rewriting of any kind is ever applied.

mod intern;
mod parse;
mod print;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use intern::interned_count;
pub use parse::{parse, parse_inferring_alphabet};
pub use print::AtomSyntax;

use crate::error::{Error, Result};
use crate::monoid::MonoidElement;
use crate::semiring::Semiring;

/// An interned expression. Cloning is a reference-count bump.
pub struct Expr<S: Semiring>(Arc<Node<S>>);

struct Node<S: Semiring> {
    kind: ExprKind<S>,
    hash: u64,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExprKind<S: Semiring> {
    Zero,
    One,
    /// Never the monoid identity.
    Atom(MonoidElement),
    LeftScale(S, Expr<S>),
    RightScale(Expr<S>, S),
    Sum(Expr<S>, Expr<S>),
    Product(Expr<S>, Expr<S>),
    Star(Expr<S>),
}

impl<S: Semiring> Clone for Expr<S> {
    fn clone(&self) -> Self {
        Expr(Arc::clone(&self.0))
    }
}

impl<S: Semiring> PartialEq for Expr<S> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl<S: Semiring> Eq for Expr<S> {}

impl<S: Semiring> Hash for Expr<S> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl<S: Semiring> fmt::Debug for Expr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

impl<S: Semiring> Expr<S> {
    pub fn kind(&self) -> &ExprKind<S> {
        &self.0.kind
    }

    pub fn zero() -> Self {
        intern::intern(ExprKind::Zero)
    }

    pub fn one() -> Self {
        intern::intern(ExprKind::One)
    }

    pub fn atom(m: MonoidElement) -> Result<Self> {
        if m.is_identity() {
            return Err(Error::Parse {
                offset: 0,
                message: "atom must have positive length".into(),
            });
        }
        Ok(intern::intern(ExprKind::Atom(m)))
    }

    pub fn letter(c: char) -> Self {
        intern::intern(ExprKind::Atom(MonoidElement::Word(c.to_string())))
    }

    pub fn left_scale(k: S, e: Self) -> Self {
        intern::intern(ExprKind::LeftScale(k, e))
    }

    pub fn right_scale(e: Self, k: S) -> Self {
        intern::intern(ExprKind::RightScale(e, k))
    }

    pub fn sum(f: Self, g: Self) -> Self {
        intern::intern(ExprKind::Sum(f, g))
    }

    pub fn product(f: Self, g: Self) -> Self {
        intern::intern(ExprKind::Product(f, g))
    }

    /// `f.g`, except that `\e.g` is `g` itself. Derived terms are extended
    /// on the right with this product: the derived term of an atom is `\e`,
    /// and `\e` followed by `g` stands for `g`.
    pub fn product_unit_left(f: Self, g: Self) -> Self {
        match f.kind() {
            ExprKind::One => g,
            _ => Self::product(f, g),
        }
    }

    pub fn star(f: Self) -> Self {
        intern::intern(ExprKind::Star(f))
    }

    /// Number of atom leaves.
    pub fn literal_length(&self) -> usize {
        match self.kind() {
            ExprKind::Zero | ExprKind::One => 0,
            ExprKind::Atom(_) => 1,
            ExprKind::LeftScale(_, f) | ExprKind::RightScale(f, _) | ExprKind::Star(f) => {
                f.literal_length()
            }
            ExprKind::Sum(f, g) | ExprKind::Product(f, g) => {
                f.literal_length() + g.literal_length()
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self.kind() {
            ExprKind::Zero | ExprKind::One | ExprKind::Atom(_) => 1,
            ExprKind::LeftScale(_, f) | ExprKind::RightScale(f, _) | ExprKind::Star(f) => {
                1 + f.size()
            }
            ExprKind::Sum(f, g) | ExprKind::Product(f, g) => 1 + f.size() + g.size(),
        }
    }

    /// Atoms in left-to-right order.
    pub fn atoms(&self) -> Vec<&MonoidElement> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a MonoidElement>) {
        match self.kind() {
            ExprKind::Zero | ExprKind::One => {}
            ExprKind::Atom(m) => out.push(m),
            ExprKind::LeftScale(_, f) | ExprKind::RightScale(f, _) | ExprKind::Star(f) => {
                f.collect_atoms(out)
            }
            ExprKind::Sum(f, g) | ExprKind::Product(f, g) => {
                f.collect_atoms(out);
                g.collect_atoms(out);
            }
        }
    }

    /// The constant term, or `None` when the expression is not valid.
    pub fn constant_term(&self) -> Option<S> {
        self.validate().ok()
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// The constant term, or an error naming the first (leftmost, innermost)
    /// starred subexpression whose constant term is not starrable.
    pub fn validate(&self) -> Result<S> {
        Ok(match self.kind() {
            ExprKind::Zero | ExprKind::Atom(_) => S::zero(),
            ExprKind::One => S::one(),
            ExprKind::LeftScale(k, f) => k.mul(&f.validate()?),
            ExprKind::RightScale(f, k) => f.validate()?.mul(k),
            ExprKind::Sum(f, g) => f.validate()?.add(&g.validate()?),
            ExprKind::Product(f, g) => f.validate()?.mul(&g.validate()?),
            ExprKind::Star(f) => {
                let c = f.validate()?;
                c.star().ok_or_else(|| Error::Invalid {
                    subexpression: self.to_string(),
                    constant: c.to_string(),
                })?
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::Monoid;
    use crate::semiring::{Boolean, Integer};

    fn int(text: &str) -> Expr<Integer> {
        parse(text, &Monoid::free("a,b").unwrap()).unwrap()
    }

    #[test]
    fn interning_makes_equal_structures_identical() {
        let a = Expr::<Integer>::letter('a');
        let x = Expr::product(Expr::star(a.clone()), a.clone());
        let y = Expr::product(Expr::star(Expr::letter('a')), Expr::letter('a'));
        assert!(Arc::ptr_eq(&x.0, &y.0));
        assert_eq!(x, y);
        assert_ne!(x, Expr::product(a.clone(), Expr::star(a)));
    }

    #[test]
    fn constant_terms() {
        let e1 = int("a*.(a*+<-1>b*)*");
        assert_eq!(e1.constant_term(), Some(Integer(1)));
        assert_eq!(int("\\e*").constant_term(), None);
        assert_eq!(int("a*").constant_term(), Some(Integer(1)));
        assert_eq!(int("<3>\\e<2> + a").constant_term(), Some(Integer(6)));
        assert_eq!(int("\\z").constant_term(), Some(Integer(0)));
    }

    #[test]
    fn invalid_expression_names_the_starred_subexpression() {
        let e = int("a.(b+\\e)*");
        match e.validate() {
            Err(Error::Invalid {
                subexpression,
                constant,
            }) => {
                assert_eq!(subexpression, "(b+\\e)*");
                assert_eq!(constant, "1");
            }
            other => panic!("unexpected {other:?}"),
        }
        // In the Boolean semiring everything is starrable.
        let b: Expr<Boolean> = parse("a.(b+\\e)*", &Monoid::free("a,b").unwrap()).unwrap();
        assert_eq!(b.constant_term(), Some(Boolean(false)));
    }

    #[test]
    fn literal_lengths() {
        assert_eq!(int("a*.(a*+<-1>b*)*").literal_length(), 3);
        assert_eq!(int("\\e").literal_length(), 0);
        assert_eq!(int("<2>a<3>").literal_length(), 1);
    }

    #[test]
    fn identity_atoms_are_rejected() {
        assert!(Expr::<Integer>::atom(MonoidElement::word("")).is_err());
        assert!(Expr::<Integer>::atom(MonoidElement::pair("", "")).is_err());
    }
}
