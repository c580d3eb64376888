//! Derivation of expressions with respect to a letter, over a free monoid.
//!
//! [`derive`] follows its own recursion and shares no code with
//! [`crate::derived`], so [`reconcile`] compares two independent
//! computations of the same linear combination.

use std::fmt;

use indexmap::IndexMap;

use crate::derived::{n_vector, NVector};
use crate::error::{Error, Result};
use crate::expr::{Expr, ExprKind};
use crate::monoid::MonoidElement;
use crate::semiring::Semiring;

/// A finite linear combination of expressions. Zero weights are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCombination<S: Semiring> {
    terms: IndexMap<Expr<S>, S>,
}

impl<S: Semiring> Default for LinearCombination<S> {
    fn default() -> Self {
        LinearCombination {
            terms: IndexMap::new(),
        }
    }
}

impl<S: Semiring> LinearCombination<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight(&self, e: &Expr<S>) -> S {
        self.terms.get(e).cloned().unwrap_or_else(S::zero)
    }

    /// Terms in insertion order.
    pub fn terms(&self) -> impl Iterator<Item = (&Expr<S>, &S)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, k: S, e: Expr<S>) {
        let w = self.terms.entry(e).or_insert_with(S::zero);
        *w = w.add(&k);
        self.terms.retain(|_, w| !w.is_zero());
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(mut self, other: Self) -> Self {
        for (e, k) in other.terms {
            self.add_term(k, e);
        }
        self
    }

    pub fn scale_left(self, k: &S) -> Self {
        let mut out = Self::zero();
        for (e, w) in self.terms {
            out.add_term(k.mul(&w), e);
        }
        out
    }

    /// Replaces every term `H` by `H k`.
    pub fn times_scalar(self, k: &S) -> Self {
        let mut out = Self::zero();
        for (e, w) in self.terms {
            out.add_term(w, Expr::right_scale(e, k.clone()));
        }
        out
    }

    /// Replaces every term `H` by `H.g` (`g` itself when `H` is `\e`).
    pub fn times_expr(self, g: &Expr<S>) -> Self {
        let mut out = Self::zero();
        for (e, w) in self.terms {
            out.add_term(w, Expr::product_unit_left(e, g.clone()));
        }
        out
    }

    /// Equality as maps, ignoring the order of terms.
    pub fn same_terms(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(e, k)| other.terms.get(e) == Some(k))
    }
}

impl<S: Semiring> fmt::Display for LinearCombination<S> {
    /// One `weight<TAB>expression` line per term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, k) in &self.terms {
            writeln!(f, "{k}\t{e}")?;
        }
        Ok(())
    }
}

/// The derivation of `e` with respect to the letter `a`. Atoms must be
/// single letters.
pub fn derive<S: Semiring>(e: &Expr<S>, a: char) -> Result<LinearCombination<S>> {
    e.validate()?;
    derive_rec(e, a)
}

fn derive_rec<S: Semiring>(e: &Expr<S>, a: char) -> Result<LinearCombination<S>> {
    Ok(match e.kind() {
        ExprKind::Zero | ExprKind::One => LinearCombination::zero(),
        ExprKind::Atom(m) => {
            let Some(b) = m.as_letter() else {
                return Err(Error::Unsupported(format!(
                    "derivation is defined for atoms that are single letters, not {m}"
                )));
            };
            let mut out = LinearCombination::zero();
            if a == b {
                out.add_term(S::one(), Expr::one());
            }
            out
        }
        ExprKind::LeftScale(k, f) => derive_rec(f, a)?.scale_left(k),
        ExprKind::RightScale(f, k) => derive_rec(f, a)?.times_scalar(k),
        ExprKind::Sum(f, g) => derive_rec(f, a)?.add(derive_rec(g, a)?),
        ExprKind::Product(f, g) => {
            let c = f.validate()?;
            derive_rec(f, a)?.times_expr(g).add(derive_rec(g, a)?.scale_left(&c))
        }
        ExprKind::Star(f) => {
            let c = f.validate()?;
            let c_star = c.star().ok_or_else(|| Error::Invalid {
                subexpression: e.to_string(),
                constant: c.to_string(),
            })?;
            derive_rec(f, a)?.times_expr(e).scale_left(&c_star)
        }
    })
}

/// `dE = sum over derived terms H of N(E)_H . H`, as the map `H -> N(E)_H`.
pub fn differential<S: Semiring>(e: &Expr<S>) -> Result<NVector<S>> {
    e.validate()?;
    n_vector(e)
}

/// The coefficient of the letter `a` in `dE`: the combination
/// `sum over H of (coefficient of a in N(E)_H) . H`.
pub fn letter_slice<S: Semiring>(d: &NVector<S>, a: char) -> Result<LinearCombination<S>> {
    let letter = MonoidElement::word(a.to_string());
    let mut out = LinearCombination::zero();
    for (h, p) in d {
        if let Some((m, _)) = p.terms().find(|(m, _)| m.as_letter().is_none()) {
            return Err(Error::Unsupported(format!(
                "the differential has a label {m} that is not a letter"
            )));
        }
        out.add_term(p.coefficient(&letter), h.clone());
    }
    Ok(out)
}

/// Whether the derivation with respect to `a` equals the `a`-slice of the
/// differential, term by term.
pub fn reconcile<S: Semiring>(e: &Expr<S>, a: char) -> Result<bool> {
    let by_derivation = derive(e, a)?;
    let by_differential = letter_slice(&differential(e)?, a)?;
    Ok(by_derivation.same_terms(&by_differential))
}
