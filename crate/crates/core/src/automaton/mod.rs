//! Weighted automata over a graded monoid, in matrix form `<I, E, T>`.
//!
//! Transitions are stored densely as an `n x n` matrix of polynomials; the
//! automata built here have at most a few dozen states.

mod export;
mod matrix;
mod morphism;

use std::fmt;
use std::sync::Arc;

pub use matrix::Matrix;
pub use morphism::{check_morphism, quotient_by, quotient_by_with_representatives, MorphismViolation, StateMap};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::monoid::{Cursor, Monoid, MonoidElement};
use crate::semiring::Semiring;
use crate::series::{Basis, Polynomial, TruncatedSeries};

/// `(from, to, weight)`.
type Edge<S> = (usize, usize, S);

/// How a state is named in output.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum StateLabel<S: Semiring> {
    Initial,
    /// A position of the expression, numbered from 1 in left-to-right atom
    /// order.
    Position(usize),
    /// A derived term.
    Term(Expr<S>),
}

impl<S: Semiring> fmt::Display for StateLabel<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateLabel::Initial => f.write_str("i"),
            StateLabel::Position(p) => write!(f, "{p}"),
            StateLabel::Term(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedAutomaton<S: Semiring> {
    monoid: Monoid,
    labels: Vec<StateLabel<S>>,
    initial: Vec<S>,
    transitions: Vec<Vec<Polynomial<S>>>,
    finals: Vec<S>,
}

impl<S: Semiring> WeightedAutomaton<S> {
    /// Checks dimensions, and that every transition label is a non-identity
    /// element of `monoid`.
    pub fn new(
        monoid: Monoid,
        labels: Vec<StateLabel<S>>,
        initial: Vec<S>,
        transitions: Vec<Vec<Polynomial<S>>>,
        finals: Vec<S>,
    ) -> Result<Self> {
        let n = labels.len();
        if initial.len() != n || finals.len() != n || transitions.len() != n {
            return Err(Error::Dimension(format!(
                "{n} states but {} initial weights, {} final weights, {} transition rows",
                initial.len(),
                finals.len(),
                transitions.len()
            )));
        }
        for (p, row) in transitions.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "transition row {p} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for entry in row {
                for (m, _) in entry.terms() {
                    if !monoid.contains(m) {
                        return Err(Error::MonoidMismatch(format!("{m} is not in {monoid}")));
                    }
                    if m.is_identity() {
                        return Err(Error::Unsupported(format!(
                            "transition from state {p} labelled by the identity"
                        )));
                    }
                }
            }
        }
        Ok(WeightedAutomaton {
            monoid,
            labels,
            initial,
            transitions,
            finals,
        })
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[StateLabel<S>] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &StateLabel<S> {
        &self.labels[p]
    }

    pub fn initial(&self) -> &[S] {
        &self.initial
    }

    pub fn finals(&self) -> &[S] {
        &self.finals
    }

    pub fn transition(&self, p: usize, q: usize) -> &Polynomial<S> {
        &self.transitions[p][q]
    }

    pub fn transitions(&self) -> &[Vec<Polynomial<S>>] {
        &self.transitions
    }

    pub fn with_labels(mut self, labels: Vec<StateLabel<S>>) -> Self {
        assert_eq!(labels.len(), self.labels.len(), "one label per state");
        self.labels = labels;
        self
    }

    /// Nonzero transitions as `(from, to, weight, label)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &S, &MonoidElement)> {
        self.transitions.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(q, poly)| poly.terms().map(move |(m, k)| (p, q, k, m)))
        })
    }

    /// Weight of `m`: the sum over all paths whose labels multiply to `m`.
    pub fn coefficient(&self, m: &MonoidElement) -> S {
        if !self.monoid.contains(m) {
            return S::zero();
        }
        let edges: Vec<_> = self.edges().collect();
        let n = self.num_states();
        // Forward vectors, one per cursor position inside `m`. Every label
        // has positive length, so advancing strictly increases the slot.
        let mut at: Vec<Option<(Cursor, Vec<S>)>> = vec![None; m.cursor_slots()];
        at[0] = Some(((0, 0), self.initial.clone()));
        let mut result = S::zero();
        for slot in 0..at.len() {
            let Some((cursor, x)) = at[slot].take() else {
                continue;
            };
            if m.is_end(cursor) {
                result = S::sum(x.iter().zip(&self.finals).map(|(a, t)| a.mul(t)));
                continue;
            }
            for &(p, q, k, label) in &edges {
                if x[p].is_zero() {
                    continue;
                }
                if let Some(next) = m.advance(cursor, label) {
                    let entry = &mut at[m.cursor_slot(next)];
                    let y = &mut entry.get_or_insert_with(|| (next, vec![S::zero(); n])).1;
                    y[q] = y[q].add(&x[p].mul(k));
                }
            }
        }
        result
    }

    /// The behaviour on every element of length at most `bound`.
    pub fn behaviour(&self, bound: usize) -> TruncatedSeries<S> {
        self.behaviour_in(&Basis::new(&self.monoid, bound))
    }

    /// [`Self::behaviour`] over a shared basis. Computes, for each element in
    /// length order, the vector of path weights reaching each state; an
    /// element `w` is reached from every prefix `u` with `w = u l` for some
    /// transition label `l`.
    pub fn behaviour_in(&self, basis: &Arc<Basis>) -> TruncatedSeries<S> {
        assert_eq!(basis.monoid(), &self.monoid, "basis over a different monoid");
        let n = self.num_states();
        let mut by_label: Vec<(MonoidElement, Vec<Edge<S>>)> = Vec::new();
        for (p, q, k, m) in self.edges() {
            match by_label.iter_mut().find(|(l, _)| l == m) {
                Some((_, list)) => list.push((p, q, k.clone())),
                None => by_label.push((m.clone(), vec![(p, q, k.clone())])),
            }
        }
        let elements = basis.elements();
        let mut vectors: Vec<Vec<S>> = Vec::with_capacity(elements.len());
        let mut coeffs = Vec::with_capacity(elements.len());
        for w in elements {
            let x = if w.is_identity() {
                self.initial.clone()
            } else {
                let mut x = vec![S::zero(); n];
                for (label, list) in &by_label {
                    let Some(u) = strip_suffix(w, label) else {
                        continue;
                    };
                    let prev = &vectors[basis.index_of(&u).expect("prefix is in the basis")];
                    for (p, q, k) in list {
                        if !prev[*p].is_zero() {
                            x[*q] = x[*q].add(&prev[*p].mul(k));
                        }
                    }
                }
                x
            };
            coeffs.push(S::sum(x.iter().zip(&self.finals).map(|(a, t)| a.mul(t))));
            vectors.push(x);
        }
        TruncatedSeries::from_coefficients(basis, coeffs)
    }

    /// Whether `self` is conjugate to `other` by `x`:
    /// `I x = J`, `E x = x F` and `T = x U` where `other = <J, F, U>`.
    pub fn is_conjugate(&self, other: &Self, x: &Matrix<S>) -> Result<bool> {
        let (n, m) = (self.num_states(), other.num_states());
        if x.rows() != n || x.cols() != m {
            return Err(Error::Dimension(format!(
                "conjugacy matrix is {}x{}, expected {n}x{m}",
                x.rows(),
                x.cols()
            )));
        }
        if self.monoid != other.monoid {
            return Ok(false);
        }
        for j in 0..m {
            let ix = S::sum((0..n).map(|i| self.initial[i].mul(x.get(i, j))));
            if ix != other.initial[j] {
                return Ok(false);
            }
        }
        for i in 0..n {
            let xu = S::sum((0..m).map(|j| x.get(i, j).mul(&other.finals[j])));
            if xu != self.finals[i] {
                return Ok(false);
            }
        }
        for i in 0..n {
            for j in 0..m {
                let mut ex = Polynomial::zero();
                for k in 0..n {
                    ex.add_assign(&self.transitions[i][k].scale_right(x.get(k, j)));
                }
                let mut xf = Polynomial::zero();
                for k in 0..m {
                    xf.add_assign(&other.transitions[k][j].scale_left(x.get(i, k)));
                }
                if ex != xf {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        export::to_json(self)
    }

    pub fn to_dot(&self) -> String {
        export::to_dot(self)
    }

    pub fn to_text(&self) -> String {
        export::to_text(self)
    }
}

/// `u` such that `w = u label`, if any.
fn strip_suffix(w: &MonoidElement, label: &MonoidElement) -> Option<MonoidElement> {
    match (w, label) {
        (MonoidElement::Word(w), MonoidElement::Word(l)) => {
            w.strip_suffix(l.as_str()).map(MonoidElement::word)
        }
        (MonoidElement::Pair(u, v), MonoidElement::Pair(lu, lv)) => {
            let u = u.strip_suffix(lu.as_str())?;
            let v = v.strip_suffix(lv.as_str())?;
            Some(MonoidElement::pair(u, v))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Integer;

    fn w(s: &str) -> MonoidElement {
        MonoidElement::word(s)
    }

    /// Two states counting the `a`s of a word: weight of `u` is `|u|_a`.
    fn count_a() -> WeightedAutomaton<Integer> {
        let one = Integer(1);
        let loop_ab = {
            let mut p = Polynomial::monomial(one, w("a"));
            p.add_term(one, w("b"));
            p
        };
        WeightedAutomaton::new(
            Monoid::free("a,b").unwrap(),
            vec![StateLabel::Position(1), StateLabel::Position(2)],
            vec![one, Integer(0)],
            vec![
                vec![loop_ab.clone(), Polynomial::monomial(one, w("a"))],
                vec![Polynomial::zero(), loop_ab],
            ],
            vec![Integer(0), one],
        )
        .unwrap()
    }

    #[test]
    fn coefficients_count_paths() {
        let a = count_a();
        assert_eq!(a.coefficient(&w("")), Integer(0));
        assert_eq!(a.coefficient(&w("abab")), Integer(2));
        assert_eq!(a.coefficient(&w("aaa")), Integer(3));
        let s = a.behaviour(4);
        for (m, k) in s.iter() {
            let expected = m.as_word().unwrap().chars().filter(|&c| c == 'a').count();
            assert_eq!(k, &Integer(expected as i64), "{m}");
            assert_eq!(&a.coefficient(m), k);
        }
    }

    #[test]
    fn multi_letter_and_pair_labels() {
        let m = Monoid::product("a", "x").unwrap();
        let label = MonoidElement::pair("a", "xx");
        let aut = WeightedAutomaton::new(
            m,
            vec![StateLabel::Position(1)],
            vec![Integer(1)],
            vec![vec![Polynomial::monomial(Integer(3), label)]],
            vec![Integer(1)],
        )
        .unwrap();
        assert_eq!(aut.coefficient(&MonoidElement::pair("aa", "xxxx")), Integer(9));
        assert_eq!(aut.coefficient(&MonoidElement::pair("aa", "xxx")), Integer(0));
        let s = aut.behaviour(6);
        assert_eq!(s.coefficient(&MonoidElement::pair("aa", "xxxx")), Some(&Integer(9)));
        assert_eq!(s.nonzero().count(), 3);
    }

    #[test]
    fn identity_labels_are_rejected() {
        let r = WeightedAutomaton::new(
            Monoid::free("a").unwrap(),
            vec![StateLabel::<Integer>::Initial],
            vec![Integer(1)],
            vec![vec![Polynomial::monomial(Integer(1), w(""))]],
            vec![Integer(1)],
        );
        assert!(r.is_err());
    }

    #[test]
    fn conjugacy_by_identity_and_by_merging_twins() {
        let a = count_a();
        assert!(a.is_conjugate(&a, &Matrix::identity(2)).unwrap());
        // The zero matrix sends the initial vector to zero.
        assert!(!a.is_conjugate(&a, &Matrix::zero(2, 2)).unwrap());
    }
}
