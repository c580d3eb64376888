//! Derived terms, the vector `N(E)`, and the derived-term automata.
//!
//! The standard derived-term automaton `T_E` is built by the same induction
//! as the position automaton, except that after each sum and product the
//! core states labelled by equal derived terms are merged. Every merge is a
//! quotient by an automaton morphism, and the amalgamation matrices are
//! multiplied along the way, so the result carries a transfer matrix `X`
//! with `S_E` conjugate to `T_E` by `X`.

use indexmap::{IndexMap, IndexSet};

use crate::automaton::{check_morphism, quotient_by, Matrix, StateLabel, StateMap, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::expr::{Expr, ExprKind};
use crate::monoid::Monoid;
use crate::semiring::Semiring;
use crate::series::Polynomial;
use crate::standard::{position_automaton, StandardAutomaton};

/// `N(E)`: for each derived term `K`, the polynomial labelling the
/// transitions from the initial state to `K`. Zero entries are absent.
pub type NVector<S> = IndexMap<Expr<S>, Polynomial<S>>;

/// The derived terms of `e`, in construction order (left operand first).
pub fn derived_terms<S: Semiring>(e: &Expr<S>) -> IndexSet<Expr<S>> {
    match e.kind() {
        ExprKind::Zero | ExprKind::One => IndexSet::new(),
        ExprKind::Atom(_) => IndexSet::from([Expr::one()]),
        ExprKind::LeftScale(_, f) => derived_terms(f),
        ExprKind::RightScale(f, k) => derived_terms(f)
            .into_iter()
            .map(|t| Expr::right_scale(t, k.clone()))
            .collect(),
        ExprKind::Sum(f, g) => {
            let mut d = derived_terms(f);
            d.extend(derived_terms(g));
            d
        }
        ExprKind::Product(f, g) => {
            let mut d: IndexSet<_> = derived_terms(f)
                .into_iter()
                .map(|t| Expr::product_unit_left(t, g.clone()))
                .collect();
            d.extend(derived_terms(g));
            d
        }
        ExprKind::Star(f) => derived_terms(f)
            .into_iter()
            .map(|t| Expr::product_unit_left(t, e.clone()))
            .collect(),
    }
}

fn add_entry<S: Semiring>(n: &mut NVector<S>, term: Expr<S>, p: Polynomial<S>) {
    let entry = n.entry(term).or_default();
    entry.add_assign(&p);
}

fn drop_zeros<S: Semiring>(mut n: NVector<S>) -> NVector<S> {
    n.retain(|_, p| !p.is_zero());
    n
}

/// `N(E)`. Needs the constant terms of starred and left-multiplied
/// subexpressions, hence a valid expression.
pub fn n_vector<S: Semiring>(e: &Expr<S>) -> Result<NVector<S>> {
    Ok(drop_zeros(match e.kind() {
        ExprKind::Zero | ExprKind::One => NVector::new(),
        ExprKind::Atom(m) => NVector::from([(Expr::one(), Polynomial::monomial(S::one(), m.clone()))]),
        ExprKind::LeftScale(k, f) => n_vector(f)?
            .into_iter()
            .map(|(t, p)| (t, p.scale_left(k)))
            .collect(),
        ExprKind::RightScale(f, k) => n_vector(f)?
            .into_iter()
            .map(|(t, p)| (Expr::right_scale(t, k.clone()), p))
            .collect(),
        ExprKind::Sum(f, g) => {
            let mut n = n_vector(f)?;
            for (t, p) in n_vector(g)? {
                add_entry(&mut n, t, p);
            }
            n
        }
        ExprKind::Product(f, g) => {
            let c = f.validate()?;
            let mut n: NVector<S> = n_vector(f)?
                .into_iter()
                .map(|(t, p)| (Expr::product_unit_left(t, g.clone()), p))
                .collect();
            for (t, p) in n_vector(g)? {
                add_entry(&mut n, t, p.scale_left(&c));
            }
            n
        }
        ExprKind::Star(f) => {
            let c = f.validate()?;
            let c_star = c.star().ok_or_else(|| Error::Invalid {
                subexpression: e.to_string(),
                constant: c.to_string(),
            })?;
            n_vector(f)?
                .into_iter()
                .map(|(t, p)| (Expr::product_unit_left(t, e.clone()), p.scale_left(&c_star)))
                .collect()
        }
    }))
}

/// A derived-term automaton together with its transfer matrix from the
/// position automaton.
#[derive(Clone, Debug)]
pub struct DerivedTermAutomaton<S: Semiring> {
    expression: Expr<S>,
    automaton: WeightedAutomaton<S>,
    terms: Vec<Expr<S>>,
    transfer: Matrix<S>,
    merged_initial: bool,
}

impl<S: Semiring> DerivedTermAutomaton<S> {
    pub fn expression(&self) -> &Expr<S> {
        &self.expression
    }

    pub fn automaton(&self) -> &WeightedAutomaton<S> {
        &self.automaton
    }

    pub fn into_automaton(self) -> WeightedAutomaton<S> {
        self.automaton
    }

    /// The derived terms, in construction order.
    pub fn terms(&self) -> &[Expr<S>] {
        &self.terms
    }

    /// `X` with `S_E` conjugate to this automaton by `X`; rows are indexed
    /// by the states of the position automaton.
    pub fn transfer(&self) -> &Matrix<S> {
        &self.transfer
    }

    /// Whether the initial state was merged with the core state `E`.
    pub fn merged_initial(&self) -> bool {
        self.merged_initial
    }

    /// Rebuilds the position automaton and checks the conjugacy by
    /// [`Self::transfer`].
    pub fn verify_transfer(&self) -> Result<bool> {
        let s = position_automaton(&self.expression, self.automaton.monoid())?;
        s.automaton().is_conjugate(&self.automaton, &self.transfer)
    }
}

/// `T_E`: the standard automaton whose core states are the derived terms.
pub fn standard_derived_term_automaton<S: Semiring>(
    e: &Expr<S>,
    monoid: &Monoid,
) -> Result<DerivedTermAutomaton<S>> {
    e.validate()?;
    let (t, transfer) = build(e, monoid)?;
    let terms = core_terms(&t);
    Ok(DerivedTermAutomaton {
        expression: e.clone(),
        automaton: t.into_automaton(),
        terms,
        transfer,
        merged_initial: false,
    })
}

/// `D_E`: `T_E` with its initial state merged with the core state `E` when
/// `E` is one of its own derived terms (strict structural equality); `T_E`
/// otherwise. The merged state is first and is labelled by `E`.
pub fn derived_term_automaton<S: Semiring>(
    e: &Expr<S>,
    monoid: &Monoid,
) -> Result<DerivedTermAutomaton<S>> {
    let t = standard_derived_term_automaton(e, monoid)?;
    let Some(i) = t.terms.iter().position(|k| k == e) else {
        return Ok(t);
    };
    let n = t.automaton.num_states();
    let image: Vec<usize> = (0..n)
        .map(|p| match p {
            0 => 0,
            p if p == i + 1 => 0,
            p if p <= i => p,
            p => p - 1,
        })
        .collect();
    let omega = StateMap::new(image, n - 1)?;
    let merged = quotient_step(&t.automaton, &omega, e)?;
    let mut labels = merged.labels().to_vec();
    labels[0] = StateLabel::Term(e.clone());
    Ok(DerivedTermAutomaton {
        expression: e.clone(),
        automaton: merged.with_labels(labels),
        terms: t.terms,
        transfer: t.transfer.mul(&omega.to_matrix()),
        merged_initial: true,
    })
}

fn core_terms<S: Semiring>(t: &StandardAutomaton<S>) -> Vec<Expr<S>> {
    t.core_labels()
        .iter()
        .map(|l| match l {
            StateLabel::Term(k) => k.clone(),
            other => unreachable!("core state labelled {other}"),
        })
        .collect()
}

fn relabel<S: Semiring>(t: StandardAutomaton<S>, f: impl Fn(Expr<S>) -> Expr<S>) -> StandardAutomaton<S> {
    let labels = core_terms(&t).into_iter().map(|k| StateLabel::Term(f(k))).collect();
    t.with_core_labels(labels)
}

/// The block of `x` without its first row and column.
fn core_block<S: Semiring>(x: &Matrix<S>) -> Matrix<S> {
    let mut out = Matrix::zero(x.rows() - 1, x.cols() - 1);
    for i in 1..x.rows() {
        for j in 1..x.cols() {
            out.set(i - 1, j - 1, x.get(i, j).clone());
        }
    }
    out
}

fn quotient_step<S: Semiring>(
    a: &WeightedAutomaton<S>,
    map: &StateMap,
    e: &Expr<S>,
) -> Result<WeightedAutomaton<S>> {
    check_morphism(a, map).map_err(|v| Error::Invariant {
        expression: e.to_string(),
        detail: format!("merging equal derived terms is not a morphism: {v}"),
    })?;
    quotient_by(a, map)
}

/// Merges the core states carrying equal derived terms, keeping the first
/// occurrence of each.
fn merge_equal_terms<S: Semiring>(
    t: StandardAutomaton<S>,
    x: Matrix<S>,
    e: &Expr<S>,
) -> Result<(StandardAutomaton<S>, Matrix<S>)> {
    let mut classes: IndexSet<Expr<S>> = IndexSet::new();
    let mut image = vec![0];
    for k in core_terms(&t) {
        image.push(classes.insert_full(k).0 + 1);
    }
    let map = StateMap::new(image, classes.len() + 1)?;
    let merged = quotient_step(t.automaton(), &map, e)?;
    Ok((StandardAutomaton::from_automaton(merged)?, x.mul(&map.to_matrix())))
}

fn build<S: Semiring>(e: &Expr<S>, monoid: &Monoid) -> Result<(StandardAutomaton<S>, Matrix<S>)> {
    let (t, x) = match e.kind() {
        ExprKind::Zero => (StandardAutomaton::zero(monoid), Matrix::identity(1)),
        ExprKind::One => (StandardAutomaton::one(monoid), Matrix::identity(1)),
        ExprKind::Atom(m) => {
            if !monoid.contains(m) {
                return Err(Error::MonoidMismatch(format!("{m} is not in {monoid}")));
            }
            let t = StandardAutomaton::atom(monoid, m.clone())?
                .with_core_labels(vec![StateLabel::Term(Expr::one())]);
            (t, Matrix::identity(2))
        }
        ExprKind::LeftScale(k, f) => {
            let (t, x) = build(f, monoid)?;
            (t.scale_left(k), x)
        }
        ExprKind::RightScale(f, k) => {
            let (t, x) = build(f, monoid)?;
            (relabel(t.scale_right(k), |t| Expr::right_scale(t, k.clone())), x)
        }
        ExprKind::Sum(f, g) => {
            let (tf, xf) = build(f, monoid)?;
            let (tg, xg) = build(g, monoid)?;
            let x = Matrix::block_diagonal(&[&Matrix::identity(1), &core_block(&xf), &core_block(&xg)]);
            merge_equal_terms(tf.sum(&tg)?, x, e)?
        }
        ExprKind::Product(f, g) => {
            let (tf, xf) = build(f, monoid)?;
            let (tg, xg) = build(g, monoid)?;
            let tf = relabel(tf, |t| Expr::product_unit_left(t, g.clone()));
            let x = Matrix::block_diagonal(&[&Matrix::identity(1), &core_block(&xf), &core_block(&xg)]);
            merge_equal_terms(tf.product(&tg)?, x, e)?
        }
        ExprKind::Star(f) => {
            let (t, x) = build(f, monoid)?;
            (relabel(t.star()?, |t| Expr::product_unit_left(t, e.clone())), x)
        }
    };
    if cfg!(debug_assertions) {
        check_claims(e, &t)?;
    }
    Ok((t, x))
}

/// The invariants of `T_E`: its core states are `D(E)` in construction
/// order, `c = c(E)`, `J = N(E)`, `U_K = c(K)`, and row `K` of the core
/// block is `N(K)`.
pub fn check_claims<S: Semiring>(e: &Expr<S>, t: &StandardAutomaton<S>) -> Result<()> {
    let fail = |detail: String| Error::Invariant {
        expression: e.to_string(),
        detail,
    };
    let terms = core_terms(t);
    let d: Vec<Expr<S>> = derived_terms(e).into_iter().collect();
    if terms != d {
        return Err(fail(format!("core states {terms:?} differ from the derived terms {d:?}")));
    }
    let c = e.validate()?;
    if t.c() != &c {
        return Err(fail(format!("initial final weight {} but constant term {c}", t.c())));
    }
    let row_matches = |row: &[Polynomial<S>], n: &NVector<S>, what: &str| -> Result<()> {
        if let Some(k) = n.keys().find(|k| !d.contains(k)) {
            return Err(fail(format!("{what} has an entry at {k}, which is not a derived term")));
        }
        for (k, entry) in d.iter().zip(row) {
            let expected = n.get(k).cloned().unwrap_or_default();
            if entry != &expected {
                return Err(fail(format!("{what} at {k} is {entry}, expected {expected}")));
            }
        }
        Ok(())
    };
    row_matches(&t.j(), &n_vector(e)?, "the initial row")?;
    for ((k, row), u) in d.iter().zip(t.f()).zip(t.u()) {
        let ck = k.validate()?;
        if u != &ck {
            return Err(fail(format!("final weight of {k} is {u}, constant term is {ck}")));
        }
        row_matches(&row, &n_vector(k)?, &format!("the row of {k}"))?;
    }
    Ok(())
}
