//! Standard automata: one initial state, of weight 1, that no transition
//! enters. In block form such an automaton is `<(1 0), (0 J; 0 F), (c; U)>`
//! and the rational operations act directly on the blocks `J`, `F`, `c`, `U`.
//!
//! State 0 is always the initial state; states `1..` are the core.

use crate::automaton::{StateLabel, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::expr::{Expr, ExprKind};
use crate::monoid::{Monoid, MonoidElement};
use crate::semiring::Semiring;
use crate::series::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardAutomaton<S: Semiring> {
    automaton: WeightedAutomaton<S>,
}

impl<S: Semiring> StandardAutomaton<S> {
    /// Assembles `<(1 0), (0 J; 0 F), (c; U)>`; the initial state is labelled
    /// [`StateLabel::Initial`].
    pub fn from_blocks(
        monoid: Monoid,
        core_labels: Vec<StateLabel<S>>,
        j: Vec<Polynomial<S>>,
        f: Vec<Vec<Polynomial<S>>>,
        c: S,
        u: Vec<S>,
    ) -> Result<Self> {
        let n = core_labels.len();
        if j.len() != n || f.len() != n || u.len() != n {
            return Err(Error::Dimension(format!(
                "{n} core states but J has {}, F has {} rows, U has {}",
                j.len(),
                f.len(),
                u.len()
            )));
        }
        let mut labels = vec![StateLabel::Initial];
        labels.extend(core_labels);
        let mut initial = vec![S::zero(); n + 1];
        initial[0] = S::one();
        let mut transitions = Vec::with_capacity(n + 1);
        transitions.push(std::iter::once(Polynomial::zero()).chain(j).collect());
        for row in f {
            transitions.push(std::iter::once(Polynomial::zero()).chain(row).collect());
        }
        let mut finals = vec![c];
        finals.extend(u);
        WeightedAutomaton::new(monoid, labels, initial, transitions, finals)
            .map(|automaton| StandardAutomaton { automaton })
    }

    /// Checks that `a` is standard with its initial state first.
    pub fn from_automaton(a: WeightedAutomaton<S>) -> Result<Self> {
        let n = a.num_states();
        let unit = n > 0 && a.initial()[0].is_one() && a.initial()[1..].iter().all(S::is_zero);
        if !unit {
            return Err(Error::Unsupported(
                "a standard automaton has initial vector (1 0 ... 0)".into(),
            ));
        }
        if (0..n).any(|p| !a.transition(p, 0).is_zero()) {
            return Err(Error::Unsupported(
                "a standard automaton has no transition into its initial state".into(),
            ));
        }
        Ok(StandardAutomaton { automaton: a })
    }

    pub fn automaton(&self) -> &WeightedAutomaton<S> {
        &self.automaton
    }

    pub fn into_automaton(self) -> WeightedAutomaton<S> {
        self.automaton
    }

    pub fn monoid(&self) -> &Monoid {
        self.automaton.monoid()
    }

    /// Number of states, initial state included.
    pub fn dim(&self) -> usize {
        self.automaton.num_states()
    }

    pub fn core_labels(&self) -> &[StateLabel<S>] {
        &self.automaton.labels()[1..]
    }

    pub fn j(&self) -> Vec<Polynomial<S>> {
        self.automaton.transitions()[0][1..].to_vec()
    }

    pub fn f(&self) -> Vec<Vec<Polynomial<S>>> {
        self.automaton.transitions()[1..].iter().map(|row| row[1..].to_vec()).collect()
    }

    pub fn c(&self) -> &S {
        &self.automaton.finals()[0]
    }

    pub fn u(&self) -> &[S] {
        &self.automaton.finals()[1..]
    }

    /// Same blocks, new core labels.
    pub fn with_core_labels(self, core_labels: Vec<StateLabel<S>>) -> Self {
        let mut labels = vec![self.automaton.labels()[0].clone()];
        labels.extend(core_labels);
        StandardAutomaton {
            automaton: self.automaton.with_labels(labels),
        }
    }

    /// Same blocks, new label for the initial state.
    pub fn with_initial_label(self, label: StateLabel<S>) -> Self {
        let mut labels = self.automaton.labels().to_vec();
        labels[0] = label;
        StandardAutomaton {
            automaton: self.automaton.with_labels(labels),
        }
    }

    /// `S_0 = <(1), (0), (0)>`.
    pub fn zero(monoid: &Monoid) -> Self {
        Self::from_blocks(monoid.clone(), vec![], vec![], vec![], S::zero(), vec![])
            .expect("well-formed")
    }

    /// `S_1 = <(1), (0), (1)>`.
    pub fn one(monoid: &Monoid) -> Self {
        Self::from_blocks(monoid.clone(), vec![], vec![], vec![], S::one(), vec![])
            .expect("well-formed")
    }

    /// `S_m = <(1 0), (0 m; 0 0), (0; 1)>`.
    pub fn atom(monoid: &Monoid, m: MonoidElement) -> Result<Self> {
        if m.is_identity() {
            return Err(Error::Unsupported("an atom is never the identity".into()));
        }
        Self::from_blocks(
            monoid.clone(),
            vec![StateLabel::Position(1)],
            vec![Polynomial::monomial(S::one(), m)],
            vec![vec![Polynomial::zero()]],
            S::zero(),
            vec![S::one()],
        )
    }

    /// `<k J, F, k c, U>`.
    pub fn scale_left(&self, k: &S) -> Self {
        let j = self.j().iter().map(|p| p.scale_left(k)).collect();
        Self::from_blocks(
            self.monoid().clone(),
            self.core_labels().to_vec(),
            j,
            self.f(),
            k.mul(self.c()),
            self.u().to_vec(),
        )
        .expect("dimensions unchanged")
        .with_initial_label(self.automaton.labels()[0].clone())
    }

    /// `<J, F, c k, U k>`.
    pub fn scale_right(&self, k: &S) -> Self {
        Self::from_blocks(
            self.monoid().clone(),
            self.core_labels().to_vec(),
            self.j(),
            self.f(),
            self.c().mul(k),
            self.u().iter().map(|x| x.mul(k)).collect(),
        )
        .expect("dimensions unchanged")
        .with_initial_label(self.automaton.labels()[0].clone())
    }

    fn check_monoid(&self, other: &Self) -> Result<()> {
        if self.monoid() != other.monoid() {
            return Err(Error::MonoidMismatch(format!(
                "automata over {} and {}",
                self.monoid(),
                other.monoid()
            )));
        }
        Ok(())
    }

    /// Initial row `(J K)`, core `(F 0; 0 G)`, finals `(c+d; U; V)`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_monoid(other)?;
        let (n, m) = (self.dim() - 1, other.dim() - 1);
        let mut j = self.j();
        j.extend(other.j());
        let mut f = Vec::with_capacity(n + m);
        for row in self.f() {
            f.push(row.into_iter().chain(vec![Polynomial::zero(); m]).collect());
        }
        for row in other.f() {
            f.push(vec![Polynomial::zero(); n].into_iter().chain(row).collect());
        }
        let mut labels = self.core_labels().to_vec();
        labels.extend_from_slice(other.core_labels());
        let mut u = self.u().to_vec();
        u.extend_from_slice(other.u());
        Self::from_blocks(self.monoid().clone(), labels, j, f, self.c().add(other.c()), u)
    }

    /// Initial row `(J cK)`, core `(F UK; 0 G)`, finals `(cd; Ud; V)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_monoid(other)?;
        let (n, m) = (self.dim() - 1, other.dim() - 1);
        let c = self.c();
        let d = other.c();
        let k = other.j();
        let mut j = self.j();
        j.extend(k.iter().map(|p| p.scale_left(c)));
        let mut f = Vec::with_capacity(n + m);
        for (row, ui) in self.f().into_iter().zip(self.u()) {
            f.push(row.into_iter().chain(k.iter().map(|p| p.scale_left(ui))).collect());
        }
        for row in other.f() {
            f.push(vec![Polynomial::zero(); n].into_iter().chain(row).collect());
        }
        let mut labels = self.core_labels().to_vec();
        labels.extend_from_slice(other.core_labels());
        let mut u: Vec<S> = self.u().iter().map(|x| x.mul(d)).collect();
        u.extend_from_slice(other.u());
        Self::from_blocks(self.monoid().clone(), labels, j, f, c.mul(d), u)
    }

    /// `<c* J, U c* J + F, c*, U c*>`. Fails when `c` has no star.
    pub fn star(&self) -> Result<Self> {
        let c_star = self.c().star().ok_or_else(|| {
            Error::NotStarrable(format!("constant term {} has no star", self.c()))
        })?;
        let j: Vec<Polynomial<S>> = self.j().iter().map(|p| p.scale_left(&c_star)).collect();
        let u: Vec<S> = self.u().iter().map(|x| x.mul(&c_star)).collect();
        let f = self
            .f()
            .into_iter()
            .zip(&u)
            .map(|(row, ui)| {
                row.into_iter().zip(&j).map(|(fij, jj)| fij.add(&jj.scale_left(ui))).collect()
            })
            .collect();
        Self::from_blocks(self.monoid().clone(), self.core_labels().to_vec(), j, f, c_star, u)
    }
}

/// The position automaton `S_E`: one core state per atom of `e`, numbered
/// from 1 in left-to-right order.
pub fn position_automaton<S: Semiring>(
    e: &Expr<S>,
    monoid: &Monoid,
) -> Result<StandardAutomaton<S>> {
    e.validate()?;
    let s = build(e, monoid)?;
    let n = s.dim() - 1;
    Ok(s.with_core_labels((1..=n).map(StateLabel::Position).collect()))
}

fn build<S: Semiring>(e: &Expr<S>, monoid: &Monoid) -> Result<StandardAutomaton<S>> {
    match e.kind() {
        ExprKind::Zero => Ok(StandardAutomaton::zero(monoid)),
        ExprKind::One => Ok(StandardAutomaton::one(monoid)),
        ExprKind::Atom(m) => {
            if !monoid.contains(m) {
                return Err(Error::MonoidMismatch(format!("{m} is not in {monoid}")));
            }
            StandardAutomaton::atom(monoid, m.clone())
        }
        ExprKind::LeftScale(k, f) => Ok(build(f, monoid)?.scale_left(k)),
        ExprKind::RightScale(f, k) => Ok(build(f, monoid)?.scale_right(k)),
        ExprKind::Sum(f, g) => build(f, monoid)?.sum(&build(g, monoid)?),
        ExprKind::Product(f, g) => build(f, monoid)?.product(&build(g, monoid)?),
        ExprKind::Star(f) => build(f, monoid)?.star(),
    }
}
