//! Amalgamation matrices and quotients of automata.

use std::fmt;

use super::{Matrix, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::semiring::Semiring;
use crate::series::Polynomial;

/// A surjective map from states `0..n` onto classes `0..codomain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMap {
    image: Vec<usize>,
    codomain: usize,
}

impl StateMap {
    pub fn new(image: Vec<usize>, codomain: usize) -> Result<Self> {
        let mut hit = vec![false; codomain];
        for (p, &c) in image.iter().enumerate() {
            if c >= codomain {
                return Err(Error::StateMap(format!(
                    "state {p} is sent to {c}, outside 0..{codomain}"
                )));
            }
            hit[c] = true;
        }
        if let Some(c) = hit.iter().position(|h| !h) {
            return Err(Error::StateMap(format!("class {c} has no preimage")));
        }
        Ok(StateMap { image, codomain })
    }

    /// Reads a matrix with exactly one `1` per row and `0` elsewhere.
    pub fn from_matrix<S: Semiring>(x: &Matrix<S>) -> Result<Self> {
        let mut image = Vec::with_capacity(x.rows());
        for i in 0..x.rows() {
            let row = x.row(i);
            let ones: Vec<usize> = (0..row.len()).filter(|&j| row[j].is_one()).collect();
            if ones.len() != 1 || row.iter().filter(|k| !k.is_zero()).count() != 1 {
                return Err(Error::StateMap(format!(
                    "row {i} is not a unit vector: ({})",
                    row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
                )));
            }
            image.push(ones[0]);
        }
        Self::new(image, x.cols())
    }

    pub fn to_matrix<S: Semiring>(&self) -> Matrix<S> {
        let mut x = Matrix::zero(self.image.len(), self.codomain);
        for (p, &c) in self.image.iter().enumerate() {
            x.set(p, c, S::one());
        }
        x
    }

    pub fn domain(&self) -> usize {
        self.image.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn image(&self, p: usize) -> usize {
        self.image[p]
    }

    /// Members of each class, in increasing order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.codomain];
        for (p, &c) in self.image.iter().enumerate() {
            classes[c].push(p);
        }
        classes
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &StateMap) -> Result<StateMap> {
        if self.codomain != then.domain() {
            return Err(Error::Dimension(format!(
                "cannot compose a map onto {} classes with a map from {} states",
                self.codomain,
                then.domain()
            )));
        }
        StateMap::new(self.image.iter().map(|&c| then.image[c]).collect(), then.codomain)
    }
}

/// Why a state map is not an automaton morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismViolation {
    pub first: usize,
    pub second: usize,
    pub detail: String,
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "states {} and {} share a class but {}",
            self.first, self.second, self.detail
        )
    }
}

impl std::error::Error for MorphismViolation {}

/// Row `p` of `E X`: the transitions out of `p`, summed per class of targets.
fn class_row<S: Semiring>(a: &WeightedAutomaton<S>, map: &StateMap, p: usize) -> Vec<Polynomial<S>> {
    let mut row = vec![Polynomial::zero(); map.codomain()];
    for (q, entry) in a.transitions()[p].iter().enumerate() {
        row[map.image(q)].add_assign(entry);
    }
    row
}

/// Checks that `a` is conjugate to its quotient by `map`: states in one class
/// have the same final weight and the same transitions into each class.
pub fn check_morphism<S: Semiring>(
    a: &WeightedAutomaton<S>,
    map: &StateMap,
) -> Result<(), MorphismViolation> {
    assert_eq!(map.domain(), a.num_states(), "state map domain");
    for class in map.classes() {
        let (&first, rest) = class.split_first().expect("classes are nonempty");
        let first_row = class_row(a, map, first);
        for &second in rest {
            if a.finals()[first] != a.finals()[second] {
                return Err(MorphismViolation {
                    first,
                    second,
                    detail: format!(
                        "their final weights differ ({} and {})",
                        a.finals()[first],
                        a.finals()[second]
                    ),
                });
            }
            let row = class_row(a, map, second);
            if let Some(c) = (0..row.len()).find(|&c| row[c] != first_row[c]) {
                return Err(MorphismViolation {
                    first,
                    second,
                    detail: format!(
                        "their transitions into class {c} differ ({} and {})",
                        first_row[c], row[c]
                    ),
                });
            }
        }
    }
    Ok(())
}

/// The quotient `<I X, Y E X, Y T>`, where `X` is the matrix of `map` and
/// `Y` selects the first state of each class. Each class is named after
/// that state.
pub fn quotient_by<S: Semiring>(
    a: &WeightedAutomaton<S>,
    map: &StateMap,
) -> Result<WeightedAutomaton<S>> {
    let reps: Vec<usize> = map.classes().iter().map(|c| c[0]).collect();
    quotient_by_with_representatives(a, map, &reps)
}

/// [`quotient_by`] with a chosen representative for each class.
pub fn quotient_by_with_representatives<S: Semiring>(
    a: &WeightedAutomaton<S>,
    map: &StateMap,
    representatives: &[usize],
) -> Result<WeightedAutomaton<S>> {
    if map.domain() != a.num_states() {
        return Err(Error::Dimension(format!(
            "state map on {} states for an automaton with {}",
            map.domain(),
            a.num_states()
        )));
    }
    if representatives.len() != map.codomain()
        || representatives.iter().enumerate().any(|(c, &p)| p >= map.domain() || map.image(p) != c)
    {
        return Err(Error::StateMap("one representative per class is required".into()));
    }
    check_morphism(a, map)?;
    let mut initial = vec![S::zero(); map.codomain()];
    for (p, k) in a.initial().iter().enumerate() {
        let c = map.image(p);
        initial[c] = initial[c].add(k);
    }
    let transitions = representatives.iter().map(|&p| class_row(a, map, p)).collect();
    let finals = representatives.iter().map(|&p| a.finals()[p].clone()).collect();
    let labels = representatives.iter().map(|&p| a.label(p).clone()).collect();
    WeightedAutomaton::new(a.monoid().clone(), labels, initial, transitions, finals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::StateLabel;
    use crate::monoid::{Monoid, MonoidElement};
    use crate::semiring::Integer;

    fn a() -> MonoidElement {
        MonoidElement::word("a")
    }

    /// Initial state going by `a` to two twin states, each looping on `a`.
    fn twins() -> WeightedAutomaton<Integer> {
        let p = |k| Polynomial::monomial(Integer(k), a());
        let z = Polynomial::zero;
        WeightedAutomaton::new(
            Monoid::free("a").unwrap(),
            (0..3).map(StateLabel::Position).collect(),
            vec![Integer(1), Integer(0), Integer(0)],
            vec![vec![z(), p(2), p(-1)], vec![z(), p(1), z()], vec![z(), z(), p(1)]],
            vec![Integer(0), Integer(1), Integer(1)],
        )
        .unwrap()
    }

    #[test]
    fn merging_twins_is_a_morphism_and_a_conjugacy() {
        let aut = twins();
        let map = StateMap::new(vec![0, 1, 1], 2).unwrap();
        let q = quotient_by(&aut, &map).unwrap();
        assert_eq!(q.num_states(), 2);
        assert_eq!(q.transition(0, 1), &Polynomial::monomial(Integer(1), a()));
        assert!(aut.is_conjugate(&q, &map.to_matrix()).unwrap());
        assert_eq!(aut.behaviour(5), q.behaviour(5));
        let back = StateMap::from_matrix(&map.to_matrix::<Integer>()).unwrap();
        assert_eq!(back, map);
    }

    #[test]
    fn non_morphisms_are_reported() {
        let aut = twins();
        let map = StateMap::new(vec![0, 0, 1], 2).unwrap();
        let err = check_morphism(&aut, &map).unwrap_err();
        assert_eq!((err.first, err.second), (0, 1));
        assert!(err.to_string().contains("final weights differ"), "{err}");
        assert!(matches!(quotient_by(&aut, &map), Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn state_maps_must_be_surjective_functions() {
        assert!(StateMap::new(vec![0, 0], 2).is_err());
        assert!(StateMap::new(vec![0, 2], 2).is_err());
        let bad = Matrix::from_rows(vec![vec![Integer(1), Integer(1)]]);
        assert!(StateMap::from_matrix(&bad).is_err());
        let f = StateMap::new(vec![1, 0, 1], 2).unwrap();
        let g = StateMap::new(vec![0, 0], 1).unwrap();
        assert_eq!(f.then(&g).unwrap(), StateMap::new(vec![0, 0, 0], 1).unwrap());
    }
}
