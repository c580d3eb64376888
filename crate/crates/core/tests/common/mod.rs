//! Seeded generator of random valid expressions.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use ratexp::expr::Expr;
use ratexp::monoid::{Monoid, MonoidElement};
use ratexp::semiring::{Boolean, Integer, MinPlus, Rational, Semiring};

pub trait RandomWeight: Semiring {
    fn random(rng: &mut ChaCha8Rng) -> Self;
}

impl RandomWeight for Boolean {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        Boolean(rng.random_bool(0.7))
    }
}

impl RandomWeight for Integer {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        Integer(rng.random_range(-2..=2))
    }
}

impl RandomWeight for MinPlus {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        if rng.random_bool(0.1) {
            MinPlus::Infinity
        } else {
            MinPlus::Finite(rng.random_range(-1..=3))
        }
    }
}

impl RandomWeight for Rational {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        Rational::new(rng.random_range(-2..=2), rng.random_range(1..=3))
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn free_ab() -> Monoid {
    Monoid::free("a,b").unwrap()
}

pub fn product_ax() -> Monoid {
    Monoid::product("a", "x").unwrap()
}

/// Atoms used for a monoid: the letters of a free monoid, or `a|\e`,
/// `\e|x` and `a|x` for `{a}* x {x}*`.
pub fn atoms_of(monoid: &Monoid) -> Vec<MonoidElement> {
    match monoid {
        Monoid::Free(a) => a.letters().iter().map(|c| MonoidElement::word(c.to_string())).collect(),
        Monoid::Product(a, b) => {
            let mut out = Vec::new();
            for &x in a.letters() {
                out.push(MonoidElement::pair(x.to_string(), ""));
            }
            for &y in b.letters() {
                out.push(MonoidElement::pair("", y.to_string()));
            }
            for &x in a.letters() {
                for &y in b.letters() {
                    out.push(MonoidElement::pair(x.to_string(), y.to_string()));
                }
            }
            out
        }
    }
}

pub struct Generator<'a> {
    pub atoms: &'a [MonoidElement],
    pub max_depth: usize,
}

impl Generator<'_> {
    /// A valid expression of depth at most `max_depth`.
    pub fn valid<S: RandomWeight>(&self, rng: &mut ChaCha8Rng) -> Expr<S> {
        self.node(rng, self.max_depth)
    }

    fn leaf<S: RandomWeight>(&self, rng: &mut ChaCha8Rng) -> Expr<S> {
        match rng.random_range(0..10) {
            0 => Expr::zero(),
            1 | 2 => Expr::one(),
            _ => Expr::atom(self.atoms[rng.random_range(0..self.atoms.len())].clone()).unwrap(),
        }
    }

    fn node<S: RandomWeight>(&self, rng: &mut ChaCha8Rng, depth: usize) -> Expr<S> {
        if depth == 0 || rng.random_bool(0.2) {
            return self.leaf(rng);
        }
        let d = depth - 1;
        match rng.random_range(0..10) {
            0 => Expr::left_scale(S::random(rng), self.node(rng, d)),
            1 => Expr::right_scale(self.node(rng, d), S::random(rng)),
            2 | 3 => Expr::sum(self.node(rng, d), self.node(rng, d)),
            4..=6 => Expr::product(self.node(rng, d), self.node(rng, d)),
            _ => self.starred(rng, d),
        }
    }

    /// Retries the child until its constant term is starrable; falls back to
    /// prefixing it with an atom, which makes the constant term zero.
    fn starred<S: RandomWeight>(&self, rng: &mut ChaCha8Rng, d: usize) -> Expr<S> {
        for _ in 0..8 {
            let child: Expr<S> = self.node(rng, d);
            if child.constant_term().and_then(|c| c.star()).is_some() {
                return Expr::star(child);
            }
        }
        let atom = Expr::atom(self.atoms[0].clone()).unwrap();
        Expr::star(Expr::product(atom, self.node(rng, d.saturating_sub(1))))
    }
}

/// `count` valid expressions from a fixed seed.
pub fn corpus<S: RandomWeight>(seed: u64, count: usize, monoid: &Monoid, max_depth: usize) -> Vec<Expr<S>> {
    let atoms = atoms_of(monoid);
    let g = Generator {
        atoms: &atoms,
        max_depth,
    };
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let e: Expr<S> = g.valid(&mut rng);
            assert!(e.is_valid(), "generator produced an invalid expression {e}");
            e
        })
        .collect()
}
