//! Graded monoids: the free monoid `A*` and the product `A* x B*`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A finite alphabet of single-character letters, kept in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<char>);

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut seen = Vec::new();
        for c in letters {
            if !is_letter(c) {
                return Err(Error::MonoidMismatch(format!("{c:?} cannot be used as a letter")));
            }
            if seen.contains(&c) {
                return Err(Error::MonoidMismatch(format!("letter {c:?} declared twice")));
            }
            seen.push(c);
        }
        Ok(Alphabet(seen))
    }

    /// Parses a comma-separated list such as `a,b`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let mut chars = item.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => letters.push(c),
                _ => {
                    return Err(Error::MonoidMismatch(format!(
                        "letters are single characters, got {item:?}"
                    )))
                }
            }
        }
        Alphabet::new(letters)
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn contains(&self, c: char) -> bool {
        self.0.contains(&c)
    }

    fn admits(&self, word: &str) -> bool {
        word.chars().all(|c| self.contains(c))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Characters usable as letters: anything alphanumeric.
pub fn is_letter(c: char) -> bool {
    c.is_alphanumeric()
}

/// An element of one of the shipped monoids.
///
/// Words are stored as `String`; the length function counts characters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonoidElement {
    Word(String),
    Pair(String, String),
}

/// Position inside an element while it is being consumed left to right
/// (byte offsets; only the first component is used for words).
pub type Cursor = (usize, usize);

impl MonoidElement {
    pub fn word(s: impl Into<String>) -> Self {
        MonoidElement::Word(s.into())
    }

    pub fn pair(u: impl Into<String>, v: impl Into<String>) -> Self {
        MonoidElement::Pair(u.into(), v.into())
    }

    pub fn len(&self) -> usize {
        match self {
            MonoidElement::Word(w) => w.chars().count(),
            MonoidElement::Pair(u, v) => u.chars().count() + v.chars().count(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        match self {
            MonoidElement::Word(w) => w.is_empty(),
            MonoidElement::Pair(u, v) => u.is_empty() && v.is_empty(),
        }
    }

    /// Concatenation (componentwise for pairs).
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (MonoidElement::Word(a), MonoidElement::Word(b)) => {
                Ok(MonoidElement::Word(format!("{a}{b}")))
            }
            (MonoidElement::Pair(a, b), MonoidElement::Pair(c, d)) => {
                Ok(MonoidElement::Pair(format!("{a}{c}"), format!("{b}{d}")))
            }
            _ => Err(Error::MonoidMismatch(format!(
                "cannot multiply {self} by {other}: different monoids"
            ))),
        }
    }

    /// If `label` is a prefix of the part of `self` after `at`, the cursor
    /// just past it.
    pub fn advance(&self, at: Cursor, label: &Self) -> Option<Cursor> {
        match (self, label) {
            (MonoidElement::Word(w), MonoidElement::Word(l)) => {
                w[at.0..].starts_with(l.as_str()).then(|| (at.0 + l.len(), 0))
            }
            (MonoidElement::Pair(u, v), MonoidElement::Pair(lu, lv)) => {
                (u[at.0..].starts_with(lu.as_str()) && v[at.1..].starts_with(lv.as_str()))
                    .then(|| (at.0 + lu.len(), at.1 + lv.len()))
            }
            _ => None,
        }
    }

    pub fn is_end(&self, at: Cursor) -> bool {
        match self {
            MonoidElement::Word(w) => at.0 == w.len(),
            MonoidElement::Pair(u, v) => at.0 == u.len() && at.1 == v.len(),
        }
    }

    /// Number of distinct cursor positions, and the slot of one of them;
    /// used to index memo tables.
    pub(crate) fn cursor_slots(&self) -> usize {
        match self {
            MonoidElement::Word(w) => w.len() + 1,
            MonoidElement::Pair(u, v) => (u.len() + 1) * (v.len() + 1),
        }
    }

    pub(crate) fn cursor_slot(&self, at: Cursor) -> usize {
        match self {
            MonoidElement::Word(_) => at.0,
            MonoidElement::Pair(_, v) => at.0 * (v.len() + 1) + at.1,
        }
    }

    /// The word, if this is a free-monoid element.
    pub fn as_word(&self) -> Option<&str> {
        match self {
            MonoidElement::Word(w) => Some(w),
            MonoidElement::Pair(..) => None,
        }
    }

    /// The single letter, if this is a one-letter word.
    pub fn as_letter(&self) -> Option<char> {
        let mut chars = self.as_word()?.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Some(c),
            _ => None,
        }
    }
}

fn fmt_side(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    if s.is_empty() {
        f.write_str("\\e")
    } else {
        f.write_str(s)
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidElement::Word(w) => fmt_side(f, w),
            MonoidElement::Pair(u, v) => {
                fmt_side(f, u)?;
                f.write_str("|")?;
                fmt_side(f, v)
            }
        }
    }
}

impl Ord for MonoidElement {
    /// Length first, then lexicographic. For pairs of equal total length the
    /// one with the longer first component comes first, so `(a,1) < (1,b)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| match (self, other) {
            (MonoidElement::Word(a), MonoidElement::Word(b)) => a.cmp(b),
            (MonoidElement::Pair(a, b), MonoidElement::Pair(c, d)) => c
                .chars()
                .count()
                .cmp(&a.chars().count())
                .then_with(|| a.cmp(c))
                .then_with(|| b.cmp(d)),
            (MonoidElement::Word(_), MonoidElement::Pair(..)) => Ordering::Less,
            (MonoidElement::Pair(..), MonoidElement::Word(_)) => Ordering::Greater,
        })
    }
}

impl PartialOrd for MonoidElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A declared monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Monoid {
    Free(Alphabet),
    Product(Alphabet, Alphabet),
}

impl Monoid {
    pub fn free(letters: &str) -> Result<Self> {
        Ok(Monoid::Free(Alphabet::parse(letters)?))
    }

    pub fn product(first: &str, second: &str) -> Result<Self> {
        Ok(Monoid::Product(Alphabet::parse(first)?, Alphabet::parse(second)?))
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Monoid::Free(_))
    }

    pub fn identity(&self) -> MonoidElement {
        match self {
            Monoid::Free(_) => MonoidElement::Word(String::new()),
            Monoid::Product(..) => MonoidElement::Pair(String::new(), String::new()),
        }
    }

    /// Whether `m` is an element of this monoid.
    pub fn contains(&self, m: &MonoidElement) -> bool {
        match (self, m) {
            (Monoid::Free(a), MonoidElement::Word(w)) => a.admits(w),
            (Monoid::Product(a, b), MonoidElement::Pair(u, v)) => a.admits(u) && b.admits(v),
            _ => false,
        }
    }

    pub fn multiply(&self, m: &MonoidElement, n: &MonoidElement) -> Result<MonoidElement> {
        for x in [m, n] {
            if !self.contains(x) {
                return Err(Error::MonoidMismatch(format!("{x} is not an element of {self}")));
            }
        }
        m.multiply(n)
    }

    /// Parses a word argument: concatenated letters, or `u|v` for products.
    /// `\e` and the empty string denote the identity (or an empty side).
    pub fn parse_element(&self, text: &str) -> Result<MonoidElement> {
        let side = |s: &str| if s == "\\e" { String::new() } else { s.to_string() };
        let m = match self {
            Monoid::Free(_) => MonoidElement::Word(side(text)),
            Monoid::Product(..) => match text.split_once('|') {
                Some((u, v)) => MonoidElement::Pair(side(u), side(v)),
                None if text.is_empty() || text == "\\e" => self.identity(),
                None => {
                    return Err(Error::MonoidMismatch(format!(
                        "elements of a product monoid are written u|v, got {text:?}"
                    )))
                }
            },
        };
        if !self.contains(&m) {
            return Err(Error::MonoidMismatch(format!("{text:?} is not an element of {self}")));
        }
        Ok(m)
    }

    /// All elements of length at most `n`, in (length, lexicographic) order.
    pub fn enumerate_up_to(&self, n: usize) -> Vec<MonoidElement> {
        let mut out = match self {
            Monoid::Free(a) => words_up_to(a, n).into_iter().map(MonoidElement::Word).collect(),
            Monoid::Product(a, b) => {
                let us = words_up_to(a, n);
                let vs = words_up_to(b, n);
                let mut pairs = Vec::new();
                for u in &us {
                    let lu = u.chars().count();
                    for v in vs.iter().filter(|v| lu + v.chars().count() <= n) {
                        pairs.push(MonoidElement::Pair(u.clone(), v.clone()));
                    }
                }
                pairs
            }
        };
        out.sort();
        out
    }
}

fn words_up_to(alphabet: &Alphabet, n: usize) -> Vec<String> {
    let mut all = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..n {
        let next: Vec<String> = layer
            .iter()
            .flat_map(|w| alphabet.letters().iter().map(move |c| format!("{w}{c}")))
            .collect();
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monoid::Free(a) => write!(f, "{{{a}}}*"),
            Monoid::Product(a, b) => write!(f, "{{{a}}}* x {{{b}}}*"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> MonoidElement {
        MonoidElement::word(s)
    }

    #[test]
    fn multiply_examples() {
        let m = Monoid::free("a,b").unwrap();
        assert_eq!(m.multiply(&w("ab"), &w("ba")).unwrap(), w("abba"));
        assert_eq!(m.multiply(&w(""), &w("ab")).unwrap(), w("ab"));
        let p = Monoid::product("a", "b").unwrap();
        let got = p
            .multiply(&MonoidElement::pair("a", ""), &MonoidElement::pair("", "b"))
            .unwrap();
        assert_eq!(got, MonoidElement::pair("a", "b"));
    }

    #[test]
    fn multiply_rejects_mismatched_monoids() {
        let m = Monoid::free("a,b").unwrap();
        assert!(m.multiply(&w("a"), &MonoidElement::pair("a", "")).is_err());
        assert!(m.multiply(&w("a"), &w("c")).is_err());
        assert!(w("a").multiply(&MonoidElement::pair("a", "")).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let m = Monoid::free("a,b").unwrap();
        assert_eq!(m.enumerate_up_to(1), vec![w(""), w("a"), w("b")]);
        assert_eq!(m.enumerate_up_to(2).len(), 7);
        let p = Monoid::product("a", "b").unwrap();
        assert_eq!(
            p.enumerate_up_to(1),
            vec![
                MonoidElement::pair("", ""),
                MonoidElement::pair("a", ""),
                MonoidElement::pair("", "b")
            ]
        );
    }

    #[test]
    fn enumeration_size_closed_form() {
        for k in 1..=3usize {
            let letters: Vec<String> = "abc".chars().take(k).map(String::from).collect();
            let m = Monoid::free(&letters.join(",")).unwrap();
            for n in 0..=4u32 {
                let expected: usize = (0..=n).map(|i| k.pow(i)).sum();
                assert_eq!(m.enumerate_up_to(n as usize).len(), expected);
            }
        }
    }

    #[test]
    fn gradation_is_additive() {
        for m in [Monoid::free("a,b").unwrap(), Monoid::product("a,b", "x").unwrap()] {
            let elems = m.enumerate_up_to(3);
            for x in &elems {
                for y in &elems {
                    let xy = m.multiply(x, y).unwrap();
                    assert_eq!(xy.len(), x.len() + y.len());
                }
            }
            assert_eq!(m.identity().len(), 0);
        }
    }

    #[test]
    fn parse_elements() {
        let m = Monoid::free("a,b").unwrap();
        assert_eq!(m.parse_element("").unwrap(), w(""));
        assert_eq!(m.parse_element("\\e").unwrap(), w(""));
        assert_eq!(m.parse_element("ab").unwrap(), w("ab"));
        assert!(m.parse_element("ac").is_err());
        let p = Monoid::product("a", "x,y").unwrap();
        assert_eq!(p.parse_element("a|\\e").unwrap(), MonoidElement::pair("a", ""));
        assert_eq!(p.parse_element("|xy").unwrap(), MonoidElement::pair("", "xy"));
        assert!(p.parse_element("a").is_err());
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert!(Alphabet::parse("a,a").is_err());
        assert!(Alphabet::parse("ab").is_err());
        assert!(Alphabet::parse("+").is_err());
    }

    #[test]
    fn advance_through_pairs() {
        let m = MonoidElement::pair("ab", "x");
        let at = m.advance((0, 0), &MonoidElement::pair("a", "")).unwrap();
        assert_eq!(at, (1, 0));
        assert!(m.advance(at, &MonoidElement::pair("a", "")).is_none());
        let at = m.advance(at, &MonoidElement::pair("b", "x")).unwrap();
        assert!(m.is_end(at));
    }
}
