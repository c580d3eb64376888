//! Concrete syntax.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('.'? factor)*
//! factor := '<' weight '>' factor | base ('*' | '<' weight '>')*
//! base   := '\z' | '\e' | atom | '(' expr ')'
//! atom   := side | side '|' side | '(' word ')' | '(' side* '|' side* ')'
//! side   := letter | '\e'
//! ```
//!
//! `*` binds tighter than `.`, which binds tighter than `+`. Juxtaposition is
//! product, so `ab` is `a.b` while `(ab)` is the single atom `ab`. Over a
//! product monoid a bare letter is placed in whichever component declares it.

use super::Expr;
use crate::error::{Error, Result};
use crate::monoid::{is_letter, Alphabet, Monoid, MonoidElement};
use crate::semiring::Semiring;

/// Parses `text` as an expression over `monoid`.
pub fn parse<S: Semiring>(text: &str, monoid: &Monoid) -> Result<Expr<S>> {
    Parser::new(text, Some(monoid)).run()
}

/// Parses over a free monoid whose alphabet is the set of letters that occur
/// in `text` (sorted). An expression without atoms gets the alphabet `{a}`.
pub fn parse_inferring_alphabet<S: Semiring>(text: &str) -> Result<(Expr<S>, Monoid)> {
    let e: Expr<S> = Parser::new(text, None).run()?;
    let mut letters: Vec<char> = e
        .atoms()
        .iter()
        .filter_map(|m| m.as_word())
        .flat_map(|w| w.chars())
        .collect();
    letters.sort_unstable();
    letters.dedup();
    if letters.is_empty() {
        letters.push('a');
    }
    Ok((e, Monoid::Free(Alphabet::new(letters)?)))
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    monoid: Option<&'a Monoid>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, monoid: Option<&'a Monoid>) -> Self {
        Parser {
            text,
            pos: 0,
            monoid,
        }
    }

    fn run<S: Semiring>(mut self) -> Result<Expr<S>> {
        let e = self.expr()?;
        self.skip_ws();
        if let Some(c) = self.peek() {
            return Err(self.error(format!("unexpected {c:?}")));
        }
        Ok(e)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek_at(&self, skip: usize) -> Option<char> {
        self.text[self.pos..].chars().nth(skip)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr<S: Semiring>(&mut self) -> Result<Expr<S>> {
        let mut e = self.term()?;
        while self.eat('+') {
            e = Expr::sum(e, self.term()?);
        }
        Ok(e)
    }

    fn term<S: Semiring>(&mut self) -> Result<Expr<S>> {
        let mut e = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('.') => {
                    self.bump();
                    e = Expr::product(e, self.factor()?);
                }
                Some(c) if c == '<' || c == '(' || c == '\\' || is_letter(c) => {
                    e = Expr::product(e, self.factor()?);
                }
                _ => return Ok(e),
            }
        }
    }

    fn factor<S: Semiring>(&mut self) -> Result<Expr<S>> {
        self.skip_ws();
        if self.peek() == Some('<') {
            let k = self.weight()?;
            return Ok(Expr::left_scale(k, self.factor()?));
        }
        let mut e = self.base()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    e = Expr::star(e);
                }
                Some('<') => {
                    let k = self.weight()?;
                    e = Expr::right_scale(e, k);
                }
                _ => return Ok(e),
            }
        }
    }

    fn weight<S: Semiring>(&mut self) -> Result<S> {
        let start = self.pos;
        self.bump(); // '<'
        let rest = &self.text[self.pos..];
        let close = rest
            .find('>')
            .ok_or_else(|| self.error_at(start, "unterminated weight"))?;
        let literal = &rest[..close];
        let k = S::parse_weight(literal).map_err(|m| self.error_at(start + 1, m))?;
        self.pos += close + 1;
        Ok(k)
    }

    fn base<S: Semiring>(&mut self) -> Result<Expr<S>> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('\\') => match self.peek_at(1) {
                Some('z') => {
                    self.pos += 2;
                    Ok(Expr::zero())
                }
                Some('e') if self.peek_at(2) == Some('|') => self.bare_atom(),
                Some('e') => {
                    self.pos += 2;
                    Ok(Expr::one())
                }
                _ => Err(self.error("expected \\z or \\e")),
            },
            Some('(') => {
                if let Some(e) = self.parenthesised_atom()? {
                    return Ok(e);
                }
                self.bump();
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error(format!("expected ')' to close '(' at byte {start}")));
                }
                Ok(e)
            }
            Some(c) if is_letter(c) => self.bare_atom(),
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// `a`, `a|x`, `\e|x`, `a|\e`.
    fn bare_atom<S: Semiring>(&mut self) -> Result<Expr<S>> {
        let start = self.pos;
        let first = self.side()?;
        if self.peek() == Some('|') {
            self.bump();
            let second = self.side()?;
            self.make_atom(start, first, Some(second))
        } else {
            self.make_atom(start, first, None)
        }
    }

    fn side(&mut self) -> Result<String> {
        if self.text[self.pos..].starts_with("\\e") {
            self.pos += 2;
            return Ok(String::new());
        }
        match self.bump() {
            Some(c) if is_letter(c) => Ok(c.to_string()),
            _ => Err(self.error("expected a letter or \\e")),
        }
    }

    /// Tries `(word)` or `(u|v)`; leaves the cursor untouched when the
    /// parenthesis opens a subexpression instead.
    fn parenthesised_atom<S: Semiring>(&mut self) -> Result<Option<Expr<S>>> {
        let start = self.pos;
        let body = &self.text[start + 1..];
        let Some(close) = body.find(')') else {
            return Ok(None);
        };
        let inner = &body[..close];
        let word = |s: &str| -> Option<String> {
            if s == "\\e" {
                Some(String::new())
            } else if s.chars().all(is_letter) {
                Some(s.to_string())
            } else {
                None
            }
        };
        let sides = match inner.split_once('|') {
            Some((u, v)) => match (word(u), word(v)) {
                (Some(u), Some(v)) => (u, Some(v)),
                _ => return Ok(None),
            },
            None if !inner.is_empty() && inner.chars().all(is_letter) => (inner.to_string(), None),
            None => return Ok(None),
        };
        self.pos = start + 1 + close + 1;
        self.make_atom(start, sides.0, sides.1).map(Some)
    }

    fn make_atom<S: Semiring>(
        &self,
        start: usize,
        first: String,
        second: Option<String>,
    ) -> Result<Expr<S>> {
        let m = match (self.monoid, second) {
            (None | Some(Monoid::Free(_)), Some(_)) => {
                return Err(self.error_at(start, "pair atom over a free monoid"));
            }
            (None, None) => MonoidElement::Word(first),
            (Some(Monoid::Free(a)), None) => {
                if let Some(c) = first.chars().find(|c| !a.contains(*c)) {
                    return Err(self.error_at(start, format!("letter {c:?} not in the alphabet")));
                }
                MonoidElement::Word(first)
            }
            (Some(m @ Monoid::Product(..)), Some(second)) => {
                let pair = MonoidElement::Pair(first, second);
                if !m.contains(&pair) {
                    return Err(self.error_at(start, format!("{pair} is not an element of {m}")));
                }
                pair
            }
            (Some(Monoid::Product(a, b)), None) => {
                let in_a = first.chars().all(|c| a.contains(c));
                let in_b = first.chars().all(|c| b.contains(c));
                match (in_a, in_b) {
                    (true, false) => MonoidElement::Pair(first, String::new()),
                    (false, true) => MonoidElement::Pair(String::new(), first),
                    (true, true) => {
                        return Err(self.error_at(
                            start,
                            format!("{first:?} belongs to both components; write it as u|v"),
                        ))
                    }
                    (false, false) => {
                        return Err(self.error_at(start, format!("{first:?} is in neither alphabet")))
                    }
                }
            }
        };
        if m.is_identity() {
            return Err(self.error_at(start, "atom must have positive length"));
        }
        Expr::atom(m)
    }
}
