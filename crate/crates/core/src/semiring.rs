//! Weight semirings with a partial star.
//!
//! A weight type implements [`Semiring`]: it provides the two identities, the
//! two operations, equality (through `Eq`) and a star that is only defined on
//! a known subset of the carrier. Four instances ship:
//!
//! | name       | carrier                    | star domain                         |
//! |------------|----------------------------|-------------------------------------|
//! | `boolean`  | `{0, 1}`                   | everything, `0* = 1* = 1`           |
//! | `int`      | `i64`                      | `0` only                            |
//! | `rational` | exact fractions            | `0` only (or `k != 1` if analytic)  |
//! | `minplus`  | `i64 ∪ {+oo}`, min and +   | `k >= 0`, with `k* = 0`             |

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Semiring: Clone + Eq + Hash + Debug + Display + Send + Sync + 'static {
    /// Name accepted by `--semiring`.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    /// `None` when the element is not starrable in this instance.
    fn star(&self) -> Option<Self>;

    /// Parses a weight literal (the text between `<` and `>`).
    fn parse_weight(text: &str) -> Result<Self, String>;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn sum<I>(items: I) -> Self
    where
        I: IntoIterator<Item = Self>,
    {
        items.into_iter().fold(Self::zero(), |acc, k| acc.add(&k))
    }
}

/// The Boolean semiring `({0,1}, or, and)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Boolean(pub bool);

impl Semiring for Boolean {
    const NAME: &'static str = "boolean";

    fn zero() -> Self {
        Boolean(false)
    }

    fn one() -> Self {
        Boolean(true)
    }

    fn add(&self, other: &Self) -> Self {
        Boolean(self.0 || other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Boolean(self.0 && other.0)
    }

    fn star(&self) -> Option<Self> {
        Some(Boolean(true))
    }

    fn parse_weight(text: &str) -> Result<Self, String> {
        match text.trim() {
            "1" | "true" => Ok(Boolean(true)),
            "0" | "false" => Ok(Boolean(false)),
            other => Err(format!("not a Boolean weight: {other:?}")),
        }
    }
}

impl Display for Boolean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

/// Machine integers. Overflow is a panic, never a silent wrap.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Integer(pub i64);

impl Semiring for Integer {
    const NAME: &'static str = "int";

    fn zero() -> Self {
        Integer(0)
    }

    fn one() -> Self {
        Integer(1)
    }

    fn add(&self, other: &Self) -> Self {
        Integer(self.0.checked_add(other.0).expect("integer weight overflow"))
    }

    fn mul(&self, other: &Self) -> Self {
        Integer(self.0.checked_mul(other.0).expect("integer weight overflow"))
    }

    fn star(&self) -> Option<Self> {
        (self.0 == 0).then_some(Integer(1))
    }

    fn parse_weight(text: &str) -> Result<Self, String> {
        text.trim()
            .parse::<i64>()
            .map(Integer)
            .map_err(|e| format!("not an integer weight {text:?}: {e}"))
    }
}

impl Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

fn parse_rational(text: &str) -> Result<BigRational, String> {
    let text = text.trim();
    let int = |s: &str| {
        BigInt::from_str(s.trim()).map_err(|e| format!("not a rational weight {text:?}: {e}"))
    };
    match text.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(format!("zero denominator in {text:?}"));
            }
            Ok(BigRational::new(int(n)?, d))
        }
        None => Ok(BigRational::from_integer(int(text)?)),
    }
}

/// Exact rationals; only `0` is starrable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational(pub BigRational);

/// Exact rationals with the analytic star `k* = 1/(1-k)` for every `k != 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AnalyticRational(pub BigRational);

macro_rules! rational_semiring {
    ($ty:ident, $name:literal, |$k:ident| $star:expr) => {
        impl $ty {
            pub fn new(numer: i64, denom: i64) -> Self {
                $ty(BigRational::new(numer.into(), denom.into()))
            }
        }

        impl Semiring for $ty {
            const NAME: &'static str = $name;

            fn zero() -> Self {
                $ty(BigRational::zero())
            }

            fn one() -> Self {
                $ty(BigRational::one())
            }

            fn add(&self, other: &Self) -> Self {
                $ty(&self.0 + &other.0)
            }

            fn mul(&self, other: &Self) -> Self {
                $ty(&self.0 * &other.0)
            }

            fn star(&self) -> Option<Self> {
                let $k = &self.0;
                $star.map($ty)
            }

            fn parse_weight(text: &str) -> Result<Self, String> {
                parse_rational(text).map($ty)
            }
        }

        impl Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                Display::fmt(&self.0, f)
            }
        }
    };
}

rational_semiring!(Rational, "rational", |k| k.is_zero().then(BigRational::one));
rational_semiring!(AnalyticRational, "rational-analytic", |k| {
    let one = BigRational::one();
    (*k != one).then(|| (&one - k).recip())
});

/// The tropical semiring `(Z ∪ {+oo}, min, +)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum MinPlus {
    Finite(i64),
    Infinity,
}

impl Semiring for MinPlus {
    const NAME: &'static str = "minplus";

    fn zero() -> Self {
        MinPlus::Infinity
    }

    fn one() -> Self {
        MinPlus::Finite(0)
    }

    fn add(&self, other: &Self) -> Self {
        // Finite < Infinity in the derived order.
        *self.min(other)
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (MinPlus::Finite(a), MinPlus::Finite(b)) => {
                MinPlus::Finite(a.checked_add(*b).expect("min-plus weight overflow"))
            }
            _ => MinPlus::Infinity,
        }
    }

    fn star(&self) -> Option<Self> {
        match self {
            MinPlus::Finite(k) if *k < 0 => None,
            _ => Some(MinPlus::Finite(0)),
        }
    }

    fn parse_weight(text: &str) -> Result<Self, String> {
        match text.trim() {
            "inf" | "oo" | "+oo" | "∞" => Ok(MinPlus::Infinity),
            t => t
                .parse::<i64>()
                .map(MinPlus::Finite)
                .map_err(|e| format!("not a min-plus weight {text:?}: {e}")),
        }
    }
}

impl Display for MinPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinPlus::Finite(k) => Display::fmt(k, f),
            MinPlus::Infinity => f.write_str("inf"),
        }
    }
}
