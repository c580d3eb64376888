//! Python bindings: `Expression` and `Automaton`, with weights crossing the
//! boundary as their printed form.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ratexp::automaton::WeightedAutomaton;
use ratexp::derivation::{derive, reconcile};
use ratexp::derived::{derived_term_automaton, derived_terms, standard_derived_term_automaton};
use ratexp::error::Error;
use ratexp::expr::{parse, parse_inferring_alphabet, Expr};
use ratexp::monoid::{Alphabet, Monoid};
use ratexp::semiring::{AnalyticRational, Boolean, Integer, MinPlus, Rational};
use ratexp::series::denote;
use ratexp::standard::position_automaton;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

enum AnyExpr {
    Boolean(Expr<Boolean>),
    Integer(Expr<Integer>),
    Rational(Expr<Rational>),
    Analytic(Expr<AnalyticRational>),
    MinPlus(Expr<MinPlus>),
}

enum AnyAutomaton {
    Boolean(WeightedAutomaton<Boolean>),
    Integer(WeightedAutomaton<Integer>),
    Rational(WeightedAutomaton<Rational>),
    Analytic(WeightedAutomaton<AnalyticRational>),
    MinPlus(WeightedAutomaton<MinPlus>),
}

/// Runs `$body` with `$e` bound to the typed expression, and rewraps an
/// automaton result in the same variant when `wrap` is given.
macro_rules! each {
    ($value:expr, $enum:ident, $e:ident => wrap $body:expr) => {
        match $value {
            $enum::Boolean($e) => AnyAutomaton::Boolean($body),
            $enum::Integer($e) => AnyAutomaton::Integer($body),
            $enum::Rational($e) => AnyAutomaton::Rational($body),
            $enum::Analytic($e) => AnyAutomaton::Analytic($body),
            $enum::MinPlus($e) => AnyAutomaton::MinPlus($body),
        }
    };
    ($value:expr, $enum:ident, $e:ident => $body:expr) => {
        match $value {
            $enum::Boolean($e) => $body,
            $enum::Integer($e) => $body,
            $enum::Rational($e) => $body,
            $enum::Analytic($e) => $body,
            $enum::MinPlus($e) => $body,
        }
    };
}

fn load<S: ratexp::semiring::Semiring>(text: &str, monoid: Option<&Monoid>) -> Result<(Expr<S>, Monoid), Error> {
    let (e, m) = match monoid {
        Some(m) => (parse(text, m)?, m.clone()),
        None => parse_inferring_alphabet(text)?,
    };
    e.validate()?;
    Ok((e, m))
}

/// A valid weighted rational expression over a fixed monoid.
#[pyclass(frozen, module = "ratexp_py")]
struct Expression {
    expr: AnyExpr,
    monoid: Monoid,
}

#[pymethods]
impl Expression {
    /// `semiring` is one of boolean, int, rational, minplus; `rational_star`
    /// is strict or analytic. Without `alphabet`, the letters of the text
    /// form the alphabet of a free monoid.
    #[new]
    #[pyo3(signature = (text, semiring = "int", alphabet = None, alphabet2 = None, rational_star = "strict"))]
    fn new(
        text: &str,
        semiring: &str,
        alphabet: Option<&str>,
        alphabet2: Option<&str>,
        rational_star: &str,
    ) -> PyResult<Self> {
        let monoid = match (alphabet, alphabet2) {
            (Some(a), Some(b)) => Some(Monoid::Product(Alphabet::parse(a).map_err(err)?, Alphabet::parse(b).map_err(err)?)),
            (Some(a), None) => Some(Monoid::Free(Alphabet::parse(a).map_err(err)?)),
            (None, Some(_)) => return Err(PyValueError::new_err("alphabet2 needs alphabet")),
            (None, None) => None,
        };
        let m = monoid.as_ref();
        let (expr, monoid) = match (semiring, rational_star) {
            ("boolean", _) => load(text, m).map(|(e, m)| (AnyExpr::Boolean(e), m)),
            ("int", _) => load(text, m).map(|(e, m)| (AnyExpr::Integer(e), m)),
            ("rational", "strict") => load(text, m).map(|(e, m)| (AnyExpr::Rational(e), m)),
            ("rational", "analytic") => load(text, m).map(|(e, m)| (AnyExpr::Analytic(e), m)),
            ("minplus", _) => load(text, m).map(|(e, m)| (AnyExpr::MinPlus(e), m)),
            _ => return Err(PyValueError::new_err(format!("unknown semiring {semiring} ({rational_star})"))),
        }
        .map_err(err)?;
        Ok(Expression { expr, monoid })
    }

    fn __str__(&self) -> String {
        each!(&self.expr, AnyExpr, e => e.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Expression({:?})", self.__str__())
    }

    #[getter]
    fn literal_length(&self) -> usize {
        each!(&self.expr, AnyExpr, e => e.literal_length())
    }

    #[getter]
    fn constant_term(&self) -> String {
        each!(&self.expr, AnyExpr, e => e.validate().map(|c| c.to_string()).unwrap_or_default())
    }

    /// The position automaton.
    fn standard(&self) -> PyResult<Automaton> {
        let a = each!(&self.expr, AnyExpr, e => wrap position_automaton(e, &self.monoid).map_err(err)?.into_automaton());
        Ok(Automaton { inner: a })
    }

    /// The derived-term automaton; `keep_initial` keeps the standard form.
    #[pyo3(signature = (keep_initial = false))]
    fn derived(&self, keep_initial: bool) -> PyResult<Automaton> {
        let a = each!(&self.expr, AnyExpr, e => wrap {
            let d = if keep_initial {
                standard_derived_term_automaton(e, &self.monoid)
            } else {
                derived_term_automaton(e, &self.monoid)
            };
            d.map_err(err)?.into_automaton()
        });
        Ok(Automaton { inner: a })
    }

    fn derived_terms(&self) -> Vec<String> {
        each!(&self.expr, AnyExpr, e => derived_terms(e).iter().map(ToString::to_string).collect())
    }

    /// Coefficients of every element up to `max_len`, as `(element, weight)`.
    #[pyo3(signature = (max_len = 6))]
    fn series(&self, max_len: usize) -> PyResult<Vec<(String, String)>> {
        each!(&self.expr, AnyExpr, e => Ok(denote(e, &self.monoid, max_len)
            .map_err(err)?
            .iter()
            .map(|(m, k)| (m.to_string(), k.to_string()))
            .collect()))
    }

    /// Coefficient of `word`, read on the derived-term automaton.
    fn coefficient(&self, word: &str) -> PyResult<String> {
        self.derived(false)?.coefficient(word, &self.monoid)
    }

    /// The derivative with respect to `letter`, as `(weight, term)` pairs.
    fn derive(&self, letter: char) -> PyResult<Vec<(String, String)>> {
        each!(&self.expr, AnyExpr, e => Ok(derive(e, letter)
            .map_err(err)?
            .terms()
            .map(|(h, k)| (k.to_string(), h.to_string()))
            .collect()))
    }

    /// Whether the derivative agrees with the development for every letter.
    fn reconcile(&self) -> PyResult<bool> {
        let Monoid::Free(a) = &self.monoid else {
            return Err(PyValueError::new_err("derivation needs a free monoid"));
        };
        for &c in a.letters() {
            if !each!(&self.expr, AnyExpr, e => reconcile(e, c).map_err(err)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[pyclass(frozen, module = "ratexp_py")]
struct Automaton {
    inner: AnyAutomaton,
}

impl Automaton {
    fn coefficient(&self, word: &str, monoid: &Monoid) -> PyResult<String> {
        let m = monoid.parse_element(word).map_err(err)?;
        Ok(each!(&self.inner, AnyAutomaton, a => a.coefficient(&m).to_string()))
    }
}

#[pymethods]
impl Automaton {
    #[getter]
    fn num_states(&self) -> usize {
        each!(&self.inner, AnyAutomaton, a => a.num_states())
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        each!(&self.inner, AnyAutomaton, a => a.labels().iter().map(ToString::to_string).collect())
    }

    fn to_json(&self) -> String {
        each!(&self.inner, AnyAutomaton, a => a.to_json().to_string())
    }

    fn to_dot(&self) -> String {
        each!(&self.inner, AnyAutomaton, a => a.to_dot())
    }

    fn to_text(&self) -> String {
        each!(&self.inner, AnyAutomaton, a => a.to_text())
    }

    /// Weight of `word`, an element of the automaton's monoid.
    #[pyo3(name = "coefficient")]
    fn py_coefficient(&self, word: &str) -> PyResult<String> {
        let monoid = each!(&self.inner, AnyAutomaton, a => a.monoid().clone());
        self.coefficient(word, &monoid)
    }
}

#[pymodule]
fn ratexp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Expression>()?;
    m.add_class::<Automaton>()?;
    Ok(())
}
