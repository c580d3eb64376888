//! JSON, DOT and plain-text renderings.

use std::fmt::Write;

use serde_json::{json, Map, Value};

use super::WeightedAutomaton;
use crate::expr::AtomSyntax;
use crate::semiring::Semiring;
use crate::series::format_monomial;

fn state_names<S: Semiring>(a: &WeightedAutomaton<S>) -> Vec<String> {
    a.labels().iter().map(ToString::to_string).collect()
}

fn weight_map<S: Semiring>(names: &[String], weights: &[S]) -> Value {
    let map: Map<String, Value> = names
        .iter()
        .zip(weights)
        .filter(|(_, k)| !k.is_zero())
        .map(|(n, k)| (n.clone(), Value::String(k.to_string())))
        .collect();
    Value::Object(map)
}

pub(super) fn to_json<S: Semiring>(a: &WeightedAutomaton<S>) -> Value {
    let names = state_names(a);
    let transitions: Vec<Value> = a
        .edges()
        .map(|(p, q, k, m)| {
            json!({
                "from": names[p],
                "to": names[q],
                "weight": k.to_string(),
                "label": AtomSyntax(m).to_string(),
            })
        })
        .collect();
    json!({
        "states": names,
        "initial": weight_map(&names, a.initial()),
        "final": weight_map(&names, a.finals()),
        "transitions": transitions,
    })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Initial states get an incoming arrow from an invisible point and final
/// states are drawn doubled with an outgoing arrow; both arrows carry their
/// weight when it is not 1.
pub(super) fn to_dot<S: Semiring>(a: &WeightedAutomaton<S>) -> String {
    let names = state_names(a);
    let mut out = String::from("digraph {\n  rankdir=LR;\n  node [shape=circle];\n");
    for (p, name) in names.iter().enumerate() {
        let shape = if a.finals()[p].is_zero() { "" } else { ", shape=doublecircle" };
        writeln!(out, "  q{p} [label=\"{}\"{shape}];", dot_escape(name)).unwrap();
    }
    let arrow_label = |k: &S| {
        if k.is_one() {
            String::new()
        } else {
            format!(" [label=\"{}\"]", dot_escape(&k.to_string()))
        }
    };
    for (p, k) in a.initial().iter().enumerate() {
        if !k.is_zero() {
            writeln!(out, "  in{p} [shape=point, style=invis];").unwrap();
            writeln!(out, "  in{p} -> q{p}{};", arrow_label(k)).unwrap();
        }
    }
    for (p, k) in a.finals().iter().enumerate() {
        if !k.is_zero() {
            writeln!(out, "  out{p} [shape=point, style=invis];").unwrap();
            writeln!(out, "  q{p} -> out{p}{};", arrow_label(k)).unwrap();
        }
    }
    for (p, row) in a.transitions().iter().enumerate() {
        for (q, poly) in row.iter().enumerate() {
            if poly.is_zero() {
                continue;
            }
            let label: Vec<String> = poly.terms().map(|(m, k)| format_monomial(k, m)).collect();
            writeln!(out, "  q{p} -> q{q} [label=\"{}\"];", dot_escape(&label.join(", "))).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// The automaton as `I`, `E`, `T` matrices, one row per line.
pub(super) fn to_text<S: Semiring>(a: &WeightedAutomaton<S>) -> String {
    let mut out = String::new();
    writeln!(out, "states: {}", state_names(a).join(" | ")).unwrap();
    let cells = |ks: &[S]| ks.iter().map(ToString::to_string).collect::<Vec<_>>();
    writeln!(out, "I = ({})", cells(a.initial()).join(" ")).unwrap();
    out.push_str("E =\n");
    for row in a.transitions() {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(out, "  ({})", row.join(" ")).unwrap();
    }
    writeln!(out, "T = ({})", cells(a.finals()).join("; ")).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use crate::automaton::{StateLabel, WeightedAutomaton};
    use crate::monoid::{Monoid, MonoidElement};
    use crate::semiring::Integer;
    use crate::series::Polynomial;

    fn sample() -> WeightedAutomaton<Integer> {
        let mut loop_poly = Polynomial::monomial(Integer(2), MonoidElement::word("a"));
        loop_poly.add_term(Integer(-1), MonoidElement::word("ab"));
        WeightedAutomaton::new(
            Monoid::free("a,b").unwrap(),
            vec![StateLabel::Initial, StateLabel::Position(1)],
            vec![Integer(1), Integer(0)],
            vec![
                vec![Polynomial::zero(), Polynomial::monomial(Integer(1), MonoidElement::word("b"))],
                vec![Polynomial::zero(), loop_poly],
            ],
            vec![Integer(0), Integer(3)],
        )
        .unwrap()
    }

    #[test]
    fn json_shape() {
        let j = sample().to_json();
        assert_eq!(j["states"], serde_json::json!(["i", "1"]));
        assert_eq!(j["initial"], serde_json::json!({"i": "1"}));
        assert_eq!(j["final"], serde_json::json!({"1": "3"}));
        let t = j["transitions"].as_array().unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[2], serde_json::json!({"from": "1", "to": "1", "weight": "-1", "label": "(ab)"}));
    }

    #[test]
    fn dot_and_text() {
        let a = sample();
        let dot = a.to_dot();
        assert!(dot.contains("q1 [label=\"1\", shape=doublecircle];"), "{dot}");
        assert!(dot.contains("in0 -> q0;"), "{dot}");
        assert!(dot.contains("q1 -> out1 [label=\"3\"];"), "{dot}");
        assert!(dot.contains("q1 -> q1 [label=\"2a, -ab\"];"), "{dot}");
        assert_eq!(
            a.to_text(),
            "states: i | 1\nI = (1 0)\nE =\n  (0 b)\n  (0 2a+-ab)\nT = (0; 3)\n"
        );
    }
}
