"""Smoke test for the ratexp_py extension. Run after `maturin develop`."""

import json

import ratexp_py as rx

E1 = "a*.(a*+<-1>b*)*"

e = rx.Expression(E1, semiring="int", alphabet="a,b")
assert str(e) == E1
assert e.literal_length == 3
assert e.constant_term == "1"

s = e.standard()
assert s.num_states == 4
assert s.labels == ["i", "1", "2", "3"]

d = e.derived()
assert d.num_states == 2, d.labels
assert d.labels[0] == E1
dot = d.to_dot()
assert 'q0 -> q0 [label="2a"]' in dot
assert 'q0 -> q1 [label="-b"]' in dot

t = e.derived(keep_initial=True)
assert t.num_states == 3
assert json.loads(t.to_json())["states"][0] == "i"

assert e.derived_terms() == ["a*.(a*+<-1>b*)*", "b*.(a*+<-1>b*)*"]
assert e.derive("a") == [("2", E1)]
assert e.reconcile()

series = dict(e.series(3))
for word, weight in series.items():
    assert d.coefficient(word) == weight, (word, weight)
assert e.coefficient("ab") == series["ab"]

pairs = rx.Expression("(a|x)*", semiring="boolean", alphabet="a", alphabet2="x")
assert pairs.derived().coefficient("aa|xx") == "1"

half = rx.Expression("(<1/2>a)*", semiring="rational")
assert half.coefficient("aa") == "1/4"
analytic = rx.Expression("(<1/2>\\e)*", semiring="rational", rational_star="analytic")
assert analytic.constant_term == "2"

for bad in ["(a+\\e)*", "a+*"]:
    try:
        rx.Expression(bad)
    except ValueError as err:
        print(f"rejected {bad}: {err}")
    else:
        raise AssertionError(f"{bad} should be rejected")

print("smoke test ok")
