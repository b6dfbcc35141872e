import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from feyncat.hopf import Elem, coproduct, gen, unit, word_elem, zero
from feyncat.instances import InstanceError, get_instance
from feyncat.instances.graphs import banana, graph_key
from feyncat.render import FORMATS, from_json, from_obj, render, to_json, to_obj

SURJ = get_instance("surj-ord")
TREE = get_instance("ck-tree-sym-amp")

letters = st.sampled_from(SURJ.generators(4))
coeffs = st.one_of(st.integers(-5, 5), st.fractions(max_denominator=7).filter(lambda q: abs(q) < 9))


@st.composite
def elements(draw, arity=1, min_terms=0):
    terms = {}
    for _ in range(draw(st.integers(min_terms, 5))):
        key = tuple(tuple(draw(st.lists(letters, max_size=3))) for _ in range(arity))
        terms[key if arity > 1 else key[0]] = draw(coeffs.filter(bool) if min_terms else coeffs)
    return Elem(SURJ, terms, arity, rational=True)


@pytest.mark.parametrize("fmt", FORMATS)
def test_unit_renders_as_one(fmt):
    assert render(unit(SURJ), fmt) == "1"


def test_zero_renders_as_zero():
    assert render(zero(SURJ), "text") == "0"


@given(elements())
def test_json_round_trip(x):
    assert from_json(SURJ, to_json(x), rational=True) == x


@given(elements(arity=2, min_terms=1))
def test_json_round_trip_on_tensors(x):
    # the empty list carries no arity, so zero tensors read back as zero scalars
    assert from_obj(SURJ, json.loads(to_json(x)), rational=True) == x


def test_json_shapes():
    d = coproduct(gen(SURJ, "pi(2)"))
    assert to_obj(d)[0] == {"left": ["pi(1)"], "right": ["pi(2)"], "coeff": "1"}
    x = word_elem(SURJ, ("pi(2)",), Fraction(-3, 2), rational=True)
    assert to_obj(x) == [{"word": ["pi(2)"], "coeff": "-3/2"}]
    assert to_obj(unit(SURJ)) == 1


def test_json_rejects_bad_input():
    with pytest.raises(InstanceError):
        from_json(SURJ, "[{")
    with pytest.raises(InstanceError):
        from_obj(SURJ, [{"word": ["pi(0)"], "coeff": "1"}])
    with pytest.raises(InstanceError):
        from_obj(SURJ, [{"word": ["pi(2)"], "coeff": "x"}])
    with pytest.raises(InstanceError):
        from_obj(SURJ, [{"word": ["pi(2)"], "coeff": "1"},
                        {"left": [], "right": [], "coeff": "1"}])
    with pytest.raises(InstanceError):
        from_obj(SURJ, "pi(2)")


def test_text_rendering():
    x = word_elem(SURJ, ("pi(2)", "pi(3)"), 2) - word_elem(SURJ, ("pi(2)",))
    assert render(x) == "-pi(2) + 2 pi(2) * pi(3)"
    d = coproduct(gen(TREE, "[[]]"))
    assert " (x) " in render(d) and "1 (x) [[]]" in render(d)


def test_latex_rendering():
    d = coproduct(gen(SURJ, "pi(2)"))
    out = render(d, "latex")
    assert r"\otimes" in out
    half = word_elem(SURJ, ("pi(2)",), Fraction(1, 2), rational=True)
    assert r"\frac{1}{2}" in render(half, "latex")


def test_banana_coefficient_shows_in_every_format():
    core = get_instance("ck-graph-core")
    d = coproduct(gen(core, graph_key(banana(2))))
    assert any(t["coeff"] == "2" for t in to_obj(d))
    assert any(line.startswith("2 ") for line in render(d).split(" + "))


@given(elements())
def test_rendering_is_deterministic(x):
    y = Elem(SURJ, dict(reversed(list(x.terms.items()))), 1, rational=True)
    for fmt in FORMATS:
        assert render(x, fmt) == render(y, fmt)


def test_unknown_format():
    with pytest.raises(ValueError):
        render(unit(SURJ), "yaml")
