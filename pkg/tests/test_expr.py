from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from feyncat.expr import parse_expr, tokenize
from feyncat.hopf import Elem, gen, product, unit, word_elem
from feyncat.instances import InstanceError, get_instance
from feyncat.render import render

SURJ = get_instance("surj-ord")
TREE = get_instance("ck-tree-sym")
CORE = get_instance("ck-graph-core")


def test_tokenize_respects_brackets():
    assert tokenize("2*[[o]o] - pi(1, 2)") == ["2", "*", "[[o]o]", "-", "pi(1, 2)"]
    assert tokenize("a+b") == ["a", "+", "b"]


def test_products_and_sums():
    x = parse_expr(SURJ, "2*pi(2)*pi(3) - pi(2) + pi(2)")
    assert x == word_elem(SURJ, ("pi(2)", "pi(3)"), 2)


def test_coefficient_without_star():
    assert parse_expr(SURJ, "3 pi(2)") == word_elem(SURJ, ("pi(2)",), 3)


def test_leading_minus_and_unit():
    assert parse_expr(SURJ, "-pi(2) + 1") == unit(SURJ) - gen(SURJ, "pi(2)")
    assert parse_expr(SURJ, "1") == unit(SURJ)


def test_fractions_switch_to_rational():
    x = parse_expr(SURJ, "1/2 pi(2)")
    assert x.rational and x.coeff(("pi(2)",)) == Fraction(1, 2)
    assert not parse_expr(SURJ, "4/2 pi(2)").rational


def test_tree_and_graph_generators():
    assert parse_expr(TREE, "ladder(2)") == gen(TREE, "[[o]]")
    x = parse_expr(CORE, "banana(2) * loop")
    assert x.is_zero() is False and len(next(iter(x.terms))) == 2


@pytest.mark.parametrize("text", ["", "pi(2) +", "* pi(2)", "pi(2) pi(3)", "pi(2", "pi(2))",
                                  "1/0 pi(2)", "pi(2) * * pi(3)", "foo"])
def test_syntax_errors(text):
    with pytest.raises(InstanceError):
        parse_expr(SURJ, text)


@given(st.lists(st.tuples(st.integers(-9, 9), st.lists(st.integers(1, 4), min_size=1, max_size=3)),
                min_size=1, max_size=4))
def test_text_rendering_parses_back(terms):
    x = Elem(SURJ, {}, 1)
    for c, ns in terms:
        x = x + word_elem(SURJ, tuple(f"pi({n})" for n in ns), c)
    if x.is_zero():
        return
    assert parse_expr(SURJ, render(x)) == x


def test_product_of_parsed_elements():
    a = parse_expr(SURJ, "pi(2) + pi(3)")
    b = parse_expr(SURJ, "pi(2)")
    assert product(a, b) == parse_expr(SURJ, "pi(2)*pi(2) + pi(3)*pi(2)")
