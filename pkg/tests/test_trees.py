from collections import Counter

import pytest
from hypothesis import given, strategies as st

from feyncat.hopf import antipode, coproduct, gen, product, word_elem
from feyncat.instances import InstanceError, amputate, get_instance
from feyncat.instances.trees import (BAR_KEY, admissible_cuts_oracle, graph_to_tree_key,
                                     ladder_key, parse_tree, tree_str, tree_to_graph)

from oracles import ck_cuts, compositions, parse_brackets, rooted_trees, sym_form

SYM_AMP = get_instance("ck-tree-sym-amp")
PLANAR_AMP = get_instance("ck-tree-planar-amp")
LEAFED = ("ck-tree-sym", "ck-tree-planar")


def _form(key):
    return sym_form(parse_brackets(key))


def _as_cuts(d):
    out = Counter()
    for (left, right), c in d.terms.items():
        trunk = _form(left[0]) if left else None
        out[(trunk, tuple(sorted(_form(k) for k in right)))] += c
    return out


def _key(t):
    return "[" + "".join(sorted(_key(c) for c in t)) + "]"


@pytest.mark.parametrize("n", range(1, 6))
def test_tree_counts(n):
    assert len(rooted_trees(n)) == [1, 1, 2, 4, 9][n - 1]
    assert sum(1 for k in SYM_AMP.generators(n) if SYM_AMP.degree(k) == n) == len(rooted_trees(n))
    catalan = [1, 1, 2, 5, 14][n - 1]
    assert sum(1 for k in PLANAR_AMP.generators(n) if PLANAR_AMP.degree(k) == n) == catalan


@pytest.mark.parametrize("n", range(1, 7))
def test_coproduct_matches_admissible_cuts(n):
    for t in rooted_trees(n):
        key = SYM_AMP.parse_generator(_key(t))
        want = Counter(ck_cuts(t))
        want[(None, (t,))] += 1
        assert _as_cuts(coproduct(gen(SYM_AMP, key))) == want, key


@pytest.mark.parametrize("key", ["[[][]]", "[[[]][]]", "[[[][]]]", "[[][][]]"])
def test_in_package_cut_table_agrees(key):
    got = admissible_cuts_oracle(parse_tree(key))
    want = Counter()
    for (trunk, pruned), c in ck_cuts(parse_brackets(key)).items():
        want[(_key(trunk), tuple(sorted(_key(p) for p in pruned)))] += c
    want[(None, (key,))] += 1
    assert Counter(got) == want


def test_two_leaf_corolla_over_ladder():
    d = coproduct(gen(SYM_AMP, "[[][]]"))
    assert d.terms == {((), ("[[][]]",)): 1, (("[[][]]",), ()): 1,
                       (("[[]]",), ("[]",)): 2, (("[]",), ("[]", "[]")): 1}


def test_planar_pruned_forest_keeps_left_to_right_order():
    d = coproduct(gen(PLANAR_AMP, "[[[]][]]"))
    assert d.coeff((("[]",), ("[[]]", "[]"))) == 1
    assert d.coeff((("[]",), ("[]", "[[]]"))) == 0


@pytest.mark.parametrize("name", ["ck-tree-planar", "ck-tree-sym", "ck-tree-planar-amp",
                                  "ck-tree-sym-amp"])
@pytest.mark.parametrize("n", range(1, 9))
def test_ladders_have_n_plus_one_terms(name, n):
    inst = get_instance(name)
    d = coproduct(gen(inst, inst.parse_generator(f"ladder({n})")))
    assert len(d.terms) == n + 1 and set(d.terms.values()) == {1}


@pytest.mark.parametrize("n", range(1, 7))
def test_ladder_antipode_sums_over_compositions(n):
    want: dict = {}
    for comp in compositions(n):
        w = tuple(sorted(ladder_key(k, False) for k in comp))
        want[w] = want.get(w, 0) + (-1) ** len(comp)
    got = antipode(gen(SYM_AMP, ladder_key(n, False)))
    assert sorted(got.terms.items()) == sorted((tuple(sorted(w)), c) for w, c in want.items())


@pytest.mark.parametrize("name", LEAFED)
def test_amputation_is_a_coalgebra_map(name):
    inst, amp = get_instance(name), get_instance(name + "-amp")
    for key in inst.generators(4):
        x = gen(inst, key)
        assert amputate(coproduct(x)).terms == coproduct(amputate(x, amp)).terms


@given(st.sampled_from(get_instance("ck-tree-sym").generators(3)),
       st.sampled_from(get_instance("ck-tree-sym").generators(3)))
def test_amputation_is_multiplicative(a, b):
    inst = get_instance("ck-tree-sym")
    x, y = gen(inst, a), gen(inst, b)
    assert amputate(product(x, y)).terms == product(amputate(x), amputate(y)).terms


def test_bar_amputates_to_the_unit():
    inst = get_instance("ck-tree-sym")
    assert amputate(gen(inst, BAR_KEY)).terms == {(): 1}


def test_amputation_needs_leaves():
    with pytest.raises(InstanceError):
        amputate(gen(SYM_AMP, "[]"))


def test_key_validation():
    sym = get_instance("ck-tree-sym")
    with pytest.raises(InstanceError):
        sym.check_key("[o[o]]")         # not sorted
    with pytest.raises(InstanceError):
        sym.check_key("[[]o]")          # a vertex without inputs
    with pytest.raises(InstanceError):
        SYM_AMP.check_key("[o]")
    with pytest.raises(InstanceError):
        SYM_AMP.check_key(BAR_KEY)
    with pytest.raises(InstanceError):
        SYM_AMP.parse_generator("ladder(0)")
    assert get_instance("ck-tree-planar").parse_generator("[o[o]]") == "[o[o]]"


def test_symmetric_products_commute_planar_do_not():
    a, b = "[[]]", "[]"
    assert word_elem(SYM_AMP, (a, b)) == word_elem(SYM_AMP, (b, a))
    assert word_elem(PLANAR_AMP, (a, b)) != word_elem(PLANAR_AMP, (b, a))


@pytest.mark.parametrize("name", ["ck-tree-sym", "ck-tree-planar"])
def test_trees_round_trip_through_graphs(name):
    inst = get_instance(name)
    for key in inst.generators(4):
        if key == BAR_KEY:
            continue
        g = tree_to_graph(key, planar=inst.planar)
        assert graph_to_tree_key(g, symmetric=inst.symmetric) == key


def test_tree_strings_round_trip():
    for key in ["[]", "[o]", "[[o]o]", "[[][[]]]"]:
        assert tree_str(parse_tree(key)) == key
