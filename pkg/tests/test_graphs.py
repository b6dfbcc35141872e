from collections import Counter
from fractions import Fraction

import pytest

from feyncat.canon import graph_from_key
from feyncat.hopf import coproduct, gen
from feyncat.instances import (InstanceError, MoticData, get_instance, one_pi_betti,
                               one_pi_predicate)
from feyncat.instances.graphs import (banana, connected_graphs, cycle, dumbbell, filter_report,
                                      graph_key, is_motic, mass_decorations, path)

import oracles
from oracles import bridgeless, edge_subset_channels, group_channels

CORE = get_instance("ck-graph-core")
ONE_PI = get_instance("ck-graph-1pi")
MOTIC = get_instance("ck-graph-motic")


def _oracle_match(inst, g, keep_pred=None):
    classes = group_channels(edge_subset_channels(g, keep_pred))
    d = coproduct(gen(inst, graph_key(g)))
    assert len(d.terms) == len(classes)
    for (left, right), c in d.terms.items():
        lg = [graph_from_key(k) for k in left]
        rg = [graph_from_key(k) for k in right]
        hits = [k for k in classes
                if oracles._multiset_iso(k[0], lg) and oracles._multiset_iso(k[1], rg)]
        assert len(hits) == 1 and hits[0][2] == c, (left, right)


SMALL = {
    "banana2": lambda: banana(2),
    "banana3": lambda: banana(3),
    "banana2-tails": lambda: banana(2, 1),
    "triangle": lambda: cycle(3),
    "triangle-tails": lambda: cycle(3, 1),
    "dumbbell": dumbbell,
    "path2": lambda: path(2),
    "loop": lambda: cycle(1),
}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_core_matches_edge_subset_oracle(name):
    _oracle_match(CORE, SMALL[name]())


@pytest.mark.parametrize("name", ["banana2", "banana3", "banana2-tails", "triangle",
                                  "triangle-tails", "loop"])
def test_1pi_matches_bridgeless_subsets(name):
    _oracle_match(ONE_PI, SMALL[name](), keep_pred=bridgeless)


def test_banana_interior_coefficient():
    d = coproduct(gen(CORE, graph_key(banana(2))))
    inner = [c for (l, r), c in d.terms.items()
             if any(graph_from_key(k).edges for k in l) and any(graph_from_key(k).edges for k in r)]
    assert inner == [2]


@pytest.mark.parametrize("inst", [CORE, ONE_PI, MOTIC], ids=lambda i: i.name)
def test_fast_channels_match_graph_operations(inst):
    for key in inst.generators(3):
        fast = Counter()
        for l, r, c in inst.factorizations((key,)):
            fast[(tuple(sorted(l)), tuple(sorted(r)))] += c
        slow = Counter()
        for l, r, c in inst.factorizations_via_graphs((key,)):
            slow[(tuple(sorted(l)), tuple(sorted(r)))] += c
        assert fast == slow, key


@pytest.mark.parametrize("inst", [CORE, ONE_PI], ids=lambda i: i.name)
def test_morphism_channels_agree(inst):
    for key in inst.generators(2):
        a, b = Counter(), Counter()
        for l, r, c in inst.factorizations((key,)):
            a[(tuple(sorted(l)), tuple(sorted(r)))] += c
        for l, r, c in inst.red_channels((key,)):
            assert c == Fraction(1)
            b[(tuple(sorted(l)), tuple(sorted(r)))] += 1
        assert a == b, key


def test_one_pi_predicates_agree():
    for level in connected_graphs(4):
        for key in level:
            g = graph_from_key(key)
            assert one_pi_predicate(g) == one_pi_betti(g) == bridgeless(g), key


def test_filters_reject_bad_generators():
    with pytest.raises(InstanceError):
        ONE_PI.check_key(graph_key(dumbbell()))
    CORE.check_key(graph_key(dumbbell()))
    with pytest.raises(InstanceError):
        CORE.check_key("not a key")


def test_filter_report_is_clean():
    total, good, bad = filter_report(ONE_PI, ONE_PI.generators(3))
    assert total == good and not bad


def test_massless_edge_is_not_motic_massive_edge_is():
    g = path(1)
    assert not is_motic(g)
    e = next(iter(g.edges))
    assert is_motic(MoticData({e: Fraction(1)}).apply(g))


def test_massless_motic_is_one_pi():
    for level in connected_graphs(4):
        for key in level:
            g = graph_from_key(key)
            assert is_motic(g) == one_pi_predicate(g), key


def test_mass_decorations_enter_the_motic_instance():
    keys = mass_decorations(graph_key(path(1)))
    massive = [k for k in keys if graph_from_key(k).mass]
    assert massive
    for k in massive:
        MOTIC.check_key(k)
    with pytest.raises(InstanceError):
        CORE.check_key(massive[0])


def test_generators_are_bounded_and_connected():
    for key in CORE.generators(3):
        assert CORE.degree(key) <= 3
        CORE.check_key(key)
    assert all(CORE.is_identity(k) == (CORE.degree(k) == 0) for k in CORE.generators(2))


@pytest.mark.parametrize("text", ["banana(2)", "cycle(3,1)", "loop", "edge", "dumbbell",
                                  "path(2)", "corolla(3)"])
def test_graph_constructors_parse(text):
    key = CORE.parse_generator(text)
    assert CORE.parse_generator(key) == key


@pytest.mark.parametrize("text", ["banana(x)", "moose(2)", "(((", "graph({)"])
def test_graph_constructor_errors(text):
    with pytest.raises(InstanceError):
        CORE.parse_generator(text)
