import json
from collections import Counter
from math import factorial

import pytest
from hypothesis import given, strategies as st

from feyncat.hopf import coproduct, coproduct_quot, gen, verify_axioms, word_elem
from feyncat.instances import (FiniteCategory, InstanceError, JoyalSymbol, TrivialDecoration,
                               complete_groupoid, decorate_instance, get_instance,
                               substitute)
from feyncat.instances.nerve import CategoryError, chain_key, nerve_instance, terminal_category
from feyncat.instances.sequences import parse_alphabet, seq_key, sequence_coproduct_oracle
from feyncat.instances.surjections import (OrderedSurjections, count_set_partitions_by_type,
                                           pi)

from oracles import compositions, multinomial_orderings, surjection_type_counts

ORD = get_instance("surj-ord")
SYM = get_instance("surj-sym")
JOY = get_instance("joyal")


# -- surjections --------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 7))
def test_ordered_channels_are_compositions(n):
    d = coproduct(gen(ORD, pi(n)))
    rights = Counter()
    for (left, right), c in d.terms.items():
        assert left == (pi(len(right)),)
        rights[tuple(int(k[3:-1]) for k in right)] += c
    assert rights == Counter({c: 1 for c in compositions(n)})


@pytest.mark.parametrize("n", range(1, 7))
def test_symmetric_channels_are_set_partitions(n):
    assert count_set_partitions_by_type(n) == surjection_type_counts(n)
    d = coproduct(gen(SYM, pi(n)))
    by_type = Counter()
    for (left, right), c in d.terms.items():
        by_type[tuple(sorted(int(k[3:-1]) for k in right))] += c
    assert by_type == surjection_type_counts(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_concrete_symmetric_channels_carry_middle_orderings(n):
    # each set partition into M blocks stands for M! concrete factorizations
    d = coproduct_quot(gen(SYM, pi(n), rational=True))
    by_type = Counter()
    for (left, right), c in d.terms.items():
        by_type[tuple(sorted(int(k[3:-1]) for k in right))] += c
    assert by_type == {t: k * factorial(len(t)) for t, k in surjection_type_counts(n).items()}


def test_compositions_by_type_are_block_orderings():
    for n in range(1, 7):
        by_type = Counter(tuple(sorted(c)) for c in compositions(n))
        assert all(k == multinomial_orderings(t) for t, k in by_type.items())


def test_symmetric_products_are_commutative_words():
    x = word_elem(SYM, ("pi(3)", "pi(1)"))
    assert x.terms == {("pi(1)", "pi(3)"): 1}


def test_surjection_keys_are_canonical():
    with pytest.raises(InstanceError):
        ORD.check_key("pi( 2)")
    with pytest.raises(InstanceError):
        ORD.parse_generator("pi(0)")
    assert ORD.parse_generator(" pi( 4 ) ") == "pi(4)"


def test_symmetric_quotient_counts():
    assert SYM.aut_order(("pi(1)", "pi(1)", "pi(1)")) == 6
    assert SYM.iso_count(("pi(1)",)) == 1


# -- Joyal injections ------------------------------------------------------------------------

def test_joyal_symbols_round_trip():
    s = JoyalSymbol.from_string("(1;0010;1)")
    assert s.parts == (3, 2) and str(s) == "(1;0010;1)"
    assert s.degree == 5 and s.depth == 3
    assert s.word() == ("J(3)", "J(2)")


def test_joyal_parses_single_generators_only():
    assert JOY.parse_generator("(1;00;1)") == "J(3)"
    with pytest.raises(InstanceError):
        JOY.parse_generator("(1;010;1)")
    with pytest.raises(InstanceError):
        JoyalSymbol.from_string("(1;2;1)")


def test_joyal_depth_is_a_statistic():
    assert JOY.depth(("J(2)", "J(1)")) == 3
    assert JOY.depth(()) == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_joyal_channels_are_subsets_of_inner_points(n):
    d = coproduct(gen(JOY, f"J({n})"))
    assert sum(d.terms.values()) == 2 ** (n - 1)


# -- sequences --------------------------------------------------------------------------------

def test_alphabet_parsing():
    assert parse_alphabet("ba") == ("a", "b")
    assert parse_alphabet("{x, yy}") == ("x", "yy")
    with pytest.raises(InstanceError):
        parse_alphabet("")
    with pytest.raises(InstanceError):
        parse_alphabet("a,(")


@given(st.lists(st.sampled_from("ab"), min_size=2, max_size=7))
def test_sequence_coproduct_matches_cut_formula(vals):
    inst = get_instance("seq:ab")
    d = coproduct(gen(inst, seq_key(vals)))
    assert d.terms == sequence_coproduct_oracle(tuple(vals))


def test_sequences_with_one_letter_are_surjections():
    inst = get_instance("seq:a")
    for n in range(1, 6):
        d = coproduct(gen(inst, seq_key("a" * (n + 1))))
        base = coproduct(gen(ORD, pi(n)))
        strip = lambda w: tuple(pi(len(k) // 2 - 3) for k in w)
        assert Counter({(strip(l), strip(r)): c for (l, r), c in d.terms.items()}) == \
            Counter(base.terms)


def test_sequence_needs_two_entries():
    inst = get_instance("seq:ab")
    with pytest.raises(InstanceError):
        inst.check_key("seq(a)")
    with pytest.raises(InstanceError):
        inst.check_key("seq(a,c)")


# -- nerves -----------------------------------------------------------------------------------

POSET = {"objects": ["0", "1", "2"],
         "morphisms": {"00": ["0", "0"], "11": ["1", "1"], "22": ["2", "2"],
                       "01": ["0", "1"], "12": ["1", "2"], "02": ["0", "2"]},
         "identities": {"0": "00", "1": "11", "2": "22"},
         "compose": [["01", "12", "02"]]}


def test_category_from_json_fills_identity_composites():
    cat = FiniteCategory.from_obj(POSET)
    assert cat.then("00", "01") == "01" and cat.then("01", "12") == "02"
    assert cat.composite(["00", "01", "11", "12"]) == "02"
    assert FiniteCategory.from_obj(cat.to_obj()).table == cat.table


def test_category_errors():
    bad = dict(POSET, compose=[])
    with pytest.raises(CategoryError):
        FiniteCategory.from_obj(bad)
    with pytest.raises(CategoryError):
        FiniteCategory.from_json("{")
    cat = FiniteCategory.from_obj(POSET)
    with pytest.raises(CategoryError):
        cat.then("12", "01")


def test_substitute_replaces_by_a_factorization():
    cat = FiniteCategory.from_obj(POSET)
    assert substitute(cat, ("02",), 0, ("01", "12")) == ("01", "12")
    with pytest.raises(CategoryError):
        substitute(cat, ("02",), 0, ("01",))


def test_nerve_coproduct_composes_blocks():
    inst = nerve_instance(FiniteCategory.from_obj(POSET), name="poset")
    d = coproduct(gen(inst, chain_key(("01", "12"))))
    assert d.terms == {
        (("chain(02)",), ("chain(01,12)",)): 1,
        (("chain(01,12)",), ("chain(01)", "chain(12)")): 1,
    }


def test_nerve_from_file(tmp_path):
    p = tmp_path / "cat.json"
    p.write_text(json.dumps(POSET))
    inst = get_instance(f"nerve:{p}")
    inst.check_key("chain(00,01,12)")
    assert verify_axioms(inst, 3).ok


def test_complete_groupoid_and_terminal():
    g = complete_groupoid("xy")
    assert g.then("x>y", "y>x") == "x>x"
    assert verify_axioms(nerve_instance(g, name="pair"), 3).ok
    t = nerve_instance(terminal_category(), name="point")
    assert coproduct(gen(t, "chain(1,1)")).terms.keys() == \
        {(("chain(1)",), ("chain(1,1)",)), (("chain(1,1)",), ("chain(1)", "chain(1)"))}


def test_missing_category_file():
    with pytest.raises(InstanceError):
        nerve_instance("/nonexistent/cat.json")


# -- decorations --------------------------------------------------------------------------------

def test_trivial_decoration_is_the_base():
    inst = decorate_instance(OrderedSurjections(), TrivialDecoration(OrderedSurjections()))
    for n in range(1, 6):
        key = inst.parse_generator(pi(n))
        assert coproduct(gen(inst, key)).terms == coproduct(gen(ORD, pi(n))).terms


def test_decoration_needs_non_symmetric_base():
    with pytest.raises(InstanceError):
        decorate_instance(SYM, TrivialDecoration(SYM))


def test_functoriality_check_catches_a_bad_join():
    from feyncat.instances.sequences import AngleDecoration

    class Broken(AngleDecoration):
        def join(self, left_key, left_deco, right_block, right_decos):
            out = super().join(left_key, left_deco, right_block, right_decos)
            return None if out is None else tuple(reversed(out))

    with pytest.raises(InstanceError):
        decorate_instance(OrderedSurjections(), Broken(("a", "b")))


def test_every_sequence_decoration_is_enumerated():
    inst = get_instance("seq:ab")
    gens = inst.generators(2)
    assert len(gens) == sum(2 ** (n + 1) for n in range(1, 4))
    assert all(inst.check_key(g) is None for g in gens)
