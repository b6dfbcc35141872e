"""The eleven acceptance criteria, one test each.

Every test records a one-line outcome that is printed at the end of the
pytest run; ``python tests/test_acceptance.py`` prints the same lines.
Set ``FEYNCAT_FULL=1`` to make the antipode sweep exhaustive everywhere.
"""

from __future__ import annotations

import os
import random
import sys
import time
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

import acceptance_log
import oracles
from feyncat.canon import canonicalize, graph_from_key
from feyncat.hopf import (DropOneChannel, antipode, antipode_takeuchi, check_antipode,
                          check_bialgebra, coproduct, delta_word, gen, sample_pairs,
                          tensor_from, unit, verify_axioms, word_elem)
from feyncat.instances import get_instance, motic_predicate, one_pi_predicate
from feyncat.instances.graphs import connected_graphs, is_motic
from feyncat.instances.joyal import joyal_arity
from feyncat.instances.surjections import pi, pi_arity

DATA = Path(__file__).parent / "data"
NERVE = "nerve:" + str(DATA / "cyclic2.json")
FULL = os.environ.get("FEYNCAT_FULL", "") in ("1", "true", "yes")

# instance -> degree bound for the axiom suite
DEGREES = {
    "surj-ord": 6, "surj-sym": 6, "joyal": 6, "seq:ab": 6, NERVE: 5,
    "ck-tree-planar": 6, "ck-tree-sym": 6, "ck-tree-planar-amp": 6, "ck-tree-sym-amp": 6,
    "ck-graph-core": 5, "ck-graph-1pi": 5, "ck-graph-motic": 4,
}
SKELETAL = {"surj-ord", "joyal", "seq:ab", NERVE, "ck-tree-planar", "ck-tree-planar-amp"}


def short(name: str) -> str:
    return "nerve:cyclic2" if name == NERVE else name


@lru_cache(maxsize=None)
def report(name: str):
    return verify_axioms(get_instance(name), DEGREES[name], pairs=200, seed=0,
                         antipode_limit=100, quotient_counit=name in SKELETAL)


def _outcome(n: int, failures: list[str], detail: str) -> None:
    ok = not failures
    acceptance_log.record(n, ok, detail if ok else detail + "; failed: " + "; ".join(failures[:3]))
    assert ok, failures


# -- 1 ---------------------------------------------------------------------------------

def criterion_1():
    bad = []
    for name in DEGREES:
        inst = get_instance(name)
        one = unit(inst)
        if coproduct(one) != tensor_from(one, one):
            bad.append(short(name))
    _outcome(1, bad, f"Delta(1) = 1 (x) 1 in all {len(DEGREES)} instances")


# -- 2 to 4 -------------------------------------------------------------------------------

def _from_reports(n: int, checks: list[str], detail: str, bad=None):
    bad = list(bad or [])
    cases = 0
    for name in DEGREES:
        rep = report(name)
        for c in checks:
            try:
                chk = rep.check(c)
            except KeyError:
                continue
            cases += chk.cases
            if not chk.passed:
                bad.append(f"{short(name)} {c}: {chk.counterexample}")
    _outcome(n, bad, detail.format(cases=cases))


def criterion_2():
    _from_reports(2, ["coassociativity"],
                  "coassociative on {cases} generators (graphs <= 5 edges, trees <= 6 "
                  "vertices, surjection/Joyal/sequence n <= 7)")


def criterion_3():
    _from_reports(3, ["bialgebra"],
                  "Delta(ab) = Delta(a)Delta(b) on {cases} pairs (200 per instance, or all "
                  "pairs where fewer exist)")


def criterion_4():
    bad = []
    for name in SKELETAL:
        if "quotient counit" not in {c.name for c in report(name).checks}:
            bad.append(f"{short(name)}: quotient counit not run")
    _from_reports(4, ["counit", "quotient counit"],
                  "counit laws on {cases} words; quotient counit over Q on the skeletal "
                  "non-symmetric instances", bad)


# -- 5 ------------------------------------------------------------------------------------

def words_upto(inst, gens, d):
    """Every identity-free word of degree <= d, up to reordering when symmetric."""
    pos = sorted((g for g in gens if not inst.ident(g) and 0 < inst.deg(g) <= d),
                 key=lambda g: (inst.deg(g), g))
    out = set()

    def rec(prefix, budget, start):
        for i in range(start, len(pos)):
            g = pos[i]
            dg = inst.deg(g)
            if dg > budget:
                break
            w = prefix + (g,)
            out.add(inst.normalize(w))
            rec(w, budget - dg, i if inst.symmetric else 0)

    rec((), d, 0)
    return sorted(out)


def sampled_products(inst, gens, d, count, rng):
    pos = [g for g in gens if not inst.ident(g) and 0 < inst.deg(g) <= d]
    out = set()
    tries = 0
    while len(out) < count and tries < 100 * count:
        tries += 1
        w = tuple(rng.choice(pos) for _ in range(rng.randint(2, 3)))
        if inst.word_degree(w) <= d:
            out.add(inst.normalize(w))
    return sorted(out)


# instance -> (target degree, exhaustive degree in the default run)
ANTIPODE_PLAN = {name: (5, 5) for name in DEGREES}
ANTIPODE_PLAN["seq:ab"] = (5, 4)
ANTIPODE_PLAN["ck-graph-motic"] = (4, 3)
if FULL:
    # every basis word to degree 5; motic alone has 722987 of them
    ANTIPODE_PLAN = {name: (5, 5) for name in DEGREES}


def criterion_5():
    bad, notes = [], []
    total = 0
    rng = random.Random(0)
    for name, (target, exh) in ANTIPODE_PLAN.items():
        inst = get_instance(name)
        gens = inst.generators(target)
        exh = target if FULL else exh
        words = words_upto(inst, gens, exh)
        if exh < target:
            extra = {(g,) for g in gens if not inst.ident(g) and inst.deg(g) <= target}
            extra |= set(sampled_products(inst, gens, target, 1000, rng))
            words = sorted(set(words) | extra)
            notes.append(f"{short(name)} exhaustive to {exh}, all generators and "
                         f"1000 sampled products to {target}")
        elif target < 5:
            notes.append(f"{short(name)} to degree {target}")
        total += len(words)
        for i, w in enumerate(words):
            if i % 20000 == 0:
                inst.delta_cache.clear()
            msg = check_antipode(inst, w)
            if msg:
                bad.append(f"{short(name)} {w}: {msg}")
                break
        for w in words_upto(inst, inst.generators(3), 3):
            x = word_elem(inst, w, quotient=True)
            if antipode(x) != antipode_takeuchi(x):
                bad.append(f"{short(name)} Takeuchi {w}")
                break
    detail = f"both antipode laws on {total} basis words, Takeuchi agrees to degree 3"
    if notes:
        detail += " (" + "; ".join(notes) + "; FEYNCAT_FULL=1 checks every word to degree 5)"
    _outcome(5, bad, detail)


# -- 6 -------------------------------------------------------------------------------------

def criterion_6():
    bad = []
    for name in ("ck-tree-sym", "ck-tree-planar", "ck-tree-sym-amp", "ck-tree-planar-amp"):
        inst = get_instance(name)
        for n in range(1, 9):
            d = coproduct(gen(inst, inst.parse_generator(f"ladder({n})")))
            if len(d) != n + 1 or any(c != 1 for _, c in d):
                bad.append(f"{name} ladder({n}): {len(d)} terms")
    _outcome(6, bad, "Delta(ladder(n)) has n+1 terms for n <= 8 in all four tree instances")


# -- 7 -------------------------------------------------------------------------------------

def criterion_7():
    inst = get_instance("ck-graph-core")
    b2 = oracles.graph_from_edges(2, [(0, 1), (0, 1)])
    classes = oracles.group_channels(oracles.edge_subset_channels(b2))
    d = coproduct(gen(inst, canonicalize(b2).key))
    bad = []
    if len(d) != len(classes):
        bad.append(f"{len(d)} terms vs {len(classes)} oracle classes")
    interior = None
    for (left, right), c in d:
        lg = [graph_from_key(k) for k in left]
        rg = [graph_from_key(k) for k in right]
        match = [k for k in classes
                 if oracles._multiset_iso(k[0], lg) and oracles._multiset_iso(k[1], rg)]
        if len(match) != 1 or match[0][2] != c:
            bad.append(f"term {left} (x) {right}: {c} vs oracle {[m[2] for m in match]}")
        if any(g.edges for g in lg) and any(g.edges for g in rg):
            interior = c
    if interior != 2:
        bad.append(f"interior coefficient {interior}")
    _outcome(7, bad, f"2-banana interior coefficient {interior}; all {len(d)} coefficients "
                     "match the edge-subset oracle")


# -- 8 ---------------------------------------------------------------------------------------

def criterion_8():
    surj, joy = get_instance("surj-ord"), get_instance("joyal")
    bad = []
    for n in range(1, 8):
        ds = coproduct(gen(surj, pi(n)))
        dj = coproduct(gen(joy, joy.parse_generator(f"J({n})")))
        comps = oracles.compositions(n)

        def index(d, arity):
            out = {}
            for (left, right), c in d:
                comp = tuple(arity(k) for k in right)
                out[comp] = (c, tuple(arity(k) for k in left))
            return out

        a, b = index(ds, pi_arity), index(dj, joyal_arity)
        if not (len(ds) == len(dj) == len(comps) == 2 ** (n - 1)):
            bad.append(f"n={n}: {len(ds)} / {len(dj)} / {len(comps)}")
        if set(a) != set(comps) or a != b:
            bad.append(f"n={n}: channels do not match by composition")
    _outcome(8, bad, "Delta(pi_n) and Delta(1;0^(n-1);1) both have 2^(n-1) channels matched "
                     "by composition, n <= 7")


# -- 9 ---------------------------------------------------------------------------------------

def motic_oracle(g) -> bool:
    """Edge subsets containing every massive edge with momentum tails in one component."""
    from itertools import product
    E = [tuple(sorted(e, key=g.flags.index)) for e in g.edges]
    massive = {i for i, e in enumerate(E) if any(g.mass.get(f) for f in e)}
    mom_vs = {g.boundary[f] for f in g.tails if g.momentum.get(f)}

    def b1(edge_idx):
        comps, _ = oracles._components(g.vertices, [(g.boundary[E[i][0]], g.boundary[E[i][1]])
                                                    for i in edge_idx])
        return len(edge_idx) - len(g.vertices) + len(comps), comps

    full, _ = b1(range(len(E)))
    for bits in product((0, 1), repeat=len(E)):
        S = [i for i, b in enumerate(bits) if b]
        if len(S) == len(E) or not massive <= set(S):
            continue
        b, comps = b1(S)
        if len({i for i, vs in enumerate(comps) for v in vs if v in mom_vs}) > 1:
            continue
        if b >= full:
            return False
    return True


def criterion_9():
    bad = []
    emitted = 0
    for name, pred in (("ck-graph-1pi", oracles.bridgeless), ("ck-graph-motic", motic_oracle)):
        inst = get_instance(name)
        for k in inst.generators(DEGREES[name]):
            for left, right, _ in delta_word(inst, (k,)):
                emitted += 1
                for x in left + right:
                    g = graph_from_key(x)
                    if not (pred(g) and inst.predicate(g)):
                        bad.append(f"{name}: {k} emits {x}")
    compared = 0
    family = [oracles.graph_from_edges(n, es) for n in range(1, 5)
              for es in oracles.multigraphs(n, 5)]
    family += [graph_from_key(k) for level in connected_graphs(5) for k in level]
    for g in family:
        compared += 1
        a = motic_predicate(g)
        if a != one_pi_predicate(g) or a != oracles.bridgeless(g) or a != is_motic(g):
            bad.append(f"massless motic differs from 1PI on {canonicalize(g).key}")
    _outcome(9, bad, f"{emitted} emitted channels in ck-graph-1pi and ck-graph-motic have "
                     f"all cofactors in the filter; massless motic = 1PI on {compared} graphs "
                     "with <= 5 edges")


# -- 10 --------------------------------------------------------------------------------------

def _decorate(g, rng):
    """Random direction, color, mass, momentum, label, root and planar data."""
    E = [tuple(sorted(e, key=g.flags.index)) for e in g.edges]
    T = list(g.tails)
    deco: dict = {}
    if rng.random() < 0.4:
        deco["direction"] = {}
        for f, h in E:
            a, b = ("in", "out") if rng.random() < 0.5 else ("out", "in")
            deco["direction"][f], deco["direction"][h] = a, b
        for t in T:
            if rng.random() < 0.5:
                deco["direction"][t] = rng.choice(["in", "out"])
    if rng.random() < 0.4:
        deco["color"] = {f: rng.choice("rb") for f in g.flags if rng.random() < 0.5}
    if rng.random() < 0.4:
        deco["mass"] = {}
        for f, h in E:
            m = rng.choice([0, 1, 2])
            deco["mass"][f] = deco["mass"][h] = m
    if T and rng.random() < 0.4:
        deco["momentum"] = {t: rng.choice([0, "p", "q"]) for t in T}
    if T and rng.random() < 0.3:
        deco["labels"] = {t: rng.choice("xy") for t in T}
    if rng.random() < 0.2:
        deco["root"] = rng.choice(list(g.vertices))
    if rng.random() < 0.3:
        cyc = {}
        for v in g.vertices:
            fl = [f for f in g.flags if g.boundary[f] == v]
            rng.shuffle(fl)
            cyc[v] = tuple(fl)
        deco["cyclic"] = cyc
    return g.replace(**deco)


def _invariant(g):
    return (len(g.vertices), len(g.edges), len(g.tails),
            tuple(sorted(oracles._vertex_invariant(g, v) for v in g.vertices)))


def criterion_10():
    rng = random.Random(10)
    family = []
    for n in range(0, 5):
        for es in oracles.multigraphs(n, 5) if n else [[]]:
            family.append(oracles.graph_from_edges(n, es))
    plain = len(family)
    for _ in range(1500):
        n = rng.randint(1, 4)
        es = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 5))]
        tails = [rng.randrange(n) for _ in range(rng.randint(0, 2))]
        g = _decorate(oracles.graph_from_edges(n, es, tails), rng)
        family.append(g)
        family.append(oracles.relabeled_copy(g, rng))
    classes: dict = {}
    for g in family:
        classes.setdefault(canonicalize(g).key, []).append(g)
    bad = []
    # equal keys => isomorphic
    for key, gs in classes.items():
        for h in gs[1:]:
            if not oracles.brute_isomorphic(gs[0], h):
                bad.append(f"equal keys, not isomorphic: {key}")
                break
    # isomorphic => equal keys
    buckets: dict = {}
    for key, gs in classes.items():
        buckets.setdefault(_invariant(gs[0]), []).append(gs[0])
    pairs = 0
    for reps in buckets.values():
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                pairs += 1
                if oracles.brute_isomorphic(reps[i], reps[j]):
                    bad.append(f"isomorphic with different keys: {canonicalize(reps[i]).key}")
    _outcome(10, bad, f"canonical keys agree with brute-force isomorphism on {len(family)} "
                      f"graphs ({plain} plain multigraphs, the rest decorated) in "
                      f"{len(classes)} classes, {pairs} cross-class pairs")


# -- 11 --------------------------------------------------------------------------------------

def criterion_11():
    bad = []
    for name in DEGREES:
        inst = get_instance(name)
        dropped = DropOneChannel(inst)
        d = min(DEGREES[name], 4)
        prs = sample_pairs(inst, inst.generators(d), 200, random.Random(11), d)
        if not any(check_bialgebra(dropped, a, b) for a, b in prs):
            bad.append(f"{short(name)}: bialgebra check still passes")
    _outcome(11, bad, f"dropping one channel breaks the bialgebra check in all "
                      f"{len(DEGREES)} instances")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 12)])
def test_acceptance(crit):
    run_timed(crit)


def run_timed(crit):
    n = CRITERIA.index(crit) + 1
    t = time.perf_counter()
    try:
        crit()
    finally:
        acceptance_log.SECONDS[n] = time.perf_counter() - t


if __name__ == "__main__":
    for crit in CRITERIA:
        try:
            run_timed(crit)
        except AssertionError:
            pass
    print("\n".join(acceptance_log.lines()))
