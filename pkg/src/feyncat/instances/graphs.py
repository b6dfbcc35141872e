"""Graph instances: connected graphs under subgraph / quotient factorization.

A generator is the class of a connected graph ``G`` (its canonical key),
standing for a morphism from the corollas of ``G`` to its residue.  A word
is a disjoint union.  Factorizations of a word ``U`` are edge subsets
``E'``: the inner factor is the components of the spanning subgraph on
``E'`` and the outer factor is the components of ``U / E'``.  Filters keep
only those ``E'`` whose components are 1-PI (``one_pi``) or motic
(``motic``).  Corollas are identities; the degree is the edge count.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product as iproduct
from typing import Hashable, Iterable, Mapping

from ..canon import _flag_sig, canon_parts_key, canonicalize, graph_from_key
from ..graph import (Graph, GraphError, betti1, build_graph, component_graphs, components,
                     contract, disjoint_union_with_maps, graph_from_json, is_connected,
                     spanning_subgraph)
from ..morphism import GraphMorphism, compose, morphism_of_graph, one_comma_decompose, ghost
from .base import InstanceError, InstanceSpec, Word


# -- predicates -----------------------------------------------------------------------

def _spanning_betti(g: Graph, keep) -> int:
    return len(keep) - len(g.vertices) + len(components(spanning_subgraph(g, keep)))


def one_pi_predicate(g: Graph) -> bool:
    """Severing test: no single edge disconnects its component."""
    base = len(components(g))
    for e in g.edges:
        rest = [x for x in g.edges if x != e]
        if len(components(spanning_subgraph(g, rest))) != base:
            return False
    return True


def one_pi_betti(g: Graph) -> bool:
    """Every proper spanning subgraph of every component has smaller ``b1``."""
    for c in component_graphs(g):
        E = list(c.edges)
        b = betti1(c)
        for k in range(len(E)):
            for sub in combinations(E, k):
                if _spanning_betti(c, sub) >= b:
                    return False
    return True


@dataclass(frozen=True)
class MoticData:
    """Masses on edges (exact rationals) and momentum tags on tails."""

    masses: Mapping[frozenset, Fraction] = field(default_factory=dict)
    momenta: Mapping[Hashable, object] = field(default_factory=dict)

    @classmethod
    def from_graph(cls, g: Graph) -> "MoticData":
        masses = {}
        for e in g.edges:
            f = next(iter(e))
            if f in g.mass:
                masses[e] = g.mass[f]
        return cls(masses, {f: q for f, q in g.momentum.items() if g.involution[f] == f})

    def check(self, g: Graph) -> None:
        E, T = set(g.edges), set(g.tails)
        for e in self.masses:
            if frozenset(e) not in E:
                raise GraphError("mass attached to a non-edge")
        for f in self.momenta:
            if f not in T:
                raise GraphError("momentum attached to a non-tail")

    def apply(self, g: Graph) -> Graph:
        self.check(g)
        mass = {}
        for e, m in self.masses.items():
            for f in e:
                mass[f] = m
        return g.replace(mass=mass, momentum=dict(self.momenta))


def _is_massive(g: Graph, e) -> bool:
    return any(g.mass.get(f) for f in e)


def is_motic(g: Graph) -> bool:
    """Every proper mass-and-momentum spanning subgraph has smaller ``b1``.

    A spanning edge subset is mass spanning when it contains every massive
    edge and momentum spanning when all tails with nonzero momentum lie in
    one of its components.
    """
    E = list(g.edges)
    massive = [e for e in E if _is_massive(g, e)]
    light = [e for e in E if not _is_massive(g, e)]
    mom = [f for f in g.tails if g.momentum.get(f)]
    b = betti1(g)
    for k in range(len(light)):
        for extra in combinations(light, k):
            keep = massive + list(extra)
            sub = spanning_subgraph(g, keep)
            if len(mom) > 1:
                comps = components(sub)
                where = {v: i for i, vs in enumerate(comps) for v in vs}
                if len({where[g.boundary[f]] for f in mom}) > 1:
                    continue
            if len(keep) - len(g.vertices) + len(components(sub)) >= b:
                return False
    return True


def motic_predicate(g: Graph, sub: Iterable | None = None, data: MoticData | None = None) -> bool:
    """Motic condition on ``g``, or on every component of its subgraph ``sub``."""
    if data is not None:
        g = data.apply(g)
    if sub is None:
        return is_motic(g)
    return all(is_motic(c) for c in component_graphs(spanning_subgraph(g, sub)))


# -- named graphs -----------------------------------------------------------------------

def banana(n: int, tails: int = 0) -> Graph:
    """Two vertices joined by ``n`` parallel edges; ``tails`` tails at each vertex."""
    F, inv, bnd = [], {}, {}
    for k in range(n):
        a, b = 2 * k, 2 * k + 1
        F += [a, b]
        inv[a], inv[b] = b, a
        bnd[a], bnd[b] = 0, 1
    k = 2 * n
    for v in (0, 1):
        for _ in range(tails):
            F.append(k)
            bnd[k] = v
            k += 1
    return build_graph((0, 1), F, inv, bnd)


def cycle(n: int, tails: int = 0) -> Graph:
    """A cycle of length ``n >= 1`` (``n = 1`` is a loop)."""
    F, inv, bnd = [], {}, {}
    for k in range(n):
        a, b = 2 * k, 2 * k + 1
        F += [a, b]
        inv[a], inv[b] = b, a
        bnd[a], bnd[b] = k, (k + 1) % n
    k = 2 * n
    for v in range(n):
        for _ in range(tails):
            F.append(k)
            bnd[k] = v
            k += 1
    return build_graph(range(n), F, inv, bnd)


def path(n: int) -> Graph:
    """``n`` edges in a row."""
    F, inv, bnd = [], {}, {}
    for k in range(n):
        a, b = 2 * k, 2 * k + 1
        F += [a, b]
        inv[a], inv[b] = b, a
        bnd[a], bnd[b] = k, k + 1
    return build_graph(range(n + 1), F, inv, bnd)


def dumbbell() -> Graph:
    """Two loops joined by a bridge."""
    inv = {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4}
    bnd = {0: 0, 1: 0, 2: 1, 3: 1, 4: 0, 5: 1}
    return build_graph((0, 1), range(6), inv, bnd)


# -- enumeration ------------------------------------------------------------------------

def connected_graphs(max_edges: int) -> list[list[str]]:
    """Keys of tail-free connected graphs by edge count (loops and multi-edges allowed)."""
    levels = [[canonicalize(build_graph((0,), ())).key]]
    for _ in range(max_edges):
        nxt = set()
        for key in levels[-1]:
            g = graph_from_key(key)
            n = len(g.vertices)
            k = len(g.flags)
            moves = [(u, u) for u in range(n)] + [(u, w) for u in range(n) for w in range(u + 1, n)]
            moves += [(u, n) for u in range(n)]
            for a, b in moves:
                V = list(range(max(n, b + 1)))
                bnd = dict(g.boundary)
                inv = dict(g.involution)
                bnd[k], bnd[k + 1] = a, b
                inv[k], inv[k + 1] = k + 1, k
                h = build_graph(V, list(g.flags) + [k, k + 1], inv, bnd)
                nxt.add(canonicalize(h).key)
        levels.append(sorted(nxt))
    return levels


def add_tails(keys: Iterable[str], count: int, momentum=None) -> list[str]:
    """Graphs obtained by attaching ``count`` more tails, up to isomorphism."""
    cur = set(keys)
    for _ in range(count):
        nxt = set()
        for key in cur:
            g = graph_from_key(key)
            f = len(g.flags)
            for v in g.vertices:
                bnd = dict(g.boundary)
                bnd[f] = v
                mom = dict(g.momentum)
                if momentum is not None:
                    mom[f] = momentum
                h = build_graph(g.vertices, list(g.flags) + [f], g.involution, bnd,
                                direction=g.direction, color=g.color, mass=g.mass,
                                momentum=mom, labels=g.labels)
                nxt.add(canonicalize(h).key)
        cur = nxt
    return sorted(cur)


def mass_decorations(key: str) -> list[str]:
    """Every assignment of mass 0 or 1 to the edges, up to isomorphism."""
    g = graph_from_key(key)
    E = list(g.edges)
    out = set()
    for bits in iproduct((0, 1), repeat=len(E)):
        mass = {f: 1 for e, b in zip(E, bits) if b for f in e}
        out.add(canonicalize(g.replace(mass=mass)).key)
    return sorted(out)


def momentum_decorations(key: str) -> list[str]:
    g = graph_from_key(key)
    T = list(g.tails)
    out = set()
    for bits in iproduct((0, 1), repeat=len(T)):
        mom = {f: "p" for f, b in zip(T, bits) if b}
        out.add(canonicalize(g.replace(momentum=mom)).key)
    return sorted(out)


# -- the instance ---------------------------------------------------------------------------

_GRAPH_CALL = re.compile(r"^\s*(\w+)\s*\((.*)\)\s*$", re.S)


@lru_cache(maxsize=100_000)
def _decode(key: str) -> Graph:
    return graph_from_key(key)


def _key(g: Graph) -> str:
    return canonicalize(g).key


class GraphInstance(InstanceSpec):
    symmetric = True
    free_action = True
    acceptance_degree = 5

    def __init__(self, filter: str = "core", max_tails: int = 2):
        super().__init__()
        if filter not in ("core", "one_pi", "motic"):
            raise InstanceError(f"unknown graph filter {filter!r}")
        self.filter = filter
        self._pred_memo: dict = {}
        self.max_tails = max_tails
        self.name = {"core": "ck-graph-core", "one_pi": "ck-graph-1pi",
                     "motic": "ck-graph-motic"}[filter]
        if filter == "motic":
            self.acceptance_degree = 4

    # -- keys -----------------------------------------------------------------
    def predicate(self, g: Graph) -> bool:
        if self.filter == "one_pi":
            return one_pi_predicate(g)
        if self.filter == "motic":
            return is_motic(g)
        return True

    def validate_key(self, key: str) -> None:
        try:
            g = _decode(key)
        except GraphError as exc:
            raise InstanceError(str(exc)) from exc
        if _key(g) != key:
            raise InstanceError(f"not a canonical key: {key!r}")
        if not g.vertices or not is_connected(g):
            raise InstanceError("generators are connected graphs")
        if g.cyclic or g.direction or g.root is not None:
            raise InstanceError("graph generators carry no planar, direction or root data")
        if self.filter != "motic" and (g.mass or g.momentum):
            raise InstanceError("mass and momentum need the motic instance")
        if not self.predicate(g):
            raise InstanceError(f"{key!r} violates the {self.filter} filter")

    def is_identity(self, key: str) -> bool:
        return key.startswith("G1||")

    def degree(self, key: str) -> int:
        return len(_decode(key).edges)

    # -- coproduct --------------------------------------------------------------
    def _union(self, word: Word) -> Graph:
        return disjoint_union_with_maps([_decode(k) for k in word])[0]

    def _subsets(self, U: Graph):
        E = list(U.edges)
        for bits in iproduct((0, 1), repeat=len(E)):
            keep = [e for e, b in zip(E, bits) if b]
            sub = spanning_subgraph(U, keep)
            parts = component_graphs(sub)
            if self.filter != "core":
                if not all(self.predicate(p) for p in parts if p.edges):
                    continue
            yield keep, parts

    def factorizations(self, word: Word):
        if not word:
            yield (), (), 1
            return
        U = self._union(word)
        V = U.vertices
        sig = {f: _flag_sig(U, f) for f in U.flags}
        edges = []
        for e in U.edges:
            f, h = tuple(e)
            edges.append((f, h, U.boundary[f], U.boundary[h], sig[f], sig[h],
                          str(U.mass.get(f, ""))))
        tails = [(f, U.boundary[f], sig[f]) for f in U.tails]
        for bits in iproduct((0, 1), repeat=len(edges)):
            kept = [e for e, b in zip(edges, bits) if b]
            cut = [e for e, b in zip(edges, bits) if not b]
            rep = _union_find(V, kept)
            groups: dict = {}
            for v in V:
                groups.setdefault(rep[v], ([], [], []))[0].append(v)
            for e in kept:
                groups[rep[e[2]]][1].append(e)
            for t in tails:
                groups[rep[t[1]]][2].append(t)
            for f, h, vf, vh, sf, sh, _ in cut:
                groups[rep[vf]][2].append((f, vf, sf))
                groups[rep[vh]][2].append((h, vh, sh))
            right = []
            ok = True
            for vs, es, ts in groups.values():
                k = canon_parts_key(vs, es, ts)
                if es and self.filter != "core" and not self.key_predicate(k):
                    ok = False
                    break
                right.append(k)
            if not ok:
                continue
            reps = list(groups)
            cedges = [(f, h, rep[vf], rep[vh], sf, sh, m) for f, h, vf, vh, sf, sh, m in cut]
            rep2 = _union_find(reps, cedges)
            lgroups: dict = {}
            for r in reps:
                lgroups.setdefault(rep2[r], ([], [], []))[0].append(r)
            for e in cedges:
                lgroups[rep2[e[2]]][1].append(e)
            for f, v, sg in tails:
                lgroups[rep2[rep[v]]][2].append((f, rep[v], sg))
            left = tuple(canon_parts_key(vs, es, ts) for vs, es, ts in lgroups.values())
            yield left, tuple(right), 1

    def factorizations_via_graphs(self, word: Word):
        """Same channels built with graph operations; a cross-check for the fast path."""
        if not word:
            yield (), (), 1
            return
        U = self._union(word)
        for keep, parts in self._subsets(U):
            right = tuple(_key(p) for p in parts)
            left = tuple(_key(p) for p in component_graphs(contract(U, keep)))
            yield left, right, 1

    def key_predicate(self, key: str) -> bool:
        hit = self._pred_memo.get(key)
        if hit is None:
            hit = self._pred_memo[key] = self.predicate(_decode(key))
        return hit

    def red_channels(self, word: Word):
        """One channel per orbit, built as concrete morphisms and checked by composition."""
        if not word:
            yield (), (), Fraction(1)
            return
        U = self._union(word)
        phi = morphism_of_graph(U)
        for keep, parts in self._subsets(U):
            inner = morphism_of_graph(spanning_subgraph(U, keep))
            outer = _outer_morphism(U, inner, phi)
            if compose(outer, inner) != phi:
                raise InstanceError("factorization does not compose back")
            left = tuple(_key(ghost(p)) for p in one_comma_decompose(outer))
            right = tuple(_key(ghost(p)) for p in one_comma_decompose(inner))
            yield left, right, Fraction(1)

    # -- enumeration --------------------------------------------------------------
    def generators(self, max_degree: int) -> list[str]:
        out = set()
        for level in connected_graphs(max_degree):
            tailed = []
            for t in range(self.max_tails + 1):
                tailed += add_tails(level, t)
            if self.filter == "motic":
                deco = []
                for k in tailed:
                    for m in mass_decorations(k):
                        deco += momentum_decorations(m)
                tailed = deco
            for k in tailed:
                if self.predicate(_decode(k)):
                    out.add(k)
        return sorted(out, key=lambda k: (self.degree(k), len(k), k))

    def identity_keys(self) -> list[str]:
        return [_key(build_graph((0,), range(t), None, {f: 0 for f in range(t)}))
                for t in range(4)]

    # -- text -------------------------------------------------------------------------
    def parse_generator(self, text: str) -> str:
        s = text.strip()
        if s.startswith("G") and "|" in s:
            g = _decode(s)
        else:
            m = _GRAPH_CALL.match(s)
            if m:
                name, arg = m.group(1), m.group(2).strip()
            elif s.isidentifier():
                name, arg = s, ""
            else:
                raise InstanceError(f"cannot parse graph {text!r}")
            try:
                nums = [int(x) for x in arg.split(",")] if arg and name != "graph" else []
                if name == "graph":
                    g = graph_from_json(arg)
                elif name == "banana":
                    g = banana(*nums)
                elif name == "cycle":
                    g = cycle(*nums)
                elif name == "loop":
                    g = cycle(1, *nums)
                elif name == "edge":
                    g = path(1)
                elif name == "path":
                    g = path(*nums)
                elif name == "dumbbell":
                    g = dumbbell()
                elif name == "corolla":
                    t = nums[0] if nums else 0
                    g = build_graph((0,), range(t), None, {f: 0 for f in range(t)})
                else:
                    raise InstanceError(f"unknown graph constructor {name!r}")
            except (TypeError, ValueError, GraphError) as exc:
                if isinstance(exc, InstanceError):
                    raise
                raise InstanceError(f"cannot build {text!r}: {exc}") from exc
        key = _key(g)
        self.check_key(key)
        return key

    def grammar(self) -> str:
        return ("banana(n[,tails]) | cycle(n[,tails]) | loop | edge | path(n) | dumbbell | "
                "corolla(t) | graph(<json>) | a canonical key G<n>|...")

    def display(self, key: str, fmt: str = "text") -> str:
        if fmt == "latex":
            return r"\Gamma[\mathtt{" + key.replace("|", r"\vert ").replace("{", r"\{").replace(
                "}", r"\}") + "}]"
        return key


def _union_find(V, edges) -> dict:
    parent = {v: v for v in V}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        a, b = find(e[2]), find(e[3])
        if a != b:
            parent[b] = a
    return {v: find(v) for v in V}


def _outer_morphism(U: Graph, inner: GraphMorphism, phi: GraphMorphism) -> GraphMorphism:
    """The morphism from the target of ``inner`` to the target of ``phi`` gluing the rest of ``U``."""
    X = inner.target
    vs = {y: phi.vertex_surj[y] for y in X.vertices}
    ghost_pairs = {}
    T = set(phi.target.flags)
    for f in X.flags:
        if f not in T:
            ghost_pairs[f] = U.involution[f]
    return GraphMorphism(X, phi.target, {f: f for f in phi.target.flags}, vs, ghost_pairs)


def ck_graph_instance(filter: str = "core", max_tails: int = 2) -> GraphInstance:
    return GraphInstance(filter, max_tails)


def graph_key(g: Graph) -> str:
    return _key(g)


def filter_report(inst: GraphInstance, keys: Iterable[str]) -> tuple[int, int, list]:
    """Count emitted channels and those whose cofactors all satisfy the filter."""
    total = good = 0
    bad = []
    for k in keys:
        for left, right, _ in inst.factorizations((k,)):
            total += 1
            ok = all(inst.predicate(_decode(x)) for x in left + right)
            if ok:
                good += 1
            elif len(bad) < 5:
                bad.append((k, left, right))
    return total, good, bad
