"""Graph morphisms between aggregates.

A morphism ``phi: X -> Y`` of aggregates (disjoint unions of corollas) is

* ``flag_inj``: an injection from the flags of ``Y`` to the flags of ``X``,
* ``vertex_surj``: a surjection from the vertices of ``X`` to those of ``Y``,
* ``ghost_inv``: a fixed-point-free involution on the flags of ``X`` that are
  not hit by ``flag_inj``; its orbits are the ghost edges.

The ghost graph puts the ghost edges back onto ``X``.  Equality is on the
nose; isomorphism classes live in :mod:`feyncat.hopf`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Hashable, Mapping

from .graph import (Graph, GraphError, build_graph, component_graphs, components, corolla,
                    disjoint_union_with_maps, graph_from_obj, graph_to_obj, induced,
                    spanning_subgraph, _jsonable, _key, _unkey, _hashable)


class MorphismError(ValueError):
    """Raised on inconsistent morphism data."""


@dataclass(frozen=True)
class GraphMorphism:
    source: Graph
    target: Graph
    flag_inj: Mapping[Hashable, Hashable]
    vertex_surj: Mapping[Hashable, Hashable]
    ghost_inv: Mapping[Hashable, Hashable]

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        validate(self)

    @property
    def ghost_edges(self) -> list[frozenset]:
        seen, out = set(), []
        for f in self.source.flags:
            if f in self.ghost_inv and f not in seen:
                g = self.ghost_inv[f]
                seen.update((f, g))
                out.append(frozenset((f, g)))
        return out

    @property
    def degree(self) -> int:
        return len(self.ghost_inv) // 2

    def __repr__(self) -> str:
        return (f"GraphMorphism(|V_src|={len(self.source.vertices)}, "
                f"|V_tgt|={len(self.target.vertices)}, ghost_edges={self.degree})")


def validate(phi: GraphMorphism) -> None:
    X, Y = phi.source, phi.target
    if not X.is_aggregate() or not Y.is_aggregate():
        raise MorphismError("source and target must be aggregates")
    if set(phi.flag_inj) != set(Y.flags):
        raise MorphismError("flag map must be defined on every target flag")
    image = list(phi.flag_inj.values())
    if len(set(image)) != len(image):
        raise MorphismError("flag map is not injective")
    Xf = set(X.flags)
    if not set(image) <= Xf:
        raise MorphismError("flag map lands outside the source")
    if set(phi.vertex_surj) != set(X.vertices):
        raise MorphismError("vertex map must be defined on every source vertex")
    if set(phi.vertex_surj.values()) != set(Y.vertices):
        raise MorphismError("vertex map is not surjective")
    for f, x in phi.flag_inj.items():
        if phi.vertex_surj[X.boundary[x]] != Y.boundary[f]:
            raise MorphismError(f"boundary compatibility fails at flag {f!r}")
        for attr in ("direction", "color", "labels", "momentum"):
            dy, dx = getattr(Y, attr), getattr(X, attr)
            if dy.get(f) != dx.get(x):
                raise MorphismError(f"flag map does not preserve {attr} at {f!r}")
    rest = Xf - set(image)
    if set(phi.ghost_inv) != rest:
        raise MorphismError("ghost involution must live exactly on the unmatched source flags")
    for f, g in phi.ghost_inv.items():
        if f == g:
            raise MorphismError("ghost involution has a fixed point")
        if phi.ghost_inv.get(g) != f:
            raise MorphismError("ghost involution is not an involution")
        if phi.vertex_surj[X.boundary[f]] != phi.vertex_surj[X.boundary[g]]:
            raise MorphismError("ghost edge joins vertices over different targets")
        if f in X.direction and X.direction[f] == X.direction.get(g):
            raise MorphismError("directed ghost edge with equal directions")


def make_morphism(source: Graph, target: Graph, flag_inj: Mapping, vertex_surj: Mapping,
                  ghost_edges=()) -> GraphMorphism:
    inv = {}
    for a, b in ghost_edges:
        inv[a], inv[b] = b, a
    return GraphMorphism(source, target, dict(flag_inj), dict(vertex_surj), inv)


def identity(X: Graph) -> GraphMorphism:
    if not X.is_aggregate():
        raise MorphismError("identities live on aggregates")
    return GraphMorphism(X, X, {f: f for f in X.flags}, {v: v for v in X.vertices}, {})


def compose(outer: GraphMorphism, inner: GraphMorphism) -> GraphMorphism:
    """``outer o inner``; the middle aggregates must agree on the nose."""
    if inner.target != outer.source:
        raise MorphismError("target of the inner morphism is not the source of the outer one")
    fl = {z: inner.flag_inj[outer.flag_inj[z]] for z in outer.target.flags}
    vs = {x: outer.vertex_surj[inner.vertex_surj[x]] for x in inner.source.vertices}
    ghost = dict(inner.ghost_inv)
    for a, b in outer.ghost_inv.items():
        ghost[inner.flag_inj[a]] = inner.flag_inj[b]
    return GraphMorphism(inner.source, outer.target, fl, vs, ghost)


def tensor(phi: GraphMorphism, psi: GraphMorphism) -> GraphMorphism:
    """Disjoint union; all ids are freshened to integers."""
    src, smaps = disjoint_union_with_maps([phi.source, psi.source])
    tgt, tmaps = disjoint_union_with_maps([phi.target, psi.target])
    fl, vs, gh = {}, {}, {}
    for m, (sv, sf), (tv, tf) in zip((phi, psi), smaps, tmaps):
        for y, x in m.flag_inj.items():
            fl[tf[y]] = sf[x]
        for x, y in m.vertex_surj.items():
            vs[sv[x]] = tv[y]
        for a, b in m.ghost_inv.items():
            gh[sf[a]] = sf[b]
    return GraphMorphism(src, tgt, fl, vs, gh)


def ghost(phi: GraphMorphism) -> Graph:
    """The source with the ghost edges glued in."""
    X = phi.source
    inv = {f: f for f in X.flags}
    inv.update(phi.ghost_inv)
    return build_graph(X.vertices, X.flags, inv, X.boundary, direction=X.direction,
                       color=X.color, mass=X.mass, momentum=X.momentum, labels=X.labels,
                       root=X.root)


def one_comma_decompose(phi: GraphMorphism) -> list[GraphMorphism]:
    """One morphism per target vertex, keeping the original ids."""
    out = []
    for y in phi.target.vertices:
        pre = [x for x in phi.source.vertices if phi.vertex_surj[x] == y]
        Xv = induced(phi.source, pre)
        Yv = induced(phi.target, [y])
        fl = {f: phi.flag_inj[f] for f in Yv.flags}
        vs = {x: y for x in pre}
        gh = {f: g for f, g in phi.ghost_inv.items() if f in set(Xv.flags)}
        out.append(GraphMorphism(Xv, Yv, fl, vs, gh))
    return out


def reassemble(parts: list[GraphMorphism]) -> GraphMorphism:
    """Tensor of morphisms whose ids are already disjoint, without renaming."""
    from .graph import _merge
    src = _merge([p.source for p in parts])
    tgt = _merge([p.target for p in parts])
    fl, vs, gh = {}, {}, {}
    for p in parts:
        fl.update(p.flag_inj)
        vs.update(p.vertex_surj)
        gh.update(p.ghost_inv)
    return GraphMorphism(src, tgt, fl, vs, gh)


def morphism_of_graph(g: Graph) -> GraphMorphism:
    """The morphism whose ghost graph is ``g``: one target corolla per component.

    The target vertex of a component reuses the id of its first vertex and the
    target flags are the tails of ``g`` with their ids.
    """
    src = spanning_subgraph(g, ())
    vs, tb = {}, {}
    targets = []
    for comp in components(g):
        y = comp[0]
        targets.append(y)
        for x in comp:
            vs[x] = y
    T = g.tails
    for f in T:
        tb[f] = vs[g.boundary[f]]
    tgt = build_graph(targets, T, None, tb,
                      direction={f: d for f, d in g.direction.items() if f in tb},
                      color={f: c for f, c in g.color.items() if f in tb},
                      momentum=g.momentum, labels=g.labels)
    inv = {}
    for e in g.edges:
        a, b = tuple(e)
        inv[a], inv[b] = b, a
    return GraphMorphism(src, tgt, {f: f for f in T}, vs, inv)


# -- JSON ----------------------------------------------------------------------

def morphism_to_json(phi: GraphMorphism) -> str:
    obj = {
        "source": graph_to_obj(phi.source),
        "target": graph_to_obj(phi.target),
        "flag_inj": {_key(y): _jsonable(phi.flag_inj[y]) for y in phi.target.flags},
        "vertex_surj": {_key(x): _jsonable(phi.vertex_surj[x]) for x in phi.source.vertices},
        "ghost": [[_jsonable(f) for f in sorted(e, key=phi.source.flags.index)]
                  for e in phi.ghost_edges],
    }
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def morphism_from_json(text: str) -> GraphMorphism:
    try:
        obj = json.loads(text)
        X = graph_from_obj(obj["source"])
        Y = graph_from_obj(obj["target"])
        fl = {_unkey(k, Y.flags): _hashable(v) for k, v in obj["flag_inj"].items()}
        vs = {_unkey(k, X.vertices): _hashable(v) for k, v in obj["vertex_surj"].items()}
        pairs = [tuple(_hashable(f) for f in p) for p in obj.get("ghost", [])]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (GraphError, MorphismError)):
            raise
        raise MorphismError(f"malformed morphism JSON: {exc}") from exc
    return make_morphism(X, Y, fl, vs, pairs)


__all__ = ["GraphMorphism", "MorphismError", "compose", "component_graphs", "corolla",
           "ghost", "identity", "make_morphism", "morphism_from_json", "morphism_of_graph",
           "morphism_to_json", "one_comma_decompose", "reassemble", "tensor", "validate"]
