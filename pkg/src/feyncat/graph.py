"""Borisov-Manin graphs: vertices, flags, an involution and a boundary map.

Edges are the 2-orbits of the involution and tails are its fixed points.
Optional decorations ride along on flags and vertices:

``direction``
    flag -> ``"in"`` / ``"out"``; the two flags of an edge point opposite ways.
``color``
    flag -> opaque token.
``cyclic``
    vertex -> tuple of its flags, read as a cyclic order (planar structure).
``mass``
    edge flag -> nonzero rational; both flags of an edge carry the same value.
``momentum``
    tail -> nonzero token (absent means zero momentum).
``labels``
    tail -> label.
``root``
    a distinguished vertex.

Graph values are immutable by convention: every operation returns a new graph.
The one degenerate exception to "boundary is total" is :data:`BAR`, the
vertex-free graph with a single flag, used for the identity rooted tree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Hashable, Iterable, Mapping, Sequence

Id = Hashable
Edge = frozenset

_DECOS = ("direction", "color", "cyclic", "mass", "momentum", "labels")


class GraphError(ValueError):
    """Raised on malformed graph data."""


@dataclass(frozen=True, eq=False)
class Graph:
    vertices: tuple
    flags: tuple
    involution: Mapping[Id, Id]
    boundary: Mapping[Id, Id]
    direction: Mapping[Id, str] = field(default_factory=dict)
    color: Mapping[Id, Any] = field(default_factory=dict)
    cyclic: Mapping[Id, tuple] = field(default_factory=dict)
    mass: Mapping[Id, Fraction] = field(default_factory=dict)
    momentum: Mapping[Id, Any] = field(default_factory=dict)
    labels: Mapping[Id, Any] = field(default_factory=dict)
    root: Id | None = None

    __hash__ = None  # type: ignore[assignment]

    def __eq__(self, other) -> bool:
        # vertex and flag sets are sets: listing order is presentation only
        if not isinstance(other, Graph):
            return NotImplemented
        return (set(self.vertices) == set(other.vertices)
                and set(self.flags) == set(other.flags)
                and self.involution == other.involution
                and self.boundary == other.boundary
                and self.direction == other.direction
                and self.color == other.color
                and self.cyclic == other.cyclic
                and self.mass == other.mass
                and self.momentum == other.momentum
                and self.labels == other.labels
                and self.root == other.root)

    # -- basic structure -------------------------------------------------
    @property
    def tails(self) -> tuple:
        inv = self.involution
        return tuple(f for f in self.flags if inv[f] == f)

    @property
    def edges(self) -> tuple[Edge, ...]:
        hit = self.__dict__.get("_edges")
        if hit is not None:
            return hit
        inv = self.involution
        seen = set()
        out = []
        for f in self.flags:
            g = inv[f]
            if g != f and f not in seen:
                seen.add(f)
                seen.add(g)
                out.append(frozenset((f, g)))
        out = tuple(out)
        object.__setattr__(self, "_edges", out)
        return out

    def flags_at(self, v: Id) -> tuple:
        bnd = self.boundary
        return tuple(f for f in self.flags if bnd.get(f) == v)

    def is_aggregate(self) -> bool:
        return all(self.involution[f] == f for f in self.flags)

    def is_planar(self) -> bool:
        return bool(self.cyclic)

    def edge_ends(self, e: Edge) -> tuple[Id, Id]:
        f, g = sorted(e, key=self.flags.index)
        return self.boundary[f], self.boundary[g]

    def replace(self, **changes) -> "Graph":
        data = {k: getattr(self, k) for k in
                ("vertices", "flags", "involution", "boundary", *_DECOS, "root")}
        data.update(changes)
        return build_graph(**data)

    def __repr__(self) -> str:
        return (f"Graph(|V|={len(self.vertices)}, |E|={len(self.edges)}, "
                f"|T|={len(self.tails)})")


def _norm_mass(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise GraphError("masses must be exact rationals, not floats")
    return Fraction(value)


def build_graph(vertices: Iterable[Id] = (), flags: Iterable[Id] = (),
                involution: Mapping[Id, Id] | Iterable[Sequence[Id]] | None = None,
                boundary: Mapping[Id, Id] | None = None, *,
                direction: Mapping | None = None, color: Mapping | None = None,
                cyclic: Mapping | None = None, mass: Mapping | None = None,
                momentum: Mapping | None = None, labels: Mapping | None = None,
                root: Id | None = None) -> Graph:
    """Validate the data and return a :class:`Graph`.

    ``involution`` may be a full or partial mapping, or an iterable of
    2-element pairs; flags it does not mention are tails.  Zero masses and
    zero momenta (``None``, ``0`` or ``"0"``) are dropped so equal graphs
    compare equal.
    """
    V = tuple(vertices)
    F = tuple(flags)
    if len(set(V)) != len(V):
        raise GraphError("duplicate vertex id")
    if len(set(F)) != len(F):
        raise GraphError("duplicate flag id")
    Fset, Vset = set(F), set(V)

    inv: dict = {f: f for f in F}
    if involution is not None:
        pairs = involution.items() if isinstance(involution, Mapping) else involution
        for pair in pairs:
            a, b = pair
            if a not in Fset or b not in Fset:
                raise GraphError(f"involution mentions unknown flag {a!r} or {b!r}")
            if inv[a] not in (a, b) or inv[b] not in (a, b):
                raise GraphError(f"involution is not self-inverse at {a!r}")
            inv[a] = b
            inv[b] = a
        for f, g in inv.items():
            if inv[g] != f:
                raise GraphError(f"involution is not self-inverse at {f!r}")

    bnd = dict(boundary or {})
    if set(bnd) - Fset:
        raise GraphError("boundary mentions unknown flags")
    degenerate = not V and len(F) == 1 and not bnd and inv[F[0]] == F[0]
    if not degenerate:
        for f in F:
            if f not in bnd:
                raise GraphError(f"boundary is not total: flag {f!r} has no vertex")
            if bnd[f] not in Vset:
                raise GraphError(f"dangling boundary target {bnd[f]!r}")

    dirs = dict(direction or {})
    for f, d in dirs.items():
        if f not in Fset:
            raise GraphError(f"direction on unknown flag {f!r}")
        if d not in ("in", "out"):
            raise GraphError(f"direction must be 'in' or 'out', got {d!r}")
    for f in F:
        g = inv[f]
        if g != f and (f in dirs) != (g in dirs):
            raise GraphError("an edge must be directed on both flags or neither")
        if g != f and f in dirs and dirs[f] == dirs[g]:
            raise GraphError(f"directed edge with equal directions at {f!r}")

    cols = dict(color or {})
    if set(cols) - Fset:
        raise GraphError("color on unknown flag")

    cyc = {v: tuple(order) for v, order in (cyclic or {}).items()}
    if cyc:
        for v in V:
            at_v = [f for f in F if bnd.get(f) == v]
            order = cyc.get(v, ())
            if sorted(map(repr, order)) != sorted(map(repr, at_v)) or len(set(order)) != len(order):
                raise GraphError(f"planar order at {v!r} does not match its incident flags")
        if set(cyc) - Vset:
            raise GraphError("planar order on unknown vertex")

    masses = {}
    for f, m in (mass or {}).items():
        if f not in Fset:
            raise GraphError(f"mass on unknown flag {f!r}")
        if inv[f] == f:
            raise GraphError("masses are attached to edges only")
        m = _norm_mass(m)
        if m != 0:
            masses[f] = m
    for f in list(masses):
        if masses.get(inv[f]) != masses[f]:
            raise GraphError("both flags of an edge must carry the same mass")

    moms = {}
    for f, q in (momentum or {}).items():
        if f not in Fset:
            raise GraphError(f"momentum on unknown flag {f!r}")
        if inv[f] != f:
            raise GraphError("momenta are attached to tails only")
        if q is None or q == 0 or q == "0":
            continue
        moms[f] = q

    labs = dict(labels or {})
    for f in labs:
        if f not in Fset or inv[f] != f:
            raise GraphError("labels are attached to tails only")

    if root is not None and root not in Vset:
        raise GraphError(f"root {root!r} is not a vertex")

    return Graph(V, F, inv, bnd, dirs, cols, cyc, masses, moms, labs, root)


EMPTY = build_graph()
BAR = build_graph((), ("r",))


def corolla(tails: Iterable[Id] = (), vertex: Id = 0, **decorations) -> Graph:
    """The one-vertex graph whose flags are all tails."""
    T = tuple(tails)
    return build_graph((vertex,), T, None, {f: vertex for f in T}, **decorations)


# -- ids -----------------------------------------------------------------

def relabel(g: Graph, vmap: Mapping[Id, Id], fmap: Mapping[Id, Id]) -> Graph:
    """Rename vertices and flags along the given bijections."""
    return build_graph(
        [vmap[v] for v in g.vertices],
        [fmap[f] for f in g.flags],
        {fmap[f]: fmap[h] for f, h in g.involution.items()},
        {fmap[f]: vmap[v] for f, v in g.boundary.items()},
        direction={fmap[f]: d for f, d in g.direction.items()},
        color={fmap[f]: c for f, c in g.color.items()},
        cyclic={vmap[v]: tuple(fmap[f] for f in o) for v, o in g.cyclic.items()},
        mass={fmap[f]: m for f, m in g.mass.items()},
        momentum={fmap[f]: q for f, q in g.momentum.items()},
        labels={fmap[f]: lab for f, lab in g.labels.items()},
        root=None if g.root is None else vmap[g.root],
    )


def freshen(g: Graph, v0: int = 0, f0: int = 0) -> tuple[Graph, dict, dict]:
    """Relabel to consecutive integers starting at ``v0`` / ``f0``."""
    vmap = {v: v0 + i for i, v in enumerate(g.vertices)}
    fmap = {f: f0 + i for i, f in enumerate(g.flags)}
    return relabel(g, vmap, fmap), vmap, fmap


def _merge(parts: Sequence[Graph]) -> Graph:
    # ids are assumed disjoint
    data: dict[str, Any] = {"vertices": [], "flags": [], "involution": {}, "boundary": {}}
    decos: dict[str, dict] = {k: {} for k in _DECOS}
    root = None
    for p in parts:
        data["vertices"].extend(p.vertices)
        data["flags"].extend(p.flags)
        data["involution"].update(p.involution)
        data["boundary"].update(p.boundary)
        for k in _DECOS:
            decos[k].update(getattr(p, k))
        if p.root is not None:
            if root is not None:
                raise GraphError("union of two rooted graphs")
            root = p.root
    return build_graph(**data, **decos, root=root)


def disjoint_union_with_maps(parts: Sequence[Graph]) -> tuple[Graph, list[tuple[dict, dict]]]:
    """Disjoint union with fresh integer ids; also returns each part's id maps."""
    pieces, maps = [], []
    v0 = f0 = 0
    for p in parts:
        q, vm, fm = freshen(p, v0, f0)
        pieces.append(q)
        maps.append((vm, fm))
        v0 += len(p.vertices)
        f0 += len(p.flags)
    return _merge(pieces), maps


def disjoint_union(g: Graph, h: Graph, fresh: bool = True) -> Graph:
    """``g`` and ``h`` side by side.  With ``fresh=False`` the ids must already be disjoint."""
    if not fresh:
        if set(g.vertices) & set(h.vertices) or set(g.flags) & set(h.flags):
            raise GraphError("ids are not disjoint")
        return _merge([g, h])
    return disjoint_union_with_maps([g, h])[0]


# -- counting -------------------------------------------------------------

def components(g: Graph) -> list[tuple]:
    """Vertex sets of the connected components, in order of first vertex."""
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        a, b = (g.boundary[f] for f in e)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    groups: dict = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    return [tuple(vs) for vs in groups.values()]


def betti1(g: Graph) -> int:
    return len(g.edges) - len(g.vertices) + len(components(g))


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


# -- sub-structures ---------------------------------------------------------

def _check_edges(g: Graph, sub: Iterable) -> set:
    sub = {frozenset(e) for e in sub}
    known = set(g.edges)
    bad = sub - known
    if bad:
        raise GraphError(f"not an edge of the graph: {sorted(map(sorted, bad), key=repr)[0]!r}")
    return sub


def spanning_subgraph(g: Graph, keep: Iterable) -> Graph:
    """Same vertices and flags; the flags of edges outside ``keep`` become tails.

    Severed flags keep their direction, lose their mass and carry no momentum.
    """
    keep = _check_edges(g, keep)
    inv = dict(g.involution)
    cut = set()
    for e in g.edges:
        if e not in keep:
            for f in e:
                inv[f] = f
                cut.add(f)
    mass = {f: m for f, m in g.mass.items() if f not in cut}
    return build_graph(g.vertices, g.flags, inv, g.boundary, direction=g.direction,
                       color=g.color, cyclic=g.cyclic, mass=mass,
                       momentum=g.momentum, labels=g.labels, root=g.root)


def induced(g: Graph, verts: Iterable[Id]) -> Graph:
    """The full subgraph on ``verts``: all their flags, edges leaving the set become tails."""
    vs = set(verts)
    F = [f for f in g.flags if g.boundary[f] in vs]
    Fs = set(F)
    inv = {f: (g.involution[f] if g.involution[f] in Fs else f) for f in F}
    cut = {f for f in F if inv[f] == f and g.involution[f] != f}
    return build_graph(
        [v for v in g.vertices if v in vs], F, inv, {f: g.boundary[f] for f in F},
        direction={f: d for f, d in g.direction.items() if f in Fs},
        color={f: c for f, c in g.color.items() if f in Fs},
        cyclic={v: o for v, o in g.cyclic.items() if v in vs},
        mass={f: m for f, m in g.mass.items() if f in Fs and f not in cut},
        momentum={f: q for f, q in g.momentum.items() if f in Fs},
        labels={f: lab for f, lab in g.labels.items() if f in Fs},
        root=g.root if g.root in vs else None,
    )


def component_graphs(g: Graph) -> list[Graph]:
    return [induced(g, vs) for vs in components(g)]


def contract(g: Graph, contracted: Iterable) -> Graph:
    """Collapse every component of ``spanning_subgraph(g, contracted)`` to a vertex.

    The surviving vertex of a component keeps the id of its first vertex.
    Planar graphs are rejected unless nothing is contracted.
    """
    contracted = _check_edges(g, contracted)
    if not contracted:
        return g
    if g.cyclic:
        raise GraphError("contraction of planar graphs is not supported")
    rep = {}
    for vs in components(spanning_subgraph(g, contracted)):
        for v in vs:
            rep[v] = vs[0]
    gone = set().union(*contracted)
    F = [f for f in g.flags if f not in gone]
    keepv = [v for v in g.vertices if rep[v] == v]
    return build_graph(
        keepv, F, {f: g.involution[f] for f in F}, {f: rep[g.boundary[f]] for f in F},
        direction={f: d for f, d in g.direction.items() if f not in gone},
        color={f: c for f, c in g.color.items() if f not in gone},
        mass={f: m for f, m in g.mass.items() if f not in gone},
        momentum=g.momentum, labels=g.labels,
        root=None if g.root is None else rep[g.root],
    )


def trun(g: Graph) -> Graph:
    """Delete all tails."""
    if not g.vertices:
        return EMPTY
    T = set(g.tails)
    F = [f for f in g.flags if f not in T]
    return build_graph(
        g.vertices, F, {f: g.involution[f] for f in F}, {f: g.boundary[f] for f in F},
        direction={f: d for f, d in g.direction.items() if f not in T},
        color={f: c for f, c in g.color.items() if f not in T},
        cyclic={v: tuple(f for f in o if f not in T) for v, o in g.cyclic.items()},
        mass=g.mass, root=g.root,
    )


def fresh_ids(taken: Iterable[Id], count: int) -> list[int]:
    taken = set(taken)
    out, k = [], 0
    while len(out) < count:
        if k not in taken:
            out.append(k)
        k += 1
    return out


def foliage(g: Graph, n: int) -> list[Graph]:
    """All ways of attaching the labeled tails ``1..n`` to the vertices of ``g``."""
    if g.tails:
        raise GraphError("foliage needs a tail-free graph")
    if n < 0:
        raise GraphError("n must be nonnegative")
    if n == 0:
        return [g]
    new = fresh_ids(g.flags, n)
    out = []
    for assignment in product(g.vertices, repeat=n):
        bnd = dict(g.boundary)
        bnd.update(zip(new, assignment))
        cyc = {}
        if g.cyclic:
            cyc = {v: tuple(o) + tuple(f for f, w in zip(new, assignment) if w == v)
                   for v, o in g.cyclic.items()}
        out.append(build_graph(
            g.vertices, g.flags + tuple(new), g.involution, bnd,
            direction=g.direction, color=g.color, cyclic=cyc, mass=g.mass,
            labels={f: i + 1 for i, f in enumerate(new)}, root=g.root))
    return out


def insert_at_vertex(g: Graph, v: Id, h: Graph, matching: Mapping[Id, Id],
                     fresh: bool = True) -> Graph:
    """Replace ``v`` by ``h``, gluing each flag at ``v`` onto its matched tail of ``h``.

    The glued flag keeps the id and vertex of the tail of ``h``; its partner
    comes from ``g``.  With ``fresh=True`` the result is relabeled to
    integers; otherwise the remaining ids of ``g`` and ``h`` must be disjoint.
    """
    if v not in g.vertices:
        raise GraphError(f"{v!r} is not a vertex")
    at_v = g.flags_at(v)
    if set(matching) != set(at_v):
        raise GraphError("matching must be defined exactly on the flags at the vertex")
    targets = list(matching.values())
    if len(set(targets)) != len(targets):
        raise GraphError("matching is not injective")
    htails = set(h.tails)
    for t in targets:
        if t not in htails:
            raise GraphError(f"matching targets a non-tail {t!r}")
    if len(targets) != len(htails):
        raise GraphError("matching is not surjective onto the tails")
    if g.cyclic or h.cyclic:
        raise GraphError("insertion into planar graphs is not supported")
    if fresh:
        g = relabel(g, {w: ("g", w) for w in g.vertices}, {f: ("g", f) for f in g.flags})
        h = relabel(h, {w: ("h", w) for w in h.vertices}, {f: ("h", f) for f in h.flags})
        matching = {("g", f): ("h", t) for f, t in matching.items()}
        v = ("g", v)
    else:
        rest_v = set(g.vertices) - {v}
        rest_f = set(g.flags) - set(at_v)
        if rest_v & set(h.vertices) or rest_f & set(h.flags):
            raise GraphError("ids are not disjoint")

    glue = dict(matching)          # g-flag at v -> h tail
    back = {t: f for f, t in glue.items()}
    V = [w for w in g.vertices if w != v] + list(h.vertices)
    F = [f for f in g.flags if f not in glue] + list(h.flags)
    inv, bnd = {}, {}
    for f in g.flags:
        if f in glue:
            continue
        p = g.involution[f]
        inv[f] = glue.get(p, p)
        bnd[f] = g.boundary[f]
    for f in h.flags:
        bnd[f] = h.boundary[f]
        if f in back:
            p = g.involution[back[f]]
            inv[f] = glue.get(p, p) if p != back[f] else f
        else:
            inv[f] = h.involution[f]

    def carry(attr):
        out = {f: x for f, x in getattr(h, attr).items() if f not in back}
        for f, x in getattr(g, attr).items():
            if f in glue:
                out[glue[f]] = x
            else:
                out[f] = x
        return out

    direction = carry("direction")
    color = carry("color")
    mass = carry("mass")
    momentum = carry("momentum")
    labels = carry("labels")
    for t in back:       # glued flags take the outer graph's tail data only
        if t in h.direction and t not in direction:
            direction[t] = h.direction[t]
    root = g.root if g.root != v else h.root
    out = build_graph(V, F, inv, bnd, direction=direction, color=color, mass=mass,
                      momentum=momentum, labels=labels, root=root)
    if fresh:
        out = freshen(out)[0]
    return out


# -- JSON --------------------------------------------------------------------

def _key(x) -> str:
    return x if isinstance(x, str) else json.dumps(x)


def _unkey(s: str, universe: Iterable[Id]) -> Id:
    table = {_key(x): x for x in universe}
    if s not in table:
        raise GraphError(f"unknown id {s!r}")
    return table[s]


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


def graph_to_obj(g: Graph) -> dict:
    decos: dict[str, Any] = {}
    if g.direction:
        decos["direction"] = {_key(f): d for f, d in g.direction.items()}
    if g.color:
        decos["color"] = {_key(f): _jsonable(c) for f, c in g.color.items()}
    if g.cyclic:
        decos["cyclic"] = {_key(v): [_jsonable(f) for f in o] for v, o in g.cyclic.items()}
    if g.mass:
        decos["mass"] = {_key(f): str(m) for f, m in g.mass.items()}
    if g.momentum:
        decos["momentum"] = {_key(f): _jsonable(q) for f, q in g.momentum.items()}
    if g.labels:
        decos["labels"] = {_key(f): _jsonable(lab) for f, lab in g.labels.items()}
    if g.root is not None:
        decos["root"] = _jsonable(g.root)
    return {
        "vertices": [_jsonable(v) for v in g.vertices],
        "flags": [_jsonable(f) for f in g.flags],
        "involution": [[_jsonable(f) for f in sorted(e, key=g.flags.index)] for e in g.edges],
        "boundary": {_key(f): _jsonable(g.boundary[f]) for f in g.flags if f in g.boundary},
        "decorations": decos,
    }


def _hashable(x):
    return tuple(_hashable(y) for y in x) if isinstance(x, list) else x


def graph_from_obj(obj: Mapping) -> Graph:
    try:
        V = [_hashable(v) for v in obj.get("vertices", [])]
        F = [_hashable(f) for f in obj.get("flags", [])]
        pairs = [tuple(_hashable(f) for f in p) for p in obj.get("involution", [])]
        for p in pairs:
            if len(p) != 2:
                raise GraphError("involution entries must be pairs")
        bnd = {_unkey(k, F): _hashable(v) for k, v in obj.get("boundary", {}).items()}
        d = obj.get("decorations", {}) or {}
        unknown = set(d) - {*_DECOS, "root"}
        if unknown:
            raise GraphError(f"unknown decoration {sorted(unknown)[0]!r}")
        per_flag = lambda name: {_unkey(k, F): _hashable(x) for k, x in d.get(name, {}).items()}
        return build_graph(
            V, F, pairs, bnd,
            direction=per_flag("direction"), color=per_flag("color"),
            cyclic={_unkey(k, V): tuple(_hashable(f) for f in o)
                    for k, o in d.get("cyclic", {}).items()},
            mass={_unkey(k, F): Fraction(x) for k, x in d.get("mass", {}).items()},
            momentum=per_flag("momentum"), labels=per_flag("labels"),
            root=_hashable(d["root"]) if "root" in d else None,
        )
    except (TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"malformed graph JSON: {exc}") from exc


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_obj(g), separators=(",", ":"), ensure_ascii=False)


def graph_from_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise GraphError("graph JSON must be an object")
    return graph_from_obj(obj)
