"""Rooted trees as graphs: tails on every vertex, planting, grafting.

A rooted tree is a connected graph with ``b1 = 0`` and a root vertex.  Edges
are directed towards the root: the flag at the child says ``"out"`` and the
flag at the parent says ``"in"``.  The root flag, when present, is the tail
at the root with direction ``"out"``; other tails are ``"in"`` leaves.
The empty tree is :data:`~feyncat.graph.EMPTY` and the bare root flag
``|`` is :data:`~feyncat.graph.BAR`.
"""

from __future__ import annotations

from typing import Hashable, Mapping

from .graph import BAR, EMPTY, Graph, GraphError, betti1, build_graph, fresh_ids, is_connected, trun


def rooted_tree(parent: Mapping[Hashable, Hashable], root: Hashable) -> Graph:
    """Tail-free rooted tree from a child -> parent map; flags are integers."""
    vertices = [root] + [v for v in parent if v != root]
    seen = set(vertices)
    for p in parent.values():
        if p not in seen:
            vertices.append(p)
            seen.add(p)
    F, inv, bnd, dirs = [], {}, {}, {}
    for k, (child, par) in enumerate(parent.items()):
        a, b = 2 * k, 2 * k + 1
        F += [a, b]
        inv[a], inv[b] = b, a
        bnd[a], bnd[b] = child, par
        dirs[a], dirs[b] = "out", "in"
    t = build_graph(vertices, F, inv, bnd, direction=dirs, root=root)
    check_tree(t)
    return t


def check_tree(t: Graph) -> None:
    if t is BAR or (not t.vertices and len(t.flags) == 1):
        return
    if not t.vertices:
        return
    if t.root is None:
        raise GraphError("a rooted tree needs a root")
    if not is_connected(t) or betti1(t) != 0:
        raise GraphError("not a tree")


def root_flag(t: Graph):
    """The outgoing tail at the root, or ``None``."""
    for f in t.flags_at(t.root):
        if t.involution[f] == f and t.direction.get(f) == "out":
            return f
    return None


def is_bar(t: Graph) -> bool:
    return not t.vertices and len(t.flags) == 1


def tree_sharp(t: Graph) -> Graph:
    """Add one ``in`` tail per vertex and the root flag.  ``sharp(EMPTY) = BAR``."""
    if not t.vertices and not t.flags:
        return BAR
    check_tree(t)
    if t.tails:
        raise GraphError("sharp needs a tail-free tree")
    new = fresh_ids(t.flags, len(t.vertices) + 1)
    F = list(t.flags) + new
    bnd = dict(t.boundary)
    dirs = dict(t.direction)
    for f, v in zip(new, t.vertices):
        bnd[f] = v
        dirs[f] = "in"
    bnd[new[-1]] = t.root
    dirs[new[-1]] = "out"
    return build_graph(t.vertices, F, t.involution, bnd, direction=dirs, color=t.color,
                       mass=t.mass, root=t.root)


def tree_flat(t: Graph) -> Graph:
    """Delete every tail.  ``flat(BAR) = EMPTY``."""
    if is_bar(t):
        return EMPTY
    return trun(t)


def tree_sharp_flat(t: Graph, direction: str) -> Graph:
    if direction == "sharp":
        return tree_sharp(t)
    if direction == "flat":
        return tree_flat(t)
    raise ValueError("direction must be 'sharp' or 'flat'")


def tree_plant(t: Graph) -> Graph:
    """New root below the old one; the root flag moves down with it."""
    check_tree(t)
    if not t.vertices:
        raise GraphError("cannot plant an empty tree")
    new_v = fresh_ids(t.vertices, 1)[0]
    a, b = fresh_ids(t.flags, 2)
    rf = root_flag(t)
    bnd = dict(t.boundary)
    bnd[a], bnd[b] = t.root, new_v
    if rf is not None:
        bnd[rf] = new_v
    inv = dict(t.involution)
    inv[a], inv[b] = b, a
    dirs = dict(t.direction)
    dirs[a], dirs[b] = "out", "in"
    return build_graph(list(t.vertices) + [new_v], list(t.flags) + [a, b], inv, bnd,
                       direction=dirs, color=t.color, mass=t.mass, labels=t.labels,
                       momentum=t.momentum, root=new_v)


def tree_unplant(t: Graph) -> Graph:
    """Inverse of :func:`tree_plant`; the root must carry exactly one edge and no leaves."""
    check_tree(t)
    if not t.vertices:
        raise GraphError("cannot unplant an empty tree")
    r = t.root
    rf = root_flag(t)
    at = [f for f in t.flags_at(r) if f != rf]
    if len(at) != 1 or t.involution[at[0]] == at[0]:
        raise GraphError("unplant needs a root of valence one")
    down = at[0]
    up = t.involution[down]
    child = t.boundary[up]
    gone = {down, up}
    F = [f for f in t.flags if f not in gone]
    bnd = {f: t.boundary[f] for f in F}
    if rf is not None:
        bnd[rf] = child
    return build_graph([v for v in t.vertices if v != r], F,
                       {f: t.involution[f] for f in F}, bnd,
                       direction={f: d for f, d in t.direction.items() if f not in gone},
                       color={f: c for f, c in t.color.items() if f not in gone},
                       mass={f: m for f, m in t.mass.items() if f not in gone},
                       labels=t.labels, momentum=t.momentum, root=child)


def tree_plant_op(t: Graph, direction: str) -> Graph:
    if direction == "plant":
        return tree_plant(t)
    if direction == "unplant":
        return tree_unplant(t)
    raise ValueError("direction must be 'plant' or 'unplant'")


def _tagged(t: Graph, tag: str) -> Graph:
    from .graph import relabel
    return relabel(t, {v: (tag, v) for v in t.vertices}, {f: (tag, f) for f in t.flags})


def tree_graft(t: Graph, v, s: Graph, plus: bool = False) -> Graph:
    """Graft tail-free ``s`` at vertex ``v`` of tail-free ``t``.

    ``plus=False`` identifies ``v`` with the root of ``s``; ``plus=True`` joins
    them by a new edge.  Ids of the result are fresh integers.
    """
    from .graph import freshen
    check_tree(t)
    check_tree(s)
    if t.tails or s.tails:
        raise GraphError("grafting is defined on tail-free trees")
    if v not in t.vertices:
        raise GraphError(f"{v!r} is not a vertex")
    a, b = _tagged(t, "a"), _tagged(s, "b")
    va, rb = ("a", v), ("b", s.root)
    V = list(a.vertices) + [w for w in b.vertices if plus or w != rb]
    F = list(a.flags) + list(b.flags)
    inv = {**a.involution, **b.involution}
    bnd = dict(a.boundary)
    for f, w in b.boundary.items():
        bnd[f] = va if (w == rb and not plus) else w
    dirs = {**a.direction, **b.direction}
    if plus:
        e1, e2 = ("e", 0), ("e", 1)
        F += [e1, e2]
        inv[e1], inv[e2] = e2, e1
        bnd[e1], bnd[e2] = rb, va
        dirs[e1], dirs[e2] = "out", "in"
    out = build_graph(V, F, inv, bnd, direction=dirs, root=a.root)
    return freshen(out)[0]
