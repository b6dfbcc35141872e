"""Canonical keys for decorated graphs.

A key is a printable string that two graphs share exactly when they are
isomorphic as decorated graphs.  Non-planar graphs are labeled at vertex
level (parallel edges and equal tails are interchangeable, so a vertex
labeling determines the flag labeling up to automorphism).  Planar graphs
need the flags themselves as points of the search, because a cyclic order
distinguishes otherwise equal flags.

Key grammar (non-planar)::

    G<n>|<edge>,<edge>...|<tail>,<tail>...[|r<i>]
    edge = e<a>.<b>[{k=v;...}]      tail = t<a>[{k=v;...}]

Planar graphs get ``P<n>|<flag>,...`` where each flag token records its
vertex, partner and successor in the cyclic order.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping
from urllib.parse import quote, unquote

from ._kernel import canonical_labeling
from .graph import Graph, GraphError, build_graph

_memo: dict = {}
_memo_lock = threading.Lock()
_MEMO_CAP = 200_000


@dataclass(frozen=True)
class CanonicalKey:
    """The canonical string plus the relabeling that produced it."""

    key: str
    vertex_order: Mapping
    flag_order: Mapping

    @property
    def bytes(self) -> bytes:
        return self.key.encode()

    def __eq__(self, other) -> bool:
        if isinstance(other, CanonicalKey):
            return self.key == other.key
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        return self.key


def _q(x) -> str:
    return quote(str(x), safe="")


def _flag_sig(g: Graph, f) -> tuple:
    return (
        g.direction.get(f, ""),
        "" if f not in g.color else "c" + _q(g.color[f]),
        "" if f not in g.labels else "l" + _q(g.labels[f]),
        "" if f not in g.momentum else "q" + _q(g.momentum[f]),
    )


def _sig_suffix(sig: tuple, prefix: str) -> list[str]:
    d, c, lab, q = sig
    out = []
    if d:
        out.append(f"d{prefix}={d}")
    if c:
        out.append(f"c{prefix}={c[1:]}")
    if lab:
        out.append(f"l{prefix}={lab[1:]}")
    if q:
        out.append(f"q{prefix}={q[1:]}")
    return out


def _rank(values: list) -> list[int]:
    table = {v: i for i, v in enumerate(sorted(set(values)))}
    return [table[v] for v in values]


def _fingerprint(g: Graph):
    return (g.vertices, g.flags, tuple(g.involution.items()), tuple(g.boundary.items()),
            tuple(g.direction.items()), tuple(g.color.items()), tuple(g.cyclic.items()),
            tuple(g.mass.items()), tuple(g.momentum.items()), tuple(g.labels.items()), g.root)


def canonicalize(g: Graph) -> CanonicalKey:
    """Canonical key of ``g`` (deterministic, relabeling invariant)."""
    try:
        fp = _fingerprint(g)
        hit = _memo.get(fp)
    except TypeError:  # unhashable decoration values
        fp, hit = None, None
    if hit is not None:
        return hit
    if not g.vertices and g.flags:
        if len(g.flags) != 1:
            raise GraphError("only the single-flag bar may have no vertices")
        f = g.flags[0]
        out = CanonicalKey("B|" + ",".join(_sig_suffix(_flag_sig(g, f), "")), {}, {f: 0})
    elif g.cyclic:
        out = _canon_planar(g)
    else:
        out = _canon_plain(g)
    if fp is not None:
        with _memo_lock:
            if len(_memo) > _MEMO_CAP:
                _memo.clear()
            _memo[fp] = out
    return out


def _canon_plain(g: Graph) -> CanonicalKey:
    sig = {f: _flag_sig(g, f) for f in g.flags}
    edges = []
    for e in g.edges:
        f, h = tuple(e)
        edges.append((f, h, g.boundary[f], g.boundary[h], sig[f], sig[h],
                      str(g.mass.get(f, ""))))
    tails = [(f, g.boundary[f], sig[f]) for f in g.tails]
    return canon_parts(g.vertices, edges, tails, g.root)


def canon_parts(V, edges, tails, root=None) -> CanonicalKey:
    """Canonical key from raw parts, without building a :class:`Graph`.

    ``edges`` holds ``(f, h, v_f, v_h, sig_f, sig_h, mass)`` and ``tails``
    holds ``(f, v, sig)``; ``sig`` is a flag signature as produced by
    ``_flag_sig`` and ``mass`` is ``""`` for massless edges.
    """
    n = len(V)
    idx = {v: i for i, v in enumerate(V)}
    tails_at: list[list] = [[] for _ in range(n)]
    for f, v, sg in tails:
        tails_at[idx[v]].append(sg)
    pair: dict[tuple[int, int], list] = {}
    for f, h, vf, vh, sf, sh, m in edges:
        a, b = idx[vf], idx[vh]
        if a == b:
            s1, s2 = sorted((sf, sh))
            pair.setdefault((a, a), []).append((s1, s2, m))
        else:
            pair.setdefault((a, b), []).append((sf, sh, m))
            pair.setdefault((b, a), []).append((sh, sf, m))
    vkeys = [(1 if root == V[i] else 0, tuple(sorted(tails_at[i]))) for i in range(n)]
    vcol = _rank(vkeys)
    pkeys = {k: tuple(sorted(v)) for k, v in pair.items()}
    codes = {v: i + 1 for i, v in enumerate(sorted(set(pkeys.values())))}
    W = [[0] * n for _ in range(n)]
    for (a, b), v in pkeys.items():
        W[a][b] = codes[v]
    order, _ = canonical_labeling(n, vcol, W)
    pos = [0] * n
    for k, v in enumerate(order):
        pos[v] = k

    edge_items = []
    for f, h, vf, vh, sf, sh, m in edges:
        a, b = pos[idx[vf]], pos[idx[vh]]
        if (a, sf) > (b, sh):
            f, h, a, b, sf, sh = h, f, b, a, sh, sf
        extra = _sig_suffix(sf, "a") + _sig_suffix(sh, "b")
        if m:
            extra.append(f"m={m}")
        tok = f"e{a}.{b}" + ("{" + ";".join(extra) + "}" if extra else "")
        edge_items.append(((a, b, tok), (f, h)))
    tail_items = []
    for f, v, sg in tails:
        a = pos[idx[v]]
        extra = _sig_suffix(sg, "")
        tok = f"t{a}" + ("{" + ";".join(extra) + "}" if extra else "")
        tail_items.append(((a, tok), (f,)))
    edge_items.sort(key=lambda t: t[0])
    tail_items.sort(key=lambda t: t[0])
    flag_order = {}
    k = 0
    for _, fs in edge_items + tail_items:
        for f in fs:
            flag_order[f] = k
            k += 1
    key = f"G{n}|" + ",".join(t[0][2] for t in edge_items) + "|" + ",".join(t[0][1] for t in tail_items)
    if root is not None:
        key += f"|r{pos[idx[root]]}"
    return CanonicalKey(key, {V[i]: pos[i] for i in range(n)}, flag_order)


_parts_memo: dict = {}


def canon_parts_key(V, edges, tails) -> str:
    """Key string of :func:`canon_parts`, memoized on the flag-free local structure."""
    idx = {v: i for i, v in enumerate(V)}
    mk = (len(V), tuple(sorted((idx[e[2]], idx[e[3]], e[4], e[5], e[6]) for e in edges)),
          tuple(sorted((idx[t[1]], t[2]) for t in tails)))
    hit = _parts_memo.get(mk)
    if hit is None:
        hit = canon_parts(V, edges, tails).key
        with _memo_lock:
            if len(_parts_memo) > _MEMO_CAP:
                _parts_memo.clear()
            _parts_memo[mk] = hit
    return hit


def _canon_planar(g: Graph) -> CanonicalKey:
    V, F = g.vertices, g.flags
    n, m = len(V), len(F)
    vi = {v: i for i, v in enumerate(V)}
    fi = {f: n + i for i, f in enumerate(F)}
    N = n + m
    nxt = {}
    for v, o in g.cyclic.items():
        for i, f in enumerate(o):
            nxt[f] = o[(i + 1) % len(o)]
    keys = []
    for v in V:
        keys.append(("V", 1 if g.root == v else 0))
    for f in F:
        keys.append(("F", _flag_sig(g, f), g.involution[f] == f, str(g.mass.get(f, ""))))
    # flags sort before vertices
    vcol = _rank([("1" if k[0] == "V" else "0", repr(k[1:])) for k in keys])
    W = [[0] * N for _ in range(N)]
    for f in F:
        a = fi[f]
        b = vi[g.boundary[f]]
        W[b][a] |= 1
        W[a][b] |= 8
        p = g.involution[f]
        if p != f:
            W[a][fi[p]] |= 2
        W[a][fi[nxt[f]]] |= 4
    order, _ = canonical_labeling(N, vcol, W)
    fpos, vpos = {}, {}
    for node in order:
        if node < n:
            vpos[V[node]] = len(vpos)
        else:
            fpos[F[node - n]] = len(fpos)
    toks = [""] * m
    for f in F:
        p = g.involution[f]
        extra = _sig_suffix(_flag_sig(g, f), "")
        if f in g.mass:
            extra.append(f"m={g.mass[f]}")
        toks[fpos[f]] = (f"f{vpos[g.boundary[f]]}.{fpos[p]}.{fpos[nxt[f]]}"
                         + ("{" + ";".join(extra) + "}" if extra else ""))
    key = f"P{n}|" + ",".join(toks)
    if g.root is not None:
        key += f"|r{vpos[g.root]}"
    return CanonicalKey(key, vpos, fpos)


# -- decoding ----------------------------------------------------------------

def _split_tok(tok: str) -> tuple[str, dict]:
    if "{" in tok:
        head, rest = tok.split("{", 1)
        body = rest.rstrip("}")
        extra = dict(kv.split("=", 1) for kv in body.split(";") if kv)
        return head, extra
    return tok, {}


def _apply_sig(extra: dict, suffix: str, f, direction, color, labels, momentum):
    if "d" + suffix in extra:
        direction[f] = extra["d" + suffix]
    if "c" + suffix in extra:
        color[f] = unquote(extra["c" + suffix])
    if "l" + suffix in extra:
        labels[f] = unquote(extra["l" + suffix])
    if "q" + suffix in extra:
        momentum[f] = unquote(extra["q" + suffix])


def graph_from_key(key: str) -> Graph:
    """The canonical representative encoded by ``key``."""
    try:
        parts = key.split("|")
        head = parts[0]
        direction, color, labels, momentum, mass = {}, {}, {}, {}, {}
        if head == "B":
            f = 0
            if len(parts) > 1 and parts[1]:
                extra = dict(kv.split("=", 1) for kv in parts[1].split(","))
                _apply_sig(extra, "", f, direction, color, labels, momentum)
            return build_graph((), (0,), None, {}, direction=direction, color=color,
                               labels=labels, momentum=momentum)
        n = int(head[1:])
        root = None
        if head[0] == "G":
            edges = [t for t in parts[1].split(",") if t]
            tails = [t for t in parts[2].split(",") if t]
            if len(parts) > 3:
                root = int(parts[3][1:])
            F, inv, bnd = [], {}, {}
            k = 0
            for tok in edges:
                h, extra = _split_tok(tok)
                a, b = map(int, h[1:].split("."))
                F += [k, k + 1]
                inv[k], inv[k + 1] = k + 1, k
                bnd[k], bnd[k + 1] = a, b
                _apply_sig(extra, "a", k, direction, color, labels, momentum)
                _apply_sig(extra, "b", k + 1, direction, color, labels, momentum)
                if "m" in extra:
                    mass[k] = mass[k + 1] = Fraction(extra["m"])
                k += 2
            for tok in tails:
                h, extra = _split_tok(tok)
                F.append(k)
                bnd[k] = int(h[1:])
                _apply_sig(extra, "", k, direction, color, labels, momentum)
                k += 1
            return build_graph(range(n), F, inv, bnd, direction=direction, color=color,
                               mass=mass, momentum=momentum, labels=labels, root=root)
        if head[0] == "P":
            toks = [t for t in parts[1].split(",") if t]
            if len(parts) > 2:
                root = int(parts[2][1:])
            inv, bnd, nxt = {}, {}, {}
            for k, tok in enumerate(toks):
                h, extra = _split_tok(tok)
                v, p, s = map(int, h[1:].split("."))
                bnd[k], inv[k], nxt[k] = v, p, s
                _apply_sig(extra, "", k, direction, color, labels, momentum)
                if "m" in extra:
                    mass[k] = Fraction(extra["m"])
            cyc = {}
            for v in range(n):
                at = [f for f in range(len(toks)) if bnd[f] == v]
                order = []
                if at:
                    f = at[0]
                    while True:
                        order.append(f)
                        f = nxt[f]
                        if f == at[0]:
                            break
                cyc[v] = tuple(order)
            return build_graph(range(n), range(len(toks)), inv, bnd, direction=direction,
                               color=color, cyclic=cyc, mass=mass, momentum=momentum,
                               labels=labels, root=root)
    except (ValueError, IndexError, KeyError) as exc:
        raise GraphError(f"malformed canonical key {key!r}: {exc}") from exc
    raise GraphError(f"malformed canonical key {key!r}")


def canonical_graph(g: Graph) -> Graph:
    return graph_from_key(canonicalize(g).key)


def isomorphic(g: Graph, h: Graph) -> bool:
    return canonicalize(g).key == canonicalize(h).key
