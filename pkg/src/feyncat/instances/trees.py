"""Rooted trees under operadic grafting, with or without leaves.

Keys are bracket strings.  ``|`` is the bare root flag (the identity),
``o`` is a leaf, and ``[x y ...]`` is a vertex whose inputs are ``x y ...``
(written without separators).  The ladder with two vertices and one leaf is
``[[o]]``.  Amputated keys have no leaves: ``[]``, ``[[]]``, ``[[][]]``.

In symmetric mode the inputs of every vertex are sorted; in planar mode
their order is part of the tree.

A factorization of a leafed tree is a cut through every root-to-leaf path,
placed at the root flag, at an edge or at the leaf.  The part below the cut
is the outer factor and the parts above are the inner factors, with ``|``
for a cut at a leaf.  Amputated trees use admissible cuts directly.
"""

from __future__ import annotations

from itertools import combinations, product as iproduct
from typing import Iterator, Union

from ..graph import Graph, build_graph
from ..rooted import is_bar
from .base import InstanceError, InstanceSpec, Word

Tree = Union[str, tuple]  # "o" or a tuple of inputs
BAR_KEY = "|"
LEAF = "o"


# -- keys -------------------------------------------------------------------

def parse_tree(key: str) -> Tree | None:
    """Bracket string to nested tuples; ``|`` gives ``None``."""
    s = key.replace(" ", "")
    if s == BAR_KEY:
        return None
    pos = 0

    def node() -> Tree:
        nonlocal pos
        if pos >= len(s):
            raise InstanceError(f"unexpected end of tree {key!r}")
        c = s[pos]
        if c == LEAF:
            pos += 1
            return LEAF
        if c != "[":
            raise InstanceError(f"unexpected {c!r} in tree {key!r}")
        pos += 1
        kids = []
        while pos < len(s) and s[pos] != "]":
            kids.append(node())
        if pos >= len(s):
            raise InstanceError(f"unbalanced brackets in {key!r}")
        pos += 1
        return tuple(kids)

    t = node()
    if pos != len(s) or t == LEAF:
        raise InstanceError(f"not a tree key: {key!r}")
    return t


def tree_str(t: Tree | None) -> str:
    if t is None:
        return BAR_KEY
    if t == LEAF:
        return LEAF
    return "[" + "".join(tree_str(c) for c in t) + "]"


def sort_tree(t: Tree) -> Tree:
    if t == LEAF:
        return t
    kids = [sort_tree(c) for c in t]
    return tuple(sorted(kids, key=tree_str))


def vertex_count(t: Tree | None) -> int:
    if t is None or t == LEAF:
        return 0
    return 1 + sum(vertex_count(c) for c in t)


def leaf_count(t: Tree | None) -> int:
    if t is None or t == LEAF:
        return 1
    return sum(leaf_count(c) for c in t)


def ladder_key(n: int, leaves: bool = True) -> str:
    if n < 0:
        raise InstanceError("ladder needs n >= 0")
    if n == 0:
        if not leaves:
            raise InstanceError("the amputated ladder needs n >= 1")
        return BAR_KEY
    return "[" * n + (LEAF if leaves else "") + "]" * n


def _strip_leaves(t: Tree) -> Tree:
    return tuple(_strip_leaves(c) for c in t if c != LEAF)


def amputate_key(key: str, symmetric: bool) -> str | None:
    """Remove all leaves; ``|`` maps to ``None`` (the unit)."""
    t = parse_tree(key)
    if t is None:
        return None
    s = _strip_leaves(t)
    return tree_str(sort_tree(s) if symmetric else s)


def sharp_key(key: str, symmetric: bool) -> str:
    """One leaf at every vertex, in front of its children."""
    t = parse_tree(key)

    def go(x):
        return (LEAF,) + tuple(go(c) for c in x)

    s = go(t)
    return tree_str(sort_tree(s) if symmetric else s)


# -- graphs -------------------------------------------------------------------

def tree_to_graph(key: str, planar: bool = False) -> Graph:
    """Rooted graph with an ``out`` root flag and ``in`` leaves; cyclic orders when planar."""
    t = parse_tree(key)
    if t is None:
        return build_graph((), (0,), direction={0: "out"})
    V, F, inv, bnd, dirs, cyc = [], [], {}, {}, {}, {}
    counter = [0, 0]

    def newf():
        counter[1] += 1
        return counter[1] - 1

    def walk(x, down_flag):
        v = counter[0]
        counter[0] += 1
        V.append(v)
        F.append(down_flag)
        bnd[down_flag] = v
        dirs[down_flag] = "out"
        order = [down_flag]
        for c in x:
            f = newf()
            F.append(f)
            bnd[f] = v
            dirs[f] = "in"
            order.append(f)
            if c == LEAF:
                continue
            g = newf()
            inv[f], inv[g] = g, f
            walk(c, g)
        cyc[v] = tuple(order)

    root_f = newf()
    walk(t, root_f)
    return build_graph(V, F, inv, bnd, direction=dirs, cyclic=cyc if planar else {}, root=0)


def graph_to_tree_key(g: Graph, symmetric: bool) -> str:
    """Inverse of :func:`tree_to_graph` (planar graphs keep their cyclic orders)."""
    if is_bar(g):
        return BAR_KEY
    r = g.root

    def walk(v, down):
        if g.cyclic:
            o = list(g.cyclic[v])
            i = o.index(down)
            flags = o[i + 1:] + o[:i]
        else:
            flags = [f for f in g.flags_at(v) if f != down]
        kids = []
        for f in flags:
            p = g.involution[f]
            kids.append(LEAF if p == f else walk(g.boundary[p], p))
        return tuple(kids)

    down = next(f for f in g.flags_at(r) if g.involution[f] == f and g.direction.get(f) == "out")
    t = walk(r, down)
    return tree_str(sort_tree(t) if symmetric else t)


# -- cuts -----------------------------------------------------------------------

def _kept_options(x: tuple) -> list[tuple[Tree, list]]:
    """Ways to cut above a vertex that stays below: (lower vertex, uppers)."""
    per_child = []
    for c in x:
        if c == LEAF:
            per_child.append([(LEAF, [None])])
        else:
            per_child.append([(LEAF, [c])] + _kept_options(c))
    out = []
    for combo in iproduct(*per_child):
        lower = tuple(lo for lo, _ in combo)
        ups = [u for _, us in combo for u in us]
        out.append((lower, ups))
    return out


def leafed_cuts(t: Tree | None) -> list[tuple[Tree | None, list]]:
    if t is None:
        return [(None, [None])]
    return [(None, [t])] + _kept_options(t)


def _amp_kept(x: tuple) -> list[tuple[tuple, list]]:
    per_child = [[(None, [c])] + _amp_kept(c) for c in x]
    out = []
    for combo in iproduct(*per_child):
        lower = tuple(lo for lo, _ in combo if lo is not None)
        ups = [u for _, us in combo for u in us]
        out.append((lower, ups))
    return out


def admissible_cuts(t: tuple) -> list[tuple[tuple | None, list]]:
    """All cuts including the empty one and the cut below the root (lower ``None``)."""
    return [(None, [t])] + _amp_kept(t)


def admissible_cuts_oracle(t: tuple) -> dict:
    """Textbook admissible cuts on an explicit edge list, as a cross-check.

    Returns ``{(root part key or None, sorted pruned keys): count}`` for
    symmetric trees, including ``T (x) 1`` and ``1 (x) T``.
    """
    parent, kids = {}, {}
    counter = [0]

    def walk(x):
        v = counter[0]
        counter[0] += 1
        kids[v] = []
        for c in x:
            w = walk(c)
            parent[w] = v
            kids[v].append(w)
        return v

    walk(t)
    edges = sorted(parent)  # an edge is identified by its upper vertex

    def subtree(v, removed):
        return tuple(subtree(w, removed) for w in kids[v] if w not in removed)

    def path_to_root(v):
        out = []
        while v in parent:
            out.append(v)
            v = parent[v]
        return out

    out: dict = {}
    for k in range(len(edges) + 1):
        for cut in combinations(edges, k):
            cs = set(cut)
            if any(len(cs & set(path_to_root(w))) > 1 for w in cs):
                continue
            root = tree_str(sort_tree(subtree(0, cs)))
            pruned = tuple(sorted(tree_str(sort_tree(subtree(w, cs))) for w in cut))
            out[(root, pruned)] = out.get((root, pruned), 0) + 1
    whole = tree_str(sort_tree(t))
    out[(None, (whole,))] = out.get((None, (whole,)), 0) + 1
    return out


# -- enumeration ----------------------------------------------------------------------

def _shapes(n: int, planar: bool) -> list[tuple]:
    """Tail-free rooted trees with exactly ``n`` vertices."""
    memo: dict[int, list] = {}

    def forests(m: int) -> list[tuple]:
        # ordered forests with m vertices
        if m in memo:
            return memo[m]
        if m == 0:
            return [()]
        out = []
        for first in range(1, m + 1):
            for t in trees(first):
                for rest in forests(m - first):
                    out.append((t,) + rest)
        memo[m] = out
        return out

    tmemo: dict[int, list] = {}

    def trees(m: int) -> list[tuple]:
        if m not in tmemo:
            tmemo[m] = [f for f in forests(m - 1)]
        return tmemo[m]

    res = trees(n)
    if planar:
        return res
    seen = {}
    for t in res:
        s = sort_tree(t)
        seen[tree_str(s)] = s
    return [seen[k] for k in sorted(seen)]


def _with_leaves(t: tuple, extra: int, planar: bool) -> Iterator[tuple]:
    """Add leaves: childless vertices get one, plus up to ``extra`` more anywhere."""

    def go(x, budget) -> Iterator[tuple[tuple, int]]:
        def rec(i, budget):
            if i == len(x):
                yield [], budget
                return
            for cc, b in go(x[i], budget):
                for rest, b2 in rec(i + 1, b):
                    yield [cc] + rest, b2

        for kids, b in rec(0, budget):
            base = 1 if not kids else 0
            for add in range(0, b + 1):
                nleaf = base + add
                if nleaf == 0 and not kids:
                    continue
                if planar:
                    slots = len(kids) + nleaf
                    for pos in combinations(range(slots), nleaf):
                        ps = set(pos)
                        it = iter(kids)
                        yield tuple(LEAF if i in ps else next(it) for i in range(slots)), b - add
                else:
                    yield tuple([LEAF] * nleaf + kids), b - add

    for tt, _ in go(t, extra):
        yield tt


class TreeInstance(InstanceSpec):
    def __init__(self, planar: bool, leaves: bool, extra_leaves: int = 1):
        super().__init__()
        self.planar = planar
        self.leaves = leaves
        self.symmetric = not planar
        self.extra_leaves = extra_leaves
        self.one_comma_left = leaves
        self.acceptance_degree = 6
        self.name = "ck-tree-" + ("planar" if planar else "sym") + ("" if leaves else "-amp")

    # -- keys ---------------------------------------------------------------
    def _norm(self, t: Tree | None) -> str:
        if t is None:
            return BAR_KEY
        return tree_str(t if self.planar else sort_tree(t))

    def validate_key(self, key: str) -> None:
        t = parse_tree(key)
        if t is None:
            if not self.leaves:
                raise InstanceError("amputated trees have no bare root flag; use 1")
            return
        if self._norm(t) != key:
            raise InstanceError(f"non-canonical tree key {key!r}; expected {self._norm(t)!r}")

        def check(x):
            if not self.leaves and LEAF in x:
                raise InstanceError("amputated trees have no leaves")
            if self.leaves and not x:
                raise InstanceError("every vertex needs at least one input")
            for c in x:
                if c != LEAF:
                    check(c)

        check(t)

    def is_identity(self, key: str) -> bool:
        return key == BAR_KEY

    def degree(self, key: str) -> int:
        return key.count("[")

    # -- coproduct ------------------------------------------------------------
    def factorizations(self, word: Word):
        trees = [parse_tree(k) for k in word]
        if self.leaves:
            options = [leafed_cuts(t) for t in trees]
        else:
            options = [admissible_cuts(t) for t in trees]
        for combo in iproduct(*options):
            left, right = [], []
            for lower, ups in combo:
                if lower is not None or self.leaves:
                    left.append(self._norm(lower))
                right.extend(self._norm(u) for u in ups)
            yield tuple(left), tuple(right), 1

    def b_plus(self, word: Word) -> str:
        if self.leaves:
            raise InstanceError("B_+ is defined on amputated trees")
        kids = tuple(parse_tree(k) for k in word)
        return self._norm(kids)

    # -- enumeration ----------------------------------------------------------
    def generators(self, max_degree: int) -> list[str]:
        out = set()
        if self.leaves:
            out.add(BAR_KEY)
        for n in range(1, max_degree + 1):
            for s in _shapes(n, self.planar):
                if self.leaves:
                    for t in _with_leaves(s, self.extra_leaves, self.planar):
                        out.add(self._norm(t))
                else:
                    out.add(self._norm(s))
        return sorted(out, key=lambda k: (self.degree(k), k))

    def identity_keys(self) -> list[str]:
        return [BAR_KEY] if self.leaves else []

    def parse_generator(self, text: str) -> str:
        s = text.strip()
        if s.startswith("ladder(") and s.endswith(")"):
            try:
                n = int(s[7:-1])
            except ValueError as exc:
                raise InstanceError(f"bad ladder size in {text!r}") from exc
            if not self.leaves and n == 0:
                raise InstanceError("ladder(0) is the unit 1 in amputated trees")
            key = ladder_key(n, self.leaves)
        elif s.startswith("corolla(") and s.endswith(")"):
            try:
                n = int(s[8:-1])
            except ValueError as exc:
                raise InstanceError(f"bad corolla size in {text!r}") from exc
            if n < (1 if self.leaves else 0):
                raise InstanceError("corolla(n) needs n >= 1 leaves")
            key = "[" + (LEAF * n if self.leaves else "[]" * n) + "]"
        elif s.startswith("tree(") and s.endswith(")"):
            key = self._norm(parse_tree(s[5:-1]))
        else:
            key = self._norm(parse_tree(s))
        self.check_key(key)
        return key

    def grammar(self) -> str:
        if self.leaves:
            return ("ladder(n) | corolla(n) | bracket tree like [[o]o]: "
                    "o is a leaf, [..] a vertex, | the identity")
        return ("ladder(n) | corolla(n) (n children) | bracket tree like [[][]]: "
                "[..] a vertex with its children")

    def display(self, key: str, fmt: str = "text") -> str:
        if fmt == "latex":
            return r"\mathtt{" + key.replace("|", r"\vert ") + "}"
        return key

    def to_graph(self, key: str) -> Graph:
        return tree_to_graph(key, planar=self.planar)


def ck_tree_instance(symmetry: str = "symmetric", tails: str = "labeled",
                     extra_leaves: int = 1) -> TreeInstance:
    if symmetry not in ("planar", "symmetric"):
        raise InstanceError("symmetry must be planar or symmetric")
    if tails not in ("labeled", "amputated"):
        raise InstanceError("tails must be labeled or amputated")
    return TreeInstance(symmetry == "planar", tails == "labeled", extra_leaves)


def amputate(x, target: TreeInstance | None = None):
    """Delete every leaf of every tree factor; ``|`` becomes the unit."""
    from ..hopf import Elem
    inst = x.inst
    if not isinstance(inst, TreeInstance) or not inst.leaves:
        raise InstanceError("amputation needs a tree instance with leaves")
    target = target or TreeInstance(inst.planar, False)

    def amp(w):
        out = []
        for k in w:
            a = amputate_key(k, inst.symmetric)
            if a is not None:
                out.append(a)
        return tuple(out)

    if x.arity == 1:
        terms = [(amp(w), c) for w, c in x.terms.items()]
    else:
        terms = [(tuple(amp(w) for w in key), c) for key, c in x.terms.items()]
    return Elem(target, terms, x.arity, x.quotient, x.rational)
