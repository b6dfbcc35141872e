"""Pure-Python canonical labeling of small colored complete digraphs.

A structure on ``n`` points is given by an integer color per point and an
``n x n`` integer relation matrix ``W`` (``0`` meaning "no relation").  The
canonical labeling is the one minimizing the certificate

    (vcol[order[0]], ..., vcol[order[n-1]], W[order[i]][order[j]] row-major)

over all leaves of an individualization-refinement search tree.  The search
tree is built from invariant data only, so isomorphic inputs produce equal
certificates.
"""

from __future__ import annotations


def _refine(cells: list[list[int]], W: list[list[int]], n: int) -> list[list[int]]:
    cell_of = [0] * n
    while True:
        for ci, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = ci
        out: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sigs = {}
            for v in cell:
                row = W[v]
                sig = []
                for w in range(n):
                    a = row[w]
                    b = W[w][v]
                    if a or b:
                        sig.append((cell_of[w], a, b))
                sig.sort()
                sigs.setdefault(tuple(sig), []).append(v)
            if len(sigs) > 1:
                split = True
                for key in sorted(sigs):
                    out.append(sigs[key])
            else:
                out.append(cell)
        cells = out
        if not split:
            return cells


def _twins(u: int, v: int, W: list[list[int]], n: int) -> bool:
    # the transposition (u v) is an automorphism
    if W[u][u] != W[v][v] or W[u][v] != W[v][u]:
        return False
    ru, rv = W[u], W[v]
    for w in range(n):
        if w == u or w == v:
            continue
        if ru[w] != rv[w] or W[w][u] != W[w][v]:
            return False
    return True


def _certificate(order: list[int], vcol: list[int], W: list[list[int]]) -> tuple:
    cert = [vcol[v] for v in order]
    for v in order:
        row = W[v]
        cert.extend(row[w] for w in order)
    return tuple(cert)


def canonical_labeling(n: int, vcol: list[int], W: list[list[int]]) -> tuple[list[int], tuple]:
    """Return ``(order, certificate)``; ``order[k]`` is the point placed at position ``k``."""
    if n == 0:
        return [], ()
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(vcol[v], []).append(v)
    cells = _refine([groups[c] for c in sorted(groups)], W, n)

    best_cert: tuple | None = None
    best_order: list[int] | None = None
    stack = [cells]
    while stack:
        part = stack.pop()
        target = None
        for ci, cell in enumerate(part):
            if len(cell) > 1:
                target = ci
                break
        if target is None:
            order = [cell[0] for cell in part]
            cert = _certificate(order, vcol, W)
            if best_cert is None or cert < best_cert:
                best_cert, best_order = cert, order
            continue
        cell = part[target]
        reps: list[int] = []
        for v in cell:
            if any(_twins(r, v, W, n) for r in reps):
                continue
            reps.append(v)
        children = []
        for v in reps:
            rest = [w for w in cell if w != v]
            child = part[:target] + [[v], rest] + part[target + 1:]
            children.append(_refine(child, W, n))
        # explore in the given order
        stack.extend(reversed(children))
    assert best_order is not None and best_cert is not None
    return best_order, best_cert
