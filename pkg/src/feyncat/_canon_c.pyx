# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled canonical labeling; same algorithm and output as ``_canon_py``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

ctypedef long long i64


cdef struct Ctx:
    int n
    int* vcol
    int* W
    int* cell_of
    i64* sig        # n rows of up to n entries
    int* siglen
    int* tmp
    int* best
    int* cur
    int has_best


cdef inline int _cmp_sig(Ctx* c, int u, int v):
    cdef int lu = c.siglen[u], lv = c.siglen[v], k
    cdef i64* su = c.sig + u * c.n
    cdef i64* sv = c.sig + v * c.n
    cdef int m = lu if lu < lv else lv
    for k in range(m):
        if su[k] < sv[k]:
            return -1
        if su[k] > sv[k]:
            return 1
    if lu < lv:
        return -1
    if lu > lv:
        return 1
    return 0


cdef void _refine(Ctx* c, int* lab, int* ptn):
    # ptn[i] == 1 when position i and i + 1 are in the same cell
    cdef int n = c.n
    cdef int i, j, k, s, e, v, w, a, b, changed, ci, x
    cdef i64 t
    cdef i64* row
    while True:
        ci = 0
        for i in range(n):
            c.cell_of[lab[i]] = ci
            if ptn[i] == 0:
                ci += 1
        changed = 0
        s = 0
        while s < n:
            e = s
            while ptn[e] == 1:
                e += 1
            if e > s:
                for i in range(s, e + 1):
                    v = lab[i]
                    row = c.sig + v * n
                    k = 0
                    for w in range(n):
                        a = c.W[v * n + w]
                        b = c.W[w * n + v]
                        if a != 0 or b != 0:
                            row[k] = ((<i64>c.cell_of[w]) << 42) | ((<i64>a) << 21) | (<i64>b)
                            k += 1
                    c.siglen[v] = k
                    # insertion sort of the row
                    for j in range(1, k):
                        t = row[j]
                        x = j - 1
                        while x >= 0 and row[x] > t:
                            row[x + 1] = row[x]
                            x -= 1
                        row[x + 1] = t
                # stable insertion sort of the cell by signature
                for j in range(s + 1, e + 1):
                    v = lab[j]
                    x = j - 1
                    while x >= s and _cmp_sig(c, lab[x], v) > 0:
                        lab[x + 1] = lab[x]
                        x -= 1
                    lab[x + 1] = v
                for j in range(s, e):
                    if _cmp_sig(c, lab[j], lab[j + 1]) != 0:
                        ptn[j] = 0
                        changed = 1
            s = e + 1
        if not changed:
            return


cdef int _twins(Ctx* c, int u, int v):
    cdef int n = c.n, w
    if c.W[u * n + u] != c.W[v * n + v] or c.W[u * n + v] != c.W[v * n + u]:
        return 0
    for w in range(n):
        if w == u or w == v:
            continue
        if c.W[u * n + w] != c.W[v * n + w] or c.W[w * n + u] != c.W[w * n + v]:
            return 0
    return 1


cdef int _cmp_cert(Ctx* c, int* o1, int* o2):
    cdef int n = c.n, i, j, x, y
    for i in range(n):
        x = c.vcol[o1[i]]
        y = c.vcol[o2[i]]
        if x != y:
            return -1 if x < y else 1
    for i in range(n):
        for j in range(n):
            x = c.W[o1[i] * n + o1[j]]
            y = c.W[o2[i] * n + o2[j]]
            if x != y:
                return -1 if x < y else 1
    return 0


cdef void _search(Ctx* c, int* lab, int* ptn):
    cdef int n = c.n
    cdef int i, s, e, j, r, v, skip, nreps
    s = -1
    i = 0
    while i < n:
        e = i
        while ptn[e] == 1:
            e += 1
        if e > i:
            s = i
            break
        i = e + 1
    if s < 0:
        if not c.has_best or _cmp_cert(c, lab, c.best) < 0:
            memcpy(c.best, lab, n * sizeof(int))
            c.has_best = 1
        return
    cdef int* reps = <int*>malloc((e - s + 1) * sizeof(int))
    cdef int* clab = <int*>malloc(n * sizeof(int))
    cdef int* cptn = <int*>malloc(n * sizeof(int))
    nreps = 0
    for j in range(s, e + 1):
        v = lab[j]
        skip = 0
        for r in range(nreps):
            if _twins(c, reps[r], v):
                skip = 1
                break
        if not skip:
            reps[nreps] = v
            nreps += 1
    for r in range(nreps):
        v = reps[r]
        memcpy(clab, lab, n * sizeof(int))
        memcpy(cptn, ptn, n * sizeof(int))
        clab[s] = v
        i = s + 1
        for j in range(s, e + 1):
            if lab[j] != v:
                clab[i] = lab[j]
                i += 1
        cptn[s] = 0
        _refine(c, clab, cptn)
        _search(c, clab, cptn)
    free(reps)
    free(clab)
    free(cptn)


def canonical_labeling(int n, vcol, W):
    """Return ``(order, certificate)``; see ``feyncat._canon_py``."""
    if n == 0:
        return [], ()
    cdef Ctx c
    cdef int i, j, k
    c.n = n
    c.vcol = <int*>malloc(n * sizeof(int))
    c.W = <int*>malloc(n * n * sizeof(int))
    c.cell_of = <int*>malloc(n * sizeof(int))
    c.sig = <i64*>malloc(n * n * sizeof(i64))
    c.siglen = <int*>malloc(n * sizeof(int))
    c.best = <int*>malloc(n * sizeof(int))
    c.has_best = 0
    cdef int* lab = <int*>malloc(n * sizeof(int))
    cdef int* ptn = <int*>malloc(n * sizeof(int))
    try:
        for i in range(n):
            c.vcol[i] = vcol[i]
            row = W[i]
            for j in range(n):
                c.W[i * n + j] = row[j]
        # initial partition: stable sort by color
        order = sorted(range(n), key=lambda v: vcol[v])
        for i in range(n):
            lab[i] = order[i]
        for i in range(n):
            ptn[i] = 1 if i + 1 < n and vcol[order[i]] == vcol[order[i + 1]] else 0
        _refine(&c, lab, ptn)
        _search(&c, lab, ptn)
        out = [c.best[i] for i in range(n)]
        cert = [vcol[v] for v in out]
        for i in range(n):
            row = W[out[i]]
            cert.extend(row[v] for v in out)
        return out, tuple(cert)
    finally:
        free(c.vcol); free(c.W); free(c.cell_of); free(c.sig); free(c.siglen)
        free(c.best); free(lab); free(ptn)
