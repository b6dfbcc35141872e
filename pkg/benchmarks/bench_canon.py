"""Compare the compiled and pure-Python canonical-labeling kernels.

    python3 benchmarks/bench_canon.py [--edges 5] [--repeat 3]

Times the raw kernels on the weight matrices of every connected graph up to
the edge bound, then times a full ``ck-graph-core`` coproduct sweep under
each kernel in a subprocess.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

from feyncat import _canon_py
from feyncat.canon import graph_from_key
from feyncat.instances.graphs import connected_graphs

SWEEP = """
import time
from feyncat._kernel import IMPLEMENTATION
from feyncat.hopf import coproduct, gen
from feyncat.instances import get_instance
inst = get_instance("ck-graph-core")
t = time.perf_counter()
for k in inst.generators({edges}):
    coproduct(gen(inst, k))
print(IMPLEMENTATION, time.perf_counter() - t)
"""


def matrices(max_edges: int):
    out = []
    for level in connected_graphs(max_edges):
        for key in level:
            g = graph_from_key(key)
            V = list(g.vertices)
            idx = {v: i for i, v in enumerate(V)}
            n = len(V)
            W = [[0] * n for _ in range(n)]
            for e in g.edges:
                f, h = tuple(e)
                a, b = idx[g.boundary[f]], idx[g.boundary[h]]
                W[a][b] += 1
                if a != b:
                    W[b][a] += 1
            vcol = [sum(1 for t in g.tails if g.boundary[t] == v) for v in V]
            out.append((n, vcol, W))
    return out


def time_kernel(fn, cases, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for n, vcol, W in cases:
            fn(n, vcol, W)
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--edges", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    cases = matrices(args.edges)
    print(f"{len(cases)} connected graphs with <= {args.edges} edges")
    rows = [("python", _canon_py.canonical_labeling)]
    try:
        from feyncat import _canon_c
    except ImportError:
        print("compiled kernel not built; only the pure kernel is timed")
    else:
        rows.append(("cython", _canon_c.canonical_labeling))
    base = None
    for name, fn in rows:
        t = time_kernel(fn, cases, args.repeat)
        base = base or t
        print(f"kernel {name:7s} {t * 1e3:9.1f} ms  x{base / t:.1f}")

    for pure in ("1", "0"):
        env = dict(os.environ, FEYNCAT_PURE=pure)
        res = subprocess.run([sys.executable, "-c", SWEEP.format(edges=min(args.edges, 4))],
                             capture_output=True, text=True, env=env, check=True)
        impl, secs = res.stdout.split()
        print(f"coproduct sweep ({impl}) {float(secs):.2f} s")


if __name__ == "__main__":
    main()
