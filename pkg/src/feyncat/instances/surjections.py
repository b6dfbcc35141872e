"""Surjections: the operad with one operation in each arity.

A word ``pi(n_1) ... pi(n_k)`` is the surjection from ``N = sum n_i`` points
onto ``k`` points whose fibers have the sizes ``n_i``.  Ordered mode uses
order-preserving surjections between ordinals; symmetric mode uses all
surjections of finite sets up to isomorphism.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import product as iproduct
from math import factorial
from typing import Iterator

from .base import InstanceError, InstanceSpec, Unsupported, Word

_PI = re.compile(r"^\s*pi\s*\(\s*(\d+)\s*\)\s*$")


def pi(n: int) -> str:
    return f"pi({n})"


@lru_cache(maxsize=None)
def pi_arity(key: str) -> int:
    m = _PI.match(key)
    if not m:
        raise InstanceError(f"not a surjection generator: {key!r}")
    n = int(m.group(1))
    if n < 1:
        raise InstanceError("pi(n) needs n >= 1")
    return n


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """All compositions of ``n >= 1``, by the subset of interior cut points."""
    for bits in iproduct((0, 1), repeat=n - 1):
        parts, last = [], 0
        for i, b in enumerate(bits, start=1):
            if b:
                parts.append(i - last)
                last = i
        parts.append(n - last)
        yield tuple(parts)


class _SurjBase(InstanceSpec):
    acceptance_degree = 6

    def validate_key(self, key: str) -> None:
        if key != pi(pi_arity(key)):
            raise InstanceError(f"non-canonical spelling {key!r}; use pi(n)")

    def arity(self, key: str) -> int:
        return pi_arity(key)

    def is_identity(self, key: str) -> bool:
        return pi_arity(key) == 1

    def degree(self, key: str) -> int:
        return pi_arity(key) - 1

    def generators(self, max_degree: int) -> list[str]:
        return [pi(n) for n in range(1, max_degree + 2)]

    def identity_keys(self) -> list[str]:
        return [pi(1)]

    def parse_generator(self, text: str) -> str:
        key = pi(pi_arity(text))
        return key

    def grammar(self) -> str:
        return "pi(n), n >= 1; pi(1) is the identity of a point"

    def display(self, key: str, fmt: str = "text") -> str:
        if fmt == "latex":
            return rf"\pi_{{{pi_arity(key)}}}"
        return key


class OrderedSurjections(_SurjBase):
    """Order-preserving surjections; every factorization is counted once."""

    name = "surj-ord"
    symmetric = False

    def factorizations(self, word: Word):
        ns = [pi_arity(k) for k in word]
        N = sum(ns)
        if N == 0:
            yield (), (), 1
            return
        forced = set()
        acc = 0
        for n in ns[:-1]:
            acc += n
            forced.add(acc)
        free = [i for i in range(1, N) if i not in forced]
        for bits in iproduct((0, 1), repeat=len(free)):
            cuts = sorted(forced | {i for i, b in zip(free, bits) if b})
            pts = [0] + cuts + [N]
            right = tuple(pi(b - a) for a, b in zip(pts, pts[1:]))
            # left letter i counts the middle points over fiber i
            left, j = [], 0
            for n in ns:
                start = pts[j]
                k = 0
                while pts[j] < start + n:
                    j += 1
                    k += 1
                left.append(pi(k))
            yield tuple(left), right, 1


def _refining_partitions(owner: list[int]) -> Iterator[list[list[int]]]:
    """Set partitions of ``range(len(owner))`` whose blocks lie inside one owner class."""
    blocks: list[list[int]] = []

    def rec(i: int):
        if i == len(owner):
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            if owner[b[0]] == owner[i]:
                b.append(i)
                yield from rec(i + 1)
                b.pop()
        blocks.append([i])
        yield from rec(i + 1)
        blocks.pop()

    yield from rec(0)


class SymmetricSurjections(_SurjBase):
    """Surjections of finite sets; channels are set partitions refining the fibers.

    The middle object of a factorization is determined up to its
    automorphisms by the partition of the source it induces, so classes of
    factorizations are the refining set partitions.
    """

    name = "surj-sym"
    symmetric = True

    def _channels(self, word: Word, concrete: bool):
        ns = [pi_arity(k) for k in word]
        owner = [i for i, n in enumerate(ns) for _ in range(n)]
        if not owner:
            yield (), (), 1
            return
        for part in _refining_partitions(owner):
            count = [0] * len(ns)
            for b in part:
                count[owner[b[0]]] += 1
            left = tuple(pi(c) for c in count)
            right = tuple(pi(len(b)) for b in part)
            yield left, right, factorial(len(part)) if concrete else 1

    def factorizations(self, word: Word):
        return self._channels(word, False)

    def quot_factorizations(self, word: Word):
        """Concrete factorizations: each partition carries ``M!`` orderings of the middle."""
        return self._channels(word, True)

    def aut_order(self, word: Word) -> int:
        if not all(self.is_identity(k) for k in word):
            raise Unsupported("automorphism orders are only needed on identities")
        return factorial(len(word))

    def iso_count(self, word: Word) -> int:
        return 1


def count_set_partitions_by_type(n: int) -> dict[tuple[int, ...], int]:
    """Number of set partitions of ``n`` points with each sorted block-size type."""
    out: dict = {}
    for part in _refining_partitions([0] * n):
        t = tuple(sorted(len(b) for b in part))
        out[t] = out.get(t, 0) + 1
    return out


def surjections_instance(mode: str = "ordered") -> InstanceSpec:
    if mode in ("ordered", "ord"):
        return OrderedSurjections()
    if mode in ("symmetric", "sym"):
        return SymmetricSurjections()
    raise InstanceError(f"unknown surjection mode {mode!r}")
