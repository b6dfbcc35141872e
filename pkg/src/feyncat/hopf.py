"""Free modules on morphism classes and their bialgebra / Hopf structure.

An :class:`Elem` is a finite linear combination of words of class keys (or,
for tensor powers, of tuples of words).  The product is concatenation of
words, sorted in symmetric instances.  The coproduct of a word is the sum
over the factorizations the instance enumerates for that word.  The Hopf
quotient drops identity classes from every word.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product as iproduct
from typing import Callable, Iterable, Iterator, Mapping

from .instances.base import InstanceError, InstanceSpec, Unsupported, Word

Coeff = int | Fraction


class NotConnectedError(InstanceError):
    """The Hopf quotient has degree-0 classes other than the unit."""


class GradingError(InstanceError):
    """A reduced coproduct failed to lower degree, so the recursions would not end."""


class CoefficientError(ValueError):
    """A non-integer coefficient in integer mode."""


def _norm_coeff(c, rational: bool) -> Coeff:
    if isinstance(c, bool):
        raise TypeError("boolean coefficient")
    if isinstance(c, int):
        return c
    c = Fraction(c)
    if c.denominator == 1:
        return int(c.numerator)
    if not rational:
        raise CoefficientError(f"non-integer coefficient {c} in integer mode")
    return c


class Elem:
    """Immutable sparse linear combination.

    ``arity`` 1 keys are words; arity ``k`` keys are ``k``-tuples of words
    (elements of the ``k``-th tensor power).  ``quotient`` marks elements of
    the Hopf quotient, whose words contain no identity classes.  ``rational``
    allows non-integer coefficients.
    """

    __slots__ = ("inst", "terms", "arity", "quotient", "rational")

    def __init__(self, inst: InstanceSpec, terms: Mapping | Iterable = (), arity: int = 1,
                 quotient: bool = False, rational: bool = False):
        self.inst = inst
        self.arity = arity
        self.quotient = quotient
        self.rational = rational
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            key = self._norm_key(key)
            acc[key] = acc.get(key, 0) + c
        self.terms = {k: _norm_coeff(c, rational) for k, c in acc.items() if c != 0}

    def _norm_word(self, w) -> Word:
        w = tuple(w)
        if self.quotient:
            w = tuple(k for k in w if not self.inst.ident(k))
        return self.inst.normalize(w)

    def _norm_key(self, key):
        if self.arity == 1:
            return self._norm_word(key)
        if len(key) != self.arity:
            raise ValueError("tensor key of the wrong arity")
        return tuple(self._norm_word(w) for w in key)

    @classmethod
    def _make(cls, inst, terms: dict, arity: int, quotient: bool, rational: bool) -> "Elem":
        """Trusted constructor: keys are already normal, coefficients already summed."""
        self = cls.__new__(cls)
        self.inst = inst
        self.arity = arity
        self.quotient = quotient
        self.rational = rational
        self.terms = {k: _norm_coeff(c, rational) for k, c in terms.items() if c != 0}
        return self

    # -- structure -----------------------------------------------------------
    def _like(self, terms, arity=None) -> "Elem":
        return Elem(self.inst, terms, self.arity if arity is None else arity,
                    self.quotient, self.rational)

    def _compatible(self, other: "Elem") -> None:
        if not isinstance(other, Elem):
            raise TypeError("expected an Elem")
        if other.inst is not self.inst and other.inst.name != self.inst.name:
            raise InstanceError(f"instance mismatch: {self.inst.name} vs {other.inst.name}")
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        if other.quotient != self.quotient:
            raise InstanceError("mixing elements of the bialgebra and of its Hopf quotient")

    def __add__(self, other: "Elem") -> "Elem":
        self._compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Elem(self.inst, out, self.arity, self.quotient, self.rational or other.rational)

    def __neg__(self) -> "Elem":
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Elem") -> "Elem":
        return self + (-other)

    def scale(self, c) -> "Elem":
        if isinstance(c, Fraction) and c.denominator != 1 and not self.rational:
            raise CoefficientError(f"cannot scale by {c} in integer mode")
        return self._like({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Elem):
            return product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Elem):
            return NotImplemented
        return (self.arity == other.arity and self.quotient == other.quotient
                and self.inst.name == other.inst.name and self.terms == other.terms)

    __hash__ = None  # type: ignore[assignment]

    def __iter__(self) -> Iterator:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, key) -> Coeff:
        return self.terms.get(self._norm_key(key), 0)

    def to_rational(self) -> "Elem":
        return Elem(self.inst, self.terms, self.arity, self.quotient, True)

    def __repr__(self) -> str:
        from .render import render
        return f"Elem[{self.inst.name}]({render(self, 'text')})"


# -- constructors ----------------------------------------------------------------

def unit(inst: InstanceSpec, quotient: bool = False, rational: bool = False) -> Elem:
    return Elem(inst, {(): 1}, 1, quotient, rational)


def zero(inst: InstanceSpec, arity: int = 1, quotient: bool = False,
         rational: bool = False) -> Elem:
    return Elem(inst, {}, arity, quotient, rational)


def word_elem(inst: InstanceSpec, word: Iterable[str], coeff: Coeff = 1,
              quotient: bool = False, rational: bool = False) -> Elem:
    word = tuple(word)
    for k in word:
        inst.check_key(k)
    return Elem(inst, {word: coeff}, 1, quotient, rational)


def gen(inst: InstanceSpec, key: str, **kw) -> Elem:
    return word_elem(inst, (key,), **kw)


def tensor_elem(inst: InstanceSpec, terms: Mapping, quotient: bool = False,
                rational: bool = False) -> Elem:
    arity = len(next(iter(terms))) if terms else 2
    return Elem(inst, terms, arity, quotient, rational)


# -- algebra ---------------------------------------------------------------------

def product(a: Elem, b: Elem) -> Elem:
    """Bilinear concatenation (sorted merge in symmetric instances); tensors multiply factorwise."""
    a._compatible(b)
    out: dict = {}
    if a.arity == 1:
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                k = a.inst.normalize(wa + wb)
                out[k] = out.get(k, 0) + ca * cb
    else:
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                k = tuple(a.inst.normalize(x + y) for x, y in zip(ka, kb))
                out[k] = out.get(k, 0) + ca * cb
    return Elem._make(a.inst, out, a.arity, a.quotient, a.rational or b.rational)


def degree(inst: InstanceSpec, word: Iterable[str]) -> int:
    return inst.word_degree(word)


def is_identity_word(inst: InstanceSpec, word: Word) -> bool:
    return all(inst.ident(k) for k in word)


def delta_word(inst: InstanceSpec, word: Word) -> list[tuple[Word, Word, int]]:
    """Aggregated channels of one word in the bialgebra of classes (memoized)."""
    word = inst.normalize(word)
    hit = inst.delta_cache.get(word)
    if hit is not None:
        return hit
    for k in word:
        inst.check_key(k)
    acc: dict = {}
    for left, right, m in inst.factorizations(word):
        key = (inst.normalize(left), inst.normalize(right))
        acc[key] = acc.get(key, 0) + m
    out = sorted((l, r, m) for (l, r), m in acc.items() if m)
    inst.delta_cache[word] = out
    return out


def coproduct(x: Elem) -> Elem:
    """Deconcatenation coproduct; in the Hopf quotient it is the projected one."""
    if x.arity != 1:
        raise ValueError("coproduct of a tensor")
    out: dict = {}
    q = x.quotient
    ident = x.inst.ident
    for w, c in x.terms.items():
        for left, right, m in delta_word(x.inst, w):
            if q:
                left = tuple(k for k in left if not ident(k))
                right = tuple(k for k in right if not ident(k))
            key = (left, right)
            out[key] = out.get(key, 0) + c * m
    return Elem._make(x.inst, out, 2, q, x.rational)


coproduct_iso = coproduct


def counit(x: Elem) -> Coeff:
    if x.arity != 1:
        raise ValueError("counit of a tensor")
    return sum((c for w, c in x.terms.items() if is_identity_word(x.inst, w)), 0)


def hopf_project(x: Elem) -> Elem:
    """Replace every identity class by the unit."""
    if x.quotient:
        return x
    ident = x.inst.ident
    if x.arity == 1:
        terms = [(tuple(k for k in w if not ident(k)), c) for w, c in x.terms.items()]
    else:
        terms = [(tuple(tuple(k for k in w if not ident(k)) for w in key), c)
                 for key, c in x.terms.items()]
    return Elem(x.inst, terms, x.arity, True, x.rational)


def reduced_coproduct(x: Elem) -> Elem:
    """``Delta(x) - x(x)1 - 1(x)x + eps(x) 1(x)1`` in the Hopf quotient."""
    x = hopf_project(x)
    d = dict(coproduct(x).terms)
    for w, c in x.terms.items():
        for key in ((w, ()), ((), w)):
            d[key] = d.get(key, 0) - c
    e = counit(x)
    if e:
        d[((), ())] = d.get(((), ()), 0) + e
    return Elem(x.inst, d, 2, True, x.rational)


def _check_connected(inst: InstanceSpec, key: str) -> None:
    if inst.deg(key) == 0 and not inst.ident(key):
        raise NotConnectedError(
            f"{inst.name}: degree-0 class {key!r} survives the Hopf quotient; no antipode")


def _antipode_gen(inst: InstanceSpec, key: str) -> dict:
    hit = inst.antipode_cache.get(key)
    if hit is not None:
        return hit
    _check_connected(inst, key)
    # S(g) = -g - sum S(x') x''
    acc: dict = {(key,): -1}
    red = reduced_coproduct(word_elem(inst, (key,), quotient=True))
    dk = inst.deg(key)
    for (left, right), c in red.terms.items():
        if inst.word_degree(left) >= dk:
            raise GradingError(f"reduced coproduct of {key!r} has left cofactor {left!r} "
                               f"of degree >= {dk}")
        for w, s in _antipode_word(inst, left).items():
            k = inst.normalize(w + right)
            acc[k] = acc.get(k, 0) - c * s
    out = {k: v for k, v in acc.items() if v}
    inst.antipode_cache[key] = out
    return out


def _antipode_word(inst: InstanceSpec, word: Word) -> dict:
    acc: dict = {(): 1}
    for key in reversed(word):
        s = _antipode_gen(inst, key)
        nxt: dict = {}
        for w1, c1 in acc.items():
            for w2, c2 in s.items():
                k = inst.normalize(w1 + w2)
                nxt[k] = nxt.get(k, 0) + c1 * c2
        acc = {k: v for k, v in nxt.items() if v}
    return acc


def antipode(x: Elem) -> Elem:
    """Antipode of the Hopf quotient (connected graded recursion, memoized)."""
    x = hopf_project(x)
    out: dict = {}
    for w, c in x.terms.items():
        for k, s in _antipode_word(x.inst, w).items():
            out[k] = out.get(k, 0) + c * s
    return Elem._make(x.inst, out, 1, True, x.rational)


def antipode_takeuchi(x: Elem) -> Elem:
    """``S = sum_k (-1)^k m^(k) Dbar^(k)`` on the augmentation ideal plus ``eps``."""
    x = hopf_project(x)
    inst = x.inst
    out: dict = {}
    e = counit(x)
    if e:
        out[()] = e
    level = {(w,): c for w, c in x.terms.items() if w}
    bound = max((inst.word_degree(w) for w in x.terms), default=0) + 1
    k = 1
    while level:
        if k > bound:
            raise GradingError("iterated reduced coproducts do not vanish")
        sign = -1 if k % 2 else 1
        for factors, c in level.items():
            w = inst.normalize(sum(factors, ()))
            out[w] = out.get(w, 0) + sign * c
        nxt: dict = {}
        for factors, c in level.items():
            red = reduced_coproduct(Elem(inst, {factors[-1]: 1}, 1, True, x.rational))
            for (a, b), d in red.terms.items():
                key = factors[:-1] + (a, b)
                nxt[key] = nxt.get(key, 0) + c * d
        level = {f: c for f, c in nxt.items() if c}
        k += 1
    return Elem(inst, out, 1, True, x.rational)


# -- tensor helpers ----------------------------------------------------------------

def apply_factor(t: Elem, i: int, f: Callable[[Elem], Elem]) -> Elem:
    """Apply a linear map ``f`` (element -> element of any arity) to factor ``i``."""
    out: dict = {}
    new_arity = None
    for key, c in t.terms.items():
        img = f(Elem._make(t.inst, {key[i]: 1}, 1, t.quotient, t.rational))
        a = img.arity
        new_arity = t.arity - 1 + a
        for k2, c2 in img.terms.items():
            parts = (k2,) if a == 1 else tuple(k2)
            nk = key[:i] + parts + key[i + 1:]
            out[nk] = out.get(nk, 0) + c * c2
    if new_arity is None:
        new_arity = t.arity + 1
    return Elem._make(t.inst, out, new_arity, t.quotient, t.rational)


def multiply_tensor(t: Elem) -> Elem:
    """``mu``: multiply the factors of a tensor together."""
    out: dict = {}
    for key, c in t.terms.items():
        w = t.inst.normalize(sum(key, ()))
        out[w] = out.get(w, 0) + c
    return Elem._make(t.inst, out, 1, t.quotient, t.rational)


def counit_factor(t: Elem, i: int) -> Elem:
    """Apply the counit to factor ``i`` of an arity-2 tensor."""
    out: dict = {}
    for key, c in t.terms.items():
        if is_identity_word(t.inst, key[i]):
            rest = key[1 - i]
            out[rest] = out.get(rest, 0) + c
    return Elem(t.inst, out, 1, t.quotient, t.rational)


# -- quotient counit and reduced coproduct --------------------------------------------

def counit_quot(x: Elem) -> Fraction:
    """``1/(|Iso X| |Aut X|)`` on identity classes, ``0`` elsewhere; rational mode only."""
    if not x.rational:
        raise CoefficientError("the quotient counit needs rational mode")
    total = Fraction(0)
    for w, c in x.terms.items():
        if is_identity_word(x.inst, w):
            total += Fraction(c, x.inst.iso_count(w) * x.inst.aut_order(w))
    return total


def coproduct_quot(x: Elem) -> Elem:
    """Coproduct on morphisms modulo isomorphism, counting concrete factorizations."""
    if not x.rational:
        raise CoefficientError("the quotient coproduct needs rational mode")
    out: dict = {}
    for w, c in x.terms.items():
        for left, right, m in x.inst.quot_factorizations(x.inst.normalize(w)):
            key = (x.inst.normalize(left), x.inst.normalize(right))
            out[key] = out.get(key, 0) + c * m
    return Elem(x.inst, out, 2, False, True)


def apply_counit_quot(t: Elem, i: int) -> Elem:
    out: dict = {}
    for key, c in t.terms.items():
        v = counit_quot(Elem(t.inst, {key[i]: 1}, 1, False, True))
        if v:
            rest = key[1 - i]
            out[rest] = out.get(rest, 0) + c * v
    return Elem(t.inst, out, 1, False, True)


def coproduct_red(x: Elem) -> Elem:
    """Reduced coproduct ``Delta_beta`` with ``beta = 1/|Aut Z|`` (free middle actions only)."""
    if not x.inst.free_action:
        raise Unsupported(f"{x.inst.name}: the middle automorphism action is not declared free")
    out: dict = {}
    for w, c in x.terms.items():
        for left, right, wt in x.inst.red_channels(x.inst.normalize(w)):
            key = (x.inst.normalize(left), x.inst.normalize(right))
            out[key] = out.get(key, 0) + c * wt
    return Elem(x.inst, out, 2, x.quotient, True)


# -- B_+ ------------------------------------------------------------------------------

def b_plus_apply(inst: InstanceSpec, x: Elem) -> Elem:
    out: dict = {}
    for w, c in x.terms.items():
        k = (inst.b_plus(w),)
        out[k] = out.get(k, 0) + c
    return Elem(inst, out, 1, x.quotient, x.rational)


@dataclass
class BPlusReport:
    codomain: bool
    cocycle: bool
    delta1_coassociative: bool
    mu1_delta1_compatible: bool
    samples: int
    notes: list = field(default_factory=list)


def b_plus_check(inst: InstanceSpec, words: Iterable[Word]) -> BPlusReport:
    """Check the B_+ laws on sample words.

    ``codomain``: B_+ lands on single generators.  ``cocycle``: the Hochschild
    identity ``Delta B_+ = 1 (x) B_+ + (B_+ (x) id) Delta`` (outer factor on the
    left).  The remaining two fields record whether ``Delta_1 = (id (x) B_+) Delta``
    is coassociative and whether ``mu_1 = B_+ mu`` is compatible with it; they
    are reported, not assumed.
    """
    words = list(words)
    codomain = cocycle = coassoc = compat = True
    notes = []
    one = unit(inst)
    bp = lambda e: b_plus_apply(inst, e)
    delta1 = lambda e: apply_factor(coproduct(e), 1, bp)
    for w in words:
        x = word_elem(inst, w)
        b = bp(x)
        if any(len(k) != 1 for k in b.terms):
            codomain = False
        lhs = coproduct(b)
        rhs = tensor_from(one, b) + apply_factor(coproduct(x), 0, bp)
        if lhs != rhs:
            if cocycle:
                notes.append(f"cocycle fails on {w!r}")
            cocycle = False
        g = b
        d1 = delta1(g)
        if apply_factor(d1, 0, delta1) != apply_factor(d1, 1, delta1):
            coassoc = False
    for w1, w2 in zip(words, words[1:]):
        a, b = bp(word_elem(inst, w1)), bp(word_elem(inst, w2))
        m1 = bp(product(a, b))
        lhs = delta1(m1)
        da, db = delta1(a), delta1(b)
        rhs_terms: dict = {}
        for (l1, r1), c1 in da.terms.items():
            for (l2, r2), c2 in db.terms.items():
                left = bp(Elem(inst, {l1 + l2: 1}))
                right = bp(Elem(inst, {r1 + r2: 1}))
                for kl, cl in left.terms.items():
                    for kr, cr in right.terms.items():
                        rhs_terms[(kl, kr)] = rhs_terms.get((kl, kr), 0) + c1 * c2 * cl * cr
        if lhs != Elem(inst, rhs_terms, 2):
            compat = False
    return BPlusReport(codomain, cocycle, coassoc, compat, len(words), notes)


def tensor_from(a: Elem, b: Elem) -> Elem:
    """``a (x) b`` for two arity-1 elements."""
    out: dict = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            out[(wa, wb)] = out.get((wa, wb), 0) + ca * cb
    return Elem(a.inst, out, 2, a.quotient, a.rational or b.rational)


# -- verification -------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    cases: int
    counterexample: str | None = None


@dataclass
class VerifyReport:
    instance: str
    max_degree: int
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def render(self) -> str:
        lines = [f"instance {self.instance}, max degree {self.max_degree}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"  {status} {c.name} ({c.cases} cases)"
            if c.counterexample:
                line += f": {c.counterexample}"
            lines.append(line)
        lines.append("all checks passed" if self.ok else "some checks FAILED")
        return "\n".join(lines)


def _first_diff(a: Elem, b: Elem) -> str:
    keys = sorted(set(a.terms) | set(b.terms))
    for k in keys:
        if a.terms.get(k, 0) != b.terms.get(k, 0):
            return f"term {k!r}: {a.terms.get(k, 0)} vs {b.terms.get(k, 0)}"
    return "equal"


def _threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("FEYNCAT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _map(fn, items, threads):
    if threads <= 1 or len(items) < 2:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _guard(fn):
    def inner(item):
        try:
            return fn(item)
        except InstanceError as exc:
            return f"{type(exc).__name__}: {exc}"
    return inner


def _run(name: str, items: list, fn: Callable, threads: int, describe=repr) -> Check:
    results = _map(_guard(fn), items, threads)
    for item, res in zip(items, results):
        if res is not None:
            return Check(name, False, len(items), f"{describe(item)}: {res}")
    return Check(name, True, len(items))


def check_coassociativity(inst: InstanceSpec, g: str) -> str | None:
    d = coproduct(gen(inst, g))
    lhs = apply_factor(d, 0, coproduct)
    rhs = apply_factor(d, 1, coproduct)
    return None if lhs == rhs else _first_diff(lhs, rhs)


def check_bialgebra(inst: InstanceSpec, a: Word, b: Word) -> str | None:
    ea, eb = word_elem(inst, a), word_elem(inst, b)
    lhs = coproduct(product(ea, eb))
    rhs = product(coproduct(ea), coproduct(eb))
    return None if lhs == rhs else _first_diff(lhs, rhs)


def check_counit(inst: InstanceSpec, w: Word) -> str | None:
    x = word_elem(inst, w)
    d = coproduct(x)
    if counit_factor(d, 0) != x:
        return "left counit law: " + _first_diff(counit_factor(d, 0), x)
    if counit_factor(d, 1) != x:
        return "right counit law: " + _first_diff(counit_factor(d, 1), x)
    return None


def check_counit_quot(inst: InstanceSpec, w: Word) -> str | None:
    x = word_elem(inst, w, rational=True)
    d = coproduct_quot(x)
    for i in (0, 1):
        got = apply_counit_quot(d, i)
        if got != x:
            return f"quotient counit law on factor {i}: " + _first_diff(got, x)
    return None


def check_grouplike(inst: InstanceSpec, w: Word) -> str | None:
    x = word_elem(inst, w)
    d = coproduct(x)
    want = tensor_from(x, x)
    return None if d == want else _first_diff(d, want)


def check_degree(inst: InstanceSpec, w: Word) -> str | None:
    dg = inst.word_degree(w)
    for left, right, m in delta_word(inst, w):
        if inst.word_degree(left) + inst.word_degree(right) != dg:
            return f"channel {left!r} (x) {right!r} breaks degree {dg}"
        if inst.one_comma_left and len(w) == 1 and len(left) != 1:
            return f"left cofactor {left!r} is not a single generator"
    return None


def check_antipode(inst: InstanceSpec, w: Word) -> str | None:
    x = word_elem(inst, w, quotient=True)
    d = coproduct(x)
    want = unit(inst, quotient=True).scale(counit(x))
    left = multiply_tensor(apply_factor(d, 0, antipode))
    if left != want:
        return "mu(S(x)id)Delta: " + _first_diff(left, want)
    right = multiply_tensor(apply_factor(d, 1, antipode))
    if right != want:
        return "mu(id(x)S)Delta: " + _first_diff(right, want)
    return None


def check_takeuchi(inst: InstanceSpec, w: Word) -> str | None:
    x = word_elem(inst, w, quotient=True)
    a, b = antipode(x), antipode_takeuchi(x)
    return None if a == b else _first_diff(a, b)


def basis_words(inst: InstanceSpec, gens: list[str], max_degree: int, limit: int,
                rng: random.Random) -> list[Word]:
    """Identity-free words of degree <= max_degree: all of them if few, else a sample."""
    positive = [g for g in gens if not inst.ident(g) and 0 < inst.deg(g) <= max_degree]
    by_deg: dict[int, list[str]] = {}
    for g in positive:
        by_deg.setdefault(inst.deg(g), []).append(g)
    words: list[Word] = []
    seen = set()

    def extend(prefix: Word, budget: int) -> bool:
        for d in range(1, budget + 1):
            for g in by_deg.get(d, []):
                w = inst.normalize(prefix + (g,))
                if inst.symmetric and w != prefix + (g,):
                    continue
                if w not in seen:
                    seen.add(w)
                    words.append(w)
                    if len(words) > limit:
                        return False
                if not extend(prefix + (g,), budget - d):
                    return False
        return True

    complete = extend((), max_degree)
    if complete:
        return sorted(words)
    words = [(g,) for g in positive]
    extra = set()
    tries = 0
    while len(extra) < limit // 2 and tries < 50 * limit and len(positive) > 0:
        tries += 1
        k = rng.randint(2, 3)
        w = tuple(rng.choice(positive) for _ in range(k))
        if inst.word_degree(w) <= max_degree:
            extra.add(inst.normalize(w))
    return sorted(set(words) | extra)


def sample_pairs(inst: InstanceSpec, gens: list[str], count: int,
                 rng: random.Random, max_degree: int | None = None) -> list[tuple[Word, Word]]:
    pool = [g for g in gens if max_degree is None or inst.deg(g) <= max_degree]
    if not pool:
        return []
    allp = [(a, b) for a in pool for b in pool
            if max_degree is None or inst.deg(a) + inst.deg(b) <= max_degree]
    if allp and len(allp) <= count:
        return [((a,), (b,)) for a, b in allp]
    src = allp if allp else [(a, b) for a in pool for b in pool]
    return [((a,), (b,)) for a, b in rng.sample(src, min(count, len(src)))]


def verify_axioms(inst: InstanceSpec, max_degree: int, *, pairs: int = 200, seed: int = 0,
                  pair_degree: int | None = None, antipode_limit: int = 400,
                  takeuchi_degree: int = 3, threads: int | None = None,
                  quotient_counit: bool | None = None) -> VerifyReport:
    """Run the axiom checks on all generators of degree <= ``max_degree``."""
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    rng = random.Random(seed)
    n = _threads(threads)
    try:
        gens = inst.generators(max_degree)
    except NotImplementedError as exc:
        raise InstanceError(f"{inst.name}: generators are not enumerable") from exc
    checks: list[Check] = []

    one = unit(inst)
    d1 = coproduct(one)
    checks.append(Check("unit group-like", d1 == tensor_from(one, one), 1,
                        None if d1 == tensor_from(one, one) else _first_diff(d1, tensor_from(one, one))))
    checks.append(_run("coassociativity", gens, lambda g: check_coassociativity(inst, g), n))
    pd = max_degree if pair_degree is None else pair_degree
    prs = sample_pairs(inst, gens, pairs, rng, pd)
    checks.append(_run("bialgebra", prs, lambda p: check_bialgebra(inst, *p), n))
    counit_words = [(g,) for g in gens] + [a + b for a, b in prs[:50]]
    checks.append(_run("counit", counit_words, lambda w: check_counit(inst, w), n))
    if quotient_counit is None:
        quotient_counit = not inst.symmetric
    if quotient_counit:
        checks.append(_run("quotient counit", counit_words,
                           lambda w: check_counit_quot(inst, w), n))
    ids = inst.identity_keys()
    id_words = [()] + [tuple(c) for k in range(1, 5)
                       for c in combinations_with_replacement(ids[:4], k)]
    if not inst.symmetric:
        id_words += [tuple(c) for c in iproduct(ids[:3], repeat=2)]
    id_words = sorted(set(inst.normalize(w) for w in id_words))
    checks.append(_run("group-like identities", id_words, lambda w: check_grouplike(inst, w), n))
    checks.append(_run("degree additivity", [(g,) for g in gens],
                       lambda w: check_degree(inst, w), n))
    bw = basis_words(inst, gens, max_degree, antipode_limit, rng)
    checks.append(_run("antipode", bw, lambda w: check_antipode(inst, w), n))
    tw = [w for w in bw if inst.word_degree(w) <= takeuchi_degree]
    checks.append(_run("antipode vs Takeuchi", tw, lambda w: check_takeuchi(inst, w), n))
    return VerifyReport(inst.name, max_degree, checks)


class DropOneChannel(InstanceSpec):
    """Wraps an instance and forgets the last channel of every multi-channel word."""

    def __init__(self, base: InstanceSpec):
        super().__init__()
        self.base = base
        self.name = base.name + "+dropped"
        self.symmetric = base.symmetric
        self.free_action = base.free_action
        self.one_comma_left = base.one_comma_left

    def factorizations(self, word):
        chans = list(self.base.factorizations(word))
        return chans[:-1] if len(chans) > 1 else chans

    def __getattr__(self, item):
        return getattr(self.base, item)

    def validate_key(self, key):
        self.base.validate_key(key)

    def is_identity(self, key):
        return self.base.is_identity(key)

    def degree(self, key):
        return self.base.degree(key)

    def generators(self, max_degree):
        return self.base.generators(max_degree)

    def identity_keys(self):
        return self.base.identity_keys()

    def parse_generator(self, text):
        return self.base.parse_generator(text)

    def display(self, key, fmt="text"):
        return self.base.display(key, fmt)
