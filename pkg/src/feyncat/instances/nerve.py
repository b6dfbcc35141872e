"""The colored operad of a finite category.

Colors are morphisms; an operation of arity ``n`` is a composable chain
``(f_1, ..., f_n)`` (``f_1`` first) with output color its composite.
Substituting a chain for one of its entries is operadic composition.  The
instance decorates ordered surjections by chains.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .base import InstanceError
from .decorate import DecorationFunctor, DecoratedInstance, decorate_instance
from .surjections import OrderedSurjections, pi, pi_arity

_CHAIN = re.compile(r"^\s*chain\s*\((.*)\)\s*$")
_BAD = set("(),*+ \t")


class CategoryError(InstanceError):
    """An inconsistent composition table."""


@dataclass
class FiniteCategory:
    objects: tuple[str, ...]
    #: morphism name -> (source, target)
    morphisms: Mapping[str, tuple[str, str]]
    #: object -> identity morphism
    identities: Mapping[str, str]
    #: (f, g) -> "f then g" for composable f: X -> Y, g: Y -> Z
    table: Mapping[tuple[str, str], str] = field(default_factory=dict)

    def __post_init__(self):
        self.check()

    def src(self, f: str) -> str:
        return self.morphisms[f][0]

    def tgt(self, f: str) -> str:
        return self.morphisms[f][1]

    def then(self, f: str, g: str) -> str:
        try:
            return self.table[(f, g)]
        except KeyError:
            if self.tgt(f) != self.src(g):
                raise CategoryError(f"{f} and {g} are not composable") from None
            raise CategoryError(f"composition of {f} then {g} is missing") from None

    def composite(self, chain: Iterable[str]) -> str:
        chain = list(chain)
        if not chain:
            raise CategoryError("empty chain")
        acc = chain[0]
        for g in chain[1:]:
            acc = self.then(acc, g)
        return acc

    def check(self) -> None:
        objs = set(self.objects)
        for f, (a, b) in self.morphisms.items():
            if set(f) & _BAD or not f:
                raise CategoryError(f"morphism name {f!r} contains a reserved character")
            if a not in objs or b not in objs:
                raise CategoryError(f"morphism {f} has an unknown endpoint")
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.morphisms.get(i) != (x, x):
                raise CategoryError(f"missing identity for object {x}")
        for f in self.morphisms:
            for g in self.morphisms:
                if self.tgt(f) != self.src(g):
                    continue
                h = self.then(f, g)
                if self.morphisms.get(h) != (self.src(f), self.tgt(g)):
                    raise CategoryError(f"{f} then {g} = {h} has the wrong type")
        for f in self.morphisms:
            if self.then(self.identities[self.src(f)], f) != f or \
                    self.then(f, self.identities[self.tgt(f)]) != f:
                raise CategoryError(f"identity law fails at {f}")
        for f in self.morphisms:
            for g in self.morphisms:
                if self.tgt(f) != self.src(g):
                    continue
                for h in self.morphisms:
                    if self.tgt(g) != self.src(h):
                        continue
                    if self.then(self.then(f, g), h) != self.then(f, self.then(g, h)):
                        raise CategoryError(f"composition is not associative at {f},{g},{h}")

    def chains(self, n: int) -> list[tuple[str, ...]]:
        """Composable chains of length ``n >= 1``, in lexicographic order."""
        out = [(f,) for f in sorted(self.morphisms)]
        for _ in range(n - 1):
            out = [c + (g,) for c in out for g in sorted(self.morphisms)
                   if self.tgt(c[-1]) == self.src(g)]
        return out

    def is_chain(self, chain) -> bool:
        return all(f in self.morphisms for f in chain) and all(
            self.tgt(a) == self.src(b) for a, b in zip(chain, chain[1:]))

    # -- constructors ---------------------------------------------------------
    @classmethod
    def from_obj(cls, obj: Mapping) -> "FiniteCategory":
        try:
            objects = tuple(str(x) for x in obj["objects"])
            morphisms = {str(k): (str(v[0]), str(v[1])) for k, v in obj["morphisms"].items()}
            identities = {str(k): str(v) for k, v in obj["identities"].items()}
            table = {}
            for row in obj.get("compose", []):
                f, g, h = (str(x) for x in row)
                table[(f, g)] = h
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise CategoryError(f"malformed category description: {exc}") from exc
        # composites with an identity may be left implicit
        for x, i in identities.items():
            for f, (a, b) in morphisms.items():
                if b == x:
                    table.setdefault((f, i), f)
                if a == x:
                    table.setdefault((i, f), f)
        return cls(objects, morphisms, identities, table)

    @classmethod
    def from_json(cls, text: str) -> "FiniteCategory":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CategoryError(f"malformed category JSON: {exc}") from exc
        return cls.from_obj(obj)

    def to_obj(self) -> dict:
        return {
            "objects": list(self.objects),
            "morphisms": {f: list(st) for f, st in sorted(self.morphisms.items())},
            "identities": dict(sorted(self.identities.items())),
            "compose": [[f, g, h] for (f, g), h in sorted(self.table.items())],
        }


def complete_groupoid(objects: Iterable[str]) -> FiniteCategory:
    """Exactly one morphism ``x>y`` between any two objects."""
    objs = tuple(str(x) for x in objects)
    name = lambda a, b: f"{a}>{b}"
    mors = {name(a, b): (a, b) for a in objs for b in objs}
    ids = {a: name(a, a) for a in objs}
    table = {(name(a, b), name(b, c)): name(a, c) for a in objs for b in objs for c in objs}
    return FiniteCategory(objs, mors, ids, table)


def terminal_category() -> FiniteCategory:
    return FiniteCategory(("*",), {"1": ("*", "*")}, {"*": "1"}, {("1", "1"): "1"})


def substitute(cat: FiniteCategory, chain, i: int, sub) -> tuple[str, ...]:
    """Replace entry ``i`` of ``chain`` by ``sub``, whose composite must equal it."""
    chain, sub = tuple(chain), tuple(sub)
    if not cat.is_chain(chain) or not cat.is_chain(sub):
        raise CategoryError("not a composable chain")
    if cat.composite(sub) != chain[i]:
        raise CategoryError(f"chain {sub} does not compose to {chain[i]}")
    return chain[:i] + sub + chain[i + 1:]


def chain_key(chain) -> str:
    return "chain(" + ",".join(chain) + ")"


class ChainDecoration(DecorationFunctor):
    name = "chains"

    def __init__(self, cat: FiniteCategory):
        self.cat = cat

    def decorations(self, base_key):
        return self.cat.chains(pi_arity(base_key))

    def validate(self, base_key, deco):
        if len(deco) != pi_arity(base_key) or not self.cat.is_chain(deco):
            raise InstanceError(f"{deco!r} is not a composable chain")

    def split(self, base_key, deco, left_key, right_block):
        rights, j = [], 0
        for rk in right_block:
            k = pi_arity(rk)
            rights.append(tuple(deco[j:j + k]))
            j += k
        left = tuple(self.cat.composite(r) for r in rights)
        return left, rights

    def join(self, left_key, left_deco, right_block, right_decos):
        out: tuple = tuple(left_deco)
        # substitute from the back so indices stay valid
        for i in reversed(range(len(right_decos))):
            try:
                out = substitute(self.cat, out, i, right_decos[i])
            except CategoryError:
                return None
        return out

    def encode(self, base_key, deco):
        return chain_key(deco)

    def decode(self, key):
        m = _CHAIN.match(key)
        if not m or not m.group(1).strip():
            raise InstanceError(f"not a chain: {key!r}")
        vals = tuple(x.strip() for x in m.group(1).split(","))
        return pi(len(vals)), vals

    def grammar(self):
        return "chain(f_1,...,f_n), n >= 1, composable left to right; chain(f) are identities"


def nerve_instance(category: FiniteCategory | str | Path, name: str | None = None) -> DecoratedInstance:
    if isinstance(category, (str, Path)):
        p = Path(category)
        try:
            text = p.read_text()
        except OSError as exc:
            raise InstanceError(f"cannot read category file {p}: {exc}") from exc
        category = FiniteCategory.from_json(text)
        name = name or f"nerve:{p}"
    inst = decorate_instance(OrderedSurjections(), ChainDecoration(category),
                             name=name or "nerve")
    inst.acceptance_degree = 5
    return inst
