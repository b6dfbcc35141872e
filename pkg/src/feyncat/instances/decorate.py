"""Decorated instances: generators are pairs of a base generator and a decoration.

A :class:`DecorationFunctor` supplies the decorations of each base generator
and says how a decoration splits along a factorization: the inner factors
keep restrictions of it, the outer factor gets the transported one.  The
base must be non-symmetric and expose ``arity`` so that the right cofactor
of a channel can be grouped by the left letters it feeds.
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence

from .base import InstanceError, InstanceSpec, Word


class DecorationFunctor:
    name = "functor"

    def decorations(self, base_key: str) -> Iterable[Any]:
        raise NotImplementedError

    def validate(self, base_key: str, deco) -> None:
        """Raise :class:`InstanceError` when ``deco`` does not decorate ``base_key``."""

    def split(self, base_key: str, deco, left_key: str, right_block: Sequence[str]):
        """Return ``(left_deco, right_decos)`` for one letter of a channel."""
        raise NotImplementedError

    def join(self, left_key: str, left_deco, right_block: Sequence[str], right_decos) -> Any:
        """Recover the decoration of the composite (functoriality check)."""
        raise NotImplementedError

    def encode(self, base_key: str, deco) -> str:
        raise NotImplementedError

    def decode(self, key: str) -> tuple[str, Any]:
        raise NotImplementedError

    def parse(self, text: str) -> str:
        return self.encode(*self.decode(text))

    def grammar(self) -> str:
        return ""


class TrivialDecoration(DecorationFunctor):
    """One decoration per object; the decorated instance is the base itself."""

    name = "trivial"

    def __init__(self, base: InstanceSpec):
        self.base = base

    def decorations(self, base_key):
        return [()]

    def split(self, base_key, deco, left_key, right_block):
        return (), [()] * len(right_block)

    def join(self, left_key, left_deco, right_block, right_decos):
        return ()

    def encode(self, base_key, deco):
        return base_key

    def decode(self, key):
        return key, ()

    def parse(self, text):
        return self.base.parse_generator(text)

    def grammar(self):
        return self.base.grammar()


class DecoratedInstance(InstanceSpec):
    symmetric = False

    def __init__(self, base: InstanceSpec, functor: DecorationFunctor, name: str | None = None):
        super().__init__()
        if base.symmetric or not hasattr(base, "arity"):
            raise InstanceError("decoration needs a non-symmetric base with arities")
        self.base = base
        self.functor = functor
        self.name = name or f"{base.name}+{functor.name}"
        self.acceptance_degree = base.acceptance_degree

    def validate_key(self, key: str) -> None:
        b, d = self.functor.decode(key)
        self.base.check_key(b)
        self.functor.validate(b, d)
        if self.functor.encode(b, d) != key:
            raise InstanceError(f"non-canonical spelling {key!r}")

    def base_key(self, key: str) -> str:
        return self.functor.decode(key)[0]

    def arity(self, key: str) -> int:
        return self.base.arity(self.base_key(key))

    def is_identity(self, key: str) -> bool:
        return self.base.is_identity(self.base_key(key))

    def degree(self, key: str) -> int:
        return self.base.degree(self.base_key(key))

    def _split_channel(self, letters, left: Word, right: Word):
        if len(left) != len(letters):
            raise InstanceError("base channel is not letterwise; cannot decorate")
        F = self.functor
        out_l, out_r = [], []
        j = 0
        for (b, d), lk in zip(letters, left):
            k = self.base.arity(lk)
            block = right[j:j + k]
            j += k
            ld, rds = F.split(b, d, lk, block)
            out_l.append(F.encode(lk, ld))
            out_r.extend(F.encode(rk, rd) for rk, rd in zip(block, rds))
        if j != len(right):
            raise InstanceError("right cofactor does not match the left arities")
        return tuple(out_l), tuple(out_r)

    def factorizations(self, word: Word):
        letters = [self.functor.decode(k) for k in word]
        base_word = tuple(b for b, _ in letters)
        for left, right, m in self.base.factorizations(base_word):
            l, r = self._split_channel(letters, left, right)
            yield l, r, m

    def check_functorial(self, keys: Iterable[str]) -> None:
        """Split then join must return the original decoration on every channel."""
        F = self.functor
        for key in keys:
            b, d = F.decode(key)
            for left, right, _ in self.base.factorizations((b,)):
                ld, rds = F.split(b, d, left[0], right)
                back = F.join(left[0], ld, right, rds)
                if back != d:
                    raise InstanceError(
                        f"decoration transport is not functorial on {key!r}: "
                        f"{left[0]} o {right} gives {back!r}")

    def generators(self, max_degree: int) -> list[str]:
        out = []
        for b in self.base.generators(max_degree):
            out.extend(self.functor.encode(b, d) for d in self.functor.decorations(b))
        return sorted(out)

    def identity_keys(self) -> list[str]:
        out = []
        for b in self.base.identity_keys():
            out.extend(self.functor.encode(b, d) for d in self.functor.decorations(b))
        return sorted(out)

    def parse_generator(self, text: str) -> str:
        key = self.functor.parse(text)
        self.check_key(key)
        return key

    def grammar(self) -> str:
        return self.functor.grammar()

    def display(self, key: str, fmt: str = "text") -> str:
        if isinstance(self.functor, TrivialDecoration):
            return self.base.display(key, fmt)
        return key


def decorate_instance(base: InstanceSpec, functor: DecorationFunctor,
                      name: str | None = None, check_degree: int = 3) -> DecoratedInstance:
    inst = DecoratedInstance(base, functor, name)
    inst.check_functorial(inst.generators(check_degree))
    return inst
