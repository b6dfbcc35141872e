"""Double-basepoint-preserving injections of intervals.

The injection ``{0 < n} -> {0 < 1 < ... < n}`` is written ``(1;0^{n-1};1)``:
position ``j`` of the symbol is ``1`` when ``j`` is in the image.  Gluing
intervals at their basepoints multiplies symbols, so a word ``J(n_1)...J(n_k)``
is the injection of ``{0..k}`` onto the partial sums of ``(n_1, ..., n_k)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product as iproduct

from .base import InstanceError, InstanceSpec, Word

_J = re.compile(r"^\s*J\s*\(\s*(\d+)\s*\)\s*$")
_SYM = re.compile(r"^\s*\(\s*1\s*;\s*([01]*)\s*;\s*1\s*\)\s*$")


@dataclass(frozen=True)
class JoyalSymbol:
    """A symbol ``1 w 1`` over ``{0, 1}``; ``parts`` are the gaps between its 1s."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p < 1 for p in self.parts):
            raise InstanceError("a Joyal symbol needs parts >= 1")

    @classmethod
    def from_string(cls, s: str) -> "JoyalSymbol":
        m = _SYM.match(s)
        bits = ("1" + m.group(1) + "1") if m else s.strip()
        if len(bits) < 2 or set(bits) - {"0", "1"} or bits[0] != "1" or bits[-1] != "1":
            raise InstanceError(f"not a Joyal symbol: {s!r}")
        ones = [i for i, b in enumerate(bits) if b == "1"]
        return cls(tuple(b - a for a, b in zip(ones, ones[1:])))

    @property
    def bits(self) -> str:
        return "1" + "".join("0" * (p - 1) + "1" for p in self.parts)

    @property
    def degree(self) -> int:
        """Operadic degree ``N``: the sum of the parts."""
        return sum(self.parts)

    @property
    def depth(self) -> int:
        """Number of 1s in the symbol."""
        return self.bits.count("1")

    def word(self) -> Word:
        return tuple(joyal_key(p) for p in self.parts)

    def __str__(self) -> str:
        b = self.bits
        return f"(1;{b[1:-1]};1)"


def joyal_key(n: int) -> str:
    return f"J({n})"


def joyal_arity(key: str) -> int:
    m = _J.match(key)
    if not m or int(m.group(1)) < 1:
        raise InstanceError(f"not a Joyal generator: {key!r}")
    return int(m.group(1))


class JoyalInjections(InstanceSpec):
    """Channels are the intermediate images ``P <= S <= {0..N}``.

    The left cofactor records how many gaps of ``S`` lie in each interval of
    ``P``; the right cofactor is the gaps of ``S``.
    """

    name = "joyal"
    symmetric = False
    acceptance_degree = 6

    def validate_key(self, key: str) -> None:
        if key != joyal_key(joyal_arity(key)):
            raise InstanceError(f"non-canonical spelling {key!r}; use J(n)")

    def arity(self, key: str) -> int:
        return joyal_arity(key)

    def is_identity(self, key: str) -> bool:
        return joyal_arity(key) == 1

    def degree(self, key: str) -> int:
        return joyal_arity(key) - 1

    def factorizations(self, word: Word):
        ns = [joyal_arity(k) for k in word]
        image = [0]
        for n in ns:
            image.append(image[-1] + n)
        N = image[-1]
        if N == 0:
            yield (), (), 1
            return
        pset = set(image)
        optional = [j for j in range(N + 1) if j not in pset]
        for bits in iproduct((0, 1), repeat=len(optional)):
            S = sorted(pset | {j for j, b in zip(optional, bits) if b})
            right = tuple(joyal_key(b - a) for a, b in zip(S, S[1:]))
            pos = {s: i for i, s in enumerate(S)}
            left = tuple(joyal_key(pos[b] - pos[a]) for a, b in zip(image, image[1:]))
            yield left, right, 1

    def generators(self, max_degree: int) -> list[str]:
        return [joyal_key(n) for n in range(1, max_degree + 2)]

    def identity_keys(self) -> list[str]:
        return [joyal_key(1)]

    def parse_generator(self, text: str) -> str:
        if _J.match(text):
            return joyal_key(joyal_arity(text))
        sym = JoyalSymbol.from_string(text)
        if len(sym.parts) != 1:
            raise InstanceError(f"{text!r} is a product of {len(sym.parts)} generators; "
                                "write it with '*'")
        return joyal_key(sym.parts[0])

    def grammar(self) -> str:
        return "J(n), n >= 1, or a symbol (1;0...0;1); J(1) = (1;;1) is the identity"

    def display(self, key: str, fmt: str = "text") -> str:
        n = joyal_arity(key)
        if fmt == "latex":
            return rf"(1;0^{{{n - 1}}};1)"
        return key

    def depth(self, word: Word) -> int:
        return JoyalSymbol(tuple(joyal_arity(k) for k in word)).depth if word else 0


def joyal_injection_instance() -> JoyalInjections:
    return JoyalInjections()
