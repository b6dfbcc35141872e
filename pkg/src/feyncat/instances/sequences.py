"""Sequences over an alphabet as angle decorations of ordered surjections.

The corolla with ``n`` inputs has ``n + 1`` angles, so ``pi(n)`` is
decorated by sequences ``(a_0, ..., a_n)``.  Along a factorization the inner
factors keep the consecutive subsequences and the outer factor keeps the
values at the cut points.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import product as iproduct

from .base import InstanceError
from .decorate import DecorationFunctor, DecoratedInstance, decorate_instance
from .surjections import OrderedSurjections, pi, pi_arity

_SEQ = re.compile(r"^\s*seq\s*\((.*)\)\s*$")
_BAD = set("(),*+ \t")


def parse_alphabet(spec: str) -> tuple[str, ...]:
    s = spec.strip()
    if s.startswith("{") and s.endswith("}"):
        s = s[1:-1]
    letters = [x.strip() for x in s.split(",")] if "," in s else list(s)
    letters = [x for x in letters if x]
    if not letters:
        raise InstanceError("the alphabet must be nonempty")
    for x in letters:
        if set(x) & _BAD:
            raise InstanceError(f"alphabet letter {x!r} contains a reserved character")
    return tuple(sorted(set(letters)))


def seq_key(values) -> str:
    return "seq(" + ",".join(values) + ")"


class AngleDecoration(DecorationFunctor):
    def __init__(self, alphabet):
        self.alphabet = tuple(alphabet)
        self._letters = set(self.alphabet)
        self.name = "angles"

    def decorations(self, base_key):
        return iproduct(self.alphabet, repeat=pi_arity(base_key) + 1)

    def validate(self, base_key, deco):
        if len(deco) != pi_arity(base_key) + 1:
            raise InstanceError("a sequence decorating pi(n) has n + 1 entries")
        for x in deco:
            if x not in self._letters:
                raise InstanceError(f"entry {x!r} is not in the alphabet {self.alphabet}")

    def split(self, base_key, deco, left_key, right_block):
        cuts = [0]
        for rk in right_block:
            cuts.append(cuts[-1] + pi_arity(rk))
        left = tuple(deco[c] for c in cuts)
        rights = [tuple(deco[a:b + 1]) for a, b in zip(cuts, cuts[1:])]
        return left, rights

    def join(self, left_key, left_deco, right_block, right_decos):
        out = list(right_decos[0][:1]) if right_decos else []
        for i, r in enumerate(right_decos):
            if r[0] != left_deco[i] or r[-1] != left_deco[i + 1]:
                return None
            out.extend(r[1:])
        return tuple(out)

    def encode(self, base_key, deco):
        return seq_key(deco)

    def decode(self, key):
        return _decode_seq(key)

    def grammar(self):
        return ("seq(a_0,...,a_n), n >= 1, entries from {" + ",".join(self.alphabet)
                + "}; seq(a,b) are identities")


@lru_cache(maxsize=None)
def _decode_seq(key: str):
    m = _SEQ.match(key)
    if not m:
        raise InstanceError(f"not a sequence: {key!r}")
    vals = tuple(x.strip() for x in m.group(1).split(",")) if m.group(1).strip() else ()
    if len(vals) < 2:
        raise InstanceError("a sequence needs at least two entries")
    return pi(len(vals) - 1), vals


def sequence_instance(alphabet) -> DecoratedInstance:
    letters = parse_alphabet(alphabet) if isinstance(alphabet, str) else tuple(sorted(set(alphabet)))
    if not letters:
        raise InstanceError("the alphabet must be nonempty")
    inst = decorate_instance(OrderedSurjections(), AngleDecoration(letters),
                             name="seq:" + ",".join(letters))
    inst.acceptance_degree = 6
    return inst


def sequence_coproduct_oracle(values) -> dict:
    """Direct cut formula: ``sum over 0 = i_0 < ... < i_k = n`` of outer ⊗ pieces."""
    n = len(values) - 1
    out: dict = {}
    for bits in iproduct((0, 1), repeat=max(n - 1, 0)):
        cuts = [0] + [i for i, b in enumerate(bits, start=1) if b] + [n]
        left = (seq_key(values[c] for c in cuts),)
        right = tuple(seq_key(values[a:b + 1]) for a, b in zip(cuts, cuts[1:]))
        out[(left, right)] = out.get((left, right), 0) + 1
    return out
