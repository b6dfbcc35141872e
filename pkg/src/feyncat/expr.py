"""Inline expressions: sums of coefficient-weighted products of generators.

::

    expr   := term (('+' | '-') term)*
    term   := ['-'] [coeff ['*']] factor ('*' factor)*  |  ['-'] coeff
    coeff  := integer | integer '/' integer
    factor := '1' | generator

Generators use the instance grammar (``pi(3)``, ``ladder(2)``,
``seq(a,b,c)``, ``banana(2)``, ...).  Brackets and braces nest, so commas,
spaces or minus signs inside them belong to the generator.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .hopf import Elem
from .instances.base import InstanceError, InstanceSpec

_NUM = re.compile(r"^\d+(/\d+)?$")
_OPEN, _CLOSE = "([{", ")]}"


def tokenize(text: str) -> list[str]:
    toks: list[str] = []
    cur: list[str] = []
    depth = 0

    def flush():
        if cur:
            toks.append("".join(cur))
            cur.clear()

    for ch in text:
        if depth == 0 and ch.isspace():
            flush()
        elif depth == 0 and ch in "+*":
            flush()
            toks.append(ch)
        elif depth == 0 and ch == "-" and not cur:
            toks.append(ch)
        else:
            if ch in _OPEN:
                depth += 1
            elif ch in _CLOSE:
                depth -= 1
                if depth < 0:
                    raise InstanceError(f"unbalanced brackets in {text!r}")
            cur.append(ch)
    if depth:
        raise InstanceError(f"unbalanced brackets in {text!r}")
    flush()
    return toks


def parse_expr(inst: InstanceSpec, text: str, quotient: bool = False,
               rational: bool | None = None) -> Elem:
    toks = tokenize(text)
    if not toks:
        raise InstanceError("empty expression")
    terms: list[tuple[tuple, Fraction]] = []
    i = 0
    sign = 1
    expect_term = True
    while i < len(toks):
        t = toks[i]
        if expect_term:
            if t in "+-" and len(t) == 1:
                if t == "-":
                    sign = -sign
                i += 1
                continue
            coeff = Fraction(sign)
            word: list[str] = []
            if _NUM.match(t):
                try:
                    coeff *= Fraction(t)
                except ZeroDivisionError as exc:
                    raise InstanceError(f"zero denominator in {t!r}") from exc
                i += 1
                if i < len(toks) and toks[i] == "*":
                    i += 1
                    if i >= len(toks):
                        raise InstanceError("dangling '*'")
            while i < len(toks) and toks[i] not in ("+", "-"):
                f = toks[i]
                if f == "*":
                    raise InstanceError("unexpected '*'")
                if _NUM.match(f):
                    coeff *= Fraction(f)
                else:
                    word.append(inst.parse_generator(f))
                i += 1
                if i < len(toks) and toks[i] == "*":
                    i += 1
                    if i >= len(toks) or toks[i] in ("+", "-", "*"):
                        raise InstanceError("dangling '*'")
                elif i < len(toks) and toks[i] not in ("+", "-"):
                    raise InstanceError(f"missing operator before {toks[i]!r}")
            terms.append((tuple(word), coeff))
            sign = 1
            expect_term = False
        else:
            if t == "+":
                sign = 1
            elif t == "-":
                sign = -1
            else:
                raise InstanceError(f"expected '+' or '-' before {t!r}")
            expect_term = True
            i += 1
    if expect_term:
        raise InstanceError("expression ends with an operator")
    rat = any(c.denominator != 1 for _, c in terms) if rational is None else rational
    return Elem(inst, [(w, c if rat else int(c)) for w, c in terms], 1, quotient, rat)
