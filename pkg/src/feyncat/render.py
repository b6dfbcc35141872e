"""Text, LaTeX and JSON forms of elements.

Terms are always listed in lexicographic order of their class keys, so the
same element renders to the same bytes every time.  The unit renders as
``1`` in every format (``1`` is also valid JSON and parses back to the unit).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .hopf import Elem
from .instances.base import InstanceError, InstanceSpec

FORMATS = ("text", "latex", "json")


def _is_unit(x: Elem) -> bool:
    one = ((),) * x.arity if x.arity > 1 else ()
    return x.terms == {one: 1}


def _coeff_text(c, first: bool) -> tuple[str, str]:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    mag = "" if a == 1 else f"{a} "
    if first:
        return ("-" if sign == "-" else ""), mag
    return f" {sign} ", mag


def _word_text(inst: InstanceSpec, w) -> str:
    return " * ".join(inst.display(k, "text") for k in w) if w else "1"


def _word_latex(inst: InstanceSpec, w) -> str:
    return r" \cdot ".join(inst.display(k, "latex") for k in w) if w else "1"


def _latex_coeff(a) -> str:
    a = Fraction(a)
    if a.denominator == 1:
        return str(a.numerator)
    return rf"\frac{{{a.numerator}}}{{{a.denominator}}}"


def render(x: Elem, fmt: str = "text") -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    if fmt == "json":
        return to_json(x)
    if not x.terms:
        return "0"
    if _is_unit(x) and x.arity == 1:
        return "1"
    inst = x.inst
    parts = []
    for i, (key, c) in enumerate(sorted(x.terms.items())):
        words = (key,) if x.arity == 1 else key
        if fmt == "text":
            sep, mag = _coeff_text(c, i == 0)
            body = " (x) ".join(_word_text(inst, w) for w in words)
            parts.append(sep + mag + body)
        else:
            sign = "-" if c < 0 else ("+" if i else "")
            a = abs(c)
            mag = "" if a == 1 else _latex_coeff(a) + r"\,"
            body = r" \otimes ".join(_word_latex(inst, w) for w in words)
            parts.append((f" {sign} " if i else sign) + mag + body)
    return "".join(parts)


def to_obj(x: Elem):
    if x.arity == 1 and _is_unit(x):
        return 1
    out = []
    for key, c in sorted(x.terms.items()):
        if x.arity == 1:
            out.append({"word": list(key), "coeff": str(c)})
        elif x.arity == 2:
            out.append({"left": list(key[0]), "right": list(key[1]), "coeff": str(c)})
        else:
            out.append({"factors": [list(w) for w in key], "coeff": str(c)})
    return out


def to_json(x: Elem) -> str:
    return json.dumps(to_obj(x), separators=(",", ":"), ensure_ascii=False)


def from_obj(inst: InstanceSpec, obj, quotient: bool = False, rational: bool | None = None) -> Elem:
    if obj == 1 and not isinstance(obj, bool):
        return Elem(inst, {(): 1}, 1, quotient, bool(rational))
    if not isinstance(obj, list):
        raise InstanceError("element JSON must be a list of terms or 1")
    terms = []
    arity = None
    for t in obj:
        if not isinstance(t, dict) or "coeff" not in t:
            raise InstanceError(f"malformed term {t!r}")
        try:
            c = Fraction(str(t["coeff"]))
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceError(f"bad coefficient {t['coeff']!r}") from exc
        if "word" in t:
            key, a = tuple(t["word"]), 1
        elif "left" in t and "right" in t:
            key, a = (tuple(t["left"]), tuple(t["right"])), 2
        elif "factors" in t:
            key = tuple(tuple(w) for w in t["factors"])
            a = len(key)
        else:
            raise InstanceError(f"malformed term {t!r}")
        if arity is not None and a != arity:
            raise InstanceError("terms of different tensor arity")
        arity = a
        for w in (key,) if a == 1 else key:
            for k in w:
                if not isinstance(k, str):
                    raise InstanceError(f"class keys are strings, got {k!r}")
                inst.check_key(k)
        terms.append((key, c))
    rat = any(c.denominator != 1 for _, c in terms) if rational is None else rational
    return Elem(inst, [(k, c if rat else int(c)) for k, c in terms], arity or 1, quotient, rat)


def from_json(inst: InstanceSpec, text: str, quotient: bool = False,
              rational: bool | None = None) -> Elem:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed element JSON: {exc}") from exc
    return from_obj(inst, obj, quotient, rational)
