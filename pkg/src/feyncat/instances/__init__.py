"""Concrete instances and lookup by name."""

from __future__ import annotations

from .base import InstanceError, InstanceSpec, Unsupported
from .decorate import DecoratedInstance, DecorationFunctor, TrivialDecoration, decorate_instance
from .graphs import (GraphInstance, MoticData, ck_graph_instance, motic_predicate,
                     one_pi_betti, one_pi_predicate)
from .joyal import JoyalInjections, JoyalSymbol, joyal_injection_instance
from .nerve import FiniteCategory, complete_groupoid, nerve_instance, substitute
from .sequences import sequence_instance
from .surjections import OrderedSurjections, SymmetricSurjections, surjections_instance
from .trees import TreeInstance, amputate, ck_tree_instance

NAMES = ("surj-ord", "surj-sym", "joyal", "seq:<alphabet>", "nerve:<file>",
         "ck-tree-planar", "ck-tree-sym", "ck-tree-planar-amp", "ck-tree-sym-amp",
         "ck-graph-core", "ck-graph-1pi", "ck-graph-motic")

_cache: dict[str, InstanceSpec] = {}


def get_instance(name: str) -> InstanceSpec:
    """Instance by name; instances are cached so memo tables are shared."""
    if name in _cache:
        return _cache[name]
    if name == "surj-ord":
        inst = surjections_instance("ordered")
    elif name == "surj-sym":
        inst = surjections_instance("symmetric")
    elif name == "joyal":
        inst = joyal_injection_instance()
    elif name.startswith("seq:"):
        inst = sequence_instance(name[4:])
    elif name.startswith("nerve:"):
        inst = nerve_instance(name[6:])
    elif name.startswith("ck-tree-"):
        rest = name[len("ck-tree-"):]
        amp = rest.endswith("-amp")
        sym = rest[:-4] if amp else rest
        if sym not in ("planar", "sym"):
            raise InstanceError(f"unknown instance {name!r}")
        inst = ck_tree_instance("planar" if sym == "planar" else "symmetric",
                                "amputated" if amp else "labeled")
    elif name == "ck-graph-core":
        inst = ck_graph_instance("core")
    elif name == "ck-graph-1pi":
        inst = ck_graph_instance("one_pi")
    elif name == "ck-graph-motic":
        inst = ck_graph_instance("motic")
    else:
        raise InstanceError(f"unknown instance {name!r}; known: {', '.join(NAMES)}")
    _cache[name] = inst
    return inst


__all__ = ["DecoratedInstance", "DecorationFunctor", "FiniteCategory", "GraphInstance",
           "InstanceError", "InstanceSpec", "JoyalInjections", "JoyalSymbol", "MoticData",
           "NAMES", "OrderedSurjections", "SymmetricSurjections", "TreeInstance",
           "TrivialDecoration", "Unsupported", "amputate", "ck_graph_instance",
           "ck_tree_instance", "complete_groupoid", "decorate_instance", "get_instance",
           "joyal_injection_instance", "motic_predicate", "nerve_instance", "one_pi_betti",
           "one_pi_predicate", "sequence_instance", "substitute", "surjections_instance"]
