"""Selects the compiled canonical-labeling kernel, falling back to pure Python.

Set ``FEYNCAT_PURE=1`` to force the pure-Python kernel.
"""

from __future__ import annotations

import os

from . import _canon_py

IMPLEMENTATION = "python"
canonical_labeling = _canon_py.canonical_labeling

if os.environ.get("FEYNCAT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _canon_c  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        canonical_labeling = _canon_c.canonical_labeling
        IMPLEMENTATION = "cython"
