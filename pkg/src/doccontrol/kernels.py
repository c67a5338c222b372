"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set ``DOCCONTROL_PURE_PYTHON=1`` before import to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
hopcroft_karp = _pykernels.hopcroft_karp
ordered_augment = _pykernels.ordered_augment

if not os.environ.get("DOCCONTROL_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        _ckernels = None
    else:
        BACKEND = "cython"
        hopcroft_karp = _ckernels.hopcroft_karp
        ordered_augment = _ckernels.ordered_augment


def backends():
    """Available ``{name: module}`` pairs, for benchmarks and cross-checks."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels as ck
    except ImportError:
        pass
    else:
        found["cython"] = ck
    return found
