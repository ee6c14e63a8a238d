"""Kernel backend selection.

The compiled kernel is used when it was built; setting
``GR1CORES_PURE_PYTHON=1`` forces the numpy implementation.
"""

import os

from . import _cpre_py

try:
    from . import _cpre as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and not os.environ.get("GR1CORES_PURE_PYTHON"):
    BACKEND = "cython"
    cpre = _compiled.cpre
else:
    BACKEND = "python"
    cpre = _cpre_py.cpre


def compiled_kernel():
    """The compiled cpre, or None when the extension is unavailable."""
    return None if _compiled is None else _compiled.cpre
