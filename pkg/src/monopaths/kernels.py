"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``MONOPATHS_PURE=1`` to force the fallback.
"""

import os

from . import _pykernels as pure

try:
    if os.environ.get("MONOPATHS_PURE"):
        raise ImportError("pure kernels requested")
    from . import _ckernels as compiled
except ImportError:
    compiled = None

impl = compiled if compiled is not None else pure
BACKEND = "cython" if compiled is not None else "python"

path_end_table = impl.path_end_table
rooted_path_table = impl.rooted_path_table
cycle_flags = impl.cycle_flags
canonical_codes = impl.canonical_codes
split_bb = impl.split_bb
