"""Backend selection for the hot loops.

The compiled extension is used when it imports; set ``GRIDLOCK_PURE_PYTHON=1``
to force the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("GRIDLOCK_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND = backend.BACKEND

encode = backend.encode
enumerate_states = backend.enumerate_states
maslov = backend.maslov
rectangles = backend.rectangles
