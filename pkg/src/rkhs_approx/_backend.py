"""Selects the Gram-assembly implementation at import time.

Prefers the compiled extension; falls back to pure NumPy. Set the
environment variable ``RKHS_APPROX_NO_EXT=1`` to force the fallback
(useful for benchmarking and for testing both code paths).
"""

import os

from . import _gram_numpy

if os.environ.get("RKHS_APPROX_NO_EXT", ""):
    impl = _gram_numpy
    COMPILED = False
else:
    try:
        from . import _gramext as impl  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        impl = _gram_numpy
        COMPILED = False


def backend_name() -> str:
    return "compiled" if COMPILED else "numpy"
