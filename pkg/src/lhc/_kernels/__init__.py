"""Kernel backend selection.

Prefers the compiled extension; falls back to the bit-identical pure-Python
mirror when it is missing or when LHC_PURE_PYTHON=1 is set.
"""

import os

if os.environ.get("LHC_PURE_PYTHON"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl

backend_name = _impl.backend_name
cosine_matrix = _impl.cosine_matrix
csr_matvec = _impl.csr_matvec
csr_rmatvec = _impl.csr_rmatvec
