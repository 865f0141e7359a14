"""Hot numeric kernels: compiled Cython backend with a pure-numpy fallback.

The backend is picked once at import. Set MODHATE_KERNELS=py to force the
fallback or MODHATE_KERNELS=c to require the extension (ImportError if it
was not built).
"""

import os

_choice = os.environ.get("MODHATE_KERNELS", "").strip().lower()
if _choice not in ("", "c", "py"):
    raise ImportError(f"MODHATE_KERNELS must be 'c' or 'py', got {_choice!r}")

if _choice == "py":
    from modhate._kernels import pykernels as _impl
else:
    try:
        from modhate._kernels import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "c":
            raise
        from modhate._kernels import pykernels as _impl

BACKEND = _impl.BACKEND
gini_best_split = _impl.gini_best_split
pairwise_sq_dists = _impl.pairwise_sq_dists
joint_counts = _impl.joint_counts
