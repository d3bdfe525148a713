"""Kernel backend selection.

The hot kernels (grid fills of the cat-state Wigner density and
sample-averaged post-collision densities) exist twice: a Cython extension
(_fast) and a numpy reference (_reference) with identical semantics.  The
compiled backend is used when importable; set TRACERGAS_KERNELS=reference
or =fast to force a choice.  benchmarks/kernel_benchmark.py compares the
two.
"""

import os

from . import _reference

_choice = os.environ.get("TRACERGAS_KERNELS", "auto").lower()

if _choice not in ("auto", "fast", "reference"):
    raise RuntimeError(
        f"TRACERGAS_KERNELS must be 'auto', 'fast' or 'reference', got {_choice!r}"
    )

if _choice == "reference":
    _impl = _reference
    BACKEND = "reference"
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]

        BACKEND = "fast"
    except ImportError:
        if _choice == "fast":
            raise RuntimeError(
                "TRACERGAS_KERNELS=fast but the compiled kernels are not built; "
                "reinstall with Cython and a C compiler available"
            )
        _impl = _reference
        BACKEND = "reference"

wigner_on_points = _impl.wigner_on_points
wigner_cats_at_point = _impl.wigner_cats_at_point
wigner_mean_on_points = _impl.wigner_mean_on_points
