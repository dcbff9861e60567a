"""Backend selection for the stepping kernels.

The compiled extension is preferred when importable; set the environment
variable ``BLOWUP_LAB_PURE=1`` to force the numpy fallback. The chosen
backend is fixed for the process, so runs are reproducible.
"""

import os

if os.environ.get("BLOWUP_LAB_PURE"):
    from . import _stepcore_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _stepcore as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _stepcore_py as _impl

        BACKEND = "python"

plap_apply = _impl.plap_apply
rhs_into = _impl.rhs_into
euler_step_into = _impl.euler_step_into
max_abs_face_grad = _impl.max_abs_face_grad
grad_p_norm = _impl.grad_p_norm
field_stats = _impl.field_stats
max_abs_diff = _impl.max_abs_diff
diff_l2sq = _impl.diff_l2sq
all_finite = _impl.all_finite


def available_backends():
    """Importable kernel modules, keyed by backend name."""
    from . import _stepcore_py

    out = {"python": _stepcore_py}
    try:
        from . import _stepcore  # type: ignore[attr-defined]

        out["cython"] = _stepcore
    except ImportError:
        pass
    return out
