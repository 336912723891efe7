"""Kernel selection: compiled fast path with pure-Python fallback.

The compiled kernel works on int64 and raises OverflowError when a
coefficient bound is exceeded; wrappers retry the operation with the
big-int kernel.  Set FCMONO_KERNEL=py to force the fallback (or =c to
require the extension).
"""

import os

from . import _kernel_py as _py

_fast = None
_mode = os.environ.get("FCMONO_KERNEL", "").strip().lower()
if _mode not in ("py", "python"):
    try:
        from . import _kernel_c as _fast
    except ImportError:
        _fast = None
        if _mode == "c":
            raise ImportError(
                "FCMONO_KERNEL=c requested but the compiled kernel is not built")

KERNEL_NAME = "c" if _fast is not None else "py"


def _dispatch(name):
    pyfn = getattr(_py, name)
    if _fast is None:
        return pyfn
    cfn = getattr(_fast, name)

    def run(*args):
        try:
            return cfn(*args)
        except OverflowError:
            return pyfn(*args)

    run.__name__ = name
    return run


shift_scaled_add = _dispatch("shift_scaled_add")
add_scaled = _dispatch("add_scaled")
scale_inplace = _dispatch("scale_inplace")
convolve_into = _dispatch("convolve_into")
negate_exponents = _dispatch("negate_exponents")
lift = _dispatch("lift")
compress = _dispatch("compress")
reduce_axes = _dispatch("reduce_axes")
maxabs = _dispatch("maxabs")
