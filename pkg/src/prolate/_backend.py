"""Pick the kernel implementation at import time.

The compiled extension is used when it imports cleanly. Setting
PROLATE_BACKEND=python forces the pure-Python kernels.
"""

import os

from . import _pycore

NAME = "python"
kernels = _pycore

if os.environ.get("PROLATE_BACKEND", "").lower() != "python":
    try:
        from . import _core as _compiled
    except ImportError:
        pass
    else:
        kernels = _compiled
        NAME = "compiled"


def get(name=None):
    """Return a kernel module by name, or the active one."""
    if name is None:
        return kernels
    if name == "python":
        return _pycore
    if name == "compiled":
        from . import _core
        return _core
    raise ValueError(f"unknown backend {name!r}")
