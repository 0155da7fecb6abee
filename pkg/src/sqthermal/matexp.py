"""Matrix-exponential backend selection.

Prefers the compiled kernel built from ``_expm_cy.pyx``; falls back to the
pure-numpy implementation when the extension is unavailable or when the
environment variable ``SQTHERMAL_PURE_PYTHON`` is set to a non-empty value
other than ``0``. Both backends implement the identical algorithm, so the
choice affects speed only.
"""

from __future__ import annotations

import os

from . import _expm_py


def _load():
    if os.environ.get("SQTHERMAL_PURE_PYTHON", "0") not in ("", "0"):
        return _expm_py.expm, "python"
    try:
        from . import _expm_cy
    except ImportError:
        return _expm_py.expm, "python"
    return _expm_cy.expm, "cython"


expm, _BACKEND = _load()


def backend_name() -> str:
    """Name of the backend selected at import: 'cython' or 'python'."""
    return _BACKEND


def available_backends() -> dict:
    """All importable expm implementations, keyed by backend name."""
    backends = {"python": _expm_py.expm}
    try:
        from . import _expm_cy
    except ImportError:
        pass
    else:
        backends["cython"] = _expm_cy.expm
    return backends
