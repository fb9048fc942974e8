"""Exact arithmetic for integral quadratic forms.

Thin re-export of the compiled extension. Integers are Python ints of
arbitrary size, rationals are fractions.Fraction.
"""

import importlib

try:
    # installed layout: quadforms/_quadforms.so
    _impl = importlib.import_module("._quadforms", __name__)
except ModuleNotFoundError:
    # build-tree layout: _quadforms.so on sys.path
    _impl = importlib.import_module("_quadforms")

_names = [_n for _n in dir(_impl) if not _n.startswith("_")]
globals().update({_n: getattr(_impl, _n) for _n in _names})

__all__ = sorted(_names)
__version__ = "1.0.0"
