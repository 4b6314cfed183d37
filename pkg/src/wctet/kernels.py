"""Backend dispatch for the hot per-tet kernels.

Two interchangeable implementations exist: a vectorized numpy one and a
numba-jitted one.  Selection happens once at import via the WCTET_USE_NUMBA
environment variable: "1" forces numba (ImportError if unavailable), "0"
forces numpy, unset picks numba when importable.  Tests and benchmarks can
switch explicitly with use_backend().
"""
import os

from . import _kernels_numpy

_BACKENDS = {'numpy': _kernels_numpy}
_active = None


def _load_numba_backend():
    if 'numba' not in _BACKENDS:
        from . import _kernels_numba
        _BACKENDS['numba'] = _kernels_numba
    return _BACKENDS['numba']


def use_backend(name):
    """Switch the active backend ('numpy' or 'numba').  Returns its name."""
    global _active
    if name == 'numba':
        _load_numba_backend()
    elif name != 'numpy':
        raise ValueError("unknown backend %r" % (name,))
    _active = name
    return _active


def backend_name():
    return _active


def _init():
    flag = os.environ.get('WCTET_USE_NUMBA', '').strip().lower()
    if flag in ('0', 'false', 'no'):
        return use_backend('numpy')
    if flag in ('1', 'true', 'yes'):
        return use_backend('numba')
    try:
        return use_backend('numba')
    except ImportError:
        return use_backend('numpy')


_init()


def _mod():
    return _BACKENDS[_active]


def quality_arrays(T):
    """(center, radius, h_over_r, face_deg, dihedral_deg, r_over_l, vol)."""
    return _mod().quality_arrays(T)


def per_tet_objective(T, mode):
    return _mod().per_tet_objective(T, mode)


def min_objective(T, mode):
    return _mod().min_objective(T, mode)


def volume_signs_ok(T, sgn):
    return _mod().volume_signs_ok(T, sgn)


def wc_margins(T):
    return _mod().wc_margins(T)


def warmup():
    """Trigger jit compilation (no-op on the numpy backend)."""
    import numpy as np
    T = np.array([[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]])
    quality_arrays(T)
    per_tet_objective(T, 0)
    min_objective(T, 1)
    volume_signs_ok(T, np.ones(1))
    wc_margins(T)
