"""Modified Bessel functions of the first kind and cone-safe ratio kernels.

Everything here is real-axis only (z >= 0, integer order n >= 0), which is
all the Green's-function kernels need.  Evaluation is delegated to scipy's
``iv``/``ive``; the test suite pins both against an extended-precision power
series.  The ratio kernel I_1(z)/z removes the 0/0 that the free-space kernel
would otherwise hit on the light cone, where it must tend to 1/2.
"""
from __future__ import annotations

import numpy as np
from scipy import special

from .types import DomainError

# exp(z) overflows just above 709; keep a little headroom for the prefactors.
OVERFLOW_Z = 700.0

# Below this, the two-term Taylor series of e^{-z} I_1(z)/z is already at
# double-precision accuracy and avoids the 0/0.
_SERIES_Z = 1e-4


def _check_order(n) -> np.ndarray:
    n_arr = np.asarray(n)
    if not np.issubdtype(n_arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(n_arr, 1), 0)):
            raise DomainError(f"order n must be a nonnegative integer, got {n!r}")
        n_arr = n_arr.astype(int)
    if np.any(n_arr < 0):
        raise DomainError(f"order n must be nonnegative, got {n!r}")
    return n_arr


def _check_arg(z, allow_large: bool) -> np.ndarray:
    z_arr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(z_arr)):
        raise DomainError(f"argument must be finite, got {z!r}")
    if np.any(z_arr < 0.0):
        raise DomainError(f"argument must be nonnegative, got {z!r}")
    if not allow_large and np.any(z_arr > OVERFLOW_Z):
        raise OverflowError(
            f"I_n(z) overflows for z > {OVERFLOW_Z}; use bessel_i_scaled"
        )
    return z_arr


def _as_input(value, *refs):
    if all(np.isscalar(r) or np.ndim(r) == 0 for r in refs):
        return float(value)
    return value


def bessel_i(n, z):
    """I_n(z) for integer n >= 0 and 0 <= z <= 700 (relative error <= 1e-12).

    Raises OverflowError beyond the overflow threshold; use
    :func:`bessel_i_scaled` there.
    """
    n_arr = _check_order(n)
    z_arr = _check_arg(z, allow_large=False)
    return _as_input(special.iv(n_arr, z_arr), n, z)


def bessel_i_scaled(n, z):
    """exp(-z) I_n(z); finite for all z >= 0."""
    n_arr = _check_order(n)
    z_arr = _check_arg(z, allow_large=True)
    return _as_input(special.ive(n_arr, z_arr), n, z)


def bessel_i1_over_z(z):
    """I_1(z)/z, continuous at z = 0 with value 1/2."""
    z_arr = _check_arg(z, allow_large=False)
    small = z_arr < _SERIES_Z
    z_safe = np.where(small, 1.0, z_arr)
    out = np.where(small, 0.5 + z_arr * z_arr / 16.0, special.iv(1, z_safe) / z_safe)
    return _as_input(out, z)


def bessel_i1_over_z_scaled(z):
    """exp(-z) I_1(z)/z, continuous at z = 0 with value 1/2."""
    z_arr = _check_arg(z, allow_large=True)
    small = z_arr < _SERIES_Z
    z_safe = np.where(small, 1.0, z_arr)
    out = np.where(
        small,
        np.exp(-z_arr) * (0.5 + z_arr * z_arr / 16.0),
        special.ive(1, z_safe) / z_safe,
    )
    return _as_input(out, z)
