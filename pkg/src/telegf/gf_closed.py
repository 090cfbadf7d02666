"""Closed-form time-domain Green's functions.

Building blocks: the free-space kernel f0, the absorbing image kernel f1, the
image-series kernels g_n with coefficients c_n, and their assembly into the
free, absorbing, reflecting and partially-absorbing (radiation) half-line
Green's functions.

Every assembled density carries the overall relaxation factor e^{-t/2T}.
That factor is *fused* into the kernels through scaled Bessel functions
(e^{-t/2T} I_n(u) = e^{u - t/2T} [e^{-u} I_n(u)] with u - t/2T <= 0), so the
evaluators stay finite arbitrarily deep in the diffusion regime where
e^{-t/2T} and I_n(u) separately over/underflow.  The bare kernels
``f0_eval``/``f1_eval``/``gn_eval`` keep the undamped normalization and are
subject to the Bessel overflow threshold.
"""
from __future__ import annotations

import math

import numpy as np

from .specfun import (
    bessel_i,
    bessel_i1_over_z,
    bessel_i_scaled,
    bessel_i1_over_z_scaled,
)
from .types import (
    BoundaryRegime,
    DeltaTerm,
    DomainError,
    GfValue,
    Medium,
    Query,
    SeriesSpec,
    UnsupportedRegimeError,
)

DEFAULT_SERIES = SeriesSpec()


def _cone_root(t: float, x: float, m: Medium) -> float:
    """sqrt(c^2 t^2 - x^2), computed as a stable product near the cone."""
    ct = m.c * t
    return math.sqrt(max((ct - x) * (ct + x), 0.0))


def lightcone_u(t: float, x: float, m: Medium) -> float:
    """Interior cone coordinate u = sqrt(c^2 t^2 - x^2) / (2 c T).

    Requires 0 <= x <= c t; callers gate on the step factor before calling.
    """
    if x < 0.0:
        raise DomainError(f"x must be nonnegative, got {x}")
    if m.c * t < x:
        raise DomainError(f"point outside the light cone: c*t={m.c * t} < x={x}")
    return _cone_root(t, x, m) / (2.0 * m.c * m.T)


def f0_eval(t: float, x: float, m: Medium, collocation_tol: float = 0.0) -> GfValue:
    """Free-space kernel: regular part of f0 plus its cone Dirac term.

    Regular part: Theta(ct - x)/(4cT) [I_0(u) + (t/2T) I_1(u)/u], with the
    ratio kernel making the value continuous from inside as u -> 0.  The
    weight-1/2 Dirac term at x = ct is reported when |ct - x| is within
    ``collocation_tol``; exactly on the cone the regular part is the interior
    limit.
    """
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    if x < 0.0:
        raise DomainError(f"x must be nonnegative, got {x}")
    ct = m.c * t
    deltas = ()
    if abs(ct - x) <= collocation_tol:
        deltas = (DeltaTerm(location=ct, weight=0.5),)
    if x > ct:
        return GfValue(regular=0.0, deltas=deltas)
    u = lightcone_u(t, x, m)
    reg = (bessel_i(0, u) + t / (2.0 * m.T) * bessel_i1_over_z(u)) / (4.0 * m.c * m.T)
    return GfValue(regular=reg, deltas=deltas)


def f1_eval(t: float, x: float, m: Medium) -> float:
    """Absorbing image kernel:
    Theta(ct-x)/(8cT) [I_0 + 2 sqrt(q) I_1 + q I_2](u), q = (ct-x)/(ct+x)."""
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    if x < 0.0:
        raise DomainError(f"x must be nonnegative, got {x}")
    ct = m.c * t
    if x > ct or ct == 0.0:
        return 0.0
    u = lightcone_u(t, x, m)
    q = (ct - x) / (ct + x)
    return (
        bessel_i(0, u) + 2.0 * math.sqrt(q) * bessel_i(1, u) + q * bessel_i(2, u)
    ) / (8.0 * m.c * m.T)


def gn_eval(n: int, t: float, x: float, m: Medium) -> float:
    """Image-series kernel g_n = Theta(ct-x) q^{n/2} I_n(u), q = (ct-x)/(ct+x)."""
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    if x < 0.0:
        raise DomainError(f"x must be nonnegative, got {x}")
    ct = m.c * t
    if x > ct or ct == 0.0:
        return 0.0
    u = lightcone_u(t, x, m)
    q = (ct - x) / (ct + x)
    return q ** (n / 2.0) * bessel_i(n, u)


def cn_coeff(n: int, beta: float) -> float:
    """Image-series coefficients: c_0=1, c_1=4-b, c_2=(2-b)(3-b)+1,
    c_n=(2-b)^3 (1-b)^{n-3} for n >= 3."""
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n}")
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    if n == 0:
        return 1.0
    if n == 1:
        return 4.0 - beta
    if n == 2:
        return (2.0 - beta) * (3.0 - beta) + 1.0
    return (2.0 - beta) ** 3 * (1.0 - beta) ** (n - 3)


# ---------------------------------------------------------------------------
# Damped (e^{-t/2T}-fused) kernels; finite for arbitrarily large u.
# ---------------------------------------------------------------------------

def _damp_exponent(t: float, x: float, m: Medium) -> float:
    """u - t/(2T) = -x^2 / (2cT (ct + sqrt(c^2 t^2 - x^2))), always <= 0."""
    if x == 0.0:
        return 0.0
    ct = m.c * t
    return -x * x / (2.0 * m.c * m.T * (ct + _cone_root(t, x, m)))


def damped_f0_regular(t: float, x: float, m: Medium) -> float:
    """e^{-t/2T} times the regular part of f0; zero outside the cone."""
    if m.c * t < x:
        return 0.0
    u = lightcone_u(t, x, m)
    scale = math.exp(_damp_exponent(t, x, m))
    return (
        scale
        * (bessel_i_scaled(0, u) + t / (2.0 * m.T) * bessel_i1_over_z_scaled(u))
        / (4.0 * m.c * m.T)
    )


def damped_f1(t: float, x: float, m: Medium) -> float:
    """e^{-t/2T} f1; zero outside the cone."""
    ct = m.c * t
    if ct < x or ct == 0.0:
        return 0.0
    u = lightcone_u(t, x, m)
    q = (ct - x) / (ct + x)
    scale = math.exp(_damp_exponent(t, x, m))
    return (
        scale
        * (
            bessel_i_scaled(0, u)
            + 2.0 * math.sqrt(q) * bessel_i_scaled(1, u)
            + q * bessel_i_scaled(2, u)
        )
        / (8.0 * m.c * m.T)
    )


def damped_radiation_series(
    t: float, x: float, beta: float, m: Medium, series: SeriesSpec = DEFAULT_SERIES
) -> tuple[float, float]:
    """Truncated image series of the radiation Green's function, damped.

    Returns ``(value, tail_bound)`` where value approximates
    e^{-t/2T} * beta(1-beta)/(8cT) * sum_n c_n g_n(t, x) and tail_bound is an
    upper bound on the truncation error from the geometric decay of c_n and
    the order decay of I_n (tail <= pref * (2-b)^3 I_0(u) q^{N-2}/(1-q) with
    q = (1-b) sqrt((ct-x)/(ct+x))).
    """
    ct = m.c * t
    if ct < x or ct == 0.0 or beta in (0.0, 1.0):
        return 0.0, 0.0
    u = lightcone_u(t, x, m)
    zeta2 = (ct - x) / (ct + x)
    zeta = math.sqrt(zeta2)
    scale = math.exp(_damp_exponent(t, x, m))
    pref = beta * (1.0 - beta) / (8.0 * m.c * m.T) * scale
    ns = np.arange(series.n_max + 1)
    cn = np.array([cn_coeff(int(k), beta) for k in ns])
    gn = zeta**ns * bessel_i_scaled(ns, u)
    value = pref * float(np.sum(cn * gn))
    q = (1.0 - beta) * zeta
    i0 = float(bessel_i_scaled(0, u))
    tail = pref * (2.0 - beta) ** 3 * i0 * q ** (series.n_max - 2) / (1.0 - q)
    return value, tail


def delta_terms(t: float, x0: float, bc: BoundaryRegime, m: Medium) -> tuple[DeltaTerm, ...]:
    """Dirac inventory of the time-t distribution for source at x0.

    Weights carry the e^{-t/2T} relaxation factor.  For the free regime both
    fronts exist at x0 +- ct; with a boundary, the left-moving front exists
    while x0 - ct > 0 and the reflected front at ct - x0 >= 0 carries the
    regime's survival fraction of the incoming weight.
    """
    ct = m.c * t
    w = 0.5 * math.exp(-t / (2.0 * m.T))
    if bc.kind == "free":
        if ct == 0.0:
            return (DeltaTerm(x0, 2.0 * w),)
        return (DeltaTerm(x0 - ct, w), DeltaTerm(x0 + ct, w))
    terms = []
    if ct == 0.0:
        return (DeltaTerm(x0, 2.0 * w),)
    terms.append(DeltaTerm(x0 + ct, w))
    if x0 - ct > 0.0:
        terms.append(DeltaTerm(x0 - ct, w))
    else:
        surviving = {
            "absorbing": 0.0,
            "backreaction": 0.0,
            "reflecting": 1.0,
            "radiation": 1.0 - bc.beta if bc.kind == "radiation" else 0.0,
        }[bc.kind]
        if surviving > 0.0:
            terms.append(DeltaTerm(ct - x0, surviving * w))
    return tuple(terms)


def eval_closed_gf(
    q: Query,
    bc: BoundaryRegime,
    m: Medium,
    series: SeriesSpec = DEFAULT_SERIES,
) -> GfValue:
    """Closed-form Green's function value at (x, t | x0) for the regime.

    free       : e^{-t/2T} f0(t, |x-x0|)
    absorbing  : e^{-t/2T} [f0(|x-x0|) - f1(x+x0)]
    reflecting : e^{-t/2T} [f0(|x-x0|) + f0(x+x0)]
    radiation  : beta*absorbing + (1-beta)*reflecting - image series

    The backreaction regime has no closed series form here; use the
    branch-cut route (gf_bromwich) or the transform route (laplace_domain).
    """
    if bc.kind == "backreaction":
        raise UnsupportedRegimeError(
            "backreaction has no closed-form route; use gf_bromwich.eval_gf"
        )
    if bc.kind != "free" and (q.x < 0.0 or q.x0 < 0.0):
        raise DomainError("x and x0 must be >= 0 when a boundary is active")
    d = abs(q.x - q.x0)
    ksum = q.x + q.x0
    reg = damped_f0_regular(q.t, d, m)
    warning = None
    err = 0.0
    if bc.kind == "absorbing":
        reg -= damped_f1(q.t, ksum, m)
    elif bc.kind == "reflecting":
        reg += damped_f0_regular(q.t, ksum, m)
    elif bc.kind == "radiation":
        beta = bc.beta
        reg += (1.0 - beta) * damped_f0_regular(q.t, ksum, m) - beta * damped_f1(
            q.t, ksum, m
        )
        sval, tail = damped_radiation_series(q.t, ksum, beta, m, series)
        reg -= sval
        err = tail
        if tail > series.tail_tol:
            warning = (
                f"image-series tail bound {tail:.3e} exceeds requested "
                f"tolerance {series.tail_tol:.3e}; increase n_max"
            )
    return GfValue(
        regular=reg,
        deltas=delta_terms(q.t, q.x0, bc, m),
        error_estimate=err,
        warning=warning,
    )
