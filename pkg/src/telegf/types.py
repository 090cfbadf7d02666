"""Shared domain types: medium parameters, boundary regimes, density values.

The library evaluates Green's functions of the damped hyperbolic transport
equation  p_tt + p_t/T = c^2 p_xx  on the half line x >= 0 (or the full line
for the free regime).  Densities are split into a smooth ("regular") part and
a finite list of Dirac terms riding on the light cones; the split is kept
symbolic throughout so that mass bookkeeping and transform-domain comparisons
stay exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class ConfigError(ValueError):
    """Invalid run/solver configuration."""


class UnsupportedRegimeError(DomainError):
    """Boundary regime not supported by the requested evaluation route."""


class AccuracyError(RuntimeError):
    """Requested accuracy could not be certified; carries the best estimate."""

    def __init__(self, message: str, best_estimate: float | None = None):
        super().__init__(message)
        self.best_estimate = best_estimate


class ConsistencyError(AccuracyError):
    """Two independent evaluation routes disagree beyond their error budgets."""


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Medium:
    """Transport medium: signal speed ``c`` and relaxation time ``T``.

    Derived quantities: turning rate ``alpha = 1/T`` and effective diffusion
    constant ``D = c**2 * T``.
    """

    c: float
    T: float

    def __post_init__(self):
        if _require_finite("c", self.c) <= 0.0:
            raise DomainError(f"speed c must be positive, got {self.c}")
        if _require_finite("T", self.T) <= 0.0:
            raise DomainError(f"relaxation time T must be positive, got {self.T}")

    @property
    def alpha(self) -> float:
        return 1.0 / self.T

    @property
    def D(self) -> float:
        return self.c * self.c * self.T


@dataclass(frozen=True)
class Query:
    """Evaluation point: field position ``x``, source ``x0``, time ``t``."""

    x: float
    x0: float
    t: float

    def __post_init__(self):
        _require_finite("x", self.x)
        _require_finite("x0", self.x0)
        if _require_finite("t", self.t) < 0.0:
            raise DomainError(f"time t must be nonnegative, got {self.t}")


class DeltaTerm(NamedTuple):
    """One Dirac term of a density: ``weight * delta(x - location)``."""

    location: float
    weight: float


@dataclass(frozen=True)
class GfValue:
    """Green's-function value: regular density plus symbolic Dirac terms.

    ``deltas`` lists the Dirac content of the whole time-``t`` distribution
    (locations and weights), never rasterized into ``regular``.
    ``error_estimate`` is an absolute bound on the regular part (quadrature
    or series-truncation error); ``warning`` is set when a requested accuracy
    could not be met.
    """

    regular: float
    deltas: tuple[DeltaTerm, ...] = ()
    error_estimate: float = 0.0
    warning: str | None = None

    @property
    def delta_weight(self) -> float:
        return sum(d.weight for d in self.deltas)


_REGIME_KINDS = ("free", "absorbing", "reflecting", "radiation", "backreaction")


@dataclass(frozen=True)
class BoundaryRegime:
    """Tagged boundary condition at x = 0.

    kind:
      * ``free``         -- no boundary (whole line)
      * ``absorbing``    -- perfect trap
      * ``reflecting``   -- perfect mirror
      * ``radiation``    -- absorbed with probability ``beta`` per wall hit
      * ``backreaction`` -- absorption plus desorption at rate ``kappa`` times
        the bound population; the analytic routes fix ``beta = 1``
    """

    kind: str
    beta: float | None = None
    kappa: float | None = None

    def __post_init__(self):
        if self.kind not in _REGIME_KINDS:
            raise DomainError(f"unknown boundary regime {self.kind!r}")
        if self.kind == "radiation":
            if self.beta is None:
                raise DomainError("radiation regime requires beta")
            b = _require_finite("beta", self.beta)
            if not 0.0 <= b <= 1.0:
                raise DomainError(f"beta must lie in [0, 1], got {b}")
        if self.kind == "backreaction":
            if self.kappa is None:
                raise DomainError("backreaction regime requires kappa")
            k = _require_finite("kappa", self.kappa)
            if k < 0.0:
                raise DomainError(f"kappa must be nonnegative, got {k}")
            if self.beta is None:
                object.__setattr__(self, "beta", 1.0)
            else:
                b = _require_finite("beta", self.beta)
                if not 0.0 < b <= 1.0:
                    raise DomainError(f"backreaction beta must lie in (0, 1], got {b}")

    @classmethod
    def free(cls) -> "BoundaryRegime":
        return cls("free")

    @classmethod
    def absorbing(cls) -> "BoundaryRegime":
        return cls("absorbing")

    @classmethod
    def reflecting(cls) -> "BoundaryRegime":
        return cls("reflecting")

    @classmethod
    def radiation(cls, beta: float) -> "BoundaryRegime":
        return cls("radiation", beta=beta)

    @classmethod
    def backreaction(cls, kappa: float, beta: float = 1.0) -> "BoundaryRegime":
        return cls("backreaction", beta=beta, kappa=kappa)

    @property
    def eta(self) -> float:
        """Reflection probability 1 - beta of the radiation regime."""
        if self.kind != "radiation":
            raise DomainError(f"eta is defined for radiation regimes, not {self.kind}")
        return 1.0 - self.beta

    def absorption_probability(self) -> float:
        """Fraction of a wall hit that is absorbed (0 for free/reflecting)."""
        if self.kind in ("free", "reflecting"):
            return 0.0
        if self.kind == "radiation":
            return self.beta
        return self.beta if self.kind == "backreaction" else 1.0


FREE = BoundaryRegime.free()
ABSORBING = BoundaryRegime.absorbing()
REFLECTING = BoundaryRegime.reflecting()


@dataclass(frozen=True)
class SeriesSpec:
    """Truncation control for the radiation-regime image series."""

    n_max: int = 64
    tail_tol: float = 1e-9

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ConfigError(f"n_max must be an integer >= 1, got {self.n_max}")
        if not self.tail_tol > 0.0:
            raise ConfigError(f"tail_tol must be positive, got {self.tail_tol}")


@dataclass(frozen=True)
class QuadSpec:
    """Quadrature control for the branch-cut integrals over xi in [-1, 1]."""

    n_nodes: int = 256
    tol: float = 1e-9
    method: str = "fixed"  # "fixed": n and 2n Richardson check; "adaptive": double to tol

    def __post_init__(self):
        if int(self.n_nodes) != self.n_nodes or self.n_nodes < 8:
            raise ConfigError(f"n_nodes must be an integer >= 8, got {self.n_nodes}")
        if not self.tol > 0.0:
            raise ConfigError(f"tol must be positive, got {self.tol}")
        if self.method not in ("fixed", "adaptive"):
            raise ConfigError(f"method must be 'fixed' or 'adaptive', got {self.method!r}")


@dataclass(frozen=True)
class InversionSpec:
    """Numerical Laplace-inversion control.

    method:
      * ``euler``  -- Bromwich-line Fourier series with Euler acceleration
      * ``talbot`` -- fixed-Talbot contour (valid once every cone arrival has
        passed; the deformed contour diverges earlier)
      * ``auto``   -- Talbot past the last arrival, Euler otherwise (default)
    """

    method: str = "auto"
    n_terms: int = 64
    margin: float = 1.0  # minimum contour abscissa above the rightmost singularity
    tol: float = 1e-6

    def __post_init__(self):
        if self.method not in ("auto", "euler", "talbot"):
            raise ConfigError(f"unknown inversion method {self.method!r}")
        if int(self.n_terms) != self.n_terms or self.n_terms < 16:
            raise ConfigError(f"n_terms must be an integer >= 16, got {self.n_terms}")
        if not self.margin > 0.0:
            raise ConfigError(f"margin must be positive, got {self.margin}")
        if not self.tol > 0.0:
            raise ConfigError(f"tol must be positive, got {self.tol}")

    def exclusion_radius(self, m: Medium) -> float:
        """Half-width (in time) of the window around cone arrivals where
        smooth numerical inversion is not attempted."""
        return 5.0 * m.T / self.n_terms
