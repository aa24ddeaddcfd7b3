"""Ball volumes in simply connected constant-curvature spaces.

``V_H(r) = n w_n int_0^r sn_H(s)^(n-1) ds`` with ``sn_H(s) = sin(sqrt(H) s)/sqrt(H)``
for ``H > 0``, ``s`` for ``H = 0`` and ``sinh(sqrt(-H) s)/sqrt(-H)`` for ``H < 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .numerics import DEFAULT_SPEC, QuadratureSpec, integrate

__all__ = [
    "SpaceFormSpec",
    "unit_ball_volume",
    "log_unit_ball_volume",
    "model_volume",
    "log_model_volume",
    "gunther_lower_bound",
    "SERIES_THRESHOLD",
]

# |H| r^2 below this uses the small-curvature series
SERIES_THRESHOLD = 1e-8


@dataclass(frozen=True)
class SpaceFormSpec:
    n: int
    H: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"dimension n must be an integer >= 2, got {self.n!r}")
        if not math.isfinite(self.H):
            raise DomainError(f"curvature H must be finite, got {self.H!r}")

    @property
    def radius_cap(self) -> float:
        """``pi/sqrt(H)`` for ``H > 0``; infinite otherwise."""
        return math.pi / math.sqrt(self.H) if self.H > 0 else math.inf


def unit_ball_volume(n: int) -> float:
    """Euclidean unit-ball volume ``pi^(n/2) / Gamma(n/2 + 1)``."""
    if int(n) != n or n < 2:
        raise DomainError(f"dimension n must be an integer >= 2, got {n!r}")
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


def log_unit_ball_volume(n: int) -> float:
    return (n / 2) * math.log(math.pi) - math.lgamma(n / 2 + 1)


def _check_radius(spec, r):
    if r < 0:
        raise DomainError(f"radius must be >= 0, got {r!r}")
    if spec.H > 0 and r > spec.radius_cap:
        raise DomainError(
            f"radius {r!r} exceeds the cap pi/sqrt(H) = {spec.radius_cap!r} for H = {spec.H!r}"
        )


def _series_volume(n, H, r):
    # (sin x / x)^m = 1 - m x^2/6 + m(5m-2) x^4/360 + O(x^6),  x^2 = H s^2
    m = n - 1
    c1 = -m * H / 6.0
    c2 = m * (5 * m - 2) * H * H / 360.0
    return n * unit_ball_volume(n) * (
        r**n / n + c1 * r ** (n + 2) / (n + 2) + c2 * r ** (n + 4) / (n + 4)
    )


def model_volume(spec: SpaceFormSpec, r: float, q: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Volume of the radius-``r`` ball in the space form of curvature ``spec.H``.

    Raises :class:`DomainError` for ``H > 0`` and ``r > pi/sqrt(H)`` rather
    than clamping.
    """
    _check_radius(spec, r)
    n, H = spec.n, spec.H
    if r == 0:
        return 0.0
    if H == 0:
        return unit_ball_volume(n) * r**n
    if abs(H) * r * r < SERIES_THRESHOLD:
        return _series_volume(n, H, r)
    if H < 0:
        return math.exp(log_model_volume(spec, r, q))
    k = math.sqrt(H)
    m = n - 1
    return n * unit_ball_volume(n) * integrate(lambda s: (math.sin(k * s) / k) ** m, 0.0, r, q)


def log_model_volume(spec: SpaceFormSpec, r: float, q: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``log V_H(r)``, finite even where ``V_H(r)`` itself would overflow.

    For ``H < 0`` the growth ``e^((n-1) k r)`` is factored out of the sinh
    integrand before integrating, with ``k = sqrt(-H)``.
    """
    _check_radius(spec, r)
    n, H = spec.n, spec.H
    if r == 0:
        return -math.inf
    if H >= 0 or abs(H) * r * r < SERIES_THRESHOLD:
        return math.log(model_volume(spec, r, q))
    k = math.sqrt(-H)
    m = n - 1
    # sinh(k s)/k = e^{k s} (1 - e^{-2 k s}) / (2 k)
    scaled = integrate(
        lambda s: math.exp(m * k * (s - r)) * (-math.expm1(-2.0 * k * s)) ** m, 0.0, r, q
    )
    return math.log(n) + log_unit_ball_volume(n) + m * (k * r - math.log(2.0 * k)) + math.log(scaled)


def gunther_lower_bound(
    n: int, A: float, r: float, inj_lower: float, q: QuadratureSpec = DEFAULT_SPEC
) -> float:
    """Lower bound ``V_A(r)`` for ``Vol(B_p(r))`` when ``K <= A`` and ``inj >= inj_lower``.

    Only valid for ``r < min(inj_lower, pi/sqrt(A))``; anything else is a
    :class:`DomainError`.
    """
    if not A > 0:
        raise DomainError(f"A must be > 0, got {A!r}")
    if not r > 0:
        raise DomainError(f"r must be > 0, got {r!r}")
    if not inj_lower > 0:
        raise DomainError(f"inj_lower must be > 0, got {inj_lower!r}")
    window = min(inj_lower, math.pi / math.sqrt(A))
    if not r < window:
        raise DomainError(
            f"r = {r!r} outside the comparison window r < min(inj_lower, pi/sqrt(A)) = {window!r}"
        )
    return model_volume(SpaceFormSpec(n, A), r, q)
