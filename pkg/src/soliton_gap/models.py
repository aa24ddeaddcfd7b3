"""Closed-form shrinking gradient Ricci solitons and checks of the sublevel
volume identities on them.

Three families are modelled, all normalized so that ``Ric + Hess f = g/2``
and ``R + |grad f|^2 = f``:

* ``Gaussian(n)``: flat ``R^n`` with ``f = |x|^2/4``.
* ``Sphere(n)``: round ``S^n`` of radius ``sqrt(2(n-1))`` with ``f = n/2``.
* ``Cylinder(n)``: ``S^(n-1)(sqrt(2(n-2))) x R`` with ``f = t^2/4 + (n-1)/2``.

Hand computations behind the identity checks:

* Cylinder: ``grad f = (t/2) d/dt`` and the line factor is flat, so
  ``|grad f|^2 = t^2/4`` and ``Delta f = 1/2``. The sphere factor has
  ``Ric = (n-2)/a^2 = 1/2`` for ``a^2 = 2(n-2)``, hence ``R = (n-1)/2`` and
  ``R + Delta f = n/2``, ``R + |grad f|^2 = f``.
* Sphere: ``f`` is constant so ``grad f = 0`` and ``Delta f = 0``; with
  ``a^2 = 2(n-1)`` one gets ``R = n(n-1)/a^2 = n/2 = f``.

Points are given in a flat chart of the directions ``f`` depends on:
``R^n`` for the Gaussian, the line coordinate ``t`` for the cylinder and
an empty tuple for the sphere. ``f`` is constant along the omitted sphere
directions, so the Laplacian reduces to the Euclidean one in the chart.

In every model ``rho = 2 sqrt(f - c_p)`` is a distance-like function whose
level sets have area ``coef * r^power`` (coarea density ``V'(r)``) and carry
constant scalar curvature, so ``chi' = R V'``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, VerificationFailure
from .numerics import DEFAULT_SPEC, QuadratureSpec, gaussian_moment, integrate, weighted_tail
from .spaceform import unit_ball_volume

__all__ = [
    "ModelSoliton",
    "Gaussian",
    "Sphere",
    "Cylinder",
    "make_model",
    "SublevelGeometry",
    "IdentityReport",
    "SublevelIdentityResult",
    "VolumeGrowthReport",
    "GrowthReport",
    "RadialProfile",
    "verify_identities",
    "sublevel_volume",
    "sublevel_derivatives",
    "sublevel_f_volume",
    "sublevel_identity_residual",
    "volume_growth_check",
    "f_volume",
    "f_volume_closed_form",
    "potential_growth",
    "logsob_terms",
    "logsob_deficit",
    "standard_logsob_profiles",
]


def _sphere_area(n, radius):
    """Area of the round ``S^(n-1)`` of the given radius in ``R^n``."""
    return n * unit_ball_volume(n) * radius ** (n - 1)


def _sphere_volume(dim, radius):
    # total volume of round S^dim
    return (dim + 1) * unit_ball_volume(dim + 1) * radius**dim


@dataclass(frozen=True)
class ModelSoliton:
    n: int
    kind = "abstract"

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"dimension n must be an integer >= 2, got {self.n!r}")

    # constants -----------------------------------------------------------
    @property
    def c_p(self) -> float:
        raise NotImplementedError

    @property
    def scalar(self) -> float:
        """The (constant) scalar curvature."""
        raise NotImplementedError

    @property
    def sect_upper(self) -> float:
        raise NotImplementedError

    @property
    def chart_dim(self) -> int:
        raise NotImplementedError

    # pointwise geometry in the chart ---------------------------------------
    def scalar_curvature(self, x) -> float:
        return self.scalar

    def potential(self, x) -> float:
        raise NotImplementedError

    def grad_potential_sq(self, x) -> float:
        raise NotImplementedError

    def laplacian_potential(self, x) -> float:
        raise NotImplementedError

    def rho(self, x) -> float:
        return 2.0 * math.sqrt(max(self.potential(x) - self.c_p, 0.0))

    # sublevel structure ----------------------------------------------------
    @property
    def base_volume(self) -> float:
        """``Vol(D(0))``; positive only when ``rho`` vanishes on a set of positive measure."""
        return 0.0

    @property
    def level_area(self) -> tuple[float, float]:
        """``(coef, power)`` with ``V'(r) = coef * r^power``."""
        raise NotImplementedError

    def dvolume(self, r: float) -> float:
        coef, power = self.level_area
        return coef * r**power if coef else 0.0

    def volume_closed(self, r: float) -> float:
        coef, power = self.level_area
        return self.base_volume + (coef * r ** (power + 1) / (power + 1) if coef else 0.0)

    def chi_closed(self, r: float) -> float:
        return self.scalar * self.volume_closed(r)

    def sample_points(self, count: int, seed: int = 0, scale: float = 5.0) -> list:
        raise NotImplementedError

    def distance_potential_samples(self, count: int = 401, reach: float = 20.0):
        """Arrays ``(d, f)`` of distance to the minimum point and potential."""
        raise NotImplementedError

    def sublevel(self, q: QuadratureSpec = DEFAULT_SPEC) -> "SublevelGeometry":
        return SublevelGeometry(
            rho=self.rho,
            V=lambda r: sublevel_volume(self, r, q)[0],
            chi=lambda r: sublevel_volume(self, r, q)[1],
            V_f=lambda r: sublevel_f_volume(self, r, q),
        )


@dataclass(frozen=True)
class Gaussian(ModelSoliton):
    kind = "gaussian"

    c_p = 0.0
    scalar = 0.0
    sect_upper = 0.0

    @property
    def chart_dim(self):
        return self.n

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        return float(x @ x) / 4.0

    def grad_potential_sq(self, x):
        x = np.asarray(x, dtype=float)
        return float(x @ x) / 4.0

    def laplacian_potential(self, x):
        return self.n / 2.0

    @property
    def level_area(self):
        return (self.n * unit_ball_volume(self.n), self.n - 1)

    def sample_points(self, count, seed=0, scale=5.0):
        rng = np.random.default_rng(seed)
        return list(rng.uniform(-scale, scale, size=(count, self.n)))

    def distance_potential_samples(self, count=401, reach=20.0):
        d = np.linspace(0.0, reach, count)
        return d, d * d / 4.0


@dataclass(frozen=True)
class Sphere(ModelSoliton):
    kind = "sphere"

    @property
    def radius(self) -> float:
        return math.sqrt(2.0 * (self.n - 1))

    @property
    def c_p(self):
        return self.n / 2.0

    @property
    def scalar(self):
        return self.n / 2.0

    @property
    def sect_upper(self):
        return 1.0 / (2.0 * (self.n - 1))

    chart_dim = 0

    def potential(self, x):
        return self.n / 2.0

    def grad_potential_sq(self, x):
        return 0.0

    def laplacian_potential(self, x):
        return 0.0

    @property
    def total_volume(self) -> float:
        return _sphere_volume(self.n, self.radius)

    @property
    def base_volume(self):
        # rho vanishes identically, so D(r) = M for every r >= 0
        return self.total_volume

    @property
    def level_area(self):
        return (0.0, 0.0)

    def sample_points(self, count, seed=0, scale=5.0):
        return [np.zeros(0) for _ in range(count)]

    def distance_potential_samples(self, count=401, reach=20.0):
        d = np.linspace(0.0, math.pi * self.radius, count)
        return d, np.full_like(d, self.n / 2.0)


@dataclass(frozen=True)
class Cylinder(ModelSoliton):
    kind = "cylinder"

    def __post_init__(self):
        super().__post_init__()
        if self.n < 3:
            raise DomainError("Cylinder needs n >= 3: the S^(n-1) factor has radius sqrt(2(n-2))")

    @property
    def radius(self) -> float:
        return math.sqrt(2.0 * (self.n - 2))

    @property
    def c_p(self):
        return (self.n - 1) / 2.0

    @property
    def scalar(self):
        return (self.n - 1) / 2.0

    @property
    def sect_upper(self):
        return 1.0 / (2.0 * (self.n - 2))

    chart_dim = 1

    @property
    def cross_section(self) -> float:
        """Area of the ``S^(n-1)`` factor."""
        return _sphere_area(self.n, self.radius)

    def potential(self, x):
        t = float(np.asarray(x, dtype=float).reshape(-1)[0])
        return t * t / 4.0 + (self.n - 1) / 2.0

    def grad_potential_sq(self, x):
        t = float(np.asarray(x, dtype=float).reshape(-1)[0])
        return t * t / 4.0

    def laplacian_potential(self, x):
        return 0.5

    @property
    def level_area(self):
        # rho = |t|: two copies of the cross-section at every level
        return (2.0 * self.cross_section, 0.0)

    def sample_points(self, count, seed=0, scale=5.0):
        rng = np.random.default_rng(seed)
        return list(rng.uniform(-scale, scale, size=(count, 1)))

    def distance_potential_samples(self, count=401, reach=20.0):
        side = int(math.isqrt(count)) + 1
        phi = np.linspace(0.0, math.pi, side)
        t = np.linspace(-reach, reach, side)
        P, T = np.meshgrid(phi, t)
        d = np.sqrt(T * T + (self.radius * P) ** 2)
        return d.ravel(), (T * T / 4.0 + self.c_p).ravel()


_MODELS = {"gaussian": Gaussian, "sphere": Sphere, "cylinder": Cylinder}


def make_model(kind: str, n: int) -> ModelSoliton:
    try:
        return _MODELS[kind.lower()](n)
    except KeyError:
        raise DomainError(f"unknown model {kind!r}; expected one of {sorted(_MODELS)}") from None


@dataclass(frozen=True)
class SublevelGeometry:
    rho: Callable
    V: Callable[[float], float]
    chi: Callable[[float], float]
    V_f: Callable[[float], float]


# ---------------------------------------------------------------------------
# identities

@dataclass(frozen=True)
class IdentityReport:
    model: str
    n: int
    trace_residual: float  # max |R + Delta f - n/2|
    trace_worst: tuple
    normalization_residual: float  # max |R + |grad f|^2 - f|
    normalization_worst: tuple
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.trace_residual <= self.tolerance and self.normalization_residual <= self.tolerance

    def raise_if_failed(self):
        if self.trace_residual > self.tolerance:
            raise VerificationFailure("R + Delta f = n/2", self.trace_residual, self.trace_worst, self.tolerance)
        if self.normalization_residual > self.tolerance:
            raise VerificationFailure(
                "R + |grad f|^2 = f", self.normalization_residual, self.normalization_worst, self.tolerance
            )


def _fd_derivatives(m, x, h):
    """Central-difference ``|grad f|^2`` and ``Delta f`` in the flat chart."""
    x = np.asarray(x, dtype=float)
    f0 = m.potential(x)
    grad_sq = 0.0
    lap = 0.0
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        fp = m.potential(x + e)
        fm = m.potential(x - e)
        grad_sq += ((fp - fm) / (2 * h)) ** 2
        lap += (fp - 2 * f0 + fm) / (h * h)
    return grad_sq, lap


def verify_identities(
    m: ModelSoliton, samples: Sequence, tol: float, method: str = "analytic", h: float = 1e-4
) -> IdentityReport:
    """Worst residuals of ``R + Delta f = n/2`` and ``R + |grad f|^2 = f`` over samples.

    ``method="fd"`` replaces the closed-form derivatives by central differences
    of the potential with step ``h``.
    """
    if method not in ("analytic", "fd"):
        raise DomainError(f"method must be 'analytic' or 'fd', got {method!r}")
    tr_worst, tr_at = 0.0, ()
    nm_worst, nm_at = 0.0, ()
    for x in samples:
        x = np.asarray(x, dtype=float).reshape(-1)
        if x.size != m.chart_dim:
            raise DomainError(f"{m.kind} chart points have {m.chart_dim} coordinates, got {x.size}")
        if method == "analytic":
            grad_sq, lap = m.grad_potential_sq(x), m.laplacian_potential(x)
        else:
            grad_sq, lap = _fd_derivatives(m, x, h)
        R = m.scalar_curvature(x)
        tr = abs(R + lap - m.n / 2.0)
        nm = abs(R + grad_sq - m.potential(x))
        if tr > tr_worst or not tr_at:
            tr_worst, tr_at = tr, tuple(float(v) for v in x)
        if nm > nm_worst or not nm_at:
            nm_worst, nm_at = nm, tuple(float(v) for v in x)
    return IdentityReport(m.kind, m.n, tr_worst, tr_at, nm_worst, nm_at, tol)


# ---------------------------------------------------------------------------
# sublevel volumes

def sublevel_volume(m: ModelSoliton, r: float, q: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """``(V(r), chi(r))`` by integrating the level-set area ``V'`` from 0 to r."""
    if r < 0:
        raise DomainError(f"r must be >= 0, got {r!r}")
    V = m.base_volume + integrate(m.dvolume, 0.0, r, q)
    return V, m.scalar * V


def sublevel_derivatives(m: ModelSoliton, r: float) -> tuple[float, float]:
    """Closed-form ``(V'(r), chi'(r))``."""
    dV = m.dvolume(r)
    return dV, m.scalar * dV


def sublevel_f_volume(m: ModelSoliton, r: float, q: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``V_f(r) = (4 pi)^(-n/2) int_{D(r)} e^{-f}``, using ``f = c_p + s^2/4`` on ``{rho = s}``."""
    if r < 0:
        raise DomainError(f"r must be >= 0, got {r!r}")
    inner = m.base_volume + integrate(lambda s: math.exp(-s * s / 4.0) * m.dvolume(s), 0.0, r, q)
    return (4 * math.pi) ** (-m.n / 2) * math.exp(-m.c_p) * inner


def f_volume(m: ModelSoliton, q: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Normalized f-volume ``(4 pi)^(-n/2) int_M e^{-f}`` via the radial reduction."""
    coef, power = m.level_area
    if coef == 0:
        radial = 0.0
    elif power == m.n - 1:
        radial = coef * weighted_tail(m.n, 0.0, 0.0, q)
    else:
        radial = coef * gaussian_moment(power, 0.0, q)
    return (4 * math.pi) ** (-m.n / 2) * math.exp(-m.c_p) * (m.base_volume + radial)


def f_volume_closed_form(m: ModelSoliton) -> float:
    """Hand-derived f-volumes used as oracles."""
    n = m.n
    if isinstance(m, Gaussian):
        return 1.0
    if isinstance(m, Sphere):
        return (4 * math.pi) ** (-n / 2) * math.exp(-n / 2) * m.total_volume
    if isinstance(m, Cylinder):
        return (4 * math.pi) ** (-n / 2) * math.exp(-m.c_p) * m.cross_section * 2.0 * math.sqrt(math.pi)
    raise DomainError(f"no closed form for {m!r}")


# ---------------------------------------------------------------------------
# the sublevel identity and the volume growth bound

@dataclass(frozen=True)
class SublevelIdentityResult:
    r: float
    lhs: float  # n V - 2 chi
    rhs: float  # (r^2 + 4 c_p) V'/r - 4 chi'/r
    volume: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def sign_ok(self) -> bool:
        return self.lhs >= 0.0


def sublevel_identity_residual(
    m: ModelSoliton,
    r: float,
    h: float | None = None,
    q: QuadratureSpec = DEFAULT_SPEC,
) -> SublevelIdentityResult:
    """Both sides of ``n V - 2 chi = ((r^2 + 4 c_p)/r) V' - (4/r) chi'``.

    With ``h`` given, ``V'`` and ``chi'`` come from central differences of the
    quadrature values with step ``h`` instead of the closed forms.
    """
    if not r > 0:
        raise DomainError(f"r must be > 0, got {r!r}")
    V, chi = sublevel_volume(m, r, q)
    if h is None:
        dV, dchi = sublevel_derivatives(m, r)
    else:
        if not 0 < h < r:
            raise DomainError(f"finite-difference step must satisfy 0 < h < r, got {h!r}")
        Vp, chip = sublevel_volume(m, r + h, q)
        Vm, chim = sublevel_volume(m, r - h, q)
        dV = (Vp - Vm) / (2 * h)
        dchi = (chip - chim) / (2 * h)
    lhs = m.n * V - 2.0 * chi
    rhs = (r * r + 4.0 * m.c_p) / r * dV - 4.0 / r * dchi
    return SublevelIdentityResult(r, lhs, rhs, V)


@dataclass(frozen=True)
class VolumeGrowthReport:
    model: str
    n: int
    delta: float
    r0: float
    radii: tuple
    ratios: tuple  # V(r) / (r^2 + 4 c_p)^(n/2 - delta)
    volume_gaps: tuple  # V(r) - volume bound
    area_gaps: tuple  # V'(r) - area bound
    volume_rel_gaps: tuple
    area_rel_gaps: tuple
    tolerance: float

    @property
    def volume_ok(self) -> bool:
        return all(g >= -self.tolerance for g in self.volume_rel_gaps)

    @property
    def area_ok(self) -> bool:
        return all(g >= -self.tolerance for g in self.area_rel_gaps)

    @property
    def ratio_nondecreasing(self) -> bool:
        return all(b >= a * (1 - self.tolerance) for a, b in zip(self.ratios, self.ratios[1:]))

    @property
    def passed(self) -> bool:
        return self.volume_ok and self.area_ok

    @property
    def max_equality_gap(self) -> float:
        """Largest relative gap in either inequality; zero means equality."""
        return max(max(map(abs, self.volume_rel_gaps)), max(map(abs, self.area_rel_gaps)))

    def worst(self) -> tuple[float, float]:
        """``(r, relative gap)`` of the most violated (or tightest) volume inequality."""
        i = min(range(len(self.radii)), key=lambda k: min(self.volume_rel_gaps[k], self.area_rel_gaps[k]))
        return self.radii[i], min(self.volume_rel_gaps[i], self.area_rel_gaps[i])

    def raise_if_failed(self):
        if not self.passed:
            r, gap = self.worst()
            raise VerificationFailure("volume growth lower bound", -gap, r, self.tolerance)


def volume_growth_check(
    m: ModelSoliton,
    delta: float,
    r0: float,
    r_grid: Sequence[float],
    q: QuadratureSpec = DEFAULT_SPEC,
    tol: float = 1e-9,
) -> VolumeGrowthReport:
    """Check the growth bounds for ``V`` and ``V'`` under ``R <= delta < n/2``.

    Gaps are reported relative to ``1 + value``; an inequality counts as
    holding when its relative gap is ``>= -tol``.
    """
    if not m.scalar <= delta < m.n / 2:
        raise DomainError(
            f"need sup R = {m.scalar!r} <= delta < n/2 = {m.n / 2!r}, got delta = {delta!r}"
        )
    if not r0 > 0:
        raise DomainError(f"r0 must be > 0, got {r0!r}")
    radii = tuple(float(r) for r in r_grid)
    if any(not r > r0 for r in radii):
        raise DomainError("every grid radius must exceed r0")
    expo = m.n / 2 - delta
    shift = 4.0 * m.c_p
    V0, _ = sublevel_volume(m, r0, q)
    scale = V0 / (r0 * r0 + shift) ** expo
    ratios, vgaps, agaps, vrel, arel = [], [], [], [], []
    for r in radii:
        V, _ = sublevel_volume(m, r, q)
        dV, _ = sublevel_derivatives(m, r)
        vb = scale * (r * r + shift) ** expo
        ab = (m.n - 2 * delta) * scale * r * (r * r + shift) ** (expo - 1)
        ratios.append(V / (r * r + shift) ** expo)
        vgaps.append(V - vb)
        agaps.append(dV - ab)
        vrel.append((V - vb) / (1.0 + abs(V)))
        arel.append((dV - ab) / (1.0 + abs(dV)))
    return VolumeGrowthReport(
        m.kind, m.n, delta, r0, radii, tuple(ratios), tuple(vgaps), tuple(agaps), tuple(vrel), tuple(arel), tol
    )


# ---------------------------------------------------------------------------
# potential growth

@dataclass(frozen=True)
class GrowthReport:
    model: str
    n: int
    c1: float  # smallest c1 >= 0 with d - c1 <= 2 sqrt(f) on the samples
    c2: float  # 2 sqrt(c_p)
    upper_slack: float  # min over samples of (d + c2)^2/4 - f

    @property
    def upper_ok(self) -> bool:
        return self.upper_slack >= -1e-12 * (1.0 + self.c2**2)


def potential_growth(m: ModelSoliton, count: int = 401, reach: float = 20.0) -> GrowthReport:
    """Quadratic growth of the potential in the distance to its minimum.

    The upper bound ``f <= (d + c2)^2/4`` is checked with ``c2 = 2 sqrt(c_p)``.
    ``c1`` is found by grid search; the lower bound ``(d - c1)_+^2/4 <= f``
    then holds at every sample by construction.
    """
    d, f = m.distance_potential_samples(count, reach)
    c2 = 2.0 * math.sqrt(m.c_p)
    root = 2.0 * np.sqrt(f)
    c1 = max(0.0, float(np.max(d - root)))
    slack = float(np.min((d + c2) ** 2 / 4.0 - f))
    return GrowthReport(m.kind, m.n, c1, c2, slack)


# ---------------------------------------------------------------------------
# log-Sobolev inequality on the Gaussian soliton

@dataclass(frozen=True)
class RadialProfile:
    """Radial function ``u(|x|)`` on ``R^n`` supported (or negligible) beyond ``radius``."""

    u: Callable[[float], float]
    radius: float
    du: Callable[[float], float] | None = None
    label: str = field(default="", compare=False)

    def derivative(self, s: float) -> float:
        if self.du is not None:
            return self.du(s)
        h = 1e-6 * max(1.0, s)
        return (self.u(s + h) - self.u(s - h)) / (2 * h) if s > h else (self.u(s + h) - self.u(s)) / h

    def scaled(self, c: float) -> "RadialProfile":
        du = None if self.du is None else (lambda s, g=self.du: c * g(s))
        return RadialProfile(lambda s, g=self.u: c * g(s), self.radius, du, f"{c}*{self.label}")


def _xlogx(y):
    return y * math.log(y) if y > 0 else 0.0


def logsob_terms(profile: RadialProfile, n: int, q: QuadratureSpec = DEFAULT_SPEC) -> dict:
    """``mass = int u^2``, ``entropy = int u^2 log u^2`` and ``dirichlet = int |grad u|^2``."""
    if int(n) != n or n < 2:
        raise DomainError(f"dimension n must be an integer >= 2, got {n!r}")
    if not profile.radius > 0:
        raise DomainError("profile radius must be > 0")
    area = n * unit_ball_volume(n)
    R = profile.radius
    mass = area * integrate(lambda s: profile.u(s) ** 2 * s ** (n - 1), 0.0, R, q)
    entropy = area * integrate(lambda s: _xlogx(profile.u(s) ** 2) * s ** (n - 1), 0.0, R, q)
    dirichlet = area * integrate(lambda s: profile.derivative(s) ** 2 * s ** (n - 1), 0.0, R, q)
    return {"mass": mass, "entropy": entropy, "dirichlet": dirichlet}


def logsob_deficit(profile: RadialProfile, n: int, q: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Right side minus left side of the soliton log-Sobolev inequality on the
    Gaussian soliton, where ``mu_0 = 0`` and ``R = 0``:
    ``4 int |grad u|^2 - [int u^2 log u^2 - (int u^2) log int u^2]``.
    """
    t = logsob_terms(profile, n, q)
    mu0 = 0.0
    scalar_term = 0.0
    lhs = t["entropy"] - _xlogx(t["mass"])
    return 4.0 * t["dirichlet"] + mu0 * t["mass"] + scalar_term - lhs


def _bump(width):
    def u(s):
        z = s / width
        return math.exp(-1.0 / (1.0 - z * z)) if z < 1.0 else 0.0

    def du(s):
        z = s / width
        if z >= 1.0:
            return 0.0
        w = 1.0 - z * z
        return -2.0 * z / (width * w * w) * math.exp(-1.0 / w)

    return u, du


def standard_logsob_profiles(n: int) -> list[RadialProfile]:
    """Ten radial test functions: the normalized soliton density, Gaussians of
    other widths, smooth bumps, a polynomial cap, an exponential and rescalings."""
    c = (4 * math.pi) ** (-n / 4)
    profiles = [
        RadialProfile(lambda s: c * math.exp(-s * s / 8), 60.0, lambda s: -s / 4 * c * math.exp(-s * s / 8), "soliton"),
    ]
    for var in (0.5, 2.0, 8.0):
        profiles.append(
            RadialProfile(
                lambda s, a=var: math.exp(-s * s / (4 * a)),
                12.0 * math.sqrt(var) + 10.0,
                lambda s, a=var: -s / (2 * a) * math.exp(-s * s / (4 * a)),
                f"gauss(var={var})",
            )
        )
    for width in (1.0, 3.0):
        u, du = _bump(width)
        profiles.append(RadialProfile(u, width, du, f"bump({width})"))
    profiles.append(
        RadialProfile(lambda s: (1 - s * s) ** 3 if s < 1 else 0.0, 1.0, lambda s: -6 * s * (1 - s * s) ** 2 if s < 1 else 0.0, "cap")
    )
    profiles.append(RadialProfile(lambda s: math.exp(-s), 60.0, lambda s: -math.exp(-s), "exp"))
    profiles.append(profiles[0].scaled(2.0))
    profiles.append(profiles[4].scaled(0.1))
    return profiles
