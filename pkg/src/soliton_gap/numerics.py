"""Scalar numerics: adaptive Gauss-Kronrod quadrature, gamma functions,
the Gaussian-weighted tail integral and a scan-then-bisect threshold solver.

Everything here is a pure function of its arguments.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

from .errors import ConsistencyError, DomainError, InfeasibleError, QuadratureError

__all__ = [
    "QuadratureSpec",
    "Bracket",
    "DEFAULT_SPEC",
    "integrate",
    "gamma_fn",
    "upper_gamma",
    "tail_truncation_bound",
    "gaussian_moment",
    "weighted_tail",
    "weighted_tail_quadrature",
    "weighted_tail_gamma",
    "solve_threshold",
]

_EPS = 2.220446049250313e-16
_TINY = 1e-300
_MAX_PANELS = 20000


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 60

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be > 0, got {self.abs_tol!r}")
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol!r}")
        if int(self.max_depth) != self.max_depth or self.max_depth < 1:
            raise DomainError(f"max_depth must be a positive integer, got {self.max_depth!r}")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"bracket needs lo < hi, got ({self.lo!r}, {self.hi!r})")


# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 constants).
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _gk15(f, a, b):
    """One Gauss-Kronrod panel. Returns (kronrod estimate, error estimate)."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(center)
    res_k = fc * _WGK[7]
    res_g = fc * _WG[3]
    res_abs = abs(res_k)
    fv1 = [0.0] * 7
    fv2 = [0.0] * 7
    for j in range(7):
        dx = half * _XGK[j]
        f1 = f(center - dx)
        f2 = f(center + dx)
        fv1[j] = f1
        fv2[j] = f2
        res_k += _WGK[j] * (f1 + f2)
        res_abs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            res_g += _WG[j // 2] * (f1 + f2)
    mean = 0.5 * res_k
    res_asc = _WGK[7] * abs(fc - mean)
    for j in range(7):
        res_asc += _WGK[j] * (abs(fv1[j] - mean) + abs(fv2[j] - mean))
    result = res_k * half
    res_abs *= abs(half)
    res_asc *= abs(half)
    err = abs((res_k - res_g) * half)
    if res_asc != 0.0 and err != 0.0:
        err = res_asc * min(1.0, (200.0 * err / res_asc) ** 1.5)
    if res_abs > _TINY / (50.0 * _EPS):
        err = max(err, 50.0 * _EPS * res_abs)
    if not (math.isfinite(result) and math.isfinite(err)):
        raise QuadratureError(f"non-finite integrand on [{a!r}, {b!r}]", result, err)
    return result, err


def integrate(f: Callable[[float], float], a: float, b: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Integrate ``f`` over ``[a, b]`` by globally adaptive GK15 bisection.

    The panel with the largest error estimate is split until the summed
    error is at most ``max(abs_tol, rel_tol * |I|)``. A panel that would
    need splitting beyond ``spec.max_depth`` levels raises
    :class:`QuadratureError` carrying the current estimate and error.
    """
    if not a <= b:
        raise DomainError(f"integrate needs a <= b, got ({a!r}, {b!r})")
    if a == b:
        return 0.0
    val, err = _gk15(f, a, b)
    # heap entries: (-err, tiebreak, depth, lo, hi, val, err)
    heap = [(-err, 0, 0, a, b, val, err)]
    counter = 1
    while True:
        total = math.fsum(item[5] for item in heap)
        total_err = math.fsum(item[6] for item in heap)
        if total_err <= max(spec.abs_tol, spec.rel_tol * abs(total)):
            return total
        _, _, depth, lo, hi, _, worst = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if depth >= spec.max_depth or len(heap) >= _MAX_PANELS or not lo < mid < hi:
            raise QuadratureError(
                f"no convergence on [{a!r}, {b!r}] (stuck near [{lo!r}, {hi!r}])", total, total_err
            )
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        heapq.heappush(heap, (-e1, counter, depth + 1, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, counter + 1, depth + 1, mid, hi, v2, e2))
        counter += 2


def gamma_fn(x: float) -> float:
    """Gamma function for positive real arguments."""
    if not x > 0:
        raise DomainError(f"gamma_fn needs x > 0, got {x!r}")
    return math.gamma(x)


def _lower_gamma_series(a, x):
    # gamma(a, x) = x^a e^-x sum_k x^k / (a (a+1) ... (a+k)),  a > 0
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(10000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x))


def _upper_gamma_cf(a, x):
    # Legendre continued fraction, modified Lentz evaluation; any real a, x > 0.
    fpmin = 1e-300
    b = x + 1.0 - a
    c = 1.0 / fpmin
    d = 1.0 / b if b != 0.0 else 1.0 / fpmin
    h = d
    for i in range(1, 100000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < fpmin:
            d = fpmin
        c = b + an / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(-x + a * math.log(x)) * h
    raise ArithmeticError(f"upper_gamma continued fraction did not converge for a={a!r}, x={x!r}")


def _exp1(x):
    # E1(x) = -gamma_E - ln x - sum_{k>=1} (-x)^k / (k k!),  used for x < 1
    total = 0.0
    term = 1.0
    for k in range(1, 200):
        term *= -x / k
        piece = term / k
        total += piece
        if abs(piece) < _EPS * abs(total):
            break
    return -0.57721566490153286061 - math.log(x) - total


def upper_gamma(a: float, x: float) -> float:
    """Non-regularized upper incomplete gamma ``Gamma(a, x)``.

    Defined for ``a > 0, x >= 0`` and for any real ``a`` when ``x > 0``.
    """
    if x < 0:
        raise DomainError(f"upper_gamma needs x >= 0, got {x!r}")
    if x == 0:
        if a <= 0:
            raise DomainError(f"Gamma({a!r}, 0) diverges")
        return math.gamma(a)
    if a > 0:
        if x < a + 1.0:
            return math.gamma(a) - _lower_gamma_series(a, x)
        return _upper_gamma_cf(a, x)
    if x >= 1.0:
        return _upper_gamma_cf(a, x)
    # small x, a <= 0: recur down from a base in [0, 1)
    steps = math.ceil(-a)
    base = a + steps
    if base == 0.0:
        value = _exp1(x)
    elif base == 1.0:
        value = math.exp(-x)
    else:
        value = math.gamma(base) - _lower_gamma_series(base, x)
    for _ in range(steps):
        base -= 1.0
        value = (value - math.exp(base * math.log(x) - x)) / base
    return value


def _check_tail_args(n, eps, r0):
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    if not (0 <= eps < n / 2):
        raise DomainError(f"eps must lie in [0, n/2), got {eps!r}")
    if r0 < 0:
        raise DomainError(f"r0 must be >= 0, got {r0!r}")
    if r0 == 0 and not n - 2 * n * eps > 0:
        raise DomainError("integral diverges at 0: need n - 2 n eps > 0 when r0 = 0")


def tail_truncation_bound(power: float, T: float) -> float:
    """Upper bound for ``int_T^inf s^power e^{-s^2/4} ds``.

    Integration by parts gives ``2 T^(p-1) e^(-T^2/4) + 2 (p-1) int s^(p-2) ...``.
    For ``p <= 1`` the second term is nonpositive; otherwise it is at most
    ``2 (p-1) / T^2`` times the integral itself, so the bound holds once
    ``T^2 > 2 (p-1)``.
    """
    head = 2.0 * T ** (power - 1.0) * math.exp(-T * T / 4.0)
    if power <= 1.0:
        return head
    shrink = 1.0 - 2.0 * (power - 1.0) / (T * T)
    if shrink <= 0:
        return math.inf
    return head / shrink


def _truncation_point(power, start, abs_tol):
    T = max(start, 1.0, 2.0 * math.sqrt(max(power - 1.0, 0.0)) + 1.0)
    while tail_truncation_bound(power, T) > abs_tol / 10.0:
        T += 0.5
    return T


def gaussian_moment(power: float, r0: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``int_{r0}^inf s^power e^{-s^2/4} ds`` by truncated adaptive quadrature.

    Needs ``power > -1`` when ``r0 == 0``. The range is cut at the first
    ``T`` whose :func:`tail_truncation_bound` is below ``abs_tol / 10``.
    """
    if r0 < 0:
        raise DomainError(f"r0 must be >= 0, got {r0!r}")
    p = power + 1.0
    if r0 == 0 and not p > 0:
        raise DomainError(f"integral diverges at 0 for power {power!r}")
    pieces = []
    if r0 < 1.0:
        if p > 0:
            # u = s^p removes the algebraic endpoint behaviour at s = 0
            expo = 2.0 / p
            pieces.append(
                integrate(lambda u: math.exp(-(u ** expo) / 4.0), r0**p, 1.0, spec) / p
            )
        else:
            # s = e^t, r0 > 0 here
            pieces.append(
                integrate(lambda t: math.exp(p * t - math.exp(2.0 * t) / 4.0), math.log(r0), 0.0, spec)
            )
        lo = 1.0
    else:
        lo = r0
    T = _truncation_point(power, lo, spec.abs_tol)
    pieces.append(integrate(lambda s: s**power * math.exp(-s * s / 4.0), lo, T, spec))
    return math.fsum(pieces)


def weighted_tail_quadrature(n: int, eps: float, r0: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``int_{r0}^inf s^(n-1-2n eps) e^{-s^2/4} ds`` by quadrature."""
    _check_tail_args(n, eps, r0)
    return gaussian_moment(n - 1 - 2 * n * eps, r0, spec)


def weighted_tail_gamma(n: int, eps: float, r0: float) -> float:
    """Same integral via ``t = s^2/4``: ``2^(n-1-2n eps) Gamma((n - 2n eps)/2, r0^2/4)``."""
    _check_tail_args(n, eps, r0)
    power = n - 1 - 2 * n * eps
    return 2.0**power * upper_gamma((power + 1.0) / 2.0, r0 * r0 / 4.0)


def weighted_tail(n: int, eps: float, r0: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Gaussian-weighted tail ``int_{r0}^inf s^(n-1-2n eps) e^{-s^2/4} ds``.

    Computed by quadrature and by the incomplete gamma function; raises
    :class:`ConsistencyError` if the two disagree by more than
    ``10 * max(abs_tol, rel_tol * |I|)``. Returns the incomplete-gamma value.
    """
    by_gamma = weighted_tail_gamma(n, eps, r0)
    by_quad = weighted_tail_quadrature(n, eps, r0, spec)
    tol = 10.0 * max(spec.abs_tol, spec.rel_tol * abs(by_gamma))
    if abs(by_quad - by_gamma) > tol:
        raise ConsistencyError("weighted_tail quadrature/incomplete-gamma mismatch", by_quad, by_gamma, tol)
    return by_gamma


def _grid(lo, hi, points_per_decade, linear_points):
    if lo > 0:
        decades = math.log10(hi / lo)
        count = max(2, int(math.ceil(decades * points_per_decade)) + 1)
        step = math.log(hi / lo) / (count - 1)
        pts = [lo * math.exp(k * step) for k in range(count)]
    else:
        count = linear_points
        pts = [lo + (hi - lo) * k / (count - 1) for k in range(count)]
    pts[0], pts[-1] = lo, hi
    return pts


def _midpoint(a, b):
    if a > 0:
        return math.sqrt(a) * math.sqrt(b)
    return 0.5 * (a + b)


def solve_threshold(
    F: Callable[[float], float],
    target: float,
    bracket: Bracket,
    tol: float,
    points_per_decade: float = 2.0,
    linear_points: int = 65,
) -> float:
    """Largest-admissible point found by scanning upward, then bisecting.

    Scans a log-spaced grid (linear if ``bracket.lo <= 0``) from ``lo`` and
    bisects the first interval where ``F`` drops below ``target``. The result
    ``x`` satisfies ``F(x) >= target`` and either ``x == bracket.hi`` or
    ``F(x * (1 + tol)) < target``. ``F`` need not be monotone.
    """
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol!r}")
    f_lo = F(bracket.lo)
    if not f_lo >= target:
        raise InfeasibleError(f_lo, target)
    start = bracket.lo
    hi = bracket.hi
    while True:
        grid = _grid(start, hi, points_per_decade, linear_points)
        good = grid[0]
        bad = None
        for x in grid[1:]:
            if F(x) >= target:
                good = x
            else:
                bad = x
                break
        if bad is None:
            return hi
        for _ in range(4000):
            if bad - good <= tol * abs(good):
                break
            mid = _midpoint(good, bad)
            if not good < mid < bad:
                break
            if F(mid) >= target:
                good = mid
            else:
                bad = mid
        probe = good * (1.0 + tol) if good > 0 else bad
        if probe >= hi:
            return hi if F(hi) >= target else good
        if F(probe) < target:
            return good
        # non-monotone wrinkle right above `good`: resume the scan past it
        start = probe
