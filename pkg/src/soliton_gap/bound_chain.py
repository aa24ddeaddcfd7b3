"""The gap-threshold constant chain.

Given the dimension ``n``, a sectional curvature ceiling ``A``, an f-volume
floor ``v`` and a rigidity constant ``eps_prime`` (any soliton with
``Vol_f >= 1 - eps_prime`` is Gaussian), this module derives in order

    C1 -> H -> C2 -> C(A, n) -> Vol(B_p(1)) floor -> injectivity floor -> C0

and then the largest scalar-curvature level ``eps`` at which the f-volume
lower bound ``F(eps)`` still reaches ``1 - eps_prime``.

The constants are extremely small (``C(A, n) = exp(-1 - 37 C2)``), so every
stage that can underflow is carried in log form as well.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError, InfeasibleError
from .numerics import DEFAULT_SPEC, Bracket, QuadratureSpec, integrate, solve_threshold, weighted_tail
from .serialize import decode_real, encode_real
from .spaceform import SpaceFormSpec, log_model_volume, model_volume, unit_ball_volume

__all__ = [
    "SCHEMA_VERSION",
    "EPS_FLOOR",
    "MARGIN",
    "GapInputs",
    "Stage",
    "FCurve",
    "ChainConstants",
    "GapSolution",
    "BoundReport",
    "sectional_lower_from_upper",
    "bg_ratio",
    "noncollapse_constant",
    "log_noncollapse_constant",
    "injectivity_lower",
    "log_injectivity_lower",
    "alpha",
    "c_A_eps",
    "f_volume_bound",
    "f_volume_lower",
    "chain_constants",
    "solve_gap_epsilon",
    "sample_curve",
    "full_report",
    "formula_namespace",
    "evaluate_formula",
]

SCHEMA_VERSION = "1.0"
EPS_FLOOR = 1e-300
MARGIN = 1e-6
SOLVER_TOL = 1e-6
NONCOLLAPSE_WEIGHT = 37.0
SHARP_NONCOLLAPSE_WEIGHT = 36.0 + math.exp(-1.0)


@dataclass(frozen=True)
class GapInputs:
    n: int
    A: float
    v: float
    eps_prime: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"dimension n must be an integer >= 2, got {self.n!r}")
        if not (math.isfinite(self.A) and self.A > 0):
            raise DomainError(f"sectional curvature bound A must be > 0, got {self.A!r}")
        if not 0 < self.v <= 1:
            raise DomainError(f"f-volume floor v must lie in (0, 1], got {self.v!r}")
        if not 0 < self.eps_prime < 1:
            raise DomainError(f"rigidity constant eps_prime must lie in (0, 1), got {self.eps_prime!r}")

    def to_dict(self):
        return {
            "n": int(self.n),
            "A": encode_real(self.A),
            "v": encode_real(self.v),
            "eps_prime": encode_real(self.eps_prime),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["n"]), decode_real(d["A"]), decode_real(d["v"]), decode_real(d["eps_prime"]))


# ---------------------------------------------------------------------------
# individual constants

def sectional_lower_from_upper(n: int, A: float) -> float:
    """Sectional curvature floor ``H = -(n(n-1) - 2) A / 2`` implied by ``K <= A`` and ``R >= 0``.

    ``R`` is the sum of ``K`` over the ``n(n-1)`` ordered pairs of an
    orthonormal frame, so for any plane ``2K = R - (other n(n-1) - 2 terms)
    >= -(n(n-1) - 2) A``.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"dimension n must be an integer >= 2, got {n!r}")
    if not A > 0:
        raise DomainError(f"A must be > 0, got {A!r}")
    return 0.0 - (n * (n - 1) - 2) * A / 2.0


def bg_ratio(n: int, H: float, q: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Extremal doubling ratio ``V_H(1) / V_H(1/2)`` for curvature floor ``H <= 0``."""
    if H > 0:
        raise DomainError(f"bg_ratio expects H <= 0, got {H!r}")
    spec = SpaceFormSpec(n, H)
    return math.exp(log_model_volume(spec, 1.0, q) - log_model_volume(spec, 0.5, q))


def log_noncollapse_constant(n: int, A: float, q: QuadratureSpec = DEFAULT_SPEC, sharp: bool = False) -> float:
    weight = SHARP_NONCOLLAPSE_WEIGHT if sharp else NONCOLLAPSE_WEIGHT
    return -1.0 - weight * bg_ratio(n, sectional_lower_from_upper(n, A), q)


def noncollapse_constant(n: int, A: float, q: QuadratureSpec = DEFAULT_SPEC, sharp: bool = False) -> float:
    """``C(A, n) = exp(-1 - 37 C2)`` with ``Vol(B_p(1)) >= C(A, n) v``.

    Assumes ``R <= 1``. With ``sharp=True`` the weight 37 is replaced by
    ``36 + 1/e``. The result underflows to 0.0 for moderately large ``n A``;
    use :func:`log_noncollapse_constant` in that regime.
    """
    return math.exp(log_noncollapse_constant(n, A, q, sharp))


def _logaddexp(a, b):
    hi, lo = (a, b) if a >= b else (b, a)
    if lo == -math.inf:
        return hi
    return hi + math.log1p(math.exp(lo - hi))


def log_injectivity_lower(
    n: int, A: float, log_volB1_lower: float, q: QuadratureSpec = DEFAULT_SPEC
) -> float:
    r"""Log of the injectivity radius floor.

    Takes ``r0 = r1 = s = pi/(4 sqrt A)`` at the base point, giving
    ``i >= (r0/2) / (1 + V_H(2 r0) / Vol(B_p(r0)))``. For ``r0 < 1`` the ball
    volume is bounded through ``Vol(B_p(r0)) >= V_H(r0)/V_H(1) Vol(B_p(1))``.
    """
    H = sectional_lower_from_upper(n, A)
    spec = SpaceFormSpec(n, H)
    r0 = math.pi / (4.0 * math.sqrt(A))
    log_vol = log_volB1_lower
    if r0 < 1.0:
        log_vol += log_model_volume(spec, r0, q) - log_model_volume(spec, 1.0, q)
    return math.log(r0 / 2.0) - _logaddexp(0.0, log_model_volume(spec, 2.0 * r0, q) - log_vol)


def injectivity_lower(n: int, A: float, volB1_lower: float, q: QuadratureSpec = DEFAULT_SPEC) -> float:
    if not volB1_lower > 0:
        raise DomainError(f"volB1_lower must be > 0, got {volB1_lower!r}")
    return math.exp(log_injectivity_lower(n, A, math.log(volB1_lower), q))


def alpha(n: int, eps: float) -> float:
    """``(1 + 4 eps^(1/4) + 8 eps^(1/2))^(eps - n/2) * eps^(eps/2)``."""
    if not 0 < eps <= 1:
        raise DomainError(f"eps must lie in (0, 1], got {eps!r}")
    x = eps**0.25
    return math.exp((eps - n / 2.0) * math.log1p(4.0 * x + 8.0 * x * x) + 0.5 * eps * math.log(eps))


def _sinc(y):
    return math.sin(y) / y if y != 0.0 else 1.0


def c_A_eps(n: int, A: float, eps: float, q: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``n w_n int_0^(eps^(1/4)) (sin(sqrt(A) s)/sqrt(A))^(n-1) ds / eps^(n/4)``.

    Evaluated after the substitution ``s = eps^(1/4) t`` so that tiny ``eps``
    neither underflows nor cancels.
    """
    if not eps > 0:
        raise DomainError(f"eps must be > 0, got {eps!r}")
    if not A > 0:
        raise DomainError(f"A must be > 0, got {A!r}")
    x = eps**0.25
    cap = math.pi / math.sqrt(A)
    if x > cap:
        raise DomainError(f"eps^(1/4) = {x!r} exceeds pi/sqrt(A) = {cap!r}")
    k = math.sqrt(A) * x
    m = n - 1
    return n * unit_ball_volume(n) * integrate(lambda t: (t * _sinc(k * t)) ** m, 0.0, 1.0, q)


def f_volume_bound(n: int, A: float, eps: float, q: QuadratureSpec = DEFAULT_SPEC) -> float:
    """The f-volume lower bound as a bare formula in ``eps`` (no window check).

    ``e^{-eps} (4 pi)^(-n/2) (n - 2 eps) alpha(eps) C(A, eps) int_{r0}^inf s^(n-1-2n eps) e^{-s^2/4} ds``
    with ``r0 = eps^(1/4) + 2 eps^(1/2)``.
    """
    if not 0 < eps <= 1:
        raise DomainError(f"eps must lie in (0, 1], got {eps!r}")
    if not eps < n / 2:
        raise DomainError(f"eps must be < n/2 = {n / 2!r}, got {eps!r}")
    r0 = eps**0.25 + 2.0 * math.sqrt(eps)
    return (
        math.exp(-eps)
        * (4.0 * math.pi) ** (-n / 2.0)
        * (n - 2.0 * eps)
        * alpha(n, eps)
        * c_A_eps(n, A, eps, q)
        * weighted_tail(n, eps, r0, q)
    )


# ---------------------------------------------------------------------------
# the chain

def _formulas(sharp):
    weight = "(36 + exp(-1))" if sharp else "37"
    return {
        "C1": "(n*(n - 1) - 2)*A/2",
        "H": "0.0 - C1",
        "C2": "exp(logV_H(n, H, 1.0) - logV_H(n, H, 0.5))",
        "log_C_noncollapse": f"-1 - {weight}*C2",
        "C_noncollapse": "exp(log_C_noncollapse)",
        "log_volB1_lower": "log_C_noncollapse + log(v)",
        "volB1_lower": "C_noncollapse*v",
        "r_inj": "pi/(4*sqrt(A))",
        "log_volBr_lower": (
            "log_volB1_lower if r_inj >= 1 else "
            "log_volB1_lower + logV_H(n, H, r_inj) - logV_H(n, H, 1.0)"
        ),
        "log_inj_lower": "log(r_inj/2) - logaddexp(0.0, logV_H(n, H, 2*r_inj) - log_volBr_lower)",
        "inj_lower": "exp(log_inj_lower)",
        "log_C0": "min(log_inj_lower, log(pi/sqrt(A)))",
        "C0": "exp(log_C0)",
        "log_eps_cap": "min(0.0, log(n/2*(1 - margin)), 4*log_C0 + log(1 - margin))",
        "eps_cap": "exp(log_eps_cap)",
    }


_ASSUMPTIONS = {
    "C1": ("K <= A on every plane (strict K < A relaxed to <=)", "R >= 0"),
    "C2": ("Bishop-Gromov comparison at the sectional floor H",),
    "log_C_noncollapse": (
        "R <= 1 (guaranteed by eps <= 1)",
        "mu_0 = -log Vol_f(M) <= -log v",
        "log-Sobolev test function: cutoff equal to 1 on B(1/2), 0 off B(1), |cutoff'| <= 3",
    ),
    "volB1_lower": ("Vol_f(M) >= v",),
    "r_inj": ("Cheeger-Gromov-Taylor radii r1 = r0 = s = pi/(4 sqrt A), evaluated at x = p",),
    "log_volBr_lower": ("Bishop-Gromov scaling from radius 1 down to r_inj when r_inj < 1",),
    "log_C0": ("Guenther comparison needs r < min(injectivity radius, pi/sqrt(A))",),
    "log_eps_cap": ("eps^(1/4) < C0, eps < n/2, eps <= 1, each kept with relative margin",),
}


@dataclass(frozen=True)
class Stage:
    name: str
    formula: str
    value: Optional[float]
    assumptions: tuple = ()

    def to_dict(self):
        return {
            "name": self.name,
            "formula": self.formula,
            "value": encode_real(self.value),
            "assumptions": list(self.assumptions),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["name"], d["formula"], decode_real(d["value"]), tuple(d["assumptions"]))


@dataclass(frozen=True)
class ChainConstants:
    """Every constant upstream of the threshold search."""

    inputs: GapInputs
    sharp: bool
    C1: float
    H: float
    C2: float
    log_C_noncollapse: float
    C_noncollapse: float
    log_volB1_lower: float
    volB1_lower: float
    r_inj: float
    log_volBr_lower: float
    log_inj_lower: float
    inj_lower: float
    log_C0: float
    C0: float
    log_eps_cap: float
    eps_cap: float

    def stages(self) -> list[Stage]:
        formulas = _formulas(self.sharp)
        return [
            Stage(name, formula, getattr(self, name), _ASSUMPTIONS.get(name, ()))
            for name, formula in formulas.items()
        ]

    @property
    def limiting_cap(self) -> str:
        """Which constraint sets ``eps_cap``."""
        n = self.inputs.n
        terms = {
            "eps <= 1": 0.0,
            "eps < n/2": math.log(n / 2 * (1 - MARGIN)),
            "eps^(1/4) < C0": 4 * self.log_C0 + math.log(1 - MARGIN),
        }
        return min(terms, key=terms.get)


def chain_constants(inputs: GapInputs, q: QuadratureSpec = DEFAULT_SPEC, sharp: bool = False) -> ChainConstants:
    n, A, v = inputs.n, inputs.A, inputs.v
    C1 = (n * (n - 1) - 2) * A / 2.0
    H = sectional_lower_from_upper(n, A)
    C2 = bg_ratio(n, H, q)
    log_C = log_noncollapse_constant(n, A, q, sharp)
    log_vb1 = log_C + math.log(v)
    r_inj = math.pi / (4.0 * math.sqrt(A))
    log_vbr = log_vb1
    if r_inj < 1.0:
        spec = SpaceFormSpec(n, H)
        log_vbr += log_model_volume(spec, r_inj, q) - log_model_volume(spec, 1.0, q)
    log_inj = log_injectivity_lower(n, A, log_vb1, q)
    log_C0 = min(log_inj, math.log(math.pi / math.sqrt(A)))
    log_cap = min(0.0, math.log(n / 2 * (1 - MARGIN)), 4 * log_C0 + math.log(1 - MARGIN))
    return ChainConstants(
        inputs=inputs,
        sharp=sharp,
        C1=C1,
        H=H,
        C2=C2,
        log_C_noncollapse=log_C,
        C_noncollapse=math.exp(log_C),
        log_volB1_lower=log_vb1,
        volB1_lower=math.exp(log_C) * v,
        r_inj=r_inj,
        log_volBr_lower=log_vbr,
        log_inj_lower=log_inj,
        inj_lower=math.exp(log_inj),
        log_C0=log_C0,
        C0=math.exp(log_C0),
        log_eps_cap=log_cap,
        eps_cap=math.exp(log_cap),
    )


def f_volume_lower(
    inputs: GapInputs,
    eps: float,
    q: QuadratureSpec = DEFAULT_SPEC,
    chain: ChainConstants | None = None,
) -> float:
    """Certified lower bound for ``Vol_f(M)`` when ``R <= eps``.

    Requires ``0 < eps <= 1``, ``eps < n/2`` and ``eps^(1/4) < C0``; the last
    is the comparison window that lets the ball of radius ``eps^(1/4)`` sit
    inside the sublevel set ``D(eps^(1/4) + 2 eps^(1/2))``.
    """
    if not 0 < eps <= 1:
        raise DomainError(f"eps-window: eps must lie in (0, 1], got {eps!r}")
    if not eps < inputs.n / 2:
        raise DomainError(f"eps-window: eps must be < n/2 = {inputs.n / 2!r}, got {eps!r}")
    if chain is None:
        chain = chain_constants(inputs, q)
    if not math.log(eps) / 4.0 < chain.log_C0:
        raise DomainError(
            f"C0-window: eps^(1/4) = {eps**0.25!r} is not below C0 = {chain.C0!r} "
            f"(log C0 = {chain.log_C0!r})"
        )
    return f_volume_bound(inputs.n, inputs.A, eps, q)


# ---------------------------------------------------------------------------
# threshold search

@dataclass(frozen=True)
class GapSolution:
    feasible: bool
    eps_star: Optional[float]
    F_at_eps_star: Optional[float]
    target: float
    eps_cap: float
    log10_eps_cap: float
    limiting_stage: str
    message: str
    formula_threshold: Optional[float] = None  # threshold of the bare formula, ignoring C0

    def to_dict(self):
        return {
            "feasible": self.feasible,
            "eps_star": encode_real(self.eps_star),
            "F_at_eps_star": encode_real(self.F_at_eps_star),
            "target": encode_real(self.target),
            "eps_cap": encode_real(self.eps_cap),
            "log10_eps_cap": encode_real(self.log10_eps_cap),
            "limiting_stage": self.limiting_stage,
            "message": self.message,
            "formula_threshold": encode_real(self.formula_threshold),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            feasible=bool(d["feasible"]),
            eps_star=decode_real(d["eps_star"]),
            F_at_eps_star=decode_real(d["F_at_eps_star"]),
            target=decode_real(d["target"]),
            eps_cap=decode_real(d["eps_cap"]),
            log10_eps_cap=decode_real(d["log10_eps_cap"]),
            limiting_stage=d["limiting_stage"],
            message=d["message"],
            formula_threshold=decode_real(d["formula_threshold"]),
        )


def _formula_cap(n, A):
    return min(1.0, n / 2 * (1 - MARGIN), (math.pi / math.sqrt(A)) ** 4 * (1 - MARGIN))


def _formula_threshold(inputs, q, eps_floor, points_per_decade):
    target = 1.0 - inputs.eps_prime
    F = lambda e: f_volume_bound(inputs.n, inputs.A, e, q)
    try:
        return solve_threshold(
            F, target, Bracket(eps_floor, _formula_cap(inputs.n, inputs.A)), SOLVER_TOL, points_per_decade
        )
    except InfeasibleError:
        return None


def solve_gap_epsilon(
    inputs: GapInputs,
    q: QuadratureSpec = DEFAULT_SPEC,
    sharp: bool = False,
    eps_floor: float = EPS_FLOOR,
    points_per_decade: float = 1.0,
    chain: ChainConstants | None = None,
) -> GapSolution:
    """Largest ``eps`` in ``(0, eps_cap]`` with ``F(eps) >= 1 - eps_prime``.

    Infeasibility is returned, not raised. When the cap itself lies below
    ``eps_floor`` the solution also carries the threshold the bare formula
    would give without the injectivity window, to show which stage binds.
    """
    if chain is None:
        chain = chain_constants(inputs, q, sharp)
    target = 1.0 - inputs.eps_prime
    log10_cap = chain.log_eps_cap / math.log(10.0)
    common = dict(target=target, eps_cap=chain.eps_cap, log10_eps_cap=log10_cap)
    if not chain.eps_cap > eps_floor:
        ft = _formula_threshold(inputs, q, eps_floor, points_per_decade)
        return GapSolution(
            feasible=False,
            eps_star=None,
            F_at_eps_star=None,
            limiting_stage=chain.limiting_cap,
            message=(
                f"admissible eps range is empty in double precision: eps_cap = 10^{log10_cap:.6g} "
                f"is below the scan floor {eps_floor:g} (C0 = exp({chain.log_C0:.6g}))"
            ),
            formula_threshold=ft,
            **common,
        )
    F = lambda e: f_volume_lower(inputs, e, q, chain)
    try:
        eps_star = solve_threshold(F, target, Bracket(eps_floor, chain.eps_cap), SOLVER_TOL, points_per_decade)
    except InfeasibleError as exc:
        return GapSolution(
            feasible=False,
            eps_star=None,
            F_at_eps_star=None,
            limiting_stage="f-volume target",
            message=f"F({eps_floor:g}) = {exc.value_at_lo!r} is below the target {target!r}",
            **common,
        )
    stage = chain.limiting_cap if eps_star == chain.eps_cap else "f-volume target"
    return GapSolution(
        feasible=True,
        eps_star=eps_star,
        F_at_eps_star=F(eps_star),
        limiting_stage=stage,
        message="feasible",
        **common,
    )


# ---------------------------------------------------------------------------
# curve and full report

@dataclass(frozen=True)
class FCurve:
    samples: tuple = ()  # ((eps, F), ...) sorted by eps

    def to_list(self):
        return [{"eps": encode_real(e), "F": encode_real(f)} for e, f in self.samples]

    @classmethod
    def from_list(cls, rows):
        return cls(tuple((decode_real(r["eps"]), decode_real(r["F"])) for r in rows))

    def admissible(self, eps_prime: float) -> list[bool]:
        return [f >= 1.0 - eps_prime for _, f in self.samples]


def log_grid(lo: float, hi: float, count: int) -> list[float]:
    if count < 1:
        raise DomainError(f"need at least one point, got {count!r}")
    if count == 1 or lo == hi:
        return [hi]
    a, b = math.log(lo), math.log(hi)
    pts = [math.exp(a + (b - a) * k / (count - 1)) for k in range(count)]
    pts[0], pts[-1] = lo, hi
    return pts


def sample_curve(F, eps_values, threads: int = 1) -> FCurve:
    """Evaluate ``F`` on the grid; threads only change scheduling, not results."""
    eps_values = sorted(eps_values)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(F, eps_values))
    else:
        values = [F(e) for e in eps_values]
    return FCurve(tuple(zip(eps_values, values)))


@dataclass(frozen=True)
class BoundReport:
    inputs: GapInputs
    sharp: bool
    quadrature: QuadratureSpec
    stages: tuple
    solution: GapSolution
    curve: FCurve = field(default_factory=FCurve)

    def stage(self, name: str) -> Stage:
        for s in self.stages:
            if s.name == name:
                return s
        raise KeyError(name)

    def __getattr__(self, name):
        if name.startswith("_"):
            raise AttributeError(name)
        try:
            return self.stage(name).value
        except KeyError:
            raise AttributeError(name) from None

    @property
    def eps_star(self):
        return self.solution.eps_star

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "inputs": {
                **self.inputs.to_dict(),
                "sharp_constant": self.sharp,
                "quadrature": {
                    "abs_tol": encode_real(self.quadrature.abs_tol),
                    "rel_tol": encode_real(self.quadrature.rel_tol),
                    "max_depth": int(self.quadrature.max_depth),
                },
            },
            "stages": [s.to_dict() for s in self.stages],
            "result": self.solution.to_dict(),
            "curve": self.curve.to_list(),
        }

    @classmethod
    def from_dict(cls, d):
        if d.get("schema_version") != SCHEMA_VERSION:
            raise DomainError(f"unsupported report schema {d.get('schema_version')!r}")
        qd = d["inputs"]["quadrature"]
        return cls(
            inputs=GapInputs.from_dict(d["inputs"]),
            sharp=bool(d["inputs"]["sharp_constant"]),
            quadrature=QuadratureSpec(decode_real(qd["abs_tol"]), decode_real(qd["rel_tol"]), int(qd["max_depth"])),
            stages=tuple(Stage.from_dict(s) for s in d["stages"]),
            solution=GapSolution.from_dict(d["result"]),
            curve=FCurve.from_list(d["curve"]),
        )


def full_report(
    inputs: GapInputs,
    q: QuadratureSpec = DEFAULT_SPEC,
    sharp: bool = False,
    curve_points: int = 64,
    threads: int = 1,
    eps_floor: float = EPS_FLOOR,
) -> BoundReport:
    """All chain constants, the threshold and an F-curve inside the admissible window."""
    chain = chain_constants(inputs, q, sharp)
    solution = solve_gap_epsilon(inputs, q, sharp, eps_floor, chain=chain)
    stages = chain.stages()
    stages.append(
        Stage(
            "eps_star",
            "threshold(1 - eps_prime, eps_floor, eps_cap)",
            solution.eps_star,
            ("rigidity constant eps_prime supplied by the user", "F not assumed monotone: scan then bisect"),
        )
    )
    curve = FCurve()
    if chain.eps_cap > eps_floor:
        lo = max(eps_floor, chain.eps_cap * 1e-20)
        F = lambda e: f_volume_lower(inputs, e, q, chain)
        curve = sample_curve(F, log_grid(lo, chain.eps_cap, curve_points), threads)
    return BoundReport(inputs, sharp, q, tuple(stages), solution, curve)


# ---------------------------------------------------------------------------
# re-evaluation of recorded formulas

def formula_namespace(inputs: GapInputs, q: QuadratureSpec = DEFAULT_SPEC, eps_floor: float = EPS_FLOOR) -> dict:
    """Names available to recorded stage formulas."""

    def logV_H(n, H, r):
        return log_model_volume(SpaceFormSpec(n, H), r, q)

    def V_H(n, H, r):
        return model_volume(SpaceFormSpec(n, H), r, q)

    def threshold(target, lo, hi):
        if not hi > lo:
            return None
        F = lambda e: f_volume_lower(inputs, e, q)
        try:
            return solve_threshold(F, target, Bracket(lo, hi), SOLVER_TOL, 1.0)
        except InfeasibleError:
            return None

    return {
        "n": inputs.n,
        "A": inputs.A,
        "v": inputs.v,
        "eps_prime": inputs.eps_prime,
        "margin": MARGIN,
        "eps_floor": eps_floor,
        "pi": math.pi,
        "exp": math.exp,
        "log": math.log,
        "sqrt": math.sqrt,
        "min": min,
        "max": max,
        "logaddexp": _logaddexp,
        "logV_H": logV_H,
        "V_H": V_H,
        "threshold": threshold,
    }


def evaluate_formula(formula: str, namespace: dict):
    """Evaluate a recorded stage formula against ``namespace`` (no builtins)."""
    return eval(compile(formula, "<stage>", "eval"), {"__builtins__": {}}, dict(namespace))
