"""
Optimal compression ratios and efficiency bounds of the asymmetric cycle.

Two routes are kept deliberately separate:

* closed forms -- trigonometric roots of the stationarity cubics, the max-work
  ratio ``(tau sech 2r)**(1/3)`` and the efficiency formulas built on them;
* :func:`numeric_argmax` -- a dense grid scan refined by golden-section search,
  which knows nothing about the closed forms and serves as their oracle.

Efficiency bounds take the Carnot efficiency ``eta_c = 1 - tau``; the
compression-ratio optima take ``tau``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .cycle import StrokeConfig
from .errors import ConfigError, DomainError, NotIrreducibleError
from .high_temp import efficiency_array, work_array

# arccos arguments this far outside [-1, 1] are treated as round-off and clamped
ARCCOS_CLAMP = 1e-10

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Objective(enum.Enum):
    MAX_WORK = "work"
    MAX_EFFICIENCY = "efficiency"


@dataclass(frozen=True)
class Cubic:
    """``a*y**3 + b*y**2 + c*y + d = 0`` with real coefficients."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        if self.a == 0:
            raise DomainError("leading coefficient must be non-zero")

    @property
    def discriminant(self) -> float:
        a, b, c, d = self.a, self.b, self.c, self.d
        return (18 * a * b * c * d - 4 * b ** 3 * d + b * b * c * c
                - 4 * a * c ** 3 - 27 * a * a * d * d)

    def monic(self) -> tuple[float, float, float]:
        """Coefficients ``(A, B, C)`` of ``y**3 + A y**2 + B y + C``."""
        return self.b / self.a, self.c / self.a, self.d / self.a

    def __call__(self, y: float) -> float:
        return ((self.a * y + self.b) * y + self.c) * y + self.d

    def residual(self, y: float) -> float:
        """``|p(y)|`` relative to ``max(1, |coefficients|)``."""
        scale = max(1.0, abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        return abs(self(y)) / scale


def _chebyshev_form(cubic: Cubic) -> tuple[float, float, float]:
    """Return ``(shift, Q, x)`` with roots ``shift + (2/3) sqrt(Q) u``, ``4u^3 - 3u = x``."""
    A, B, C = cubic.monic()
    Q = A * A - 3.0 * B
    if Q <= 0:
        raise DomainError(f"need A**2 - 3B > 0 for the trigonometric form, got {Q}")
    x = -(2.0 * A ** 3 - 9.0 * A * B + 27.0 * C) / (2.0 * Q ** 1.5)
    return -A / 3.0, Q, x


def cubic_trig_root(cubic: Cubic, branch: int = 0) -> float:
    """One of the three real roots of an irreducible cubic.

    ``branch=0`` is the principal-arccos root
    ``-A/3 + (2/3) sqrt(A^2 - 3B) cos(arccos(x) / 3)``; branches 1 and 2 shift
    the angle by ``+2 pi`` and ``-2 pi``.
    """
    if not cubic.discriminant > 0:
        raise NotIrreducibleError(
            f"discriminant {cubic.discriminant:.6g} <= 0: not three distinct real roots")
    shift, Q, x = _chebyshev_form(cubic)
    if abs(x) > 1.0 + ARCCOS_CLAMP:
        raise DomainError(f"arccos argument {x!r} outside [-1, 1]")
    theta = math.acos(min(1.0, max(-1.0, x)))
    offset = (0.0, 2.0 * math.pi, -2.0 * math.pi)[branch]
    return shift + (2.0 / 3.0) * math.sqrt(Q) * math.cos((theta + offset) / 3.0)


def cubic_hyperbolic_root(cubic: Cubic) -> float:
    """The single real root when the trigonometric argument exceeds 1 in magnitude.

    Same expression as :func:`cubic_trig_root` with ``cos(arccos(x)/3)``
    continued to ``sign(x) cosh(arccosh(|x|)/3)``.
    """
    shift, Q, x = _chebyshev_form(cubic)
    if abs(x) <= 1.0:
        raise DomainError(f"|x| = {abs(x)!r} <= 1: use cubic_trig_root")
    u = math.copysign(math.cosh(math.acosh(abs(x)) / 3.0), x)
    return shift + (2.0 / 3.0) * math.sqrt(Q) * u


def real_roots(cubic: Cubic) -> list[tuple[str, float]]:
    """Closed-form real roots labelled by how they were obtained, principal first."""
    if cubic.discriminant > 0:
        return [(f"trig-{k}", cubic_trig_root(cubic, k)) for k in range(3)]
    _, _, x = _chebyshev_form(cubic)
    if abs(x) <= 1.0 + ARCCOS_CLAMP:
        # D == 0 up to round-off: repeated root, the trigonometric form still holds
        theta = math.acos(min(1.0, max(-1.0, x)))
        shift, Q, _ = _chebyshev_form(cubic)
        return [("trig-0", shift + (2.0 / 3.0) * math.sqrt(Q) * math.cos(theta / 3.0))]
    return [("hyperbolic", cubic_hyperbolic_root(cubic))]


def se_efficiency_cubic(tau: float, r: float) -> Cubic:
    """Stationarity condition of the sudden-expansion efficiency in z."""
    _check_tau_r(tau, r)
    ch = math.cosh(2.0 * r)
    return Cubic(2.0 * ch * ch, -3.0 * tau * ch, 0.0, (2.0 * tau - ch) * tau)


def sc_efficiency_cubic(tau: float, r: float) -> Cubic:
    """Stationarity condition of the sudden-compression efficiency in z."""
    _check_tau_r(tau, r)
    ch = math.cosh(2.0 * r)
    return Cubic((2.0 * ch - tau) * ch, 0.0, -3.0 * tau * ch, 2.0 * tau * tau)


def _check_tau_r(tau: float, r: float) -> None:
    if not 0.0 < tau < 1.0:
        raise DomainError(f"tau must lie in (0, 1), got {tau}")
    if not (r >= 0.0 and math.isfinite(r)):
        raise DomainError(f"squeezing parameter must be finite and >= 0, got {r}")


def _check_eta_c(eta_c: float) -> float:
    if not 0.0 < eta_c < 1.0:
        raise DomainError(f"Carnot efficiency must lie in (0, 1), got {eta_c}")
    return 1.0 - eta_c


def _asym(cfg: "StrokeConfig | str") -> StrokeConfig:
    cfg = StrokeConfig.parse(cfg)
    if not cfg.is_asymmetric:
        raise ConfigError(f"no closed-form optimum for {cfg.name}")
    return cfg


@dataclass(frozen=True)
class Optimum:
    z_star: float
    value: float
    objective: Objective
    config: StrokeConfig
    branch: str = ""


def _objective_fn(objective: Objective, cfg: StrokeConfig, tau: float, r: float):
    if objective is Objective.MAX_WORK:
        return lambda z: work_array(z, tau, r, cfg)
    return lambda z: efficiency_array(z, tau, r, cfg)


def optimal_z_efficiency(tau: float, r: float, cfg: "StrokeConfig | str") -> Optimum:
    """Compression ratio maximising the high-temperature efficiency.

    Takes the principal root of the stationarity cubic. If that root misses
    the engine region, the other real roots are tried and the one with the
    largest efficiency wins; ``branch`` records which root was used.
    """
    cfg = _asym(cfg)
    cubic = se_efficiency_cubic(tau, r) if cfg is StrokeConfig.SUDDEN_EXPANSION \
        else sc_efficiency_cubic(tau, r)
    eta = _objective_fn(Objective.MAX_EFFICIENCY, cfg, tau, r)

    candidates = []
    for label, z in real_roots(cubic):
        if 0.0 < z < 1.0:
            value = eta(z)
            if math.isfinite(value):
                candidates.append((label, z, value))
    if not candidates:
        raise DomainError(
            f"no root of the {cfg.value} efficiency cubic lies in the engine region "
            f"for tau={tau}, r={r}; roots: {real_roots(cubic)}")
    principal = candidates[0] if candidates[0][0] in ("trig-0", "hyperbolic") else None
    label, z, value = principal or max(candidates, key=lambda c: c[2])
    return Optimum(z, value, Objective.MAX_EFFICIENCY, cfg, label)


def max_work_z(tau: float, r: float) -> float:
    _check_tau_r(tau, r)
    return (tau / math.cosh(2.0 * r)) ** (1.0 / 3.0)


def optimal_z_work(tau: float, r: float,
                   cfg: "StrokeConfig | str" = StrokeConfig.SUDDEN_EXPANSION) -> Optimum:
    """Max-work compression ratio; the same for both configurations."""
    cfg = _asym(cfg)
    z = max_work_z(tau, r)
    return Optimum(z, float(work_array(z, tau, r, cfg)), Objective.MAX_WORK, cfg, "closed-form")


def _cos_third_arccos(x: float) -> float:
    """``cos(arccos(x) / 3)``, continued analytically for ``x > 1``."""
    if x > 1.0 + ARCCOS_CLAMP:
        return math.cosh(math.acosh(x) / 3.0)
    if x < -1.0 - ARCCOS_CLAMP:
        raise DomainError(f"arccos argument {x!r} below -1")
    return math.cos(math.acos(min(1.0, max(-1.0, x))) / 3.0)


def eta_upper_bound(eta_c: float, r: float, cfg: "StrokeConfig | str") -> float:
    """Maximum high-temperature efficiency over the compression ratio."""
    cfg = _asym(cfg)
    t = _check_eta_c(eta_c)
    ch = math.cosh(2.0 * r)
    sh = 1.0 / ch
    if cfg is StrokeConfig.SUDDEN_EXPANSION:
        x = (2.0 * ch + sh * t * (t - 4.0 * ch)) / (t * t * sh)
        A = _cos_third_arccos(x) * t * sh
        num = ((0.25 * sh * (1.0 + 2.0 * ch * (1.0 + A) - eta_c) * (2.0 * A * ch + 1.0 - eta_c)
                - 2.0 * t)
               * (sh + 2.0 * (A - 1.0) - eta_c * sh))
        return num / (2.0 * (1.0 - eta_c - 2.0 * A * ch))
    P = math.sqrt(t / (-1.0 + 2.0 * ch + eta_c))
    x = -(t * sh) / P
    if abs(x) > 1.0 + ARCCOS_CLAMP:
        raise DomainError(f"arccos argument {x!r} outside [-1, 1]")
    B = math.acos(min(1.0, max(-1.0, x)))
    c1, c2 = math.cos(B / 3.0), math.cos(2.0 * B / 3.0)
    num = (1.0 - 2.0 * c1 * P) * (-1.0 - 2.0 * c1 * P + eta_c * (1.0 + 2.0 * c1 * P)
                                  + ch * (-2.0 - 4.0 * c2 + 4.0 * c1 * P))
    return num / ((1.0 + 2.0 * c2) * (1.0 - eta_c - 2.0 * ch))


def eta_max_work(eta_c: float, r: float, cfg: "StrokeConfig | str") -> float:
    """Efficiency at the max-work compression ratio."""
    cfg = _asym(cfg)
    t = _check_eta_c(eta_c)
    ch = math.cosh(2.0 * r)
    K = (t / ch) ** (1.0 / 3.0)
    if cfg is StrokeConfig.SUDDEN_EXPANSION:
        return (ch * (1.0 - 2.0 * K * K) + t * (3.0 - 2.0 * K)) / (2.0 * (1.0 + ch - eta_c))
    return ((1.0 - K) * (2.0 * K * K * ch - (1.0 + K) * t)
            / (2.0 * K * K * ch - (1.0 + K * K) * t))


def efficiency_gap(eta_c: float, r: float, cfg: "StrokeConfig | str") -> float:
    """``eta_upper_bound - eta_max_work``; non-negative by construction of the maximum."""
    return eta_upper_bound(eta_c, r, cfg) - eta_max_work(eta_c, r, cfg)


def golden_section_max(f: Callable[[float], float], a: float, b: float,
                       tol: float = 1e-10) -> float:
    """Shrink ``[a, b]`` around a maximum of ``f`` until shorter than ``tol``.

    Non-finite values count as ``-inf``; ties move the left edge, so a
    plateau of undefined values left of the peak is skipped.
    """
    def g(x):
        v = float(f(x))
        return v if math.isfinite(v) else -math.inf

    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = g(c), g(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = g(d)
    return float(0.5 * (a + b))


ObjectiveLike = Union[Objective, str, Callable]


def numeric_argmax(objective: ObjectiveLike, cfg: "StrokeConfig | str",
                   tau: float, r: float, *, grid: int = 10_000,
                   tol: float = 1e-10) -> Optional[Optimum]:
    """Brute-force maximiser over ``z`` in (0, 1).

    ``objective`` is :class:`Objective` (or its value) or a vectorised callable
    ``f(z)``. Returns None when the objective is undefined on the whole grid.
    """
    if callable(objective) and not isinstance(objective, Objective):
        fn, tag = objective, Objective.MAX_EFFICIENCY
        cfg = StrokeConfig.parse(cfg)
    else:
        tag = Objective(objective) if not isinstance(objective, Objective) else objective
        cfg = _asym(cfg)
        _check_tau_r(tau, r)
        fn = _objective_fn(tag, cfg, tau, r)

    if grid < 2:
        raise DomainError("grid needs at least two points")
    zs = np.linspace(0.0, 1.0, grid + 2)[1:-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.asarray(fn(zs), dtype=float)
    vals = np.where(np.isfinite(vals), vals, -np.inf)
    i = int(np.argmax(vals))
    if not np.isfinite(vals[i]):
        return None
    step = zs[1] - zs[0]
    lo, hi = max(zs[i] - step, 0.0), min(zs[i] + step, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = golden_section_max(fn, lo, hi, tol)
        value = float(fn(z))
    if not math.isfinite(value):
        z, value = float(zs[i]), float(vals[i])
    return Optimum(z, value, tag, cfg, "numeric")
