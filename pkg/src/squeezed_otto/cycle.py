"""
Finite-temperature energetics of the harmonic Otto cycle with a squeezed hot bath.

Units are hbar = k_B = 1. The cycle runs A -> B (compression, omega_c -> omega_h),
B -> C (hot isochore, squeezed bath at beta_h), C -> D (expansion back to
omega_c) and D -> A (cold isochore at beta_c). Heat and work flowing into the
oscillator are positive, so an engine has ``q_h > 0`` and ``w_ext > 0`` where
``w_ext = q_h + q_c``.

Stroke speed enters only through the adiabaticity parameters ``lambda_AB`` and
``lambda_CD``: 1 for a quasistatic stroke and
``(omega_c**2 + omega_h**2) / (2 omega_c omega_h)`` for an instantaneous quench.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import ConfigError, DomainError

# Beyond this |x|, tanh(x) is 1 to well below 1e-300.
_COTH_SATURATION = 700.0


def coth(x: float) -> float:
    """Hyperbolic cotangent, saturating to +-1 for large arguments."""
    if x == 0.0:
        raise DomainError("coth is singular at 0")
    if abs(x) > _COTH_SATURATION:
        return math.copysign(1.0, x)
    return 1.0 / math.tanh(x)


def sudden_lambda(omega_c: float, omega_h: float) -> float:
    """Adiabaticity parameter of an instantaneous frequency switch."""
    if not (omega_c > 0 and omega_h > 0):
        raise DomainError(f"frequencies must be positive, got {omega_c}, {omega_h}")
    return (omega_c * omega_c + omega_h * omega_h) / (2.0 * omega_c * omega_h)


class StrokeConfig(enum.Enum):
    """Which work stroke is driven as a sudden quench."""

    SUDDEN_EXPANSION = "SE"
    SUDDEN_COMPRESSION = "SC"
    BOTH_ADIABATIC = "adiabatic"
    BOTH_SUDDEN = "sudden"

    @property
    def is_asymmetric(self) -> bool:
        return self in (StrokeConfig.SUDDEN_EXPANSION, StrokeConfig.SUDDEN_COMPRESSION)

    def lambdas(self, omega_c: float, omega_h: float) -> tuple[float, float]:
        """Return ``(lambda_AB, lambda_CD)`` for this configuration."""
        lam = sudden_lambda(omega_c, omega_h)
        return {
            StrokeConfig.SUDDEN_EXPANSION: (1.0, lam),
            StrokeConfig.SUDDEN_COMPRESSION: (lam, 1.0),
            StrokeConfig.BOTH_ADIABATIC: (1.0, 1.0),
            StrokeConfig.BOTH_SUDDEN: (lam, lam),
        }[self]

    @classmethod
    def parse(cls, value: "str | StrokeConfig") -> "StrokeConfig":
        if isinstance(value, cls):
            return value
        key = str(value).strip()
        for member in cls:
            if key.lower() in (member.value.lower(), member.name.lower()):
                return member
        raise ConfigError(f"unknown stroke configuration {value!r}")


SE = StrokeConfig.SUDDEN_EXPANSION
SC = StrokeConfig.SUDDEN_COMPRESSION


@dataclass(frozen=True)
class CycleParams:
    """Full specification of one cycle.

    ``strict=False`` drops the orderings ``omega_h > omega_c`` and
    ``beta_c > beta_h`` so degenerate cycles can be evaluated; positivity,
    ``r >= 0`` and ``lambda >= 1`` are always enforced.
    """

    omega_c: float
    omega_h: float
    beta_c: float
    beta_h: float
    r: float = 0.0
    lambda_AB: float = 1.0
    lambda_CD: float = 1.0
    strict: bool = True

    def __post_init__(self) -> None:
        vals = (self.omega_c, self.omega_h, self.beta_c, self.beta_h, self.r,
                self.lambda_AB, self.lambda_CD)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError(f"non-finite cycle parameter in {vals}")
        if self.omega_c <= 0 or self.omega_h <= 0:
            raise DomainError("frequencies must be positive")
        if self.beta_c <= 0 or self.beta_h <= 0:
            raise DomainError("inverse temperatures must be positive")
        if self.r < 0:
            raise DomainError(f"squeezing parameter must be >= 0, got {self.r}")
        if self.lambda_AB < 1 or self.lambda_CD < 1:
            raise DomainError("adiabaticity parameters must be >= 1")
        if self.strict:
            if not self.omega_h > self.omega_c:
                raise DomainError("require omega_h > omega_c")
            if not self.beta_c > self.beta_h:
                raise DomainError("require beta_c > beta_h (cold bath colder)")

    @classmethod
    def with_config(cls, omega_c: float, omega_h: float, beta_c: float,
                    beta_h: float, r: float, config: "StrokeConfig | str",
                    strict: bool = True) -> "CycleParams":
        lam_ab, lam_cd = StrokeConfig.parse(config).lambdas(omega_c, omega_h)
        return cls(omega_c, omega_h, beta_c, beta_h, r, lam_ab, lam_cd, strict)

    def config(self) -> Optional[StrokeConfig]:
        """Identify the stroke configuration, or None for intermediate lambdas."""
        for cfg in StrokeConfig:
            lam_ab, lam_cd = cfg.lambdas(self.omega_c, self.omega_h)
            if (math.isclose(self.lambda_AB, lam_ab, rel_tol=1e-12)
                    and math.isclose(self.lambda_CD, lam_cd, rel_tol=1e-12)):
                return cfg
        return None


class CornerEnergies(NamedTuple):
    h_A: float
    h_B: float
    h_C: float
    h_D: float


@dataclass(frozen=True)
class EnergyAccount:
    h_A: float
    h_B: float
    h_C: float
    h_D: float
    q_h: float
    q_c: float
    w_ext: float
    eta: Optional[float]  # None unless q_h > 0


class SEEfficiency(NamedTuple):
    """Exact sudden-expansion efficiency with its positive-work factors."""

    eta: Optional[float]  # None when the positive-work condition f2 > 0 fails
    f1: float
    f2: float

    @property
    def pwc(self) -> bool:
        return self.f2 > 0


def corner_energies(p: CycleParams) -> CornerEnergies:
    cold = coth(p.beta_c * p.omega_c / 2.0)
    hot = coth(p.beta_h * p.omega_h / 2.0) * math.cosh(2.0 * p.r)
    return CornerEnergies(
        h_A=0.5 * p.omega_c * cold,
        h_B=0.5 * p.omega_h * p.lambda_AB * cold,
        h_C=0.5 * p.omega_h * hot,
        h_D=0.5 * p.omega_c * p.lambda_CD * hot,
    )


def cycle_energetics(p: CycleParams) -> EnergyAccount:
    """Stroke energies, heats, extracted work and efficiency of one cycle."""
    h = corner_energies(p)
    q_h = h.h_C - h.h_B
    q_c = h.h_A - h.h_D
    w_ext = q_h + q_c
    eta = w_ext / q_h if q_h > 0 else None
    return EnergyAccount(*h, q_h=q_h, q_c=q_c, w_ext=w_ext, eta=eta)


def _require_sudden_expansion(p: CycleParams) -> None:
    if p.config() is not StrokeConfig.SUDDEN_EXPANSION:
        raise ConfigError(
            "expected lambda_AB = 1 and lambda_CD = sudden_lambda(omega_c, omega_h), "
            f"got ({p.lambda_AB}, {p.lambda_CD})")


def sudden_expansion_work_exact(p: CycleParams) -> float:
    """Closed-form work of the sudden-expansion cycle at any temperature."""
    _require_sudden_expansion(p)
    wc, wh = p.omega_c, p.omega_h
    hot = coth(p.beta_h * wh / 2.0) * math.cosh(2.0 * p.r)
    cold = coth(p.beta_c * wc / 2.0)
    return (wh - wc) / (4.0 * wh) * (hot * (wc + wh) - 2.0 * wh * cold)


def sudden_expansion_efficiency_exact(p: CycleParams) -> SEEfficiency:
    """Exact sudden-expansion efficiency written as ``(2/f1 + 1/f2)**-1``.

    ``f1 = 1 - z**2`` and ``f2 = (1 + z) * (coth(b_h w_h/2) cosh(2r) (w_c + w_h)
    / (2 w_h) * tanh(b_c w_c/2) - 1)`` with ``z = w_c/w_h``. The ``(1 + z)``
    factor keeps the result identical to ``w_ext / q_h``; it does not change
    the sign of ``f2``, which is the positive-work condition. Since
    ``0 < f1 < 1``, any defined result is below ``min(f1 / 2, f2) < 1/2``.
    """
    _require_sudden_expansion(p)
    wc, wh = p.omega_c, p.omega_h
    f1 = 1.0 - (wc * wc) / (wh * wh)
    f2 = (1.0 + wc / wh) * (
        coth(p.beta_h * wh / 2.0) * math.cosh(2.0 * p.r) * (wc + wh) / (2.0 * wh)
        * math.tanh(p.beta_c * wc / 2.0) - 1.0)
    if f2 <= 0:
        return SEEfficiency(None, f1, f2)
    return SEEfficiency(1.0 / (2.0 / f1 + 1.0 / f2), f1, f2)
