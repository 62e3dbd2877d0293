"""
High-temperature limit of the asymmetric cycle in reduced coordinates.

With ``coth(x) ~ 1/x`` every quantity depends on the compression ratio
``z = omega_c / omega_h``, the inverse-temperature ratio ``tau = beta_h / beta_c``
and the squeezing ``r``; ``beta_h`` only sets the energy scale ``1 / beta_h``.

The ``*_array`` kernels accept numpy arrays (or scalars) and broadcast; they do
no validation. The scalar API below them validates through :class:`HTParams`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cycle import StrokeConfig
from .errors import ConfigError, DomainError

# |q_h| below this (times 1/beta_h) counts as zero: efficiency is undefined there.
QH_ZERO_TOL = 1e-14


@dataclass(frozen=True)
class HTParams:
    z: float
    tau: float
    r: float = 0.0
    beta_h: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.z < 1.0:
            raise DomainError(f"compression ratio z must lie in (0, 1), got {self.z}")
        if not 0.0 < self.tau < 1.0:
            raise DomainError(f"tau = beta_h/beta_c must lie in (0, 1), got {self.tau}")
        if not (self.r >= 0.0 and math.isfinite(self.r)):
            raise DomainError(f"squeezing parameter must be finite and >= 0, got {self.r}")
        if not (self.beta_h > 0.0 and math.isfinite(self.beta_h)):
            raise DomainError(f"beta_h must be positive, got {self.beta_h}")

    @property
    def eta_c(self) -> float:
        return 1.0 - self.tau

    @classmethod
    def from_eta_c(cls, z: float, eta_c: float, r: float = 0.0,
                   beta_h: float = 1.0) -> "HTParams":
        return cls(z, 1.0 - eta_c, r, beta_h)


@dataclass(frozen=True)
class HTResult:
    work: float
    efficiency: Optional[float]
    q_h: float
    q_c: float


def _check_cfg(cfg: "StrokeConfig | str") -> StrokeConfig:
    cfg = StrokeConfig.parse(cfg)
    if not cfg.is_asymmetric:
        raise ConfigError(f"no high-temperature closed form for {cfg.name}")
    return cfg


def work_array(z, tau, r, cfg: StrokeConfig, beta_h=1.0):
    ch = np.cosh(2.0 * r)
    if cfg is StrokeConfig.SUDDEN_EXPANSION:
        return (1.0 - z) / (2.0 * z * beta_h) * (z * (1.0 + z) * ch - 2.0 * tau)
    return (1.0 - z) / (2.0 * z * z * beta_h) * (2.0 * z * z * ch - tau * (1.0 + z))


def heats_array(z, tau, r, cfg: StrokeConfig, beta_h=1.0):
    """Return ``(q_h, q_c)``; both are heat flowing into the oscillator."""
    ch = np.cosh(2.0 * r)
    if cfg is StrokeConfig.SUDDEN_EXPANSION:
        q_h = (ch - tau / z) / beta_h
        q_c = (tau - 0.5 * ch * (1.0 + z * z)) / beta_h
    else:
        q_h = (ch - 0.5 * tau * (1.0 + 1.0 / (z * z))) / beta_h
        q_c = (tau - z * ch) / beta_h
    return q_h, q_c


def efficiency_array(z, tau, r, cfg: StrokeConfig):
    """Closed-form efficiency; NaN wherever ``q_h`` is not positive."""
    ch = np.cosh(2.0 * r)
    if cfg is StrokeConfig.SUDDEN_EXPANSION:
        num = (1.0 - z) * (z * (1.0 + z) * ch - 2.0 * tau)
        den = 2.0 * (z * ch - tau)
    else:
        num = (1.0 - z) * (2.0 * z * z * ch - tau * (z + 1.0))
        den = 2.0 * z * z * ch - tau * (z * z + 1.0)
    q_h, _ = heats_array(z, tau, r, cfg)
    ok = q_h > QH_ZERO_TOL
    with np.errstate(divide="ignore", invalid="ignore"):
        eta = np.where(ok, num / np.where(ok, den, 1.0), np.nan)
    return eta if np.ndim(eta) else float(eta)


def ht_work(p: HTParams, cfg: "StrokeConfig | str") -> float:
    """Extracted work per cycle in the high-temperature limit."""
    return float(work_array(p.z, p.tau, p.r, _check_cfg(cfg), p.beta_h))


def ht_heats(p: HTParams, cfg: "StrokeConfig | str") -> tuple[float, float]:
    q_h, q_c = heats_array(p.z, p.tau, p.r, _check_cfg(cfg), p.beta_h)
    return float(q_h), float(q_c)


def ht_efficiency(p: HTParams, cfg: "StrokeConfig | str") -> Optional[float]:
    """Efficiency in the high-temperature limit, or None when ``q_h <= 0``."""
    eta = efficiency_array(p.z, p.tau, p.r, _check_cfg(cfg))
    return None if math.isnan(eta) else eta


def ht_evaluate(p: HTParams, cfg: "StrokeConfig | str") -> HTResult:
    cfg = _check_cfg(cfg)
    q_h, q_c = ht_heats(p, cfg)
    return HTResult(ht_work(p, cfg), ht_efficiency(p, cfg), q_h, q_c)


def pwc_threshold_se(tau: float, r: float) -> float:
    """Compression ratio above which the sudden-expansion cycle yields work."""
    return 0.5 * (math.sqrt(1.0 + 8.0 * tau / math.cosh(2.0 * r)) - 1.0)


def pwc_threshold_sc(tau: float, r: float) -> float:
    """Compression ratio above which the sudden-compression cycle yields work."""
    ch = math.cosh(2.0 * r)
    return (tau + math.sqrt(tau * (tau + 8.0 * ch))) / (4.0 * ch)


def work_intersection_z(tau: float, r: float) -> float:
    """Compression ratio where the two configurations extract equal work."""
    return math.sqrt(tau / math.cosh(2.0 * r))


def efficiency_intersection_z(tau: float, r: float) -> float:
    """Compression ratio where the two configurations are equally efficient.

    Root in (0, 1) of ``c(2c - tau) z**2 - 2 c tau z + tau(2 tau - c) = 0`` with
    ``c = cosh(2r)``, i.e. ``[c tau + sqrt(2 c tau)(c - tau)] / (c (2c - tau))``.
    """
    ch = math.cosh(2.0 * r)
    return (ch * tau + math.sqrt(2.0 * ch * tau) * (ch - tau)) / (ch * (2.0 * ch - tau))
