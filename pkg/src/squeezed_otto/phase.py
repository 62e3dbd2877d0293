"""
Operating modes of the asymmetric cycle in the (z, tau) plane.

A point is labelled from the signs of ``(W, Q_h, Q_c)``:

=====================  =======  =======  =======
mode                   W        Q_h      Q_c
=====================  =======  =======  =======
engine                 >= 0     >= 0     <= 0
refrigerator           <= 0     <= 0     >= 0
heater                 <= 0     <= 0     <= 0
thermal accelerator    <= 0     >= 0     <= 0
=====================  =======  =======  =======

Magnitudes below ``ZERO_TOL / beta_h`` count as zero. Boundary points satisfy
several rows; the first row in the order above wins and the point is flagged.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .cycle import StrokeConfig
from .errors import ClassificationError, ConfigError, DomainError
from .high_temp import HTParams, heats_array, work_array

ZERO_TOL = 1e-14


class OperationalMode(enum.IntEnum):
    ENGINE = 0
    REFRIGERATOR = 1
    HEATER = 2
    THERMAL_ACCELERATOR = 3

    @property
    def label(self) -> str:
        return self.name.lower()


# (W, Q_h, Q_c) sign requirement per mode: +1 means >= 0, -1 means <= 0
_SIGNS = {
    OperationalMode.ENGINE: (+1, +1, -1),
    OperationalMode.REFRIGERATOR: (-1, -1, +1),
    OperationalMode.HEATER: (-1, -1, -1),
    OperationalMode.THERMAL_ACCELERATOR: (-1, +1, -1),
}


def _asym(cfg) -> StrokeConfig:
    cfg = StrokeConfig.parse(cfg)
    if not cfg.is_asymmetric:
        raise ConfigError(f"phase diagram defined only for SE/SC, got {cfg.name}")
    return cfg


def classify_arrays(w, q_h, q_c, beta_h=1.0):
    """Vectorised labelling. Returns ``(modes, on_boundary)`` as int8/bool arrays."""
    tol = ZERO_TOL / beta_h
    w, q_h, q_c = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (w, q_h, q_c)))
    modes = np.full(w.shape, -1, dtype=np.int8)
    n_match = np.zeros(w.shape, dtype=np.int8)
    for mode in OperationalMode:
        ok = np.ones(w.shape, dtype=bool)
        for sign, q in zip(_SIGNS[mode], (w, q_h, q_c)):
            ok &= (q >= -tol) if sign > 0 else (q <= tol)
        modes = np.where((modes < 0) & ok, np.int8(mode), modes)
        n_match += ok
    if (modes < 0).any():
        bad = np.argwhere(modes < 0)[0]
        idx = tuple(bad)
        raise ClassificationError(
            f"no mode matches W={w[idx]!r}, Q_h={q_h[idx]!r}, Q_c={q_c[idx]!r} at index {idx}")
    return modes, n_match > 1


def classify(p: HTParams, cfg: "StrokeConfig | str") -> OperationalMode:
    """Operating mode of a single high-temperature point."""
    cfg = _asym(cfg)
    w = work_array(p.z, p.tau, p.r, cfg, p.beta_h)
    q_h, q_c = heats_array(p.z, p.tau, p.r, cfg, p.beta_h)
    modes, _ = classify_arrays(w, q_h, q_c, p.beta_h)
    return OperationalMode(int(modes))


@dataclass(frozen=True)
class Boundaries:
    """Mode thresholds in z for one (tau, r), ascending.

    ``intervals`` tile (0, 1) as ``(z_lo, z_hi, mode)``; ``dropped`` explains any
    threshold that is non-real or outside (0, 1).
    """

    thresholds: list[tuple[str, float]]
    intervals: list[tuple[float, float, OperationalMode]]
    dropped: list[str] = field(default_factory=list)

    def mode_at(self, z: float) -> OperationalMode:
        for lo, hi, mode in self.intervals:
            if lo <= z <= hi:
                return mode
        raise DomainError(f"z={z} outside (0, 1)")


def region_boundaries(tau: float, r: float, cfg: "StrokeConfig | str") -> Boundaries:
    """Closed-form mode thresholds along z at fixed (tau, r)."""
    cfg = _asym(cfg)
    if not 0.0 < tau < 1.0 or r < 0:
        raise DomainError(f"need 0 < tau < 1 and r >= 0, got tau={tau}, r={r}")
    ch = math.cosh(2.0 * r)
    M = OperationalMode
    if cfg is StrokeConfig.SUDDEN_EXPANSION:
        arg = 2.0 * tau / ch - 1.0
        cand = [
            ("refrigerator|heater", math.sqrt(arg) if arg > 0 else math.nan, M.REFRIGERATOR),
            ("heater|thermal_accelerator", tau / ch, M.HEATER),
            ("thermal_accelerator|engine",
             0.5 * (math.sqrt(1.0 + 8.0 * tau / ch) - 1.0), M.THERMAL_ACCELERATOR),
        ]
    else:
        cand = [
            ("refrigerator|heater", tau / ch, M.REFRIGERATOR),
            ("heater|thermal_accelerator", math.sqrt(tau / (2.0 * ch - tau)), M.HEATER),
            ("thermal_accelerator|engine",
             (tau + math.sqrt(tau * (tau + 8.0 * ch))) / (4.0 * ch), M.THERMAL_ACCELERATOR),
        ]

    thresholds, intervals, dropped = [], [], []
    lo = 0.0
    for name, z, below in cand:
        if math.isnan(z):
            dropped.append(f"{name}: non-real threshold, {below.label} region absent")
            continue
        if not 0.0 < z < 1.0:
            dropped.append(f"{name}: threshold {z!r} outside (0, 1)")
            continue
        thresholds.append((name, z))
        intervals.append((lo, z, below))
        lo = z
    intervals.append((lo, 1.0, M.ENGINE))
    return Boundaries(thresholds, intervals, dropped)


@dataclass(frozen=True)
class GridSpec:
    """Cell-centred grid on ``[z_min, z_max] x [tau_min, tau_max]``."""

    nz: int = 512
    ntau: int = 512
    z_min: float = 0.0
    z_max: float = 1.0
    tau_min: float = 0.0
    tau_max: float = 1.0

    def __post_init__(self) -> None:
        if self.nz < 2 or self.ntau < 2:
            raise DomainError("grid resolution must be at least 2 in each direction")
        if not (0.0 <= self.z_min < self.z_max <= 1.0):
            raise DomainError(f"bad z range [{self.z_min}, {self.z_max}]")
        if not (0.0 <= self.tau_min < self.tau_max <= 1.0):
            raise DomainError(f"bad tau range [{self.tau_min}, {self.tau_max}]")

    @classmethod
    def square(cls, n: int) -> "GridSpec":
        return cls(n, n)

    @property
    def z(self) -> np.ndarray:
        h = (self.z_max - self.z_min) / self.nz
        return self.z_min + h * (np.arange(self.nz) + 0.5)

    @property
    def tau(self) -> np.ndarray:
        h = (self.tau_max - self.tau_min) / self.ntau
        return self.tau_min + h * (np.arange(self.ntau) + 0.5)


@dataclass(frozen=True)
class PhaseMap:
    """Mode raster: rows follow tau, columns follow z."""

    grid: GridSpec
    r: float
    config: StrokeConfig
    beta_h: float
    modes: np.ndarray
    work: np.ndarray
    q_h: np.ndarray
    q_c: np.ndarray
    on_boundary: np.ndarray

    def fraction(self, mode: OperationalMode) -> float:
        return float(np.mean(self.modes == int(mode)))

    def fractions(self) -> dict[OperationalMode, float]:
        return {m: self.fraction(m) for m in OperationalMode}


def rasterize(grid: GridSpec, r: float, cfg: "StrokeConfig | str",
              beta_h: float = 1.0) -> PhaseMap:
    cfg = _asym(cfg)
    if r < 0 or not math.isfinite(r):
        raise DomainError(f"squeezing parameter must be finite and >= 0, got {r}")
    zz, tt = np.meshgrid(grid.z, grid.tau)
    w = work_array(zz, tt, r, cfg, beta_h)
    q_h, q_c = heats_array(zz, tt, r, cfg, beta_h)
    modes, edge = classify_arrays(w, q_h, q_c, beta_h)
    return PhaseMap(grid, r, cfg, beta_h, modes, w, q_h, q_c, edge)


def transitions(z: np.ndarray, modes_row: np.ndarray) -> list[tuple[float, float, int, int]]:
    """Adjacent grid pairs ``(z_left, z_right, mode_left, mode_right)`` where the mode changes."""
    idx = np.nonzero(np.diff(modes_row))[0]
    return [(float(z[i]), float(z[i + 1]), int(modes_row[i]), int(modes_row[i + 1]))
            for i in idx]


def analytic_modes(grid: GridSpec, r: float, cfg: "StrokeConfig | str") -> np.ndarray:
    """Mode raster built from :func:`region_boundaries` alone."""
    cfg = _asym(cfg)
    z = grid.z
    out = np.empty((grid.ntau, grid.nz), dtype=np.int8)
    for j, tau in enumerate(grid.tau):
        b = region_boundaries(float(tau), r, cfg)
        edges = np.array([hi for _, hi, _ in b.intervals[:-1]])
        labels = np.array([int(m) for _, _, m in b.intervals], dtype=np.int8)
        out[j] = labels[np.searchsorted(edges, z)]
    return out


def boundary_mismatches(pm: PhaseMap) -> int:
    """Cells whose mode disagrees with the closed-form thresholds by more than one cell."""
    expected = analytic_modes(pm.grid, pm.r, pm.config)
    z = pm.grid.z
    cell = (pm.grid.z_max - pm.grid.z_min) / pm.grid.nz
    bad = 0
    for j, tau in enumerate(pm.grid.tau):
        diff = np.nonzero(expected[j] != pm.modes[j])[0]
        if diff.size == 0:
            continue
        th = np.array([v for _, v in region_boundaries(float(tau), pm.r, pm.config).thresholds])
        near = np.min(np.abs(z[diff, None] - th[None, :]), axis=1) <= cell if th.size else \
            np.zeros(diff.size, dtype=bool)
        bad += int(np.count_nonzero(~near))
    return bad
