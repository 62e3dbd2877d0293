"""
Oracle checks surfaced by ``squeezed-otto verify``.

Each scope returns a list of :class:`Check` records comparing a measured
residual or margin against a fixed tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cycle import SC, SE, CycleParams, sudden_expansion_efficiency_exact
from .errors import ClassificationError
from .high_temp import efficiency_array, work_array
from .optimize import (
    Objective,
    eta_max_work,
    eta_upper_bound,
    efficiency_gap,
    max_work_z,
    numeric_argmax,
    optimal_z_efficiency,
    optimal_z_work,
    real_roots,
    sc_efficiency_cubic,
    se_efficiency_cubic,
    Cubic,
)
from .phase import GridSpec, OperationalMode, boundary_mismatches, rasterize

SCOPES = ("cubics", "optima", "bounds", "phase")


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    tolerance: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name:<48s} measured={self.measured:.3e}  tol={self.tolerance:.1e}"
        return f"{text}  {self.detail}" if self.detail else text


def _below(name: str, measured: float, tol: float, detail: str = "") -> Check:
    return Check(name, measured, tol, bool(measured < tol), detail)


def draw_tau_r(n: int, seed: int) -> np.ndarray:
    """``n`` seeded draws of ``(tau, r)`` in (0.05, 0.95) x [0, 2]."""
    rng = np.random.default_rng(seed)
    return np.column_stack([rng.uniform(0.05, 0.95, n), rng.uniform(0.0, 2.0, n)])


def check_cubics(draws: int = 100, seed: int = 42, corrupt: bool = False) -> list[Check]:
    pts = draw_tau_r(draws, seed)
    checks = []
    for cfg, build in ((SE, se_efficiency_cubic), (SC, sc_efficiency_cubic)):
        worst = 0.0
        for tau, r in pts:
            cubic = build(tau, r)
            _, root = real_roots(cubic)[0]
            if corrupt:
                cubic = Cubic(cubic.a, cubic.b, cubic.c, cubic.d + 1e-3 * abs(cubic.a))
            worst = max(worst, cubic.residual(root))
        checks.append(_below(f"{cfg.value} stationarity cubic root residual", worst, 1e-9))
    min_d = min(sc_efficiency_cubic(t, r).discriminant for t, r in pts)
    checks.append(Check("SC cubic discriminant > 0", min_d, 0.0, bool(min_d > 0)))
    n_pos = sum(se_efficiency_cubic(t, r).discriminant > 0 for t, r in pts)
    checks.append(Check("SE cubic discriminant sign recorded", float(n_pos), 0.0, True,
                        f"{n_pos}/{draws} positive (sign follows 2 tau - cosh 2r)"))
    return checks


def _stationarity(fn: Callable, z: float) -> float:
    h = 1e-6 * z
    return abs(float(fn(z + h)) - float(fn(z - h))) / (2.0 * h)


def check_optima(draws: int = 100, seed: int = 42) -> list[Check]:
    pts = draw_tau_r(draws, seed)
    checks = []
    for cfg in (SE, SC):
        dz_w = dv_w = dz_e = dv_e = up = mw = st_w = st_e = 0.0
        for tau, r in pts:
            w_opt = optimal_z_work(tau, r, cfg)
            w_num = numeric_argmax(Objective.MAX_WORK, cfg, tau, r)
            e_opt = optimal_z_efficiency(tau, r, cfg)
            e_num = numeric_argmax(Objective.MAX_EFFICIENCY, cfg, tau, r)
            dz_w = max(dz_w, abs(w_opt.z_star - w_num.z_star))
            dv_w = max(dv_w, abs(w_opt.value - w_num.value))
            dz_e = max(dz_e, abs(e_opt.z_star - e_num.z_star))
            dv_e = max(dv_e, abs(e_opt.value - e_num.value))
            up = max(up, abs(eta_upper_bound(1.0 - tau, r, cfg) - e_opt.value))
            k = max_work_z(tau, r)
            mw = max(mw, abs(eta_max_work(1.0 - tau, r, cfg)
                             - float(efficiency_array(k, tau, r, cfg))))
            work = lambda z: work_array(z, tau, r, cfg)
            eff = lambda z: efficiency_array(z, tau, r, cfg)
            st_w = max(st_w, _stationarity(work, w_opt.z_star) / max(1.0, abs(w_opt.value)))
            st_e = max(st_e, _stationarity(eff, e_opt.z_star) / max(1.0, abs(e_opt.value)))
        tag = cfg.value
        checks += [
            _below(f"{tag} max-work z* analytic vs numeric", dz_w, 1e-6),
            _below(f"{tag} max-work value analytic vs numeric", dv_w, 1e-9),
            _below(f"{tag} max-efficiency z* analytic vs numeric", dz_e, 1e-6),
            _below(f"{tag} max-efficiency value analytic vs numeric", dv_e, 1e-9),
            _below(f"{tag} efficiency upper bound vs eta(z*)", up, 1e-9),
            _below(f"{tag} efficiency at max work vs eta(z*)", mw, 1e-12),
            _below(f"{tag} work stationarity at z*", st_w, 1e-5),
            _below(f"{tag} efficiency stationarity at z*", st_e, 1e-5),
        ]
    return checks


def _random_cycles(n: int, seed: int):
    rng = np.random.default_rng(seed)
    omega_c = rng.uniform(0.01, 5.0, n)
    omega_h = omega_c * (1.0 + rng.uniform(1e-3, 10.0, n))
    beta_h = 10.0 ** rng.uniform(-3.0, 1.0, n)
    beta_c = beta_h * (1.0 + 10.0 ** rng.uniform(-3.0, 1.5, n))
    r = rng.uniform(0.0, 3.0, n)
    return zip(omega_c, omega_h, beta_c, beta_h, r)


def check_bounds(draws: int = 100_000, seed: int = 42) -> list[Check]:
    best_exact, n_exact = -math.inf, 0
    for wc, wh, bc, bh, r in _random_cycles(draws, seed):
        res = sudden_expansion_efficiency_exact(
            CycleParams.with_config(wc, wh, bc, bh, r, SE))
        if res.eta is not None and res.eta > 0:
            n_exact += 1
            best_exact = max(best_exact, res.eta)

    rng = np.random.default_rng(seed + 1)
    z, tau, r = rng.uniform(0, 1, draws), rng.uniform(0, 1, draws), rng.uniform(0, 3, draws)
    eta = efficiency_array(z, tau, r, SE)
    pos = eta[np.isfinite(eta) & (eta > 0)]
    best_ht = float(pos.max()) if pos.size else -math.inf

    r_grid = np.round(np.arange(0, 301) * 0.01, 12)
    min_gap = min(efficiency_gap(ec, float(rv), cfg)
                  for cfg in (SE, SC) for ec in (0.4, 0.8) for rv in r_grid)
    max_up_se = max(eta_upper_bound(ec, float(rv), SE) for ec in (0.4, 0.8) for rv in r_grid)
    up_sc_10 = eta_upper_bound(0.8, 10.0, SC)
    num_sc_10 = numeric_argmax(Objective.MAX_EFFICIENCY, SC, 0.2, 10.0).value
    return [
        Check("exact SE efficiency < 1/2", best_exact, 0.5, bool(best_exact < 0.5),
              f"{n_exact} positive of {draws}"),
        Check("high-T SE efficiency < 1/2", best_ht, 0.5, bool(best_ht < 0.5),
              f"{pos.size} positive of {draws}"),
        Check("min(eta_up - eta_MW) >= -1e-12", min_gap, -1e-12, bool(min_gap >= -1e-12)),
        Check("SE efficiency upper bound < 1/2", max_up_se, 0.5, bool(max_up_se < 0.5)),
        Check("SC upper bound at eta_c=0.8, r=10 > 0.9", up_sc_10, 0.9,
              bool(up_sc_10 > 0.9 and num_sc_10 > 0.9), f"oracle {num_sc_10:.12f}"),
    ]


def check_phase(n: int = 512) -> list[Check]:
    grid = GridSpec.square(n)
    checks = []
    for cfg in (SE, SC):
        maps = []
        for r in (0.1, 0.3, 0.5):
            try:
                pm = rasterize(grid, r, cfg)
            except ClassificationError as exc:
                checks.append(Check(f"{cfg.value} r={r} exhaustive labelling", 1.0, 0.0,
                                    False, str(exc)))
                continue
            maps.append(pm)
            bad = boundary_mismatches(pm)
            checks.append(Check(f"{cfg.value} r={r} cells off analytic boundaries",
                                float(bad), 0.0, bad == 0))
        eng = [m.fraction(OperationalMode.ENGINE) for m in maps]
        ref = [m.fraction(OperationalMode.REFRIGERATOR) for m in maps]
        inc = len(eng) == 3 and eng[0] < eng[1] < eng[2]
        dec = len(ref) == 3 and ref[0] > ref[1] > ref[2]
        checks.append(Check(f"{cfg.value} engine fraction rises with r",
                            min(np.diff(eng), default=0.0), 0.0, inc,
                            " ".join(f"{v:.4f}" for v in eng)))
        checks.append(Check(f"{cfg.value} refrigerator fraction falls with r",
                            -max(np.diff(ref), default=0.0), 0.0, dec,
                            " ".join(f"{v:.4f}" for v in ref)))
        big = 1.0 - rasterize(grid, 5.0, cfg).fraction(OperationalMode.ENGINE)
        checks.append(_below(f"{cfg.value} r=5 non-engine fraction", big, 0.05))
    return checks


def run_scope(scope: str, draws: int = 100, seed: int = 42,
              corrupt: bool = False) -> list[Check]:
    if scope == "cubics":
        return check_cubics(draws, seed, corrupt)
    if scope == "optima":
        return check_optima(draws, seed)
    if scope == "bounds":
        return check_bounds(max(draws, 100_000), seed)
    if scope == "phase":
        return check_phase()
    raise ValueError(f"unknown scope {scope!r}")
