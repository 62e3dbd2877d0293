"""
Command-line front end.

    squeezed-otto sweep --quantity eta_up --config both --eta-c 0.4 --r 0:3:0.01
    squeezed-otto sweep --quantity work --config both --tau 0.16 --z 0.01:0.99:0.001 --r 0,0.5,1
    squeezed-otto sweep --quantity phase --config SE --r 0.3 --grid 512
    squeezed-otto verify --scope optima

Exit codes: 0 success, 1 invalid arguments, 2 a verification check failed,
3 the output could not be written.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

from .cycle import SC, SE, StrokeConfig
from .errors import OttoError
from .high_temp import efficiency_array, work_array
from .optimize import efficiency_gap, eta_max_work, eta_upper_bound
from .phase import GridSpec, OperationalMode, rasterize
from .verification import SCOPES, run_scope

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3

QUANTITIES = ("work", "efficiency", "eta_up", "eta_mw", "delta", "phase")

COLUMNS = {
    "work": ("z", "r", "tau", "W_SE", "W_SC"),
    "efficiency": ("z", "r", "tau", "eta_SE", "eta_SC"),
    "eta_up": ("r", "eta_c", "value_SE", "value_SC"),
    "eta_mw": ("r", "eta_c", "value_SE", "value_SC"),
    "delta": ("r", "eta_c", "delta_SE", "delta_SC"),
    "phase": ("z", "tau", "mode", "W", "Q_h", "Q_c"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_values(text: str) -> list[float]:
    """``start:stop:step`` (stop included only if hit within round-off) or ``a,b,c``."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, step = (float(p) for p in text.split(":"))
            if not step > 0:
                raise UsageError(f"range step must be positive in {text!r}")
            if stop < start:
                raise UsageError(f"empty range {text!r}")
            n = int(math.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + k * step, 12) for k in range(n)]
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse values {text!r}: {exc}") from None


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def _finite_or_none(x) -> Optional[float]:
    x = float(x)
    return x if math.isfinite(x) else None


def _configs(name: str) -> tuple[StrokeConfig, ...]:
    if name == "both":
        return (SE, SC)
    return (StrokeConfig.parse(name),)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


def _taus(args) -> list[float]:
    if args.tau is not None:
        taus = parse_values(args.tau)
    elif args.eta_c is not None:
        taus = [round(1.0 - e, 15) for e in parse_values(args.eta_c)]
    else:
        raise UsageError("one of --tau or --eta-c is required")
    _require(bool(taus) and all(0.0 < t < 1.0 for t in taus),
             "tau (and eta_c) values must lie in (0, 1)")
    return taus


def _eta_cs(args) -> list[float]:
    if args.eta_c is not None:
        ecs = parse_values(args.eta_c)
    elif args.tau is not None:
        ecs = [round(1.0 - t, 15) for t in parse_values(args.tau)]
    else:
        raise UsageError("one of --eta-c or --tau is required")
    _require(bool(ecs) and all(0.0 < e < 1.0 for e in ecs), "eta_c values must lie in (0, 1)")
    return ecs


def _rs(args) -> list[float]:
    _require(args.r is not None, "--r is required")
    rs = parse_values(args.r)
    _require(bool(rs) and all(v >= 0 and math.isfinite(v) for v in rs),
             "squeezing values must be finite and >= 0")
    return rs


def build_rows(args) -> list[dict]:
    q = args.quantity
    cfgs = _configs(args.config)
    _require(args.beta_h > 0 and math.isfinite(args.beta_h), "--beta-h must be positive")

    if q in ("work", "efficiency"):
        _require(args.z is not None, "--z is required")
        zs = parse_values(args.z)
        _require(bool(zs) and all(0.0 < z < 1.0 for z in zs), "z values must lie in (0, 1)")
        taus, rs = _taus(args), _rs(args)
        cols = COLUMNS[q]
        rows = []
        for tau in taus:
            for r in rs:
                for z in zs:
                    row = {"z": z, "r": r, "tau": tau, cols[3]: None, cols[4]: None}
                    for cfg, col in zip((SE, SC), cols[3:]):
                        if cfg not in cfgs:
                            continue
                        if q == "work":
                            row[col] = float(work_array(z, tau, r, cfg, args.beta_h))
                        else:
                            row[col] = _finite_or_none(efficiency_array(z, tau, r, cfg))
                    rows.append(row)
        return rows

    if q in ("eta_up", "eta_mw", "delta"):
        fn = {"eta_up": eta_upper_bound, "eta_mw": eta_max_work, "delta": efficiency_gap}[q]
        cols = COLUMNS[q]
        rows = []
        for ec in _eta_cs(args):
            for r in _rs(args):
                row = {"r": r, "eta_c": ec, cols[2]: None, cols[3]: None}
                for cfg, col in zip((SE, SC), cols[2:]):
                    if cfg in cfgs:
                        row[col] = fn(ec, r, cfg)
                rows.append(row)
        return rows

    # phase
    _require(len(cfgs) == 1, "--quantity phase needs a single --config (SE or SC)")
    rs = _rs(args)
    _require(len(rs) == 1, "--quantity phase needs a single --r value")
    _require(args.grid is not None and args.grid >= 2, "--grid N (N >= 2) is required")
    pm = rasterize(GridSpec.square(args.grid), rs[0], cfgs[0], args.beta_h)
    z, tau = pm.grid.z, pm.grid.tau
    labels = [m.label for m in OperationalMode]
    return [{"z": float(z[i]), "tau": float(tau[j]), "mode": labels[pm.modes[j, i]],
             "W": float(pm.work[j, i]), "Q_h": float(pm.q_h[j, i]), "Q_c": float(pm.q_c[j, i])}
            for j in range(pm.grid.ntau) for i in range(pm.grid.nz)]


def render(args, rows: list[dict]) -> str:
    cols = COLUMNS[args.quantity]
    if args.format == "json":
        spec = {k: getattr(args, k) for k in
                ("quantity", "config", "tau", "eta_c", "r", "z", "grid", "beta_h")}
        return json.dumps({"spec": spec, "rows": rows}, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in cols])
    return buf.getvalue()


def cmd_sweep(args) -> int:
    _require(not (args.tau is not None and args.eta_c is not None),
             "--tau and --eta-c are mutually exclusive")
    text = render(args, build_rows(args))
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args) -> int:
    scopes = SCOPES if args.scope == "all" else (args.scope,)
    failed = 0
    for scope in scopes:
        print(f"[{scope}]")
        for check in run_scope(scope, args.draws, args.seed, corrupt=args.inject_fault):
            print("  " + check.line())
            failed += not check.passed
    print(f"{failed} check(s) failed" if failed else "all checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="squeezed-otto", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="tabulate a quantity over a parameter sweep")
    sw.add_argument("--quantity", required=True, choices=QUANTITIES)
    sw.add_argument("--config", default="both", choices=("SE", "SC", "both"))
    sw.add_argument("--tau", help="beta_h/beta_c: value, list a,b or range start:stop:step")
    sw.add_argument("--eta-c", dest="eta_c", help="Carnot efficiency 1 - tau (excludes --tau)")
    sw.add_argument("--r", help="squeezing parameter(s)")
    sw.add_argument("--z", help="compression ratio(s) omega_c/omega_h")
    sw.add_argument("--grid", type=int, help="phase raster resolution N (N x N cells)")
    sw.add_argument("--beta-h", dest="beta_h", type=float, default=1.0)
    sw.add_argument("--format", default="csv", choices=("csv", "json"))
    sw.add_argument("--out", help="output file (default: stdout)")
    sw.add_argument("--seed", type=int, default=42, help="unused by sweeps; accepted for symmetry")
    sw.set_defaults(func=cmd_sweep)

    vf = sub.add_parser("verify", help="run oracle checks and report residuals")
    vf.add_argument("--scope", default="all", choices=SCOPES + ("all",))
    vf.add_argument("--seed", type=int, default=42)
    vf.add_argument("--draws", type=int, default=100)
    vf.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    vf.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OttoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
