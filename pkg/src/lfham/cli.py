"""Command-line front end: figure datasets as CSV, vacuum report, audits.

Exit codes: 0 success, 1 failed audit, 2 invalid arguments or input,
3 unbounded conjugate, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from . import analytic as an
from . import audit
from . import branches as br
from . import conjugate as cj

EXIT_OK = 0
EXIT_AUDIT = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4

# Vacuum of the path-integral Hamiltonian; quoted, since no closed form exists to compute it.
HPI_VACUUM = {"H0": "1/2", "p0": "0", "velocity": "0"}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    kappa: float = 1.0
    grid_min: float = -3.0
    grid_max: float = 3.0
    grid_points: int = 4001
    slope_min: float = -2.0
    slope_max: float = 2.0
    slope_points: int = 4001
    output_path: Optional[str] = None

    def __post_init__(self):
        if not math.isfinite(self.kappa):
            raise CliError("--kappa must be finite", EXIT_USAGE)
        for name, lo, hi, n in (("--grid", self.grid_min, self.grid_max, self.grid_points),
                                ("--slopes", self.slope_min, self.slope_max, self.slope_points)):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise CliError(f"{name}: need finite MIN < MAX, got {lo} {hi}", EXIT_USAGE)
            if n < 2:
                raise CliError(f"{name}: need at least 2 points, got {n}", EXIT_USAGE)

    @property
    def params(self) -> an.ModelParams:
        return an.ModelParams(self.kappa)

    def velocities(self) -> np.ndarray:
        return np.linspace(self.grid_min, self.grid_max, self.grid_points)

    def slopes(self) -> np.ndarray:
        return np.linspace(self.slope_min, self.slope_max, self.slope_points)


def fmt(x) -> str:
    """Shortest text that parses back to the same value."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    # + 0.0 folds -0.0 into 0.0
    return repr(float(x) + 0.0)


def render_csv(columns: Sequence[str], rows: Iterable[Sequence], comments: Sequence[str] = ()) -> str:
    out = io.StringIO()
    out.write("# " + ",".join(columns) + "\n")
    for c in comments:
        out.write(f"# {c}\n")
    for row in rows:
        out.write(",".join(fmt(x) for x in row) + "\n")
    return out.getvalue()


@contextmanager
def _sink(path: Optional[str]):
    if path is None:
        yield sys.stdout
        return
    try:
        fh = open(path, "w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_IO) from exc
    with fh:
        yield fh


def emit(text: str, path: Optional[str]) -> None:
    try:
        with _sink(path) as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from exc


def _with_points(grid: np.ndarray, extra: Iterable[float]) -> np.ndarray:
    lo, hi = grid[0], grid[-1]
    pts = [x for x in extra if lo <= x <= hi]
    return np.union1d(grid, pts) if pts else grid


def hamiltonian_table(cfg: RunConfig) -> str:
    params = cfg.params
    p = cfg.slopes()
    H = an.hamiltonian_closed_form(p, params)
    H0 = an.hamiltonian_closed_form(0.0, params)
    slope0 = math.sqrt(max(cfg.kappa, 0.0))
    rows = zip(p, H, H0 + slope0 * p, H0 - slope0 * p)
    return render_csv(("p", "H_lft", "H_ref_upper", "H_ref_lower"), rows)


def lagrangian_table(cfg: RunConfig) -> str:
    params = cfg.params
    v = cfg.velocities()
    rows = zip(v, an.lagrangian_eval(v, params), an.revised_lagrangian(v, params))
    return render_csv(
        ("v", "L_original", "L_lft"), rows,
        comments=("L_hpi omitted: the path-integral Lagrangian has no closed form",))


def branches_table(cfg: RunConfig) -> str:
    params = cfg.params
    v = cfg.velocities()
    if cfg.kappa > 0:
        s, c = math.sqrt(cfg.kappa), math.sqrt(cfg.kappa / 3.0)
        v = _with_points(v, (-s, -c, 0.0, c, s))
    curve = br.swallow_tail_curve(v, params)
    return render_csv(("v", "p", "H"), ((vi, pi, hi) for vi, (pi, hi) in zip(v, curve)))


def xi_table(cfg: RunConfig) -> str:
    remap = br.XiRemap.from_params(cfg.params)
    p = _with_points(cfg.slopes(), (remap.p1, 0.0, remap.p2))
    rows = []
    for pi in p:
        rows.append((pi, *br.xi_branches(float(pi), remap), len(br.xi_remap(pi, remap))))
    return render_csv(("p", "xi1", "xi2", "xi3", "multiplicity"), rows)


def _fmt_set(values) -> str:
    if isinstance(values, an.Interval):
        return f"[{fmt(values.lo)}, {fmt(values.hi)}]"
    return "{" + ", ".join(fmt(v) for v in values) + "}"


def vacuum_report(params: an.ModelParams) -> str:
    lft = an.vacuum_lft(params)
    lines = [
        "method,H0,p0,velocity,note",
        f"LFT,{fmt(lft.energy)},{_fmt_set(lft.momenta)},{_fmt_set(lft.velocity_set)},"
        "velocity interval: every value is a vacuum",
    ]
    if params.kappa > 0:
        cusp = an.vacuum_cusp(params)
        lines.append(
            f"cusp,{fmt(cusp.energy)},{_fmt_set(cusp.momenta)},{_fmt_set(cusp.velocity_set)},"
            "momenta and velocities paired in order")
    else:
        lines.append("cusp,,,,no cusps for kappa <= 0")
    if params.kappa == 1.0:
        lines.append(f"HPI,{HPI_VACUUM['H0']},{{{HPI_VACUUM['p0']}}},"
                     f"{{{HPI_VACUUM['velocity']}}},quoted literal - not computed")
    return "\n".join(lines) + "\n"


def read_samples(path: str) -> cj.SampledFunction:
    """Two-column ``x,f`` CSV; ``#`` lines and blank lines are skipped."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from exc
    xs, ys = [], []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        if len(row) != 2:
            raise CliError(f"{path}:{lineno}: expected 2 columns, got {len(row)}", EXIT_USAGE)
        try:
            x, y = float(row[0]), float(row[1])
        except ValueError:
            raise CliError(f"{path}:{lineno}: not a number: {','.join(row)}", EXIT_USAGE) from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise CliError(f"{path}:{lineno}: non-finite value", EXIT_USAGE)
        if xs and x <= xs[-1]:
            raise CliError(f"{path}:{lineno}: abscissae must be strictly increasing", EXIT_USAGE)
        xs.append(x)
        ys.append(y)
    if len(xs) < 2:
        raise CliError(f"{path}: need at least two samples", EXIT_USAGE)
    return cj.SampledFunction(np.array(xs), np.array(ys))


def parse_poly(text: str) -> an.PolynomialLagrangian:
    try:
        coeffs = tuple(float(c) for c in text.split(","))
        return an.PolynomialLagrangian(coeffs)
    except ValueError as exc:
        raise CliError(f"--poly: {exc}", EXIT_USAGE) from None


def conjugate_table(f: cj.SampledFunction, cfg: RunConfig, *,
                    biconjugate: bool = False, oracle: bool = False) -> str:
    if biconjugate:
        h = cj.biconjugate(f)
        return render_csv(("x", "hull"), zip(h.abscissae, h.values))
    grid = cj.SlopeGrid(cfg.slopes())
    res = (cj.conjugate_bruteforce if oracle else cj.conjugate_fast)(f, grid)
    rows = zip(grid.slopes, res.values, res.finite, f.abscissae[res.argsup])
    return render_csv(("p", "conjugate", "finite", "argsup_x"), rows)


def _add_common(sp: argparse.ArgumentParser, grid=True, slopes=True) -> None:
    sp.add_argument("--kappa", type=float, default=1.0, help="quadratic coefficient (default 1)")
    if grid:
        sp.add_argument("--grid", nargs=3, metavar=("MIN", "MAX", "N"),
                        help="velocity grid (default -3 3 4001)")
    if slopes:
        sp.add_argument("--slopes", nargs=3, metavar=("MIN", "MAX", "N"),
                        help="momentum grid (default -2 2 4001)")
    sp.add_argument("--out", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lfham",
        description="Convex conjugates of a non-convex quartic Lagrangian, as CSV.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("hamiltonian", help="LFT Hamiltonian with reference lines")
    _add_common(sp, grid=False)
    sp = sub.add_parser("lagrangian", help="original and convex-hull Lagrangians")
    _add_common(sp, slopes=False)
    sp = sub.add_parser("branches", help="swallow-tail curve of the multi-valued Hamiltonian")
    _add_common(sp)
    sp.add_argument("--xi", action="store_true",
                    help="also write the xi-remap table (to OUT with a .xi suffix, or after the curve)")
    sp = sub.add_parser("vacuum", help="vacuum states of the three constructions")
    sp.add_argument("--kappa", type=float, default=1.0)
    sp.add_argument("--out")
    sp = sub.add_parser("conjugate", help="discrete Legendre-Fenchel transform of samples")
    sp.add_argument("input", nargs="?", help="two-column CSV x,f")
    sp.add_argument("--poly", help="sample the polynomial c0,c1,...,cd on --grid instead")
    sp.add_argument("--biconjugate", action="store_true", help="emit the convex hull")
    sp.add_argument("--oracle", action="store_true", help="use the O(N*M) brute force")
    _add_common(sp)
    sp = sub.add_parser("audit", help="run invariant checks")
    sp.add_argument("--seed", type=int, default=0)
    return parser


def _triple(values, default):
    if values is None:
        return default
    try:
        lo, hi, n = float(values[0]), float(values[1]), int(values[2])
    except ValueError:
        raise CliError(f"bad grid specification: {' '.join(values)}", EXIT_USAGE) from None
    return lo, hi, n


def config_from_args(args) -> RunConfig:
    g = _triple(getattr(args, "grid", None), (-3.0, 3.0, 4001))
    s = _triple(getattr(args, "slopes", None), (-2.0, 2.0, 4001))
    return RunConfig(args.kappa, *g, *s, output_path=args.out)


def _xi_path(out: str) -> str:
    p = Path(out)
    return str(p.with_name(p.stem + ".xi" + p.suffix))


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "audit":
        results = audit.run_all(args.seed)
        for r in results:
            print(r.line())
        return EXIT_OK if all(r.passed for r in results) else EXIT_AUDIT

    cfg = config_from_args(args) if args.command != "vacuum" else None
    if args.command == "hamiltonian":
        emit(hamiltonian_table(cfg), cfg.output_path)
    elif args.command == "lagrangian":
        emit(lagrangian_table(cfg), cfg.output_path)
    elif args.command == "branches":
        if cfg.kappa <= 0 and args.xi:
            raise CliError("--xi needs kappa > 0", EXIT_DOMAIN)
        curve = branches_table(cfg)
        if args.xi and cfg.output_path is not None:
            emit(curve, cfg.output_path)
            emit(xi_table(cfg), _xi_path(cfg.output_path))
        elif args.xi:
            emit(curve + "\n" + xi_table(cfg), None)
        else:
            emit(curve, cfg.output_path)
    elif args.command == "vacuum":
        if not math.isfinite(args.kappa):
            raise CliError("--kappa must be finite", EXIT_USAGE)
        emit(vacuum_report(an.ModelParams(args.kappa)), args.out)
    elif args.command == "conjugate":
        if (args.input is None) == (args.poly is None):
            raise CliError("give exactly one of INPUT or --poly", EXIT_USAGE)
        if args.poly is not None:
            poly = parse_poly(args.poly)
            domain = cj.effective_domain(poly)
            if not domain.bounded:
                raise CliError(f"conjugate of {poly.coeffs} is unbounded ({domain.kind.value} domain)",
                               EXIT_DOMAIN)
            f = cj.SampledFunction.from_callable(poly, cfg.velocities())
        else:
            f = read_samples(args.input)
        emit(conjugate_table(f, cfg, biconjugate=args.biconjugate, oracle=args.oracle),
             cfg.output_path)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(argv)
    except CliError as exc:
        print(f"lfham: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
