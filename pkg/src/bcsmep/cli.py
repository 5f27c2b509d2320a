"""Command-line front end: curve, surface, mep, gap, table, verify.

Exit codes: 0 success, 2 usage error, 3 data/input error, 4 convergence
error, 5 verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from .concurrence import (concurrence_closed_form, concurrence_discrete,
                          log_concurrence_quadrature, mep, partial_concurrence)
from .core import DimensionlessPair, bcs_amplitudes, dimensionless_numbers
from .errors import ConvergenceError, MaterialsFileError, MissingDataError
from .fock import build_bcs_state, overlap, time_reverse
from .gap import solve_gap
from .materials import (load_default_materials, load_materials_file,
                        mep_report, reference_neg_log10, report_csv,
                        report_text)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_CONVERGENCE = 4
EXIT_VERIFY = 5

DEFAULT_CURVE_GAPS = (0.0, 0.1, 0.5, 0.9)


@dataclass(frozen=True)
class CurveSpec:
    """Sampling plan for per-mode concurrence curves."""

    gaps: tuple[float, ...] = DEFAULT_CURVE_GAPS
    energy_range: tuple[float, float] = (-1.0, 1.0)
    points: int = 401

    def __post_init__(self):
        object.__setattr__(self, "gaps", tuple(float(g) for g in self.gaps))
        object.__setattr__(self, "energy_range",
                           (float(self.energy_range[0]), float(self.energy_range[1])))
        if not self.gaps:
            raise ValueError("at least one gap value is required")
        if any(g < 0 for g in self.gaps):
            raise ValueError("gap values must be >= 0")
        if self.points < 2:
            raise ValueError("points must be >= 2")
        if not self.energy_range[0] < self.energy_range[1]:
            raise ValueError("energy range must satisfy min < max")


@dataclass(frozen=True)
class SurfaceSpec:
    """Sampling plan for the MEP surface over (n1, n2)."""

    n1_range: tuple[float, float] = (1e-3, 1e1)
    n1_points: int = 50
    n2_range: tuple[float, float] = (1e-3, 1e1)
    n2_points: int = 50
    n1_scale: str = "log"
    n2_scale: str = "log"

    def __post_init__(self):
        for label in ("n1", "n2"):
            rng = tuple(float(x) for x in getattr(self, f"{label}_range"))
            object.__setattr__(self, f"{label}_range", rng)
            scale = getattr(self, f"{label}_scale")
            if scale not in ("linear", "log"):
                raise ValueError(f"{label}_scale must be 'linear' or 'log'")
            if getattr(self, f"{label}_points") < 2:
                raise ValueError(f"{label}_points must be >= 2")
            if not rng[0] < rng[1]:
                raise ValueError(f"{label} range must satisfy min < max")
            if scale == "log" and rng[0] <= 0:
                raise ValueError(f"{label} range bounds must be positive on a log scale")
        if self.n1_range[0] <= 0:
            raise ValueError("n1 range bounds must be positive")


def _axis(rng, points, scale):
    if scale == "log":
        return np.logspace(math.log10(rng[0]), math.log10(rng[1]), points)
    return np.linspace(rng[0], rng[1], points)


def curve_rows(spec: CurveSpec):
    """(epsilon, gap, concurrence) samples, gap-major order."""
    eps_grid = np.linspace(spec.energy_range[0], spec.energy_range[1], spec.points)
    rows = []
    for gap in spec.gaps:
        for eps in eps_grid.tolist():
            rows.append((eps, gap, partial_concurrence(eps, gap)))
    return rows


def surface_grid(spec: SurfaceSpec):
    """n1 axis, n2 axis, and the MEP grid indexed [i_n1][j_n2]."""
    n1_vals = _axis(spec.n1_range, spec.n1_points, spec.n1_scale)
    n2_vals = _axis(spec.n2_range, spec.n2_points, spec.n2_scale)
    grid = [[mep(DimensionlessPair(float(n1), float(n2))) for n2 in n2_vals]
            for n1 in n1_vals]
    return n1_vals, n2_vals, grid


def surface_rows(spec: SurfaceSpec):
    n1_vals, n2_vals, grid = surface_grid(spec)
    rows = []
    for i, n1 in enumerate(n1_vals.tolist()):
        for j, n2 in enumerate(n2_vals.tolist()):
            rows.append((n1, n2, grid[i][j]))
    return rows


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(repr(float(c)) for c in row) + "\n")


def cmd_curve(args) -> int:
    spec = CurveSpec(gaps=args.gaps,
                     energy_range=(args.energy_min, args.energy_max),
                     points=args.points)
    rows = curve_rows(spec)
    _write_csv(args.output, "epsilon,gap,concurrence", rows)
    if args.figure:
        from .plotting import save_curve_figure
        save_curve_figure(rows, args.figure)
    print(f"wrote {len(rows)} curve samples to {args.output}")
    return EXIT_OK


def cmd_surface(args) -> int:
    spec = SurfaceSpec(n1_range=(args.n1_min, args.n1_max), n1_points=args.n1_points,
                       n2_range=(args.n2_min, args.n2_max), n2_points=args.n2_points,
                       n1_scale=args.n1_scale, n2_scale=args.n2_scale)
    n1_vals, n2_vals, grid = surface_grid(spec)
    rows = [(n1, n2, grid[i][j])
            for i, n1 in enumerate(n1_vals.tolist())
            for j, n2 in enumerate(n2_vals.tolist())]
    _write_csv(args.output, "n1,n2,mep", rows)
    if args.figure:
        from .plotting import save_surface_figure
        save_surface_figure(n1_vals, n2_vals, grid, args.figure,
                            n1_scale=spec.n1_scale, n2_scale=spec.n2_scale)
    print(f"wrote {len(rows)} surface samples to {args.output}")
    return EXIT_OK


def _load_table_for(args):
    if args.materials is None:
        return load_default_materials(), "bundled default"
    return load_materials_file(args.materials), args.materials


def cmd_mep(args) -> int:
    have_numbers = args.n1 is not None or args.n2 is not None
    if have_numbers == (args.name is not None):
        raise ValueError("give either --n1 and --n2, or --name (optionally --materials)")
    if have_numbers:
        if args.n1 is None or args.n2 is None:
            raise ValueError("--n1 and --n2 must be given together")
        numbers = DimensionlessPair(args.n1, args.n2)
    else:
        table, origin = _load_table_for(args)
        params = table.entry(args.name)
        numbers = dimensionless_numbers(params)
        print(f"material: {params.name} ({origin})")
        print(f"normalization: {table.normalization}")
    value = mep(numbers)
    neg = -math.log10(value) if value > 0 else math.inf
    print(f"inputs: n1 = {numbers.n1!r}, n2 = {numbers.n2!r}")
    print(f"MEP = {value!r}")
    print(f"-log10(MEP) = {neg!r}")
    return EXIT_OK


def cmd_gap(args) -> int:
    solution = solve_gap(args.coupling, args.debye_energy,
                         tol=args.tol, max_iter=args.max_iter)
    print(f"gap = {solution.gap!r}")
    print(f"iterations = {solution.iterations}")
    print(f"residual = {solution.residual!r}")
    if solution.underflow:
        print("underflow: gap below 1e-12 * debye_energy, reported as 0")
    return EXIT_OK


def cmd_table(args) -> int:
    if args.path is None:
        table = load_default_materials()
    else:
        table = load_materials_file(args.path)
    rows, errors = mep_report(table)
    reference = reference_neg_log10()
    reference = {k: v for k, v in reference.items()
                 if any(r.name == k for r in rows)}
    if args.format == "csv":
        sys.stdout.write(report_csv(rows))
    else:
        sys.stdout.write(report_text(rows, table.normalization, reference=reference))
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report_csv(rows))
    if args.figure:
        from .plotting import save_table_figure
        save_table_figure(rows, args.figure, reference=reference)
    for message in errors:
        print(f"error: {message}", file=sys.stderr)
    return EXIT_DATA if errors else EXIT_OK


def _verify_quadrature() -> float:
    grid = np.logspace(-3.0, 2.0, 20)
    worst = 0.0
    for n1 in grid.tolist():
        for n2 in grid.tolist():
            numbers = DimensionlessPair(n1, n2)
            diff = abs(log_concurrence_quadrature(numbers)
                       - concurrence_closed_form(numbers).log_value)
            worst = max(worst, diff)
    return worst


def _verify_overlap(seed, instances) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(instances):
        m = int(rng.integers(1, 13))
        eps = rng.uniform(-3.0, 3.0, size=m)
        gap = float(rng.uniform(0.0, 2.0))
        amps = bcs_amplitudes(eps, gap)
        sign_u = np.where(rng.random(m) < 0.5, 1.0, -1.0)
        sign_v = np.where(rng.random(m) < 0.5, 1.0, -1.0)
        u = sign_u * np.sqrt(amps.u2)
        v = sign_v * np.sqrt(amps.v2)
        ov = abs(overlap(build_bcs_state(u, v), time_reverse(u, v)))
        worst = max(worst, abs(ov - concurrence_discrete(amps).value))
    return worst


def _verify_gap():
    worst_residual = 0.0
    worst_rel = 0.0
    for k in range(1, 11):
        lam = k / 10.0
        solution = solve_gap(lam, 1.0)
        exact = 1.0 / math.sinh(1.0 / lam)
        worst_residual = max(worst_residual, solution.residual)
        worst_rel = max(worst_rel, abs(solution.gap - exact) / exact)
    return worst_residual, worst_rel


def cmd_verify(args) -> int:
    if args.instances == 0:
        print("warning: --instances 0 makes the overlap check vacuous")
    residual, rel = _verify_gap()
    checks = [
        ("quadrature vs closed form  max|dlnC|", _verify_quadrature(), 1e-10),
        ("pair overlap vs product    max|dC|", _verify_overlap(args.seed, args.instances), 1e-10),
        ("gap equation residual      max", residual, 1e-10),
        ("gap closed-form match      max rel", rel, 1e-8),
    ]
    passed = 0
    for label, value, tol in checks:
        ok = value <= tol
        passed += ok
        print(f"check {label} = {value:.3e} (tol {tol:.1e}) -> {'PASS' if ok else 'FAIL'}")
    print(f"verify: {'PASS' if passed == len(checks) else 'FAIL'} "
          f"({passed}/{len(checks)} checks, seed={args.seed}, instances={args.instances})")
    return EXIT_OK if passed == len(checks) else EXIT_VERIFY


def _gap_list(text: str):
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad gap list {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("gap list must not be empty")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcsmep",
        description="Concurrence and pairing-entanglement (MEP) calculator "
                    "for BCS superconductors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve", help="sample per-mode concurrence curves to CSV")
    p.add_argument("--gaps", type=_gap_list, default=DEFAULT_CURVE_GAPS,
                   help="comma-separated gap values (default 0.0,0.1,0.5,0.9)")
    p.add_argument("--energy-min", type=float, default=-1.0)
    p.add_argument("--energy-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=401)
    p.add_argument("--output", required=True, help="CSV output path")
    p.add_argument("--figure", help="also render the curves to this image file")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("surface", help="sample the MEP surface over (n1, n2) to CSV")
    p.add_argument("--n1-min", type=float, default=1e-3)
    p.add_argument("--n1-max", type=float, default=1e1)
    p.add_argument("--n1-points", type=int, default=50)
    p.add_argument("--n1-scale", choices=("log", "linear"), default="log")
    p.add_argument("--n2-min", type=float, default=1e-3)
    p.add_argument("--n2-max", type=float, default=1e1)
    p.add_argument("--n2-points", type=int, default=50)
    p.add_argument("--n2-scale", choices=("log", "linear"), default="log")
    p.add_argument("--output", required=True, help="CSV output path")
    p.add_argument("--figure", help="also render the surface to this image file")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("mep", help="print MEP for (n1, n2) or for a material")
    p.add_argument("--n1", type=float)
    p.add_argument("--n2", type=float)
    p.add_argument("--name", help="material name to look up")
    p.add_argument("--materials", help="materials file (default: bundled data)")
    p.set_defaults(func=cmd_mep)

    p = sub.add_parser("gap", help="solve the self-consistent gap equation")
    p.add_argument("--coupling", type=float, required=True,
                   help="dimensionless coupling lambda")
    p.add_argument("--debye-energy", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-iter", type=int, default=200)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("table", help="MEP report for a materials file")
    p.add_argument("path", nargs="?", default=None,
                   help="materials file (default: bundled data)")
    p.add_argument("--format", choices=("text", "csv"), default="text",
                   help="stdout format")
    p.add_argument("--output", help="also write the CSV report to this path")
    p.add_argument("--figure", help="also render the report to this image file")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the numerical cross-checks")
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--instances", type=int, default=1000)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MaterialsFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except MissingDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
