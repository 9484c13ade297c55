"""Command-line front end: compute, sweep and certify.

State files are JSON with exactly one of two layouts::

    {"rho": [[[re, im], ...4 columns], ...4 rows]}     # dense, row-major,
                                                       # basis |00>,|01>,|10>,|11>
    {"x": [3 reals], "y": [3 reals], "K": [[3x3 row-major]]}

Exit codes: 0 success, 2 validation/parse failure, 3 certification failure.
"""

import argparse
import csv
import inspect
import json
import sys
import time

import numpy as np

from . import families, oracle
from .bloch import BlochForm, to_bloch, validate_state
from .discord import discord_d1, eigenframe
from .errors import (
    CertificationFailure,
    NotHermitian,
    NotPositive,
    NotUnitTrace,
    OutOfPositivityRegion,
    ParseError,
    UnknownFamily,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CERTIFICATION = 3

RESULT_FIELDS = [
    "input", "d1", "d2", "lower_bound", "branch",
    "axis_1", "axis_2", "axis_3", "lam_1", "lam_2", "lam_3",
    "oracle", "wall_time_s",
]


def load_state_file(path: str) -> BlochForm:
    """Parse a state file into Bloch form, validating physicality."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top-level JSON object expected")
    has_dense = "rho" in data
    has_bloch = {"x", "y", "K"} <= set(data)
    if has_dense == has_bloch:
        raise ParseError(f"{path}: provide exactly one of 'rho' or ('x','y','K')")
    if has_dense:
        raw = np.asarray(data["rho"], dtype=float)
        if raw.shape != (4, 4, 2):
            raise ParseError(f"{path}: 'rho' must be a 4x4 array of [re, im] pairs")
        rho = raw[..., 0] + 1j * raw[..., 1]
        return to_bloch(validate_state(rho))
    x = np.asarray(data["x"], dtype=float)
    y = np.asarray(data["y"], dtype=float)
    K = np.asarray(data["K"], dtype=float)
    if x.shape != (3,) or y.shape != (3,) or K.shape != (3, 3):
        raise ParseError(f"{path}: 'x' and 'y' must be 3-vectors and 'K' a 3x3 matrix")
    b = BlochForm(x, y, K)
    from .bloch import from_bloch
    validate_state(from_bloch(b).rho)
    return b


def result_record(input_id: str, b: BlochForm, with_oracle: bool,
                  grid: int, tol: float) -> tuple[dict, bool]:
    start = time.perf_counter()
    res = discord_d1(b)
    frame = eigenframe(b)
    record = {
        "input": input_id,
        "d1": res.d1_value,
        "d2": res.d2_value,
        "lower_bound": res.lower_bound,
        "branch": res.branch.value,
        "axis_1": float(res.axis[0]),
        "axis_2": float(res.axis[1]),
        "axis_3": float(res.axis[2]),
        "lam_1": float(frame.l_minus_vals[0]),
        "lam_2": float(frame.l_minus_vals[1]),
        "lam_3": float(frame.l_minus_vals[2]),
        "oracle": None,
        "wall_time_s": 0.0,
    }
    certified = True
    if with_oracle:
        orc = oracle.minimize_grid(b, grid)
        record["oracle"] = orc.min_value
        certified = abs(orc.min_value - res.d1_value) <= tol
    record["wall_time_s"] = time.perf_counter() - start
    return record, certified


def _emit(records: list[dict], fmt: str, stream) -> None:
    if fmt == "json":
        json.dump(records, stream, indent=2)
        stream.write("\n")
    else:
        writer = csv.DictWriter(stream, fieldnames=list(records[0].keys()) if records else RESULT_FIELDS)
        writer.writeheader()
        for rec in records:
            writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in rec.items()})


def cmd_compute(args) -> int:
    records = []
    all_certified = True
    for path in args.paths:
        try:
            b = load_state_file(path)
        except (ParseError, NotHermitian, NotUnitTrace, NotPositive) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        record, certified = result_record(path, b, args.certify, args.grid, args.tol)
        records.append(record)
        all_certified = all_certified and certified
    _emit(records, args.format, sys.stdout)
    if args.certify and not all_certified:
        print("certification failed: closed form and oracle disagree beyond tolerance",
              file=sys.stderr)
        return EXIT_CERTIFICATION
    return EXIT_OK


def parse_ranges(specs: list[str]) -> dict:
    """PARAM=a:b:step -> inclusive numpy range; PARAM=v -> fixed value."""
    out = {}
    for spec in specs or []:
        if "=" not in spec:
            raise ParseError(f"bad range '{spec}', expected PARAM=a:b:step or PARAM=v")
        name, _, rest = spec.partition("=")
        parts = rest.split(":")
        try:
            if len(parts) == 1:
                out[name] = np.array([float(parts[0])])
            elif len(parts) == 3:
                a, bnd, step = map(float, parts)
                n = int(np.floor((bnd - a) / step + 1e-9)) + 1
                out[name] = a + step * np.arange(max(n, 0))
            else:
                raise ValueError
        except ValueError as exc:
            raise ParseError(f"bad range '{spec}', expected PARAM=a:b:step or PARAM=v") from exc
    return out


def cmd_sweep(args) -> int:
    if args.family not in families.FAMILY_BUILDERS:
        print(f"error: unknown family '{args.family}'", file=sys.stderr)
        return EXIT_VALIDATION
    builder = families.FAMILY_BUILDERS[args.family]
    try:
        ranges = parse_ranges(args.range)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    params = [p for p in inspect.signature(builder).parameters if p != "y"]
    missing = [p for p in params if p not in ranges
               and inspect.signature(builder).parameters[p].default is inspect.Parameter.empty]
    if missing:
        print(f"error: family '{args.family}' needs ranges for {missing}", file=sys.stderr)
        return EXIT_VALIDATION

    names = [p for p in params if p in ranges]
    grids = np.meshgrid(*[ranges[n] for n in names], indexing="ij")
    rows = []
    for combo in zip(*[g.ravel() for g in grids]):
        kwargs = dict(zip(names, (float(c) for c in combo)))
        row = {n: kwargs[n] for n in names}
        try:
            state = builder(**kwargs)
        except (OutOfPositivityRegion, ValueError):
            row.update({"status": "skipped", "d1": "", "d2": "", "lower_bound": "", "branch": ""})
            rows.append(row)
            continue
        res = discord_d1(to_bloch(state))
        row.update({
            "status": "ok",
            "d1": res.d1_value,
            "d2": res.d2_value,
            "lower_bound": res.lower_bound,
            "branch": res.branch.value,
        })
        rows.append(row)

    stream = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        if args.format == "json":
            json.dump(rows, stream, indent=2)
            stream.write("\n")
        else:
            writer = csv.DictWriter(stream, fieldnames=list(rows[0].keys()) if rows else names)
            writer.writeheader()
            for row in rows:
                writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    finally:
        if args.out:
            stream.close()
    return EXIT_OK


def _family_fixtures() -> list[tuple[str, BlochForm]]:
    fx = [
        ("werner(t=-0.7)", families.werner(-0.7)),
        ("werner(t=0.3)", families.werner(0.3)),
        ("isotropic(t=0.8)", families.isotropic(0.8)),
        ("bell_diagonal(0.7,-0.5,0.2)", families.bell_diagonal(0.7, -0.5, 0.2)),
        ("pure_n(0.6)", families.pure_n(0.6)),
        ("rho_theta(pi/6)", families.rho_theta(np.pi / 6)),
        ("rho_theta(pi/3)", families.rho_theta(np.pi / 3)),
        ("x_state", families.x_state(0.35, 0.25, 0.22, 0.18, 0.12, 0.10)),
        ("quantum_classical(0.4,0.1,0.3)", families.quantum_classical(0.4, 0.1, 0.3)),
        ("beyond_x(0.5,0.1)", families.beyond_x(0.5, 0.1)),
        ("rho1(0.2,0.1,0.05j,0.1,0.05)", families.rho1(0.2, 0.1, 0.05j, 0.1, 0.05)),
        ("rho2(0.2,0.1,0.05,0.1j,0.3)", families.rho2(0.2, 0.1, 0.05, 0.1j, 0.3)),
    ]
    return [(label, to_bloch(state)) for label, state in fx]


def cmd_certify(args) -> int:
    rng = np.random.default_rng(args.seed)
    cases = _family_fixtures()
    for i in range(args.n_states):
        cases.append((f"ginibre[{i}]", to_bloch(oracle.ginibre_state(rng))))

    failures = []
    worst = 0.0
    for label, b in cases:
        try:
            record = oracle.certify(b, n_points=args.grid, tol=args.tol, label=label)
            worst = max(worst, record.gap)
        except CertificationFailure as exc:
            failures.append(exc)
            worst = max(worst, exc.record.gap)

    print(f"certified {len(cases)} states (seed {args.seed}, grid {args.grid}, tol {args.tol:g})")
    print(f"max |closed - oracle| = {worst:.3e}")
    if failures:
        print(f"FAILED on {len(failures)} states:")
        for exc in failures:
            print(f"  {exc}")
        return EXIT_CERTIFICATION
    print("all states certified")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tndiscord",
        description="Trace-norm geometric discord of two-qubit states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="compute discord for state files")
    p_compute.add_argument("paths", nargs="+", help="JSON state files")
    p_compute.add_argument("--certify", action="store_true",
                           help="also run the brute-force oracle on each state")
    p_compute.add_argument("--grid", type=int, default=oracle.DEFAULT_GRID)
    p_compute.add_argument("--tol", type=float, default=oracle.ORACLE_TOL)
    p_compute.add_argument("--seed", type=int, default=0, help="unused; accepted for uniformity")
    p_compute.add_argument("--format", choices=("json", "csv"), default="json")
    p_compute.set_defaults(func=cmd_compute)

    p_sweep = sub.add_parser("sweep", help="sweep a named family over parameter ranges")
    p_sweep.add_argument("--family", required=True)
    p_sweep.add_argument("--range", action="append",
                         help="PARAM=a:b:step (inclusive) or PARAM=v; repeatable")
    p_sweep.add_argument("--format", choices=("json", "csv"), default="csv")
    p_sweep.add_argument("--out", default=None, help="output path (default stdout)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_cert = sub.add_parser("certify", help="closed form vs oracle on random states + fixtures")
    p_cert.add_argument("--n-states", type=int, default=500)
    p_cert.add_argument("--seed", type=int, default=314159)
    p_cert.add_argument("--grid", type=int, default=oracle.DEFAULT_GRID)
    p_cert.add_argument("--tol", type=float, default=oracle.ORACLE_TOL)
    p_cert.set_defaults(func=cmd_certify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
