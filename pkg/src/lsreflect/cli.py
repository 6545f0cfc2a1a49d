"""Command-line interface.

    lsreflect fit P.csv Q.csv
    lsreflect apply plane.json P.csv
    lsreflect gen --dim N --m M --sigma S --seed K --out-prefix PATH
    lsreflect symmetry P.csv [--iters N] [--tol T]
    lsreflect eigen A.csv

Exit codes: 0 success, 2 bad input, 3 degenerate input, 4 solver failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .linalg import ConvergenceError, jacobi_eigen, symmetrize
from .reflection import DegenerateInput, FitResult, Hyperplane, PointSet, canonicalize, fit_reflection, reflect_points
from .symmetry import detect_best_symmetry

EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_SOLVER = 4


class InputError(Exception):
    pass


def fmt(x: float) -> str:
    return "%.17g" % x


def read_csv(path, min_cols: int = 2) -> np.ndarray:
    """Comma-separated reals, one row per line; '#' lines and blank lines skipped."""
    rows = []
    ncols = None
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row = [float(f.strip()) for f in line.split(",")]
        except ValueError:
            raise InputError(f"{path}:{lineno}: cannot parse {line!r} as numbers") from None
        if not all(math.isfinite(v) for v in row):
            raise InputError(f"{path}:{lineno}: non-finite value")
        if ncols is None:
            ncols = len(row)
            if ncols < min_cols:
                raise InputError(f"{path}:{lineno}: expected at least {min_cols} columns, got {ncols}")
        elif len(row) != ncols:
            raise InputError(f"{path}:{lineno}: expected {ncols} columns, got {len(row)}")
        rows.append(row)
    if not rows:
        raise InputError(f"{path}: no data rows")
    return np.array(rows, dtype=np.float64)


def read_points(path) -> PointSet:
    return PointSet(read_csv(path))


def write_csv(rows: np.ndarray, out) -> None:
    for row in rows:
        out.write(",".join(fmt(v) for v in row) + "\n")


def plane_record(plane: Hyperplane, **extra) -> dict:
    rec = {"dim": plane.dim, "normal": plane.normal.tolist(), "offset": plane.offset}
    rec.update(extra)
    return rec


def fit_record(fit: FitResult) -> dict:
    return plane_record(
        fit.plane,
        eigenvalues=fit.eigenvalues.tolist(),
        objective=fit.objective,
        degenerate=fit.degenerate,
    )


def read_plane(path) -> Hyperplane:
    try:
        rec = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    try:
        normal = np.array(rec["normal"], dtype=np.float64)
        offset = float(rec["offset"])
        dim = int(rec.get("dim", normal.size))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed plane record ({exc})") from None
    if normal.ndim != 1 or normal.size != dim:
        raise InputError(f"{path}: normal has {normal.size} components but dim is {dim}")
    if not (np.all(np.isfinite(normal)) and math.isfinite(offset)):
        raise InputError(f"{path}: non-finite plane parameters")
    if abs(np.linalg.norm(normal) - 1.0) > 1e-9:
        raise InputError(f"{path}: normal is not unit length")
    return Hyperplane(normal, offset)


def cmd_fit(args, out) -> int:
    P, Q = read_points(args.p), read_points(args.q)
    if P.m != Q.m:
        raise InputError(f"point count mismatch: {args.p} has {P.m}, {args.q} has {Q.m}")
    if P.dim != Q.dim:
        raise InputError(f"dimension mismatch: {args.p} has {P.dim}, {args.q} has {Q.dim}")
    fit = fit_reflection(P, Q)
    out.write(json.dumps(fit_record(fit)) + "\n")
    return 0


def cmd_apply(args, out) -> int:
    plane = read_plane(args.plane)
    P = read_points(args.p)
    if P.dim != plane.dim:
        raise InputError(f"dimension mismatch: plane has dim {plane.dim}, {args.p} has {P.dim}")
    write_csv(reflect_points(plane, P.points), out)
    return 0


def generate(dim: int, m: int, sigma: float, seed: int):
    """Random P in [-1, 1]^dim, random plane, Q = reflect(P) + N(0, sigma^2) noise."""
    if dim < 2 or m < 1 or not sigma >= 0:
        raise InputError("invalid parameters: need dim >= 2, m >= 1, sigma >= 0")
    rng = np.random.default_rng(seed)
    P = rng.uniform(-1.0, 1.0, size=(m, dim))
    n = rng.standard_normal(dim)
    plane = canonicalize(Hyperplane(n, rng.uniform(-0.5, 0.5) * np.linalg.norm(n)))
    Q = reflect_points(plane, P) + sigma * rng.standard_normal((m, dim))
    return P, Q, plane


def cmd_gen(args, out) -> int:
    P, Q, plane = generate(args.dim, args.m, args.sigma, args.seed)
    prefix = args.out_prefix
    Path(prefix + "p.csv").parent.mkdir(parents=True, exist_ok=True)
    with open(prefix + "p.csv", "w") as f:
        write_csv(P, f)
    with open(prefix + "q.csv", "w") as f:
        write_csv(Q, f)
    rec = plane_record(plane, seed=args.seed, m=args.m, sigma=args.sigma)
    with open(prefix + "plane.json", "w") as f:
        f.write(json.dumps(rec) + "\n")
    return 0


def cmd_symmetry(args, out) -> int:
    S = read_points(args.p)
    try:
        res = detect_best_symmetry(S, args.iters, args.tol)
    except ValueError as exc:
        if isinstance(exc, DegenerateInput):
            raise
        raise InputError(str(exc)) from None
    rec = plane_record(
        res.plane,
        objective=res.objective,
        objective_history=res.objective_history,
        iterations=res.iterations,
        converged=res.converged,
    )
    out.write(json.dumps(rec) + "\n")
    return 0


def cmd_eigen(args, out) -> int:
    a = read_csv(args.a, min_cols=1)
    if a.shape[0] != a.shape[1]:
        raise InputError(f"{args.a}: matrix is {a.shape[0]}x{a.shape[1]}, not square")
    if np.max(np.abs(a - a.T)) > 1e-9 * max(1.0, float(np.max(np.abs(a)))):
        raise InputError(f"{args.a}: matrix is not symmetric")
    eig = jacobi_eigen(symmetrize(a))
    for lam, v in zip(eig.eigenvalues, eig.eigenvectors):
        out.write(f"{fmt(lam)}: {','.join(fmt(x) for x in v)}\n")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # one-line diagnostic instead of argparse's usage block
        self.exit(EXIT_INPUT, f"error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lsreflect", description="Least-squares affine reflection fitting.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fit", help="fit the reflection taking P onto Q")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("apply", help="reflect points through a plane record")
    p.add_argument("plane")
    p.add_argument("p")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("gen", help="write a synthetic P, Q and ground-truth plane")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("symmetry", help="detect a mirror-symmetry plane of one cloud")
    p.add_argument("p")
    p.add_argument("--iters", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("eigen", help="eigendecomposition of a symmetric CSV matrix")
    p.add_argument("a")
    p.set_defaults(func=cmd_eigen)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except DegenerateInput as exc:
        err.write(f"error: degenerate input: {exc}\n")
        return EXIT_DEGENERATE
    except ConvergenceError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SOLVER
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
