"""Batch command-line front end.

Subcommands expose each module with machine-readable output:

* ``tableaux``: partitions, tableau counts, hook dimensions;
* ``sectors``: isotypic decomposition of (C^m)^{xN};
* ``equiv``: the boson-with-internal-index equivalence certificates;
* ``cover``: sector census of a finite cover;
* ``circle``: theta-sector spectra, gauge check, convergence.

Exit codes: 0 all checks passed, 2 usage error, 3 resource cap,
4 consistency or equivalence failure. Output is deterministic for a
fixed seed (floats are rounded to 10 significant digits before
serialization).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import circle_theta, cover_quant, parastat_equiv, tensor_rep
from .errors import ConsistencyError, DomainError, ResourceLimitError
from .permgroup import Partition, enumerate_partitions, hook_dimension, standard_tableaux

SCHEMA = "sector-kit/1"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_CHECK_FAILED = 4


def _round_floats(obj, sig: int = 10):
    """Round every float to `sig` significant digits, recursively."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(f"{obj:.{sig}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v, sig) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, sig) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return _round_floats(float(obj), sig)
    return obj


def _parse_partition(text: str) -> Partition:
    try:
        parts = tuple(int(p) for p in text.replace("(", "").replace(")", "").split(",") if p.strip())
        return Partition(parts)
    except (ValueError, DomainError) as exc:
        raise DomainError(f"cannot parse partition {text!r}: {exc}") from exc


def _render_json(payload: dict) -> bytes:
    return (json.dumps(_round_floats(payload), sort_keys=True, indent=2) + "\n").encode()


def _render_csv(header: list[str], rows: list[list]) -> bytes:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_round_floats(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue().encode()


def _render_pretty(lines: list[str]) -> bytes:
    return ("\n".join(lines) + "\n").encode()


def _run_tableaux(args) -> tuple[int, bytes]:
    n = args.N
    if not 1 <= n <= 8:
        raise DomainError(f"--N must be in 1..8, got {n}")
    shapes = enumerate_partitions(n)
    if args.lam is not None:
        wanted = _parse_partition(args.lam)
        if wanted.total != n:
            raise DomainError(f"partition {wanted.parts} is not a partition of {n}")
        shapes = [s for s in shapes if s.parts == wanted.parts]
    records = []
    for shape in shapes:
        dim = hook_dimension(shape)
        count = len(standard_tableaux(shape))
        records.append({"parts": list(shape.parts), "hook_dim": dim, "tableau_count": count})
    sum_sq = sum(r["hook_dim"] ** 2 for r in records)
    payload = {
        "schema": SCHEMA,
        "command": "tableaux",
        "config": {"N": n, "lambda": args.lam, "seed": args.seed},
        "partitions": records,
        "sum_of_squares": sum_sq,
        "factorial_N": math.factorial(n),
        "identity_ok": args.lam is not None or sum_sq == math.factorial(n),
    }
    counts_ok = all(r["hook_dim"] == r["tableau_count"] for r in records)
    code = EXIT_OK if payload["identity_ok"] and counts_ok else EXIT_CHECK_FAILED
    if args.format == "csv":
        rows = [[",".join(map(str, r["parts"])), r["hook_dim"], r["tableau_count"]] for r in records]
        return code, _render_csv(["partition", "hook_dim", "tableau_count"], rows)
    if args.format == "pretty":
        lines = [f"partitions of {n}:"]
        lines += [
            f"  {tuple(r['parts'])}: dim {r['hook_dim']}, {r['tableau_count']} standard tableaux"
            for r in records
        ]
        lines.append(f"sum of squared dims: {sum_sq} (N! = {math.factorial(n)})")
        return code, _render_pretty(lines)
    return code, _render_json(payload)


def _run_sectors(args) -> tuple[int, bytes]:
    report = tensor_rep.sector_decomposition(args.m, args.N)
    data = report.to_dict()
    if args.lam is not None:
        wanted = _parse_partition(args.lam)
        data["sectors"] = [s for s in data["sectors"] if tuple(s["partition"]) == wanted.parts]
        if not data["sectors"]:
            raise DomainError(f"{wanted.parts} is not a partition of {args.N}")
    payload = {
        "schema": SCHEMA,
        "command": "sectors",
        "config": {"m": args.m, "N": args.N, "lambda": args.lam, "seed": args.seed},
        **data,
    }
    worst = max(payload["residuals"].values())
    code = EXIT_OK if worst < 1e-10 else EXIT_CHECK_FAILED
    if args.format == "csv":
        rows = [
            [",".join(map(str, s["partition"])), s["irrep_dim"], s["multiplicity"], s["rank"]]
            for s in data["sectors"]
        ]
        return code, _render_csv(["partition", "irrep_dim", "multiplicity", "rank"], rows)
    if args.format == "pretty":
        lines = [f"sectors of (C^{args.m})^(x{args.N}):"]
        lines += [
            f"  {tuple(s['partition'])}: irrep dim {s['irrep_dim']}, multiplicity "
            f"{s['multiplicity']}, rank {s['rank']}"
            for s in data["sectors"]
        ]
        lines.append(f"commutant dimension: {data['commutant_dim']}")
        return code, _render_pretty(lines)
    return code, _render_json(payload)


def _run_equiv(args) -> tuple[int, bytes]:
    if args.N not in (2, 3):
        raise DomainError(f"--N must be 2 or 3 for equiv, got {args.N}")
    if args.m < 2:
        raise DomainError("--m must be >= 2 for the equivalence certificates")
    if args.format == "csv":
        raise DomainError("csv output is not defined for equiv; use json or pretty")
    rng = np.random.default_rng(args.seed)
    if args.N == 2:
        first = parastat_equiv.bosonic_singlet_realization(args.m)
        second = parastat_equiv.fermionic_realization(args.m)
    else:
        first = parastat_equiv.bosonic_doublet_realization(args.m)
        second = parastat_equiv.parafermion_realization(args.m)
    cert = parastat_equiv.general_equivalence(first, second, rng=rng)
    payload = {
        "schema": SCHEMA,
        "command": "equiv",
        "config": {"m": args.m, "N": args.N, "seed": args.seed},
        "realizations": [first.label, second.label],
        "carrier_leakages": [first.leakage, second.leakage],
        "certificate": cert.to_dict(include_intertwiner=True),
    }
    code = EXIT_OK if cert.equivalent else EXIT_CHECK_FAILED
    if args.format == "pretty":
        lines = [
            f"{first.label}  ~  {second.label}",
            f"carrier dims: {cert.carrier_dims}",
            f"equivalent: {cert.equivalent} (residual {cert.residual:.3e})",
        ]
        return code, _render_pretty(lines)
    return code, _render_json(payload)


def _run_cover(args) -> tuple[int, bytes]:
    if args.format == "csv":
        raise DomainError("csv output is not defined for cover; use json or pretty")
    if args.cover_json is not None:
        cover = cover_quant.cover_from_json(Path(args.cover_json))
        source = {"cover_json": str(args.cover_json)}
    else:
        if args.q_size is None or args.N is None:
            raise DomainError("cover needs --q-size and --N (or --cover-json)")
        cover = cover_quant.symmetric_cover(args.q_size, args.N)
        source = {"q_size": args.q_size, "N": args.N}
    report = cover_quant.sector_census(cover, seed=args.seed)
    payload = {
        "schema": SCHEMA,
        "command": "cover",
        "config": {**source, "seed": args.seed},
        **report.to_dict(),
    }
    code = EXIT_OK if report.passed else EXIT_CHECK_FAILED
    if args.format == "pretty":
        lines = [
            f"cover: {report.total_size} points over {report.base_size} base points, "
            f"deck group of order {report.group_order}",
            f"invariant kernel space: {report.kernel_space_dim}",
        ]
        lines += [
            f"  sector {s.label}: carrier dim {s.carrier_dim}, commutant dim {s.commutant_dim}"
            for s in report.sectors
        ]
        lines.append(f"dimension identity: {report.dimension_identity_ok}")
        lines.append(f"intertwining residual: {report.intertwining_residual_max:.3e}")
        lines.append(f"passed: {report.passed}")
        return code, _render_pretty(lines)
    return code, _render_json(payload)


def _run_circle(args) -> tuple[int, bytes]:
    theta = circle_theta.ThetaSector(args.theta).theta
    n = args.grid
    k_max = args.k_max
    rows = circle_theta.spectrum_rows(theta, n, k_max, method="spectral")
    gauge = circle_theta.gauge_equivalence_check(theta, n, method="spectral")
    sizes = (64, 128, 256)
    convergence = circle_theta.fd_convergence(theta, k_max=4, grid_sizes=sizes)
    worst = max(r["error"] for r in rows)
    ok = worst < 1e-9 and gauge.residual < 1e-8 and convergence.fitted_order >= 1.9
    code = EXIT_OK if ok else EXIT_CHECK_FAILED
    if args.format == "csv":
        csv_rows = [
            [theta, r["k"], r["eigenvalue"], r["reference"], r["error"]] for r in rows
        ]
        return code, _render_csv(["theta", "k", "eigenvalue", "reference", "error"], csv_rows)
    payload = {
        "schema": SCHEMA,
        "command": "circle",
        "config": {"theta": theta, "grid": n, "k_max": k_max, "seed": args.seed},
        "rows": rows,
        "worst_spectral_error": worst,
        "gauge": gauge.to_dict(),
        "fd_convergence": convergence.to_dict(),
        "passed": ok,
    }
    if args.format == "pretty":
        lines = [
            f"theta = {theta:.6f}, grid {n}",
            f"worst spectral eigenvalue error (|k| <= {k_max}): {worst:.3e}",
            f"gauge residual: {gauge.residual:.3e} "
            f"(measured constant {gauge.measured_constant:.6f}, "
            f"theta/2pi = {gauge.theta_over_2pi:.6f})",
            f"fd convergence order: {convergence.fitted_order:.3f}",
            f"passed: {ok}",
        ]
        return code, _render_pretty(lines)
    return code, _render_json(payload)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sectorkit",
        description="Sector structure of permutation-invariant algebras, finite covers, "
        "and circle theta-sectors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
        p.add_argument("--out", type=str, default=None)

    p = sub.add_parser("tableaux", help="partitions, tableaux, hook dimensions")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=str, default=None)
    common(p)
    p.set_defaults(func=_run_tableaux)

    p = sub.add_parser("sectors", help="isotypic decomposition of (C^m)^(xN)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=str, default=None)
    common(p)
    p.set_defaults(func=_run_sectors)

    p = sub.add_parser("equiv", help="internal-index equivalence certificates")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    common(p)
    p.set_defaults(func=_run_equiv)

    p = sub.add_parser("cover", help="sector census of a finite cover")
    p.add_argument("--q-size", dest="q_size", type=int, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--cover-json", dest="cover_json", type=str, default=None)
    common(p)
    p.set_defaults(func=_run_cover)

    p = sub.add_parser("circle", help="theta-sector spectra on the circle")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--grid", type=int, default=128)
    p.add_argument("--k-max", dest="k_max", type=int, default=16)
    common(p)
    p.set_defaults(func=_run_circle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload = args.func(args)
    except DomainError as exc:
        sys.stderr.write(json.dumps({"schema": SCHEMA, "error": str(exc), "kind": "usage"}) + "\n")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        sys.stderr.write(
            json.dumps({"schema": SCHEMA, "error": str(exc), "kind": "resource"}) + "\n"
        )
        return EXIT_RESOURCE
    except ConsistencyError as exc:
        sys.stderr.write(
            json.dumps({"schema": SCHEMA, "error": str(exc), "kind": "consistency"}) + "\n"
        )
        return EXIT_CHECK_FAILED
    if args.out is not None:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
