"""Command line surface: Pade table sweeps, convergence runs along a
schedule, and density-certificate runs with machine-readable output."""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import density, geometry, pade, serialization
from .errors import InsufficientTruncation, NonFiniteValue, PadeForgeError
from .pade import PadeIndex
from .series import ComplexPoly, RationalPair, TaylorSeries, partial_sum

SCHEMA_LINE = "pade-forge/v1"
ROW_SCHEDULE_LENGTH = 8  # row:Q expands to (1,Q)..(8,Q)


@dataclass(frozen=True)
class ApproximationSchedule:
    pairs: tuple
    kind: str  # diagonal | row | custom

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("schedule must be nonempty")
        ps = [p for p, _ in self.pairs]
        if any(b <= a for a, b in zip(ps, ps[1:])):
            raise ValueError("schedule requires strictly increasing p")
        if self.kind == "diagonal":
            qs = [q for _, q in self.pairs]
            if any(b <= a for a, b in zip(qs, qs[1:])):
                raise ValueError("diagonal schedule requires strictly increasing q")


def parse_schedule(spec: str) -> ApproximationSchedule:
    if spec.startswith("diag:"):
        m = int(spec.split(":", 1)[1])
        return ApproximationSchedule(tuple((k, k) for k in range(1, m + 1)), "diagonal")
    if spec.startswith("row:"):
        q = int(spec.split(":", 1)[1])
        return ApproximationSchedule(
            tuple((k, q) for k in range(1, ROW_SCHEDULE_LENGTH + 1)), "row"
        )
    obj = serialization.load_json(spec)
    pairs = obj["pairs"] if isinstance(obj, dict) else obj
    return ApproximationSchedule(tuple((int(p), int(q)) for p, q in pairs), "custom")


def load_series(spec: str, order: int) -> TaylorSeries:
    """Built-in generator (exp, geom) at the given truncation, or a file."""
    if spec == "exp":
        return TaylorSeries([1.0 / math.factorial(v) for v in range(order + 1)])
    if spec == "geom":
        return TaylorSeries(np.ones(order + 1))
    return serialization.series_from_obj(serialization.load_json(spec))


def load_region(spec: str) -> geometry.Region:
    if spec == "whole_plane":
        return geometry.whole_plane()
    return serialization.region_from_obj(serialization.load_json(spec))


def _fmt(x) -> str:
    return repr(float(x))


def cmd_table(series_spec, pmax, qmax, region, n, out_path):
    """CSV sweep over the (0..pmax) x (0..qmax) rectangle of indices."""
    s = load_series(series_spec, pmax + qmax + 20)
    if s.truncation_order < pmax + qmax:
        raise InsufficientTruncation(f"need truncation >= {pmax + qmax}")
    K = geometry.exhaustion_K(region, n)
    reference = partial_sum(s, s.truncation_order)

    lines = [SCHEMA_LINE, "p,q,in_Dpq,condition_estimate,order_residual,sup_err_Kn,pole_free"]
    for p in range(pmax + 1):
        for q in range(qmax + 1):
            idx = PadeIndex(p, q)
            report = pade.hankel_determinant(s, idx)
            cells = [str(p), str(q), str(report.in_Dpq).lower(), _fmt(report.condition_estimate)]
            if report.in_Dpq:
                try:
                    approx = pade.compute_pade(s, idx)
                    resid = pade.order_condition_residual(s, approx)
                    try:
                        err = geometry.sup_norm(lambda z: approx(z) - reference(z), K)
                    except NonFiniteValue:
                        err = float("inf")  # a pole sits on the grid
                    free = geometry.pole_free_on(approx, K).pole_free
                    cells += [_fmt(resid), _fmt(err), str(free).lower()]
                except PadeForgeError:
                    cells += ["", "", ""]
            else:
                cells += ["", "", ""]
            lines.append(",".join(cells))
    _write_lines(out_path, lines)


def cmd_converge(series_spec, schedule, region, n_max, out_path):
    """One CSV row per schedule element, errors against the doubled-truncation
    reference on K_1..K_{n_max}."""
    max_sum = max(p + q for p, q in schedule.pairs)
    s = load_series(series_spec, 2 * max_sum + 20)
    for p, q in schedule.pairs:
        if s.truncation_order < p + q:
            raise InsufficientTruncation(f"series too short for pair ({p},{q})")
    # reference at (at least) doubled truncation; file input contributes
    # whatever it carries beyond the last pair
    reference = partial_sum(s, s.truncation_order)

    grids = []
    for j in range(1, n_max + 1):
        try:
            grids.append((j, geometry.exhaustion_K(region, j)))
        except geometry.EmptyCompact:
            grids.append((j, None))

    header = ["m", "p", "q", "in_Dpq"] + [f"sup_err_K{j}" for j, _ in grids] + ["pole_free"]
    lines = [SCHEMA_LINE, ",".join(header)]
    for m, (p, q) in enumerate(schedule.pairs, start=1):
        idx = PadeIndex(p, q)
        report = pade.hankel_determinant(s, idx)
        cells = [str(m), str(p), str(q), str(report.in_Dpq).lower()]
        if report.in_Dpq:
            approx = pade.compute_pade(s, idx)
            for _, K in grids:
                if K is None:
                    cells.append("")
                    continue
                try:
                    cells.append(_fmt(geometry.sup_norm(lambda z: approx(z) - reference(z), K)))
                except NonFiniteValue:
                    cells.append("inf")
            last = grids[-1][1]
            free = geometry.pole_free_on(approx, last).pole_free if last is not None else True
            cells.append(str(free).lower())
        else:
            cells += [""] * (len(grids) + 1)
        lines.append(",".join(cells))
    _write_lines(out_path, lines)


def cmd_density(target_path, p, q, region, n, s, N, eps, seed, out_dir):
    """Run a density construction and write certificate + report JSON.

    Returns the verification report; the CLI exit status reflects it.
    """
    obj = serialization.load_json(target_path)
    idx = PadeIndex(p, q)
    if "den" in obj:
        target = serialization.rational_from_obj(obj)
        cert = density.construct_general(target.num, target.den, idx, eps, region, n, s, N)
    else:
        key = "poly" if "poly" in obj else "coeffs"
        target = ComplexPoly(serialization._from_pairs(obj[key]))
        cert = density.construct_simply_connected(target, idx, eps, region, n, s, N)
    report = density.verify_certificate(cert)

    os.makedirs(out_dir, exist_ok=True)
    cert_obj = serialization.certificate_to_obj(cert)
    cert_obj["seed"] = seed
    serialization.dump_json(cert_obj, os.path.join(out_dir, "certificate.json"))
    serialization.dump_json(
        serialization.report_to_obj(report), os.path.join(out_dir, "report.json")
    )
    return report


def _write_lines(path, lines):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pade",
        description="Pade tables, convergence sweeps, and density certificates. "
        "PADE_GRID_H overrides the default lattice pitch.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="sweep the Pade table over a rectangle of indices")
    t.add_argument("--series", required=True, help="exp | geom | path to series JSON")
    t.add_argument("--pmax", type=int, required=True)
    t.add_argument("--qmax", type=int, required=True)
    t.add_argument("--region", required=True, help="region JSON file or 'whole_plane'")
    t.add_argument("--n", type=int, required=True, help="exhaustion index for sup errors")
    t.add_argument("--out", required=True)

    c = sub.add_parser("converge", help="errors along an approximation schedule")
    c.add_argument("--series", required=True)
    c.add_argument("--schedule", required=True, help="file | diag:M | row:Q")
    c.add_argument("--region", required=True)
    c.add_argument("--nmax", type=int, required=True)
    c.add_argument("--out", required=True)

    d = sub.add_parser("density", help="build and verify a density certificate")
    d.add_argument("--target", required=True, help="polynomial or rational JSON file")
    d.add_argument("--p", type=int, required=True)
    d.add_argument("--q", type=int, required=True)
    d.add_argument("--region", required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--s", type=int, required=True)
    d.add_argument("--bigN", type=int, required=True)
    d.add_argument("--eps", type=float, required=True)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--out", required=True, help="output directory")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "table":
            cmd_table(args.series, args.pmax, args.qmax, load_region(args.region), args.n, args.out)
            return 0
        if args.command == "converge":
            cmd_converge(
                args.series, parse_schedule(args.schedule), load_region(args.region),
                args.nmax, args.out,
            )
            return 0
        report = cmd_density(
            args.target, args.p, args.q, load_region(args.region),
            args.n, args.s, args.bigN, args.eps, args.seed, args.out,
        )
        if not report.passed:
            failing = [c["clause"] for c in report.clauses if not c["pass"]]
            print(f"certificate verification failed: {', '.join(failing)}", file=sys.stderr)
            return 2
        return 0
    except PadeForgeError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
