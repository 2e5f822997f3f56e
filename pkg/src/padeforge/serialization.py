"""JSON wire formats.

Series/polynomial: {"coeffs": [[re, im], ...]}.
Approximant: {"p", "q", "num", "den"} with den[0] == [1, 0] exactly.
Region: {"kind": ...} with kind-specific fields.
Certificate and verification report mirror their dataclasses; complex
numbers are [re, im] pairs throughout.
"""

from __future__ import annotations

import json

import numpy as np

from .density import DensityCertificate, VerificationReport
from .geometry import Region
from .pade import PadeApproximant, PadeIndex
from .series import ComplexPoly, RationalPair, TaylorSeries


def _c2pair(w) -> list:
    w = complex(w)
    return [w.real, w.imag]


def _pairs(coeffs) -> list:
    return [_c2pair(w) for w in coeffs]


def _from_pairs(pairs) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)


def series_to_obj(s: TaylorSeries) -> dict:
    return {"coeffs": _pairs(s.coeffs)}


def series_from_obj(obj) -> TaylorSeries:
    return TaylorSeries(_from_pairs(obj["coeffs"]))


def poly_to_obj(p: ComplexPoly) -> dict:
    return {"coeffs": _pairs(p.coeffs)}


def poly_from_obj(obj) -> ComplexPoly:
    return ComplexPoly(_from_pairs(obj["coeffs"]))


def rational_to_obj(r: RationalPair) -> dict:
    return {"num": _pairs(r.num.coeffs), "den": _pairs(r.den.coeffs)}


def rational_from_obj(obj) -> RationalPair:
    return RationalPair(ComplexPoly(_from_pairs(obj["num"])), ComplexPoly(_from_pairs(obj["den"])))


def approximant_to_obj(a: PadeApproximant) -> dict:
    return {
        "p": a.index.p,
        "q": a.index.q,
        "num": _pairs(a.numerator.coeffs),
        "den": _pairs(np.concatenate([[1.0 + 0j], a.denominator.coeffs[1:]])),
    }


def approximant_from_obj(obj) -> PadeApproximant:
    return PadeApproximant(
        ComplexPoly(_from_pairs(obj["num"])),
        ComplexPoly(_from_pairs(obj["den"])),
        PadeIndex(obj["p"], obj["q"]),
    )


def region_to_obj(r: Region) -> dict:
    if r.kind == "whole_plane":
        return {"kind": "whole_plane"}
    if r.kind == "disk":
        return {"kind": "disk", "center": _c2pair(r.center), "radius": r.radius}
    if r.kind == "plane_minus_disks":
        return {
            "kind": "plane_minus_disks",
            "disks": [{"center": _c2pair(c), "radius": rad} for c, rad in r.disks],
        }
    (x0, y0), (x1, y1) = r.corners
    return {"kind": "rect", "min": [x0, y0], "max": [x1, y1]}


def region_from_obj(obj) -> Region:
    kind = obj["kind"]
    if kind == "whole_plane":
        return Region("whole_plane")
    if kind == "disk":
        return Region("disk", center=complex(*obj["center"]), radius=float(obj["radius"]))
    if kind == "plane_minus_disks":
        return Region(
            "plane_minus_disks",
            disks=tuple(
                (complex(*d["center"]), float(d["radius"])) for d in obj["disks"]
            ),
        )
    if kind == "rect":
        return Region("rect", corners=(tuple(obj["min"]), tuple(obj["max"])))
    raise ValueError(f"unknown region kind {kind!r}")


def _target_to_obj(target) -> dict:
    if isinstance(target, ComplexPoly):
        return {"poly": _pairs(target.coeffs)}
    return {"num": _pairs(target.num.coeffs), "den": _pairs(target.den.coeffs)}


def certificate_to_obj(cert: DensityCertificate) -> dict:
    obj = {
        "kind": cert.kind,
        "target": _target_to_obj(cert.target),
        "p": cert.index.p,
        "q": cert.index.q,
        "region": region_to_obj(cert.region),
        "c": _c2pair(cert.c),
        "d": _c2pair(cert.d),
        "delta_tilde": cert.delta_tilde,
        "delta": cert.delta,
        "lambda": cert.lam,
        "r_radius": cert.r_radius,
        "n": cert.n,
        "s": cert.s,
        "N": cert.N,
        "epsilon": cert.epsilon,
        "f_tilde": rational_to_obj(cert.f_tilde),
        "f_final": _target_to_obj(cert.f_final),
        "achieved": {k: float(v) for k, v in cert.achieved.items()},
    }
    if cert.pole_audit is not None:
        obj["pole_audit"] = {
            "horizon": cert.pole_audit["horizon"],
            "roots": [_c2pair(w) for w in cert.pole_audit["roots"]],
            "min_distance": cert.pole_audit["min_distance"],
            "pass": cert.pole_audit["pass"],
        }
    return obj


def report_to_obj(report: VerificationReport) -> dict:
    return {"pass": report.passed, "clauses": report.to_json_obj()}


def dump_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
