"""Planar open sets, their compact exhaustions, and sampled sup-norms.

A Region is one of four primitive kinds with exact distance-to-complement
formulas.  The exhaustion compact with index n is the set
{dist(z, complement) >= 1/n, |z| <= n}, sampled on a square lattice.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import EmptyCompact, NonFiniteValue, RootFindingDivergence
from .kernels import horner_eval


def default_pitch(n: int) -> float:
    """Default lattice pitch for the index-n compact.

    PADE_GRID_H overrides (CLI contract); the default tightens with n so
    the band 1/n..1/(n+1) stays resolved.
    """
    env = os.environ.get("PADE_GRID_H")
    if env:
        return float(env)
    return min(0.02, 1.0 / (4 * n))


@dataclass(frozen=True)
class Region:
    """Open subset of the plane containing 0.

    kind: "whole_plane" | "disk" | "plane_minus_disks" | "rect".
    disk: open disk given by (center, radius).
    plane_minus_disks: complement of a union of closed disks.
    rect: open axis-aligned rectangle given by (min corner, max corner).
    """

    kind: str
    center: complex = 0j
    radius: float = 0.0
    disks: tuple = ()  # ((center, radius), ...)
    corners: tuple = ()  # ((xmin, ymin), (xmax, ymax))

    def __post_init__(self):
        if self.kind not in ("whole_plane", "disk", "plane_minus_disks", "rect"):
            raise ValueError(f"unknown region kind {self.kind!r}")
        if self.dist_to_complement(0j) <= 0:
            raise ValueError("region must contain 0")

    def dist_to_complement(self, z):
        """Exact Euclidean distance from z to the complement; 0 outside.

        Accepts scalars or arrays; returns +inf for the whole plane.
        """
        z = np.asarray(z, dtype=np.complex128)
        if self.kind == "whole_plane":
            d = np.full(z.shape, np.inf)
        elif self.kind == "disk":
            d = np.maximum(self.radius - np.abs(z - self.center), 0.0)
        elif self.kind == "plane_minus_disks":
            d = np.full(z.shape, np.inf)
            for c, r in self.disks:
                d = np.minimum(d, np.maximum(np.abs(z - c) - r, 0.0))
        else:  # rect
            (x0, y0), (x1, y1) = self.corners
            d = np.minimum.reduce([
                z.real - x0, x1 - z.real, z.imag - y0, y1 - z.imag,
            ])
            d = np.maximum(d, 0.0)
        if z.ndim == 0:
            return float(d)
        return d

    def contains(self, z):
        return self.dist_to_complement(z) > 0

def whole_plane() -> Region:
    return Region("whole_plane")


def disk(center=0j, radius=1.0) -> Region:
    return Region("disk", center=complex(center), radius=float(radius))


def plane_minus_disks(disks_spec) -> Region:
    return Region(
        "plane_minus_disks",
        disks=tuple((complex(c), float(r)) for c, r in disks_spec),
    )


def rect(min_corner, max_corner) -> Region:
    return Region(
        "rect",
        corners=(
            (float(min_corner[0]), float(min_corner[1])),
            (float(max_corner[0]), float(max_corner[1])),
        ),
    )


@dataclass(frozen=True)
class CompactGrid:
    """Lattice sample of the index-n exhaustion compact."""

    n: int
    spacing: float
    points: np.ndarray = field(repr=False)

    @property
    def bound(self):
        """The defining constraints (1/n, n)."""
        return (1.0 / self.n, float(self.n))

    def __len__(self):
        return len(self.points)


def dist_to_complement(r: Region, z) -> float:
    return r.dist_to_complement(z)


@lru_cache(maxsize=256)
def _exhaustion_cached(region: Region, n: int, h: float):
    lim = int(np.floor(n / h))
    axis = np.arange(-lim, lim + 1) * h
    xs, ys = np.meshgrid(axis, axis, indexing="xy")
    z = (xs + 1j * ys).ravel()  # row-major: y varies slowest
    mask = (np.abs(z) <= n) & (region.dist_to_complement(z) >= 1.0 / n)
    pts = z[mask]
    pts.setflags(write=False)
    return pts


def exhaustion_K(r: Region, n: int, h: float | None = None) -> CompactGrid:
    """Square lattice of pitch h intersected with the index-n compact.

    The lattice is anchored at the origin, so z=0 is included whenever it
    qualifies.  Raises EmptyCompact when no lattice point does (legal for
    small n; the caller decides what that means).
    """
    if n < 1:
        raise ValueError("exhaustion index must be >= 1")
    if h is None:
        h = default_pitch(n)
    if h <= 0:
        raise ValueError("lattice pitch must be positive")
    pts = _exhaustion_cached(r, n, float(h))
    if len(pts) == 0:
        raise EmptyCompact(f"K_{n} has no lattice point at pitch {h}")
    return CompactGrid(n, float(h), pts)


def sup_norm(f, K: CompactGrid) -> float:
    """max |f(z)| over the grid; a lower approximation of the true sup."""
    vals = np.asarray(f(K.points), dtype=np.complex128)
    finite = np.isfinite(vals.real) & np.isfinite(vals.imag)
    if not np.all(finite):
        bad = K.points[~finite][0]
        raise NonFiniteValue(complex(bad))
    return float(np.max(np.abs(vals))) if len(vals) else 0.0


def rho_metric(f, g, r: Region, N_max: int, h: float | None = None) -> float:
    """Truncated metric sum_{n<=N_max} 2^-n min(sup|f-g| on K_n, 1).

    Truncation error is at most 2^-N_max.  Indices whose compact has no
    lattice point contribute 0.
    """
    if N_max < 1:
        raise ValueError("N_max must be >= 1")
    total = 0.0
    for n in range(1, N_max + 1):
        try:
            K = exhaustion_K(r, n, h if h is not None else default_pitch(n))
        except EmptyCompact:
            continue
        diff = sup_norm(lambda z: np.asarray(f(z)) - np.asarray(g(z)), K)
        total += 2.0 ** (-n) * min(diff, 1.0)
    return total


@dataclass(frozen=True)
class PoleReport:
    pole_free: bool
    roots: tuple
    min_distance: float


def denominator_roots(den_coeffs) -> np.ndarray:
    """All roots of the polynomial, via the companion matrix, Newton-polished."""
    c = np.asarray(den_coeffs, dtype=np.complex128)
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        raise ValueError("zero polynomial has no root set")
    c = c[: nz[-1] + 1]
    if len(c) == 1:
        return np.zeros(0, dtype=np.complex128)
    roots = np.roots(c[::-1])
    dc = c[1:] * np.arange(1, len(c))
    for _ in range(3):
        fv = horner_eval(c, roots)
        dv = horner_eval(dc, roots)
        step = np.where(dv != 0, fv / np.where(dv != 0, dv, 1), 0)
        roots = roots - step
    # backward-stable residual: compare |p(w)| against the magnitude of the
    # evaluation itself, sum_j |c_j| |w|^j, so far-out roots are not
    # penalized for roundoff intrinsic to evaluating there
    mags = np.abs(c)
    powers = np.abs(roots)[:, None] ** np.arange(len(c))[None, :]
    scale = np.maximum(powers @ mags, np.max(mags))
    resid = np.abs(horner_eval(c, roots)) / scale
    if np.any(resid > 1e-8):
        raise RootFindingDivergence(f"root residual {np.max(resid):g} exceeds 1e-8")
    return roots


def pole_free_on(r, K: CompactGrid, margin: float | None = None) -> PoleReport:
    """True iff every denominator root stays `margin` away from the grid.

    `r` is anything with a `denominator` ComplexPoly (an approximant or a
    rational pair).  Default margin is one lattice cell of safety, 2h.
    """
    den = getattr(r, "denominator", None)
    if den is None:
        den = r.den
    if margin is None:
        margin = 2 * K.spacing
    roots = denominator_roots(den.coeffs)
    if len(roots) == 0:
        return PoleReport(True, (), float("inf"))
    dmin = float(min(np.min(np.abs(K.points - root)) for root in roots))
    return PoleReport(dmin > margin, tuple(complex(w) for w in roots), dmin)
