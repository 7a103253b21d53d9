"""Planar geometry for quadratic Julia set covers.

Points of the plane are plain complex numbers (scalars or numpy arrays of
dtype complex128).  This module provides the quadratic map z -> z^2 + c and
its two inverse square-root branches with a fixed cut (argument taken in
[0, 2*pi)), exact point-set diameters with a deterministic diametral pair,
the sqrt(3)/2 enclosing disk built on that pair, and the exact difference
set of two disks.

The enclosing disk is deliberately not the minimal one: centering on the
midpoint of a diametral pair and inflating by sqrt(3)/2 gives a certified
cover of the whole set from the diameter alone, which is what the area
bounds downstream consume.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "Parameter",
    "Disk",
    "forward_map",
    "sqrt_branch",
    "inverse_branch",
    "diameter",
    "diametral_pair",
    "enclosing_disk",
    "disk_difference",
]

TWO_PI = 2.0 * math.pi

# all-pairs diameter is exact and fast enough up to this many points;
# larger sets go through a convex hull first
_ALL_PAIRS_LIMIT = 4096
_BLOCK = 256


@dataclass(frozen=True)
class Parameter:
    """Parameter c of the quadratic map, restricted to |c| > 2.

    For |c| > 2 the filled Julia set is totally disconnected and the whole
    inverse-branch construction below applies; smaller parameters are
    rejected outright rather than producing silently wrong bounds.
    """

    c: complex
    abs_c: float = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        c = complex(self.c)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError("parameter c must be finite")
        a = abs(c)
        if not a > 2.0:
            raise ValueError(
                f"need |c| > 2 (totally disconnected regime), got |c| = {a:.17g}"
            )
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "abs_c", a)


@dataclass(frozen=True)
class Disk:
    """Closed disk {z : |z - center| <= radius}."""

    center: complex
    radius: float

    def __post_init__(self) -> None:
        r = float(self.radius)
        if not (math.isfinite(r) and r >= 0.0):
            raise ValueError(f"radius must be finite and >= 0, got {r!r}")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", r)

    @property
    def area(self) -> float:
        return math.pi * self.radius * self.radius

    def contains(self, z, tol: float = 0.0):
        """Membership test, scalar or elementwise on arrays.

        tol is an absolute slack added to the radius (use it to absorb
        floating-point noise in certified checks).
        """
        return np.abs(np.asarray(z) - self.center) <= self.radius + tol


def forward_map(z, param: Parameter):
    """The quadratic map z -> z^2 + c (scalar or elementwise)."""
    return z * z + param.c


def sqrt_branch(z, sign: int = 1):
    """Square root with the argument cut fixed on [0, 2*pi).

    Writes z = rho * exp(i*theta) with theta in [0, 2*pi) and returns
    sign * sqrt(rho) * exp(i*theta/2).  The +1 branch therefore lands in
    the closed upper half plane (argument in [0, pi)) and the -1 branch is
    exactly its negative.  Accepts scalars or numpy arrays.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    arr = np.asarray(z, dtype=np.complex128)
    theta = np.arctan2(arr.imag, arr.real)
    theta = np.where(theta < 0.0, theta + TWO_PI, theta)
    root = np.sqrt(np.abs(arr)) * np.exp(0.5j * theta)
    if sign == -1:
        root = -root
    if arr.ndim == 0:
        return complex(root)
    return root


def inverse_branch(z, branch: int, param: Parameter):
    """Branch 0 or 1 of the inverse of the quadratic map.

    Branch 0 applies the upper-half-plane square root to z - c, branch 1
    its negative.  Composing strings of these branches over {0, 1} in
    order produces the pieces of the n-th preimage of any starting set.
    """
    if branch not in (0, 1):
        raise ValueError("branch must be 0 or 1")
    return sqrt_branch(z - param.c, 1 if branch == 0 else -1)


def _as_points(points) -> np.ndarray:
    pts = np.atleast_1d(np.asarray(points, dtype=np.complex128)).ravel()
    if pts.size == 0:
        raise ValueError("need at least one point")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    return pts


def _pair_scan(pts: np.ndarray) -> tuple[int, int, float]:
    """Exact diametral pair by blocked all-pairs scan.

    Returns (i, j, distance) with i <= j and (i, j) lexicographically
    smallest among pairs attaining the maximum.
    """
    m = pts.size
    best = 0.0
    for lo in range(0, m, _BLOCK):
        d = np.abs(pts[lo : lo + _BLOCK, None] - pts[None, :])
        v = float(d.max())
        if v > best:
            best = v
    for lo in range(0, m, _BLOCK):
        d = np.abs(pts[lo : lo + _BLOCK, None] - pts[None, :])
        hits = np.argwhere(d == best)
        if hits.size:
            pairs = []
            for a, b in hits:
                i, j = lo + int(a), int(b)
                pairs.append((i, j) if i <= j else (j, i))
            i, j = min(pairs)
            return i, j, best
    return 0, 0, best


def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (
        b.real - o.real
    )


def _hull_chains(pts: np.ndarray) -> tuple[list[int], list[int]]:
    """Upper and lower convex hull chains (indices, left to right)."""
    order = np.lexsort((pts.imag, pts.real))
    upper: list[int] = []
    lower: list[int] = []
    for raw in order:
        idx = int(raw)
        while len(upper) >= 2 and _cross(pts[upper[-2]], pts[upper[-1]], pts[idx]) >= 0:
            upper.pop()
        while len(lower) >= 2 and _cross(pts[lower[-2]], pts[lower[-1]], pts[idx]) <= 0:
            lower.pop()
        upper.append(idx)
        lower.append(idx)
    return upper, lower


def _pair_hull(pts: np.ndarray) -> tuple[int, int, float]:
    """Diametral pair via convex hull and rotating calipers.

    Same value as _pair_scan; the reported pair is the lexicographically
    smallest among the antipodal pairs the sweep visits (interior points
    and duplicate hull vertices can never attain the maximum strictly, so
    the distance is exact either way).
    """
    upper, lower = _hull_chains(pts)
    i, j = 0, len(lower) - 1
    best = -1.0
    cands: list[tuple[int, int]] = []
    while i < len(upper) - 1 or j > 0:
        a, b = upper[i], lower[j]
        d = float(abs(pts[a] - pts[b]))
        if d > best:
            best = d
            cands = [(a, b) if a <= b else (b, a)]
        elif d == best:
            cands.append((a, b) if a <= b else (b, a))
        if i == len(upper) - 1:
            j -= 1
        elif j == 0:
            i += 1
        else:
            du = pts[upper[i + 1]] - pts[upper[i]]
            dl = pts[lower[j]] - pts[lower[j - 1]]
            # advance the chain whose edge turns first
            if du.imag * dl.real > dl.imag * du.real:
                i += 1
            else:
                j -= 1
    a, b = min(cands)
    return a, b, best


def diametral_pair(points) -> tuple[int, int]:
    """Indices (i, j), i <= j, of a pair attaining the set diameter.

    Deterministic: among attaining pairs the lexicographically smallest
    index pair is returned (small sets scan all pairs; above
    _ALL_PAIRS_LIMIT points a convex hull pass restricts candidates to
    antipodal hull pairs, which preserves the attained distance).
    """
    pts = _as_points(points)
    if pts.size <= _ALL_PAIRS_LIMIT:
        i, j, _ = _pair_scan(pts)
    else:
        i, j, _ = _pair_hull(pts)
    return i, j


def diameter(points) -> float:
    """Exact diameter max |p - q| of a finite point set."""
    pts = _as_points(points)
    if pts.size <= _ALL_PAIRS_LIMIT:
        return _pair_scan(pts)[2]
    return _pair_hull(pts)[2]


def enclosing_disk(points) -> Disk:
    """Certified enclosing disk from a diametral pair.

    Centers on the midpoint of a diametral pair (x, y) and uses radius
    (sqrt(3)/2) * |x - y|.  Any planar set of diameter d fits in a disk of
    this radius around that midpoint, so the result covers every input
    point with room to spare; it is not the minimal enclosing disk.
    """
    pts = _as_points(points)
    if pts.size <= _ALL_PAIRS_LIMIT:
        i, j, d = _pair_scan(pts)
    else:
        i, j, d = _pair_hull(pts)
    center = (pts[i] + pts[j]) / 2.0
    return Disk(center, (math.sqrt(3.0) / 2.0) * d)


def disk_difference(d2: Disk, d1: Disk) -> Disk:
    """Exact difference set {x - y : x in d2, y in d1}.

    The result is the disk centered at the difference of the centers with
    radius the sum of the radii (equality, not just containment).  For two
    translates of the same radius-R disk this is the radius-2R disk around
    the center offset.
    """
    return Disk(d2.center - d1.center, d2.radius + d1.radius)
