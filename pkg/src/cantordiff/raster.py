"""Brute-force raster and sampling oracles.

These are the independent cross-checks for the certified machinery: plain
grids over the plane, orbit iteration cell by cell, and a reproducible
pseudo-random sampler.  Nothing here feeds the certified bounds; the
oracles exist so every claim the bound machinery makes can be falsified
numerically at desk scale.

Conventions.  A GridMask stores one bit per cell; bits[iy, ix] covers the
square of side `cell` whose center is origin + (ix + 0.5 + (iy + 0.5)i) *
cell (origin is the lower-left corner of the window).  Preimage rasters
are centered on 0, so their cell centers sit on half-integer multiples of
the cell size; difference masks of two such rasters then land on integer
multiples, the same lattice the union-area grid uses, which is what makes
the two estimates comparable cell for cell.

Determinism.  All randomness comes from an explicit 64-bit linear
congruential generator (s <- 6364136223846793005*s + 1442695040888963407
mod 2^64, doubles taken as (s >> 11) / 2^53), vectorized by precomputed
stride coefficients but bit-identical to the scalar recurrence.  Thread
counts never change any output: row blocks are assembled in fixed order.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .geometry import Disk, Parameter, disk_difference

__all__ = [
    "GridMask",
    "preimage_member",
    "rasterize_preimage",
    "disk_mask",
    "mask_difference",
    "mask_area",
    "sample_diff_check",
    "lcg_uniforms",
    "DEFAULT_MAX_CELLS",
]

DEFAULT_MAX_CELLS = 1 << 26

_LCG_A = 6364136223846793005
_LCG_C = 1442695040888963407
_LCG_MASK = (1 << 64) - 1
_CHUNK = 1 << 14

# cap for the outer-mode dilation radii; once the certified error passes
# it no further cell can be ruled out, so the iteration stops early
_ERR_CAP = 1.0e6


@dataclass(frozen=True)
class GridMask:
    """Bit raster over an axis-aligned window of the plane."""

    origin: complex
    cell: float
    bits: np.ndarray
    mode: str = ""

    def __post_init__(self) -> None:
        if self.bits.dtype != np.bool_ or self.bits.ndim != 2:
            raise ValueError("bits must be a 2-d boolean array")
        if not (math.isfinite(self.cell) and self.cell > 0.0):
            raise ValueError(f"cell must be finite and > 0, got {self.cell!r}")
        self.bits.setflags(write=False)

    @property
    def height(self) -> int:
        return int(self.bits.shape[0])

    @property
    def width(self) -> int:
        return int(self.bits.shape[1])

    def center_axes(self) -> tuple[np.ndarray, np.ndarray]:
        """(xs, ys) coordinates of the cell centers along each axis."""
        xs = self.origin.real + (np.arange(self.width) + 0.5) * self.cell
        ys = self.origin.imag + (np.arange(self.height) + 0.5) * self.cell
        return xs, ys

    def set_centers(self) -> np.ndarray:
        """Complex centers of the set cells, row-major order."""
        xs, ys = self.center_axes()
        iy, ix = np.nonzero(self.bits)
        return xs[ix] + 1j * ys[iy]


def preimage_member(z, param: Parameter, depth: int):
    """Exact center test: |Q^k(z)| <= |c| for every k = 0..depth.

    True exactly on the depth-fold preimage of the closed disk of radius
    |c| (depth 0 is the disk itself).  The preimages are nested, so
    testing every step equals testing the last and keeps intermediate
    values bounded.
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    arr = np.asarray(z, dtype=np.complex128)
    alive = np.abs(arr) <= param.abs_c
    w = np.where(alive, arr, 0)
    for _ in range(depth):
        w = w * w + param.c
        alive = alive & (np.abs(w) <= param.abs_c)
        w = np.where(alive, w, 0)
    if arr.ndim == 0:
        return bool(alive)
    return alive


def _outer_block(z0: np.ndarray, param: Parameter, depth: int, half_diag: float):
    """Superset test: keep every cell not certified to miss the preimage.

    If the cell contains a point p of the depth-fold preimage, the orbit
    of p satisfies |Q^k(p)| <= R_1 for k < depth and <= |c| at k = depth,
    while the center orbit w_k drifts from Q^k(p) by at most

        e_0 = half diagonal,   e_{k+1} = (2*R_1 + e_k) * e_k

    (from |Q(z) - Q(w)| = |z - w| |z + w| and the R_1 modulus bound).  So
    a cell is certified out as soon as |w_k| exceeds the inflated
    threshold; whatever survives is a superset of the preimage.  Once
    e_k explodes past _ERR_CAP no further cell can be ruled out and the
    loop stops early, which only enlarges the superset.
    """
    a = param.abs_c
    r1 = math.sqrt(2.0 * a)
    e = half_diag
    thr0 = (r1 if depth >= 1 else a) + e
    alive = np.abs(z0) <= thr0
    w = np.where(alive, z0, 0)
    for k in range(1, depth + 1):
        e = (2.0 * r1 + e) * e
        if e > _ERR_CAP:
            break
        w = w * w + param.c
        thr = (r1 if k < depth else a) + e
        alive = alive & (np.abs(w) <= thr)
        w = np.where(alive, w, 0)
    return alive


def rasterize_preimage(
    param: Parameter,
    depth: int,
    cell: float,
    mode: str = "inner",
    max_cells: int | None = None,
    workers: int = 1,
) -> GridMask:
    """Raster of the depth-fold preimage of the starting disk.

    Depth 0 is the starting disk itself; depth n marks (an approximation
    of) the set where |Q^k(z)| <= |c| for every k <= n.  The window is
    the square of half-side nhalf*cell with nhalf = ceil((|c|+cell)/cell),
    so it contains the starting disk with at least one spare cell on
    every side and the cell centers sit on half-integer multiples of the
    cell size.

    mode "inner" tests cell centers exactly (every marked center is a
    true preimage point); mode "outer" marks every cell that cannot be
    certified to lie outside, giving a true superset of the preimage.
    The outer dilation grows rapidly with depth, so outer masks are only
    tight for small depths; they stay correct as supersets regardless.
    """
    if mode not in ("inner", "outer"):
        raise ValueError(f"mode must be 'inner' or 'outer', got {mode!r}")
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if not (math.isfinite(cell) and cell > 0.0):
        raise ValueError(f"cell must be finite and > 0, got {cell!r}")
    cap = DEFAULT_MAX_CELLS if max_cells is None else max_cells
    nhalf = math.ceil((param.abs_c + cell) / cell)
    width = 2 * nhalf
    if width * width > cap:
        raise ValueError(
            f"raster needs {width * width} cells which exceeds the cap {cap}; "
            "use a coarser cell or raise the cap"
        )
    coords = (np.arange(width, dtype=np.float64) - nhalf + 0.5) * cell
    origin = complex(-nhalf * cell, -nhalf * cell)
    half_diag = cell * math.sqrt(2.0) / 2.0

    def run_rows(y_lo: int, y_hi: int) -> np.ndarray:
        z0 = coords[None, :] + 1j * coords[y_lo:y_hi, None]
        if mode == "inner":
            return preimage_member(z0, param, depth)
        return _outer_block(z0, param, depth, half_diag)

    block = 64
    spans = [(lo, min(lo + block, width)) for lo in range(0, width, block)]
    if workers <= 1:
        parts = [run_rows(lo, hi) for lo, hi in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda s: run_rows(*s), spans))
    bits = np.vstack(parts)
    return GridMask(origin=origin, cell=cell, bits=bits, mode=mode)


def disk_mask(disk: Disk, cell: float, align: str = "half") -> GridMask:
    """Plain center-membership raster of one disk.

    align "half" puts cell centers on half-integer multiples of the cell
    size (the preimage raster convention); align "integer" puts them on
    integer multiples (the lattice difference masks land on).
    """
    if not (math.isfinite(cell) and cell > 0.0):
        raise ValueError(f"cell must be finite and > 0, got {cell!r}")
    if align not in ("half", "integer"):
        raise ValueError(f"align must be 'half' or 'integer', got {align!r}")
    shift = 0.0 if align == "half" else 0.5
    kx_lo = math.floor((disk.center.real - disk.radius) / cell) - 1
    kx_hi = math.ceil((disk.center.real + disk.radius) / cell) + 1
    ky_lo = math.floor((disk.center.imag - disk.radius) / cell) - 1
    ky_hi = math.ceil((disk.center.imag + disk.radius) / cell) + 1
    xs = (np.arange(kx_lo, kx_hi + 1, dtype=np.float64) + 0.5 - shift) * cell
    ys = (np.arange(ky_lo, ky_hi + 1, dtype=np.float64) + 0.5 - shift) * cell
    bits = (xs[None, :] - disk.center.real) ** 2 + (
        ys[:, None] - disk.center.imag
    ) ** 2 <= disk.radius * disk.radius
    origin = complex((kx_lo - shift) * cell, (ky_lo - shift) * cell)
    return GridMask(origin=origin, cell=cell, bits=bits, mode="disk")


def mask_difference(a: GridMask, b: GridMask, method: str = "auto") -> GridMask:
    """Discrete difference-set support: all center differences a - b.

    The result marks cell (iy, ix) iff some set cell of `a` minus some set
    cell of `b` has center difference equal to that cell's center; its
    window is the full (height_a + height_b - 1) x (width_a + width_b - 1)
    difference lattice.  "direct" shifts and ORs (reference semantics),
    "fft" cross-correlates via scipy.signal.fftconvolve and thresholds at
    0.5 (counts are integers, so the float noise is harmless); both
    methods return identical bits.  "auto" picks by work estimate.
    """
    if a.cell != b.cell:
        raise ValueError(
            f"cell sizes must match exactly, got {a.cell!r} and {b.cell!r}"
        )
    if method not in ("auto", "direct", "fft"):
        raise ValueError(f"method must be 'auto', 'direct' or 'fft', got {method!r}")
    ha, wa = a.bits.shape
    hb, wb = b.bits.shape
    if method == "auto":
        work = int(np.count_nonzero(b.bits)) * a.bits.size
        method = "direct" if work <= (1 << 24) else "fft"
    if method == "direct":
        out = np.zeros((ha + hb - 1, wa + wb - 1), dtype=bool)
        iys, ixs = np.nonzero(b.bits)
        for iy, ix in zip(iys.tolist(), ixs.tolist()):
            oy = hb - 1 - iy
            ox = wb - 1 - ix
            out[oy : oy + ha, ox : ox + wa] |= a.bits
    else:
        conv = fftconvolve(
            a.bits.astype(np.float64), b.bits[::-1, ::-1].astype(np.float64)
        )
        out = conv >= 0.5
    origin = complex(
        a.origin.real - b.origin.real - (wb - 0.5) * a.cell,
        a.origin.imag - b.origin.imag - (hb - 0.5) * a.cell,
    )
    return GridMask(origin=origin, cell=a.cell, bits=out, mode="difference")


def mask_area(mask: GridMask) -> float:
    """Marked area: set-cell count times cell^2."""
    return int(np.count_nonzero(mask.bits)) * mask.cell * mask.cell


def _lcg_coeffs() -> tuple[np.ndarray, np.ndarray]:
    """Stride coefficients: s_{i+k} = A[k-1]*s_i + B[k-1] mod 2^64."""
    a_pow = np.empty(_CHUNK, dtype=np.uint64)
    b_acc = np.empty(_CHUNK, dtype=np.uint64)
    a, b = _LCG_A, _LCG_C
    for k in range(_CHUNK):
        a_pow[k] = a
        b_acc[k] = b
        a = (a * _LCG_A) & _LCG_MASK
        b = (b * _LCG_A + _LCG_C) & _LCG_MASK
    return a_pow, b_acc


_COEFFS: tuple[np.ndarray, np.ndarray] | None = None


def lcg_uniforms(seed: int, count: int) -> np.ndarray:
    """count doubles in [0, 1) from the 64-bit LCG stream.

    The i-th output (i >= 1) is (s_i >> 11) / 2^53 where s_i is the i-th
    state after seeding with s_0 = seed.  Vectorized with precomputed
    stride coefficients; identical to stepping the scalar recurrence.
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    global _COEFFS
    if _COEFFS is None:
        _COEFFS = _lcg_coeffs()
    a_pow, b_acc = _COEFFS
    states = np.empty(count, dtype=np.uint64)
    s = np.uint64(seed & _LCG_MASK)
    filled = 0
    while filled < count:
        take = min(_CHUNK, count - filled)
        with np.errstate(over="ignore"):
            states[filled : filled + take] = a_pow[:take] * s + b_acc[:take]
        s = states[filled + take - 1]
        filled += take
    return (states >> np.uint64(11)).astype(np.float64) * 2.0**-53


def _disk_points(unit: np.ndarray, disk: Disk) -> np.ndarray:
    return disk.center + disk.radius * unit


def sample_diff_check(d2: Disk, d1: Disk, count: int, seed: int) -> float:
    """Monte Carlo falsification check for the disk difference set.

    Draws count pairs (x in d2, y in d1) by rejection from the bounding
    square of the unit disk (accepted candidates alternate between the
    two disks in stream order), verifies every difference x - y lies in
    disk_difference(d2, d1), and returns the largest |x - y - center|
    observed (it approaches the radius from below as count grows).  A
    containment violation raises RuntimeError: it would falsify the
    difference-disk identity itself.
    """
    if count < 1000:
        raise ValueError(f"need count >= 1000, got {count}")
    need = 2 * count
    kept: list[np.ndarray] = []
    have = 0
    offset = 0
    while have < need:
        short = need - have
        draw = 2 * max(short + (short >> 2) + 64, 1 << 12)
        u = lcg_uniforms(seed, offset + draw)[offset:]
        offset += draw
        cand = (2.0 * u[0::2] - 1.0) + 1j * (2.0 * u[1::2] - 1.0)
        acc = cand[cand.real**2 + cand.imag**2 <= 1.0]
        kept.append(acc)
        have += acc.size
    unit = np.concatenate(kept)[:need]
    x = _disk_points(unit[0::2], d2)
    y = _disk_points(unit[1::2], d1)
    pred = disk_difference(d2, d1)
    dev = np.abs((x - y) - pred.center)
    tol = 1e-12 * (pred.radius + 1.0)
    worst = float(dev.max())
    if worst > pred.radius + tol:
        raise RuntimeError(
            "difference-disk containment violated: sampled deviation "
            f"{worst:.17g} exceeds radius {pred.radius:.17g}"
        )
    return worst
