"""Core regions of bounded sequences as planar convex sets.

A bounded complex sequence has a limiting region (the intersection of the
closed convex hulls of its tails); for a band system the analogous region of
the transformed sequence tau_n = (r_n x_n + s_{n-1} x_{n-1}) / alpha_n is the
"alpha" variant.  Two finite-window estimators are provided:

* cluster_hull: the convex hull of the window values, sampled into a support
  function over D directions;
* disc_core: the intersection of discs centered at probe points z with radius
  limsup |x_k - z| (plain window max, or its statistical variant that ignores
  index sets of small empirical density).

The disc intersection is evaluated through its support envelope
h(u) = min_z (z . u + radius(z)) over a finite z set, then canonicalized by
clipping halfplanes into a polygon and re-sampling the support from its
vertices, so stored support values and vertices are always consistent.  A
finite z set yields a superset of the true intersection; probe points are
therefore placed on a central grid plus far samples along each sampled
direction, which pinches the envelope to within O(scale / t_far) of the
exact region and keeps the two estimators comparable at tight tolerances.

Regions are compared through sampled support functions: inclusion is a
directionwise support inequality and the Hausdorff distance of two convex
regions is the sup-norm gap of their supports.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .band_ops import forward_transform
from .generators import materialize_matrix
from .types import BandSystem, FiniteSeq

__all__ = [
    "RegionEstimate",
    "DensityEstimate",
    "direction_angles",
    "cluster_hull",
    "disc_core",
    "st_core",
    "alpha_core",
    "st_limsup",
    "natural_density",
    "a_density",
    "region_included",
    "hausdorff_distance",
    "sign_witness",
    "default_z_points",
]

_BOUNDED_WARN = 1e6
_DEFAULT_DIRECTIONS = 64
_FAR_MULTIPLES = (2.0, 4.0, 8.0, 16.0, 64.0, 256.0)


def direction_angles(n_directions: int) -> np.ndarray:
    if n_directions < 4:
        raise ValueError("need at least 4 directions")
    return 2.0 * np.pi * np.arange(n_directions) / n_directions


def _unit(angles: np.ndarray) -> np.ndarray:
    return np.stack([np.cos(angles), np.sin(angles)], axis=1)


def _check_window(n: int, window, min_start: int = 0) -> tuple[int, int]:
    start, stop = int(window[0]), int(window[1])
    if not (min_start <= start < stop <= n):
        raise ValueError(f"window [{start}, {stop}) invalid for length {n} (start >= {min_start})")
    return start, stop


def _window_values(points, window, min_start=0) -> tuple[np.ndarray, tuple[int, int]]:
    seq = FiniteSeq.coerce(points)
    start, stop = _check_window(seq.n, window, min_start)
    vals = seq.values[start:stop]
    if np.max(np.abs(vals)) > _BOUNDED_WARN:
        warnings.warn("window values are very large; core estimates assume bounded input", stacklevel=3)
    return vals, (start, stop)


# ---------------------------------------------------------------------------
# convex machinery
# ---------------------------------------------------------------------------


def _convex_hull(xy: np.ndarray) -> np.ndarray:
    """Andrew's monotone chain; returns CCW vertices, degenerate cases exact."""
    pts = np.unique(xy, axis=0)  # lexicographic sort + dedupe
    if pts.shape[0] <= 2:
        return pts

    def half(points):
        chain: list[np.ndarray] = []
        for p in points:
            while len(chain) >= 2:
                o, a = chain[-2], chain[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= 0.0:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(pts[::-1])
    hull = np.array(lower[:-1] + upper[:-1])
    if hull.shape[0] < 3:  # collinear input collapses to a segment
        return np.array([pts[0], pts[-1]])
    return hull


def _clip_halfplanes(angles: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Intersect {x . u_d <= h_d} by successive polygon clipping."""
    radius = float(np.max(np.abs(h))) * 2.0 + 1.0
    poly = [
        np.array([-radius, -radius]),
        np.array([radius, -radius]),
        np.array([radius, radius]),
        np.array([-radius, radius]),
    ]
    units = _unit(angles)
    slack = 1e-12 * max(1.0, radius)
    for u, bound in zip(units, h):
        if not poly:
            break
        clipped = []
        dist = [float(p @ u) - float(bound) for p in poly]
        for i, p in enumerate(poly):
            j = (i + 1) % len(poly)
            q = poly[j]
            din, dout = dist[i], dist[j]
            if din <= slack:
                clipped.append(p)
            if (din <= slack) != (dout <= slack) and abs(dout - din) > 0.0:
                t = (0.0 - din) / (dout - din)
                clipped.append(p + t * (q - p))
        poly = clipped
    if not poly:
        return np.zeros((0, 2))
    out = np.array(poly)
    # dedupe nearly coincident vertices, keep order
    keep = [0]
    tol = 1e-9 * max(1.0, radius)
    for i in range(1, out.shape[0]):
        if np.max(np.abs(out[i] - out[keep[-1]])) > tol:
            keep.append(i)
    if len(keep) > 1 and np.max(np.abs(out[keep[0]] - out[keep[-1]])) <= tol:
        keep.pop()
    return out[keep]


@dataclass(frozen=True)
class RegionEstimate:
    """A convex planar region: CCW vertices plus support samples.

    Support values are always re-sampled from the vertices, so
    max_v <v, u_d> equals support[d] by construction; degenerate regions keep
    their exact one- or two-vertex form.
    """

    angles: np.ndarray
    support: np.ndarray
    vertices: np.ndarray
    method: str
    window: tuple[int, int]

    def __post_init__(self):
        ang = np.asarray(self.angles, dtype=np.float64)
        verts = np.asarray(self.vertices, dtype=np.float64)
        if verts.ndim != 2 or verts.shape[1] != 2 or verts.shape[0] < 1:
            raise ValueError("vertices must be a nonempty (m, 2) array")
        sup = verts @ _unit(ang).T
        object.__setattr__(self, "angles", ang)
        object.__setattr__(self, "support", sup.max(axis=0))
        object.__setattr__(self, "vertices", verts)

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def kind(self) -> str:
        return {1: "point", 2: "segment"}.get(self.n_vertices, "polygon")

    def diameter(self) -> float:
        d = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.sqrt((d**2).sum(axis=2)).max())

    def contains_point(self, xy, tol: float = 1e-9) -> bool:
        xy = np.asarray(xy, dtype=np.float64)
        return bool(np.all(_unit(self.angles) @ xy <= self.support + tol))

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "window": [int(self.window[0]), int(self.window[1])],
            "kind": self.kind,
            "angles": [float(a) for a in self.angles],
            "support": [float(v) for v in self.support],
            "vertices": [[float(x), float(y)] for x, y in self.vertices],
        }


def _region_from_points(xy, angles, method, window) -> RegionEstimate:
    hull = _convex_hull(np.asarray(xy, dtype=np.float64))
    return RegionEstimate(angles, np.zeros(angles.size), hull, method, window)


def _region_from_support(h, angles, method, window) -> RegionEstimate:
    poly = _clip_halfplanes(angles, np.asarray(h, dtype=np.float64))
    if poly.shape[0] == 0:
        raise ValueError("support samples describe an empty region")
    hull = _convex_hull(poly)
    return RegionEstimate(angles, np.zeros(angles.size), hull, method, window)


# ---------------------------------------------------------------------------
# densities and statistical limsup
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityEstimate:
    """Ladder of density values with the final value as the limit estimate."""

    values: tuple
    estimate: float

    def to_json(self) -> dict:
        return {
            "values": [{"n": int(n), "density": float(v)} for n, v in self.values],
            "estimate": float(self.estimate),
        }


def _indicator(E, n: int) -> np.ndarray:
    if callable(E):
        return np.fromiter((bool(E(k)) for k in range(n)), dtype=bool, count=n)
    arr = np.asarray(E)
    if arr.dtype == bool:
        if arr.size < n:
            raise ValueError("indicator array shorter than requested range")
        return arr[:n]
    mask = np.zeros(n, dtype=bool)
    idx = arr.astype(np.int64)
    mask[idx[(idx >= 0) & (idx < n)]] = True
    return mask


def natural_density(E, ladder) -> DensityEstimate:
    """Counting densities |{0 <= k < n : k in E}| / n along a ladder."""
    ladder = [int(n) for n in ladder]
    if not ladder or any(b <= a for a, b in zip(ladder, ladder[1:])) or ladder[0] < 1:
        raise ValueError("ladder must be nonempty, positive, strictly increasing")
    mask = _indicator(E, ladder[-1])
    counts = np.cumsum(mask)
    vals = tuple((n, float(counts[n - 1] / n)) for n in ladder)
    return DensityEstimate(vals, vals[-1][1])


def a_density(A, E, ladder) -> DensityEstimate:
    """Matrix-weighted densities: row n-1 of A summed over the columns in E.

    Requires entrywise nonnegative A; with the Cesaro generator this matches
    the counting density at every ladder point exactly.
    """
    ladder = [int(n) for n in ladder]
    if not ladder or any(b <= a for a, b in zip(ladder, ladder[1:])) or ladder[0] < 1:
        raise ValueError("ladder must be nonempty, positive, strictly increasing")
    n_max = ladder[-1]
    dense = materialize_matrix(A, n_max)
    if np.iscomplexobj(dense) or np.any(dense < 0.0):
        raise ValueError("matrix densities need entrywise nonnegative A")
    mask = _indicator(E, n_max)
    vals = tuple((n, float(dense[n - 1, :n][mask[:n]].sum())) for n in ladder)
    return DensityEstimate(vals, vals[-1][1])


def st_limsup(v, window, density_tol: float = 0.02) -> float:
    """Smallest level whose exceedance set has empirical density below tol.

    Sorts the window values and walks the exact exceedance counts, so the
    returned level is always one of the observed values; exceedance is
    strict (v_k > L) and at the returned level its density is < tol.
    """
    if not 0.0 < density_tol <= 1.0:
        raise ValueError("density_tol must lie in (0, 1]")
    seq = FiniteSeq.coerce(v)
    start, stop = _check_window(seq.n, window)
    vals = np.sort(seq.values[start:stop].real)
    if not np.all(seq.values[start:stop].imag == 0.0):
        raise ValueError("st_limsup needs real values")
    w = vals.size
    count_gt = w - np.searchsorted(vals, vals, side="right")
    qualifying = count_gt < density_tol * w
    return float(vals[int(np.argmax(qualifying))])


def _st_radii(dist: np.ndarray, density_tol: float) -> np.ndarray:
    """Row-wise statistical limsup of a (n_z, window) distance matrix."""
    d = np.sort(dist, axis=1)
    w = d.shape[1]
    out = np.empty(d.shape[0])
    for i in range(d.shape[0]):
        row = d[i]
        count_gt = w - np.searchsorted(row, row, side="right")
        out[i] = row[int(np.argmax(count_gt < density_tol * w))]
    return out


# ---------------------------------------------------------------------------
# region constructors
# ---------------------------------------------------------------------------


def cluster_hull(points, window, n_directions: int = _DEFAULT_DIRECTIONS) -> RegionEstimate:
    """Convex hull of the window values: the tail-hull estimate of the core."""
    vals, win = _window_values(points, window)
    angles = direction_angles(n_directions)
    xy = np.stack([vals.real, vals.imag], axis=1)
    return _region_from_points(xy, angles, "cluster_hull", win)


def default_z_points(values: np.ndarray, angles: np.ndarray, grid_n: int = 21) -> np.ndarray:
    """Probe centers for disc intersections: central grid plus far directional samples.

    The central grid spans 1.5x the data spread around its centroid; the far
    samples sit on the rays opposite every sampled direction at multiples of
    the spread, which is what makes the disc envelope tight (the exact region
    is an intersection over all centers, approached as probes recede).
    """
    c = complex(np.mean(values))
    spread = float(np.max(np.abs(values - c)))
    scale = max(spread, 1e-9)
    g = np.linspace(-1.5, 1.5, grid_n) * scale
    grid = (c + g[:, None] + 1j * g[None, :]).ravel()
    units = np.exp(1j * angles)
    far = np.concatenate([c - t * scale * units for t in _FAR_MULTIPLES])
    return np.concatenate([grid, far])


def _disc_region(vals, win, z_points, angles, radii, method) -> RegionEstimate:
    zs = np.asarray(z_points, dtype=np.complex128)
    if zs.size == 0:
        raise ValueError("empty probe grid")
    zxy = np.stack([zs.real, zs.imag], axis=1)
    h = np.min(zxy @ _unit(angles).T + radii[:, None], axis=0)
    return _region_from_support(h, angles, method, win)


def disc_core(
    points,
    window,
    z_grid=None,
    n_directions: int = _DEFAULT_DIRECTIONS,
    grid_n: int = 21,
) -> RegionEstimate:
    """Intersection of discs with window-max radii |x_k - z| over probe centers z."""
    vals, win = _window_values(points, window)
    angles = direction_angles(n_directions)
    zs = default_z_points(vals, angles, grid_n) if z_grid is None else np.asarray(z_grid, dtype=np.complex128)
    radii = np.max(np.abs(vals[None, :] - zs[:, None]), axis=1)
    return _disc_region(vals, win, zs, angles, radii, "disc_intersection")


def st_core(
    points,
    window,
    density_tol: float = 0.02,
    z_grid=None,
    n_directions: int = _DEFAULT_DIRECTIONS,
    grid_n: int = 21,
) -> RegionEstimate:
    """Disc intersection with statistical-limsup radii of |x_k - z|."""
    if not 0.0 < density_tol <= 1.0:
        raise ValueError("density_tol must lie in (0, 1]")
    vals, win = _window_values(points, window)
    angles = direction_angles(n_directions)
    zs = default_z_points(vals, angles, grid_n) if z_grid is None else np.asarray(z_grid, dtype=np.complex128)
    radii = _st_radii(np.abs(vals[None, :] - zs[:, None]), density_tol)
    return _disc_region(vals, win, zs, angles, radii, "disc_intersection")


def alpha_core(x, sys: BandSystem, window, n_directions: int = _DEFAULT_DIRECTIONS) -> RegionEstimate:
    """Hull estimate of the core of the band-transformed sequence.

    The transformed index 0 is excluded from windows (the intersection of
    tail hulls starts at index 1), so the window must start at 1 or later.
    """
    x = FiniteSeq.coerce(x)
    _check_window(x.n, window, min_start=1)
    tau = forward_transform(x, sys)
    return cluster_hull(tau, window, n_directions)


# ---------------------------------------------------------------------------
# comparisons and witnesses
# ---------------------------------------------------------------------------


def _require_same_angles(r1: RegionEstimate, r2: RegionEstimate):
    if r1.angles.size != r2.angles.size or not np.allclose(r1.angles, r2.angles):
        raise ValueError("regions were sampled on different direction sets")


def region_included(inner: RegionEstimate, outer: RegionEstimate, tol: float = 0.0) -> tuple[bool, float]:
    """Directionwise support test: inner inside outer up to tol, plus the worst gap."""
    _require_same_angles(inner, outer)
    gaps = inner.support - outer.support
    max_violation = float(np.max(gaps))
    return bool(np.all(gaps <= tol)), max_violation


def hausdorff_distance(r1: RegionEstimate, r2: RegionEstimate) -> float:
    """Sampled Hausdorff distance of convex regions: sup-norm support gap."""
    _require_same_angles(r1, r2)
    return float(np.max(np.abs(r1.support - r2.support)))


def sign_witness(A, row_blocks) -> FiniteSeq:
    """Bounded multiplier aligning designated rows with their absolute sums.

    For each (row, (c0, c1)) block the witness carries the conjugate phases
    of that row's entries on [c0, c1) (zero where the entry is zero) and is
    zero outside all blocks, so sum_k A[row, k] y_k equals the block's
    absolute sum; with disjoint row supports this is the full row's absolute
    sum, exactly for real entries.
    """
    dense = np.asarray(A.entries) if hasattr(A, "entries") else np.asarray(A)
    if dense.ndim != 2:
        raise ValueError("witness needs a dense matrix")
    n_rows, n_cols = dense.shape
    y = np.zeros(n_cols, dtype=np.complex128)
    taken = np.zeros(n_cols, dtype=bool)
    for row, (c0, c1) in row_blocks:
        if not (0 <= row < n_rows and 0 <= c0 < c1 <= n_cols):
            raise ValueError("block out of range")
        if np.any(taken[c0:c1]):
            raise ValueError("column blocks must be disjoint")
        taken[c0:c1] = True
        seg = dense[row, c0:c1]
        mags = np.abs(seg)
        phases = np.zeros(c1 - c0, dtype=np.complex128)
        nz = mags > 0.0
        if np.isrealobj(dense):
            phases[nz] = np.sign(seg[nz])
        else:
            phases[nz] = np.conj(seg[nz]) / mags[nz]
        y[c0:c1] = phases
    return FiniteSeq(y)
