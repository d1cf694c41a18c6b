"""Directed discrepancy, confidence radii, and the brute-force cap oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Cap, cap_area_fraction
from .pointsets import PointSet


class HypothesisViolation(Exception):
    """A direction whose directed discrepancy is >= d - 1/t.

    Raised when the confidence-radius hypothesis fails; carries the witness
    direction and its directed value so a covering run can report it.
    """

    def __init__(self, direction: np.ndarray, directed_value: float, d: float):
        self.direction = direction
        self.directed_value = directed_value
        self.d = d
        super().__init__(
            f"directed discrepancy {directed_value:.6g} too close to the bound {d:.6g}"
        )


class SizeLimitExceeded(Exception):
    pass


@dataclass
class ProjectionProfile:
    direction: np.ndarray
    values: np.ndarray  # sorted ascending, length t

    @property
    def size(self) -> int:
        return len(self.values)


@dataclass
class DirectedResult:
    direction: np.ndarray
    value: float
    witness_height: float
    witness_inclusive: bool


@dataclass
class ConfidenceBall:
    center: np.ndarray
    radius: float
    d: float
    k: int
    directed_value: float


def project(ps: PointSet, v: np.ndarray) -> ProjectionProfile:
    """Sorted projections <p, v> of every point onto the direction v."""
    vals = np.sort(ps.points @ np.asarray(v, dtype=float))
    return ProjectionProfile(np.asarray(v, dtype=float), vals)


def _sweep(values: np.ndarray):
    """Candidate discrepancies at each projection value, both cap conventions.

    For sorted s and index i, the boundary-inclusive cap at h = s_i holds
    t - i points and the exclusive one t - i - 1.  The area term is monotone
    between projection values, so the supremum over all heights is attained
    among these candidates.  Tied values contribute intermediate counts that
    never exceed the two legitimate extremes, so no tie handling is needed
    for the maximum.
    """
    t = len(values)
    area = (1.0 - values) / 2.0
    counts = (t - np.arange(t)) / t
    incl = np.abs(counts - area)
    excl = np.abs(counts - 1.0 / t - area)
    return incl, excl


def directed_discrepancy(profile: ProjectionProfile) -> DirectedResult:
    """Supremum over cap heights of |count/t - area| along one direction."""
    s = profile.values
    t = len(s)
    incl, excl = _sweep(s)
    i_inc = int(np.argmax(incl))
    i_exc = int(np.argmax(excl))
    if incl[i_inc] >= excl[i_exc]:
        value, h, inclusive = float(incl[i_inc]), float(s[i_inc]), True
    else:
        value, h, inclusive = float(excl[i_exc]), float(s[i_exc]), False
    # Re-anchor the witness to a legitimate tie-aware count at h.
    n_incl = int(np.sum(s >= h))
    n_excl = int(np.sum(s > h))
    area = cap_area_fraction(h)
    vi = abs(n_incl / t - area)
    ve = abs(n_excl / t - area)
    if vi >= ve:
        value, inclusive = vi, True
    else:
        value, inclusive = ve, False
    return DirectedResult(profile.direction, value, h, inclusive)


def directed_values(points: np.ndarray, directions: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """Vectorized directed-discrepancy values for many directions."""
    points = np.asarray(points, dtype=float)
    directions = np.asarray(directions, dtype=float)
    t = points.shape[0]
    counts = ((t - np.arange(t)) / t)[:, None]
    out = np.empty(directions.shape[0])
    for lo in range(0, directions.shape[0], chunk):
        block = directions[lo : lo + chunk]
        s = np.sort(points @ block.T, axis=0)
        area = (1.0 - s) / 2.0
        dev = np.maximum(np.abs(counts - area), np.abs(counts - 1.0 / t - area))
        out[lo : lo + block.shape[0]] = dev.max(axis=0)
    return out


def slab_min_width(profile: ProjectionProfile, k: int) -> float:
    """min over i of s_{i+k} - s_i; 2 when no slab can hold k+1 projections."""
    s = profile.values
    t = len(s)
    if k > t - 1:
        return 2.0
    return float(np.min(s[k:] - s[: t - k]))


def confidence_radius(profile: ProjectionProfile, d: float) -> ConfidenceBall:
    """Radius around the profile's direction inside which Dis <= d.

    Requires the hypothesis Dis_v + 1/t <= d; otherwise raises
    HypothesisViolation carrying the witness direction.
    """
    t = profile.size
    res = directed_discrepancy(profile)
    if res.value + 1.0 / t > d + 1e-15:
        raise HypothesisViolation(profile.direction, res.value, d)
    k = int(math.floor(t * (d - res.value))) + 1
    return ConfidenceBall(profile.direction, slab_min_width(profile, k), d, k, res.value)


def _candidate_axes(points: np.ndarray) -> np.ndarray:
    """Axes of potentially extremal caps: points, pair bisectors, triple planes."""
    t = len(points)
    axes = [points]
    # pairs: axis through the midpoint, the minimal cap pinned by both points
    iu, ju = np.triu_indices(t, k=1)
    mids = points[iu] + points[ju]
    norms = np.linalg.norm(mids, axis=1)
    keep = norms > 1e-12
    axes.append(mids[keep] / norms[keep, None])
    # triples: normal of the plane through the three points
    tri = []
    for i in range(t - 2):
        for j in range(i + 1, t - 1):
            e1 = points[j] - points[i]
            cr = np.cross(e1, points[j + 1 :] - points[i])
            nn = np.linalg.norm(cr, axis=1)
            ok = nn > 1e-12
            if ok.any():
                tri.append(cr[ok] / nn[ok, None])
    if tri:
        axes.append(np.vstack(tri))
    return np.vstack(axes)


def naive_discrepancy(ps: PointSet, limit: int = 400) -> tuple[float, Cap]:
    """Exact cap discrepancy by enumerating extremal-cap axes. O(t^4) cost.

    Every locally extremal cap has its boundary pinned by up to three points;
    sweeping all heights along each candidate axis therefore dominates the
    supremum and attains it.
    """
    t = ps.size
    if t > limit:
        raise SizeLimitExceeded(f"t={t} exceeds the naive-oracle limit {limit}")
    axes = _candidate_axes(ps.points)
    vals = directed_values(ps.points, axes)
    best = int(np.argmax(vals))
    res = directed_discrepancy(project(ps, axes[best]))
    return res.value, Cap(axes[best], res.witness_height)
