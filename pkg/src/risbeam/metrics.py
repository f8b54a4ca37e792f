"""Quantitative gain-pattern analysis: coverage statistics, cuts, comparisons.

Reports are computed from a uniformly sampled gain surface over the full
(xi, zeta) period, so re-analyzing a pattern written to disk reproduces
them.  Pattern sources can be a unit-norm beamformer, a raw complex
weight grid, or a reflecting-surface config (whose effective weights are
normalized first, making levels comparable to the ideal target).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .arrays import Beamformer, PatternGrid, full_period_rect, sample_gains
from .geometry import ArrayGeometry, CoverSet, EmptyCoverError, PsiGrid
from . import ris

DB_FLOOR = -120.0
_FLOOR_LIN = 10.0 ** (DB_FLOOR / 10.0)


def to_db(value: float) -> float:
    """Linear power to dB with a -120 dB floor for vanishing gain."""
    return 10.0 * math.log10(max(value, _FLOOR_LIN))


def _weights_grid(source) -> np.ndarray:
    if isinstance(source, Beamformer):
        return source.as_grid()
    if isinstance(source, ris.RisConfig):
        w = ris.effective_weight_vector(source)
        return (w / np.linalg.norm(w)).reshape(source.geom.m_v, source.geom.m_h)
    arr = np.asarray(source, dtype=complex)
    if arr.ndim != 2:
        raise TypeError("pattern source must be a Beamformer, RisConfig, or "
                        "2D weight array")
    return arr


@dataclass(frozen=True)
class PatternReport:
    """dB statistics of a pattern over a cover region.

    mean_in_db is 10*log10 of the average linear gain (a power mean), so
    it tracks the in-cover energy; min/median/max commute with the dB map.
    """

    mean_in_db: float
    median_in_db: float
    min_in_db: float
    max_in_db: float
    ripple_db: float
    leakage_fraction: float
    ideal_level_db: float
    cover: CoverSet


@dataclass(frozen=True)
class CutProfile:
    """1D pattern cross-section with measured per-lobe widths."""

    axis: str
    fixed_value: float
    angles: np.ndarray
    gains_db: np.ndarray
    widths: dict


def _axis_masks(samples: np.ndarray, lo: float, hi: float) -> np.ndarray:
    return (samples >= lo) & (samples < hi)


def _cover_masks(grid_pattern: PatternGrid, cover: CoverSet, grid: PsiGrid,
                 interior_shrink: float):
    xi = grid_pattern.xi_samples
    zeta = grid_pattern.zeta_samples
    in_mask = np.zeros((xi.size, zeta.size), dtype=bool)
    interior = np.zeros_like(in_mask)
    for p, q in cover.sorted():
        cell = grid.cell(p, q)
        in_mask |= np.outer(_axis_masks(xi, cell.xi_min, cell.xi_max),
                            _axis_masks(zeta, cell.zeta_min, cell.zeta_max))
        dx = interior_shrink * (cell.xi_max - cell.xi_min)
        dz = interior_shrink * (cell.zeta_max - cell.zeta_min)
        interior |= np.outer(_axis_masks(xi, cell.xi_min + dx, cell.xi_max - dx),
                             _axis_masks(zeta, cell.zeta_min + dz, cell.zeta_max - dz))
    return in_mask, interior


def report_from_pattern(grid_pattern: PatternGrid, cover: CoverSet, grid: PsiGrid,
                        interior_shrink: float = 0.1,
                        ideal_level_db: float | None = None) -> PatternReport:
    """Coverage statistics of an already-sampled pattern.

    Leakage is the fraction of the sampled power falling outside the
    cover's subregions; ripple is measured only on subregions shrunk by
    ``interior_shrink`` per axis on each side, excluding edge roll-off.
    """
    if cover.size == 0:
        raise EmptyCoverError("cover set is empty")
    if not 0.0 <= interior_shrink < 0.5:
        raise ValueError("interior_shrink must lie in [0, 0.5)")
    in_mask, interior = _cover_masks(grid_pattern, cover, grid, interior_shrink)
    gains = grid_pattern.gains
    in_gain = gains[in_mask]
    if in_gain.size == 0:
        raise ValueError("sampling too coarse: no samples fall inside the cover")
    interior_gain = gains[interior] if np.any(interior) else in_gain
    total = float(gains.sum())
    leakage = 1.0 - float(in_gain.sum()) / total if total > 0 else 1.0
    if ideal_level_db is None:
        t = (2.0 * math.pi) ** 2 / (cover.size * grid.delta_v * grid.delta_h)
        ideal_level_db = to_db(t)
    return PatternReport(
        mean_in_db=to_db(float(in_gain.mean())),
        median_in_db=to_db(float(np.median(in_gain))),
        min_in_db=to_db(float(in_gain.min())),
        max_in_db=to_db(float(in_gain.max())),
        ripple_db=to_db(float(interior_gain.max())) - to_db(float(interior_gain.min())),
        leakage_fraction=leakage,
        ideal_level_db=ideal_level_db,
        cover=cover)


def report(source, cover: CoverSet, grid: PsiGrid, resolution: int = 512,
           interior_shrink: float = 0.1) -> PatternReport:
    """Sample the source's gain over the full period and analyze the cover."""
    if resolution < 32:
        raise ValueError("resolution must be >= 32")
    weights = _weights_grid(source)
    grid_pattern = sample_pattern(weights, resolution)
    return report_from_pattern(grid_pattern, cover, grid, interior_shrink)


def sample_pattern(source, resolution: int,
                   resolution_h: int | None = None) -> PatternGrid:
    """Inclusive uniform sampling of the source's gain over the full period."""
    weights = _weights_grid(source)
    rect = full_period_rect()
    xi = np.linspace(rect.xi_min, rect.xi_max, resolution)
    zeta = np.linspace(rect.zeta_min, rect.zeta_max, resolution_h or resolution)
    return PatternGrid(xi_samples=xi, zeta_samples=zeta,
                       gains=sample_gains(weights, xi, zeta))


def gains_along(weights_grid: np.ndarray, xi: np.ndarray,
                zeta: np.ndarray) -> np.ndarray:
    """Gain along a parametric (xi(s), zeta(s)) curve rather than a product grid."""
    m_v, m_h = weights_grid.shape
    e_v = np.exp(-1j * np.outer(xi, np.arange(m_v)))
    e_h = np.exp(-1j * np.outer(zeta, np.arange(m_h)))
    field = np.einsum("sv,vh,sh->s", e_v, weights_grid, e_h)
    return np.abs(field) ** 2


def _crossing(angles, gains_db, i_from, i_to, level_db):
    """Linear interpolation of the angle where the profile falls to level_db."""
    g0, g1 = gains_db[i_from], gains_db[i_to]
    if g0 == g1:
        return angles[i_to]
    frac = (g0 - level_db) / (g0 - g1)
    return angles[i_from] + frac * (angles[i_to] - angles[i_from])


def _lobe_widths(angles, gains_db, peak_idx, level_db):
    n = gains_db.size
    target = gains_db[peak_idx] - level_db
    right = None
    for i in range(peak_idx + 1, n):
        if gains_db[i] < target:
            right = _crossing(angles, gains_db, i - 1, i, target)
            break
    left = None
    for i in range(peak_idx - 1, -1, -1):
        if gains_db[i] < target:
            left = _crossing(angles, gains_db, i + 1, i, target)
            break
    if left is None or right is None:
        return None
    return right - left


def cut(source, grid: PsiGrid, geom: ArrayGeometry, axis: str, fixed_value: float,
        resolution: int = 512, levels: tuple = (3.0, 10.0)) -> CutProfile:
    """1D cross-section at fixed elevation (``fixed_phi``) or azimuth (``fixed_theta``).

    The swept angle runs over the whole visible half-space; lobe
    crossings are the contiguous runs within 3 dB of the cut maximum, and
    each crossing's width at ``peak - level`` is measured outward from its
    peak with linear interpolation.
    """
    if resolution < 64:
        raise ValueError("resolution must be >= 64")
    if axis not in ("fixed_phi", "fixed_theta"):
        raise ValueError(f"unknown cut axis {axis!r}")
    weights = _weights_grid(source)
    kappa_z = 2.0 * math.pi * geom.d_z_over_lambda
    kappa_x = 2.0 * math.pi * geom.d_x_over_lambda
    phi_bound = math.asin(min(1.0, grid.xi_bound / kappa_z))
    theta_bound = math.asin(min(1.0, grid.zeta_bound / kappa_x))
    # Skirts of lobes sitting at the coverage edge must stay measurable,
    # so the sweep is not limited to the coverage interval.
    angles = np.linspace(-math.pi / 2, math.pi / 2, resolution)
    if axis == "fixed_phi":
        if not -phi_bound <= fixed_value <= phi_bound:
            raise ValueError(f"fixed elevation {fixed_value:.6g} outside coverage")
        xi = np.full(resolution, kappa_z * math.sin(fixed_value))
        zeta = kappa_x * np.sin(angles) * math.cos(fixed_value)
    else:
        if not -theta_bound <= fixed_value <= theta_bound:
            raise ValueError(f"fixed azimuth {fixed_value:.6g} outside coverage")
        xi = kappa_z * np.sin(angles)
        zeta = kappa_x * math.sin(fixed_value) * np.cos(angles)
    gains_db = 10.0 * np.log10(np.maximum(gains_along(weights, xi, zeta),
                                          _FLOOR_LIN))

    widths = {level: [] for level in levels}
    run_floor = gains_db.max() - 3.0
    above = gains_db >= run_floor
    if not above.all():
        edges = np.flatnonzero(np.diff(above.astype(int)))
        starts = [0] if above[0] else []
        starts += [int(e) + 1 for e in edges if above[e + 1]]
        ends = [int(e) for e in edges if above[e]]
        if above[-1]:
            ends.append(above.size - 1)
        for start, end in zip(starts, ends):
            peak_idx = start + int(np.argmax(gains_db[start:end + 1]))
            for level in levels:
                w = _lobe_widths(angles, gains_db, peak_idx, level)
                if w is not None:
                    widths[level].append(w)
    return CutProfile(axis=axis, fixed_value=fixed_value, angles=angles,
                      gains_db=gains_db,
                      widths={k: tuple(v) for k, v in widths.items()})


def compare(report_a: PatternReport, report_b: PatternReport) -> float:
    """Mean-gain advantage of a over b in dB; both must cover the same region."""
    if report_a.cover.indices != report_b.cover.indices:
        raise ValueError("reports cover different regions")
    return report_a.mean_in_db - report_b.mean_in_db


def bounding_rectangle_cover(cover: CoverSet, grid: PsiGrid) -> CoverSet:
    """Smallest full rectangle of subregions containing ``cover``.

    This is the single-lobe baseline region: one axis-aligned block able
    to cover everything the multi-lobe cover does.
    """
    ps = [p for p, _ in cover.indices]
    qs = [q for _, q in cover.indices]
    cells = frozenset((p, q)
                      for p in range(min(ps), max(ps) + 1)
                      for q in range(min(qs), max(qs) + 1))
    return CoverSet(indices=cells, per_lobe=(cells,))


def connected_components_above(grid_pattern: PatternGrid,
                               threshold_linear: float) -> int:
    """4-connected component count of the super-threshold sample set."""
    mask = grid_pattern.gains > threshold_linear
    visited = np.zeros_like(mask)
    count = 0
    rows, cols = mask.shape
    for r0, c0 in zip(*np.nonzero(mask)):
        if visited[r0, c0]:
            continue
        count += 1
        queue = deque([(int(r0), int(c0))])
        visited[r0, c0] = True
        while queue:
            r, c = queue.popleft()
            for rr, cc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                if 0 <= rr < rows and 0 <= cc < cols and mask[rr, cc] \
                        and not visited[rr, cc]:
                    visited[rr, cc] = True
                    queue.append((rr, cc))
    return count
