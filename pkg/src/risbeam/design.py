"""Least-squares synthesis of multi-lobe beamformers.

The target is a flat gain plateau of level t over the covered subregions
and zero elsewhere.  Factoring the plateau through equal-gain vectors
turns the fit into a linear least-squares problem in the feed vector;
its L -> infinity limit has a closed form built from per-axis sinc
factors, and any finite sampling rate L_v x L_h per subregion gives
either the scalar-inverse approximation of the normal equations or the
exact pseudo-inverse solution.

All synthesis paths return a unit-norm beamformer; absolute scale is
irrelevant to the gain shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arrays import Beamformer
from .geometry import ArrayGeometry, CoverSet, EmptyCoverError, PsiGrid
from . import metrics

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class IdealGain:
    """Flat target level t spread over the covered subregions."""

    level_t: float
    cover: CoverSet
    grid: PsiGrid

    @property
    def level_db(self) -> float:
        return 10.0 * math.log10(self.level_t)


@dataclass(frozen=True)
class EqualGainParams:
    """Phase-ramp parameters of the equal-gain factor, one pair for all subregions."""

    eta_v: float = 0.0
    eta_h: float = 0.0

    def __post_init__(self):
        for v in (self.eta_v, self.eta_h):
            if not math.isfinite(v) or not -TWO_PI < v < TWO_PI:
                raise ValueError(f"eta {v} outside (-2*pi, 2*pi)")


@dataclass(frozen=True)
class MethodInfo:
    name: str
    l_v: int | None = None
    l_h: int | None = None
    exact_ls: bool | None = None
    residual: float | None = None
    rank_deficient: bool = False


@dataclass(frozen=True)
class DesignResult:
    beamformer: Beamformer
    cover: CoverSet
    grid: PsiGrid
    ideal: IdealGain
    params: EqualGainParams
    method: MethodInfo


def ideal_gain_level(cover: CoverSet, grid: PsiGrid) -> IdealGain:
    """Target level t = (2*pi)^2 / (|A| * delta_v * delta_h).

    Spreading t over the cover area accounts for exactly the full-period
    gain integral of a unit-norm beamformer.
    """
    if cover.size == 0:
        raise EmptyCoverError("cover set is empty")
    t = TWO_PI ** 2 / (cover.size * grid.delta_v * grid.delta_h)
    return IdealGain(level_t=t, cover=cover, grid=grid)


def equal_gain_vector(params: EqualGainParams, l_v: int, l_h: int) -> np.ndarray:
    """Unit-modulus phase ramp, flat row-major over (l_v', l_h') sample indices."""
    if l_v < 1 or l_h < 1:
        raise ValueError("sample counts must be >= 1")
    g_v = np.exp(1j * params.eta_v * np.arange(l_v) / l_v)
    g_h = np.exp(1j * params.eta_h * np.arange(l_h) / l_h)
    return np.kron(g_v, g_h)


def approx_ls_scale(l_total: int, q_total: int, delta_v: float, delta_h: float,
                    cover_size: int) -> float:
    """Scalar replacing the normal-matrix inverse in the approximate solve."""
    return TWO_PI / (l_total * q_total *
                     math.sqrt(delta_v * delta_h * cover_size))


def closed_form_vector(cover: CoverSet, grid: PsiGrid, geom: ArrayGeometry,
                       params: EqualGainParams) -> np.ndarray:
    """Unnormalized closed-form beamformer entries (the L -> infinity limit).

    Entry (m_v, m_h) sums, over covered subregions, the lower-corner phase
    exp(j*(m_v*xi_edge + m_h*zeta_edge)) times per-axis factors
    exp(j*x_a/2)*sinc(x_a/(2*pi)) with x_a = delta_a*m_a + eta_a, scaled
    by 2*pi/Q.  sinc is the normalized one, sin(pi*u)/(pi*u).
    """
    if cover.size == 0:
        raise EmptyCoverError("cover set is empty")
    m_v_idx = np.arange(geom.m_v)
    m_h_idx = np.arange(geom.m_h)
    x_v = grid.delta_v * m_v_idx + params.eta_v
    x_h = grid.delta_h * m_h_idx + params.eta_h
    f_v = np.exp(1j * x_v / 2.0) * np.sinc(x_v / TWO_PI)
    f_h = np.exp(1j * x_h / 2.0) * np.sinc(x_h / TWO_PI)
    acc = np.zeros((geom.m_v, geom.m_h), dtype=complex)
    for p, q in cover.sorted():
        v = np.exp(1j * m_v_idx * grid.xi_edge(p - 1)) * f_v
        h = np.exp(1j * m_h_idx * grid.zeta_edge(q - 1)) * f_h
        acc += np.outer(v, h)
    return (TWO_PI / grid.q) * acc.ravel()


def design_closed_form(cover: CoverSet, grid: PsiGrid, geom: ArrayGeometry,
                       params: EqualGainParams = EqualGainParams()) -> DesignResult:
    """Closed-form multi-lobe design, normalized to a unit-norm beamformer."""
    vec = closed_form_vector(cover, grid, geom, params)
    return DesignResult(
        beamformer=Beamformer.normalized(vec, geom.m_v, geom.m_h),
        cover=cover, grid=grid, ideal=ideal_gain_level(cover, grid),
        params=params, method=MethodInfo(name="closed_form"))


def _cell_axis_vectors(cover, grid, geom, params, l_v, l_h):
    """Per-cell sampled-and-summed axis vectors a_v, a_h.

    a_v[m] = sum_l g_v[l] * exp(j*m*xi_{p,l}) with samples
    xi_{p,l} = xi_edge(p-1) + l*delta_v/L_v for l = 1..L_v; the inner sum
    over the in-cell offsets is shared by every cell.
    """
    off_v = grid.delta_v * np.arange(1, l_v + 1) / l_v
    off_h = grid.delta_h * np.arange(1, l_h + 1) / l_h
    g_v = np.exp(1j * params.eta_v * np.arange(l_v) / l_v)
    g_h = np.exp(1j * params.eta_h * np.arange(l_h) / l_h)
    m_v_idx = np.arange(geom.m_v)
    m_h_idx = np.arange(geom.m_h)
    s_v = np.exp(1j * np.outer(m_v_idx, off_v)) @ g_v
    s_h = np.exp(1j * np.outer(m_h_idx, off_h)) @ g_h
    cells = []
    for p, q in cover.sorted():
        a_v = np.exp(1j * m_v_idx * grid.xi_edge(p - 1)) * s_v
        a_h = np.exp(1j * m_h_idx * grid.zeta_edge(q - 1)) * s_h
        cells.append((a_v, a_h))
    return cells


def _axis_sample_points(bound: float, delta: float, q_count: int, l_count: int) -> np.ndarray:
    """All per-axis sample coordinates, cells concatenated in order."""
    edges = -bound + delta * np.arange(q_count)
    offsets = delta * np.arange(1, l_count + 1) / l_count
    return (edges[:, None] + offsets[None, :]).ravel()


def _axis_normal_matrix(samples: np.ndarray, m_count: int) -> np.ndarray:
    d = np.exp(1j * np.outer(np.arange(m_count), samples))
    return d @ d.conj().T


EIG_CUTOFF = 0.1


def _truncated_inverse(mat: np.ndarray, rel_cutoff: float = EIG_CUTOFF):
    """Eigenvalue-truncated inverse of a Hermitian PSD matrix.

    Returns the inverse restricted to eigendirections above
    ``rel_cutoff`` times the largest eigenvalue, plus a flag telling
    whether anything was discarded.
    """
    vals, vecs = np.linalg.eigh(mat)
    keep = vals > rel_cutoff * vals[-1]
    inv_vals = np.zeros_like(vals)
    inv_vals[keep] = 1.0 / vals[keep]
    return (vecs * inv_vals) @ vecs.conj().T, bool(np.any(~keep))


def design_finite_l(cover: CoverSet, grid: PsiGrid, geom: ArrayGeometry,
                    params: EqualGainParams = EqualGainParams(),
                    l_v: int = 16, l_h: int = 16,
                    exact_ls: bool = False) -> DesignResult:
    """Finite-sampling least-squares design at L_v x L_h samples per subregion.

    With ``exact_ls`` off, the normal matrix is replaced by the scalar
    delta_v*delta_h*L*Q (exact only when the sampled axis spans a full
    2*pi period), giving c = sigma * sum of sampled steering vectors
    weighted by the equal-gain entries.  With ``exact_ls`` on, the normal
    equations are solved by pseudo-inverse, which absorbs the off-diagonal
    mass that the scalar approximation ignores.

    The fit residual of the raw (pre-normalization) solution is recorded
    in the method metadata; near-singular normal equations set the
    rank_deficient flag.
    """
    if cover.size == 0:
        raise EmptyCoverError("cover set is empty")
    if l_v < 1 or l_h < 1:
        raise ValueError("sample counts must be >= 1")
    l_total = l_v * l_h
    area = grid.delta_v * grid.delta_h
    cells = _cell_axis_vectors(cover, grid, geom, params, l_v, l_h)

    # rhs = D @ b with b the stacked equal-gain targets, 2*pi/sqrt(|A|) per cell.
    rhs = np.zeros(geom.m, dtype=complex)
    for a_v, a_h in cells:
        rhs += np.kron(a_v, a_h)
    rhs *= math.sqrt(area) * TWO_PI / math.sqrt(cover.size)

    g_v_mat = _axis_normal_matrix(
        _axis_sample_points(grid.xi_bound, grid.delta_v, grid.q_v, l_v), geom.m_v)
    g_h_mat = _axis_normal_matrix(
        _axis_sample_points(grid.zeta_bound, grid.delta_h, grid.q_h, l_h), geom.m_h)

    rank_deficient = False
    if exact_ls:
        # The normal matrix factors as area * kron(Gv, Gh), so its
        # pseudo-inverse is the Kronecker product of the per-axis ones.
        # Axes sampled over a partial period are prolate-like with an
        # eigenvalue plunge toward zero; those directions buy vanishing
        # residual for an exploding feed norm and are truncated per axis.
        inv_v, def_v = _truncated_inverse(g_v_mat)
        inv_h, def_h = _truncated_inverse(g_h_mat)
        rank_deficient = def_v or def_h
        raw = (inv_v @ rhs.reshape(geom.m_v, geom.m_h) @ inv_h.T).ravel() / area
    else:
        sigma = approx_ls_scale(l_total, grid.q, grid.delta_v, grid.delta_h,
                                cover.size)
        raw = np.zeros(geom.m, dtype=complex)
        for a_v, a_h in cells:
            raw += np.kron(a_v, a_h)
        raw *= sigma

    residual = ls_residual(raw, rhs, g_v_mat, g_h_mat, area, l_total, cover.size)
    return DesignResult(
        beamformer=Beamformer.normalized(raw, geom.m_v, geom.m_h),
        cover=cover, grid=grid, ideal=ideal_gain_level(cover, grid),
        params=params,
        method=MethodInfo(name="finite_l", l_v=l_v, l_h=l_h, exact_ls=exact_ls,
                          residual=residual, rank_deficient=rank_deficient))


def ls_residual(raw: np.ndarray, rhs: np.ndarray, g_v_mat: np.ndarray,
                g_h_mat: np.ndarray, area: float, l_total: int,
                cover_size: int) -> float:
    """||b - D^H c||^2 without materializing the sample-domain vectors.

    Expands to ||b||^2 - 2 Re((D b)^H c) + c^H (D D^H) c, where
    ||b||^2 = (2*pi)^2 * L and D D^H factors per axis.
    """
    c_grid = raw.reshape(g_v_mat.shape[0], g_h_mat.shape[0])
    quad = area * np.vdot(raw, (g_v_mat @ c_grid @ g_h_mat.T).ravel())
    val = TWO_PI ** 2 * l_total - 2.0 * np.real(np.vdot(rhs, raw)) + np.real(quad)
    return float(max(val, 0.0))


def dd_h_deviation(grid: PsiGrid, geom: ArrayGeometry, l_v: int, l_h: int) -> float:
    """Relative Frobenius distance of D D^H from its claimed scalar form.

    Zero exactly when every sampled axis spans a full 2*pi period (the
    per-axis sample phases are then roots of unity and cross terms cancel);
    positive otherwise, quantifying the error the approximate solve makes.
    """
    g_v_mat = _axis_normal_matrix(
        _axis_sample_points(grid.xi_bound, grid.delta_v, grid.q_v, l_v), geom.m_v)
    g_h_mat = _axis_normal_matrix(
        _axis_sample_points(grid.zeta_bound, grid.delta_h, grid.q_h, l_h), geom.m_h)
    lq = l_v * l_h * grid.q
    full = np.kron(g_v_mat, g_h_mat) - lq * np.eye(geom.m)
    return float(np.linalg.norm(full) / (lq * math.sqrt(geom.m)))


def eta_objective(cover: CoverSet, grid: PsiGrid, geom: ArrayGeometry,
                  params: EqualGainParams, resolution: int = 256,
                  interior_shrink: float = 0.1) -> float:
    """Scalar quality of a candidate phase ramp: interior ripple plus 10x leakage."""
    result = design_closed_form(cover, grid, geom, params)
    rep = metrics.report(result.beamformer, cover, grid, resolution=resolution,
                         interior_shrink=interior_shrink)
    return rep.ripple_db + 10.0 * rep.leakage_fraction


def centered_eta(grid: PsiGrid, geom: ArrayGeometry) -> EqualGainParams:
    """Phase ramp that moves the per-element taper onto the aperture.

    The element weight magnitude follows |sinc((delta_a*m_a + eta_a)/(2*pi))|,
    peaked at m_a = -eta_a/delta_a.  A one-sided array (indices 0..M_a-1)
    with a zero ramp therefore tapers hardest exactly where the target's
    spectral content sits, at the edge of the representable band, and
    roughly half the radiated power escapes the cover.  A ramp of
    -delta_a*(M_a - 1)/2 would center the peak on the aperture, but any
    ramp that is not a whole number of turns leaves phase seams between
    adjacent subregion targets, which dent the plateau at every interior
    cell boundary.  When a full turn is within reach of the centering
    value this returns one full turn (kept just inside the admissible
    open interval (-2*pi, 2*pi)): seam-free and still well inside the
    representable band.  Otherwise it returns the plain centering ramp.
    """
    def per_axis(delta: float, count: int) -> float:
        raw = -delta * (count - 1) / 2.0
        if round(-raw / TWO_PI) >= 1:
            return -(TWO_PI - 1e-9)
        return raw

    return EqualGainParams(eta_v=per_axis(grid.delta_v, geom.m_v),
                           eta_h=per_axis(grid.delta_h, geom.m_h))


def select_eta(cover: CoverSet, grid: PsiGrid, geom: ArrayGeometry,
               search_resolution: int = 5) -> EqualGainParams:
    """Grid-search the phase-ramp pair over [-delta_v, delta_v] x [-delta_h, delta_h].

    Ties break toward the smallest eta_v, then the smallest eta_h; a
    resolution of 1 evaluates only the range center (0, 0).
    """
    if search_resolution < 1:
        raise ValueError("search_resolution must be >= 1")
    if search_resolution == 1:
        cand_v = [0.0]
        cand_h = [0.0]
    else:
        cand_v = np.linspace(-grid.delta_v, grid.delta_v, search_resolution)
        cand_h = np.linspace(-grid.delta_h, grid.delta_h, search_resolution)
    best = None
    best_obj = math.inf
    for ev in cand_v:
        for eh in cand_h:
            params = EqualGainParams(eta_v=float(ev), eta_h=float(eh))
            obj = eta_objective(cover, grid, geom, params)
            if obj < best_obj:
                best, best_obj = params, obj
    return best
