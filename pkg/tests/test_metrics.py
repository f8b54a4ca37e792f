import math
from dataclasses import replace

import numpy as np
import pytest

import risbeam as rb
from risbeam.geometry import CoverSet
from risbeam.metrics import to_db

TWO_PI = 2 * math.pi


def flat_beamformer(m_v, m_h):
    e0 = np.zeros(m_v * m_h, dtype=complex)
    e0[0] = 1.0
    return rb.Beamformer(e0, m_v, m_h)


def single_cell_cover(p, q):
    cells = frozenset({(p, q)})
    return CoverSet(indices=cells, per_lobe=(cells,))


def exact_cell_integral(weights, rect):
    """Oracle: closed-form integral of |d^H w|^2 over a rectangle.

    Expands the gain into its 2D Fourier series (the autocorrelation of
    the weight grid) and integrates each exponential analytically.
    """
    m_v, m_h = weights.shape

    def axis_integral(k, lo, hi):
        if k == 0:
            return hi - lo
        return (np.exp(-1j * k * hi) - np.exp(-1j * k * lo)) / (-1j * k)

    total = 0.0 + 0.0j
    for kv in range(-(m_v - 1), m_v):
        a = weights[kv:, :] if kv >= 0 else weights[:m_v + kv, :]
        b = weights[:m_v - kv, :] if kv >= 0 else weights[-kv:, :]
        for kh in range(-(m_h - 1), m_h):
            a2 = a[:, kh:] if kh >= 0 else a[:, :m_h + kh]
            b2 = b[:, :m_h - kh] if kh >= 0 else b[:, -kh:]
            corr = np.sum(a2 * np.conj(b2))
            total += corr * axis_integral(kv, rect.xi_min, rect.xi_max) * \
                axis_integral(kh, rect.zeta_min, rect.zeta_max)
    return total.real


def test_flat_pattern_leakage_is_area_complement(ref_grid):
    cover_cells = frozenset({(3, 4), (3, 5), (9, 9)})
    cover = CoverSet(indices=cover_cells, per_lobe=(cover_cells,))
    rep = rb.report(flat_beamformer(4, 4), cover, ref_grid, resolution=512)
    area = 3 * ref_grid.delta_v * ref_grid.delta_h
    assert rep.leakage_fraction == pytest.approx(1 - area / TWO_PI ** 2, abs=2e-3)
    assert rep.mean_in_db == pytest.approx(0.0, abs=1e-9)
    assert rep.ripple_db == pytest.approx(0.0, abs=1e-9)


def test_report_statistics_ordering(dual_beam_cover, ref_grid, ref_geom):
    result = rb.design_closed_form(dual_beam_cover, ref_grid, ref_geom,
                                   rb.centered_eta(ref_grid, ref_geom))
    rep = rb.report(result.beamformer, dual_beam_cover, ref_grid, resolution=256)
    assert rep.min_in_db <= rep.median_in_db <= rep.max_in_db
    assert rep.ripple_db >= 0
    assert 0.0 <= rep.leakage_fraction <= 1.0
    assert rep.ideal_level_db == pytest.approx(10 * math.log10(
        TWO_PI ** 2 / (dual_beam_cover.size * ref_grid.delta_v
                       * ref_grid.delta_h)), abs=1e-12)


def test_leakage_against_exact_integral_oracle(dual_beam_cover, ref_grid,
                                               ref_geom):
    result = rb.design_closed_form(dual_beam_cover, ref_grid, ref_geom,
                                   rb.centered_eta(ref_grid, ref_geom))
    weights = result.beamformer.as_grid()
    in_power = sum(exact_cell_integral(weights, ref_grid.cell(p, q))
                   for p, q in dual_beam_cover.sorted())
    exact_leak = 1.0 - in_power / TWO_PI ** 2
    rep = rb.report(result.beamformer, dual_beam_cover, ref_grid, resolution=512)
    assert rep.leakage_fraction == pytest.approx(exact_leak, abs=0.01)


def test_leakage_plus_in_cover_is_one(dual_beam_cover, ref_grid, ref_geom):
    result = rb.design_closed_form(dual_beam_cover, ref_grid, ref_geom)
    pat = rb.sample_pattern(result.beamformer, 256)
    rep = rb.report_from_pattern(pat, dual_beam_cover, ref_grid)
    from risbeam.metrics import _cover_masks
    in_mask, _ = _cover_masks(pat, dual_beam_cover, ref_grid, 0.1)
    in_fraction = pat.gains[in_mask].sum() / pat.gains.sum()
    assert rep.leakage_fraction + in_fraction == pytest.approx(1.0, abs=1e-6)


def test_report_invariant_under_global_phase(dual_beam_cover, ref_grid,
                                             ref_geom):
    result = rb.design_closed_form(dual_beam_cover, ref_grid, ref_geom)
    rotated = rb.Beamformer(result.beamformer.entries * np.exp(1j * 1.1),
                            ref_geom.m_v, ref_geom.m_h)
    rep_a = rb.report(result.beamformer, dual_beam_cover, ref_grid, resolution=128)
    rep_b = rb.report(rotated, dual_beam_cover, ref_grid, resolution=128)
    assert rep_a.mean_in_db == pytest.approx(rep_b.mean_in_db, abs=1e-9)
    assert rep_a.leakage_fraction == pytest.approx(rep_b.leakage_fraction, abs=1e-12)


def test_report_accepts_surface_config(dual_beam_cover, ref_grid, ref_geom):
    result = rb.design_closed_form(dual_beam_cover, ref_grid, ref_geom,
                                   rb.centered_eta(ref_grid, ref_geom))
    config = rb.ris_from_beamformer(result.beamformer, rb.SolidAngle(0, 0),
                                    ref_geom)
    rep_feed = rb.report(result.beamformer, dual_beam_cover, ref_grid,
                         resolution=128)
    rep_conf = rb.report(config, dual_beam_cover, ref_grid, resolution=128)
    assert rep_conf.mean_in_db == pytest.approx(rep_feed.mean_in_db, abs=1e-9)


def test_cut_flat_pattern_has_no_widths(ref_grid):
    geom = rb.ArrayGeometry(2, 2)
    profile = rb.cut(flat_beamformer(2, 2), ref_grid, geom, "fixed_phi", 0.0,
                     resolution=256)
    assert all(len(w) == 0 for w in profile.widths.values())
    assert np.all(np.diff(profile.angles) > 0)


def test_cut_width_matches_dirichlet_oracle(ref_grid):
    """Steered beam width against a brute-force scan of the array factor."""
    geom = rb.ArrayGeometry(16, 16)
    c = rb.Beamformer.steering(geom, rb.PsiPoint(0.0, 0.0))

    theta_dense = np.linspace(-math.pi / 2, math.pi / 2, 400_001)
    zeta = math.pi * np.sin(theta_dense)
    acc = np.abs(np.exp(-1j * np.outer(zeta, np.arange(16))).sum(axis=1)) ** 2 / 16
    half = acc >= acc.max() / 10 ** 0.3
    lo = theta_dense[half.argmax()]
    hi = theta_dense[len(half) - 1 - half[::-1].argmax()]
    expected = hi - lo

    profile = rb.cut(c, ref_grid, geom, "fixed_phi", 0.0, resolution=4096)
    assert len(profile.widths[3.0]) == 1
    assert profile.widths[3.0][0] == pytest.approx(expected, rel=5e-3)


def test_reference_cuts_intersect_one_lobe_each(dual_beam_cover, ref_grid,
                                            ref_geom):
    result = rb.design_closed_form(dual_beam_cover, ref_grid, ref_geom,
                                   rb.centered_eta(ref_grid, ref_geom))
    for axis, value in (("fixed_phi", -8 * math.pi / 32),
                        ("fixed_phi", 7 * math.pi / 32)):
        profile = rb.cut(result.beamformer, ref_grid, ref_geom, axis, value,
                         resolution=2048)
        assert len(profile.widths[3.0]) == 1


def test_cut_rejects_out_of_range_fixed_value(ref_grid, ref_geom):
    with pytest.raises(ValueError):
        rb.cut(flat_beamformer(2, 2), ref_grid, ref_geom, "fixed_phi", 1.2)
    with pytest.raises(ValueError):
        rb.cut(flat_beamformer(2, 2), ref_grid, ref_geom, "sideways", 0.0)


def test_cut_widths_shrink_with_aperture(ref_grid):
    widths = []
    for m in (8, 16, 32):
        geom = rb.ArrayGeometry(m, m)
        cover = single_cell_cover(8, 8)
        result = rb.design_closed_form(cover, ref_grid, geom,
                                       rb.centered_eta(ref_grid, geom))
        cell = ref_grid.cell(8, 8)
        theta_mid = rb.from_psi(rb.PsiPoint(
            (cell.xi_min + cell.xi_max) / 2,
            (cell.zeta_min + cell.zeta_max) / 2), geom)
        profile = rb.cut(result.beamformer, ref_grid, geom, "fixed_theta",
                         theta_mid.theta, resolution=2048)
        assert profile.widths[3.0], f"no crossing at aperture {m}"
        widths.append(profile.widths[3.0][0])
    assert widths[0] > widths[1] > widths[2]


def test_compare_identical_reports_is_zero(dual_beam_cover, ref_grid,
                                           ref_geom):
    result = rb.design_closed_form(dual_beam_cover, ref_grid, ref_geom)
    rep = rb.report(result.beamformer, dual_beam_cover, ref_grid, resolution=128)
    assert rb.compare(rep, rep) == 0.0


def test_compare_half_power_is_three_db(dual_beam_cover, ref_grid, ref_geom):
    result = rb.design_closed_form(dual_beam_cover, ref_grid, ref_geom)
    rep = rb.report(result.beamformer, dual_beam_cover, ref_grid, resolution=128)
    halved = replace(rep, mean_in_db=rep.mean_in_db - 10 * math.log10(2))
    assert rb.compare(rep, halved) == pytest.approx(3.0103, abs=1e-4)


def test_compare_rejects_cover_mismatch(ref_grid, ref_geom):
    rep_a = rb.report(flat_beamformer(2, 2), single_cell_cover(1, 1), ref_grid,
                      resolution=64)
    rep_b = rb.report(flat_beamformer(2, 2), single_cell_cover(2, 2), ref_grid,
                      resolution=64)
    with pytest.raises(ValueError):
        rb.compare(rep_a, rep_b)


def test_bounding_rectangle_cover(dual_beam_cover, ref_grid):
    bounding = rb.bounding_rectangle_cover(dual_beam_cover, ref_grid)
    assert bounding.size == 16 * 6
    assert dual_beam_cover.indices <= bounding.indices
    ps = [p for p, _ in bounding.indices]
    qs = [q for _, q in bounding.indices]
    assert (min(ps), max(ps)) == (1, 16)
    assert (min(qs), max(qs)) == (5, 10)


def test_connected_components_synthetic():
    gains = np.zeros((10, 10))
    gains[1:3, 1:3] = 5.0
    gains[6:9, 6:9] = 7.0
    gains[5, 5] = 0.5
    pat = rb.PatternGrid(xi_samples=np.arange(10.0), zeta_samples=np.arange(10.0),
                         gains=gains)
    assert rb.connected_components_above(pat, 1.0) == 2
    assert rb.connected_components_above(pat, 0.1) == 3
    assert rb.connected_components_above(pat, 10.0) == 0


def test_to_db_floor():
    assert to_db(0.0) == -120.0
    assert to_db(1.0) == 0.0


def test_report_round_trips_through_db(dual_beam_cover, ref_grid, ref_geom):
    result = rb.design_closed_form(dual_beam_cover, ref_grid, ref_geom)
    pat = rb.sample_pattern(result.beamformer, 128)
    db = np.vectorize(to_db)(pat.gains)
    back = rb.PatternGrid(xi_samples=pat.xi_samples, zeta_samples=pat.zeta_samples,
                          gains=10.0 ** (db / 10.0))
    rep_a = rb.report_from_pattern(pat, dual_beam_cover, ref_grid)
    rep_b = rb.report_from_pattern(back, dual_beam_cover, ref_grid)
    assert rep_a.mean_in_db == pytest.approx(rep_b.mean_in_db, abs=1e-9)
    assert rep_a.leakage_fraction == pytest.approx(rep_b.leakage_fraction, abs=1e-9)
    assert rep_a.ripple_db == pytest.approx(rep_b.ripple_db, abs=1e-9)
