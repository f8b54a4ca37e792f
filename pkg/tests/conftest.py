import math

import pytest

import risbeam as rb


@pytest.fixture(scope="session")
def ref_geom():
    return rb.ArrayGeometry(m_v=32, m_h=32)


@pytest.fixture(scope="session")
def ref_grid(ref_geom):
    xi_b, zeta_b = rb.psi_bounds(ref_geom, math.pi / 4, math.pi / 2)
    return rb.make_grid(16, 16, xi_b, zeta_b)


@pytest.fixture(scope="session")
def dual_beam_spec():
    return rb.MultiBeamSpec((
        rb.Lobe.around(-8 * math.pi / 32, -5 * math.pi / 32, math.pi / 16),
        rb.Lobe.around(7 * math.pi / 32, math.pi / 32, math.pi / 16),
    ))


@pytest.fixture(scope="session")
def dual_beam_cover(dual_beam_spec, ref_grid, ref_geom):
    return rb.cover_set(dual_beam_spec, ref_grid, ref_geom)
