import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lmg_entanglement import oracle
from lmg_entanglement.dicke import DickeState, solve_ground
from lmg_entanglement.entanglement import (
    Method,
    PairCorrelators,
    antiferro_isotropic_critical,
    entanglement,
    generalized_global_entanglement,
    generalized_global_entanglement_from_purity,
    ghz_state,
    global_entanglement,
    isotropic_correlators,
    isotropic_entanglement,
    pair_correlators,
    state_entanglement,
    two_site_density,
)
from lmg_entanglement.errors import ConsistencyError, InvalidInput
from lmg_entanglement.model import Coupling, ModelParams


def test_polarized_state_correlators():
    pc = pair_correlators(DickeState.basis(10, 5))
    np.testing.assert_allclose(pc.as_tuple(), (1, 0, 0, 1, 0), atol=1e-15)
    res = entanglement(pc, Method.DICKE)
    assert res.q_global == 0 and res.e_g == pytest.approx(0, abs=1e-15)


def test_ghz_correlators():
    pc = pair_correlators(ghz_state(8))
    assert pc.m_z == pytest.approx(0, abs=1e-15)
    assert pc.c_zz == pytest.approx(1, abs=1e-14)
    assert pc.c_xx == pytest.approx(0, abs=1e-14)
    res = entanglement(pc, Method.DICKE)
    assert res.q_global == pytest.approx(1, abs=1e-14)
    assert res.e_g == pytest.approx(2 / 3, abs=1e-14)


def test_correlators_match_partial_trace():
    params = ModelParams(Coupling.ANTIFERRO, 0.5, 0.2, 6)
    pc = pair_correlators(solve_ground(params).state)
    _, full = oracle.full_ground_state(params, sector="max_spin")
    ref = oracle.oracle_correlators(full)
    for key in ("m_z", "c_xx", "c_yy", "c_zz", "c_xy_sym"):
        assert getattr(pc, key) == pytest.approx(ref[key], abs=1e-10)


def test_global_entanglement_values():
    assert global_entanglement(PairCorrelators(1, 0, 0, 1)) == 0
    assert global_entanglement(PairCorrelators(0.5, 0, 0, 0)) == 0.75


def test_isotropic_examples():
    res = isotropic_entanglement(0, 4)
    assert res.q_global == 1
    # |2, 0>: c_xx = c_yy = 2/3, c_zz = -1/3
    assert res.e_g == pytest.approx(1 - (4 / 9 + 4 / 9 + 1 / 9) / 3, abs=1e-15)
    res = isotropic_entanglement(5, 10)
    assert res.q_global == 0 and res.e_g == pytest.approx(0, abs=1e-15)


@settings(max_examples=100)
@given(st.integers(2, 400), st.data())
def test_isotropic_closed_form_matches_generic_path(n, data):
    k = data.draw(st.integers(0, n))
    m = n / 2 - k
    closed = isotropic_entanglement(m, n)
    generic = state_entanglement(DickeState.basis(n, m))
    assert closed.q_global == pytest.approx(generic.q_global, abs=1e-12)
    assert closed.e_g == pytest.approx(generic.e_g, abs=1e-12)
    np.testing.assert_allclose(
        isotropic_correlators(m, n).as_tuple(), pair_correlators(DickeState.basis(n, m)).as_tuple(), atol=1e-12
    )


@pytest.mark.parametrize("n", [3, 4, 8, 50])
def test_ghz_critical_point(n):
    res = antiferro_isotropic_critical(n)
    assert res.q_global == pytest.approx(1, abs=1e-12)
    assert res.e_g == pytest.approx(2 / 3, abs=1e-12)


def test_ghz_critical_point_two_sites():
    # for two spins the GHZ state is a Bell pair, so the pair is pure
    res = antiferro_isotropic_critical(2)
    assert res.q_global == pytest.approx(1, abs=1e-12)
    assert res.e_g == pytest.approx(0, abs=1e-12)
    full = oracle.ghz_full(2)
    assert oracle.oracle_Eg(full) == pytest.approx(0, abs=1e-12)


@settings(max_examples=60)
@given(
    st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-0.5, 0.5)
)
def test_closed_form_and_purity_agree(mz, cxx, cyy, czz, cxy):
    pc = PairCorrelators(mz, cxx, cyy, czz, cxy)
    assert generalized_global_entanglement(pc) == pytest.approx(
        generalized_global_entanglement_from_purity(pc), abs=1e-12
    )


def test_two_site_density_hermitian_unit_trace():
    rho = two_site_density(pair_correlators(solve_ground(ModelParams(Coupling.FERRO, 0.3, 0.5, 20)).state))
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-15)
    assert np.trace(rho).real == pytest.approx(1, abs=1e-14)
    assert np.linalg.eigvalsh(rho).min() > -1e-12


def test_out_of_range_rejected():
    with pytest.raises(InvalidInput):
        generalized_global_entanglement(PairCorrelators(0, 1.5, 0, 0))
    with pytest.raises(InvalidInput):
        isotropic_entanglement(3, 4)
    with pytest.raises(InvalidInput):
        antiferro_isotropic_critical(1)


def test_inconsistent_correlators_detected(monkeypatch):
    import lmg_entanglement.entanglement as ent

    monkeypatch.setattr(ent, "global_entanglement", lambda pc: 1 - pc.m_z**2 + 1e-6)
    with pytest.raises(ConsistencyError):
        ent.entanglement(PairCorrelators(0.2, 0.1, 0.1, 0.3), Method.DICKE)
