"""Global entanglement Q and generalized global entanglement E_g.

For permutation-symmetric states every single-site and two-site reduced
density matrix is fixed by a handful of spin correlators, which in turn follow
from collective-spin expectation values. Q and E_g are computed twice, once
from their closed forms in the correlators and once from explicitly assembled
reduced density matrices; the two must agree.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .dicke import CollectiveExpectations, DickeState, collective_expectations
from .errors import ConsistencyError, InvalidInput

PATH_TOL = 1e-12
RANGE_TOL = 1e-9

_I2 = np.eye(2)
_SX = np.array([[0.0, 1.0], [1.0, 0.0]])
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]])


class Method(enum.Enum):
    DICKE = "dicke"
    HP = "hp"
    ISOTROPIC_EXACT = "iso"
    ORACLE = "oracle"


@dataclass(frozen=True)
class PairCorrelators:
    m_z: float
    c_xx: float
    c_yy: float
    c_zz: float
    c_xy_sym: float = 0.0

    def as_tuple(self) -> tuple[float, ...]:
        return (self.m_z, self.c_xx, self.c_yy, self.c_zz, self.c_xy_sym)

    def check_range(self, tol: float = RANGE_TOL) -> None:
        bad = [v for v in self.as_tuple() if not abs(v) <= 1 + tol]
        if bad:
            raise InvalidInput(f"correlator outside [-1, 1]: {self}")


@dataclass(frozen=True)
class EntanglementResult:
    q_global: float
    e_g: float
    method: Method


def pair_correlators_from_collective(exp: CollectiveExpectations, n: int) -> PairCorrelators:
    if n < 2:
        raise InvalidInput("need at least two particles")
    pairs = n * (n - 1)
    return PairCorrelators(
        m_z=2 * exp.sz / n,
        c_xx=(4 * exp.sx2 - n) / pairs,
        c_yy=(4 * exp.sy2 - n) / pairs,
        c_zz=(4 * exp.sz2 - n) / pairs,
        # sigma_x sigma_y anticommute on one site, so no -N term here
        c_xy_sym=2 * exp.sxsy_anti / pairs,
    )


def pair_correlators(state: DickeState) -> PairCorrelators:
    return pair_correlators_from_collective(collective_expectations(state), state.n_particles)


def single_site_density(pc: PairCorrelators) -> np.ndarray:
    return (_I2 + pc.m_z * _SZ) / 2


def two_site_density(pc: PairCorrelators) -> np.ndarray:
    """Two-site reduced density matrix of a parity-symmetric, permutation-symmetric state."""
    rho = (
        np.kron(_I2, _I2)
        + pc.m_z * (np.kron(_SZ, _I2) + np.kron(_I2, _SZ))
        + pc.c_xx * np.kron(_SX, _SX)
        + pc.c_yy * np.kron(_SY, _SY)
        + pc.c_zz * np.kron(_SZ, _SZ)
        + pc.c_xy_sym * (np.kron(_SX, _SY) + np.kron(_SY, _SX))
    )
    return rho / 4


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ rho)))


def global_entanglement(pc: PairCorrelators) -> float:
    return 1.0 - pc.m_z**2


def global_entanglement_from_purity(pc: PairCorrelators) -> float:
    return 2.0 * (1.0 - purity(single_site_density(pc)))


def generalized_global_entanglement(pc: PairCorrelators) -> float:
    pc.check_range()
    if abs(pc.c_xy_sym) > PATH_TOL:
        return generalized_global_entanglement_from_purity(pc)
    return 1.0 - (2 * pc.m_z**2 + pc.c_xx**2 + pc.c_yy**2 + pc.c_zz**2) / 3


def generalized_global_entanglement_from_purity(pc: PairCorrelators) -> float:
    return 4.0 / 3.0 * (1.0 - purity(two_site_density(pc)))


def entanglement(pc: PairCorrelators, method: Method) -> EntanglementResult:
    """Q and E_g from correlators, cross-checked against the purity route."""
    q = global_entanglement(pc)
    e_g = generalized_global_entanglement(pc)
    q_alt = global_entanglement_from_purity(pc)
    e_alt = generalized_global_entanglement_from_purity(pc)
    if abs(q - q_alt) > PATH_TOL or abs(e_g - e_alt) > PATH_TOL:
        raise ConsistencyError(
            f"closed form and purity paths disagree: Q {q!r} vs {q_alt!r}, E_g {e_g!r} vs {e_alt!r}"
        )
    return EntanglementResult(q, e_g, method)


def state_entanglement(state: DickeState, method: Method = Method.DICKE) -> EntanglementResult:
    return entanglement(pair_correlators(state), method)


def isotropic_correlators(m: float, n: int) -> PairCorrelators:
    """Correlators of |N/2, M> from <S_z^2> = M^2 and <S_x^2> = <S_y^2> = (S(S+1) - M^2)/2."""
    if abs(m) > n / 2:
        raise InvalidInput(f"|M| = {abs(m)} exceeds N/2 = {n / 2}")
    pairs = n * (n - 1)
    cperp = (n * n - 4 * m * m) / (2 * pairs)
    return PairCorrelators(m_z=2 * m / n, c_xx=cperp, c_yy=cperp, c_zz=(4 * m * m - n) / pairs)


def isotropic_entanglement(m: float, n: int) -> EntanglementResult:
    """Exact Q and E_g of the Dicke state |N/2, M>."""
    if n < 2:
        raise InvalidInput("need at least two particles")
    if abs(m) > n / 2:
        raise InvalidInput(f"|M| = {abs(m)} exceeds N/2 = {n / 2}")
    m2 = m * m
    e_g = (
        1
        - 8 * m2 / (3 * n * n)
        - (2 * (4 * m2 - n) ** 2 + (4 * m2 - n * n) ** 2) / (6 * n * n * (n - 1) ** 2)
    )
    q = 1 - (2 * m / n) ** 2
    return EntanglementResult(q, e_g, Method.ISOTROPIC_EXACT)


def ghz_state(n: int) -> DickeState:
    amps = np.zeros(n + 1)
    amps[0] = amps[-1] = np.sqrt(0.5)
    return DickeState(n, amps)


def antiferro_isotropic_critical(n: int) -> EntanglementResult:
    """Entanglement of the GHZ ground state of the isotropic antiferromagnet at h = 0."""
    if n < 2:
        raise InvalidInput("need at least two particles")
    return state_entanglement(ghz_state(n), Method.ISOTROPIC_EXACT)
