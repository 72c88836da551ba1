"""Brute-force reference on the full 2^N Hilbert space.

Nothing here uses the Dicke-basis machinery: the Hamiltonian is assembled from
single-site Pauli matrices, ground states come from a dense eigensolver, and
entanglement is computed from explicit partial traces. Qubit 0 is the most
significant bit; |0> is spin up (sigma_z = +1).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .errors import InvalidSites, SizeError, SolverFailure
from .model import ModelParams

MAX_SITES = 12
DEGENERACY_TOL = 1e-12
RESIDUAL_TOL = 1e-10

_SX = np.array([[0.0, 1.0], [1.0, 0.0]])
# sigma_y = -i * _AY; S_y^2 = -(sum _AY/2)^2 stays real
_AY = np.array([[0.0, 1.0], [-1.0, 0.0]])
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])


@dataclass(frozen=True)
class FullState:
    n_particles: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_particles > MAX_SITES:
            raise SizeError(f"oracle is limited to N <= {MAX_SITES}")
        amps = np.asarray(self.amplitudes)
        if amps.shape != (2**self.n_particles,):
            raise ValueError(f"expected 2**{self.n_particles} amplitudes, got {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True)
class ReducedDensity:
    sites: tuple[int, ...]
    entries: np.ndarray

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))


def _site_operator(op: np.ndarray, site: int, n: int) -> sp.csr_matrix:
    left = sp.identity(2**site, format="csr")
    right = sp.identity(2 ** (n - site - 1), format="csr")
    return sp.kron(sp.kron(left, sp.csr_matrix(op)), right, format="csr")


@lru_cache(maxsize=16)
def collective_operators(n: int) -> dict[str, sp.csr_matrix]:
    """Real sparse S_x, A_y (with S_y = -i A_y), S_z, built site by site."""
    if n > MAX_SITES:
        raise SizeError(f"oracle is limited to N <= {MAX_SITES}")
    ops = {}
    for name, single in (("sx", _SX), ("ay", _AY), ("sz", _SZ)):
        total = sp.csr_matrix((2**n, 2**n))
        for site in range(n):
            total = total + _site_operator(single / 2, site, n)
        ops[name] = total.tocsr()
    ops["sx2"] = (ops["sx"] @ ops["sx"]).tocsr()
    ops["sy2"] = (-(ops["ay"] @ ops["ay"])).tocsr()
    ops["sz2"] = (ops["sz"] @ ops["sz"]).tocsr()
    ops["s2"] = (ops["sx2"] + ops["sy2"] + ops["sz2"]).tocsr()
    return ops


def parity_diagonal(n: int) -> np.ndarray:
    """Eigenvalues of prod_i sigma_z^i on the computational basis."""
    ones = np.array([bin(b).count("1") for b in range(2**n)])
    return np.where(ones % 2 == 0, 1.0, -1.0)


def full_hamiltonian(params: ModelParams) -> np.ndarray:
    n = params.n_particles
    if n > MAX_SITES:
        raise SizeError(f"oracle is limited to N <= {MAX_SITES}")
    ops = collective_operators(n)
    s = params.coupling.sign
    ham = -(s / n) * (ops["sx2"] + params.gamma * ops["sy2"]) - params.h * ops["sz"]
    return ham.toarray()


def _pick_representative(vecs: np.ndarray, n: int, prefer_max_spin: bool) -> np.ndarray:
    """Deterministic vector in a degenerate eigenspace.

    Preference order: maximal total spin (if requested), even parity, largest <S_z>.
    """
    ops = collective_operators(n)
    sub = vecs
    steps = []
    if prefer_max_spin:
        steps.append(ops["s2"])
    steps.append(sp.diags(parity_diagonal(n)))
    steps.append(ops["sz"])
    for op in steps:
        if sub.shape[1] == 1:
            break
        proj = sub.T @ (op @ sub)
        vals, rot = np.linalg.eigh((proj + proj.T) / 2)
        keep = vals >= vals[-1] - 1e-8
        sub = sub @ rot[:, keep]
    vec = sub[:, -1]
    return vec / np.linalg.norm(vec)


def full_ground_state(params: ModelParams, sector: str = "global") -> tuple[float, FullState]:
    """Ground energy and state of the Pauli-built Hamiltonian.

    ``sector="max_spin"`` looks for the ground state inside the S = N/2
    eigenspace of the Pauli-built S^2 (the other multiplets are lifted by a
    penalty that vanishes on S = N/2); ``sector="global"`` takes the true
    lowest level of the 2^N space. Degenerate levels are resolved toward
    S = N/2, even parity, then largest <S_z>.
    """
    n = params.n_particles
    ham = full_hamiltonian(params)
    if sector == "max_spin":
        s = n / 2
        bound = (s + 1) + abs(params.h) * s
        penalty = 2 * bound / n + 1.0
        ops = collective_operators(n)
        work = ham - penalty * (ops["s2"].toarray() - s * (s + 1) * np.eye(2**n))
    elif sector == "global":
        work = ham
    else:
        raise ValueError(f"unknown sector {sector!r}")
    vals, vecs = np.linalg.eigh(work)
    scale = max(1.0, float(np.abs(vals).max()))
    cluster = vals - vals[0] <= DEGENERACY_TOL * scale
    vec = _pick_representative(vecs[:, cluster], n, prefer_max_spin=True)
    pivot = np.argmax(np.abs(vec))
    if vec[pivot] < 0:
        vec = -vec
    energy = float(vec @ ham @ vec)
    resid = np.linalg.norm(ham @ vec - energy * vec)
    if resid > RESIDUAL_TOL * scale:
        raise SolverFailure(f"oracle residual {resid:.3e}")
    return energy, FullState(n, vec)


def reduced_density(state: FullState, sites) -> ReducedDensity:
    n = state.n_particles
    sites = tuple(int(s) for s in sites)
    if not 1 <= len(sites) <= 2 or len(set(sites)) != len(sites) or any(
        not 0 <= s < n for s in sites
    ):
        raise InvalidSites(f"invalid sites {sites} for N={n}")
    psi = state.amplitudes.reshape((2,) * n)
    rest = [ax for ax in range(n) if ax not in sites]
    mat = np.transpose(psi, sites + tuple(rest)).reshape(2 ** len(sites), -1)
    return ReducedDensity(sites, mat @ mat.conj().T)


def brennen_Q(state: FullState) -> float:
    n = state.n_particles
    mean_purity = sum(reduced_density(state, [k]).purity() for k in range(n)) / n
    return 2.0 * (1.0 - mean_purity)


def oracle_Eg(state: FullState) -> float:
    n = state.n_particles
    pairs = list(itertools.combinations(range(n), 2))
    mean = sum(1.0 - reduced_density(state, p).purity() for p in pairs) / len(pairs)
    return 4.0 / 3.0 * mean


def oracle_correlators(state: FullState, sites=(0, 1)) -> dict[str, float]:
    """Single- and two-site correlators read off explicit reduced density matrices."""
    rho1 = reduced_density(state, sites[:1]).entries
    rho2 = reduced_density(state, sites).entries

    def ev(rho, op):
        return float(np.real(np.trace(rho @ op)))

    return {
        "m_z": ev(rho1, _SZ),
        "c_xx": ev(rho2, np.kron(_SX, _SX)),
        "c_yy": ev(rho2, np.kron(_SY, _SY)),
        "c_zz": ev(rho2, np.kron(_SZ, _SZ)),
        "c_xy_sym": ev(rho2, (np.kron(_SX, _SY) + np.kron(_SY, _SX)) / 2),
    }


def embed_symmetric(amplitudes_by_m, n: int) -> FullState:
    """Lift amplitudes over M = -N/2..N/2 to the permutation-symmetric full state."""
    amps = np.asarray(amplitudes_by_m, dtype=float)
    weights = np.array([bin(b).count("1") for b in range(2**n)])  # k down spins
    out = np.zeros(2**n)
    for k in range(n + 1):
        mask = weights == k
        # index of M = N/2 - k is N - k
        out[mask] = amps[n - k] / math.sqrt(math.comb(n, k))
    return FullState(n, out)


def ghz_full(n: int) -> FullState:
    amps = np.zeros(2**n)
    amps[0] = amps[-1] = math.sqrt(0.5)
    return FullState(n, amps)


def w_state(n: int) -> FullState:
    amps = np.zeros(2**n)
    for site in range(n):
        amps[1 << site] = 1 / math.sqrt(n)
    return FullState(n, amps)


def energy_of(state: FullState, params: ModelParams) -> float:
    ham = full_hamiltonian(params)
    v = state.amplitudes
    return float(np.real(v.conj() @ ham @ v))
