"""Exact diagonalization of the LMG Hamiltonian in the maximal-spin Dicke basis.

Basis index i = 0..N corresponds to M = i - N/2. The Hamiltonian only couples
M to M +/- 2, so it splits into two tridiagonal blocks labelled by the parity
of the boson number k = N/2 - M. Each block is solved with a tridiagonal
eigensolver, which keeps a full solve at O(N) per eigenpair.
"""
from __future__ import annotations

import decimal
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import InvalidInput, SolverFailure
from .model import Coupling, ModelParams

#: Relative tolerance (in units of the matrix scale) under which levels are degenerate.
DEGENERACY_TOL = 1e-12
RESIDUAL_TOL = 1e-10
#: Gaps below this fraction of the matrix scale are recomputed in extended precision.
GAP_RESOLVE_TOL = 1e-8
MAX_GAP_DIGITS = 320


@dataclass(frozen=True)
class BandedHamiltonian:
    n_particles: int
    diagonal: np.ndarray
    second_offdiagonal: np.ndarray

    @property
    def dim(self) -> int:
        return self.n_particles + 1

    def to_dense(self) -> np.ndarray:
        mat = np.diag(self.diagonal)
        if self.n_particles >= 2:
            mat += np.diag(self.second_offdiagonal, 2) + np.diag(self.second_offdiagonal, -2)
        return mat

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diagonal * v
        off = self.second_offdiagonal
        out[:-2] += off * v[2:]
        out[2:] += off * v[:-2]
        return out

    def norm(self) -> float:
        """Infinity norm; cheap upper bound on the spectral radius."""
        row = np.abs(self.diagonal).copy()
        row[:-2] += np.abs(self.second_offdiagonal)
        row[2:] += np.abs(self.second_offdiagonal)
        return float(row.max())

    def sector(self, parity: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Tridiagonal block of boson-number parity ``parity``.

        Returns (basis indices, diagonal, off-diagonal) with indices ascending in M.
        """
        n = self.n_particles
        idx = np.arange((n - parity) % 2, n + 1, 2)
        return idx, self.diagonal[idx], self.second_offdiagonal[idx[:-1]]


@dataclass(frozen=True)
class DickeState:
    n_particles: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=float)
        if amps.shape != (self.n_particles + 1,):
            raise InvalidInput(f"expected {self.n_particles + 1} amplitudes, got shape {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def m_values(self) -> np.ndarray:
        return np.arange(self.n_particles + 1) - self.n_particles / 2

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def parity_weights(self) -> tuple[float, float]:
        """Weight on even and odd boson number k = N/2 - M."""
        k = self.n_particles - np.arange(self.n_particles + 1)
        w = self.amplitudes**2
        return float(w[k % 2 == 0].sum()), float(w[k % 2 == 1].sum())

    def reflected(self) -> "DickeState":
        """Image under M -> -M."""
        return DickeState(self.n_particles, self.amplitudes[::-1].copy())

    @classmethod
    def basis(cls, n_particles: int, m: float) -> "DickeState":
        i = m + n_particles / 2
        if i != int(i) or not 0 <= i <= n_particles:
            raise InvalidInput(f"M={m} is not an allowed value for N={n_particles}")
        amps = np.zeros(n_particles + 1)
        amps[int(i)] = 1.0
        return cls(n_particles, amps)


@dataclass(frozen=True)
class CollectiveExpectations:
    sz: float
    sz2: float
    sx2: float
    sy2: float
    sxsy_anti: float = 0.0


@dataclass(frozen=True)
class GroundSolution:
    energy: float
    state: DickeState
    gap: float
    degenerate: bool


def _ladder2(n: int) -> np.ndarray:
    """<M+2|S_+^2|M> for M = -S .. S-2."""
    s = n / 2
    m = np.arange(n - 1) - s
    # paired so that the product is exactly symmetric under M -> -M-2
    return np.sqrt((s - m) * (s + m + 2)) * np.sqrt((s - m - 1) * (s + m + 1))


def build_hamiltonian(params: ModelParams) -> BandedHamiltonian:
    n, g, h = params.n_particles, params.gamma, params.h
    s = n / 2
    sign = params.coupling.sign
    m = np.arange(n + 1) - s
    diag = -(sign / n) * ((1 + g) / 2) * (s * (s + 1) - m * m) - h * m
    off = -(sign / n) * ((1 - g) / 4) * _ladder2(n)
    return BandedHamiltonian(n, diag, off)


def _sector_levels(ham: BandedHamiltonian, parity: int, count: int):
    idx, d, e = ham.sector(parity)
    if idx.size == 0:
        return idx, np.empty(0), np.empty((0, 0))
    count = min(count, idx.size)
    if idx.size == 1:
        return idx, d.copy(), np.ones((1, 1))
    w, v = eigh_tridiagonal(d, e, select="i", select_range=(0, count - 1))
    return idx, w, v


def _canonical_sign(amps: np.ndarray) -> np.ndarray:
    pivot = np.argmax(np.abs(amps))
    return -amps if amps[pivot] < 0 else amps


def lowest_levels(ham: BandedHamiltonian, count: int = 2) -> np.ndarray:
    """The ``count`` smallest eigenvalues over both parity sectors."""
    levels = np.concatenate([_sector_levels(ham, p, count)[1] for p in (0, 1)])
    return np.sort(levels)[:count]


class _ExactSector:
    """One tridiagonal parity block held in ``decimal`` arithmetic.

    Eigenvalues are located with Sturm counts for bracketing and a Newton step
    on det(T - x) for fast convergence.
    """

    def __init__(self, params: ModelParams, parity: int, ctx: decimal.Context):
        D = decimal.Decimal
        self.ctx = ctx
        n = params.n_particles
        with decimal.localcontext(ctx):
            g, h = D(params.gamma), D(params.h)
            # 2S = n and 2M = m keep every factor an exact integer
            m2 = [2 * i - n for i in range((n - parity) % 2, n + 1, 2)]
            pref_d = -D(params.coupling.sign) * (1 + g) / (2 * n)
            self.diag = [pref_d * D(n * (n + 2) - m * m) / 4 - h * m / 2 for m in m2]
            pref_o = (1 - g) / (4 * n)
            self.off_sq = [
                pref_o * pref_o * D((n - m) * (n + m + 4) * (n - m - 2) * (n + m + 2)) / 16
                for m in m2[:-1]
            ]

    def sturm(self, x):
        """(number of eigenvalues below x, d/dx log|det(T - x)|)."""
        with decimal.localcontext(self.ctx) as ctx:
            tiny = decimal.Decimal(10) ** (-(ctx.prec + 20))
            q = self.diag[0] - x
            dq = decimal.Decimal(-1)
            neg = int(q < 0)
            logd = dq / q if q else decimal.Decimal(0)
            for a, b2 in zip(self.diag[1:], self.off_sq):
                if q == 0:
                    q = tiny
                r = b2 / q
                dq = -1 + r * dq / q
                q = a - x - r
                neg += q < 0
                if q:
                    logd += dq / q
            return neg, logd

    def eigenvalue(self, j: int, guess, width, tol):
        """The j-th smallest eigenvalue (0-based) to absolute accuracy ``tol``."""
        D = decimal.Decimal
        with decimal.localcontext(self.ctx):
            x = D(guess)
            width = D(width)
            lo, hi = x - width, x + width
            while self.sturm(lo)[0] > j:
                lo -= width
                width *= 4
            while self.sturm(hi)[0] <= j:
                hi += width
                width *= 4
            while hi - lo > tol:
                count, logd = self.sturm(x)
                if count > j:
                    hi = min(hi, x)
                else:
                    lo = max(lo, x)
                step = 1 / logd if logd else None
                if step is not None and abs(step) < tol:
                    # accept only if the j-th root is really bracketed here
                    if self.sturm(x - tol)[0] <= j < self.sturm(x + tol)[0]:
                        return x - step
                    step = None
                x_new = x - step if step is not None else None
                if x_new is None or not lo < x_new < hi:
                    x_new = (lo + hi) / 2
                x = x_new
            return (lo + hi) / 2


def _refined_gap(params: ModelParams, ham: BandedHamiltonian) -> float:
    """Gap between the two lowest levels, resolved below double-precision rounding.

    Tunnelling splittings in the broken phase shrink exponentially with N and
    fall far below the rounding error of the energies themselves. Returns 0.0
    when the gap stays unresolved at MAX_GAP_DIGITS.
    """
    scale = max(1.0, ham.norm())
    guesses = []
    for parity in (0, 1):
        _, w, _ = _sector_levels(ham, parity, 2)
        guesses.extend((parity, j, float(x)) for j, x in enumerate(w))
    guesses = sorted(guesses, key=lambda item: item[2])[:2]
    width = 1e-9 * scale
    digits = 40
    while True:
        ctx = decimal.Context(prec=digits + 20)
        tol = decimal.Decimal(scale).scaleb(-digits, ctx)
        sectors = {}
        levels = []
        for parity, j, x in guesses:
            if parity not in sectors:
                sectors[parity] = _ExactSector(params, parity, ctx)
            levels.append(sectors[parity].eigenvalue(j, x, width, tol))
        gap = abs(levels[1] - levels[0])
        if gap > tol * 10**12:
            return float(gap)
        if digits >= MAX_GAP_DIGITS:
            return 0.0
        digits *= 2


def _select_ground(ham: BandedHamiltonian) -> GroundSolution:
    n = ham.n_particles
    scale = max(1.0, ham.norm())
    tol = DEGENERACY_TOL * scale
    sectors = {p: _sector_levels(ham, p, 3) for p in (0, 1)}
    e0 = min(w[0] for _, w, _ in sectors.values() if w.size)
    all_levels = np.sort(np.concatenate([w for _, w, _ in sectors.values()]))
    gap = float(max(all_levels[1] - all_levels[0], 0.0)) if all_levels.size > 1 else np.inf

    # degenerate ground level: prefer even boson parity, then the largest <S_z>
    parity = 0 if sectors[0][1].size and sectors[0][1][0] - e0 <= tol else 1
    idx, w, v = sectors[parity]
    cluster = np.flatnonzero(w - e0 <= tol)
    degenerate = len(cluster) > 1 or (
        sectors[1 - parity][1].size > 0 and sectors[1 - parity][1][0] - e0 <= tol
    )
    if len(cluster) == 1:
        vec = v[:, cluster[0]]
    else:
        sub = v[:, cluster]
        m = idx - n / 2
        sz = sub.T @ (m[:, None] * sub)
        _, rot = np.linalg.eigh(sz)
        vec = sub @ rot[:, -1]
        vec /= np.linalg.norm(vec)
    amps = np.zeros(n + 1)
    amps[idx] = vec
    amps = _canonical_sign(amps)
    energy = float(w[cluster].min())
    resid = np.linalg.norm(ham.matvec(amps) - energy * amps)
    if resid > RESIDUAL_TOL * scale:
        raise SolverFailure(f"ground-state residual {resid:.3e} exceeds {RESIDUAL_TOL * scale:.3e}")
    return GroundSolution(energy, DickeState(n, amps), gap, degenerate)


def ground_eigenpair(ham: BandedHamiltonian) -> tuple[float, DickeState]:
    """Lowest eigenvalue and a real unit eigenvector.

    When the ground level is degenerate (relative to the matrix scale) the even
    boson-parity representative is returned; within a degenerate parity sector
    the state with the largest <S_z> is taken, i.e. the one an infinitesimal
    field along +z would select.
    """
    sol = _select_ground(ham)
    return sol.energy, sol.state


def solve_ground(params: ModelParams) -> GroundSolution:
    """Ground state, gap and degeneracy flag at one parameter point.

    Antiferro points with h < 0 are solved at |h| and reflected, so h -> -h
    symmetry holds exactly rather than to rounding.
    """
    flip = params.coupling is Coupling.ANTIFERRO and params.h < 0
    if flip:
        params = params.with_h(-params.h)
    ham = build_hamiltonian(params)
    sol = _select_ground(ham)
    gap = _finish_gap(params, ham, sol.gap)
    state = sol.state.reflected() if flip else sol.state
    return GroundSolution(sol.energy, state, gap, sol.degenerate)


def energy_gap(params: ModelParams) -> float:
    """Difference of the two lowest levels of the full (N+1)-dimensional matrix."""
    if params.coupling is Coupling.ANTIFERRO and params.h < 0:
        params = params.with_h(-params.h)
    ham = build_hamiltonian(params)
    levels = lowest_levels(ham, 2)
    return _finish_gap(params, ham, float(levels[1] - levels[0]))


def _finish_gap(params: ModelParams, ham: BandedHamiltonian, gap: float) -> float:
    # gamma = 1 is diagonal and its double-precision levels are already exact
    if params.gamma != 1.0 and gap < GAP_RESOLVE_TOL * max(1.0, ham.norm()):
        return _refined_gap(params, ham)
    return max(gap, 0.0)


def energy_expectation(ham: BandedHamiltonian, state: DickeState) -> float:
    a = state.amplitudes
    return float(a @ ham.matvec(a))


def collective_expectations(state: DickeState) -> CollectiveExpectations:
    n = state.n_particles
    s = n / 2
    a = state.amplitudes
    m = state.m_values
    w = a * a
    sz = float(w @ m)
    sz2 = float(w @ (m * m))
    # p = <(S_+^2 + S_-^2)/2> = <S_+^2> for real amplitudes
    p = float(a[2:] @ (_ladder2(n) * a[:-2]))
    casimir = s * (s + 1)
    return CollectiveExpectations(
        sz=sz,
        sz2=sz2,
        sx2=(casimir - sz2 + p) / 2,
        sy2=(casimir - sz2 - p) / 2,
        sxsy_anti=0.0,
    )
