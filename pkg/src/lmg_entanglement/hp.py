"""Holstein-Primakoff ground state and its closed-form correlators.

The approximate ground state is a squeezed boson vacuum truncated to the
N + 1 states of the spin, expanded in even Fock states |2n>, n = 0..[N/2]:

    c_{2n} ~ (-1)^n sqrt((2n-1)!!/(2n)!!) t^n,   t = tanh x.

A Fock state |k> corresponds to the Dicke state M = N/2 - k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dicke import DickeState
from .entanglement import PairCorrelators
from .errors import DomainError
from .model import HP_EPS, ModelParams, tanh_2x

TRUNCATION_TOL = 1e-8


@dataclass(frozen=True)
class HpSeries:
    n_particles: int
    t: float
    coeffs: np.ndarray
    norm_sq: float
    tail_weight: float

    @property
    def truncation_warning(self) -> bool:
        return self.tail_weight > TRUNCATION_TOL

    @property
    def n_max(self) -> int:
        return self.n_particles // 2


def half_angle(tanh2x: float) -> float:
    """tanh x from tanh 2x, keeping the sign."""
    if not abs(tanh2x) < 1:
        raise DomainError(f"|tanh 2x| = {abs(tanh2x)} must be < 1")
    return tanh2x / (1.0 + math.sqrt(1.0 - tanh2x * tanh2x))


def double_factorial_ratios(n_max: int) -> np.ndarray:
    """r_n = (2n-1)!!/(2n)!! for n = 0..n_max via r_n = r_{n-1} (2n-1)/(2n)."""
    n = np.arange(1, n_max + 1)
    return np.concatenate(([1.0], np.cumprod((2 * n - 1) / (2 * n))))


def series_from_t(n_particles: int, t: float) -> HpSeries:
    if not abs(t) < 1:
        raise DomainError(f"|tanh x| = {abs(t)} must be < 1")
    n_max = n_particles // 2
    n = np.arange(1, n_max + 1)
    # unnormalized c_{2n}, built by ratios so nothing overflows
    raw = np.concatenate(([1.0], np.cumprod(-t * np.sqrt((2 * n - 1) / (2 * n)))))
    norm_sq = float(raw @ raw)
    tail = float(raw[-1] ** 2)
    return HpSeries(n_particles, float(t), raw / math.sqrt(norm_sq), norm_sq, tail)


def hp_coefficients(params: ModelParams, eps: float = HP_EPS) -> HpSeries:
    return series_from_t(params.n_particles, half_angle(tanh_2x(params, eps)))


def hp_correlators(series: HpSeries) -> PairCorrelators:
    """Pair correlators of the HP state from the boson-number sums."""
    big_n = series.n_particles
    c = series.coeffs
    k = 2.0 * np.arange(c.size)  # boson number 2n
    weight = c * c
    pairs = big_n * (big_n - 1)
    occupied = float(weight @ (k * (big_n - k)))
    # <2n-2| ... |2n> transition term, n >= 1
    kk = k[1:]
    cross = float(
        (np.sqrt((big_n - kk + 2) * (big_n - kk + 1) * kk * (kk - 1)) * c[:-1] * c[1:]).sum()
    )
    return PairCorrelators(
        m_z=1.0 - 2.0 / big_n * float(weight @ k),
        c_xx=2.0 / pairs * (cross + occupied),
        c_yy=-2.0 / pairs * (cross - occupied),
        c_zz=1.0 - 4.0 / pairs * occupied,
    )


def hp_state_in_dicke(series: HpSeries) -> DickeState:
    big_n = series.n_particles
    amps = np.zeros(big_n + 1)
    # Dicke index of M = N/2 - 2n is N - 2n
    amps[big_n - 2 * np.arange(series.coeffs.size)] = series.coeffs
    return DickeState(big_n, amps)
