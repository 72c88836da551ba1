"""Model parameters, phase labels and the closed-form pieces of the LMG model.

The Hamiltonian is

    H = -(lambda/N) (S_x^2 + gamma S_y^2) - h_z S_z

and everything here is expressed in units of |lambda|, so the coupling is
reduced to its sign and the field to h = h_z/|lambda|.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, InvalidInput

#: Default distance from |tanh 2x| = 1 at which the HP series is refused.
HP_EPS = 1e-6


class Coupling(enum.Enum):
    FERRO = "ferro"
    ANTIFERRO = "antiferro"

    @property
    def sign(self) -> int:
        return 1 if self is Coupling.FERRO else -1

    @classmethod
    def parse(cls, value) -> "Coupling":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise InvalidInput(f"unknown coupling {value!r}; expected 'ferro' or 'antiferro'") from None


class PhaseLabel(enum.Enum):
    FERRO_SYMMETRIC = "ferro_symmetric"
    FERRO_BROKEN = "ferro_broken"
    FERRO_CRITICAL = "ferro_critical"
    ANTIFERRO_POSITIVE = "antiferro_positive"
    ANTIFERRO_NEGATIVE = "antiferro_negative"
    ANTIFERRO_CRITICAL = "antiferro_critical"


@dataclass(frozen=True)
class ModelParams:
    """One point of the phase diagram: coupling sign, anisotropy, field and size."""

    coupling: Coupling
    gamma: float
    h: float
    n_particles: int

    def __post_init__(self):
        object.__setattr__(self, "coupling", Coupling.parse(self.coupling))
        if not (0.0 <= self.gamma <= 1.0):
            raise InvalidInput(f"gamma must lie in [0, 1], got {self.gamma}")
        if not math.isfinite(self.h):
            raise InvalidInput(f"h must be finite, got {self.h}")
        if int(self.n_particles) != self.n_particles or self.n_particles < 2:
            raise InvalidInput(f"n_particles must be an integer >= 2, got {self.n_particles}")
        object.__setattr__(self, "n_particles", int(self.n_particles))
        if self.coupling is Coupling.FERRO and self.h < 0:
            raise InvalidInput("ferromagnetic coupling is defined for h >= 0 only")

    @property
    def spin(self) -> float:
        return self.n_particles / 2

    def with_h(self, h: float) -> "ModelParams":
        return ModelParams(self.coupling, self.gamma, h, self.n_particles)

    def with_n(self, n: int) -> "ModelParams":
        return ModelParams(self.coupling, self.gamma, self.h, n)


def classify_phase(params: ModelParams) -> PhaseLabel:
    h = params.h
    if params.coupling is Coupling.FERRO:
        if h == 1.0:
            return PhaseLabel.FERRO_CRITICAL
        return PhaseLabel.FERRO_SYMMETRIC if h > 1.0 else PhaseLabel.FERRO_BROKEN
    if h == 0.0:
        return PhaseLabel.ANTIFERRO_CRITICAL
    return PhaseLabel.ANTIFERRO_POSITIVE if h > 0.0 else PhaseLabel.ANTIFERRO_NEGATIVE


def tanh_2x(params: ModelParams, eps: float = HP_EPS) -> float:
    """Squeezing angle of the Holstein-Primakoff ground state, as tanh(2x).

    Ferro uses the symmetric (h > 1) or broken (0 <= h < 1) branch; antiferro
    depends on |h| only. Raises DomainError when |tanh 2x| >= 1 - eps, where the
    boson series no longer converges (ferro h -> 1, ferro gamma = 1 below h = 1,
    antiferro gamma = 0 at h = 0).
    """
    g, h = params.gamma, params.h
    if params.coupling is Coupling.FERRO:
        if h == 1.0:
            raise DomainError("tanh 2x = -1 at the ferromagnetic critical point h = 1")
        if h > 1.0:
            value = -(1.0 - g) / (2.0 * h - 1.0 - g)
        else:
            value = -(h * h - g) / (2.0 - h * h - g)
    else:
        value = (1.0 - g) / (1.0 + g + 2.0 * abs(h))
    if not abs(value) < 1.0 - eps:
        raise DomainError(
            f"|tanh 2x| = {abs(value):.12g} is within {eps:g} of 1 at {params}; HP series diverges"
        )
    return value


def isotropic_level_energy(params: ModelParams, m: float) -> float:
    """Energy of |S=N/2, M=m> for gamma = 1, in units of |lambda|."""
    s = params.spin
    return -(params.coupling.sign / params.n_particles) * (s * (s + 1) - m * m) - params.h * m


def isotropic_ground_M(params: ModelParams, tol: float = 1e-12) -> float:
    """Magnetization M of the exact gamma = 1 ground state |N/2, M>.

    M is an integer for even N and a half-integer for odd N. In the ferro broken
    phase the lowest level sits at the allowed M closest to hN/2, which is the
    floor of hN/2 except past a level crossing; candidates around the floor are
    compared by energy and exact ties go to the larger M.
    """
    if params.gamma != 1.0:
        raise InvalidInput("isotropic_ground_M requires gamma = 1")
    n, h = params.n_particles, params.h
    s = n / 2
    if params.coupling is Coupling.ANTIFERRO:
        if h == 0.0:
            raise DomainError("antiferro isotropic ground state is degenerate at h = 0")
        return s if h > 0 else -s
    if h >= 1.0:
        return s
    # allowed values are s - k, k = 0..n
    k_floor = math.ceil(s - h * s)
    candidates = [s - k for k in range(max(0, k_floor - 1), min(n, k_floor + 1) + 1)]
    energies = [isotropic_level_energy(params, m) for m in candidates]
    scale = max(1.0, max(abs(e) for e in energies))
    e_min = min(energies)
    return max(m for m, e in zip(candidates, energies) if e - e_min <= tol * scale)


def order_parameter_reference(params: ModelParams) -> float:
    """Thermodynamic-limit order parameter used as a reference curve.

    Ferro: 1 - 2<S_z>/N, i.e. 0 above h = 1 and 1 - h below. Antiferro: 2<S_z>/N = sign(h).
    """
    h = params.h
    if params.coupling is Coupling.FERRO:
        return 0.0 if h > 1.0 else 1.0 - h
    if h == 0.0:
        raise DomainError("antiferro order parameter is undefined at h = 0")
    return 1.0 if h > 0 else -1.0
