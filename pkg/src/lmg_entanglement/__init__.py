"""Multiparticle entanglement of the Lipkin-Meshkov-Glick model.

Three routes to the ground-state correlators are provided: exact
diagonalization in the Dicke basis (:mod:`.dicke`), the Holstein-Primakoff
series (:mod:`.hp`) and closed forms for isotropic coupling
(:mod:`.entanglement`). :mod:`.oracle` is a brute-force 2^N reference.
"""
from .dicke import (
    BandedHamiltonian,
    CollectiveExpectations,
    DickeState,
    build_hamiltonian,
    collective_expectations,
    energy_gap,
    ground_eigenpair,
    solve_ground,
)
from .entanglement import (
    EntanglementResult,
    Method,
    PairCorrelators,
    antiferro_isotropic_critical,
    generalized_global_entanglement,
    global_entanglement,
    isotropic_entanglement,
    pair_correlators,
    pair_correlators_from_collective,
    state_entanglement,
)
from .errors import (
    ConfigError,
    ConsistencyError,
    DomainError,
    GridError,
    InvalidInput,
    InvalidSites,
    SizeError,
    SolverFailure,
)
from .hp import HpSeries, hp_coefficients, hp_correlators, hp_state_in_dicke
from .model import (
    Coupling,
    ModelParams,
    PhaseLabel,
    classify_phase,
    isotropic_ground_M,
    order_parameter_reference,
    tanh_2x,
)

__version__ = "0.1.0"
