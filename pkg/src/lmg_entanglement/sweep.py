"""Parameter sweeps, finite-size scaling, numerical derivatives and CSV output."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from . import dicke, hp
from .entanglement import (
    Method,
    PairCorrelators,
    antiferro_isotropic_critical,
    entanglement,
    ghz_state,
    isotropic_correlators,
    isotropic_entanglement,
    pair_correlators,
)
from .errors import ConfigError, DomainError, GridError
from .model import Coupling, ModelParams, isotropic_ground_M, isotropic_level_energy

CSV_HEADER = (
    "coupling", "gamma", "h", "n", "method", "m_z", "c_xx", "c_yy", "c_zz",
    "q_global", "e_g", "gap", "ground_energy", "flags",
)

_METHOD_ORDER = {Method.DICKE: 0, Method.HP: 1, Method.ISOTROPIC_EXACT: 2}


def parse_method(value) -> Method:
    if isinstance(value, Method):
        return value
    aliases = {"dicke": Method.DICKE, "ed": Method.DICKE, "hp": Method.HP,
               "iso": Method.ISOTROPIC_EXACT, "isotropic": Method.ISOTROPIC_EXACT}
    try:
        return aliases[str(value).strip().lower()]
    except KeyError:
        raise ConfigError(f"unknown method {value!r}; expected dicke, hp or iso") from None


def h_grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive uniform grid with values rounded so that e.g. h = 1 is hit exactly."""
    if not step > 0:
        raise ConfigError("h step must be positive")
    if stop < start:
        raise ConfigError("h stop must not be below h start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) + 0.0 for i in range(count)]


@dataclass
class SweepSpec:
    coupling: Coupling
    gamma: float
    n_particles: list[int]
    h_values: list[float]
    methods: list[Method]
    output: str | None = None

    def __post_init__(self):
        try:
            self.coupling = Coupling.parse(self.coupling)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if isinstance(self.n_particles, int):
            self.n_particles = [self.n_particles]
        self.n_particles = [int(n) for n in self.n_particles]
        self.h_values = [float(h) for h in self.h_values]
        self.methods = [parse_method(m) for m in self.methods]
        if not self.methods:
            raise ConfigError("at least one method is required")
        if not self.n_particles or any(n < 2 for n in self.n_particles):
            raise ConfigError("particle numbers must be >= 2")
        if not self.h_values:
            raise ConfigError("empty h grid")
        if not 0.0 <= self.gamma <= 1.0:
            raise ConfigError("gamma must lie in [0, 1]")
        if Method.ISOTROPIC_EXACT in self.methods and self.gamma != 1.0:
            raise ConfigError("the isotropic exact method requires gamma = 1")
        if self.coupling is Coupling.FERRO and min(self.h_values) < 0:
            raise ConfigError("ferromagnetic sweeps need h >= 0")

    @classmethod
    def from_range(cls, coupling, gamma, n_particles, start, stop, step, methods, output=None):
        return cls(coupling, gamma, n_particles, h_grid(start, stop, step), methods, output)


@dataclass
class SweepRecord:
    coupling: str
    gamma: float
    h: float
    n_particles: int
    method: str
    m_z: float | None = None
    c_xx: float | None = None
    c_yy: float | None = None
    c_zz: float | None = None
    q_global: float | None = None
    e_g: float | None = None
    gap: float | None = None
    ground_energy: float | None = None
    flags: list[str] = field(default_factory=list)

    def row(self) -> list[str]:
        values = [getattr(self, f.name) for f in fields(self)]
        return [_fmt(v) for v in values]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, list):
        return "|".join(value)
    if isinstance(value, float):
        return format(value + 0.0, ".15g")
    return str(value)


def _fill(rec: SweepRecord, pc: PairCorrelators, method: Method) -> None:
    res = entanglement(pc, method)
    rec.m_z, rec.c_xx, rec.c_yy, rec.c_zz = pc.m_z, pc.c_xx, pc.c_yy, pc.c_zz
    rec.q_global, rec.e_g = res.q_global, res.e_g


def evaluate(params: ModelParams, method: Method) -> SweepRecord:
    """One record for one parameter point and method."""
    rec = SweepRecord(params.coupling.value, params.gamma, params.h, params.n_particles, method.value)
    if method is Method.DICKE:
        sol = dicke.solve_ground(params)
        _fill(rec, pair_correlators(sol.state), method)
        rec.gap, rec.ground_energy = sol.gap, sol.energy
        if sol.degenerate:
            rec.flags.append("degenerate")
    elif method is Method.HP:
        try:
            series = hp.hp_coefficients(params)
        except DomainError:
            rec.flags.append("hp_domain")
            return rec
        _fill(rec, hp.hp_correlators(series), method)
        if series.truncation_warning:
            rec.flags.append("hp_truncation")
    elif method is Method.ISOTROPIC_EXACT:
        _evaluate_isotropic(params, rec)
    else:
        raise ConfigError(f"method {method} cannot be swept")
    return rec


def _evaluate_isotropic(params: ModelParams, rec: SweepRecord) -> None:
    n, s = params.n_particles, params.n_particles / 2
    levels = sorted(isotropic_level_energy(params, s - k) for k in range(n + 1))
    rec.ground_energy = levels[0]
    rec.gap = levels[1] - levels[0]
    if params.coupling is Coupling.ANTIFERRO and params.h == 0.0:
        res = antiferro_isotropic_critical(n)
        pc = pair_correlators(ghz_state(n))
        rec.flags.append("ghz")
    else:
        m = isotropic_ground_M(params)
        res = isotropic_entanglement(m, n)
        pc = isotropic_correlators(m, n)
        if rec.gap <= 1e-12 * max(1.0, abs(levels[0])):
            rec.flags.append("degenerate")
    rec.m_z, rec.c_xx, rec.c_yy, rec.c_zz = pc.m_z, pc.c_xx, pc.c_yy, pc.c_zz
    rec.q_global, rec.e_g = res.q_global, res.e_g


def _work(item):
    params, method = item
    return evaluate(params, method)


def _sort_key(rec: SweepRecord):
    return (rec.n_particles, rec.h, _METHOD_ORDER[Method(rec.method)])


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[SweepRecord]:
    """Evaluate every method at every (N, h) point; records come back sorted by (N, h, method)."""
    items = [
        (ModelParams(spec.coupling, spec.gamma, h, n), m)
        for n in spec.n_particles
        for h in spec.h_values
        for m in spec.methods
    ]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_work, items, chunksize=max(1, len(items) // (4 * jobs))))
    else:
        records = [_work(item) for item in items]
    records.sort(key=_sort_key)
    if spec.output:
        write_csv(records, spec.output)
    return records


def scaling_study(coupling, gamma: float, h_star: float, n_list) -> list[SweepRecord]:
    n_list = list(n_list)
    if not n_list:
        raise ConfigError("empty particle-number list")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ConfigError("particle numbers must be strictly ascending")
    return [evaluate(ModelParams(coupling, gamma, h_star, n), Method.DICKE) for n in n_list]


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.row())
    return buf.getvalue()


def write_csv(records, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(records_to_csv(records))


def read_csv(path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


@dataclass(frozen=True)
class Derivative:
    h: np.ndarray
    slope: np.ndarray
    h_star: float | None = None
    left_slope: float | None = None
    right_slope: float | None = None


def finite_difference_derivative(h_values, y_values, h_star: float | None = None,
                                 rtol: float = 1e-6) -> Derivative:
    """Central differences inside, one-sided at the ends, on a uniform grid.

    With ``h_star`` on the grid, also returns the backward and forward one-sided
    slopes there, which differ at a cusp.
    """
    h = np.asarray(h_values, dtype=float)
    y = np.asarray(y_values, dtype=float)
    if h.shape != y.shape or h.ndim != 1:
        raise GridError("h and y must be 1-d arrays of equal length")
    if h.size < 3:
        raise GridError("need at least three points")
    steps = np.diff(h)
    step = steps.mean()
    if not np.all(steps > 0):
        raise GridError("h must be strictly increasing")
    if np.max(np.abs(steps - step)) > rtol * step:
        raise GridError("h grid is not uniform")
    slope = np.gradient(y, step, edge_order=1)
    left = right = None
    if h_star is not None:
        hits = np.flatnonzero(np.abs(h - h_star) <= rtol * step)
        if hits.size != 1:
            raise GridError(f"h* = {h_star} is not a grid point")
        i = int(hits[0])
        left = float((y[i] - y[i - 1]) / step) if i > 0 else None
        right = float((y[i + 1] - y[i]) / step) if i < h.size - 1 else None
    return Derivative(h, slope, h_star, left, right)


# one-command recipes for the published curves
RECIPES = {
    "fig1a": dict(kind="sweep", coupling="ferro", gamma=0.5, n=[50, 500],
                  h=(0.0, 2.0, 0.01), methods=["dicke", "hp"]),
    "fig1b": dict(kind="sweep", coupling="ferro", gamma=0.0, n=[50, 500],
                  h=(0.0, 2.0, 0.01), methods=["dicke", "hp"]),
    "fig2": dict(kind="scale", coupling="ferro", gamma=0.5, h_star=1.0,
                 n=list(range(50, 501, 50))),
    "fig3a": dict(kind="sweep", coupling="antiferro", gamma=0.5, n=[50, 200],
                  h=(0.0, 2.0, 0.01), methods=["dicke", "hp"]),
    "fig3b": dict(kind="sweep", coupling="antiferro", gamma=0.0, n=[50, 200],
                  h=(0.0, 2.0, 0.01), methods=["dicke", "hp"]),
    "fig4": dict(kind="scale", coupling="antiferro", gamma=[0.0, 0.5, 0.75], h_star=0.0,
                 n=list(range(20, 201, 10))),
    "fig5": dict(kind="sweep", coupling="ferro", gamma=1.0, n=[10000],
                 h=(0.0, 2.0, 0.01), methods=["iso"]),
}


def run_recipe(name: str, jobs: int = 1) -> list[SweepRecord]:
    try:
        recipe = RECIPES[name]
    except KeyError:
        raise ConfigError(f"unknown recipe {name!r}; choose from {sorted(RECIPES)}") from None
    if recipe["kind"] == "scale":
        gammas = recipe["gamma"] if isinstance(recipe["gamma"], list) else [recipe["gamma"]]
        out = []
        for g in gammas:
            out.extend(scaling_study(recipe["coupling"], g, recipe["h_star"], recipe["n"]))
        return out
    spec = SweepSpec.from_range(recipe["coupling"], recipe["gamma"], recipe["n"],
                                *recipe["h"], recipe["methods"])
    return run_sweep(spec, jobs=jobs)
