"""Domain types shared across the spectrum, cycle and sweep layers.

Conventions fixed here once:
  H = (bigomega/2) sigma_z + omega a^dag a + g sigma_x (a^dag + a), hbar = 1.
The sigma_z prefactor is bigomega/2 so the decoupled gap equals bigomega,
which is what the closed-form approximate levels assume.  Energies are
reported in whichever unit the caller declares (the library never rescales;
the tag only travels with the data).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import ParameterError

# Levels closer than this are treated as degenerate: derivative and
# condition-solver operations refuse, because the isoenergetic integrand
# has the gap in its denominator.
DEGENERACY_THRESHOLD = 1e-8

# Quadrature additionally refuses strokes that come within this factor of
# the threshold; at 10x the computed exchange is still noise-dominated.
REFUSAL_FACTOR = 10.0


class Knob(str, enum.Enum):
    """Which model parameter a cycle varies."""

    G = "g"
    OMEGA = "omega"
    BIGOMEGA = "bigomega"


class Method(str, enum.Enum):
    EXACT = "exact"
    APPROX = "approx"


@dataclass(frozen=True)
class ModelParams:
    """One point in (g, omega, bigomega) space, hbar = 1.

    unit is a free-form tag for the energy unit the numbers are expressed
    in ("bigomega" for g- and omega-studies, "omega" for bigomega-studies);
    it is carried through to outputs but never interpreted.
    """

    g: float
    omega: float
    bigomega: float
    unit: str = "bigomega"

    def __post_init__(self):
        if not (self.g >= 0.0):
            raise ParameterError(f"g must be >= 0, got {self.g}")
        if not (self.omega > 0.0):
            raise ParameterError(f"omega must be > 0, got {self.omega}")
        if not (self.bigomega >= 0.0):
            raise ParameterError(f"bigomega must be >= 0, got {self.bigomega}")

    def replace(self, **kw) -> "ModelParams":
        d = {"g": self.g, "omega": self.omega, "bigomega": self.bigomega,
             "unit": self.unit}
        d.update(kw)
        return ModelParams(**d)

    def value_of(self, knob: Knob) -> float:
        return getattr(self, Knob(knob).value)

    def with_value(self, knob: Knob, x: float) -> "ModelParams":
        return self.replace(**{Knob(knob).value: x})


@dataclass(frozen=True)
class TruncationPolicy:
    """Adaptive boson-cutoff policy for the exact eigensolves.

    The solve starts at n_max, grows by growth_step until both returned
    eigenvalues move by less than tol, and gives up at hard_cap.
    """

    n_max: int = 40
    growth_step: int = 20
    tol: float = 1e-10
    hard_cap: int = 400

    def __post_init__(self):
        if self.n_max < 1:
            raise ParameterError("n_max must be >= 1")
        if self.growth_step < 1:
            raise ParameterError("growth_step must be >= 1")
        if not (self.tol > 0.0):
            raise ParameterError("tol must be > 0")
        if self.hard_cap < self.n_max:
            raise ParameterError("hard_cap must be >= n_max")


@dataclass(frozen=True)
class LevelPair:
    """The two lowest eigenenergies at one parameter point.

    n_used is the boson cutoff that produced them (0 for the closed-form
    route, which needs none).  converged is always True for the closed
    form; for the exact route it reports whether the adaptive loop met
    tol before hard_cap.
    """

    e0: float
    e1: float
    method: Method
    n_used: int = 0
    converged: bool = True

    def __post_init__(self):
        if self.e1 < self.e0:
            raise ParameterError("level pair out of order: e1 < e0")

    @property
    def gap(self) -> float:
        return self.e1 - self.e0


@dataclass(frozen=True)
class EigenSystem:
    """Lowest-k exact eigenpairs with product-basis vectors.

    states[i] lives in the ordered basis |down,0>,|up,0>,|down,1>,|up,1>,...
    (TLS fast index), assembled from the parity-sector vectors.
    parity_labels[i] is the sector (+1 or -1) the level came from.
    """

    params: ModelParams
    energies: tuple[float, ...]
    states: tuple = field(repr=False, default=())
    parity_labels: tuple[int, ...] = ()
    n_used: int = 0
