"""Isoenergetic four-stroke cycle on the two lowest Rabi levels.

Cycle layout (xi is the varied parameter, alpha = xi3/xi2):

    1 -> 2  isoenergetic stroke, starts in the ground state; the endpoint
            solves E1(xi2) = E0(xi1) (maximal stroke: pure excited at exit)
    2 -> 3  adiabat, xi3 = alpha * xi2, occupation frozen in level 1
    3 -> 4  isoenergetic stroke back, E0(xi4) = E1(xi3)
    4 -> 1  adiabat closing the cycle

Search sides per knob: the coupling g expands upward and compresses
downward; the resonator frequency omega expands downward and compresses
upward (E1 increases with omega).  The TLS frequency expands UPWARD and
compresses DOWNWARD: dE0/dOmega = <sigma_z>/2 < 0 means every Omega below
the start point has E1 above E0(xi1), so no root exists on the low side;
the expansion root sits on E1's falling branch past its avoided-crossing
maximum near Omega ~ omega.  (Cycles built this way close and satisfy
every identity; the other direction has no solution at all.)

Energy exchange along an isoenergetic stroke from xi_k to xi_l, starting
in level s with E* = E_s(xi_k):

    Q = -( E* ln|gap(xi_l)/gap(xi_k)| + int_[xi_k,xi_l] (E0 E1' - E1 E0')/(E0 - E1) dxi )

signed so that positive means energy enters the substance.  Expansions
come out positive, compressions negative; q_in/q_out magnitudes and
eta = 1 - q_out/q_in follow.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import scipy.integrate
from scipy.optimize import brentq

from .errors import (CapabilityError, ConvergenceError, CycleError,
                     DegeneracyError, IntegrationError, ParameterError,
                     RabiError, RangeError)
from .model import (DEGENERACY_THRESHOLD, REFUSAL_FACTOR, Knob, LevelPair,
                    Method, ModelParams, TruncationPolicy)
from .spectrum import _approx_derivative, _exact_bundle, level_pair

# Which way each stroke moves the varied parameter (+1 = up).
EXPANSION_SIDE = {Knob.G: +1, Knob.OMEGA: -1, Knob.BIGOMEGA: +1}
COMPRESSION_SIDE = {k: -s for k, s in EXPANSION_SIDE.items()}

# Isoenergetic-condition residual bound promised by the solvers.
_RESIDUAL_TOL = 1e-10

_BRACKET_FACTOR = 1.5
_MAX_BRACKET_STEPS = 80

# range_probe scan windows per knob, in declared units.
_PROBE_WINDOWS = {Knob.G: (0.0, 4.0), Knob.OMEGA: (0.05, 10.0)}
_BIGOMEGA_WINDOW = (0.5, 6.0)


class Direction(str, enum.Enum):
    EXPANSION = "expansion"
    COMPRESSION = "compression"


@dataclass(frozen=True)
class CycleSpec:
    """Full specification of one cycle.

    fixed supplies the two held parameters (its component for the varied
    knob is ignored; xi1 replaces it).  alpha rules: >= 1 for the coupling
    knob, in (0, 1] otherwise; alpha = 1 is the trivial closed cycle.
    """

    varied: Knob
    xi1: float
    alpha: float
    fixed: ModelParams
    method: Method = Method.EXACT
    policy: TruncationPolicy = TruncationPolicy()

    def __post_init__(self):
        object.__setattr__(self, "varied", Knob(self.varied))
        object.__setattr__(self, "method", Method(self.method))
        if self.varied == Knob.G:
            if not self.alpha >= 1.0:
                raise ParameterError(
                    f"alpha must be >= 1 for the coupling knob, got {self.alpha}")
        else:
            if not (0.0 < self.alpha <= 1.0):
                raise ParameterError(
                    f"alpha must be in (0, 1] for {self.varied.value}, "
                    f"got {self.alpha}")
        if self.varied == Knob.BIGOMEGA and self.method == Method.APPROX:
            raise CapabilityError(
                "closed-form levels are not used for the TLS-frequency knob; "
                "only the exact method is supported there")
        self.params_at(self.xi1)  # validates xi1 against the domain

    def params_at(self, x: float) -> ModelParams:
        return self.fixed.with_value(self.varied, x)

    def levels_at(self, x: float) -> LevelPair:
        return level_pair(self.params_at(x), self.method, self.policy)


@dataclass(frozen=True)
class CycleResult:
    """One closed cycle: corners, exchanges, work, efficiency, flags.

    q_in/q_out are the canonical magnitudes (closed form when the method
    and knob admit one, quadrature otherwise).  When both routes ran, the
    quadrature values are retained in q_in_quad/q_out_quad; a refused
    quadrature next to a valid closed form leaves them None.
    """

    spec: CycleSpec
    xi: tuple[float, float, float, float]
    q_in: float
    q_out: float
    w_total: float
    eta: float
    w_adiabatic: tuple[float, float]
    q_in_quad: Optional[float] = None
    q_out_quad: Optional[float] = None
    dsc_threshold: bool = False
    near_degenerate: bool = False


@dataclass(frozen=True)
class OccupationProfile:
    """Ground/excited occupations along one isoenergetic stroke."""

    xi_samples: tuple[float, ...]
    p0: tuple[float, ...]
    p1: tuple[float, ...]
    e_const: float


def _check_not_degenerate(pair: LevelPair, where: str):
    if pair.gap <= DEGENERACY_THRESHOLD:
        raise DegeneracyError(
            f"gap {pair.gap:.3e} at {where} within degeneracy threshold")


def _require_converged(pair: LevelPair, spec: CycleSpec):
    if not pair.converged:
        raise ConvergenceError(
            f"eigensolve not converged at hard_cap={spec.policy.hard_cap}")


def _bracket_and_solve(spec: CycleSpec, start: float, side: int, f,
                       what: str) -> float:
    """Geometric bracket stepping from `start`, then Brent refinement.

    f must be continuous with f(start) on a known side; stepping multiplies
    (or divides) by 1.5 until the sign flips.  A sign flip wins even if the
    far point sits inside the degeneracy zone (the root is still bracketed);
    running out of range with no flip is a range error.
    """
    f_a = f(start)
    if f_a == 0.0:
        return start
    a = start
    if side > 0:
        # a zero start cannot step multiplicatively; seed with a small hop
        x = start * _BRACKET_FACTOR if start > 0 else 0.05
    else:
        x = start / _BRACKET_FACTOR
    for _ in range(_MAX_BRACKET_STEPS):
        f_x = f(x)
        if f_x == 0.0:
            return x
        if (f_a > 0) != (f_x > 0):
            lo, hi = (a, x) if a < x else (x, a)
            root = brentq(f, lo, hi, xtol=1e-15)
            residual = abs(f(root))
            if residual >= _RESIDUAL_TOL:
                raise ConvergenceError(
                    f"{what}: root residual {residual:.3e} exceeds "
                    f"{_RESIDUAL_TOL}")
            return float(root)
        gap_here = spec.levels_at(x).gap
        if gap_here <= DEGENERACY_THRESHOLD:
            raise RangeError(
                f"{what}: reached the degenerate edge at xi={x:.6g} "
                "before bracketing a root")
        a, f_a = x, f_x
        x = x * _BRACKET_FACTOR if side > 0 else x / _BRACKET_FACTOR
    raise RangeError(f"{what}: no sign change within {_MAX_BRACKET_STEPS} "
                     "bracket steps")


def solve_expansion(spec: CycleSpec) -> float:
    """xi2 of the maximal expansion stroke: E1(xi2) = E0(xi1)."""
    pair1 = spec.levels_at(spec.xi1)
    _require_converged(pair1, spec)
    _check_not_degenerate(pair1, f"xi1={spec.xi1:.6g}")
    target = pair1.e0

    def f(x):
        return spec.levels_at(x).e1 - target

    return _bracket_and_solve(spec, spec.xi1, EXPANSION_SIDE[spec.varied], f,
                              "expansion")


def solve_compression(spec: CycleSpec, xi3: float) -> float:
    """xi4 of the maximal compression stroke: E0(xi4) = E1(xi3)."""
    pair3 = spec.levels_at(xi3)
    _require_converged(pair3, spec)
    _check_not_degenerate(pair3, f"xi3={xi3:.6g}")
    target = pair3.e1

    def f(x):
        return spec.levels_at(x).e0 - target

    return _bracket_and_solve(spec, xi3, COMPRESSION_SIDE[spec.varied], f,
                              "compression")


def _infer_start_level(spec: CycleSpec, xi_k: float, xi_l: float) -> int:
    moving_up = xi_l >= xi_k
    side = +1 if moving_up else -1
    return 0 if side == EXPANSION_SIDE[spec.varied] else 1


def occupation_profile(spec: CycleSpec, xi_k: float, xi_l: float,
                       n_samples: int = 101,
                       start_level: Optional[int] = None) -> OccupationProfile:
    """Occupations p0, p1 along [xi_k, xi_l] from the conserved energy.

    p0(xi) = (E1(xi) - e_const) / (E1(xi) - E0(xi)), e_const = E_s(xi_k)
    with s inferred from the stroke direction unless given.
    """
    if n_samples < 2:
        raise ParameterError("n_samples must be >= 2")
    if start_level is None:
        start_level = _infer_start_level(spec, xi_k, xi_l)
    pair_k = spec.levels_at(xi_k)
    e_const = pair_k.e0 if start_level == 0 else pair_k.e1
    xs, p0s = [], []
    for i in range(n_samples):
        x = xi_k + (xi_l - xi_k) * i / (n_samples - 1)
        pair = spec.levels_at(x)
        if pair.gap <= DEGENERACY_THRESHOLD:
            raise DegeneracyError(
                f"degenerate point xi={x:.6g} inside the stroke")
        xs.append(x)
        p0s.append((pair.e1 - e_const) / pair.gap)
    return OccupationProfile(xi_samples=tuple(xs), p0=tuple(p0s),
                             p1=tuple(1.0 - p for p in p0s), e_const=e_const)


def _derivative_at(spec: CycleSpec, x: float, level: int) -> float:
    if spec.method == Method.APPROX:
        return _approx_derivative(spec.params_at(x), spec.varied, level)
    e0, e1, derivs, _, converged = _exact_bundle(spec.params_at(x), spec.policy)
    if not converged:
        raise ConvergenceError(
            f"eigensolve not converged at hard_cap={spec.policy.hard_cap}")
    return derivs[level][spec.varied]


def _refusal_guard(spec: CycleSpec, xi_k: float, xi_l: float):
    """Refuse strokes that graze a degeneracy: endpoint and midpoint gaps
    must clear REFUSAL_FACTOR times the threshold (the exchange estimate
    below that is noise)."""
    floor = REFUSAL_FACTOR * DEGENERACY_THRESHOLD
    for x in (xi_k, 0.5 * (xi_k + xi_l), xi_l):
        gap = spec.levels_at(x).gap
        if gap < floor:
            raise IntegrationError(
                f"stroke refused: gap {gap:.3e} at xi={x:.6g} is inside the "
                f"refusal zone (< {floor:.1e})")


def energy_exchange_quadrature(spec: CycleSpec, xi_k: float, xi_l: float,
                               direction: Direction) -> float:
    """Signed exchange along one stroke by adaptive quadrature.

    Positive = energy enters the substance.  Derivative callbacks are
    analytic for the closed-form method and Hellmann-Feynman for the
    exact one.
    """
    direction = Direction(direction)
    if xi_k == xi_l:
        return 0.0
    _refusal_guard(spec, xi_k, xi_l)
    start_level = 0 if direction == Direction.EXPANSION else 1
    pair_k = spec.levels_at(xi_k)
    estar = pair_k.e0 if start_level == 0 else pair_k.e1

    def integrand(x):
        pair = spec.levels_at(x)
        d0 = _derivative_at(spec, x, 0)
        d1 = _derivative_at(spec, x, 1)
        return (pair.e0 * d1 - pair.e1 * d0) / (pair.e0 - pair.e1)

    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.integrate.IntegrationWarning)
        try:
            integral, abserr = scipy.integrate.quad(
                integrand, xi_k, xi_l, epsabs=1e-12, epsrel=1e-12, limit=400)
        except scipy.integrate.IntegrationWarning as w:
            raise IntegrationError(f"quadrature did not converge: {w}")
    if abserr > 1e-10:
        raise IntegrationError(
            f"quadrature error bound {abserr:.3e} exceeds 1e-10",
            estimate=integral, error_bound=abserr)
    log_term = estar * math.log(spec.levels_at(xi_l).gap / pair_k.gap)
    return -(log_term + integral)


def energy_exchange_closed_form(spec: CycleSpec, xi_k: float, xi_l: float,
                                direction: Direction) -> float:
    """Signed exchange from the closed forms of the polaron levels.

    Only the coupling and resonator knobs have printed forms, and only for
    the closed-form method; everything else is a capability error.  Same
    sign convention as the quadrature route.
    """
    direction = Direction(direction)
    if spec.method != Method.APPROX:
        raise CapabilityError("closed forms exist only for the closed-form "
                              "level method")
    if spec.varied not in (Knob.G, Knob.OMEGA):
        raise CapabilityError(
            f"no closed form for knob '{spec.varied.value}'")
    start_level = 0 if direction == Direction.EXPANSION else 1
    pair_k = spec.levels_at(xi_k)
    estar = pair_k.e0 if start_level == 0 else pair_k.e1
    om = spec.fixed.omega
    if spec.varied == Knob.G:
        a, b = xi_k, xi_l
        quad_term = (om ** 2 * (b ** 2 - a ** 2) + (b ** 4 - a ** 4)) / om ** 3
        return (2.0 / om ** 2) * (b ** 2 - a ** 2) * estar + quad_term
    g = spec.fixed.g
    ia, ib = 1.0 / xi_k, 1.0 / xi_l
    return (2.0 * g ** 2 * (ib ** 2 - ia ** 2) * estar
            + (4.0 / 3.0) * g ** 4 * (ib ** 3 - ia ** 3)
            + g ** 2 * (ib - ia))


def adiabatic_work(spec: CycleSpec, level: int, xi_i: float,
                   xi_j: float) -> float:
    """Work done on the substance along an adiabat entered in `level`."""
    if level not in (0, 1):
        raise ParameterError(f"level must be 0 or 1, got {level}")
    pair_i = spec.levels_at(xi_i)
    pair_j = spec.levels_at(xi_j)
    if level == 0:
        return pair_j.e0 - pair_i.e0
    return pair_j.e1 - pair_i.e1


def _exchange_with_routes(spec: CycleSpec, xi_k: float, xi_l: float,
                          direction: Direction):
    """(canonical, quadrature-or-None) for one stroke.

    Closed form is canonical where it exists; quadrature is still computed
    alongside unless the refusal zone rejects it.  Without a closed form
    the quadrature is canonical and refusal is fatal for the stroke.
    """
    closed_ok = (spec.method == Method.APPROX
                 and spec.varied in (Knob.G, Knob.OMEGA))
    if not closed_ok:
        q = energy_exchange_quadrature(spec, xi_k, xi_l, direction)
        return q, q
    canonical = energy_exchange_closed_form(spec, xi_k, xi_l, direction)
    try:
        q_quad = energy_exchange_quadrature(spec, xi_k, xi_l, direction)
    except IntegrationError:
        q_quad = None
    return canonical, q_quad


def run_cycle(spec: CycleSpec) -> CycleResult:
    """Chain the four strokes and assemble the figures of merit.

    Errors from any stage surface as CycleError naming the stage
    (params, expansion, compression, exchange_in, exchange_out).
    """
    partial = {}
    try:
        pair1 = spec.levels_at(spec.xi1)
        _require_converged(pair1, spec)
    except RabiError as err:
        raise CycleError("params", err, partial) from err
    try:
        xi2 = solve_expansion(spec)
    except RabiError as err:
        raise CycleError("expansion", err, partial) from err
    xi3 = spec.alpha * xi2
    partial.update(xi2=xi2, xi3=xi3)
    try:
        xi4 = solve_compression(spec, xi3)
    except RabiError as err:
        raise CycleError("compression", err, partial) from err
    partial.update(xi4=xi4)
    try:
        q_in_signed, q_in_quad = _exchange_with_routes(
            spec, spec.xi1, xi2, Direction.EXPANSION)
    except RabiError as err:
        raise CycleError("exchange_in", err, partial) from err
    try:
        q_out_signed, q_out_quad = _exchange_with_routes(
            spec, xi3, xi4, Direction.COMPRESSION)
    except RabiError as err:
        raise CycleError("exchange_out", err, partial) from err

    q_in = q_in_signed
    q_out = -q_out_signed
    w_total = q_in - q_out
    eta = 1.0 - q_out / q_in if q_in > 0.0 else 0.0
    w_23 = adiabatic_work(spec, 1, xi2, xi3)
    w_41 = adiabatic_work(spec, 0, xi4, spec.xi1)

    dsc = (spec.varied == Knob.G
           and xi3 >= 2.0 * spec.fixed.bigomega - 1e-12)
    near_floor = 100.0 * DEGENERACY_THRESHOLD
    near = any(spec.levels_at(x).gap < near_floor
               for x in (spec.xi1, xi2, xi3, xi4))
    return CycleResult(
        spec=spec,
        xi=(spec.xi1, xi2, xi3, xi4),
        q_in=q_in,
        q_out=q_out,
        w_total=w_total,
        eta=eta,
        w_adiabatic=(w_23, w_41),
        q_in_quad=None if q_in_quad is None else q_in_quad,
        q_out_quad=None if q_out_quad is None else -q_out_quad,
        dsc_threshold=dsc,
        near_degenerate=near,
    )


def _bisect_edge(ok, x_ok: float, x_bad: float) -> float:
    """Bisect the boundary between an ok point and a failing one."""
    for _ in range(60):
        mid = 0.5 * (x_ok + x_bad)
        if ok(mid):
            x_ok = mid
        else:
            x_bad = mid
        if abs(x_ok - x_bad) < 1e-9:
            break
    return x_ok


def range_probe(varied: Knob, fixed: ModelParams, method: Method,
                policy: TruncationPolicy = TruncationPolicy()):
    """Operating interval for xi1: gap above threshold and expansion
    bracketable.

    The TLS-frequency knob returns the configured window (0.5, 6) in units
    of the resonator frequency; its gap never closes inside it.  The other
    knobs are scanned inside fixed windows (g in (0, 4], omega in
    (0.05, 10]) and the degenerate edge is located by bisection.  A point
    where the eigensolve cannot converge counts as outside the interval.
    """
    varied = Knob(varied)
    if varied == Knob.BIGOMEGA:
        return (_BIGOMEGA_WINDOW[0] * fixed.omega,
                _BIGOMEGA_WINDOW[1] * fixed.omega)

    def ok(x):
        pair = level_pair(fixed.with_value(varied, x), method, policy)
        return pair.converged and pair.gap > DEGENERACY_THRESHOLD

    lo_win, hi_win = _PROBE_WINDOWS[varied]
    if varied == Knob.G:
        # gap decreases with g; the upper endpoint is the binding edge
        if ok(hi_win):
            return (lo_win, hi_win)
        x = hi_win
        while x > lo_win + 1e-6 and not ok(x):
            x = lo_win + 0.75 * (x - lo_win)
        return (lo_win, _bisect_edge(ok, x, hi_win))
    # omega: gap closes as omega falls; the lower endpoint is binding
    if ok(lo_win):
        return (lo_win, hi_win)
    x = lo_win
    while x < hi_win and not ok(x):
        x *= 1.25
    return (_bisect_edge(ok, x, lo_win), hi_win)
