"""Parameter sweeps over (xi1, alpha) grids and their serialization.

The cycle-sweep CSV schema is frozen:

    varied,method,xi1,alpha,xi2,xi3,xi4,q_in,q_out,w_total,eta,dsc_flag,status

Floats are written as repr() shortest round-trip decimals, booleans as
true/false, absent values as empty fields; rows are sorted by
(method, alpha, xi1) before emission so the bytes never depend on
evaluation order.  Raw xi1 is always stored; the 1/xi1 axis the frequency
figures use is a plot-time transform.

Level datasets (the spectrum figure) use a second schema:

    varied,method,xi,e0,e1,status
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Union

from .cycle import CycleSpec, run_cycle
from .errors import (CapabilityError, ConfigSemanticError, ConfigSyntaxError,
                     CycleError, ParameterError, RabiError)
from .model import Knob, Method, ModelParams, TruncationPolicy
from .spectrum import level_pair

SWEEP_SCHEMA = ("varied", "method", "xi1", "alpha", "xi2", "xi3", "xi4",
                "q_in", "q_out", "w_total", "eta", "dsc_flag", "status")
LEVELS_SCHEMA = ("varied", "method", "xi", "e0", "e1", "status")

_FIGURE_IDS = ("fig1", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8",
               "fig9", "fig10")

# Default held parameters per varied knob: the coupling and resonator
# studies fix omega = bigomega = 1 (energies in units of the TLS
# frequency); the TLS study fixes g = omega = 1 (units of the resonator).
_DEFAULT_FIXED = {
    Knob.G: ModelParams(g=0.0, omega=1.0, bigomega=1.0, unit="bigomega"),
    Knob.OMEGA: ModelParams(g=1.0, omega=1.0, bigomega=1.0, unit="bigomega"),
    Knob.BIGOMEGA: ModelParams(g=1.0, omega=1.0, bigomega=1.0, unit="omega"),
}


@dataclass(frozen=True)
class SweepConfig:
    varied: Knob
    grid_start: float
    grid_stop: float
    grid_count: int
    alpha_set: tuple[float, ...]
    fixed: ModelParams
    method: str = "exact"  # exact | approx | both
    policy: TruncationPolicy = TruncationPolicy()
    grid_scale: str = "linear"  # linear in xi1, or inverse (linear in 1/xi1)
    output_path: Optional[str] = None
    output_format: str = "csv"

    def __post_init__(self):
        object.__setattr__(self, "varied", Knob(self.varied))
        if self.grid_count < 2:
            raise ConfigSemanticError("grid_count", "need at least 2 points")
        if not (self.grid_start < self.grid_stop):
            raise ConfigSemanticError(
                "grid_start", "grid must be strictly increasing "
                f"(start {self.grid_start} >= stop {self.grid_stop})")
        if self.grid_scale not in ("linear", "inverse"):
            raise ConfigSemanticError("grid_scale",
                                      f"unknown scale '{self.grid_scale}'")
        if not self.alpha_set:
            raise ConfigSemanticError("alphas", "alpha list is empty")
        for a in self.alpha_set:
            if self.varied == Knob.G and not a >= 1.0:
                raise ConfigSemanticError(
                    "alphas", f"alpha={a}: the coupling knob needs alpha >= 1 "
                    "(the parameter increases along the adiabat)")
            if self.varied != Knob.G and not (0.0 < a <= 1.0):
                raise ConfigSemanticError(
                    "alphas", f"alpha={a}: the {self.varied.value} knob needs "
                    "alpha in (0, 1] (the parameter decreases)")
        if self.method not in ("exact", "approx", "both"):
            raise ConfigSemanticError("method",
                                      f"unknown method '{self.method}'")
        if self.varied == Knob.BIGOMEGA and self.method != "exact":
            raise ConfigSemanticError(
                "method", "the TLS-frequency knob supports only the exact "
                "method (no closed-form levels there)")
        if self.output_format not in ("csv", "json"):
            raise ConfigSemanticError("format",
                                      f"unknown format '{self.output_format}'")

    def grid(self) -> tuple[float, ...]:
        """xi1 values; inverse scale spaces them uniformly in 1/xi1."""
        n = self.grid_count
        vals = [self.grid_start + (self.grid_stop - self.grid_start)
                * i / (n - 1) for i in range(n)]
        if self.grid_scale == "inverse":
            return tuple(1.0 / v for v in vals)
        return tuple(vals)

    def methods(self) -> tuple[Method, ...]:
        if self.method == "both":
            return (Method.EXACT, Method.APPROX)
        return (Method.EXACT,) if self.method == "exact" else (Method.APPROX,)


@dataclass(frozen=True)
class SweepRow:
    varied: str
    method: str
    xi1: float
    alpha: float
    xi2: Optional[float] = None
    xi3: Optional[float] = None
    xi4: Optional[float] = None
    q_in: Optional[float] = None
    q_out: Optional[float] = None
    w_total: Optional[float] = None
    eta: Optional[float] = None
    dsc_flag: Optional[bool] = None
    status: str = "ok"


@dataclass(frozen=True)
class LevelRow:
    varied: str
    method: str
    xi: float
    e0: Optional[float] = None
    e1: Optional[float] = None
    status: str = "ok"


@dataclass(frozen=True)
class SweepTable:
    rows: tuple[SweepRow, ...]
    header: tuple[str, ...] = SWEEP_SCHEMA

    @property
    def all_failed(self) -> bool:
        return bool(self.rows) and all(r.status != "ok" for r in self.rows)


@dataclass(frozen=True)
class LevelTable:
    rows: tuple[LevelRow, ...]
    header: tuple[str, ...] = LEVELS_SCHEMA

    @property
    def all_failed(self) -> bool:
        return bool(self.rows) and all(r.status != "ok" for r in self.rows)


# --- config parsing ---------------------------------------------------

_CONFIG_KEYS = {"varied", "grid_start", "grid_stop", "grid_count",
                "grid_scale", "alphas", "method", "g", "omega", "bigomega",
                "n_max", "growth_step", "tol", "hard_cap", "output", "format"}


def _parse_float(key, raw):
    try:
        return float(raw)
    except ValueError:
        raise ConfigSemanticError(key, f"not a number: '{raw}'")


def _parse_int(key, raw):
    try:
        return int(raw)
    except ValueError:
        raise ConfigSemanticError(key, f"not an integer: '{raw}'")


def parse_config(text: str) -> SweepConfig:
    """Flat key = value config, UTF-8, '#' comments, one pair per line.

    Recognized keys: varied, grid_start, grid_stop, grid_count, grid_scale,
    alphas (comma-separated), method, g, omega, bigomega (held values),
    n_max, growth_step, tol, hard_cap (truncation policy), output, format.
    """
    kv: dict[str, str] = {}
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigSyntaxError(line_no, f"expected key = value: '{line}'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key:
            raise ConfigSyntaxError(line_no, "empty key")
        if key not in _CONFIG_KEYS:
            raise ConfigSemanticError(key, "unknown key")
        if key in kv:
            raise ConfigSemanticError(key, "duplicate key")
        if not value:
            raise ConfigSyntaxError(line_no, f"empty value for '{key}'")
        kv[key] = value

    for required in ("varied", "grid_start", "grid_stop", "grid_count",
                     "alphas"):
        if required not in kv:
            raise ConfigSemanticError(required, "missing required key")
    try:
        varied = Knob(kv["varied"])
    except ValueError:
        raise ConfigSemanticError(
            "varied", f"unknown knob '{kv['varied']}' "
            "(expected g, omega or bigomega)")
    if varied.value in kv:
        raise ConfigSemanticError(
            varied.value, "cannot fix the varied parameter; the grid sets it")

    alphas = []
    for part in kv["alphas"].split(","):
        part = part.strip()
        if part:
            alphas.append(_parse_float("alphas", part))
    base = _DEFAULT_FIXED[varied]
    fixed_kw = {}
    for name in ("g", "omega", "bigomega"):
        if name in kv and name != varied.value:
            fixed_kw[name] = _parse_float(name, kv[name])
    try:
        fixed = base.replace(**fixed_kw) if fixed_kw else base
    except ParameterError as err:
        raise ConfigSemanticError(next(iter(fixed_kw)), str(err))

    policy_kw = {}
    for name, parse in (("n_max", _parse_int), ("growth_step", _parse_int),
                        ("tol", _parse_float), ("hard_cap", _parse_int)):
        if name in kv:
            policy_kw[name] = parse(name, kv[name])
    try:
        policy = TruncationPolicy(**policy_kw)
    except ParameterError as err:
        raise ConfigSemanticError(next(iter(policy_kw)), str(err))

    return SweepConfig(
        varied=varied,
        grid_start=_parse_float("grid_start", kv["grid_start"]),
        grid_stop=_parse_float("grid_stop", kv["grid_stop"]),
        grid_count=_parse_int("grid_count", kv["grid_count"]),
        alpha_set=tuple(alphas),
        fixed=fixed,
        method=kv.get("method", "exact"),
        policy=policy,
        grid_scale=kv.get("grid_scale", "linear"),
        output_path=kv.get("output"),
        output_format=kv.get("format", "csv"),
    )


# --- sweep engine -----------------------------------------------------

def _eval_job(job) -> SweepRow:
    varied, xi1, alpha, fixed, method, policy = job
    try:
        spec = CycleSpec(varied=varied, xi1=xi1, alpha=alpha, fixed=fixed,
                         method=method, policy=policy)
    except (ParameterError, CapabilityError):
        return SweepRow(varied=varied.value, method=method.value, xi1=xi1,
                        alpha=alpha, status="error:params")
    try:
        res = run_cycle(spec)
    except CycleError as err:
        return SweepRow(varied=varied.value, method=method.value, xi1=xi1,
                        alpha=alpha,
                        xi2=err.partial.get("xi2"),
                        xi3=err.partial.get("xi3"),
                        xi4=err.partial.get("xi4"),
                        status=f"error:{err.stage}")
    return SweepRow(varied=varied.value, method=method.value, xi1=xi1,
                    alpha=alpha, xi2=res.xi[1], xi3=res.xi[2], xi4=res.xi[3],
                    q_in=res.q_in, q_out=res.q_out, w_total=res.w_total,
                    eta=res.eta, dsc_flag=res.dsc_threshold, status="ok")


def run_sweep(config: SweepConfig, workers: int = 1,
              order=None) -> SweepTable:
    """Evaluate the whole (xi1, alpha, method) grid.

    Per-point failures become error rows, never omissions.  `order`
    optionally permutes evaluation order (indices into the job list); the
    emitted table is sorted either way, so the result cannot depend on it.
    """
    jobs = [(config.varied, xi1, alpha, config.fixed, method, config.policy)
            for method in config.methods()
            for alpha in config.alpha_set
            for xi1 in config.grid()]
    if order is not None:
        if sorted(order) != list(range(len(jobs))):
            raise ParameterError("order must permute the job indices")
        jobs = [jobs[i] for i in order]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_eval_job, jobs, chunksize=4))
    else:
        rows = [_eval_job(j) for j in jobs]
    rows.sort(key=lambda r: (r.method, r.alpha, r.xi1))
    return SweepTable(rows=tuple(rows))


def _levels_rows(varied: Knob, xs, fixed: ModelParams, methods,
                 policy: TruncationPolicy):
    rows = []
    for method in methods:
        for x in xs:
            params = fixed.with_value(varied, x)
            try:
                pair = level_pair(params, method, policy)
            except RabiError:
                rows.append(LevelRow(varied=varied.value, method=method.value,
                                     xi=x, status="error:params"))
                continue
            status = "ok" if pair.converged else "error:convergence"
            rows.append(LevelRow(varied=varied.value, method=method.value,
                                 xi=x, e0=pair.e0, e1=pair.e1, status=status))
    rows.sort(key=lambda r: (r.varied, r.method, r.xi))
    return rows


def _linspace(a, b, n):
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def figure_dataset(figure_id: str, points: Optional[int] = None,
                   workers: int = 1,
                   policy: TruncationPolicy = TruncationPolicy(),
                   ) -> Union[SweepTable, LevelTable]:
    """Preset dataset for one figure id (fig1, fig3..fig10).

    fig1 is the two-level spectrum against each knob (a levels table);
    fig3/fig4/fig5 share the coupling sweep, fig6/fig7/fig8 the resonator
    sweep, fig9/fig10 the TLS sweep (exact only).  The grids reconstruct
    the plotted ranges; `points` overrides the per-block point count for
    quick runs.
    """
    if figure_id not in _FIGURE_IDS:
        raise ConfigSemanticError("figure", f"unknown figure id '{figure_id}'")
    if figure_id == "fig1":
        n_g = points or 121
        n_om = points or 111
        n_Om = points or 121
        methods = (Method.EXACT, Method.APPROX)
        rows = []
        rows += _levels_rows(Knob.G, _linspace(0.0, 3.0, n_g),
                             _DEFAULT_FIXED[Knob.G], methods, policy)
        rows += _levels_rows(Knob.OMEGA, _linspace(0.25, 3.0, n_om),
                             _DEFAULT_FIXED[Knob.OMEGA], methods, policy)
        rows += _levels_rows(Knob.BIGOMEGA, _linspace(0.0, 6.0, n_Om),
                             _DEFAULT_FIXED[Knob.BIGOMEGA], methods, policy)
        return LevelTable(rows=tuple(rows))
    if figure_id in ("fig3", "fig4", "fig5"):
        config = SweepConfig(
            varied=Knob.G, grid_start=0.05, grid_stop=1.45,
            grid_count=points or 50,
            alpha_set=(1.2, 1.4, 1.6, 1.8, 2.0),
            fixed=_DEFAULT_FIXED[Knob.G], method="both", policy=policy)
    elif figure_id in ("fig6", "fig7", "fig8"):
        # grid uniform in 1/omega1; left edge at the plotted max-W region
        config = SweepConfig(
            varied=Knob.OMEGA, grid_start=0.35, grid_stop=1.95,
            grid_count=points or 33, grid_scale="inverse",
            alpha_set=(0.75, 0.8, 0.85, 0.9, 0.95),
            fixed=_DEFAULT_FIXED[Knob.OMEGA], method="both", policy=policy)
    else:  # fig9, fig10
        config = SweepConfig(
            varied=Knob.BIGOMEGA, grid_start=0.2, grid_stop=1.95,
            grid_count=points or 51, grid_scale="inverse",
            alpha_set=(0.75, 0.8, 0.85, 0.9, 0.95),
            fixed=_DEFAULT_FIXED[Knob.BIGOMEGA], method="exact",
            policy=policy)
    return run_sweep(config, workers=workers)


# --- serialization ----------------------------------------------------

def _format_field(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_csv(table: Union[SweepTable, LevelTable]) -> str:
    lines = [",".join(table.header)]
    for row in table.rows:
        lines.append(",".join(_format_field(getattr(row, name))
                              for name in table.header))
    return "\n".join(lines) + "\n"


def _parse_field(name: str, raw: str):
    if raw == "":
        return None
    if name in ("varied", "method", "status"):
        return raw
    if name == "dsc_flag":
        if raw not in ("true", "false"):
            raise ParameterError(f"bad boolean '{raw}' in dsc_flag")
        return raw == "true"
    return float(raw)


def parse_csv(text: str) -> Union[SweepTable, LevelTable]:
    """Inverse of emit_csv; recognizes both schemas by their header."""
    lines = [ln for ln in text.splitlines() if ln != ""]
    if not lines:
        raise ParameterError("empty csv")
    header = tuple(lines[0].split(","))
    if header == SWEEP_SCHEMA:
        row_type, table_type = SweepRow, SweepTable
    elif header == LEVELS_SCHEMA:
        row_type, table_type = LevelRow, LevelTable
    else:
        raise ParameterError(f"unrecognized csv header: {lines[0]}")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(header):
            raise ParameterError(
                f"row has {len(parts)} fields, header has {len(header)}")
        kw = {name: _parse_field(name, raw)
              for name, raw in zip(header, parts)}
        rows.append(row_type(**kw))
    return table_type(rows=tuple(rows))


def emit_json(table: Union[SweepTable, LevelTable]) -> str:
    """Same rows as the CSV, as a JSON array of objects."""
    objs = [{name: getattr(row, name) for name in table.header}
            for row in table.rows]
    return json.dumps(objs, indent=2) + "\n"


def write_output(table, path: str, output_format: str = "csv"):
    text = emit_csv(table) if output_format == "csv" else emit_json(table)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path
