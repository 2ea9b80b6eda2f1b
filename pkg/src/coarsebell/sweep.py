"""Parameter sweeps of optimised inequality violations, with CSV/SVG output.

A sweep is described by a small flat job file (``key = value`` lines, ``#``
comments), for example::

    system = generic-ref
    sweep.variable = V
    sweep.min = 0.0
    sweep.max = 1.0
    sweep.steps = 21
    series[0].label = n=2
    series[0].params.n = 2
    series[1].label = n=3
    series[1].params.n = 3

Recognised keys: ``system``, ``sweep.variable``, ``sweep.min``, ``sweep.max``,
``sweep.steps``, ``series[i].label`` and ``series[i].params.<name>``.

Systems and their sweep variable / fixed parameters:

================  ==========  ======================  =====================
system            variable    meaning of variable     fixed parameters
================  ==========  ======================  =====================
generic-delta     V           detector variance       n
generic-ref       V           reference variance      n
photon            V           reference variance      n, eta
ecs-eta           eta         detector efficiency     alpha
ecs-ref           V           reference variance      alpha
ecs-homodyne      V           homodyne-angle var.     alpha
lg-spin           V           reference variance      j, omega
lg-nonclassical   V           reference variance      j, omega
================  ==========  ======================  =====================

Every grid point builds the system's correlator and maximises the CHSH (or
four-time LG) combination; rows are emitted in lexicographic
(series, sweep_value) order with 12 significant digits.  Both the CSV and
the SVG renderings are byte-deterministic.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from . import ecs, generic, leggett_garg, photon
from .kernels import gauss_hermite
from .optimize import Correlator, OptimizationResult, maximize_chsh, maximize_lg

__all__ = [
    "JobError",
    "SeriesSpec",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "SYSTEMS",
    "parse_job",
    "run_sweep",
    "optimized_point",
    "emit_csv",
    "emit_svg",
]


class JobError(ValueError):
    """A job file or parameter set failed validation."""


@dataclass(frozen=True)
class SeriesSpec:
    label: str
    params: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class SweepSpec:
    """A validated sweep description (see module docstring for the format)."""

    system: str
    variable: str
    vmin: float
    vmax: float
    steps: int
    series: tuple[SeriesSpec, ...] = ()

    def __post_init__(self) -> None:
        sysdef = _system(self.system)
        if self.variable != sysdef.variable:
            raise JobError(
                f"system {self.system!r} sweeps {sysdef.variable!r}, "
                f"got sweep.variable = {self.variable!r}"
            )
        if self.steps < 1:
            raise JobError(f"sweep.steps must be >= 1, got {self.steps}")
        if self.steps == 1:
            if self.vmin != self.vmax:
                raise JobError("a single-point sweep requires sweep.min == sweep.max")
        elif not self.vmin < self.vmax:
            raise JobError(
                f"sweep grid needs sweep.min < sweep.max, got [{self.vmin}, {self.vmax}]"
            )
        for s in self.series:
            _validate_params(self.system, s.params)

    def grid(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.vmin])
        return np.linspace(self.vmin, self.vmax, self.steps)


@dataclass(frozen=True)
class SweepRow:
    series: str
    sweep_value: float
    value: float
    converged: bool


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: tuple[SweepRow, ...]

    def sorted_rows(self) -> list[SweepRow]:
        return sorted(self.rows, key=lambda r: (r.series, r.sweep_value))


# ---------------------------------------------------------------------------
# system registry


@dataclass(frozen=True)
class _SystemDef:
    name: str
    kind: str  # "chsh" | "lg"
    variable: str
    variable_default: float
    params: Mapping[str, float]  # name -> default
    int_params: tuple[str, ...]
    build: Callable[..., Correlator]


def _build_generic_delta(p: Mapping[str, float], value: float, order: int | None) -> Correlator:
    gp = generic.GenericParams(n=int(p["n"]), delta=math.sqrt(value))
    return Correlator(
        fn=lambda ta, tb: generic.corr_fuzzy_detector(ta, tb, gp),
        label="generic-delta",
        period=math.pi,
        kind="chsh",
        params={"n": gp.n, "V": value},
    )


def _build_generic_ref(p: Mapping[str, float], value: float, order: int | None) -> Correlator:
    gp = generic.GenericParams(n=int(p["n"]), Delta=math.sqrt(value))
    return Correlator(
        fn=lambda ta, tb: generic.corr_coarse_reference(ta, tb, gp),
        label="generic-ref",
        period=math.pi,
        kind="chsh",
        params={"n": gp.n, "V": value},
    )


def _build_photon(p: Mapping[str, float], value: float, order: int | None) -> Correlator:
    pp = photon.PhotonParams(n=int(p["n"]), eta=float(p["eta"]), Delta=math.sqrt(value))
    rule = gauss_hermite(order) if order is not None else None
    return Correlator(
        fn=photon.photon_correlator(pp, rule=rule),
        label="photon",
        period=math.pi,
        kind="chsh",
        params={"n": pp.n, "eta": pp.eta, "V": value},
    )


def _build_ecs_eta(p: Mapping[str, float], value: float, order: int | None) -> Correlator:
    ep = ecs.EcsParams(alpha=float(p["alpha"]), eta=value)
    return Correlator(
        fn=lambda ta, tb: ecs.corr_ecs_efficiency(ta, tb, ep),
        label="ecs-eta",
        period=math.pi,
        kind="chsh",
        params={"alpha": ep.alpha, "eta": value},
    )


def _build_ecs_ref(p: Mapping[str, float], value: float, order: int | None) -> Correlator:
    ep = ecs.EcsParams(alpha=float(p["alpha"]), Delta=math.sqrt(value))
    return Correlator(
        fn=lambda ta, tb: ecs.corr_ecs_reference(ta, tb, ep),
        label="ecs-ref",
        period=math.pi,
        kind="chsh",
        params={"alpha": ep.alpha, "V": value},
    )


def _build_ecs_homodyne(p: Mapping[str, float], value: float, order: int | None) -> Correlator:
    ep = ecs.EcsParams(alpha=float(p["alpha"]), Delta=math.sqrt(value))
    return Correlator(
        fn=lambda ta, tb: ecs.corr_ecs_homodyne_angle(ta, tb, ep),
        label="ecs-homodyne",
        period=math.pi,
        kind="chsh",
        params={"alpha": ep.alpha, "V": value},
    )


def _build_lg_spin(p: Mapping[str, float], value: float, order: int | None) -> Correlator:
    sp = leggett_garg.SpinParams(j=float(p["j"]), omega=float(p["omega"]), Delta=math.sqrt(value))
    return Correlator(
        fn=lambda tau: leggett_garg.corr_spin_parity(tau, sp),
        label="lg-spin",
        period=2.0 * math.pi / sp.omega,
        kind="lg",
        params={"j": sp.j, "omega": sp.omega, "V": value},
    )


def _build_lg_nonclassical(p: Mapping[str, float], value: float, order: int | None) -> Correlator:
    sp = leggett_garg.SpinParams(j=float(p["j"]), omega=float(p["omega"]), Delta=math.sqrt(value))
    return Correlator(
        fn=lambda tau: leggett_garg.corr_nonclassical(tau, sp),
        label="lg-nonclassical",
        period=2.0 * math.pi / sp.omega,
        kind="lg",
        params={"j": sp.j, "omega": sp.omega, "V": value},
    )


SYSTEMS: dict[str, _SystemDef] = {
    d.name: d
    for d in (
        _SystemDef("generic-delta", "chsh", "V", 0.0, {"n": 1}, ("n",), _build_generic_delta),
        _SystemDef("generic-ref", "chsh", "V", 0.0, {"n": 1}, ("n",), _build_generic_ref),
        _SystemDef("photon", "chsh", "V", 0.0, {"n": 1, "eta": 1.0}, ("n",), _build_photon),
        _SystemDef("ecs-eta", "chsh", "eta", 1.0, {"alpha": 10.0}, (), _build_ecs_eta),
        _SystemDef("ecs-ref", "chsh", "V", 0.0, {"alpha": 10.0}, (), _build_ecs_ref),
        _SystemDef("ecs-homodyne", "chsh", "V", 0.0, {"alpha": 10.0}, (), _build_ecs_homodyne),
        _SystemDef("lg-spin", "lg", "V", 0.0, {"j": 0.5, "omega": 1.0}, (), _build_lg_spin),
        _SystemDef(
            "lg-nonclassical", "lg", "V", 0.0, {"j": 0.5, "omega": 1.0}, (), _build_lg_nonclassical
        ),
    )
}


def _system(name: str) -> _SystemDef:
    try:
        return SYSTEMS[name]
    except KeyError:
        raise JobError(
            f"unknown system {name!r} (valid: {', '.join(sorted(SYSTEMS))})"
        ) from None


def _validate_params(system: str, params: Mapping[str, float]) -> dict[str, float]:
    sysdef = _system(system)
    merged = dict(sysdef.params)
    for key, value in params.items():
        if key == sysdef.variable:
            raise JobError(
                f"parameter {key!r} is the sweep variable of system {system!r}"
            )
        if key not in sysdef.params:
            raise JobError(
                f"unknown parameter {key!r} for system {system!r} "
                f"(valid: {', '.join(sorted(sysdef.params))})"
            )
        if key in sysdef.int_params:
            if float(value) != int(value):
                raise JobError(f"parameter {key!r} must be an integer, got {value!r}")
            merged[key] = int(value)
        else:
            merged[key] = float(value)
    return merged


def _sweep_domain_check(sysdef: _SystemDef, value: float) -> None:
    if sysdef.variable == "eta":
        if not 0.0 <= value <= 1.0:
            raise JobError(f"eta grid values must lie in [0, 1], got {value}")
    elif value < 0.0:
        raise JobError(f"variance grid values must be >= 0, got {value}")


# ---------------------------------------------------------------------------
# execution


def _optimize_correlator(corr: Correlator, starts: int | None) -> OptimizationResult:
    if corr.kind == "lg":
        return maximize_lg(corr, starts=starts)
    return maximize_chsh(corr, starts=starts)


def run_sweep(
    spec: SweepSpec,
    *,
    starts: int | None = None,
    quadrature_order: int | None = None,
) -> SweepResult:
    """Run every (series, grid point) optimisation of a sweep, sequentially.

    The evaluation order is fixed and no randomness is involved, so repeated
    runs produce identical rows bit for bit.  Per-point optimizer
    non-convergence is recorded in the row rather than aborting the sweep.
    """
    sysdef = _system(spec.system)
    grid = spec.grid()
    for v in grid:
        _sweep_domain_check(sysdef, float(v))
    rows: list[SweepRow] = []
    for series in spec.series:
        merged = _validate_params(spec.system, series.params)
        for v in grid:
            try:
                corr = sysdef.build(merged, float(v), quadrature_order)
            except ValueError as exc:
                raise JobError(f"series {series.label!r} at {spec.variable}={v}: {exc}") from exc
            res = _optimize_correlator(corr, starts)
            rows.append(
                SweepRow(
                    series=series.label,
                    sweep_value=float(v),
                    value=res.value,
                    converged=res.converged,
                )
            )
    return SweepResult(spec=spec, rows=tuple(rows))


def optimized_point(
    system: str,
    params: Mapping[str, float],
    *,
    starts: int | None = None,
    quadrature_order: int | None = None,
) -> OptimizationResult:
    """Optimise a single configuration given as a flat parameter mapping.

    The system's sweep variable may be supplied as an ordinary parameter
    (``V`` or ``eta``); it falls back to the sharp/ideal default otherwise.
    """
    sysdef = _system(system)
    supplied = dict(params)
    value = float(supplied.pop(sysdef.variable, sysdef.variable_default))
    _sweep_domain_check(sysdef, value)
    merged = _validate_params(system, supplied)
    try:
        corr = sysdef.build(merged, value, quadrature_order)
    except ValueError as exc:
        raise JobError(str(exc)) from exc
    return _optimize_correlator(corr, starts)


# ---------------------------------------------------------------------------
# job files


_SERIES_KEY = re.compile(r"^series\[(\d+)\]\.(label|params\.([A-Za-z_][A-Za-z0-9_]*))$")


def parse_job(text: str) -> SweepSpec:
    """Parse the flat ``key = value`` job format into a validated SweepSpec."""
    top: dict[str, str] = {}
    series_raw: dict[int, dict] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise JobError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not value:
            raise JobError(f"line {lineno}: empty value for key {key!r}")
        m = _SERIES_KEY.match(key)
        if m:
            idx = int(m.group(1))
            entry = series_raw.setdefault(idx, {"label": None, "params": {}})
            if m.group(2) == "label":
                if entry["label"] is not None:
                    raise JobError(f"line {lineno}: duplicate key {key!r}")
                entry["label"] = value
            else:
                pname = m.group(3)
                if pname in entry["params"]:
                    raise JobError(f"line {lineno}: duplicate key {key!r}")
                entry["params"][pname] = _parse_number(value, key, lineno)
        elif key in ("system", "sweep.variable", "sweep.min", "sweep.max", "sweep.steps"):
            if key in top:
                raise JobError(f"line {lineno}: duplicate key {key!r}")
            top[key] = value
        else:
            raise JobError(f"line {lineno}: unrecognized key {key!r}")

    if "system" not in top:
        raise JobError("job file is missing the 'system' key")
    system = top["system"]
    sysdef = _system(system)
    variable = top.get("sweep.variable", sysdef.variable)
    missing = [k for k in ("sweep.min", "sweep.max", "sweep.steps") if k not in top]
    if missing:
        raise JobError(f"job file is missing {', '.join(repr(m) for m in missing)}")
    vmin = _parse_number(top["sweep.min"], "sweep.min", None)
    vmax = _parse_number(top["sweep.max"], "sweep.max", None)
    steps_f = _parse_number(top["sweep.steps"], "sweep.steps", None)
    if steps_f != int(steps_f):
        raise JobError(f"sweep.steps must be an integer, got {top['sweep.steps']!r}")

    series = []
    for idx in sorted(series_raw):
        entry = series_raw[idx]
        label = entry["label"] if entry["label"] is not None else f"series{idx}"
        series.append(SeriesSpec(label=label, params=entry["params"]))
    return SweepSpec(
        system=system,
        variable=variable,
        vmin=vmin,
        vmax=vmax,
        steps=int(steps_f),
        series=tuple(series),
    )


def _parse_number(text: str, key: str, lineno: int | None) -> float:
    try:
        return float(text)
    except ValueError:
        where = f"line {lineno}: " if lineno is not None else ""
        raise JobError(f"{where}value for {key!r} is not a number: {text!r}") from None


# ---------------------------------------------------------------------------
# output


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def emit_csv(result: SweepResult, path: str) -> None:
    """Write rows as CSV (12 significant digits, LF endings, sorted order)."""
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["series", "sweep_value", "value", "converged"])
        for row in result.sorted_rows():
            writer.writerow(
                [
                    row.series,
                    _fmt(row.sweep_value),
                    _fmt(row.value),
                    "true" if row.converged else "false",
                ]
            )


_SVG_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_VIEW_W, _VIEW_H = 800, 600
_PLOT = (70.0, 40.0, 560.0, 540.0)  # left, top, right, bottom


def emit_svg(
    result: SweepResult,
    path: str,
    *,
    title: str | None = None,
    bound: float = 2.0,
) -> None:
    """Render the sweep as a small self-contained SVG line plot.

    One polyline per series, axis ticks, a dashed horizontal rule at the
    classical bound, and a legend.  All coordinates are emitted with fixed
    decimal formatting, so identical results yield identical bytes.
    """
    rows = result.sorted_rows()
    labels = sorted({r.series for r in rows})
    xs = [r.sweep_value for r in rows]
    ys = [r.value for r in rows]
    if xs:
        x_lo, x_hi = min(xs), max(xs)
    else:
        x_lo, x_hi = 0.0, 1.0
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    y_lo = min(ys + [bound]) if ys else min(0.0, bound)
    y_hi = max(ys + [bound]) if ys else max(1.0, bound)
    pad = 0.05 * (y_hi - y_lo) or 0.5
    y_lo, y_hi = y_lo - pad, y_hi + pad

    left, top, right, bottom = _PLOT

    def px(v: float) -> float:
        return left + (v - x_lo) / (x_hi - x_lo) * (right - left)

    def py(v: float) -> float:
        return bottom - (v - y_lo) / (y_hi - y_lo) * (bottom - top)

    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_VIEW_W} {_VIEW_H}" '
        f'width="{_VIEW_W}" height="{_VIEW_H}">'
    )
    out.append(f'<rect x="0" y="0" width="{_VIEW_W}" height="{_VIEW_H}" fill="white"/>')
    if title:
        out.append(
            f'<text x="{(left + right) / 2:.3f}" y="24" font-family="sans-serif" '
            f'font-size="16" text-anchor="middle">{_xml_escape(title)}</text>'
        )
    out.append(
        f'<rect x="{left:.3f}" y="{top:.3f}" width="{right - left:.3f}" '
        f'height="{bottom - top:.3f}" fill="none" stroke="black" stroke-width="1"/>'
    )
    n_ticks = 6
    for i in range(n_ticks):
        frac = i / (n_ticks - 1)
        xv = x_lo + frac * (x_hi - x_lo)
        xp = px(xv)
        out.append(
            f'<line x1="{xp:.3f}" y1="{bottom:.3f}" x2="{xp:.3f}" y2="{bottom + 6:.3f}" '
            'stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{xp:.3f}" y="{bottom + 22:.3f}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle">{xv:.4g}</text>'
        )
        yv = y_lo + frac * (y_hi - y_lo)
        yp = py(yv)
        out.append(
            f'<line x1="{left - 6:.3f}" y1="{yp:.3f}" x2="{left:.3f}" y2="{yp:.3f}" '
            'stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{left - 10:.3f}" y="{yp + 4:.3f}" font-family="sans-serif" '
            f'font-size="12" text-anchor="end">{yv:.4g}</text>'
        )
    out.append(
        f'<text x="{(left + right) / 2:.3f}" y="{bottom + 45:.3f}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle">{_xml_escape(result.spec.variable)}</text>'
    )
    out.append(
        f'<text x="22" y="{(top + bottom) / 2:.3f}" font-family="sans-serif" font-size="14" '
        f'text-anchor="middle" transform="rotate(-90 22 {(top + bottom) / 2:.3f})">'
        "optimized value</text>"
    )
    bound_y = py(bound)
    out.append(
        f'<line x1="{left:.3f}" y1="{bound_y:.3f}" x2="{right:.3f}" y2="{bound_y:.3f}" '
        'stroke="#555555" stroke-width="1" stroke-dasharray="6,4"/>'
    )
    for k, label in enumerate(labels):
        color = _SVG_PALETTE[k % len(_SVG_PALETTE)]
        pts = [(r.sweep_value, r.value) for r in rows if r.series == label]
        coords = " ".join(f"{px(x):.3f},{py(y):.3f}" for x, y in pts)
        out.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        ly = top + 16 + 20 * k
        out.append(
            f'<line x1="{right + 15:.3f}" y1="{ly:.3f}" x2="{right + 45:.3f}" y2="{ly:.3f}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        out.append(
            f'<text x="{right + 52:.3f}" y="{ly + 4:.3f}" font-family="sans-serif" '
            f'font-size="12">{_xml_escape(label)}</text>'
        )
    out.append("</svg>")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")


def _xml_escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )
