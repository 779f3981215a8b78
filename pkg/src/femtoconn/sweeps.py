"""Parameter sweeps over the closed-form metrics, with CSV and SVG emission.

The sweep layer is a thin shell around the library: every value in an
emitted table can be reproduced by calling the metric functions with the
parameters recorded in the leading ``#`` metadata lines. Sweeps are defined
by :class:`SweepSpec` objects, parsed from INI-style recipe files with
``[sweep]``, ``[grid]``, ``[fixed]`` and ``[output]`` sections; the package
bundles one recipe per reference figure (``fig5`` ... ``fig10``).
"""

from __future__ import annotations

import configparser
import hashlib
import io
import itertools
import math
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import matplotlib as mpl
import numpy as np
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from . import __version__
from .connectivity import ConnectivityScenario, connectivity_probability
from .geometry import MobilityGeometry
from .tier_model import (
    OutageQuery,
    TierParams,
    communication_range,
    connectivity_ratio,
    outage_probability,
    spectral_efficiency_for_outage,
)

__all__ = [
    "SweepSpecError",
    "SweepIOError",
    "SweepSpec",
    "SweepResult",
    "TARGETS",
    "recipe_names",
    "load_recipe",
    "apply_overrides",
    "run_sweep",
    "emit_csv",
    "emit_plot",
]


class SweepSpecError(ValueError):
    """A sweep specification is malformed; the message names the field."""


class SweepIOError(OSError):
    """An output file could not be written; the message carries the path."""


def _fmt(value: float) -> str:
    # repr of a Python float is the shortest round-trip decimal
    return repr(float(value))


# --------------------------------------------------------------------------
# target registry

def _tier(params: dict, defaults: bool = False) -> TierParams:
    if defaults:
        return TierParams(
            d_f=params["d_f"],
            d_u=params["d_u"],
            p_t=params.get("p_t", 1.0),
            p_min=params.get("p_min", 1.0),
            alpha=params.get("alpha", 4.0),
        )
    return TierParams(
        d_f=params["d_f"],
        d_u=params["d_u"],
        p_t=params["p_t"],
        p_min=params["p_min"],
        alpha=params["alpha"],
    )


def _as_count(value: float, name: str) -> int:
    if abs(value - round(value)) > 1e-9:
        raise SweepSpecError(f"{name} must be an integer, got {value!r}")
    return int(round(value))


def _eval_connectivity(params: dict) -> float:
    scn = ConnectivityScenario(
        MobilityGeometry(params["r"], params["beta"]),
        _as_count(params["n_f"], "n_f"),
    )
    return connectivity_probability(scn)


def _eval_served_fraction(params: dict) -> float:
    return connectivity_ratio(_tier(params, defaults=True), params["r"])


def _resolved_range(p: TierParams, params: dict) -> float:
    return params["r"] if "r" in params else communication_range(p)


def _eval_outage(params: dict) -> float:
    p = _tier(params)
    r = _resolved_range(p, params)
    if "gamma" in params:
        query = OutageQuery(params=p, r=r, gamma=params["gamma"])
    else:
        query = OutageQuery(params=p, r=r, eta=params["eta"])
    return outage_probability(query)


def _eval_efficiency(params: dict) -> float:
    p = _tier(params)
    return spectral_efficiency_for_outage(
        p, _resolved_range(p, params), params["target_outage"]
    )


@dataclass(frozen=True)
class _Target:
    metric: str
    required: frozenset
    optional: frozenset = frozenset()
    either: tuple = ()
    evaluate: object = None


TARGETS = {
    "connectivity_vs_r_beta": _Target(
        metric="p_c",
        required=frozenset({"r", "beta", "n_f"}),
        evaluate=_eval_connectivity,
    ),
    "pc_vs_du": _Target(
        metric="p_c_density",
        required=frozenset({"d_u", "d_f", "r"}),
        optional=frozenset({"p_t", "p_min", "alpha"}),
        evaluate=_eval_served_fraction,
    ),
    "outage_vs_df": _Target(
        metric="p_outage",
        required=frozenset({"d_f", "d_u", "alpha", "p_t", "p_min"}),
        optional=frozenset({"r"}),
        either=(frozenset({"eta", "gamma"}),),
        evaluate=_eval_outage,
    ),
    "eta_vs_du": _Target(
        metric="eta",
        required=frozenset({"d_u", "target_outage", "d_f", "alpha", "p_t", "p_min"}),
        optional=frozenset({"r"}),
        evaluate=_eval_efficiency,
    ),
}


# --------------------------------------------------------------------------
# sweep specification

@dataclass(frozen=True)
class SweepSpec:
    """A sweep target plus its grid axes and fixed parameters.

    ``grid`` maps parameter names to inclusive ``(start, stop, step)``
    ranges, in the order the axes nest (first axis outermost in the output
    rows); ``fixed`` maps the remaining parameters to scalars.
    """

    target: str
    grid: dict = field(default_factory=dict)
    fixed: dict = field(default_factory=dict)
    output_prefix: str = "sweep"
    name: str = ""
    plot_style: str = "auto"

    def validate(self) -> None:
        """Raise :class:`SweepSpecError` naming the first offending field."""
        if self.target not in TARGETS:
            raise SweepSpecError(
                f"unknown target {self.target!r}; choose from {sorted(TARGETS)}"
            )
        target = TARGETS[self.target]
        for name, rng in self.grid.items():
            if len(rng) != 3:
                raise SweepSpecError(f"grid.{name}: need start, stop, step")
            start, stop, step = rng
            if not step > 0:
                raise SweepSpecError(f"grid.{name}: step must be positive")
            if start > stop:
                raise SweepSpecError(f"grid.{name}: start must not exceed stop")
        duplicates = set(self.grid) & set(self.fixed)
        if duplicates:
            raise SweepSpecError(
                f"parameter {sorted(duplicates)[0]!r} appears in both grid and fixed"
            )
        present = set(self.grid) | set(self.fixed)
        missing = target.required - present
        if missing:
            raise SweepSpecError(
                f"target {self.target!r} is missing parameter {sorted(missing)[0]!r}"
            )
        allowed = target.required | target.optional
        for group in target.either:
            hits = group & present
            if len(hits) == 0:
                raise SweepSpecError(
                    f"target {self.target!r} needs one of {sorted(group)}"
                )
            if len(hits) > 1:
                raise SweepSpecError(
                    f"target {self.target!r} takes only one of {sorted(group)}"
                )
            allowed |= group
        unknown = present - allowed
        if unknown:
            raise SweepSpecError(
                f"target {self.target!r} does not take parameter {sorted(unknown)[0]!r}"
            )
        if self.plot_style not in ("auto", "lines", "heatmap"):
            raise SweepSpecError(
                f"output.plot must be auto, lines or heatmap, got {self.plot_style!r}"
            )

    def axis_values(self) -> dict:
        """Expand each grid range into its inclusive list of values."""
        axes = {}
        for name, (start, stop, step) in self.grid.items():
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            axes[name] = [start + i * step for i in range(count)]
        return axes

    def to_config_text(self) -> str:
        """Serialize to the INI recipe format; parsing it back is lossless."""
        lines = ["[sweep]", f"target = {self.target}"]
        if self.name:
            lines.append(f"name = {self.name}")
        if self.grid:
            lines.append("")
            lines.append("[grid]")
            for name, (start, stop, step) in self.grid.items():
                lines.append(f"{name} = {_fmt(start)}, {_fmt(stop)}, {_fmt(step)}")
        if self.fixed:
            lines.append("")
            lines.append("[fixed]")
            for name, value in self.fixed.items():
                lines.append(f"{name} = {_fmt(value)}")
        lines.append("")
        lines.append("[output]")
        lines.append(f"prefix = {self.output_prefix}")
        lines.append(f"plot = {self.plot_style}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_config_text(cls, text: str) -> "SweepSpec":
        parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        try:
            parser.read_string(text)
        except configparser.Error as exc:
            raise SweepSpecError(f"malformed recipe: {exc}") from exc
        if not parser.has_option("sweep", "target"):
            raise SweepSpecError("recipe is missing [sweep] target")
        name = parser.get("sweep", "name", fallback="")
        grid = {}
        if parser.has_section("grid"):
            for key, raw in parser.items("grid"):
                grid[key] = _parse_triple(key, raw)
        fixed = {}
        if parser.has_section("fixed"):
            for key, raw in parser.items("fixed"):
                fixed[key] = _parse_scalar(f"fixed.{key}", raw)
        return cls(
            target=parser.get("sweep", "target"),
            grid=grid,
            fixed=fixed,
            output_prefix=parser.get("output", "prefix", fallback=name or "sweep"),
            name=name,
            plot_style=parser.get("output", "plot", fallback="auto"),
        )


def _parse_scalar(label: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise SweepSpecError(f"{label}: expected a number, got {raw!r}") from exc


def _parse_triple(key: str, raw: str) -> tuple:
    parts = [part.strip() for part in raw.split(",")]
    if len(parts) != 3:
        raise SweepSpecError(f"grid.{key}: expected 'start, stop, step', got {raw!r}")
    return tuple(_parse_scalar(f"grid.{key}", part) for part in parts)


def recipe_names() -> list:
    """Names of the bundled figure recipes."""
    folder = resources.files(__package__) / "recipes"
    return sorted(path.name[: -len(".cfg")] for path in folder.iterdir()
                  if path.name.endswith(".cfg"))


def load_recipe(name_or_path: str) -> SweepSpec:
    """Load a sweep spec from a file path or a bundled recipe name."""
    path = Path(name_or_path)
    if path.is_file():
        return SweepSpec.from_config_text(path.read_text(encoding="utf-8"))
    bundled = resources.files(__package__) / "recipes" / f"{name_or_path}.cfg"
    if bundled.is_file():
        return SweepSpec.from_config_text(bundled.read_text(encoding="utf-8"))
    raise SweepSpecError(
        f"no recipe file or bundled recipe named {name_or_path!r} "
        f"(bundled: {', '.join(recipe_names())})"
    )


def apply_overrides(spec: SweepSpec, assignments: list) -> SweepSpec:
    """Apply ``key=value`` overrides; command-line values win over the recipe.

    Keys may be prefixed ``grid.``/``fixed.``/``output.``/``sweep.``; a bare
    parameter name pins it as fixed (and drops it from the grid). Setting one
    member of an exactly-one group (such as ``gamma``/``eta``) supersedes the
    others.
    """
    grid = dict(spec.grid)
    fixed = dict(spec.fixed)
    prefix, name_, style = spec.output_prefix, spec.name, spec.plot_style
    for assignment in assignments:
        if "=" not in assignment:
            raise SweepSpecError(f"override {assignment!r} is not of the form key=value")
        key, raw = (part.strip() for part in assignment.split("=", 1))
        if key.startswith("grid."):
            param = key[len("grid."):]
            grid[param] = _parse_triple(param, raw)
            fixed.pop(param, None)
        elif key.startswith("fixed."):
            param = key[len("fixed."):]
            fixed[param] = _parse_scalar(key, raw)
            grid.pop(param, None)
        elif key == "output.prefix":
            prefix = raw
        elif key == "output.plot":
            style = raw
        elif key == "sweep.name":
            name_ = raw
        elif "." in key:
            raise SweepSpecError(f"unknown override section in {key!r}")
        else:
            fixed[key] = _parse_scalar(key, raw)
            grid.pop(key, None)
        param = key.split(".", 1)[-1]
        for group in TARGETS.get(spec.target, _Target("", frozenset())).either:
            if param in group:
                for other in group - {param}:
                    grid.pop(other, None)
                    fixed.pop(other, None)
    return replace(
        spec, grid=grid, fixed=fixed,
        output_prefix=prefix, name=name_, plot_style=style,
    )


# --------------------------------------------------------------------------
# sweep execution and emission

@dataclass(frozen=True)
class SweepResult:
    """Rectangular sweep output: swept axes first, then the metric column."""

    columns: tuple
    rows: tuple
    metadata: dict

    def __post_init__(self) -> None:
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "rows", tuple(tuple(row) for row in self.rows))
        width = len(self.columns)
        for row in self.rows:
            if len(row) != width:
                raise ValueError(
                    f"row of width {len(row)} does not match {width} columns"
                )
            if not all(math.isfinite(v) for v in row):
                raise ValueError(f"non-finite value in row {row!r}")

    def csv_text(self) -> str:
        """Canonical CSV rendering used by both the file writer and plots."""
        out = io.StringIO()
        for key, value in self.metadata.items():
            out.write(f"# {key}={value}\n")
        out.write(",".join(self.columns) + "\n")
        for row in self.rows:
            out.write(",".join(_fmt(v) for v in row) + "\n")
        return out.getvalue()


def run_sweep(spec: SweepSpec, seed: int = 0, stamp: str | None = None) -> SweepResult:
    """Evaluate the target metric over the full grid in deterministic order.

    Rows follow the grid product order with the first axis outermost. The
    metadata records the tool version, seed, and the resolved parameter set;
    a wall-clock ``timestamp`` is added only when ``stamp`` is supplied, so
    that default outputs are byte-reproducible.
    """
    spec.validate()
    target = TARGETS[spec.target]
    axes = spec.axis_values()
    rows = []
    for combo in itertools.product(*axes.values()):
        params = dict(zip(axes.keys(), combo))
        params.update(spec.fixed)
        rows.append((*combo, target.evaluate(params)))
    metadata = {
        "tool": f"femtoconn {__version__}",
        "target": spec.target,
        "name": spec.name or spec.target,
        "seed": str(seed),
        "plot": spec.plot_style,
    }
    if stamp is not None:
        metadata["timestamp"] = stamp
    for name, (start, stop, step) in spec.grid.items():
        metadata[f"grid.{name}"] = f"{_fmt(start)},{_fmt(stop)},{_fmt(step)}"
    for name, value in spec.fixed.items():
        metadata[f"fixed.{name}"] = _fmt(value)
    columns = (*axes.keys(), target.metric)
    return SweepResult(columns=columns, rows=rows, metadata=metadata)


def emit_csv(res: SweepResult, path) -> None:
    """Write the result as CSV: ``#`` metadata lines, a header row, then one
    line per grid point with shortest round-trip decimals."""
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(res.csv_text())
    except OSError as exc:
        raise SweepIOError(f"cannot write CSV to {path}: {exc}") from exc


def _plot_style(res: SweepResult) -> str:
    style = res.metadata.get("plot", "auto")
    if style != "auto":
        return style
    axes = len(res.columns) - 1
    if axes == 2:
        first = len({row[0] for row in res.rows})
        second = len({row[1] for row in res.rows})
        if first >= 5 and second >= 5:
            return "heatmap"
    return "lines"


def _curve_groups(rows) -> dict:
    groups: dict = {}
    for row in rows:
        groups.setdefault(tuple(row[1:-1]), []).append((row[0], row[-1]))
    return groups


def emit_plot(res: SweepResult, path) -> None:
    """Render the sweep as a deterministic SVG.

    Line plots put the first axis on x with one curve per combination of the
    remaining axes; two-axis surfaces render as a heatmap. The SVG carries a
    sha256 checksum of the canonical CSV rendering in its metadata, and its
    element ids are salted with the same checksum so identical data yields
    identical bytes.
    """
    if not res.rows:
        raise SweepSpecError("empty result: nothing to plot")
    axis_names = res.columns[:-1]
    metric = res.columns[-1]
    if not axis_names:
        raise SweepSpecError("need at least one swept axis to plot")
    style = _plot_style(res)
    checksum = hashlib.sha256(res.csv_text().encode("utf-8")).hexdigest()

    fig = Figure(figsize=(7.0, 5.0))
    FigureCanvasSVG(fig)
    ax = fig.add_subplot(111)
    if style == "heatmap":
        if len(axis_names) != 2:
            raise SweepSpecError("heatmap plots need exactly two swept axes")
        xs = sorted({row[0] for row in res.rows})
        ys = sorted({row[1] for row in res.rows})
        if len(xs) * len(ys) != len(res.rows):
            raise SweepSpecError("heatmap plots need a full rectangular grid")
        grid = np.asarray([row[2] for row in res.rows], dtype=float)
        mesh = ax.pcolormesh(
            xs, ys, grid.reshape(len(xs), len(ys)).T, shading="nearest"
        )
        fig.colorbar(mesh, ax=ax, label=metric)
        ax.set_ylabel(axis_names[1])
    else:
        groups = _curve_groups(res.rows)
        for key, points in groups.items():
            xs = [x for x, _ in points]
            ys = [y for _, y in points]
            label = ", ".join(
                f"{name}={value:g}" for name, value in zip(axis_names[1:], key)
            )
            ax.plot(xs, ys, label=label or None)
        if len(groups) > 1:
            ax.legend(fontsize="small")
        ax.set_ylabel(metric)
        ax.grid(True, alpha=0.3)
    ax.set_xlabel(axis_names[0])
    ax.set_title(res.metadata.get("name", metric))
    try:
        with mpl.rc_context({"svg.hashsalt": checksum}):
            fig.savefig(
                path,
                format="svg",
                metadata={"Date": None, "Description": f"data-sha256:{checksum}"},
            )
    except OSError as exc:
        raise SweepIOError(f"cannot write plot to {path}: {exc}") from exc
