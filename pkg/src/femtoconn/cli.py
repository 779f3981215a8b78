"""Command-line front end: figure-recipe sweeps, validation, and one-shot
metric evaluation.

Exit codes: 0 success, 1 validation failure or infeasible target, 2 bad
specification or parameters, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone

from . import __version__
from .connectivity import (
    ConnectivityScenario,
    connectivity_probability,
    disconnectivity_bound,
    isolation_probability,
)
from .geometry import MobilityGeometry, center_distance, chord_abscissa, lens_area
from .sweeps import (
    SweepIOError,
    SweepSpecError,
    apply_overrides,
    emit_csv,
    emit_plot,
    load_recipe,
    recipe_names,
    run_sweep,
)
from .tier_model import (
    InfeasibleTargetError,
    OutageQuery,
    SirSample,
    TierParams,
    communication_range,
    active_fap_density,
    connectivity_ratio,
    outage_probability,
    sir,
    sir_threshold,
    spectral_efficiency_for_outage,
    spectral_efficiency_from_sir,
)
from .validation import run_validation

_SEED_MAX = 2 ** 64 - 1


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value <= _SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _parse_assignments(pairs: list) -> dict:
    values = {}
    for pair in pairs:
        if "=" not in pair:
            raise SweepSpecError(f"override {pair!r} is not of the form key=value")
        key, raw = (part.strip() for part in pair.split("=", 1))
        if key == "interferer_distances":
            values[key] = tuple(float(part) for part in raw.split(",") if part.strip())
        else:
            try:
                values[key] = float(raw)
            except ValueError as exc:
                raise SweepSpecError(f"{key}: expected a number, got {raw!r}") from exc
    return values


def _take(params: dict, metric: str, *names, optional: tuple = ()) -> dict:
    taken = {}
    for name in names:
        if name not in params:
            raise SweepSpecError(f"point: metric {metric!r} needs parameter {name!r}")
        taken[name] = params[name]
    for name in optional:
        if name in params:
            taken[name] = params[name]
    leftovers = set(params) - set(taken)
    if leftovers:
        raise SweepSpecError(
            f"point: metric {metric!r} does not take parameter {sorted(leftovers)[0]!r}"
        )
    return taken


def _tier_from(params: dict) -> TierParams:
    return TierParams(
        d_f=params.get("d_f", 1.0),
        d_u=params.get("d_u", 1.0),
        p_t=params.get("p_t", 1.0),
        p_min=params.get("p_min", 1.0),
        alpha=params.get("alpha", 4.0),
    )


def _metric_lens_area(params):
    taken = _take(params, "lens_area", "r", "beta")
    return lens_area(taken["r"], taken["beta"])


def _metric_center_distance(params):
    taken = _take(params, "center_distance", "r", "beta")
    return center_distance(taken["r"], taken["beta"])


def _metric_chord_abscissa(params):
    taken = _take(params, "chord_abscissa", "r", "d")
    return chord_abscissa(taken["r"], taken["d"])


def _scenario_from(params, metric):
    taken = _take(params, metric, "r", "beta", "n_f")
    n_f = taken["n_f"]
    if n_f != int(n_f):
        raise SweepSpecError(f"point: n_f must be an integer, got {n_f!r}")
    return ConnectivityScenario(
        MobilityGeometry(taken["r"], taken["beta"]), int(n_f)
    )


def _metric_range(params):
    taken = _take(params, "communication_range", "p_t", "p_min", "alpha")
    return communication_range(
        TierParams(d_f=1.0, d_u=1.0, p_t=taken["p_t"],
                   p_min=taken["p_min"], alpha=taken["alpha"])
    )


def _metric_connectivity_ratio(params):
    taken = _take(params, "connectivity_ratio", "d_f", "d_u", "r",
                  optional=("p_t", "p_min", "alpha"))
    return connectivity_ratio(_tier_from(taken), taken["r"])


def _metric_active_density(params):
    taken = _take(params, "active_fap_density", "d_f", "d_u", "r",
                  optional=("p_t", "p_min", "alpha"))
    return active_fap_density(_tier_from(taken), taken["r"])


def _metric_sir(params):
    taken = _take(params, "sir", "r0", "interferer_distances",
                  optional=("noise_power", "p_t", "alpha"))
    sample = SirSample(
        r0=taken["r0"],
        interferer_distances=taken["interferer_distances"],
        noise_power=taken.get("noise_power", 0.0),
    )
    return sir(sample, _tier_from(taken))


def _outage_query_from(params, metric):
    taken = _take(params, metric, "d_f", "d_u", "alpha", "p_t", "p_min",
                  optional=("eta", "gamma", "r", "d_f_active"))
    if ("eta" in taken) == ("gamma" in taken):
        raise SweepSpecError(f"point: metric {metric!r} takes exactly one of eta/gamma")
    tier = _tier_from(taken)
    return OutageQuery(
        params=tier,
        gamma=taken.get("gamma"),
        eta=taken.get("eta"),
        r=taken.get("r"),
        d_f_active=taken.get("d_f_active"),
    )


def _metric_eta_for_outage(params):
    taken = _take(params, "eta_for_outage",
                  "d_f", "d_u", "alpha", "p_t", "p_min", "target_outage",
                  optional=("r",))
    tier = _tier_from(taken)
    r = taken.get("r", communication_range(tier))
    return spectral_efficiency_for_outage(tier, r, taken["target_outage"])


_METRICS = {
    "lens_area": _metric_lens_area,
    "center_distance": _metric_center_distance,
    "chord_abscissa": _metric_chord_abscissa,
    "isolation_probability": lambda p: isolation_probability(
        _scenario_from(p, "isolation_probability")),
    "disconnectivity_bound": lambda p: disconnectivity_bound(
        _scenario_from(p, "disconnectivity_bound")),
    "connectivity_probability": lambda p: connectivity_probability(
        _scenario_from(p, "connectivity_probability")),
    "communication_range": _metric_range,
    "connectivity_ratio": _metric_connectivity_ratio,
    "active_fap_density": _metric_active_density,
    "sir": _metric_sir,
    "outage_probability": lambda p: outage_probability(
        _outage_query_from(p, "outage_probability")),
    "sir_threshold": lambda p: sir_threshold(
        _take(p, "sir_threshold", "eta")["eta"]),
    "spectral_efficiency_from_sir": lambda p: spectral_efficiency_from_sir(
        _take(p, "spectral_efficiency_from_sir", "gamma")["gamma"]),
    "eta_for_outage": _metric_eta_for_outage,
}


def _cmd_sweep(args) -> int:
    spec = load_recipe(args.recipe)
    spec = apply_overrides(spec, args.set)
    spec.validate()
    stamp = (
        datetime.now(timezone.utc).isoformat(timespec="seconds")
        if args.stamp
        else None
    )
    result = run_sweep(spec, seed=args.seed, stamp=stamp)
    prefix = args.out or spec.output_prefix
    written = []
    if args.format in ("csv", "both"):
        emit_csv(result, f"{prefix}.csv")
        written.append(f"{prefix}.csv")
    if args.format in ("plot", "both"):
        emit_plot(result, f"{prefix}.svg")
        written.append(f"{prefix}.svg")
    print(f"{spec.name or spec.target}: {len(result.rows)} rows -> {', '.join(written)}")
    return 0


def _cmd_validate(args) -> int:
    options = _parse_assignments(args.set)
    known = {"reps", "window", "workers"}
    unknown = set(options) - known
    if unknown:
        raise SweepSpecError(
            f"validate: unknown option {sorted(unknown)[0]!r} (takes {sorted(known)})"
        )
    report = run_validation(
        seed=args.seed,
        trials=args.trials,
        reps=int(options.get("reps", 1000)),
        window=float(options.get("window", 20.0)),
        workers=int(options.get("workers", 1)),
    )
    prefix = args.out or "validation"
    try:
        with open(f"{prefix}.report.txt", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.summary_text())
        with open(f"{prefix}.checks.csv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.csv_text())
    except OSError as exc:
        raise SweepIOError(f"cannot write validation report to {prefix}: {exc}") from exc
    print(report.summary_text(), end="")
    return 0 if report.passed else 1


def _cmd_range(args) -> int:
    params = _parse_assignments(args.set)
    taken = _take(params, "range", "p_t", "p_min", "alpha")
    value = communication_range(
        TierParams(d_f=1.0, d_u=1.0, p_t=taken["p_t"],
                   p_min=taken["p_min"], alpha=taken["alpha"])
    )
    print(repr(value))
    return 0


def _cmd_point(args) -> int:
    params = _parse_assignments(args.set)
    value = _METRICS[args.metric](params)
    print(repr(value))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="femtoconn",
        description="Connectivity, outage and spectral-efficiency sweeps for "
                    "two-tier femtocell networks. Lengths are normalized to "
                    "the femtocell coverage radius; densities are per unit "
                    "area in those squared units.",
    )
    parser.add_argument("--version", action="version", version=f"femtoconn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser(
        "sweep", help="run a figure recipe or a sweep config file"
    )
    sweep.add_argument(
        "recipe",
        help=f"bundled recipe name ({', '.join(recipe_names())}) or a config path",
    )
    sweep.add_argument("--seed", type=_seed, default=0, help="recorded in metadata")
    sweep.add_argument("--out", default=None, help="output path prefix")
    sweep.add_argument("--format", choices=("csv", "plot", "both"), default="both")
    sweep.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a recipe entry, e.g. fixed.n_f=50 or grid.r=0.1,0.9,0.1")
    sweep.add_argument("--stamp", action="store_true",
                       help="record wall-clock time in metadata (breaks byte reproducibility)")
    sweep.set_defaults(handler=_cmd_sweep)

    validate = sub.add_parser(
        "validate", help="run every oracle against its closed form"
    )
    validate.add_argument("--seed", type=_seed, default=0)
    validate.add_argument("--trials", type=int, default=10 ** 6,
                          help="Bernoulli trial budget (>= 1e4)")
    validate.add_argument("--out", default=None, help="report path prefix")
    validate.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                          help="reps=N, window=L, workers=N")
    validate.set_defaults(handler=_cmd_validate)

    range_cmd = sub.add_parser(
        "range", help="communication range for a power budget"
    )
    range_cmd.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                           help="p_t=..., p_min=..., alpha=...")
    range_cmd.set_defaults(handler=_cmd_range)

    point = sub.add_parser(
        "point", help="evaluate one metric at explicit parameters"
    )
    point.add_argument("--metric", required=True, choices=sorted(_METRICS))
    point.add_argument("--set", action="append", default=[], metavar="KEY=VALUE")
    point.set_defaults(handler=_cmd_point)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SweepSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleTargetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SweepIOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
