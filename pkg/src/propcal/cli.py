"""Command-line front end.

Commands: predict path loss over distances, calibrate freshly evaluated
models against a drive test, compare a drive test's own prediction
columns, dump or summarize the bundled reference corpus, infer the site
parameters behind a prediction column, and emit plot-ready series.

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 numeric
domain error.  Machine-readable output goes to stdout (or --out) and is
byte-identical for identical inputs; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from pathlib import Path
from typing import Mapping, Sequence

from .calibration import (
    CalibrationReport,
    calibrate,
    cost231_tx_height_from_slope,
    infer_site_parameters,
    published_divergence_notes,
)
from .dataset import (
    DriveTestTable,
    emit_plot_series,
    parse_drive_test_csv,
    reference_dataset,
    serialize_drive_test_csv,
    with_prediction,
)
from .errors import DataError, DomainError, PropcalError
from .link_budget import REFERENCE_SITE, SiteConfig, predict_rss, site_from_json
from .models import (
    ENVIRONMENTS,
    MODEL_IDS,
    TERRAINS,
    SuiParams,
    make_model,
)

EMBEDDED_DATA = "embedded:reference"
REFERENCE_SITE_ALIAS = "table3"

_ENV_CHOICES = {"medium": "medium_suburban", "metro": "metropolitan"}


class UsageError(PropcalError):
    """Bad command line; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value) or value <= 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return value


def _nonnegative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value) or value < 0.0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text!r}")
    return value


def _frange(start: float, stop: float, step: float) -> list[float]:
    if step <= 0.0:
        raise argparse.ArgumentTypeError(f"step must be positive, got {step:g}")
    if stop < start:
        raise argparse.ArgumentTypeError(f"stop {stop:g} is before start {start:g}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def _parse_distances(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected START:STOP:STEP, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric bound in {text!r}") from None
    return _frange(start, stop, step)


def _parse_grid_axis(text: str) -> tuple[str, list[object]]:
    name, sep, body = text.partition("=")
    name = name.strip()
    if not sep or not name or not body:
        raise argparse.ArgumentTypeError(f"expected NAME=START:STOP:STEP or NAME=v1,v2,..., got {text!r}")
    if ":" in body:
        return name, list(_parse_distances(body))
    values: list[object] = []
    for token in body.split(","):
        token = token.strip()
        if not token:
            raise argparse.ArgumentTypeError(f"empty value in grid axis {text!r}")
        try:
            values.append(float(token))
        except ValueError:
            values.append(token)
    return name, values


def _build_parser() -> _Parser:
    site_flags = argparse.ArgumentParser(add_help=False)
    site_flags.add_argument(
        "--site",
        default=REFERENCE_SITE_ALIAS,
        metavar="PATH",
        help=f"site JSON path, or '{REFERENCE_SITE_ALIAS}' for the built-in reference site (default)",
    )
    site_flags.add_argument("--freq-mhz", type=_positive_float, help="override site frequency")
    site_flags.add_argument("--tx-height", type=_positive_float, metavar="M", help="override transmit height")
    site_flags.add_argument("--rx-height", type=_positive_float, metavar="M", help="override receive height")

    model_flags = argparse.ArgumentParser(add_help=False)
    model_flags.add_argument("--env", choices=sorted(_ENV_CHOICES), default="medium", help="clutter class (default medium)")
    model_flags.add_argument("--terrain", choices=sorted(TERRAINS), default="B", help="terrain class (default B)")
    model_flags.add_argument(
        "--sui-xh-denom",
        type=float,
        choices=(2.0, 2000.0),
        default=2.0,
        metavar="{2,2000}",
        help="receiver-height normalizer in the SUI height correction (default 2)",
    )
    model_flags.add_argument("--sui-shadow", type=_nonnegative_float, default=0.0, metavar="S", help="SUI shadow term in dB (default 0)")
    model_flags.add_argument("--tx-gain-linear", type=_positive_float, default=1.0, metavar="G", help="linear transmit gain used by fspl (default 1)")

    data_flags = argparse.ArgumentParser(add_help=False)
    data_flags.add_argument(
        "--data",
        required=True,
        metavar="PATH",
        help=f"drive-test CSV path, or '{EMBEDDED_DATA}' for the bundled corpus",
    )

    out_flags = argparse.ArgumentParser(add_help=False)
    out_flags.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    parser = _Parser(prog="propcal", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    predict = commands.add_parser("predict", parents=[site_flags, model_flags, out_flags], help="evaluate path loss over distances")
    group = predict.add_mutually_exclusive_group(required=True)
    group.add_argument("--model", choices=MODEL_IDS)
    group.add_argument("--all", action="store_true", help="all five models")
    dist = predict.add_mutually_exclusive_group(required=True)
    dist.add_argument("--distance-m", type=_positive_float, metavar="D")
    dist.add_argument("--distances", type=_parse_distances, metavar="START:STOP:STEP")
    predict.add_argument("--format", choices=("json", "csv"), default="csv")

    cal = commands.add_parser("calibrate", parents=[data_flags, site_flags, model_flags, out_flags], help="fit correction factors for freshly evaluated models")
    group = cal.add_mutually_exclusive_group()
    group.add_argument("--model", choices=MODEL_IDS)
    group.add_argument("--all", action="store_true", help="all five models (default)")
    cal.add_argument("--acceptable-mse", type=_positive_float, metavar="DB2", help="annotate models whose corrected MSE exceeds this")
    cal.add_argument("--format", choices=("json", "csv"), default="json")

    comp = commands.add_parser("compare", parents=[data_flags, site_flags, out_flags], help="calibrate the prediction columns already in the data")
    comp.add_argument("--acceptable-mse", type=_positive_float, metavar="DB2", help="annotate models whose corrected MSE exceeds this")
    comp.add_argument("--format", choices=("json", "csv"), default="json")

    ref = commands.add_parser("reference", parents=[out_flags], help="dump or summarize the bundled reference corpus")
    ref.add_argument("--dump", action="store_true", help="emit the corpus as drive-test CSV")

    infer = commands.add_parser("infer", parents=[data_flags, site_flags, model_flags, out_flags], help="grid-search the parameters behind a prediction column")
    infer.add_argument("--model", choices=MODEL_IDS, required=True)
    infer.add_argument("--column", metavar="NAME", help="prediction column to fit (default: the model id)")
    infer.add_argument(
        "--grid",
        type=_parse_grid_axis,
        action="append",
        metavar="NAME=SPEC",
        help="search axis as NAME=START:STOP:STEP or NAME=v1,v2,...; repeatable (default: a per-model grid)",
    )
    infer.add_argument("--format", choices=("json", "csv"), default="json")

    plot = commands.add_parser("plot", parents=[site_flags, model_flags, out_flags], help="emit distance-sorted series for plotting")
    plot.add_argument(
        "--data",
        default=EMBEDDED_DATA,
        metavar="PATH",
        help=f"drive-test CSV path (default '{EMBEDDED_DATA}')",
    )
    group = plot.add_mutually_exclusive_group()
    group.add_argument("--model", choices=MODEL_IDS, help="also evaluate this model at the sample distances")
    group.add_argument("--all", action="store_true", help="also evaluate all five models")
    plot.add_argument("--quantity", choices=("rss", "pl"), default="rss", help="y axis: received signal or path loss (default rss)")
    return parser


def _load_site(args: argparse.Namespace) -> SiteConfig:
    if args.site == REFERENCE_SITE_ALIAS:
        site = REFERENCE_SITE
    else:
        site = site_from_json(Path(args.site).read_text(encoding="utf-8"))
    overrides = {}
    if args.freq_mhz is not None:
        overrides["freq_mhz"] = args.freq_mhz
    if args.tx_height is not None:
        overrides["tx_height_m"] = args.tx_height
    if args.rx_height is not None:
        overrides["rx_height_m"] = args.rx_height
    return dataclasses.replace(site, **overrides) if overrides else site


def _load_table(data: str) -> DriveTestTable:
    if data == EMBEDDED_DATA:
        return reference_dataset()
    return parse_drive_test_csv(Path(data).read_text(encoding="utf-8"))


def _selected_models(args: argparse.Namespace) -> tuple[str, ...]:
    if getattr(args, "all", False):
        return MODEL_IDS
    if getattr(args, "model", None):
        return (args.model,)
    return MODEL_IDS


def _bound_models(args: argparse.Namespace, site: SiteConfig, model_ids: Sequence[str]) -> dict[str, object]:
    sui_params = SuiParams(
        terrain=TERRAINS[args.terrain],
        shadow_db=args.sui_shadow,
        xh_denominator_m=args.sui_xh_denom,
    )
    return {
        mid: make_model(
            mid,
            site.freq_mhz,
            site.tx_height_m,
            site.rx_height_m,
            environment=ENVIRONMENTS[_ENV_CHOICES[args.env]],
            sui_params=sui_params,
            tx_gain_linear=args.tx_gain_linear,
        )
        for mid in model_ids
    }


def _format_number(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def _report_output(report: CalibrationReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    header = "model_id,cf_db,mse_before_db2,mse_after_db2,rmse_before_db,rmse_after_db,pearson_r,n,best"
    lines = [header]
    for model_id, calib in report.models.items():
        lines.append(
            ",".join(
                [
                    model_id,
                    repr(calib.cf_db),
                    repr(calib.before.mse_db2),
                    repr(calib.after.mse_db2),
                    repr(calib.before.rmse_db),
                    repr(calib.after.rmse_db),
                    repr(calib.before.pearson_r),
                    str(calib.before.n),
                    "true" if model_id == report.best_model else "false",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _cmd_predict(args: argparse.Namespace) -> str:
    site = _load_site(args)
    distances = args.distances if args.distances is not None else [args.distance_m]
    model_ids = MODEL_IDS if args.all else (args.model,)
    models = _bound_models(args, site, model_ids)
    columns = {mid: [models[mid].path_loss_db(d) for d in distances] for mid in model_ids}
    if args.format == "json":
        payload = {"distances_m": distances, "path_loss_db": columns}
        return json.dumps(payload, indent=2) + "\n"
    lines = [",".join(["distance_m"] + [f"pl_{mid}" for mid in model_ids])]
    for i, d in enumerate(distances):
        lines.append(",".join([_format_number(d)] + [f"{columns[mid][i]:.4f}" for mid in model_ids]))
    return "\n".join(lines) + "\n"


def _cmd_calibrate(args: argparse.Namespace) -> str:
    site = _load_site(args)
    table = _load_table(args.data)
    models = _bound_models(args, site, _selected_models(args))
    predictions = {
        mid: [predict_rss(site, model.path_loss_db(d)) for d in table.distances_m]
        for mid, model in models.items()
    }
    report = calibrate(table.measured_rss_dbm, predictions, acceptable_mse_db2=args.acceptable_mse)
    return _report_output(report, args.format)


def _cmd_compare(args: argparse.Namespace) -> str:
    table = _load_table(args.data)
    if not table.predictions:
        raise DataError("compare needs prediction columns (pred_<model>) in the data")
    report = calibrate(table.measured_rss_dbm, table.predictions, acceptable_mse_db2=args.acceptable_mse)
    if args.data == EMBEDDED_DATA:
        notes = report.notes + published_divergence_notes(report)
        report = dataclasses.replace(report, notes=notes)
    return _report_output(report, args.format)


def _cmd_reference(args: argparse.Namespace) -> str:
    table = reference_dataset()
    if args.dump:
        return serialize_drive_test_csv(table)
    distances = table.distances_m
    measured = table.measured_rss_dbm
    payload = {
        "rows": len(table),
        "distance_min_m": min(distances),
        "distance_max_m": max(distances),
        "rss_min_dbm": min(measured),
        "rss_max_dbm": max(measured),
        "prediction_columns": list(table.predictions),
    }
    return json.dumps(payload, indent=2) + "\n"


def _default_grid(model_id: str) -> dict[str, list[object]]:
    heights_fine: list[object] = list(_frange(10.0, 100.0, 0.5))
    heights_coarse: list[object] = list(_frange(10.0, 100.0, 1.0))
    if model_id == "fspl":
        return {"tx_gain_linear": [1.0, 2.0, 4.0]}
    if model_id == "cost231_hata":
        return {"tx_height_m": heights_fine, "environment": ["medium_suburban", "metropolitan"]}
    if model_id == "extended_cost231":
        return {"tx_height_m": heights_fine}
    if model_id == "sui":
        return {
            "tx_height_m": heights_coarse,
            "terrain": ["A", "B", "C"],
            "sui_xh_denominator_m": [2.0, 2000.0],
        }
    return {"tx_height_m": heights_coarse}


def _cmd_infer(args: argparse.Namespace) -> str:
    site = _load_site(args)
    table = _load_table(args.data)
    column = args.column or args.model
    if column not in table.predictions:
        raise DataError(f"data has no prediction column {column!r}")
    loss = [site.budget_db - rss for rss in table.predictions[column]]
    grid: dict[str, list[object]] = dict(args.grid) if args.grid else _default_grid(args.model)
    base: dict[str, object] = {
        "freq_mhz": site.freq_mhz,
        "tx_height_m": site.tx_height_m,
        "rx_height_m": site.rx_height_m,
        "environment": _ENV_CHOICES[args.env],
        "terrain": args.terrain,
        "sui_shadow_db": args.sui_shadow,
        "sui_xh_denominator_m": args.sui_xh_denom,
        "tx_gain_linear": args.tx_gain_linear,
    }
    result = infer_site_parameters(table.distances_m, loss, args.model, grid, base=base)
    payload: dict[str, object] = {
        "model": result.model_id,
        "column": column,
        "params": dict(result.params),
        "fit_mse_db2": result.fit_mse_db2,
        "decade_slope_db": result.decade_slope_db,
        "evaluated": result.evaluated,
    }
    if args.model == "cost231_hata":
        payload["tx_height_from_slope_m"] = cost231_tx_height_from_slope(result.decade_slope_db)
    if args.format == "json":
        return json.dumps(payload, indent=2) + "\n"
    lines = ["key,value"]
    for key, value in payload.items():
        if isinstance(value, dict):
            for name, v in value.items():
                lines.append(f"params.{name},{v}")
        else:
            lines.append(f"{key},{value}")
    return "\n".join(lines) + "\n"


def _cmd_plot(args: argparse.Namespace) -> str:
    site = _load_site(args)
    table = _load_table(args.data)
    requested = ()
    if args.all:
        requested = MODEL_IDS
    elif args.model:
        requested = (args.model,)
    to_evaluate = [mid for mid in requested if mid not in table.predictions]
    models = _bound_models(args, site, to_evaluate)
    for mid in to_evaluate:
        rss = [predict_rss(site, models[mid].path_loss_db(d)) for d in table.distances_m]
        table = with_prediction(table, mid, rss)
    base_names = list(table.predictions)
    measured = table.measured_rss_dbm
    for name in base_names:
        predicted = table.predictions[name]
        cf = math.fsum(m - p for m, p in zip(measured, predicted)) / len(predicted)
        table = with_prediction(table, f"{name}_corrected", [p + cf for p in predicted])
    columns = base_names + [f"{n}_corrected" for n in base_names]
    return emit_plot_series(table, site, quantity=args.quantity, columns=columns)


_COMMANDS = {
    "predict": _cmd_predict,
    "calibrate": _cmd_calibrate,
    "compare": _cmd_compare,
    "reference": _cmd_reference,
    "infer": _cmd_infer,
    "plot": _cmd_plot,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"propcal: error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        output = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"propcal: error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"propcal: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"propcal: error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"propcal: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
