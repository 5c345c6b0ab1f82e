"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 solver failure, 4 calibration
infeasible.  Results go to ``--out``; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .align import align_report
from .battery import estimate_charge_time
from .calibration import calibrate
from .config import ConfigError, load_config
from .errors import CalibrationInfeasible, DegenerateInput, InvalidNetwork, NonConvergence
from .model import dumps, module_to_dict
from .sweep import compare_topologies, run_sweep, sweep_to_csv

EXIT_OK, EXIT_INPUT, EXIT_SOLVER, EXIT_INFEASIBLE = 0, 2, 3, 4


def _err(message: str) -> None:
    print(f"dronedock: {message}", file=sys.stderr)


def _write(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_sweep(config_path, output_path) -> int:
    config = load_config(config_path)
    if len(config.topologies) != 1:
        raise ConfigError("network.topology: sweep takes exactly one topology")
    result = run_sweep(config.network(), config.sweep_config())
    _write(output_path, sweep_to_csv(result))
    _err(f"wrote {len(result)} points to {output_path}")
    return EXIT_OK


def cmd_compare(config_path, output_path) -> int:
    config = load_config(config_path)
    report = compare_topologies(config.networks(), [config.sweep_config(t) for t in config.topologies])
    if config.battery is not None:
        for entry in report["topologies"]:
            p = entry["peak_p_out_w"]
            entry["charge_time_h"] = estimate_charge_time(config.battery, p) if p > 0 else None
    _write(output_path, dumps(report))
    return EXIT_OK


def cmd_calibrate(config_path, output_path) -> int:
    config = load_config(config_path)
    try:
        result = calibrate(config.calibration, config.module, config.n_modules, config.diode, config.r_wiring)
    except CalibrationInfeasible as exc:
        _err(f"calibration infeasible: {exc}")
        _write(output_path, dumps({"status": "infeasible", "message": str(exc), "best": exc.best}))
        return EXIT_INFEASIBLE
    doc = {
        "module": module_to_dict(result.module),
        "r_wiring": result.r_wiring,
        "report": result.report(),
    }
    _write(output_path, dumps(doc))
    return EXIT_OK


def cmd_align(config_path, output_path=None) -> int:
    config = load_config(config_path)
    if config.frustum is None:
        raise ConfigError("frustum: section required for align")
    dx, dy, yaw = config.seating
    report = align_report(config.frustum, (dx, dy), yaw, gap_max=config.module.gap_max)
    _write(output_path, dumps(report))
    return EXIT_OK


COMMANDS = {
    "sweep": cmd_sweep,
    "compare": cmd_compare,
    "calibrate": cmd_calibrate,
    "align": cmd_align,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dronedock", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON experiment config")
        p.add_argument("--out", required=name != "align", help="output file (align: stdout if omitted)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args.config, args.out)
    except (ConfigError, InvalidNetwork, DegenerateInput) as exc:
        _err(str(exc))
        return EXIT_INPUT
    except NonConvergence as exc:
        _err(f"solver failure: {exc}")
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
