"""Command-line front end.

Subcommands: train, sweep, bounds, qfi, gradvar, hessian. Settings come
from an INI-style config file (sections named after subcommands plus
[global]) with command-line flags taking precedence; the effective
configuration is echoed into every output artifact. Exit codes: 0
success, 1 runtime or I/O failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import schemas
from ._rng import derive_run_seed
from .analysis import (
    SweepSummary,
    bounds_report,
    d_c,
    detect_pc,
    gradient_variance_study,
    hessian_spectrum_summary,
    summarize_depth,
)
from .ansatz import build_layout, param_count
from .diff import hessian, qfi_matrix, qfi_rank
from .targets import SampleFileError, make_target
from .train import TrainConfig, init_params, train_run


class UsageError(Exception):
    """Bad flags or config values; maps to exit code 2."""


QFI_MAX_QUBITS = 6


def parse_depths(text: str) -> list:
    """Depth grids: a single int, a comma list, or an inclusive a..b range."""
    text = text.strip()
    try:
        if ".." in text:
            lo_s, _, hi_s = text.partition("..")
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise UsageError(f"empty depth range {text!r}")
            depths = list(range(lo, hi + 1))
        else:
            depths = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"unparseable depths {text!r}") from None
    if not depths:
        raise UsageError(f"no depths in {text!r}")
    if any(p < 0 for p in depths):
        raise UsageError(f"depths must be >= 0, got {text!r}")
    return depths


def _parse_int_list(text: str) -> list:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _parse_str_list(text: str) -> list:
    return [tok.strip() for tok in text.split(",") if tok.strip()]


# key -> (converter, default, required); None default means optional
_GLOBAL_KEYS = {
    "seed": (int, 0, False),
    "workers": (int, 1, False),
    "out": (str, ".", False),
}

_TRAIN_KEYS = {
    "n": (int, None, True),
    "p": (int, None, True),
    "target": (str, None, True),
    "target_file": (str, None, False),
    "target_seed": (int, 0, False),
    "runs": (int, 100, False),
    "steps": (int, 200, False),
    "shots": (int, None, False),
    "epsilon": (float, 1e-8, False),
}

_SWEEP_KEYS = dict(_TRAIN_KEYS)
del _SWEEP_KEYS["p"]
_SWEEP_KEYS["depths"] = (str, None, True)

_BOUNDS_KEYS = {"n": (int, None, True)}

_QFI_KEYS = {
    "n": (int, None, True),
    "depths": (str, None, True),
    "thetas": (int, 5, False),
}

_GRADVAR_KEYS = {
    "n_list": (str, None, True),
    "p": (int, None, True),
    "targets": (str, "ghz", False),
    "target_seed": (int, 0, False),
    "inits": (int, 30, False),
}

_HESSIAN_KEYS = {
    "record": (str, None, True),
    "zero_tol": (float, 1e-8, False),
}

_KEYSPECS = {
    "train": _TRAIN_KEYS,
    "sweep": _SWEEP_KEYS,
    "bounds": _BOUNDS_KEYS,
    "qfi": _QFI_KEYS,
    "gradvar": _GRADVAR_KEYS,
    "hessian": _HESSIAN_KEYS,
}


def _load_config_file(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise UsageError(f"config file not found: {path}")
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge flag values over config-file values over defaults."""
    file_cfg = _load_config_file(args.config) if args.config else None
    spec = dict(_KEYSPECS[args.command])
    spec.update(_GLOBAL_KEYS)
    resolved = {"command": args.command}
    for key, (conv, default, required) in spec.items():
        value = getattr(args, key, None)
        if value is None and file_cfg is not None:
            for section in (args.command, "global"):
                if file_cfg.has_option(section, key):
                    raw = file_cfg.get(section, key)
                    try:
                        value = conv(raw)
                    except ValueError:
                        raise UsageError(f"config [{section}] {key} = {raw!r}: not a {conv.__name__}") from None
                    break
        if value is None:
            if required:
                raise UsageError(f"missing required setting {key!r} for {args.command}")
            value = default
        resolved[key] = value
    return resolved


def _echo(cfg: dict) -> dict:
    return {k: v for k, v in sorted(cfg.items()) if v is not None}


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: Path, columns, rows, echo: dict) -> None:
    lines = [f"# {k} = {v}" for k, v in echo.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _out_dir(cfg: dict) -> Path:
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _build_target(cfg: dict):
    name = cfg["target"]
    path = cfg.get("target_file")
    if name.strip().lower() == "hep":
        if path is None:
            raise UsageError("target 'hep' needs target_file")
        if not Path(path).exists():
            raise UsageError(f"target file not found: {path}")
    try:
        return make_target(name, cfg["n"], seed=cfg.get("target_seed"), path=path)
    except SampleFileError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _execute_runs(configs, workers: int):
    if workers <= 1:
        return [train_run(c) for c in configs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(train_run, configs))


def _run_cell(cfg: dict, target, p: int):
    """All runs of one (n, p, target) cell, plus their record payloads."""
    base = TrainConfig(
        n_qubits=cfg["n"],
        n_layers=p,
        target=target,
        n_steps=cfg["steps"],
        n_shots=cfg["shots"],
        seed=cfg["seed"],
        epsilon=cfg["epsilon"],
    )
    configs = [replace(base, run_index=r) for r in range(cfg["runs"])]
    return _execute_runs(configs, cfg["workers"])


def _write_records(out: Path, cfg: dict, records, p: int) -> None:
    tname = cfg["target"].strip().lower()
    for rec in records:
        name = schemas.RUN_FILENAME.format(
            n=cfg["n"], p=p, target=tname, index=rec.config.run_index
        )
        _write_json(out / name, rec.to_json())


def _summary_row(s) -> tuple:
    return (
        s.p,
        s.n_params,
        s.loss_q1,
        s.loss_med,
        s.loss_q3,
        s.tts_q1,
        s.tts_med,
        s.tts_q3,
        s.n_runs,
        s.n_failures,
    )


def cmd_train(cfg: dict) -> int:
    target = _build_target(cfg)
    out = _out_dir(cfg)
    records = _run_cell(cfg, target, cfg["p"])
    _write_records(out, cfg, records, cfg["p"])
    summary = summarize_depth(cfg["n"], cfg["p"], records)
    tname = cfg["target"].strip().lower()
    _write_csv(
        out / f"summary_{cfg['n']}q_{cfg['p']}p_{tname}.csv",
        schemas.SWEEP_COLUMNS,
        [_summary_row(summary)],
        _echo(cfg),
    )
    print(
        f"n={cfg['n']} p={cfg['p']} target={tname}: "
        f"median loss {summary.loss_med:.3e}, median tts {summary.tts_med:g}, "
        f"{summary.n_failures} failed of {summary.n_runs}"
    )
    return 1 if summary.n_failures else 0


def cmd_sweep(cfg: dict) -> int:
    target = _build_target(cfg)
    out = _out_dir(cfg)
    depths = parse_depths(cfg["depths"])
    tname = cfg["target"].strip().lower()
    rows = []
    n_failed = 0
    for p in depths:
        records = _run_cell(cfg, target, p)
        _write_records(out, cfg, records, p)
        summary = summarize_depth(cfg["n"], p, records)
        n_failed += summary.n_failures
        rows.append(summary)
    sweep = SweepSummary(cfg["n"], tname, tuple(rows))
    pc = detect_pc(sweep, cfg["epsilon"])
    _write_csv(
        out / f"sweep_{cfg['n']}q_{tname}.csv",
        schemas.SWEEP_COLUMNS,
        [_summary_row(s) for s in rows],
        _echo(cfg),
    )
    _write_json(
        out / f"sweep_{cfg['n']}q_{tname}.json",
        {"config": _echo(cfg), "summary": sweep.to_json(), "p_c": pc},
    )
    if pc is None:
        print(f"p_c(n={cfg['n']}, target={tname}, eps={cfg['epsilon']:g}): not reached")
    else:
        print(f"p_c(n={cfg['n']}, target={tname}, eps={cfg['epsilon']:g}) = {pc}")
    return 1 if n_failed else 0


def cmd_bounds(cfg: dict) -> int:
    report = bounds_report(cfg["n"])
    out = _out_dir(cfg)
    row = (
        report.n_qubits,
        report.d_c,
        report.dla_dim,
        report.p_to_dc,
        report.p_to_dla,
        "" if report.ref_p_to_dc is None else report.ref_p_to_dc,
        "" if report.ref_p_to_dla is None else report.ref_p_to_dla,
        " | ".join(report.flags),
    )
    _write_csv(out / f"bounds_{cfg['n']}q.csv", schemas.BOUNDS_COLUMNS, [row], _echo(cfg))
    payload = report.to_json()
    payload["config"] = _echo(cfg)
    _write_json(out / f"bounds_{cfg['n']}q.json", payload)
    print(
        f"n={report.n_qubits}: d_c={report.d_c} (p={report.p_to_dc}), "
        f"dla={report.dla_dim} (p={report.p_to_dla})"
    )
    for flag in report.flags:
        print(f"  flag: {flag}")
    return 0


def cmd_qfi(cfg: dict) -> int:
    n = cfg["n"]
    if n > QFI_MAX_QUBITS:
        raise UsageError(f"qfi supports n <= {QFI_MAX_QUBITS} (matrix size guard), got {n}")
    depths = parse_depths(cfg["depths"])
    out = _out_dir(cfg)
    dc = d_c(n)
    rows = []
    for p in depths:
        layout = build_layout(n, p)
        rng = np.random.default_rng(derive_run_seed(cfg["seed"], p))
        rank = 0
        for _ in range(cfg["thetas"]):
            theta = init_params(layout, rng)
            rank = max(rank, qfi_rank(qfi_matrix(layout, theta)))
        rows.append((p, layout.n_params, rank, dc))
        print(f"p={p}: n_params={layout.n_params}, rank={rank} (d_c={dc})")
    _write_csv(out / f"qfi_{n}q.csv", schemas.QFI_COLUMNS, rows, _echo(cfg))
    return 0


def cmd_gradvar(cfg: dict) -> int:
    n_values = _parse_int_list(cfg["n_list"])
    target_names = _parse_str_list(cfg["targets"])
    if not n_values or not target_names:
        raise UsageError("gradvar needs at least one n and one target")
    out = _out_dir(cfg)
    rng = np.random.default_rng(cfg["seed"])
    rows = []
    for n in n_values:
        for name in target_names:
            try:
                target = make_target(name, n, seed=cfg["target_seed"])
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            study = gradient_variance_study(
                n, cfg["p"], target.distribution, cfg["inits"], rng
            )
            rows.append(
                (
                    n,
                    name.strip().lower(),
                    cfg["p"],
                    param_count(n, cfg["p"]),
                    study["median_var"],
                    study["iqr_var"],
                    study["median_linf"],
                    study["iqr_linf"],
                )
            )
            print(
                f"n={n} target={name}: median_var={study['median_var']:.3e}, "
                f"median_linf={study['median_linf']:.3e}"
            )
    _write_csv(out / "gradvar.csv", schemas.GRADVAR_COLUMNS, rows, _echo(cfg))
    return 0


def cmd_hessian(cfg: dict) -> int:
    record_path = Path(cfg["record"])
    payload = json.loads(record_path.read_text(encoding="utf-8"))
    rc = payload["config"]
    tinfo = rc["target"]
    target = make_target(
        tinfo["name"],
        tinfo["n_qubits"],
        seed=tinfo.get("seed"),
        path=tinfo.get("source_path"),
    )
    layout = build_layout(rc["n_qubits"], rc["n_layers"])
    theta = np.asarray(payload["final_theta"], dtype=np.float64)
    h = hessian(layout, theta, target.distribution)
    summary = hessian_spectrum_summary(h, cfg["zero_tol"])
    out = _out_dir(cfg)
    result = {
        "config": _echo(cfg),
        "record": str(record_path),
        "n_params": layout.n_params,
        "eigenvalues": summary["eigenvalues"].tolist(),
        "n_zero": summary["n_zero"],
        "e_min": summary["e_min"],
        "e_max": summary["e_max"],
        "character": summary["character"],
    }
    _write_json(out / f"hessian_{record_path.stem}.json", result)
    print(
        f"{record_path.name}: e_min={summary['e_min']:.3e}, e_max={summary['e_max']:.3e}, "
        f"{summary['n_zero']}/{layout.n_params} zero modes ({summary['character']})"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI config file")
    common.add_argument("--seed", type=int, help="base seed (default 0)")
    common.add_argument("--workers", type=int, help="parallel runs per depth (default 1)")
    common.add_argument("--out", help="output directory (default .)")

    parser = argparse.ArgumentParser(
        prog="qcbm", description="Train and analyze quantum-circuit Born machines."
    )
    sub = parser.add_subparsers(dest="command")

    p_train = sub.add_parser("train", parents=[common], help="train one (n, p, target) cell")
    p_train.add_argument("--n", type=int, help="qubit count")
    p_train.add_argument("--p", type=int, help="layer count")
    p_train.add_argument("--target", help="uniform | sparse | bell | ghz | w | hep")
    p_train.add_argument("--target-file", dest="target_file", help="sample file for hep")
    p_train.add_argument("--target-seed", dest="target_seed", type=int, help="seed for sparse")
    p_train.add_argument("--runs", type=int, help="independent runs (default 100)")
    p_train.add_argument("--steps", type=int, help="optimizer steps per run (default 200)")
    p_train.add_argument("--shots", type=int, help="finite-shot count (default analytic)")
    p_train.add_argument("--epsilon", type=float, help="solution threshold (default 1e-8)")
    p_train.set_defaults(handler=cmd_train)

    p_sweep = sub.add_parser("sweep", parents=[common], help="train across a depth grid")
    for flag, kw in (
        ("--n", {"type": int}),
        ("--depths", {"help": "grid: '0..6' or '0,2,4'"}),
        ("--target", {}),
        ("--target-file", {"dest": "target_file"}),
        ("--target-seed", {"dest": "target_seed", "type": int}),
        ("--runs", {"type": int}),
        ("--steps", {"type": int}),
        ("--shots", {"type": int}),
        ("--epsilon", {"type": float}),
    ):
        p_sweep.add_argument(flag, **kw)
    p_sweep.set_defaults(handler=cmd_sweep)

    p_bounds = sub.add_parser("bounds", parents=[common], help="parameter-count bounds report")
    p_bounds.add_argument("--n", type=int, help="qubit count")
    p_bounds.set_defaults(handler=cmd_bounds)

    p_qfi = sub.add_parser("qfi", parents=[common], help="QFI rank vs depth")
    p_qfi.add_argument("--n", type=int, help="qubit count (<= 6)")
    p_qfi.add_argument("--depths", help="grid: '0..8' or '0,2,4'")
    p_qfi.add_argument("--thetas", type=int, help="random points per depth (default 5)")
    p_qfi.set_defaults(handler=cmd_qfi)

    p_gv = sub.add_parser("gradvar", parents=[common], help="gradient variance study")
    p_gv.add_argument("--n-list", dest="n_list", help="qubit counts, e.g. '2,4,6'")
    p_gv.add_argument("--p", type=int, help="layer count")
    p_gv.add_argument("--targets", help="comma list of target names (default ghz)")
    p_gv.add_argument("--target-seed", dest="target_seed", type=int, help="seed for sparse")
    p_gv.add_argument("--inits", type=int, help="random initializations (default 30)")
    p_gv.set_defaults(handler=cmd_gradvar)

    p_hess = sub.add_parser("hessian", parents=[common], help="Hessian spectrum of a run record")
    p_hess.add_argument("--record", help="path to a run record JSON")
    p_hess.add_argument("--zero-tol", dest="zero_tol", type=float, help="zero-mode tolerance")
    p_hess.set_defaults(handler=cmd_hessian)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        cfg = resolve_config(args)
        return args.handler(cfg)
    except (UsageError, SampleFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary, map to exit code 1
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
