"""Command-line front end.

    qcc estimate --dim 3p1 --L 1 --T 4
    qcc sweep --dim 3p1 --L 1 --T-min 0 --T-max 10 --steps 200 --out fig3.csv
    qcc sweep --mode nonpert --L 1 --lam 1 --T-min 3 --T-max 100 --steps 500
    qcc evolve --geometry fig2 --L 1 --T 4 --gap-a 1 --gap-b 1 --lam 0.1 --beta-b 0.5
    qcc audit --model qft --geometry fig2 --L 1 --T 4 --beta-b 0.5
    qcc gme --m1 1e-14 --m2 1e-14 --L 1e-6 --T 1
    qcc hdiff --T 20 --T 40

Options may also come from a JSON file (--config); flags given on the
command line override it. Output is CSV (numeric, 12 significant digits) or
JSON carrying "schema": "qcc-1". Failures exit non-zero with a JSON error
document on stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

SCHEMA = "qcc-1"

ESTIMATE_COLUMNS = ("T", "C_total", "C_causal", "C_retro", "ratio_rc", "ratio_rtotal")
NONPERT_COLUMNS = ("T", "N_a", "N_a_causal", "theta_a", "theta_c", "theta_r")
GME_COLUMNS = ("lambda_sq", "T_over_Lc", "required_resolution", "qc_indistinguishable")
HDIFF_COLUMNS = ("T", "hdiff", "T2_hdiff", "ratio_to_previous")

DIMS = {"1p1": 1, "3p1": 3}


class CliError(Exception):
    def __init__(self, message: str, kind: str = "invalid_config", code: int = 2):
        super().__init__(message)
        self.kind = kind
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(message, kind="usage")


# ---------------------------------------------------------------------------
# formatting


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    return "%.12g" % float(v)


def to_csv(columns: Sequence[str], rows) -> str:
    lines = [",".join(columns)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    if isinstance(v, (complex, np.complexfloating)):
        return {"re": _jsonable(v.real), "im": _jsonable(v.imag)}
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, np.integer):
        return int(v)
    return v


def matrix_json(m: np.ndarray) -> list:
    return [[complex(x) for x in row] for row in np.asarray(m)]


def to_json(command: str, params: dict, result: Any) -> str:
    doc = {"schema": SCHEMA, "command": command, "params": params, "result": result}
    return json.dumps(_jsonable(doc), indent=2) + "\n"


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    p.add_argument("--dim", choices=sorted(DIMS), default=S)
    p.add_argument("--out", default=S, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=S)
    p.add_argument("--config", default=S, help="JSON file with option values")


def _geometry(p: argparse.ArgumentParser, with_T: bool = True) -> None:
    S = argparse.SUPPRESS
    p.add_argument("--L", type=float, default=S)
    if with_T:
        p.add_argument("--T", type=float, default=S)
    p.add_argument("--S", type=float, default=S)


def _detectors(p: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    p.add_argument("--geometry", choices=("fig1", "fig2", "fig4"), default=S)
    for side in ("a", "b"):
        p.add_argument(f"--gap-{side}", dest=f"gap_{side}", type=float, default=S)
        p.add_argument(f"--alpha-{side}", dest=f"alpha_{side}", type=float, default=S)
        p.add_argument(f"--beta-{side}", dest=f"beta_{side}", type=complex, default=S, help="complex, e.g. 0.3+0.1j")
    p.add_argument("--lam", type=float, default=S)


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    parser = _Parser(prog="qcc", description="qc-model signalling estimators and detector dynamics")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("estimate", help="C, C_c, C_r and ratios for one geometry")
    _common(p)
    _geometry(p)

    p = sub.add_parser("sweep", help="estimators over a grid of T")
    _common(p)
    _geometry(p, with_T=False)
    p.add_argument("--mode", choices=("estimate", "nonpert"), default=S)
    p.add_argument("--T-min", dest="T_min", type=float, default=S)
    p.add_argument("--T-max", dest="T_max", type=float, default=S)
    p.add_argument("--steps", type=int, default=S)
    p.add_argument("--lam", type=float, default=S)

    p = sub.add_parser("evolve", help="final state of A (and of the pair when gapless)")
    _common(p)
    _geometry(p)
    _detectors(p)
    p.add_argument("--n-steps", dest="n_steps", type=int, default=S, help="also run the Dyson oracle")

    p = sub.add_parser("audit", help="retrocausality verdict")
    _common(p)
    _geometry(p)
    _detectors(p)
    p.add_argument("--model", choices=("qc", "qft"), default=S)
    p.add_argument("--grid-n", dest="grid_n", type=int, default=S)

    p = sub.add_parser("gme", help="GME regime report (SI units)")
    _common(p)
    p.add_argument("--m1", type=float, default=S)
    p.add_argument("--m2", type=float, default=S)
    p.add_argument("--L", type=float, default=S, help="separation in meters")
    p.add_argument("--T", type=float, default=S, help="interaction time in seconds")
    p.add_argument("--epsilon", type=float, default=S)
    p.add_argument("--resolution", type=float, default=S, help="time resolution in seconds")

    p = sub.add_parser("hdiff", help="H_diff scaling with the switching time scale")
    _common(p)
    p.add_argument("--T", type=float, action="append", default=S, help="repeat for several time scales")
    p.add_argument("--width", type=float, default=S, help="spatial width of the neutral source")
    p.add_argument("--phase", type=float, default=S, help="evaluation time in units of T")
    return parser


DEFAULTS = {
    "estimate": {"dim": "3p1", "S": 0.0, "format": "csv"},
    "sweep": {"dim": "3p1", "S": 0.0, "format": "csv", "mode": "estimate", "lam": 1.0},
    "evolve": {
        "dim": "3p1", "S": 0.0, "format": "json", "geometry": None, "lam": 0.1,
        "gap_a": 0.0, "gap_b": 0.0, "alpha_a": 0.5, "alpha_b": 0.5, "beta_a": 0.5, "beta_b": 0.5,
        "n_steps": None,
    },
    "audit": {
        "dim": "3p1", "S": 0.0, "format": "json", "geometry": None, "lam": 0.1, "model": "qc",
        "gap_a": 0.0, "gap_b": 0.0, "alpha_a": 0.5, "alpha_b": 0.5, "beta_a": 0.5, "beta_b": 0.5,
        "grid_n": 64,
    },
    "gme": {"format": "json", "epsilon": 1e-6, "resolution": 1e-3},
    "hdiff": {"format": "csv", "width": 1.0, "phase": 0.0},
}

REQUIRED = {
    "estimate": ("L", "T"),
    "sweep": ("L", "T_min", "T_max", "steps"),
    "evolve": ("L", "T"),
    "audit": ("L", "T"),
    "gme": ("m1", "m2", "L", "T"),
    "hdiff": ("T",),
}


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise CliError("config file must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in cfg.items()}


def resolve_config(argv: Sequence[str] | None) -> dict:
    """Defaults < config file < command-line flags."""
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    cfg = dict(DEFAULTS[command])
    if "config" in args:
        file_cfg = _load_config(args.pop("config"))
        file_cfg.pop("command", None)
        cfg.update(file_cfg)
    cfg.update(args)
    missing = [k for k in REQUIRED[command] if cfg.get(k) is None]
    if missing:
        raise CliError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing), "usage")
    if "dim" in cfg and cfg["dim"] not in DIMS:
        raise CliError(f"--dim must be one of {sorted(DIMS)}")
    cfg["command"] = command
    return cfg


# ---------------------------------------------------------------------------
# commands


def _setup(cfg: dict, T: float | None = None):
    from qcc.geometry import standard_setup

    dim = DIMS[cfg["dim"]]
    kind = "fig2" if dim == 3 else "fig4"
    if dim == 3 and cfg.get("S", 0.0):
        raise CliError("S must be 0 in 3+1")
    return standard_setup(kind, float(cfg["L"]), float(cfg["T"] if T is None else T), float(cfg.get("S", 0.0)))


def run_estimate(cfg: dict):
    from qcc.estimators import estimator_split

    rep = estimator_split(_setup(cfg))
    if cfg["format"] == "csv":
        return to_csv(ESTIMATE_COLUMNS, [rep.row()])
    result = dict(zip(ESTIMATE_COLUMNS, rep.row()))
    result["in_ratio_domain"] = rep.in_ratio_domain
    return to_json("estimate", _params(cfg, "dim", "L", "T", "S"), result)


def sweep_rows(cfg: dict) -> tuple[tuple[str, ...], list[tuple]]:
    from qcc.estimators import estimator_split
    from qcc.gapless import np_split

    t_min, t_max, steps = float(cfg["T_min"]), float(cfg["T_max"]), int(cfg["steps"])
    if not t_min < t_max:
        raise CliError("need T_min < T_max")
    if steps < 2:
        raise CliError("need steps >= 2")
    Ts = np.linspace(t_min, t_max, steps)
    if cfg["mode"] == "estimate":
        return ESTIMATE_COLUMNS, [estimator_split(_setup(cfg, T)).row() for T in Ts]
    if DIMS[cfg["dim"]] != 3:
        raise CliError("the non-perturbative sweep is defined in 3+1")
    if not t_min > 2 * float(cfg["L"]):
        raise CliError("the non-perturbative split needs T_min > 2L")
    lam = float(cfg["lam"])
    return NONPERT_COLUMNS, [np_split(_setup(cfg, T), lam).row(T) for T in Ts]


def run_sweep(cfg: dict):
    cols, rows = sweep_rows(cfg)
    if cfg["format"] == "csv":
        return to_csv(cols, rows)
    return to_json(
        "sweep",
        _params(cfg, "mode", "dim", "L", "S", "T_min", "T_max", "steps", "lam"),
        {"columns": list(cols), "rows": [list(r) for r in rows]},
    )


def _detector_pair(cfg: dict):
    from qcc.geometry import causal_future_pair
    from qcc.perturbative import Detector

    dim = DIMS[cfg["dim"]]
    geometry = cfg.get("geometry") or ("fig2" if dim == 3 else "fig4")
    if geometry == "fig1":
        sa, sb = causal_future_pair(float(cfg["L"]), float(cfg["T"]), dim)
    else:
        if (geometry == "fig2") != (dim == 3):
            raise CliError(f"geometry {geometry} does not live in --dim {cfg['dim']}")
        sa, sb = _setup(cfg).smearings()
    lam = float(cfg["lam"])
    det_a = Detector(float(cfg["gap_a"]), lam, sa, float(cfg["alpha_a"]), complex(cfg["beta_a"]))
    det_b = Detector(float(cfg["gap_b"]), lam, sb, float(cfg["alpha_b"]), complex(cfg["beta_b"]))
    return geometry, det_a, det_b


def run_evolve(cfg: dict):
    from qcc.gapless import delta_ab, evolve, reduce_a
    from qcc.perturbative import dyson_correction_a, qc_correction, qft_signal_term
    from qcc.states import HADAMARD, PairState, from_mu_basis

    _require_json(cfg)
    geometry, det_a, det_b = _detector_pair(cfg)
    result: dict[str, Any] = {"geometry": geometry, "rho_a0": matrix_json(det_a.rho0)}
    corr = qc_correction(det_a, det_b)
    result["qc_correction"] = matrix_json(corr)
    result["qc_rho_a"] = matrix_json(det_a.rho0 + corr)
    result["qft_signal_term"] = matrix_json(qft_signal_term(det_a, det_b))
    if cfg.get("n_steps"):
        result["dyson_correction"] = matrix_json(dyson_correction_a(det_a, det_b, int(cfg["n_steps"])))
    if det_a.gap == 0.0 and det_b.gap == 0.0:
        d = float(det_a.coupling * det_b.coupling * delta_ab(1.0, det_a.smearing, det_b.smearing))
        final = evolve(d, PairState.product(det_a.rho0, det_b.rho0))
        result["delta_ab"] = d
        result["exact_pair_state"] = matrix_json(from_mu_basis(final.matrix))
        result["exact_rho_a"] = matrix_json(HADAMARD @ reduce_a(final) @ HADAMARD.T)
    params = _params(cfg, "dim", "L", "T", "S", "lam", "gap_a", "gap_b", "alpha_a", "alpha_b", "beta_a", "beta_b")
    params["basis"] = "computational (index 0 = ground), pair ordered A x B"
    return to_json("evolve", params, result)


def run_audit(cfg: dict):
    from qcc.audit import audit

    _require_json(cfg)
    geometry, det_a, det_b = _detector_pair(cfg)
    v = audit(cfg["model"], det_a, det_b, int(cfg["grid_n"]))
    result = {
        "geometry": geometry,
        "model": v.model.value,
        "geometry_class": v.geometry_class.value,
        "witness_norm": v.witness_norm,
        "subregion": list(v.subregion) if v.subregion else None,
    }
    params = _params(cfg, "model", "dim", "L", "T", "S", "lam", "gap_a", "gap_b", "alpha_a", "alpha_b", "beta_a", "beta_b", "grid_n")
    return to_json("audit", params, result)


def run_gme(cfg: dict):
    from qcc.gme import GmeParameters, regime_report

    p = GmeParameters(
        float(cfg["m1"]), float(cfg["m2"]), float(cfg["L"]), float(cfg["T"]),
        float(cfg["epsilon"]), float(cfg["resolution"]),
    )
    r = regime_report(p)
    row = (r.lambda_sq, r.T_over_Lc, r.required_resolution, r.qc_indistinguishable)
    if cfg["format"] == "csv":
        return to_csv(GME_COLUMNS, [row])
    result = dict(zip(GME_COLUMNS, row))
    result.update(ratio_ok=r.ratio_ok, coupling_ok=r.coupling_ok, resolution_ok=r.resolution_ok)
    return to_json("gme", _params(cfg, "m1", "m2", "L", "T", "epsilon", "resolution"), result)


def run_hdiff(cfg: dict):
    from qcc.fields import hdiff, neutral_source

    Ts = cfg["T"] if isinstance(cfg["T"], list) else [cfg["T"]]
    src = neutral_source(width=float(cfg["width"]))
    rows, prev = [], None
    for T in map(float, Ts):
        h = hdiff(T, src, phase=float(cfg["phase"])).value
        rows.append((T, h, T * T * h, h / prev if prev else math.nan))
        prev = h
    if cfg["format"] == "csv":
        return to_csv(HDIFF_COLUMNS, rows)
    return to_json(
        "hdiff",
        _params(cfg, "width", "phase") | {"T": [float(t) for t in Ts]},
        {"columns": list(HDIFF_COLUMNS), "rows": [list(r) for r in rows]},
    )


def _require_json(cfg: dict) -> None:
    if cfg["format"] != "json":
        raise CliError(f"{cfg['command']} output is only available as JSON")


def _params(cfg: dict, *keys: str) -> dict:
    return {k: cfg[k] for k in keys if k in cfg}


COMMANDS = {
    "estimate": run_estimate,
    "sweep": run_sweep,
    "evolve": run_evolve,
    "audit": run_audit,
    "gme": run_gme,
    "hdiff": run_hdiff,
}


def _emit_error(kind: str, message: str) -> None:
    doc = {"schema": SCHEMA, "error": {"type": kind, "message": message}}
    sys.stderr.write(json.dumps(doc) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = resolve_config(argv)
        text = COMMANDS[cfg["command"]](cfg)
        out = cfg.get("out")
        if out:
            try:
                with open(out, "w", newline="\n") as fh:
                    fh.write(text)
            except OSError as exc:
                raise CliError(f"cannot write {out}: {exc}", kind="io", code=3) from exc
        else:
            sys.stdout.write(text)
        return 0
    except CliError as exc:
        _emit_error(exc.kind, str(exc))
        return exc.code
    except (ValueError, TypeError, ArithmeticError, RuntimeError) as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
