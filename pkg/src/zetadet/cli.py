"""Command-line front end: JSON config in, JSON/CSV results out.

Schema (version 1): a job is an object with ``command``, ``model``, optional
``theta`` (radians, default -pi/4), optional ``params`` and ``tolerances``.
Complex numbers are always objects {"re": float, "im": float}.  Every check
in the output pairs a residual with its tolerance and a pass flag; the exit
code is 0 iff all requested checks pass.

Output is deterministic for a fixed config and build except for the
``wallTimeSeconds`` field.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import Any

import numpy as np

from . import circle as circ
from .complexcut import CutAngle
from .config import DEFAULT_TOLERANCES, Tolerances
from .determinant import ldet, symmetric_spectrum_det, verify_det_eta, verify_det_eta_upper
from .errors import SchemaError, ZetaDetError
from .spectrum import (
    DirectSum,
    Eigenvalue,
    Finite,
    Lattice,
    Spectrum,
    is_symmetric_about_real_axis,
)
from .zetafun import eta_invariant, spectral_zeta

SCHEMA_VERSION = 1
DEFAULT_THETA = -math.pi / 4.0
COMMANDS = (
    "torsion",
    "zeta",
    "eta",
    "det",
    "verify",
    "scan",
    "monodromy",
    "variation",
)
SCAN_COLUMNS = (
    "a_re",
    "a_im",
    "t_re",
    "t_im",
    "t_abs",
    "t_rs",
    "im_eta",
    "cr_residual",
    "status",
)

_TOL_FIELDS = {f.name for f in fields(Tolerances)}


def _fail(code: str, msg: str):
    raise SchemaError(code, msg)


def _as_complex(obj, where: str) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, dict) and set(obj) <= {"re", "im"}:
        return complex(float(obj.get("re", 0.0)), float(obj.get("im", 0.0)))
    _fail("bad-complex", f"{where}: complex numbers are {{re, im}} objects")


def _c2j(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


@dataclass
class JobConfig:
    command: str
    model: dict | None
    theta: float
    params: dict
    tolerances: Tolerances
    raw: dict


def parse_config(raw: dict) -> JobConfig:
    if not isinstance(raw, dict):
        _fail("bad-config", "configuration must be a JSON object")
    version = raw.get("schemaVersion", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        _fail("bad-version", f"unsupported schemaVersion {version}")
    command = raw.get("command")
    if command not in COMMANDS:
        _fail("bad-command", f"command must be one of {COMMANDS}")
    model = raw.get("model")
    if model is not None and not isinstance(model, dict):
        _fail("bad-model", "model must be an object")
    theta = raw.get("theta", DEFAULT_THETA)
    if not isinstance(theta, (int, float)):
        _fail("bad-theta", "theta is a number in radians")
    params = raw.get("params", {})
    if not isinstance(params, dict):
        _fail("bad-params", "params must be an object")
    overrides = raw.get("tolerances", {})
    if not isinstance(overrides, dict):
        _fail("bad-tolerances", "tolerances must be an object")
    unknown = set(overrides) - _TOL_FIELDS
    if unknown:
        _fail("bad-tolerances", f"unknown tolerance fields: {sorted(unknown)}")
    tol = DEFAULT_TOLERANCES.with_overrides(**overrides)
    return JobConfig(command, model, float(theta), params, tol, raw)


def _build_spectrum(model: dict) -> Spectrum:
    kind = model.get("type")
    if kind == "finite":
        evs = model.get("eigenvalues")
        if not isinstance(evs, list) or not evs:
            _fail("bad-model", "finite model needs a nonempty eigenvalue list")
        pairs = []
        for e in evs:
            v = _as_complex({k: e[k] for k in ("re", "im") if k in e}, "eigenvalue")
            pairs.append(Eigenvalue(v, int(e.get("multiplicity", 1))))
        return Finite(tuple(pairs))
    if kind == "lattice":
        a = _as_complex(model.get("a"), "lattice a")
        return Lattice(a, int(model.get("mu", 1)))
    if kind in ("rank1", "monodromy"):
        return _build_circle_model(model).spectrum()
    _fail("bad-model", f"unknown spectrum model type {kind!r}")


def _build_circle_model(model: dict) -> circ.CircleModel:
    kind = model.get("type")
    if kind == "rank1":
        return circ.build_rank1(_as_complex(model.get("a"), "rank1 a"))
    if kind == "monodromy":
        rows = model.get("matrix")
        if not isinstance(rows, list) or not rows:
            _fail("bad-model", "monodromy model needs a matrix")
        mat = [[_as_complex(x, "matrix entry") for x in row] for row in rows]
        return circ.build_from_monodromy(np.array(mat, dtype=complex))
    _fail("bad-model", f"model type {kind!r} is not a circle model")


def _build_family(spec: dict) -> circ.ConnectionFamily:
    kind = spec.get("kind")
    if kind == "constant":
        rows = spec.get("matrix")
        if not isinstance(rows, list):
            _fail("bad-family", "constant family needs a matrix")
        mat = [[_as_complex(x, "family matrix") for x in row] for row in rows]
        return circ.ConnectionFamily.constant(np.array(mat, dtype=complex))
    if kind == "rank1":
        return circ.ConnectionFamily.rank1_path(_as_complex(spec.get("a"), "family a"))
    if kind == "diagonal":
        a_vals = [_as_complex(x, "family a") for x in spec.get("a", [])]
        rates = [_as_complex(x, "family rate") for x in spec.get("rates", [1.0] * len(a_vals))]
        return circ.ConnectionFamily.diagonal_path(a_vals, rates)
    _fail("bad-family", f"unknown family kind {kind!r}")


def _check(name: str, residual: float, tolerance: float) -> dict:
    return {
        "name": name,
        "residual": float(residual),
        "tolerance": float(tolerance),
        "pass": bool(residual < tolerance),
    }


def _path_from_params(params: dict):
    spec = params.get("path")
    if not isinstance(spec, dict):
        _fail("bad-path", "variation needs a params.path object")
    kind = spec.get("kind")
    a0 = _as_complex(spec.get("a0"), "path a0")
    if kind == "affine":
        rate = _as_complex(spec.get("rate", 1.0), "path rate")
        return (lambda t: a0 + rate * t), rate, "affine"
    if kind == "sine":
        amp = _as_complex(spec.get("amp", 0.1), "path amp")
        return (lambda t: a0 + amp * math.sin(t)), amp, "sine"
    _fail("bad-path", f"unknown path kind {kind!r}")


def _family_for_path(path_kind: str, a0: complex, coeff: complex):
    if path_kind == "affine":
        return circ.ConnectionFamily.diagonal_path([a0], [coeff])
    return circ.ConnectionFamily(
        lambda x, t: np.array([[1j * (a0 + coeff * math.sin(t))]], dtype=complex),
        1,
        psi=lambda x, t: np.array([[1j * coeff * math.cos(t)]], dtype=complex),
    )


def _scan_grid(params: dict):
    grid = params.get("grid")
    if not isinstance(grid, dict):
        _fail("bad-grid", "scan needs a params.grid object")
    try:
        re_lo = float(grid["reStart"])
        re_hi = float(grid["reStop"])
        re_n = int(grid["reSteps"])
        im_lo = float(grid["imStart"])
        im_hi = float(grid["imStop"])
        im_n = int(grid["imSteps"])
    except KeyError as exc:
        _fail("bad-grid", f"grid is missing {exc}")
    if re_n < 0 or im_n < 0:
        _fail("bad-grid", "grid step counts are nonnegative")
    points = []
    for i in range(re_n):
        re = re_lo if re_n == 1 else re_lo + (re_hi - re_lo) * i / (re_n - 1)
        for j in range(im_n):
            im = im_lo if im_n == 1 else im_lo + (im_hi - im_lo) * j / (im_n - 1)
            points.append(complex(re, im))
    return points


def _scan_row(a: complex, h: float, tol: Tolerances) -> dict:
    row: dict[str, Any] = {"a_re": a.real, "a_im": a.imag, "status": "ok"}
    try:
        model = circ.build_rank1(a, tol)
        report = circ.refined_torsion(model, tol)

        def torsion_at(z: complex) -> complex:
            return circ.refined_torsion(circ.build_rank1(z, tol), tol).torsion

        d_re = (torsion_at(a + h) - torsion_at(a - h)) / (2.0 * h)
        d_im = (torsion_at(a + 1j * h) - torsion_at(a - 1j * h)) / (2.0 * h)
        cr = abs(0.5 * (d_re + 1j * d_im))
        row.update(
            t_re=report.torsion.real,
            t_im=report.torsion.imag,
            t_abs=abs(report.torsion),
            t_rs=report.ray_singer,
            im_eta=report.im_eta,
            cr_residual=cr,
        )
    except ZetaDetError as exc:
        row["status"] = type(exc).__name__.removesuffix("Error")
        for col in ("t_re", "t_im", "t_abs", "t_rs", "im_eta", "cr_residual"):
            row[col] = None
    return row


def scan_parallel(cfg: JobConfig) -> list[dict]:
    """Scan rows in deterministic grid order; failures are per-row."""
    points = _scan_grid(cfg.params)
    h = float(cfg.params.get("h", 1e-4))
    workers = max(1, int(os.environ.get("ZETADET_THREADS", "1")))
    if workers == 1 or len(points) <= 1:
        return [_scan_row(a, h, cfg.tolerances) for a in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda a: _scan_row(a, h, cfg.tolerances), points))


def run(cfg: JobConfig) -> dict:
    """Dispatch a job; returns the JobResult dictionary."""
    started = time.perf_counter()
    tol = cfg.tolerances
    results: dict[str, Any] = {}
    checks: list[dict] = []
    rows: list[dict] | None = None

    if cfg.command == "torsion":
        if cfg.model is None:
            _fail("bad-model", "torsion needs a model")
        model = _build_circle_model(cfg.model)
        report = circ.refined_torsion(model, tol)
        results.update(
            torsion=_c2j(report.torsion),
            xi=_c2j(report.xi),
            eta=_c2j(report.eta),
            gradedLdet=_c2j(report.graded_ldet),
            raySinger=report.ray_singer,
            imEta=report.im_eta,
        )
        checks.append(
            _check("graded_det_eta_identity", report.identity_residual, tol.identity_residual)
        )
    elif cfg.command == "zeta":
        spec = _build_spectrum(cfg.model or {})
        s = _as_complex(cfg.params.get("s", 0.0), "params.s")
        res = spectral_zeta(spec, CutAngle(cfg.theta), s, tol=tol)
        results.update(value=_c2j(res.value), errorEstimate=res.error_estimate)
    elif cfg.command == "eta":
        spec = _build_spectrum(cfg.model or {})
        results.update(eta=_c2j(eta_invariant(spec, tol)))
    elif cfg.command == "det":
        spec = _build_spectrum(cfg.model or {})
        res = ldet(spec, CutAngle(cfg.theta), tol)
        results.update(ldet=_c2j(res.ldet), det=_c2j(res.det))
    elif cfg.command == "verify":
        if cfg.model is None:
            _fail("bad-model", "verify needs a model")
        if cfg.model.get("type") in ("rank1", "monodromy"):
            model = _build_circle_model(cfg.model)
            report = circ.refined_torsion(model, tol)
            trs = circ.trs_comparison(model, tol)
            results.update(
                torsion=_c2j(report.torsion),
                raySinger=report.ray_singer,
                imEta=report.im_eta,
            )
            checks.append(
                _check("graded_det_eta_identity", report.identity_residual, tol.identity_residual)
            )
            checks.append(
                _check("torsion_ray_singer", trs.residual_log_ratio, tol.trs_residual)
            )
        else:
            spec = _build_spectrum(cfg.model)
            rep = verify_det_eta(spec, CutAngle(cfg.theta), tol)
            checks.append(_check("det_eta_identity", rep.residual, tol.identity_residual))
            rep_up = verify_det_eta_upper(spec, CutAngle(cfg.theta), tol)
            checks.append(
                _check("det_eta_identity_upper", rep_up.residual, tol.identity_residual)
            )
            results.update(
                lhs=_c2j(rep.lhs),
                eta=_c2j(rep.eta),
                zetaZeroSquare=_c2j(rep.zeta_zero_square),
            )
            if is_symmetric_about_real_axis(spec, tol):
                sym = symmetric_spectrum_det(spec, CutAngle(cfg.theta), tol)
                checks.append(
                    _check(
                        "symmetric_factorization",
                        sym.residual,
                        tol.finite_arithmetic * (1.0 + abs(sym.ldet_result.det)) * 10.0,
                    )
                )
    elif cfg.command == "scan":
        rows = scan_parallel(cfg)
        results["rowCount"] = len(rows)
    elif cfg.command == "monodromy":
        family = _build_family(cfg.params.get("family", {}))
        steps = int(cfg.params.get("steps", 256))
        phi = circ.monodromy(family, steps, float(cfg.params.get("t", 0.0)))
        results["monodromy"] = [[_c2j(complex(z)) for z in row] for row in phi]
        results["argClass"] = _c2j(circ.arg_class(phi))
    elif cfg.command == "variation":
        dt = float(cfg.params.get("dt", 1e-4))
        t0 = float(cfg.params.get("t", 0.0))
        path, coeff, kind = _path_from_params(cfg.params)
        res_eta = circ.eta_variation_check(path, dt, t0, tol)
        checks.append(_check("eta_variation", res_eta, tol.variation_residual))
        family = _family_for_path(kind, complex(path(0.0) - (0 if kind == "sine" else 0)), coeff)
        res_arg = circ.arg_derivative_check(family, dt, t0)
        checks.append(_check("arg_derivative", res_arg, tol.variation_residual))
        results.update(etaVariationResidual=res_eta, argDerivativeResidual=res_arg)

    result = {
        "schemaVersion": SCHEMA_VERSION,
        "command": cfg.command,
        "config": cfg.raw,
        "results": results,
        "checks": checks,
        "wallTimeSeconds": time.perf_counter() - started,
    }
    if rows is not None:
        result["rows"] = rows
    return result


def render_json(result: dict) -> str:
    return json.dumps(result, sort_keys=True, separators=(",", ":")) + "\n"


def render_csv(result: dict) -> str:
    rows = result.get("rows")
    if rows is None:
        _fail("bad-format", "CSV output is only available for scan jobs")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCAN_COLUMNS)
    for row in rows:
        writer.writerow(
            ["" if row.get(c) is None else row.get(c) for c in SCAN_COLUMNS]
        )
    return buf.getvalue()


def _parse_tol_overrides(text: str) -> dict:
    overrides = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            _fail("bad-tolerances", f"override {part!r} is not key=value")
        key, value = part.split("=", 1)
        overrides[key.strip()] = float(value)
    return overrides


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="zetadet",
        description="zeta determinants, eta invariants, and refined torsion",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="config path or - for stdin")
    parser.add_argument("--out", help="output path (default stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--tol-overrides", default="", help="k=v[,k=v...] tolerance overrides")
    args = parser.parse_args(argv)

    try:
        text = sys.stdin.read() if args.config == "-" else open(args.config).read()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError("bad-json", f"config is not valid JSON: {exc}")
        raw.setdefault("command", args.command)
        if raw["command"] != args.command:
            raise SchemaError("bad-command", "config command disagrees with CLI command")
        if args.tol_overrides:
            merged = dict(raw.get("tolerances", {}))
            merged.update(_parse_tol_overrides(args.tol_overrides))
            raw["tolerances"] = merged
        cfg = parse_config(raw)
        result = run(cfg)
    except SchemaError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": str(exc)}}), file=sys.stderr)
        return 2
    except ZetaDetError as exc:
        code = type(exc).__name__.removesuffix("Error")
        print(json.dumps({"error": {"code": code, "message": str(exc)}}), file=sys.stderr)
        return 2

    rendered = render_json(result) if args.format == "json" else render_csv(result)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)

    ok = all(c["pass"] for c in result.get("checks", []))
    ok = ok and all(r.get("status", "ok") == "ok" for r in result.get("rows", []))
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
