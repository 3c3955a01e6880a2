"""Command-line front end: JSON problem in, canonical JSON certificate out.

Exit codes: 0 certificate passes, 1 computed but fails, 2 input or schema
error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys

import jsonschema
import numpy as np

from . import __version__
from .atomic import build_atomic_system, lframe_bounds, verify_theorem5
from .errors import (DimensionMismatch, DomainViolation, NonFinite, NotAFrame, NotAtomicForL,
                     NotAvailable, NotHermitian, QuadratureDivergence, ToolkitError)
from .frames import FrameFamily, canonical_dual, frame_bounds, reconstruct
from .kernels import (BergmanStandard, CarlesonSquare, Fock, RadialWeightedBergman,
                      bekolle_ratio, constant_weight, default_carleson_grid, kernel_eval, kernel_norm,
                      log_weight, normalized_kernel_eval, poly_weight)
from .numeric import Tolerances
from .sampling import (TRUNCATION_SCOPE, PointSet, adjoint_sample_expansion, build_basis, default_degree,
                       operator_sample_reconstruct, radial_exponential_lattice, sampling_audit,
                       square_lattice)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
FINITE_SCOPE = "finite-dimensional certificate on C^d"

# ---------------------------------------------------------------------- schema

_complex = {"oneOf": [
    {"type": "number"},
    {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
]}
_vector = {"type": "array", "items": _complex, "minItems": 1}
_matrix = {"type": "array", "items": _vector, "minItems": 1}
_tolerances = {
    "type": "object",
    "properties": {
        "rank_cutoff_rel": {"type": "number"},
        "residual_tol": {"type": "number"},
        "bound_slack": {"type": "number"},
    },
    "additionalProperties": False,
}
_weight = {
    "type": "object",
    "required": ["preset"],
    "properties": {
        "preset": {"enum": ["constant", "poly", "log"]},
        "c": {"type": "number"}, "s": {"type": "number"}, "t": {"type": "number"},
    },
    "additionalProperties": False,
}
_kernel = {
    "type": "object",
    "required": ["type"],
    "properties": {
        "type": {"enum": ["bergman", "fock", "weighted_bergman"]},
        "eta": {"type": "number"},
        "alpha": {"type": "number"},
        "disc_alpha": {"type": "number"},
        "weight": _weight,
    },
    "additionalProperties": False,
}
_points = {"oneOf": [
    _vector,
    {"type": "object", "required": ["preset"], "properties": {
        "preset": {"enum": ["square_lattice", "radial_exponential"]},
        "spacing": {"type": "number"}, "half_width": {"type": "number"},
        "s": {"type": "number"}, "levels": {"type": "integer"}, "angles": {"type": "integer"},
        "include_origin": {"type": "boolean"},
    }, "additionalProperties": False},
]}
_operator_choice = {"oneOf": [
    {"const": "identity"},
    _matrix,
    {"type": "object", "required": ["projection_degree"],
     "properties": {"projection_degree": {"type": "integer", "minimum": 0}},
     "additionalProperties": False},
]}
_grid = {"oneOf": [
    {"type": "array", "minItems": 1, "items": {
        "type": "object", "required": ["theta", "h"],
        "properties": {"theta": {"type": "number"}, "h": {"type": "number"}},
        "additionalProperties": False}},
    {"type": "object", "properties": {
        "n_theta": {"type": "integer", "minimum": 1}, "n_h": {"type": "integer", "minimum": 1},
        "h_min": {"type": "number"}, "h_max": {"type": "number"}}, "additionalProperties": False},
]}


def _doc(required, **props):
    props.setdefault("tolerances", _tolerances)
    props.setdefault("samples", {"type": "integer", "minimum": 1})
    props.setdefault("seed", {"type": "integer", "minimum": 0})
    return {"type": "object", "required": list(required), "properties": props, "additionalProperties": False}


_sampling_props = dict(
    kernel=_kernel, points=_points, degree={"type": "integer", "minimum": 0},
    operator=_operator_choice, norm_mode={"enum": ["truncated", "closed_form", "closed-form"]},
)

SCHEMAS = {
    "frame-bounds": _doc(["family"], family=_matrix),
    "dual": _doc(["family"], family=_matrix),
    "reconstruct": _doc(["family", "vector"], family=_matrix, vector=_vector),
    "lframe-audit": _doc(["family", "operator"], family=_matrix, operator=_matrix),
    "atomic-build": _doc(["operator"], operator=_matrix),
    "verify-theorem5": _doc(["family", "operator"], family=_matrix, operator=_matrix),
    "kernel-eval": _doc(["kernel", "z", "lambda"], kernel=_kernel, z=_complex, **{"lambda": _complex},
                        resolution={"type": "integer", "minimum": 16}),
    "bekolle-ratio": _doc(["weight", "eta"], weight=_weight, eta={"type": "number"}, grid=_grid,
                          resolution={"type": "integer", "minimum": 2}, threshold={"type": "number"}),
    "sampling-audit": _doc(["kernel", "points"], **_sampling_props),
    "sample-reconstruct": _doc(["kernel", "points", "f"], f=_vector, **_sampling_props),
}
COMMANDS = tuple(SCHEMAS)


class InputError(Exception):
    pass


# ----------------------------------------------------------------- conversion

def _c(v) -> complex:
    if isinstance(v, list):
        return complex(v[0], v[1])
    return complex(v)


def _vec(v) -> np.ndarray:
    return np.array([_c(x) for x in v], dtype=complex)


def _mat(m) -> np.ndarray:
    rows = [_vec(r) for r in m]
    if len({len(r) for r in rows}) != 1:
        raise InputError("matrix rows must have equal length")
    return np.array(rows)


def _weight_from(d):
    p = d["preset"]
    if p == "constant":
        return constant_weight(d.get("c", 1.0))
    if p == "poly":
        return poly_weight(d.get("s", 0.0))
    return log_weight(d.get("s", 0.0), d.get("t", 0.0))


def _kernel_from(d):
    t = d["type"]
    if t == "bergman":
        return BergmanStandard(d.get("eta", 0.0))
    if t == "fock":
        return Fock(d.get("alpha", 1.0))
    if "weight" not in d:
        raise InputError("weighted_bergman needs a weight")
    return RadialWeightedBergman(_weight_from(d["weight"]), d.get("eta", 0.0), d.get("disc_alpha"))


def _points_from(p):
    if isinstance(p, list):
        return PointSet(tuple(_c(x) for x in p))
    if p["preset"] == "square_lattice":
        return square_lattice(p.get("spacing", 0.5), p.get("half_width", 1.0))
    return radial_exponential_lattice(p.get("s", 0.5), p.get("levels", 3), p.get("angles", 8),
                                      p.get("include_origin", True))


def _operator_from(op, dim):
    if op is None or op == "identity":
        return np.eye(dim, dtype=complex)
    if isinstance(op, dict):
        k = op["projection_degree"]
        return np.diag((np.arange(dim) <= k).astype(complex))
    return _mat(op)


def _grid_from(g):
    if g is None:
        return default_carleson_grid()
    if isinstance(g, list):
        return [CarlesonSquare(sq["theta"], sq["h"]) for sq in g]
    return default_carleson_grid(g.get("n_theta", 16), g.get("n_h", 16), g.get("h_min", 1e-3), g.get("h_max", 0.95))


def _tol_from(d):
    return Tolerances(**d.get("tolerances", {}))


# --------------------------------------------------------------- serialisation

def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [_plain(float(x.real)), _plain(float(x.imag))]
    if isinstance(x, (float, np.floating)):
        return float(x)
    return x


def _emit(x, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_emit(x[k], indent, level + 1)}" for k in sorted(x)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(x, list):
        if not x:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in x):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in x) + "]"
        return "[\n" + ",\n".join(pad + _emit(v, indent, level + 1) for v in x) + "\n" + end + "]"
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, float):
        return format(x, ".17g") if math.isfinite(x) else "null"
    return json.dumps(x)


def canonical_dumps(obj, indent: int = 2) -> str:
    """Sorted keys, floats with 17 significant digits, NaN/Inf as null."""
    return _emit(_plain(obj), indent, 0) + "\n"


# ------------------------------------------------------------------- commands

def _bound_cert(c):
    return {"lower_A": c.lower_A, "upper_B": c.upper_B, "is_frame": c.is_frame, "residuals": c.residuals,
            "tolerances": c.tolerances}


def _lcert(c):
    return {
        "lower_A": c.lower_A, "upper_B": c.upper_B, "coeff_norm_C": c.coeff_norm_C,
        "range_condition_ok": c.range_condition_ok, "vacuous": c.vacuous, "residuals": c.residuals,
        "tolerances": c.tolerances,
        "lower_bound_status": "vacuous" if c.vacuous else ("present" if c.lower_A is not None else "absent"),
    }


def _lpass(c, tol):
    return c.vacuous or (c.lower_A is not None and c.lower_A > tol.bound_slack)


def cmd_frame_bounds(doc, opts, tol):
    F = FrameFamily(_mat(doc["family"]))
    c = frame_bounds(F, tol)
    return c.is_frame, {"certificate": _bound_cert(c)}, FINITE_SCOPE


def cmd_dual(doc, opts, tol):
    F = FrameFamily(_mat(doc["family"]))
    c = frame_bounds(F, tol)
    out = {"certificate": _bound_cert(c)}
    try:
        D = canonical_dual(F, tol)
    except NotAFrame as e:
        out["failure"] = str(e)
        return False, out, FINITE_SCOPE
    out["dual"] = D.vectors
    out["dual_frame_operator_residual"] = float(np.linalg.norm(
        D.synthesis_matrix @ D.synthesis_matrix.conj().T
        - np.linalg.inv(F.synthesis_matrix @ F.synthesis_matrix.conj().T), 2))
    return True, out, FINITE_SCOPE


def cmd_reconstruct(doc, opts, tol):
    F = FrameFamily(_mat(doc["family"]))
    x = _vec(doc["vector"])
    c = frame_bounds(F, tol)
    out = {"certificate": _bound_cert(c)}
    try:
        y1 = reconstruct(F, x, tol)
        y2 = reconstruct(F, x, tol, swapped=True)
    except NotAFrame as e:
        out["failure"] = str(e)
        return False, out, FINITE_SCOPE
    nx = np.linalg.norm(x)
    e1 = float(np.linalg.norm(y1 - x) / nx) if nx else float(np.linalg.norm(y1))
    e2 = float(np.linalg.norm(y2 - x) / nx) if nx else float(np.linalg.norm(y2))
    out.update(reconstruction=y1, reconstruction_swapped=y2, relative_error=e1, relative_error_swapped=e2)
    return max(e1, e2) <= tol.residual_tol, out, FINITE_SCOPE


def cmd_lframe_audit(doc, opts, tol):
    F = FrameFamily(_mat(doc["family"]))
    L = _mat(doc["operator"])
    c = lframe_bounds(F, L, tol)
    return _lpass(c, tol), {"certificate": _lcert(c)}, FINITE_SCOPE


def cmd_atomic_build(doc, opts, tol):
    L = _mat(doc["operator"])
    F = build_atomic_system(L)
    c = lframe_bounds(F, L, tol)
    return _lpass(c, tol), {"family": F.vectors, "certificate": _lcert(c)}, FINITE_SCOPE


def cmd_verify_theorem5(doc, opts, tol):
    F = FrameFamily(_mat(doc["family"]))
    L = _mat(doc["operator"])
    n = opts.samples or doc.get("samples", 256)
    rep = verify_theorem5(F, L, n_samples=n, seed=doc.get("seed", 0), tol=tol)
    out = {"checks": rep.checks, "coherent": rep.coherent, "residuals": rep.residuals,
           "certificate": _lcert(rep.certificate), "samples": n}
    return rep.all_pass, out, FINITE_SCOPE


def cmd_kernel_eval(doc, opts, tol):
    spec = _kernel_from(doc["kernel"])
    z, lam = _c(doc["z"]), _c(doc["lambda"])
    res = doc.get("resolution", 32)
    out = {}
    if isinstance(spec, RadialWeightedBergman):
        est = kernel_norm(spec, lam, res)
        out.update(kernel="not available in closed form", norm_estimate=est.value, norm_note=est.note)
    else:
        out.update(kernel=kernel_eval(spec, z, lam), norm=kernel_norm(spec, lam),
                   normalized_kernel=normalized_kernel_eval(spec, z, lam))
    return True, out, "closed-form evaluation"


def cmd_bekolle_ratio(doc, opts, tol):
    w = _weight_from(doc["weight"])
    r = bekolle_ratio(w, doc["eta"], _grid_from(doc.get("grid")), doc.get("resolution", 32))
    out = {"sup_ratio": r.sup_ratio, "argmax": {"theta": r.argmax.theta, "h": r.argmax.h},
           "squares": len(r.ratios), "note": r.note}
    passed = True
    if "threshold" in doc:
        out["threshold"] = doc["threshold"]
        passed = r.sup_ratio <= doc["threshold"]
    return passed, out, "grid estimate for radial weights"


def _sampling_setup(doc, opts):
    spec = _kernel_from(doc["kernel"])
    N = opts.degree if opts.degree is not None else doc.get("degree", default_degree(spec))
    mode = opts.norm_mode or doc.get("norm_mode", "truncated")
    mode = mode.replace("-", "_")
    B = build_basis(spec, N)
    P = _points_from(doc["points"])
    L = _operator_from(doc.get("operator"), B.dim)
    return spec, B, P, L, mode


def cmd_sampling_audit(doc, opts, tol):
    spec, B, P, L, mode = _sampling_setup(doc, opts)
    a = sampling_audit(B, P, L, mode, tol)
    out = {"certificate": _lcert(a.certificate), "truncation_degree": a.truncation_degree,
           "truncation_diagnostics": a.truncation_diagnostics, "estimate_flag": a.estimate_flag,
           "norm_mode": a.norm_mode, "points": len(P)}
    return a.passed, out, a.scope


def cmd_sample_reconstruct(doc, opts, tol):
    spec, B, P, L, mode = _sampling_setup(doc, opts)
    f = _vec(doc["f"])
    out = {"norm_mode": mode, "truncation_degree": B.degree}
    try:
        r = operator_sample_reconstruct(B, P, L, f, mode, tol)
        adj = adjoint_sample_expansion(B, P, L, f, mode, tol)
    except NotAtomicForL as e:
        out["failure"] = str(e)
        return False, out, TRUNCATION_SCOPE
    adj_err = float(np.linalg.norm(adj - L.conj().T @ f))
    out.update(coefficients=r.coefficients, reconstruction=r.reconstruction, residual_rel=r.residual_rel,
               coeff_norm_C=r.coeff_norm_C, coefficient_norm=float(np.linalg.norm(r.coefficients)),
               adjoint_expansion=adj, adjoint_residual=adj_err)
    passed = r.residual_rel <= tol.residual_tol and adj_err <= tol.residual_tol * max(1.0, np.linalg.norm(f))
    return passed, out, TRUNCATION_SCOPE


HANDLERS = {
    "frame-bounds": cmd_frame_bounds,
    "dual": cmd_dual,
    "reconstruct": cmd_reconstruct,
    "lframe-audit": cmd_lframe_audit,
    "atomic-build": cmd_atomic_build,
    "verify-theorem5": cmd_verify_theorem5,
    "kernel-eval": cmd_kernel_eval,
    "bekolle-ratio": cmd_bekolle_ratio,
    "sampling-audit": cmd_sampling_audit,
    "sample-reconstruct": cmd_sample_reconstruct,
}

# ------------------------------------------------------------------------ run


def _read(path):
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def run(command, input_path="-", output_path="-", samples=None, degree=None, norm_mode=None) -> int:
    opts = argparse.Namespace(samples=samples, degree=degree, norm_mode=norm_mode)
    report = {"command": command, "version": __version__}
    code = EXIT_INPUT
    try:
        raw = _read(input_path)
        report["input_digest"] = "sha256:" + hashlib.sha256(raw).hexdigest()
        doc = json.loads(raw)
        jsonschema.validate(doc, SCHEMAS[command])
        tol = _tol_from(doc)
        passed, result, scope = HANDLERS[command](doc, opts, tol)
        report.update(result=result, passed=bool(passed), scope=scope,
                      tolerances=dict(tol.snapshot(), rank_cutoff_default="max(rows, cols) * eps * 8"))
        code = EXIT_PASS if passed else EXIT_FAIL
    except (NonFinite, QuadratureDivergence, NotHermitian, np.linalg.LinAlgError, FloatingPointError) as e:
        code = EXIT_NUMERIC
        report["error"] = {"type": type(e).__name__, "message": str(e)}
    except (OSError, json.JSONDecodeError, jsonschema.ValidationError, InputError, DimensionMismatch,
            DomainViolation, NotAvailable, ToolkitError, ValueError, TypeError) as e:
        code = EXIT_INPUT
        msg = e.message if isinstance(e, jsonschema.ValidationError) else str(e)
        report["error"] = {"type": type(e).__name__, "message": msg}
    report["exit_code"] = code
    if "error" in report:
        print(f"atomicframes {command}: {report['error']['type']}: {report['error']['message']}", file=sys.stderr)
    try:
        _write(output_path, canonical_dumps(report))
    except OSError as e:
        print(f"atomicframes: cannot write report: {e}", file=sys.stderr)
        return EXIT_INPUT
    return code


def build_parser():
    p = argparse.ArgumentParser(prog="atomicframes", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", "-i", default="-", help="problem JSON ('-' for stdin)")
    p.add_argument("--output", "-o", default="-", help="report JSON ('-' for stdout)")
    p.add_argument("--samples", type=int, default=None, help="random probe vectors for verify-theorem5")
    p.add_argument("--degree", type=int, default=None, help="truncation degree N")
    p.add_argument("--norm-mode", choices=["truncated", "closed-form"], default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args.command, args.input, args.output, args.samples, args.degree, args.norm_mode)


if __name__ == "__main__":
    sys.exit(main())
