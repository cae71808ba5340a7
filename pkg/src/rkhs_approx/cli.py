"""JSON-configured command line front end.

Five subcommands: interpolate, solve, frame-bounds, hardy-demo, quantize.
Inputs are strict JSON documents (unknown keys rejected, with the offending
path in the error); complex numbers are written as [re, im] arrays. Every
run writes a result document {version, inputs_digest, result, diagnostics}
to --output (stdout by default; for quantize the CSV goes to --output and
the document to stdout). Errors are emitted as structured JSON on stderr.

Exit codes: 0 success, 1 validation error, 2 numerical failure
(non-convergence under --strict, or a linear-algebra breakdown).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
import warnings

import numpy as np

from . import frames, hardy, interpolate, kernels, solver
from .core import BoxSampler, DiskSampler, empirical_measure, make_discrete_measure
from .errors import RKHSApproxError, SchemaError

SCHEMA_VERSION = "rkhs-approx/1"


# -- strict JSON walking --------------------------------------------------------


def _need(doc: dict, path: str, known: dict):
    """Check key set strictly; return {key: subpath} accessor pairs."""
    if not isinstance(doc, dict):
        raise SchemaError(path or "$", f"expected an object, got {type(doc).__name__}")
    for key in doc:
        if key not in known:
            raise SchemaError(f"{path}.{key}" if path else key, "unknown key (strict mode)")
    missing = [k for k, required in known.items() if required and k not in doc]
    if missing:
        raise SchemaError(path or "$", f"missing required key(s): {', '.join(missing)}")


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, f"expected a number, got {value!r}")
    return float(value)


def _integer(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, f"expected an integer, got {value!r}")
    return value


def _string(value, path: str, choices=None) -> str:
    if not isinstance(value, str):
        raise SchemaError(path, f"expected a string, got {value!r}")
    if choices is not None and value not in choices:
        raise SchemaError(path, f"expected one of {sorted(choices)}, got {value!r}")
    return value


def _scalar(value, path: str, field: str):
    """A scalar in the problem's field: number, or [re, im] when complex."""
    if field == "complex":
        if not (isinstance(value, list) and len(value) == 2):
            raise SchemaError(path, "complex scalars are [re, im] pairs")
        return complex(_number(value[0], f"{path}[0]"), _number(value[1], f"{path}[1]"))
    return _number(value, path)


def _points(value, path: str, field: str):
    if not isinstance(value, list) or not value:
        raise SchemaError(path, "expected a nonempty array of points")
    if field == "complex":
        return np.asarray(
            [_scalar(p, f"{path}[{i}]", "complex") for i, p in enumerate(value)], dtype=complex
        )
    rows = []
    for i, p in enumerate(value):
        if isinstance(p, list):
            rows.append([_number(c, f"{path}[{i}][{j}]") for j, c in enumerate(p)])
        else:
            rows.append([_number(p, f"{path}[{i}]")])
    width = {len(r) for r in rows}
    if len(width) != 1:
        raise SchemaError(path, "points must all have the same dimension")
    return np.asarray(rows, dtype=float)


def _kernel(doc, path: str):
    _need(doc, path, {"type": True, "gamma": False, "degree": False, "offset": False,
                      "csv": False, "entries": False})
    kind = _string(doc.get("type"), f"{path}.type",
                   {"gaussian", "laplacian", "polynomial", "szego", "bergman", "custom_gram"})
    def reject(keys):
        for k in keys:
            if k in doc:
                raise SchemaError(f"{path}.{k}", f"not a parameter of the {kind} kernel")
    if kind == "gaussian":
        reject(["degree", "offset", "csv", "entries"])
        return kernels.Gaussian(gamma=_number(doc.get("gamma", 1.0), f"{path}.gamma"))
    if kind == "laplacian":
        reject(["degree", "offset", "csv", "entries"])
        return kernels.Laplacian(gamma=_number(doc.get("gamma", 1.0), f"{path}.gamma"))
    if kind == "polynomial":
        reject(["gamma", "csv", "entries"])
        return kernels.Polynomial(
            degree=_integer(doc.get("degree", 1), f"{path}.degree"),
            offset=_number(doc.get("offset", 1.0), f"{path}.offset"),
        )
    if kind in ("szego", "bergman"):
        reject(["gamma", "degree", "offset", "csv", "entries"])
        return kernels.Szego() if kind == "szego" else kernels.Bergman()
    reject(["gamma", "degree", "offset"])
    if ("csv" in doc) == ("entries" in doc):
        raise SchemaError(path, "custom_gram needs exactly one of 'csv' or 'entries'")
    if "csv" in doc:
        return kernels.CustomGram(read_gram_csv(_string(doc["csv"], f"{path}.csv")))
    rows = doc["entries"]
    if not isinstance(rows, list):
        raise SchemaError(f"{path}.entries", "expected an array of rows")
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise SchemaError(f"{path}.entries[{i}]", "expected a row array")
        parsed.append(
            [
                _scalar(c, f"{path}.entries[{i}][{j}]", "complex")
                if isinstance(c, list)
                else _number(c, f"{path}.entries[{i}][{j}]")
                for j, c in enumerate(row)
            ]
        )
    return kernels.CustomGram(np.asarray(parsed))


def _cost(doc, path: str):
    _need(doc, path, {"type": True, "q": False, "delta": False, "eps": False})
    kind = _string(doc.get("type"), f"{path}.type",
                   {"squared", "power", "huber", "eps_insensitive"})
    extras = {"squared": (), "power": ("q",), "huber": ("delta",), "eps_insensitive": ("eps",)}
    for key in ("q", "delta", "eps"):
        if key in doc and key not in extras[kind]:
            raise SchemaError(f"{path}.{key}", f"not a parameter of the {kind} cost")
    if kind == "squared":
        return solver.Squared()
    if kind == "power":
        return solver.Power(q=_number(doc.get("q", 2.0), f"{path}.q"))
    if kind == "huber":
        return solver.Huber(delta=_number(doc.get("delta", 1.0), f"{path}.delta"))
    return solver.EpsInsensitive(eps=_number(doc.get("eps", 0.1), f"{path}.eps"))


def _solver_opts(doc, path: str, seed_override=None, tol_override=None):
    doc = doc or {}
    _need(doc, path, {"method": False, "tol": False, "max_iter": False, "seed": False})
    method = _string(doc.get("method", "auto"), f"{path}.method",
                     {"auto", "closed_form", "iterative"})
    tol = _number(doc.get("tol", 1e-8), f"{path}.tol") if tol_override is None else tol_override
    seed = doc.get("seed")
    if seed is not None:
        seed = _integer(seed, f"{path}.seed")
    if seed_override is not None:
        seed = seed_override
    return method, solver.IterativeOptions(
        tol=tol, max_iter=_integer(doc.get("max_iter", 50000), f"{path}.max_iter"), seed=seed
    )


def parse_problem(doc, seed_override=None, tol_override=None):
    """ProblemFile -> (ProblemSpec, method, IterativeOptions)."""
    _need(doc, "", {"field": False, "kernel": True, "points": True, "weights": False,
                    "targets": True, "cost": True, "p": True, "solver": False})
    field = _string(doc.get("field", "real"), "field", {"real", "complex"})
    kern = _kernel(doc["kernel"], "kernel")
    if kern.domain == "disk" and field != "complex":
        raise SchemaError("field", "disk kernels need field = 'complex'")
    pts = _points(doc["points"], "points", "complex" if kern.domain == "disk" else "real")
    if "weights" in doc:
        if not isinstance(doc["weights"], list):
            raise SchemaError("weights", "expected an array of positive numbers")
        w = [_number(x, f"weights[{i}]") for i, x in enumerate(doc["weights"])]
    else:
        w = np.full(len(pts), 1.0 / len(pts))
    measure = make_discrete_measure(pts, w)
    if not isinstance(doc["targets"], list):
        raise SchemaError("targets", "expected an array")
    targets = [_scalar(t, f"targets[{i}]", field) for i, t in enumerate(doc["targets"])]
    spec = solver.ProblemSpec(
        kernel=kern,
        measure=measure,
        targets=np.asarray(targets),
        cost=_cost(doc["cost"], "cost"),
        reg_exponent=_number(doc["p"], "p"),
    )
    method, opts = _solver_opts(doc.get("solver"), "solver", seed_override, tol_override)
    return spec, method, opts


# -- Gram matrix CSV ------------------------------------------------------------


def _format_entry(z) -> str:
    if not np.iscomplexobj(np.asarray(z)):
        return repr(float(z))
    z = complex(z)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _parse_entry(text: str):
    text = text.strip()
    if text.endswith("i"):
        return complex(text[:-1].replace(" ", "") + "j")
    return float(text)


def write_gram_csv(entries: np.ndarray, path) -> None:
    """Row-major CSV; complex entries as 'a+bi' text."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in np.atleast_2d(entries):
            writer.writerow([_format_entry(z) for z in row])


def read_gram_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        rows = [[_parse_entry(cell) for cell in row] for row in csv.reader(fh) if row]
    if not rows:
        raise SchemaError(str(path), "empty Gram CSV")
    arr = np.asarray(rows)
    if not np.iscomplexobj(arr) or np.all(arr.imag == 0):
        return np.real(arr)
    return arr


# -- serialization ---------------------------------------------------------------


def _jsonify(value):
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.complexfloating, complex)):
        return [float(np.real(value)), float(np.imag(value))]
    if isinstance(value, np.ndarray):
        return [_jsonify(v) for v in value]
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    return value


def _digest(doc) -> str:
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def _emit(document, output_path) -> None:
    text = json.dumps(document, indent=2) + "\n"
    if output_path is None:
        sys.stdout.write(text)
    else:
        with open(output_path, "w") as fh:
            fh.write(text)


def _fail(exc, exit_code: int) -> int:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, SchemaError):
        payload["error"]["path"] = exc.path
    sys.stderr.write(json.dumps(payload) + "\n")
    return exit_code


# -- subcommand bodies ------------------------------------------------------------


def run_interpolate(doc, args) -> dict:
    _need(doc, "", {"field": False, "kernel": True, "points": True, "targets": True,
                    "rank_tol": False})
    field = _string(doc.get("field", "real"), "field", {"real", "complex"})
    kern = _kernel(doc["kernel"], "kernel")
    if kern.domain == "disk" and field != "complex":
        raise SchemaError("field", "disk kernels need field = 'complex'")
    pts = _points(doc["points"], "points", "complex" if kern.domain == "disk" else "real")
    if not isinstance(doc["targets"], list):
        raise SchemaError("targets", "expected an array")
    targets = np.asarray([_scalar(t, f"targets[{i}]", field) for i, t in enumerate(doc["targets"])])
    rank_tol = _number(doc.get("rank_tol", interpolate.DEFAULT_RANK_TOL), "rank_tol")
    res = interpolate.min_norm_interpolate(kern, pts, targets, rank_tol=rank_tol)
    return {
        "alpha": _jsonify(res.alpha),
        "fitted_values": _jsonify(res.fitted_values),
        "lsq_error": res.lsq_error,
        "rkhs_norm": res.rkhs_norm,
        "nullspace_residual": res.nullspace_residual,
        "rank": res.rank,
        "rank_tol": res.rank_tol,
    }


def run_solve(doc, args) -> dict:
    spec, method, opts = parse_problem(doc, seed_override=args.seed, tol_override=args.tol)
    if method == "closed_form":
        sol = solver.solve_closed_form(spec)
    elif method == "iterative":
        sol = solver.solve_iterative(spec, opts)
    else:
        sol = solver.solve(spec, opts)
    if args.strict and not sol.converged:
        raise _Numerical("solver did not converge within its iteration budget")
    return {
        "alpha": _jsonify(sol.alpha),
        "objective": sol.objective,
        "data_term": sol.data_term,
        "reg_term": sol.reg_term,
        "rkhs_norm": sol.rkhs_norm,
        "iterations": sol.iterations,
        "converged": sol.converged,
        "method": sol.method,
    }


def run_frame_bounds(doc, args) -> dict:
    _need(doc, "", {"field": False, "kernel": True, "points": True, "weights": False,
                    "p": False, "n_samples": False, "seed": False})
    field = _string(doc.get("field", "real"), "field", {"real", "complex"})
    kern = _kernel(doc["kernel"], "kernel")
    if kern.domain == "disk" and field != "complex":
        raise SchemaError("field", "disk kernels need field = 'complex'")
    pts = _points(doc["points"], "points", "complex" if kern.domain == "disk" else "real")
    if "weights" in doc:
        w = [_number(x, f"weights[{i}]") for i, x in enumerate(doc["weights"])]
    else:
        w = np.full(len(pts), 1.0 / len(pts))
    mu = make_discrete_measure(pts, w)
    p = _number(doc.get("p", 2.0), "p")
    n_samples = _integer(doc.get("n_samples", 1000), "n_samples")
    seed = doc.get("seed", 0)
    if args.seed is not None:
        seed = args.seed
    report = frames.norm_equivalence_report(kern, mu, p, n_samples, seed)
    if args.histogram:
        with open(args.histogram, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["sample", "ratio"])
            writer.writerows(enumerate(report.ratios.tolist()))
    return {
        "p": report.p,
        "c1": report.c1,
        "c2": report.c2,
        "eigen": None
        if report.eigen is None
        else {"lower": report.eigen.lower, "upper": report.eigen.upper},
        "sampled": {
            "lower": report.sampled.lower,
            "upper": report.sampled.upper,
            "n_samples": report.sampled.n_samples,
            "seed": _jsonify(report.sampled.seed),
        },
        "rank": report.rank,
        "n_points": report.n_points,
        "full_rank": report.full_rank,
        "note": report.note,
    }


def run_hardy_demo(doc, args) -> dict:
    _need(doc, "", {"coefficients": True, "radius": True, "truncation": False,
                    "quadrature": False, "node_check": False})
    if not isinstance(doc["coefficients"], list):
        raise SchemaError("coefficients", "expected an array")
    coeffs = [
        _scalar(c, f"coefficients[{i}]", "complex") if isinstance(c, list)
        else _number(c, f"coefficients[{i}]")
        for i, c in enumerate(doc["coefficients"])
    ]
    quad_doc = doc.get("quadrature", {})
    _need(quad_doc, "quadrature", {"n_r": False, "n_theta": False})
    quad = hardy.QuadratureSpec(
        n_r=_integer(quad_doc.get("n_r", 64), "quadrature.n_r"),
        n_theta=_integer(quad_doc.get("n_theta", 64), "quadrature.n_theta"),
    )
    trunc = doc.get("truncation")
    if trunc is not None:
        trunc = _integer(trunc, "truncation")
    node_check = doc.get("node_check", False)
    if not isinstance(node_check, bool):
        raise SchemaError("node_check", "expected a boolean")
    report = hardy.hardy_demo(
        hardy.CoefficientFunction(np.asarray(coeffs, dtype=complex), hardy.BERGMAN),
        _number(doc["radius"], "radius"),
        truncation=trunc,
        quad=quad,
        node_check=node_check,
    )
    if args.coeffs_csv:
        with open(args.coeffs_csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "formula", "computed", "deviation"])
            for n, formula, computed, dev in report.table:
                writer.writerow([n, _format_entry(formula), _format_entry(computed), repr(dev)])
    return {
        "radius": report.r,
        "truncation": report.truncation,
        "quadrature": {"n_r": report.quad.n_r, "n_theta": report.quad.n_theta},
        "coefficients": [
            {"n": n, "formula": _jsonify(f), "computed": _jsonify(c), "deviation": d}
            for n, f, c, d in report.table
        ],
        "max_deviation": report.max_deviation,
        "tail_shrinkage": report.tail_shrinkage,
        "tail_estimate": report.tail_estimate,
        "node_check_deviation": report.node_check_deviation,
    }


def _sampler(doc, path: str):
    _need(doc, path, {"type": True, "lows": False, "highs": False, "radius": False})
    kind = _string(doc.get("type"), f"{path}.type", {"box", "disk"})
    if kind == "box":
        for key in ("lows", "highs"):
            if key not in doc or not isinstance(doc[key], list):
                raise SchemaError(f"{path}.{key}", "box sampler needs bound arrays")
        return BoxSampler(
            lows=tuple(_number(v, f"{path}.lows[{i}]") for i, v in enumerate(doc["lows"])),
            highs=tuple(_number(v, f"{path}.highs[{i}]") for i, v in enumerate(doc["highs"])),
        )
    if "radius" not in doc:
        raise SchemaError(f"{path}.radius", "disk sampler needs a radius")
    return DiskSampler(radius=_number(doc["radius"], f"{path}.radius"))


def _target(doc, path: str, domain: str):
    _need(doc, path, {"type": True, "intercept": False, "slope": False, "coefficients": False})
    kind = _string(doc.get("type"), f"{path}.type", {"affine", "polynomial", "power_series"})
    if kind == "affine":
        intercept = _number(doc.get("intercept", 0.0), f"{path}.intercept")
        slope = [_number(v, f"{path}.slope[{i}]") for i, v in enumerate(doc.get("slope", []))]

        def affine(points):
            if len(slope) != points.shape[1]:
                raise SchemaError(f"{path}.slope", "slope length must match point dimension")
            return intercept + points @ np.asarray(slope)

        return affine
    if "coefficients" not in doc or not isinstance(doc["coefficients"], list):
        raise SchemaError(f"{path}.coefficients", "expected an array")
    if kind == "polynomial":
        coeffs = [_number(c, f"{path}.coefficients[{i}]") for i, c in enumerate(doc["coefficients"])]

        def poly(points):
            if points.shape[1] != 1:
                raise SchemaError(f"{path}.type", "polynomial target needs 1-D points")
            return np.polynomial.polynomial.polyval(points[:, 0], coeffs)

        return poly
    coeffs = [
        _scalar(c, f"{path}.coefficients[{i}]", "complex") if isinstance(c, list)
        else _number(c, f"{path}.coefficients[{i}]")
        for i, c in enumerate(doc["coefficients"])
    ]
    series = hardy.CoefficientFunction(np.asarray(coeffs, dtype=complex), hardy.BERGMAN)
    if domain != "disk":
        raise SchemaError(f"{path}.type", "power_series target needs the disk sampler")
    return series


def _default_probes(sampler):
    if isinstance(sampler, DiskSampler):
        r = 0.5 * min(sampler.radius, 1.0)
        return np.asarray([r * np.exp(2j * np.pi * k / 5) for k in range(5)])
    lo = np.asarray(sampler.lows)
    hi = np.asarray(sampler.highs)
    fracs = [0.5, 0.25, 0.75, 0.1, 0.9]
    return np.asarray([lo + f * (hi - lo) for f in fracs])


def run_quantize_study(doc, args) -> dict:
    _need(doc, "", {"sampler": True, "target": True, "kernel": True, "cost": True, "p": True,
                    "sizes": True, "repetitions": False, "seed": False, "probes": False,
                    "solver": False})
    sampler = _sampler(doc["sampler"], "sampler")
    domain = "disk" if isinstance(sampler, DiskSampler) else "euclidean"
    target = _target(doc["target"], "target", domain)
    kern = _kernel(doc["kernel"], "kernel")
    if (kern.domain == "disk") != (domain == "disk"):
        raise SchemaError("kernel.type", "kernel domain must match the sampler domain")
    cost = _cost(doc["cost"], "cost")
    p = _number(doc["p"], "p")
    sizes = doc["sizes"]
    if not isinstance(sizes, list) or not sizes:
        raise SchemaError("sizes", "expected a nonempty array of sizes")
    sizes = [_integer(n, f"sizes[{i}]") for i, n in enumerate(sizes)]
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise SchemaError("sizes", "sizes must be strictly increasing")
    reps = _integer(doc.get("repetitions", 1), "repetitions")
    if reps < 1:
        raise SchemaError("repetitions", "need at least one repetition")
    seed = _integer(doc.get("seed", 0), "seed") if args.seed is None else args.seed
    method, opts = _solver_opts(doc.get("solver"), "solver", tol_override=args.tol)
    if "probes" in doc:
        probes = _points(doc["probes"], "probes", "complex" if domain == "disk" else "real")
    else:
        probes = _default_probes(sampler)

    if args.output is None:
        raise SchemaError("$", "quantize writes CSV rows; an --output path is required")

    rows = []
    probe_values = {}
    scatter = {}
    for i_n, n in enumerate(sizes):
        per_rep = []
        for rep in range(reps):
            mu = empirical_measure(sampler, n, seed=[seed, i_n, rep])
            g = target(mu.points)
            spec = solver.ProblemSpec(
                kernel=kern, measure=mu, targets=np.asarray(g), cost=cost, reg_exponent=p
            )
            if method == "closed_form":
                sol = solver.solve_closed_form(spec)
            elif method == "iterative":
                sol = solver.solve_iterative(spec, opts)
            else:
                sol = solver.solve(spec, opts)
            if args.strict and not sol.converged:
                raise _Numerical(f"solve at N={n} repetition {rep} did not converge")
            pv = kernels.cross_matrix(kern, probes, mu.points) @ sol.alpha
            per_rep.append((sol, pv))
        drifts = []
        for rep, (sol, pv) in enumerate(per_rep):
            drift = 0.0
            for other, (_, pv2) in enumerate(per_rep):
                if other != rep:
                    drift = max(drift, float(np.max(np.abs(pv - pv2))))
            drifts.append(drift)
            rows.append((n, rep, sol.objective, sol.rkhs_norm, drift))
        probe_values[n] = per_rep[0][1]
        scatter[n] = float(np.median(drifts))

    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["N", "repetition", "objective", "rkhs_norm", "probe_drift"])
        for n, rep, obj_val, norm, drift in rows:
            writer.writerow([n, rep, repr(obj_val), repr(norm), repr(drift)])

    cross_drift = [
        {
            "from": a,
            "to": b,
            "max_probe_change": float(np.max(np.abs(probe_values[b] - probe_values[a]))),
        }
        for a, b in zip(sizes, sizes[1:])
    ]
    return {
        "csv": args.output,
        "sizes": sizes,
        "repetitions": reps,
        "seed": seed,
        "probe_points": _jsonify(probes),
        "probe_values_first_repetition": {str(n): _jsonify(v) for n, v in probe_values.items()},
        "cross_size_drift": cross_drift,
        "repetition_scatter_median": {str(n): scatter[n] for n in sizes},
    }


class _Numerical(RuntimeError):
    """Internal marker for exit code 2."""


# -- entry points -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rkhs-approx", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    bodies = {
        "interpolate": run_interpolate,
        "solve": run_solve,
        "frame-bounds": run_frame_bounds,
        "hardy-demo": run_hardy_demo,
        "quantize": run_quantize_study,
    }
    for name, body in bodies.items():
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="problem JSON file")
        p.add_argument("--output", default=None, help="result path (default stdout)")
        p.add_argument("--seed", type=int, default=None, help="override file-level seeds")
        p.add_argument("--strict", action="store_true",
                       help="treat non-convergence as failure (exit 2)")
        p.add_argument("--tol", type=float, default=None, help="override solver tolerance")
        if name == "frame-bounds":
            p.add_argument("--histogram", default=None, help="write sampled ratios CSV here")
        if name == "hardy-demo":
            p.add_argument("--coeffs-csv", default=None, help="write coefficient table CSV here")
        p.set_defaults(body=body)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.input) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        return _fail(exc, 1)
    diagnostics = []
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = args.body(doc, args)
        diagnostics = [str(w.message) for w in caught]
    except (RKHSApproxError, ValueError) as exc:
        return _fail(exc, 1)
    except (_Numerical, np.linalg.LinAlgError) as exc:
        return _fail(exc, 2)
    document = {
        "version": SCHEMA_VERSION,
        "inputs_digest": _digest(doc),
        "result": result,
        "diagnostics": diagnostics,
    }
    # quantize already wrote its CSV to --output; its document goes to stdout
    _emit(document, None if args.command == "quantize" else args.output)
    return 0


def console_main() -> None:
    sys.exit(main())
