"""Surface specification files, report serialisation and mesh / CSV export.

Spec files are JSON::

    {"n": 2, "ambient": "euclidean",
     "matrix": [[1, 0], [1, 1]],
     "profiles": [{"kind": "quadratic", "c": 1}, {"kind": "linear", "c": 0.5}]}

Missing optional parameters (``d``, ``e``, ``s``) default to zero.
"""

from __future__ import annotations

import io as _io
import json
import math

import numpy as np

from .errors import HypersurfaceError, SpecParseError
from .model import Ambient, HypersurfaceSpec, make_affine_map
from .profiles import PROFILE_KINDS, Polynomial

# (name, default); default None marks a required parameter
PROFILE_FIELDS = {
    "linear": (("c", None), ("d", 0.0)),
    "quadratic": (("c", None), ("d", 0.0), ("e", 0.0)),
    "exp_pair": (("c", None), ("d", 0.0), ("a", None), ("s", 0.0)),
    "trig_pair": (("c", None), ("d", 0.0), ("a", None), ("s", 0.0)),
    "log_cos": (("c", None),),
}


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecParseError(path, f"expected a number, got {json.dumps(value)}")
    value = float(value)
    if not math.isfinite(value):
        raise SpecParseError(path, "expected a finite number")
    return value


def profile_from_dict(doc, path):
    if not isinstance(doc, dict):
        raise SpecParseError(path, "profile must be an object")
    kind = doc.get("kind")
    if kind not in PROFILE_KINDS:
        raise SpecParseError(f"{path}.kind", f"unknown profile kind {json.dumps(kind)}; "
                             f"expected one of {', '.join(PROFILE_KINDS)}")
    if kind == "polynomial":
        allowed = {"kind", "coeffs"}
        coeffs = doc.get("coeffs")
        if not isinstance(coeffs, list) or not coeffs:
            raise SpecParseError(f"{path}.coeffs", "expected a non-empty array of numbers")
        values = [_number(c, f"{path}.coeffs[{k}]") for k, c in enumerate(coeffs)]
        builder = lambda: Polynomial(tuple(values))  # noqa: E731
    else:
        fields = PROFILE_FIELDS[kind]
        allowed = {"kind"} | {name for name, _ in fields}
        kwargs = {}
        for name, default in fields:
            if name in doc:
                kwargs[name] = _number(doc[name], f"{path}.{name}")
            elif default is None:
                raise SpecParseError(f"{path}.{name}", f"missing required parameter for {kind}")
            else:
                kwargs[name] = default
        builder = lambda: PROFILE_KINDS[kind](**kwargs)  # noqa: E731
    extra = sorted(set(doc) - allowed)
    if extra:
        raise SpecParseError(f"{path}.{extra[0]}", f"unexpected field for {kind}")
    try:
        return builder()
    except HypersurfaceError as exc:
        raise SpecParseError(path, str(exc)) from exc


def spec_from_dict(doc) -> HypersurfaceSpec:
    if not isinstance(doc, dict):
        raise SpecParseError("", "top level must be an object")
    extra = sorted(set(doc) - {"n", "ambient", "matrix", "profiles"})
    if extra:
        raise SpecParseError(extra[0], "unexpected field")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int):
        raise SpecParseError("n", "expected an integer")
    ambient = doc.get("ambient", Ambient.EUCLIDEAN.value)
    if ambient not in {a.value for a in Ambient}:
        raise SpecParseError("ambient", 'expected "euclidean" or "isotropic"')
    matrix = doc.get("matrix")
    if not isinstance(matrix, list) or len(matrix) != n:
        raise SpecParseError("matrix", f"expected {n} rows")
    rows = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != n:
            raise SpecParseError(f"matrix[{i}]", f"expected {n} entries")
        rows.append([_number(v, f"matrix[{i}][{j}]") for j, v in enumerate(row)])
    profiles = doc.get("profiles")
    if not isinstance(profiles, list) or len(profiles) != n:
        raise SpecParseError("profiles", f"expected an array of {n} profiles")
    parsed = [profile_from_dict(p, f"profiles[{i}]") for i, p in enumerate(profiles)]
    try:
        amap = make_affine_map(rows)
    except HypersurfaceError as exc:
        raise SpecParseError("matrix", str(exc)) from exc
    return HypersurfaceSpec(amap, parsed, Ambient(ambient))


def parse_spec(text) -> HypersurfaceSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc
    return spec_from_dict(doc)


def load_spec(path) -> HypersurfaceSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def profile_to_dict(profile):
    return {"kind": profile.kind, **profile.params()}


def spec_to_dict(spec: HypersurfaceSpec):
    return {
        "n": spec.n,
        "ambient": spec.ambient.value,
        "matrix": spec.map.entries.tolist(),
        "profiles": [profile_to_dict(p) for p in spec.profiles],
    }


def dump_spec(spec: HypersurfaceSpec) -> str:
    """JSON text; floats use Python's shortest round-trip repr."""
    return json.dumps(spec_to_dict(spec), indent=2) + "\n"


# -- reports -------------------------------------------------------------------


def _format_scalar(value):
    if value is None:
        return "null"
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return "null"
        return format(value, ".17g")
    return json.dumps(value)


def format_json(obj, indent=2, _level=0) -> str:
    """JSON with every float printed to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {format_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [f"{pad}{format_json(v, indent, _level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return _format_scalar(obj)


# -- mesh / CSV ------------------------------------------------------------------


def obj_text(grid_points, heights, keep, points_per_axis) -> str:
    """OBJ mesh of an n = 2 graph sampled on a tensor grid.

    ``grid_points`` and ``heights`` cover the full grid in row-major order;
    only kept vertices are written and a grid cell becomes two triangles when
    all four corners are kept.
    """
    grid_points = np.asarray(grid_points)
    if grid_points.shape[1] != 2:
        raise ValueError("OBJ export needs a two-dimensional base")
    m = points_per_axis
    index = np.full(m * m, 0, dtype=int)
    out = _io.StringIO()
    count = 0
    for k in range(m * m):
        if keep[k]:
            count += 1
            index[k] = count
            x1, x2 = grid_points[k]
            out.write(f"v {x1:.17g} {x2:.17g} {heights[k]:.17g}\n")
    for i in range(m - 1):
        for j in range(m - 1):
            a, b = i * m + j, i * m + j + 1
            c, d = (i + 1) * m + j, (i + 1) * m + j + 1
            if keep[a] and keep[b] and keep[c] and keep[d]:
                out.write(f"f {index[a]} {index[c]} {index[d]}\n")
                out.write(f"f {index[a]} {index[d]} {index[b]}\n")
    return out.getvalue()


def csv_text(points, heights, quantity=None, quantity_name="quantity") -> str:
    """CSV with header x_1..x_n,z[,quantity] and one row per point."""
    points = np.asarray(points)
    n = points.shape[1]
    header = [f"x_{i + 1}" for i in range(n)] + ["z"]
    if quantity is not None:
        header.append(quantity_name)
    lines = [",".join(header)]
    for k in range(points.shape[0]):
        row = [format(float(v), ".17g") for v in points[k]] + [format(float(heights[k]), ".17g")]
        if quantity is not None:
            row.append(format(float(quantity[k]), ".17g"))
        lines.append(",".join(row))
    return "\r\n".join(lines) + "\r\n"
