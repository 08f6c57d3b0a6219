"""Profile documents (JSON in) and curve tables (CSV / JSON out).

A profile document either lists the three Darboux scalars as expression
strings or names a family case::

    {"kappa_g": "sin(x)", "kappa_n": "cos(x)", "tau_g": "x",
     "domain": [0.0, 3.0], "samples": 3001,
     "constants": {"tangent_y": -0.93, "position_y": 0.93}}

    {"family": {"name": "geodesic", "case": "circular_helix",
                "params": {"e": 1, "c": 1, "c1": 0}},
     "domain": [0.0, 6.0], "samples": 2001}

Free curvature functions of a family case go in ``family.functions``.
Tables are written with 17 significant digits so that every double
survives a round trip, and byte-for-byte identically for equal input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional, Sequence

import jsonschema
import numpy as np

from .errors import GridError, ParseError, ProfileIOError, SpecError, ValidationError
from .expr import Expression, parse
from .families import Case, Family, FamilySpec, resolve_profile
from .frames import DarbouxField, FrenetField, SampledCurve
from .quadrature import Grid
from .synthesis import CurvatureProfile, IntegrationConstants

_EXPRESSIONS = ("kappa_g", "kappa_n", "tau_g")
_CONSTANT_NAMES = tuple(f.name for f in fields(IntegrationConstants))

PROFILE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["domain", "samples"],
    "properties": {
        **{name: {"type": "string"} for name in _EXPRESSIONS},
        "family": {
            "type": "object",
            "additionalProperties": False,
            "required": ["name", "case"],
            "properties": {
                "name": {"enum": [f.value for f in Family]},
                "case": {"enum": [c.value for c in Case]},
                "params": {"type": "object", "additionalProperties": {"type": "number"}},
                "functions": {"type": "object", "additionalProperties": {"type": "string"}},
            },
        },
        "domain": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "samples": {"type": "integer", "minimum": 5, "not": {"multipleOf": 2}},
        "constants": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                name: ({"type": ["number", "null"]} if name.startswith("inner") else {"type": "number"})
                for name in _CONSTANT_NAMES
            },
        },
    },
}
_VALIDATOR = jsonschema.Draft202012Validator(PROFILE_SCHEMA)


def _pointer(parts) -> str:
    parts = [str(p).replace("~", "~0").replace("/", "~1") for p in parts]
    return "/" + "/".join(parts) if parts else "/"


@dataclass(frozen=True)
class ProfileDocument:
    """A validated profile: explicit Darboux data or a family case, on a grid."""

    grid: Grid
    expressions: Optional[tuple] = None
    family: Optional[FamilySpec] = None
    constants: IntegrationConstants = IntegrationConstants()
    source: Optional[dict] = None

    def profile(self) -> CurvatureProfile:
        if self.family is not None:
            return resolve_profile(self.family, self.grid)
        kg, kn, tg = self.expressions
        return CurvatureProfile(kg, kn, tg, self.grid, self.constants)


def parse_profile(doc) -> ProfileDocument:
    """Validate a decoded JSON object and build a :class:`ProfileDocument`."""
    error = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(doc))
    if error is not None:
        message = error.message
        if error.validator == "not" and list(error.absolute_path) == ["samples"]:
            message = f"sample count must be odd, got {error.instance}"
        raise ValidationError(_pointer(error.absolute_path), message)

    a, b = (float(v) for v in doc["domain"])
    try:
        grid = Grid(a, b, int(doc["samples"]))
    except GridError as exc:
        raise ValidationError("/domain", str(exc)) from None

    present = [name for name in _EXPRESSIONS if name in doc]
    if "family" in doc:
        if present:
            raise ValidationError(f"/{present[0]}", "explicit curvatures cannot be combined with a family")
        if "constants" in doc:
            raise ValidationError("/constants", "family cases fix their own integration constants")
        fam = doc["family"]
        functions = {}
        for name, text in fam.get("functions", {}).items():
            functions[name] = _parse_field(text, f"/family/functions/{name}")
        try:
            spec = FamilySpec(fam["name"], fam["case"], fam.get("params", {}), functions)
        except SpecError as exc:
            raise ValidationError("/family", str(exc)) from None
        return ProfileDocument(grid, family=spec, source=doc)

    missing = [name for name in _EXPRESSIONS if name not in doc]
    if missing:
        raise ValidationError("/", f"need either 'family' or all of kappa_g, kappa_n, tau_g (missing {missing[0]!r})")
    exprs = tuple(_parse_field(doc[name], f"/{name}") for name in _EXPRESSIONS)
    consts = IntegrationConstants(**doc.get("constants", {}))
    return ProfileDocument(grid, expressions=exprs, constants=consts, source=doc)


def _parse_field(text, pointer) -> Expression:
    try:
        return parse(text, "x")
    except ParseError as exc:
        raise ValidationError(pointer, str(exc)) from None


def load_profile(path) -> ProfileDocument:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ProfileIOError(f"cannot read profile {path}: {exc}") from None
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError("/", f"invalid JSON: {exc}") from None
    return parse_profile(doc)


@dataclass(frozen=True)
class CurveTable:
    """Named columns over a row-major matrix of finite doubles."""

    columns: tuple
    data: np.ndarray

    def __post_init__(self):
        cols = tuple(str(c) for c in self.columns)
        data = np.array(self.data, dtype=float)
        if data.ndim != 2 or data.shape[1] != len(cols):
            raise ValueError(f"table needs shape (rows, {len(cols)}), got {data.shape}")
        if len(set(cols)) != len(cols):
            raise ValueError("duplicate column names")
        if not np.all(np.isfinite(data)):
            raise ValueError("table values must be finite")
        data.flags.writeable = False
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "data", data)

    def column(self, name) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    @classmethod
    def from_columns(cls, named: Sequence[tuple]):
        names = [n for n, _ in named]
        return cls(tuple(names), np.column_stack([np.asarray(v, dtype=float) for _, v in named]))


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _write(path, text: str):
    try:
        Path(path).write_bytes(text.encode("utf-8"))
    except OSError as exc:
        raise ProfileIOError(f"cannot write {path}: {exc}") from None


def table_to_csv(t: CurveTable) -> str:
    lines = [",".join(t.columns)]
    lines.extend(",".join(_fmt(v) for v in row) for row in t.data)
    return "\n".join(lines) + "\n"


def table_to_json(t: CurveTable) -> str:
    rows = ",\n".join("  [" + ", ".join(_fmt(v) for v in row) + "]" for row in t.data)
    cols = json.dumps(list(t.columns))
    return f'{{"columns": {cols},\n"rows": [\n{rows}\n]}}\n'


def export_csv(t: CurveTable, path):
    _write(path, table_to_csv(t))


def export_json(t: CurveTable, path):
    _write(path, table_to_json(t))


def load_table_json(path) -> CurveTable:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ProfileIOError(f"cannot read table {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError("/", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"columns", "rows"}:
        raise ValidationError("/", "table must be an object with exactly 'columns' and 'rows'")
    data = np.array(doc["rows"], dtype=float).reshape(-1, len(doc["columns"]))
    return CurveTable(tuple(doc["columns"]), data)


def write_json(obj, path):
    """Deterministic pretty JSON (sorted keys, LF, trailing newline)."""
    _write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


# -- table builders -------------------------------------------------------

def _vec(prefix, arr):
    return [(f"{prefix}{i + 1}", arr[:, i]) for i in range(3)]


def curve_table(curve: SampledCurve) -> CurveTable:
    return CurveTable.from_columns([("x", curve.grid.nodes), *_vec("p", curve.points)])


def frames_table(frenet: FrenetField, darboux: Optional[DarbouxField] = None) -> CurveTable:
    cols = [
        ("x", frenet.grid.nodes),
        *_vec("T", frenet.T),
        *_vec("N", frenet.N),
        *_vec("B", frenet.B),
        ("kappa", frenet.kappa),
        ("tau", frenet.tau),
    ]
    if darboux is not None:
        cols += [
            *_vec("Q", darboux.Q),
            *_vec("n", darboux.n_vec),
            ("kappa_g", darboux.kappa_g),
            ("kappa_n", darboux.kappa_n),
            ("tau_g", darboux.tau_g),
        ]
    return CurveTable.from_columns(cols)
