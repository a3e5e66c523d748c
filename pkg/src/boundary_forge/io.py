"""Design-spec JSON loading and CSV/JSON report writing."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import jsonschema
import numpy as np

from .dynamics import SimConfig
from .force import Duffing, Polynomial, Tabulated, TargetForce
from .synthesis import BranchId, DesignSpec, Numerics, family_spec

_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}

SPEC_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["force", "k_eff", "delta", "rod_length"],
    "properties": {
        "force": {
            "oneOf": [
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["type", "coeffs"],
                    "properties": {
                        "type": {"const": "polynomial"},
                        "coeffs": {"type": "array", "items": _NUM, "minItems": 1},
                    },
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["type", "k3"],
                    "properties": {"type": {"const": "duffing"}, "k3": _NUM},
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["type", "samples"],
                    "properties": {
                        "type": {"const": "tabulated"},
                        "samples": {
                            "type": "array",
                            "minItems": 2,
                            "items": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2},
                        },
                    },
                },
            ]
        },
        "k_eff": _NUM,
        "delta": _NUM,
        "rod_length": _NUM,
        "sim": {
            "type": "object",
            "additionalProperties": False,
            "required": ["mass", "dt", "t_end"],
            "properties": {
                "mass": _POS,
                "dt": _POS,
                "t_end": {"type": "number", "minimum": 0},
                "x0": _NUM,
                "v0": _NUM,
            },
        },
        "numerics": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "scan_step": _POS,
                "scan_horizon": _POS,
                "bisect_tol": _POS,
                "n_samples": {"type": "integer", "minimum": 2},
            },
        },
    },
}


class SchemaError(ValueError):
    """The design file is not valid JSON or does not match SPEC_SCHEMA."""


@dataclass(frozen=True)
class SpecFile:
    """Parsed design file.

    The DesignSpec is only built on demand, so K = 0 or |delta| >= L surface
    as synthesis errors rather than schema errors.
    """

    force: TargetForce
    k_eff: float
    delta: float
    rod_length: float
    sim: SimConfig | None
    numerics: Numerics

    def design(self) -> DesignSpec:
        return DesignSpec(self.force, self.k_eff, self.delta, self.rod_length)

    def branch_design(self, name: str | None) -> tuple[DesignSpec, BranchId]:
        """Design and branch for ``name``; None picks the branch through Y(0) = delta."""
        if name is None:
            spec = self.design()
            return spec, BranchId.for_spec(spec)
        bid = BranchId.from_name(name)
        return family_spec(self.force, abs(self.k_eff), abs(self.delta), self.rod_length, bid), bid


def parse_force(doc: dict) -> TargetForce:
    kind = doc["type"]
    if kind == "duffing":
        return Duffing(float(doc["k3"]))
    if kind == "polynomial":
        return Polynomial(doc["coeffs"])
    try:
        return Tabulated(doc["samples"])
    except ValueError as exc:
        raise SchemaError(f"force.samples: {exc}") from exc


def parse_spec(doc) -> SpecFile:
    try:
        jsonschema.validate(doc, SPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from exc
    sim = None
    if "sim" in doc:
        sim = SimConfig(**{k: float(v) for k, v in doc["sim"].items()})
    numerics = Numerics(**doc.get("numerics", {}))
    return SpecFile(
        force=parse_force(doc["force"]),
        k_eff=float(doc["k_eff"]),
        delta=float(doc["delta"]),
        rod_length=float(doc["rod_length"]),
        sim=sim,
        numerics=numerics,
    )


def load_spec(path) -> SpecFile:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    return parse_spec(doc)


def fmt(v: float) -> str:
    return f"{v:.17g}"


def write_csv(path, header: list[str], rows, footer: str | None = None) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(float(v)) for v in row])
        if footer is not None:
            fh.write(f"# {footer}\n")


def read_csv(path) -> tuple[list[str], np.ndarray]:
    """Read a numeric CSV written by ``write_csv``; '#' lines are skipped."""
    with Path(path).open(newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    data = [[float(v) for v in row] for row in reader if row]
    return header, np.array(data, dtype=float).reshape(-1, len(header))


def jsonable(v):
    """Replace non-finite floats with None so reports stay strict JSON."""
    if isinstance(v, dict):
        return {k: jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def write_json(path, doc) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(jsonable(doc), indent=2) + "\n")
