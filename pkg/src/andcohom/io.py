"""JSON file formats.

Instance:  {"ground": [names], "target": "0110", "family": ["0111", ...]}
Graph:     {"vertices": n, "edges": [[u, v], ...]}
Presheaf:  {"graph": <graph>, "field": "rational", "dims": [...],
            "maps": [[["1", "-1/2"], ...], ...]}   one matrix per edge
Model:     {"ground": [names], "base": "000", "dims": {"100": 1, ...},
            "target": "101", "family": [...]}       family optional

Rationals are written as "p/q" strings (plain integers when q = 1).
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path as FsPath

from .boolfun import BoolFun, GroundSet
from .freecat import Dag
from .linalg import Field, format_scalar
from .setcover import INFINITE, AndInstance, LpResult, SizeResult
from .sheaves import NatTrans, Presheaf


class InputError(ValueError):
    pass


def load_json(path) -> dict:
    try:
        return json.loads(FsPath(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def instance_from_json(data: dict) -> AndInstance:
    try:
        ground = GroundSet(data["ground"])
        target = BoolFun.from_bitstring(ground, data["target"])
        family = [BoolFun.from_bitstring(ground, b) for b in data["family"]]
        return AndInstance(target, family)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad instance: {exc}") from exc


def instance_to_json(inst: AndInstance) -> dict:
    return {
        "ground": list(inst.ground.names),
        "target": inst.target.bitstring(),
        "family": [g.bitstring() for g in inst.family],
    }


def graph_from_json(data: dict) -> Dag:
    try:
        return Dag(int(data["vertices"]), data["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad graph: {exc}") from exc


def graph_to_json(dag: Dag) -> dict:
    return {"vertices": dag.vertex_count, "edges": [list(e) for e in dag.edges]}


def matrix_to_json(m) -> list[list[str]]:
    return [[format_scalar(v) for v in row] for row in m.tolist()]


def presheaf_to_json(F: Presheaf) -> dict:
    return {
        "graph": graph_to_json(F.dag),
        "field": str(F.field),
        "dims": list(F.dims),
        "maps": [matrix_to_json(m) for m in F.maps],
    }


def presheaf_from_json(data: dict, dag: Dag | None = None) -> Presheaf:
    try:
        dag = dag or graph_from_json(data["graph"])
        field = Field.parse(data.get("field", "rational"))
        return Presheaf.from_maps(dag, data["dims"], data["maps"], field)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad presheaf: {exc}") from exc


def nattrans_to_json(t: NatTrans) -> list[list[list[str]]]:
    return [matrix_to_json(c) for c in t.components]


def vze_to_json(w) -> dict:
    out = presheaf_to_json(w.H)
    out["alpha"] = nattrans_to_json(w.alpha)
    out["delta"] = nattrans_to_json(w.delta)
    out["U"] = sorted(w.U.members)
    out["Z"] = sorted(w.Z.members)
    return out


def rational_or_infinite(v) -> str:
    return "infinite" if v is INFINITE else format_scalar(v)


def size_to_json(res: SizeResult) -> dict:
    return {"value": rational_or_infinite(res.value),
            "witness": None if res.witness is None else list(res.witness)}


def lp_to_json(res: LpResult) -> dict:
    out = {"value": rational_or_infinite(res.value)}
    if res.finite:
        out["primal"] = {str(i): format_scalar(v) for i, v in res.primal.items()}
        out["dual"] = {s: format_scalar(v) for s, v in res.dual.items()}
    else:
        out["unbounded_dual_element"] = res.dual_ray
    return out


def measure_table_to_json(values) -> list[str]:
    return [format_scalar(v) for v in values]


def parse_rational(text) -> Fraction:
    return Fraction(str(text))
