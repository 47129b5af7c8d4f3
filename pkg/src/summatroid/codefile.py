"""JSON code description files.

Example::

    {
      "p": 2, "M": 2, "modulus": [1, 1, 1],
      "blocks": [{"subfield_degree": 1, "n": 2}],
      "generator": [[[1, 0], [0, 1]]]
    }

Field elements are coefficient lists over GF(p), lowest degree first.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .field_tower import FieldTower
from .sumrank_code import SumRankCode


class CodeFileError(ValueError):
    pass


def _require(doc: dict, key: str, kind):
    if key not in doc:
        raise CodeFileError(f"missing field {key!r}")
    if not isinstance(doc[key], kind):
        raise CodeFileError(f"field {key!r} has the wrong type")
    return doc[key]


def parse_code(doc: dict) -> SumRankCode:
    """Build a code from a decoded document; tower errors propagate as TowerError."""
    if not isinstance(doc, dict):
        raise CodeFileError("code file must hold a JSON object")
    p = _require(doc, "p", int)
    M = _require(doc, "M", int)
    modulus = _require(doc, "modulus", list)
    blocks = _require(doc, "blocks", list)
    rows = _require(doc, "generator", list)
    if not all(isinstance(c, int) for c in modulus):
        raise CodeFileError("modulus must be a list of integers")
    try:
        degrees = [int(b["subfield_degree"]) for b in blocks]
        ns = [int(b["n"]) for b in blocks]
    except (KeyError, TypeError, ValueError) as exc:
        raise CodeFileError(f"malformed block description: {exc}") from None
    tower = FieldTower(p, M, modulus, degrees)
    n = sum(ns)
    try:
        G = [[tower.from_coeffs(entry) for entry in row] for row in rows]
    except (TypeError, ValueError) as exc:
        raise CodeFileError(f"malformed generator entry: {exc}") from None
    if any(len(row) != n for row in G):
        raise CodeFileError(f"generator rows must have length {n}")
    try:
        return SumRankCode(tower, ns, np.array(G, dtype=np.intp).reshape(len(G), n))
    except ValueError as exc:
        raise CodeFileError(str(exc)) from None


def load_code(path: str | Path) -> SumRankCode:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CodeFileError(f"cannot read {path}: {exc}") from None
    return parse_code(doc)


def code_to_doc(C: SumRankCode) -> dict:
    F = C.tower
    return {
        "p": F.p,
        "M": F.M,
        "modulus": list(F.modulus),
        "blocks": [{"subfield_degree": d, "n": n} for d, n in zip(F.degrees, C.ns)],
        "generator": [[F.to_coeffs(int(x)) for x in row] for row in C.generator],
    }
