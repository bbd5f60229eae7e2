"""Self-describing JSON matrix files.

A file holds one object::

    {"algebra": {"kind": "boolean-subsets", "universe": ["a", "b"]},
     "matrix": [[["a", "b"], ["a"]], [[], ["a", "b"]]]}

Scalars use the owning algebra's text encoding: plain numbers for real
carriers, the strings ``"-inf"`` / ``"+inf"`` for infinities, lists of
universe names for subsets and ``[lo, hi]`` pairs for intervals.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import from_descriptor
from .errors import SemitreeError
from .matrix import SquareMatrix


class MatrixFileError(SemitreeError, ValueError):
    pass


def parse_matrix(doc) -> SquareMatrix:
    if not isinstance(doc, dict):
        raise MatrixFileError("matrix file must contain a JSON object")
    missing = {"algebra", "matrix"} - set(doc)
    if missing:
        raise MatrixFileError(f"matrix file lacks {sorted(missing)}")
    try:
        alg = from_descriptor(doc["algebra"])
        rows = doc["matrix"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise MatrixFileError("matrix must be a list of rows")
        return SquareMatrix(alg, [[alg.decode(x) for x in row] for row in rows])
    except MatrixFileError:
        raise
    except (ValueError, TypeError) as exc:
        raise MatrixFileError(str(exc)) from exc


def loads(text: str) -> SquareMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"invalid JSON: {exc}") from exc
    return parse_matrix(doc)


def load(path) -> SquareMatrix:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc.strerror}") from exc
    return loads(text)


def to_document(A: SquareMatrix) -> dict:
    alg = A.algebra
    return {
        "algebra": alg.descriptor(),
        "matrix": [[alg.encode(x, digits=None) for x in row] for row in A.entries],
    }


def dumps(A: SquareMatrix) -> str:
    return json.dumps(to_document(A), ensure_ascii=False)
