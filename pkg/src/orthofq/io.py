"""JSON wire formats for fields, forms, matrices and reports.

Field:  {"p": int, "k": int, "modulus": [int, ...]}   (modulus optional)
Form:   {"field": {...}, "n": int, "kind": "bilinear" | "quadratic", "matrix": [[int, ...], ...]}
Matrix: [[int, ...], ...] of element indexes, row-major.
Group element file: {"form": {...}, "matrix": [[...], ...]}.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from .errors import OrthoError
from .forms import BilinearForm, Form, QuadraticForm
from .gf import FieldSpec, field_from_descriptor
from .groups import EnumeratedGroup, SubgroupReport
from .linalg import Matrix


class ParseError(OrthoError):
    """Malformed JSON or a document of the wrong shape (CLI exit 2)."""


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _require(doc: Any, key: str, kind: type | tuple[type, ...], where: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"{where}: missing key {key!r}")
    val = doc[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise ParseError(f"{where}: {key!r} has the wrong type")
    return val


def _int_rows(rows: Any, where: str) -> list[list[int]]:
    if not isinstance(rows, list) or not rows:
        raise ParseError(f"{where}: matrix must be a non-empty array of arrays")
    out = []
    for r in rows:
        if not isinstance(r, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise ParseError(f"{where}: matrix rows must be arrays of integers")
        out.append(list(r))
    if len({len(r) for r in out}) != 1:
        raise ParseError(f"{where}: matrix rows have different lengths")
    return out


def parse_field(doc: Any, *, allow_custom_modulus: bool = False) -> FieldSpec:
    _require(doc, "p", int, "field")
    if "k" in doc:
        _require(doc, "k", int, "field")
    if doc.get("modulus") is not None:
        _int_rows([doc["modulus"]], "field.modulus")
    return field_from_descriptor(doc, allow_custom_modulus=allow_custom_modulus)


def parse_matrix(field: FieldSpec, rows: Any, where: str = "matrix") -> Matrix:
    return Matrix.from_rows(field, _int_rows(rows, where))


def parse_form(doc: Any, *, allow_custom_modulus: bool = False) -> Form:
    fld = parse_field(_require(doc, "field", dict, "form"), allow_custom_modulus=allow_custom_modulus)
    n = _require(doc, "n", int, "form")
    kind = _require(doc, "kind", str, "form")
    rows = _int_rows(doc.get("matrix"), "form.matrix")
    if len(rows) != n or len(rows[0]) != n:
        raise ParseError(f"form: matrix must be {n} x {n}")
    if kind == "bilinear":
        return BilinearForm.from_rows(fld, rows)
    if kind == "quadratic":
        return QuadraticForm.from_any(fld, rows)
    raise ParseError(f"form: unknown kind {kind!r}")


def form_to_json(form: Form) -> dict:
    return {
        "field": form.field.descriptor(),
        "n": form.n,
        "kind": form.kind,
        "matrix": form.matrix.to_json(),
    }


def parse_group_element(doc: Any, *, allow_custom_modulus: bool = False) -> tuple[Form, Matrix]:
    form = parse_form(_require(doc, "form", dict, "element"), allow_custom_modulus=allow_custom_modulus)
    mat = parse_matrix(form.field, doc.get("matrix"), "element.matrix")
    return form, mat


def group_report(G: EnumeratedGroup, subgroups: list[SubgroupReport], type_tag: Optional[str]) -> dict:
    return {"order": len(G), "subgroups": [s.to_json() for s in subgroups], "type": type_tag}


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)
