"""JSON file formats: lattices (with optional map), bases, matrices, chain bases."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .errors import FormatError
from .gf import GFMatrix, JordanChainBasis
from .jnb import JordanNormalBase, base_from_labels
from .joinhom import JoinHom, build_join_hom
from .lattice import FiniteLattice, build_lattice


def read_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", str(path)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from None
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object", str(path))
    return doc


def dumps(doc) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    return _render(doc, 0) + "\n"


def _render(value, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_render(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list):
        if all(not isinstance(v, (list, dict)) for v in value):
            return json.dumps(value, ensure_ascii=False)
        return "[\n" + ",\n".join(inner + _render(v, depth + 1) for v in value) + "\n" + pad + "]"
    return json.dumps(value, ensure_ascii=False)


def write_json(doc: dict, path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def _string_list(value, where) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise FormatError("expected a list of strings", where)
    return value


def parse_lattice(doc: dict, where: str = "<input>") -> tuple[FiniteLattice, Optional[JoinHom]]:
    if "elements" not in doc or "covers" not in doc:
        raise FormatError('lattice object needs "elements" and "covers"', where)
    labels = _string_list(doc["elements"], f"{where}: elements")
    covers = doc["covers"]
    if not isinstance(covers, list):
        raise FormatError("expected a list of pairs", f"{where}: covers")
    for i, pair in enumerate(covers):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, str) for v in pair)):
            raise FormatError("cover must be a 2-element list of labels", f"{where}: covers[{i}]")
    L = build_lattice(labels, [tuple(pair) for pair in covers])
    hom = None
    if "map" in doc:
        mapping = doc["map"]
        if not isinstance(mapping, dict) or not all(isinstance(v, str) for v in mapping.values()):
            raise FormatError('"map" must be an object from label to label', f"{where}: map")
        hom = build_join_hom(L, mapping)
    return L, hom


def load_lattice(path) -> tuple[FiniteLattice, Optional[JoinHom]]:
    return parse_lattice(read_json(path), str(path))


def lattice_doc(L: FiniteLattice, hom: Optional[JoinHom] = None) -> dict:
    doc = {
        "elements": list(L.labels),
        "covers": [[L.label(x), L.label(y)] for x, y in L.cover_pairs()],
    }
    if hom is not None:
        doc["map"] = hom.label_map()
    return doc


def base_doc(L: FiniteLattice, base: JordanNormalBase) -> dict:
    return {"chains": base.labelled(L)}


def parse_base(doc: dict, L: FiniteLattice, where: str = "<input>") -> JordanNormalBase:
    chains = doc.get("chains")
    if not isinstance(chains, list):
        raise FormatError('base object needs "chains": list of label lists', where)
    for t, ch in enumerate(chains):
        _string_list(ch, f"{where}: chains[{t}]")
    return base_from_labels(L, chains)


def matrix_doc(A: GFMatrix) -> dict:
    return {"prime": A.p, "n": A.rows, "rows": A.tolist()}


def parse_matrix(doc: dict, where: str = "<input>") -> GFMatrix:
    for key in ("prime", "n", "rows"):
        if key not in doc:
            raise FormatError(f'matrix object needs "{key}"', where)
    p, n, rows = doc["prime"], doc["n"], doc["rows"]
    if not isinstance(p, int) or not isinstance(n, int) or n < 0:
        raise FormatError('"prime" and "n" must be integers', where)
    if not isinstance(rows, list) or len(rows) != n:
        raise FormatError(f'"rows" must hold {n} rows', f"{where}: rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n or not all(isinstance(v, int) for v in row):
            raise FormatError(f"row must hold {n} integers", f"{where}: rows[{i}]")
        if any(v < 0 or v >= p for v in row):
            raise FormatError(f"entries must lie in [0, {p})", f"{where}: rows[{i}]")
    if n == 0:
        raise FormatError("matrix must be at least 1x1", where)
    return GFMatrix.from_rows(p, rows)


def load_matrix(path) -> GFMatrix:
    return parse_matrix(read_json(path), str(path))


def chain_basis_doc(B: JordanChainBasis) -> dict:
    return B.to_dict()


def parse_chain_basis(doc: dict, n: int, where: str = "<input>") -> JordanChainBasis:
    if "prime" not in doc or "chains" not in doc:
        raise FormatError('chain basis needs "prime" and "chains"', where)
    chains = []
    for t, ch in enumerate(doc["chains"]):
        vecs = []
        for i, v in enumerate(ch):
            if not isinstance(v, list) or len(v) != n:
                raise FormatError(f"vector must have {n} entries", f"{where}: chains[{t}][{i}]")
            vecs.append(tuple(int(x) for x in v))
        chains.append(tuple(vecs))
    return JordanChainBasis(int(doc["prime"]), n, tuple(chains))
