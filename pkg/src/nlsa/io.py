"""Reading and writing the ``nsla-v1`` algebra file format (JSON).

A file holds one algebra::

    {
      "format": "nsla-v1",
      "field": "F3",
      "arity": 4,
      "alpha": 0,
      "basis": [{"name": "c", "parity": 0}, {"name": "b", "parity": 1}],
      "brackets": [{"args": ["b", "b", "b", "b"], "value": {"c": "1"}}]
    }

and optionally a ``"module"`` object with its own ``"basis"`` and a list of
``"operators"`` (``{"args": [...], "matrix": [[...], ...]}``, rows indexed by
the output coordinate) describing a representation.  Coefficients are
always strings.  Bracket arguments are stored exactly as written, so a file
whose arguments are out of order is reported by validation rather than
silently re-sorted.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Iterable

from .algebra import NLieSuperalgebra
from .errors import DivisionByZero, FormatError
from .representations import Representation
from .scalars import Field, parse_field

FORMAT_TAG = "nsla-v1"


def _basis(raw) -> list[tuple[str, int]]:
    if not isinstance(raw, list):
        raise FormatError("basis must be a list")
    out = []
    for item in raw:
        try:
            name, parity = item["name"], item["parity"]
        except (TypeError, KeyError) as exc:
            raise FormatError(f"bad basis entry {item!r}") from exc
        if not isinstance(name, str) or parity not in (0, 1):
            raise FormatError(f"bad basis entry {item!r}")
        out.append((name, parity))
    names = [nm for nm, _ in out]
    if len(set(names)) != len(names):
        raise FormatError("basis names must be unique")
    return out


def _coef(F: Field, text) -> object:
    if not isinstance(text, str):
        raise FormatError(f"coefficients must be strings, got {text!r}")
    try:
        return F.parse(text)
    except (ValueError, DivisionByZero) as exc:
        raise FormatError(f"bad coefficient {text!r}: {exc}") from exc


def algebra_from_dict(obj: dict) -> NLieSuperalgebra:
    if not isinstance(obj, dict) or obj.get("format") != FORMAT_TAG:
        raise FormatError(f"not an {FORMAT_TAG} document")
    try:
        F = parse_field(str(obj["field"]))
        arity = obj["arity"]
        alpha = obj["alpha"]
        basis = _basis(obj["basis"])
        entries = obj.get("brackets", [])
    except KeyError as exc:
        raise FormatError(f"missing key {exc}") from exc
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if not isinstance(arity, int) or arity < 2:
        raise FormatError("arity must be an integer >= 2")
    if alpha not in (0, 1):
        raise FormatError("alpha must be 0 or 1")
    pos = {nm: i for i, (nm, _) in enumerate(basis)}
    table = {}
    for entry in entries:
        try:
            args, value = entry["args"], entry["value"]
        except (TypeError, KeyError) as exc:
            raise FormatError(f"bad bracket entry {entry!r}") from exc
        if len(args) != arity:
            raise FormatError(f"{args} has {len(args)} arguments, arity is {arity}")
        try:
            key = tuple(pos[a] for a in args)
            vec = [F.zero] * len(basis)
            for nm, c in value.items():
                vec[pos[nm]] = _coef(F, c)
        except KeyError as exc:
            raise FormatError(f"unknown basis name {exc}") from exc
        if key in table:
            raise FormatError(f"bracket {args} given twice")
        table[key] = vec
    return NLieSuperalgebra(F, arity, alpha, basis, table)


def algebra_to_dict(A: NLieSuperalgebra) -> dict:
    F = A.field
    return {
        "format": FORMAT_TAG,
        "field": str(F),
        "arity": A.arity,
        "alpha": A.alpha,
        "basis": [{"name": nm, "parity": p} for nm, p in A.basis],
        "brackets": [
            {
                "args": [A.names[i] for i in key],
                "value": {A.names[j]: F.format(x) for j, x in enumerate(val) if x != 0},
            }
            for key, val in A.table.items()
        ],
    }


def representation_from_dict(obj: dict, A: NLieSuperalgebra | None = None) -> Representation:
    A = algebra_from_dict(obj) if A is None else A
    mod = obj.get("module")
    if mod is None:
        raise FormatError("document has no module section")
    F = A.field
    mbasis = _basis(mod.get("basis"))
    m = len(mbasis)
    pos = {nm: i for i, nm in enumerate(A.names)}
    table = {}
    for op in mod.get("operators", []):
        try:
            key = tuple(pos[a] for a in op["args"])
            rows = op["matrix"]
        except (TypeError, KeyError) as exc:
            raise FormatError(f"bad operator entry {op!r}") from exc
        if len(key) != A.arity - 1:
            raise FormatError(f"operator {op['args']} needs {A.arity - 1} arguments")
        if len(rows) != m or any(len(r) != m for r in rows):
            raise FormatError(f"operator {op['args']} is not {m}x{m}")
        if key in table:
            raise FormatError(f"operator {op['args']} given twice")
        table[key] = tuple(tuple(_coef(F, x) for x in r) for r in rows)
    return Representation(A, mbasis, table)


def representation_to_dict(rho: Representation) -> dict:
    A = rho.algebra
    F = A.field
    obj = algebra_to_dict(A)
    obj["module"] = {
        "basis": [{"name": nm, "parity": p} for nm, p in rho.module_basis],
        "operators": [
            {"args": [A.names[i] for i in key], "matrix": [[F.format(x) for x in r] for r in mat]}
            for key, mat in rho.table.items()
        ],
    }
    return obj


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def loads_algebra(text: str) -> NLieSuperalgebra:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return algebra_from_dict(obj)


def load_document(path: str | os.PathLike) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON: {exc}") from exc


def load_algebra(path: str | os.PathLike) -> NLieSuperalgebra:
    return algebra_from_dict(load_document(path))


def save_algebra(A: NLieSuperalgebra, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps(algebra_to_dict(A)))


def save_representation(rho: Representation, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps(representation_to_dict(rho)))


def write_corpus(items: Iterable[tuple[int, NLieSuperalgebra]], directory: str | os.PathLike) -> list[Path]:
    """One file per algebra, named by its assignment index."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for index, A in items:
        p = d / f"alg_{index:08d}.nsla"
        save_algebra(A, p)
        paths.append(p)
    return paths


def read_corpus(directory: str | os.PathLike) -> list[tuple[Path, NLieSuperalgebra]]:
    d = Path(directory)
    if not d.is_dir():
        raise FormatError(f"{directory} is not a directory")
    return [(p, load_algebra(p)) for p in sorted(d.glob("*.nsla"))]
