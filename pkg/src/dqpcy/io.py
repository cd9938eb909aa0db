"""Reading and writing algebra files.

An algebra file is a JSON object::

    {
      "dimension": 3,
      "basis_names": ["1", "t", "t^2"],
      "unit": [[0, "1"]],
      "structure_constants": [[i, j, k, "p/q"], ...],   # e_i e_j has p/q on e_k
      "bracket": [[i, j, k, l, "p/q"], ...],            # {e_i, e_j} has p/q on e_k (x) e_l
      "tau": "p/q"
    }

Omitted entries are zero and repeated entries are summed.  ``bracket`` and
``tau`` may be left out (zero bracket, tau = 0); ``description`` is free text.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .algebra import Algebra
from .double_bracket import DoubleBracket
from .exact_arith import format_rational, parse_rational

__all__ = ["InputError", "AlgebraFile", "parse_document", "load_file", "loads",
           "to_document", "dumps", "bundled_path", "load_bundled", "bundled_names",
           "load_manifest", "digest"]

_KNOWN_KEYS = {"dimension", "basis_names", "unit", "structure_constants", "bracket", "tau",
               "description"}


class InputError(ValueError):
    """Malformed input; the message names the offending location."""


@dataclass
class AlgebraFile:
    algebra: Algebra
    bracket: DoubleBracket
    description: str = ""

    @property
    def tau(self) -> Fraction:
        return self.bracket.tau


def _rational(value, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def _index(value, dim: int, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: index must be an integer, got {value!r}")
    if not 0 <= value < dim:
        raise InputError(f"{where}: index {value} out of range for dimension {dim}")
    return value


def _entries(doc, key: str, width: int):
    rows = doc.get(key, [])
    if not isinstance(rows, list):
        raise InputError(f"{key}: expected a list")
    for n, row in enumerate(rows):
        where = f"{key}[{n}]"
        if not isinstance(row, list) or len(row) != width:
            raise InputError(f"{where}: expected a list of {width} items, got {row!r}")
        yield where, row


def _accumulate(table: dict, key, value) -> None:
    new = table.get(key, Fraction(0)) + value
    if new:
        table[key] = new
    else:
        table.pop(key, None)


def parse_document(doc) -> AlgebraFile:
    """Build an :class:`AlgebraFile` from decoded JSON, reporting the path of any defect."""
    if not isinstance(doc, dict):
        raise InputError("top level: expected a JSON object")
    unknown = set(doc) - _KNOWN_KEYS
    if unknown:
        raise InputError(f"top level: unknown key(s) {sorted(unknown)}")
    for key in ("dimension", "unit", "structure_constants"):
        if key not in doc:
            raise InputError(f"top level: missing key {key!r}")
    dim = doc["dimension"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise InputError(f"dimension: expected a positive integer, got {dim!r}")
    names = doc.get("basis_names") or [f"e{i}" for i in range(dim)]
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise InputError("basis_names: expected a list of strings")
    if len(names) != dim:
        raise InputError(f"basis_names: expected {dim} names, got {len(names)}")

    unit: dict = {}
    for where, (i, c) in _entries(doc, "unit", 2):
        _accumulate(unit, _index(i, dim, f"{where}[0]"), _rational(c, f"{where}[1]"))

    products: dict = {}
    for where, (i, j, k, c) in _entries(doc, "structure_constants", 4):
        key = (_index(i, dim, f"{where}[0]"), _index(j, dim, f"{where}[1]"))
        k = _index(k, dim, f"{where}[2]")
        entry = products.setdefault(key, {})
        _accumulate(entry, k, _rational(c, f"{where}[3]"))

    bracket: dict = {}
    for where, (i, j, k, l, c) in _entries(doc, "bracket", 5):
        key = (_index(i, dim, f"{where}[0]"), _index(j, dim, f"{where}[1]"))
        out = (_index(k, dim, f"{where}[2]"), _index(l, dim, f"{where}[3]"))
        entry = bracket.setdefault(key, {})
        _accumulate(entry, out, _rational(c, f"{where}[4]"))

    tau = _rational(doc.get("tau", "0"), "tau")
    description = doc.get("description", "")
    if not isinstance(description, str):
        raise InputError("description: expected a string")
    alg = Algebra(dim, products, unit, list(names))
    return AlgebraFile(alg, DoubleBracket(alg, bracket, tau), description)


def loads(text: str) -> AlgebraFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_document(doc)


def load_file(path) -> AlgebraFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return loads(text)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def to_document(af: AlgebraFile) -> dict:
    """Canonical JSON-ready form (entries sorted, zeros dropped)."""
    alg, db = af.algebra, af.bracket
    doc = {
        "dimension": alg.dim,
        "basis_names": list(alg.basis_names),
        "unit": [[i, format_rational(c)] for i, c in sorted(alg.unit.items())],
        "structure_constants": [[i, j, k, format_rational(c)]
                                for (i, j), v in sorted(alg.table.items())
                                for k, c in sorted(v.items())],
        "bracket": [[i, j, k, l, format_rational(c)]
                    for (i, j), t in sorted(db.table.items())
                    for (k, l), c in sorted(t.items())],
        "tau": format_rational(db.tau),
    }
    if af.description:
        doc["description"] = af.description
    return doc


def dumps(af: AlgebraFile) -> str:
    """Pretty JSON with one table row per line."""
    doc = to_document(af)
    lines = ["{"]
    keys = list(doc)
    for n, key in enumerate(keys):
        value = doc[key]
        comma = "," if n < len(keys) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], list):
            rows = ",\n".join("    " + json.dumps(row) for row in value)
            lines.append(f"  {json.dumps(key)}: [\n{rows}\n  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# -- bundled examples --------------------------------------------------------

def bundled_path(name: str) -> Path:
    path = resources.files("dqpcy") / "data" / f"{name}.json"
    if not path.is_file():
        raise InputError(f"no bundled example named {name!r}; choose from {bundled_names()}")
    return Path(str(path))


def bundled_names() -> list[str]:
    return sorted(load_manifest())


def load_manifest() -> dict:
    text = (resources.files("dqpcy") / "data" / "manifest.json").read_text(encoding="utf-8")
    return json.loads(text)


def load_bundled(name: str) -> AlgebraFile:
    return load_file(bundled_path(name))
