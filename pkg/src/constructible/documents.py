"""JSON documents for complexes, functions, stratifications, maps and reports.

Every emitter produces canonical text: sorted keys, compact separators,
simplices as sorted vertex lists in canonical order, and a trailing newline.
Equal objects therefore serialize to identical bytes.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .complexes import (
    Simplex,
    SimplexSet,
    SimplicialComplex,
    Stratification,
    build_complex,
    make_simplex,
    simplex_key,
)
from .errors import ParseError, ValidationError
from .fixtures import fixture
from .functions import INT64_MAX, INT64_MIN, ConstructibleFunction
from .maps import SimplicialMap

FIXTURE_PREFIX = "fixture:"


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def _line_of(text: str, literal: str) -> int | None:
    m = re.search(r"(?<![\w.])" + re.escape(literal) + r"(?![\w.])", text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def loads(text: str) -> Any:
    """Parse JSON, reporting the line of any syntax error or out-of-range integer."""
    too_big: list[str] = []

    def parse_int(s: str) -> int:
        v = int(s)
        if not INT64_MIN <= v <= INT64_MAX:
            too_big.append(s)
        return v

    try:
        obj = json.loads(text, parse_int=parse_int)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    if too_big:
        raise ParseError(_line_of(text, too_big[0]), f"integer {too_big[0]} does not fit in 64 bits")
    return obj


def read_document(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(None, f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def simplex_json(s: Simplex) -> list[str]:
    return list(s)


def simplices_json(simplices) -> list[list[str]]:
    return [list(s) for s in sorted(simplices, key=simplex_key)]


def _expect(obj: Any, kind: type, what: str) -> Any:
    if not isinstance(obj, kind):
        raise ValidationError(f"{what} must be a JSON {kind.__name__ if kind is not dict else 'object'}")
    return obj


def _simplex_of(raw: Any, what: str) -> Simplex:
    _expect(raw, list, what)
    if not all(isinstance(v, str) for v in raw):
        raise ValidationError(f"{what}: vertex names must be strings")
    return make_simplex(raw)


# --- complexes ---------------------------------------------------------------------------


def complex_to_doc(K: SimplicialComplex) -> dict:
    return {"vertices": sorted(K.vertices), "maximal_simplices": simplices_json(K.maximal_simplices)}


def complex_from_doc(doc: Any) -> SimplicialComplex:
    """Face closure of ``maximal_simplices`` plus any listed isolated vertices."""
    _expect(doc, dict, "complex document")
    verts = _expect(doc.get("vertices", []), list, "vertices")
    maxes = _expect(doc.get("maximal_simplices", []), list, "maximal_simplices")
    tops = [_simplex_of(m, "maximal simplex") for m in maxes]
    tops += [_simplex_of([v], "vertex") for v in verts]
    K = build_complex(tops)
    listed = set(verts)
    if listed and not set(K.vertices) <= listed:
        raise ValidationError(f"maximal simplices use unlisted vertices {sorted(set(K.vertices) - listed)}")
    return K


def resolve_complex(ref: Any, base: Path | None = None) -> SimplicialComplex:
    """A complex given inline, as ``fixture:NAME``, or as a path to a document."""
    if isinstance(ref, dict):
        return complex_from_doc(ref)
    if not isinstance(ref, str):
        raise ValidationError("complex must be an inline object, a path, or fixture:NAME")
    if ref.startswith(FIXTURE_PREFIX):
        return fixture(ref[len(FIXTURE_PREFIX):]).complex
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    return complex_from_doc(read_document(path))


# --- functions ---------------------------------------------------------------------------


def function_to_doc(phi: ConstructibleFunction, complex_ref: Any = None) -> dict:
    return {
        "complex": complex_ref if complex_ref is not None else complex_to_doc(phi.ambient),
        "values": [[list(s), v] for s, v in phi.items()],
    }


def function_from_doc(doc: Any, K: SimplicialComplex | None = None, base: Path | None = None) -> ConstructibleFunction:
    """Parse a function document.  ``K`` overrides the document's own complex."""
    _expect(doc, dict, "function document")
    if K is None:
        if "complex" not in doc:
            raise ValidationError("function document has no complex")
        K = resolve_complex(doc["complex"], base)
    acc: dict[Simplex, int] = {}
    for entry in _expect(doc.get("values", []), list, "values"):
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[1], int) and not isinstance(entry[1], bool)):
            raise ValidationError(f"each value must be [simplex, integer], got {entry!r}")
        s = _simplex_of(entry[0], "simplex")
        K.require(s)
        if s in acc:
            raise ValidationError(f"simplex {list(s)} is given twice")
        acc[s] = entry[1]
    return ConstructibleFunction(K, acc)


# --- stratifications and sets ----------------------------------------------------------


def stratification_to_doc(strat: Stratification, complex_ref: Any = None) -> dict:
    return {
        "complex": complex_ref if complex_ref is not None else complex_to_doc(strat.ambient),
        "strata": [
            {"label": label, "dimension": d, "simplices": simplices_json(block.members)}
            for label, (d, block) in sorted(strat.strata.items())
        ],
    }


def stratification_from_doc(doc: Any, K: SimplicialComplex | None = None, base: Path | None = None) -> Stratification:
    _expect(doc, dict, "stratification document")
    if K is None:
        K = resolve_complex(doc.get("complex"), base)
    strata: dict[str, tuple[int, list[Simplex]]] = {}
    for item in _expect(doc.get("strata", []), list, "strata"):
        _expect(item, dict, "stratum")
        label, d = item.get("label"), item.get("dimension")
        if not isinstance(label, str) or not isinstance(d, int):
            raise ValidationError("each stratum needs a string label and an integer dimension")
        if label in strata:
            raise ValidationError(f"duplicate stratum label {label!r}")
        simplices = [_simplex_of(s, "simplex") for s in _expect(item.get("simplices", []), list, "simplices")]
        for s in simplices:
            K.require(s)
        strata[label] = (d, simplices)
    return Stratification(K, strata)


def set_from_doc(doc: Any, K: SimplicialComplex) -> SimplexSet:
    """A list of simplices, or {"simplices": [...], "closure": bool}."""
    close = False
    if isinstance(doc, dict):
        close = bool(doc.get("closure", False))
        doc = doc.get("simplices", [])
    simplices = [_simplex_of(s, "simplex") for s in _expect(doc, list, "set")]
    for s in simplices:
        K.require(s)
    S = SimplexSet(K, simplices)
    return S.closure() if close else S


def set_to_doc(S: SimplexSet) -> list[list[str]]:
    return simplices_json(S.members)


# --- maps --------------------------------------------------------------------------------


def map_to_doc(f: SimplicialMap) -> dict:
    return {
        "domain": complex_to_doc(f.domain),
        "codomain": complex_to_doc(f.codomain),
        "vertex_map": dict(sorted(f.vertex_map.items())),
    }


def map_from_doc(doc: Any, base: Path | None = None) -> SimplicialMap:
    _expect(doc, dict, "map document")
    for key in ("domain", "codomain", "vertex_map"):
        if key not in doc:
            raise ValidationError(f"map document lacks {key!r}")
    vm = _expect(doc["vertex_map"], dict, "vertex_map")
    if not all(isinstance(v, str) for v in vm.values()):
        raise ValidationError("vertex_map values must be vertex names")
    return SimplicialMap(resolve_complex(doc["domain"], base), resolve_complex(doc["codomain"], base), vm)


# --- reports -----------------------------------------------------------------------------


def report_to_doc(report) -> dict:
    """Plain JSON data for a CheckReport."""
    return {
        "verdict": report.verdict,
        "failing_witnesses": [
            {"function": w.function, "simplex": list(w.simplex), "value": w.value} for w in report.failing_witnesses
        ],
        "characteristic_sets": {k: set_to_doc(v) for k, v in sorted(report.characteristic_sets.items())},
        "details": to_jsonable(report.details),
        "warnings": list(report.warnings),
    }


def to_jsonable(obj: Any) -> Any:
    """Convert nested report data; simplex-keyed dicts become sorted [simplex, value] lists."""
    if isinstance(obj, dict):
        if obj and all(isinstance(k, tuple) for k in obj):
            return [[list(k), to_jsonable(obj[k])] for k in sorted(obj, key=simplex_key)]
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, SimplexSet):
        return set_to_doc(obj)
    if isinstance(obj, ConstructibleFunction):
        return [[list(s), v] for s, v in obj.items()]
    return obj
