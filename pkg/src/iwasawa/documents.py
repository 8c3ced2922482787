"""JSON documents describing modules and isogeny data.

Polynomials are ascending coefficient arrays.  Coefficients are written as
decimal strings so arbitrarily large integers survive any JSON toolchain;
plain JSON integers are accepted on input.  Unknown fields are rejected.

Example (Lambda / (T) at p = 5)::

    {"schema_version": 1, "kind": "lambda", "p": 5,
     "generators": 1, "relations": [[["0", "1"]]]}
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any

from .arithmetic import ArchPlaceDatum, IsogenyData, PAdicPlaceDatum, PlaceKind
from .errors import FormatError, IwasawaError
from .group_euler import EigenModule, GDescriptor
from .lambda_modules import LambdaModule, make_module
from .omega_modules import ElementaryModule, OmegaModule, make_omega_module
from .padic_core import PrimeContext, element

SCHEMA_VERSION = 1
KINDS = ("lambda", "omega", "eigen", "elementary", "isogeny")


class DocumentError(FormatError):
    """Malformed document; ``where`` names the JSON field or source line."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


@dataclass(frozen=True)
class ModuleDocument:
    kind: str
    value: Any
    schema_version: int = SCHEMA_VERSION


# ---------------------------------------------------------------------------
# field readers


def _check_keys(obj: dict, where: str, required: set, optional: set = frozenset()) -> None:
    if not isinstance(obj, dict):
        raise DocumentError("expected an object", where)
    missing = required - obj.keys()
    if missing:
        raise DocumentError(f"missing field(s) {sorted(missing)}", where)
    unknown = obj.keys() - required - optional
    if unknown:
        raise DocumentError(f"unknown field(s) {sorted(unknown)}", where)


def _path(where: str, key) -> str:
    if isinstance(key, int):
        return f"{where}[{key}]"
    return f"{where}.{key}" if where else key


def _int(v, where: str, minimum: int | None = None) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise DocumentError(f"expected an integer, got {v!r}", where)
    if isinstance(v, str):
        try:
            v = int(v.strip(), 10)
        except ValueError:
            raise DocumentError(f"not a decimal integer: {v!r}", where) from None
    if minimum is not None and v < minimum:
        raise DocumentError(f"must be >= {minimum}, got {v}", where)
    return v


def _poly(v, where: str) -> tuple:
    if not isinstance(v, list):
        raise DocumentError("expected a coefficient array", where)
    return element(_int(c, _path(where, i)) for i, c in enumerate(v))


def _matrix(v, where: str, b: int) -> list:
    if not isinstance(v, list):
        raise DocumentError("expected an array of rows", where)
    if len(v) != b and not (b == 0 and v == []):
        raise DocumentError(f"expected {b} rows (one per generator), found {len(v)}", where)
    rows = []
    for i, row in enumerate(v):
        rp = _path(where, i)
        if not isinstance(row, list):
            raise DocumentError("expected a row array", rp)
        rows.append([_poly(e, _path(rp, j)) for j, e in enumerate(row)])
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DocumentError("ragged relation matrix", where)
    return rows


def _presentation_fields(obj: dict, where: str):
    b = _int(obj["generators"], _path(where, "generators"), 0)
    # no relations field: a free module on b generators
    rows = _matrix(obj.get("relations", [[] for _ in range(b)]), _path(where, "relations"), b)
    a = len(rows[0]) if rows else 0
    if "relation_count" in obj:
        declared = _int(obj["relation_count"], _path(where, "relation_count"), 0)
        if rows and declared != a:
            raise DocumentError(f"declares {declared} relations, matrix has {a}", _path(where, "relation_count"))
        a = declared
    return b, rows, a


def _lambda_from(obj: dict, ctx: PrimeContext, where: str) -> LambdaModule:
    _check_keys(obj, where, {"generators"}, {"relations", "relation_count"})
    b, rows, a = _presentation_fields(obj, where)
    return make_module(ctx, b, rows, a)


@contextmanager
def _wrap(where: str):
    """Re-raise domain errors from constructors as DocumentError at ``where``."""
    try:
        yield
    except DocumentError:
        raise
    except IwasawaError as exc:
        raise DocumentError(str(exc), where) from exc


def document_from_obj(obj: Any) -> ModuleDocument:
    """Validate a decoded JSON value and build the domain object it describes."""
    if not isinstance(obj, dict):
        raise DocumentError("top level must be an object")
    kind = obj.get("kind", "lambda")
    if kind not in KINDS:
        raise DocumentError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "kind")
    version = _int(obj.get("schema_version", SCHEMA_VERSION), "schema_version")
    if version != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema version {version}", "schema_version")
    if "p" not in obj:
        raise DocumentError("missing field ['p']")
    with _wrap("p"):
        ctx = PrimeContext(_int(obj["p"], "p"))
    body = {k: v for k, v in obj.items() if k not in ("schema_version", "kind")}

    if kind in ("lambda", "omega"):
        _check_keys(body, "", {"p", "generators"}, {"relations", "relation_count"})
        b, rows, a = _presentation_fields(body, "")
        with _wrap("relations"):
            value = make_module(ctx, b, rows, a) if kind == "lambda" else make_omega_module(ctx, b, rows, a)

    elif kind == "eigen":
        _check_keys(body, "", {"p", "components"}, {"action_exponent"})
        e = _int(body.get("action_exponent", 0), "action_exponent")
        with _wrap("action_exponent"):
            g = GDescriptor(ctx, e)
        comps = body["components"]
        if not isinstance(comps, dict):
            raise DocumentError("expected an object keyed by character index", "components")
        modules = {}
        for key, sub in comps.items():
            where = f"components.{key}"
            j = _int(key, where, 0)
            with _wrap(where):
                modules[j] = _lambda_from(sub, ctx, where)
        with _wrap("components"):
            value = EigenModule(g, modules)

    elif kind == "elementary":
        _check_keys(body, "", {"p"}, {"free_rank", "p_power_exponents", "distinguished_parts"})
        r = _int(body.get("free_rank", 0), "free_rank", 0)
        exps_raw = body.get("p_power_exponents", [])
        if not isinstance(exps_raw, list):
            raise DocumentError("expected an array", "p_power_exponents")
        exps = tuple(_int(m, f"p_power_exponents[{i}]", 1) for i, m in enumerate(exps_raw))
        parts_raw = body.get("distinguished_parts", [])
        if not isinstance(parts_raw, list):
            raise DocumentError("expected an array", "distinguished_parts")
        parts = []
        for i, d in enumerate(parts_raw):
            where = f"distinguished_parts[{i}]"
            _check_keys(d, where, {"polynomial"}, {"multiplicity"})
            parts.append((_poly(d["polynomial"], where + ".polynomial"), _int(d.get("multiplicity", 1), where + ".multiplicity", 1)))
        with _wrap("distinguished_parts"):
            value = ElementaryModule(ctx, r, exps, tuple(parts))

    else:  # isogeny
        _check_keys(body, "", {"p", "global_degree", "kernel_exponent"}, {"arch_places", "p_places", "assumptions"})
        arch = []
        for i, v in enumerate(body.get("arch_places", [])):
            where = f"arch_places[{i}]"
            _check_keys(v, where, {"kind", "local_points_exponent"})
            if v["kind"] not in ("real", "complex"):
                raise DocumentError("kind must be 'real' or 'complex'", where + ".kind")
            arch.append(ArchPlaceDatum(PlaceKind(v["kind"]), _int(v["local_points_exponent"], where + ".local_points_exponent", 0)))
        pp = []
        for i, v in enumerate(body.get("p_places", [])):
            where = f"p_places[{i}]"
            _check_keys(v, where, {"local_degree", "reduced_kernel_exponent"})
            pp.append(PAdicPlaceDatum(_int(v["local_degree"], where + ".local_degree", 1), _int(v["reduced_kernel_exponent"], where + ".reduced_kernel_exponent", 0)))
        assumptions = body.get("assumptions", {})
        if not isinstance(assumptions, dict) or not all(isinstance(x, bool) for x in assumptions.values()):
            raise DocumentError("expected an object of boolean flags", "assumptions")
        with _wrap("isogeny data"):
            value = IsogenyData(
                ctx,
                _int(body["global_degree"], "global_degree", 1),
                _int(body["kernel_exponent"], "kernel_exponent", 0),
                tuple(arch),
                tuple(pp),
                dict(assumptions),
            )
    return ModuleDocument(kind, value, version)


def parse_document(text: str) -> ModuleDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return document_from_obj(obj)


# ---------------------------------------------------------------------------
# serialisation


def _poly_out(f) -> list:
    return [str(c) for c in f]


def _presentation_out(M) -> dict:
    out = {"generators": M.generators, "relations": [[_poly_out(f) for f in r] for r in M.relations]}
    if M.generators == 0 and M.n_relations:
        out["relation_count"] = M.n_relations
    return out


def to_obj(value: Any) -> dict:
    """Canonical JSON-ready dict for a domain object."""
    if isinstance(value, ModuleDocument):
        value = value.value
    head = {"schema_version": SCHEMA_VERSION}
    if isinstance(value, LambdaModule):
        return {**head, "kind": "lambda", "p": value.ctx.p, **_presentation_out(value)}
    if isinstance(value, OmegaModule):
        return {**head, "kind": "omega", "p": value.ctx.p, **_presentation_out(value)}
    if isinstance(value, EigenModule):
        return {
            **head,
            "kind": "eigen",
            "p": value.g.ctx.p,
            "action_exponent": value.g.action_exponent,
            "components": {str(j): _presentation_out(M) for j, M in value.components.items()},
        }
    if isinstance(value, ElementaryModule):
        return {
            **head,
            "kind": "elementary",
            "p": value.ctx.p,
            "free_rank": value.free_rank,
            "p_power_exponents": list(value.p_power_exponents),
            "distinguished_parts": [{"polynomial": _poly_out(f), "multiplicity": k} for f, k in value.distinguished_parts],
        }
    if isinstance(value, IsogenyData):
        out = {
            **head,
            "kind": "isogeny",
            "p": value.ctx.p,
            "global_degree": value.global_degree,
            "kernel_exponent": value.kernel_exponent,
            "arch_places": [{"kind": v.kind.value, "local_points_exponent": v.local_points_exponent} for v in value.arch_places],
            "p_places": [{"local_degree": v.local_degree, "reduced_kernel_exponent": v.reduced_kernel_exponent} for v in value.p_places],
        }
        if value.assumptions:
            out["assumptions"] = dict(sorted(value.assumptions.items()))
        return out
    raise TypeError(f"cannot serialise {type(value).__name__}")


def serialize_document(value: Any, indent: int | None = None) -> str:
    return json.dumps(to_obj(value), indent=indent)


def canonical(text_or_obj) -> str:
    """Canonical text of a document given as JSON text or a decoded object."""
    if isinstance(text_or_obj, str):
        return serialize_document(parse_document(text_or_obj))
    return serialize_document(document_from_obj(text_or_obj))
