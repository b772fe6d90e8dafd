"""Facet-list file format and machine-readable report payloads.

A complex file holds one facet per line as whitespace-separated positive
integers.  '#' starts a comment (whole line or trailing), blank lines are
skipped, and an optional `n=<int>` header fixes the vertex universe; it
defaults to the largest vertex mentioned.  A file with a header and no
facet lines denotes the complex {∅}.  Parsing then serializing then
parsing is the identity up to facet order.

JSON payloads are integer-exact (no floats) and carry provenance: the
SHA-256 of the input bytes, the field, and the tool version.  The shipped
schema in report_schema.json pins the layout.
"""

from __future__ import annotations

import hashlib
import json
import re
from importlib import resources

from . import __version__
from .classify import ClassificationReport
from .complex_core import SimplicialComplex
from .linalg import FieldSpec

SCHEMA_VERSION = 1

_N_HEADER = re.compile(r"^n\s*=\s*(\d+)$")


class ComplexParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_complex(text: str) -> tuple[SimplicialComplex, dict]:
    """Parse a facet-list file; returns (complex, input info for reports)."""
    n_header: int | None = None
    raw_faces: list[tuple[int, ...]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = _N_HEADER.match(line)
        if header:
            if n_header is not None:
                raise ComplexParseError(line_no, "duplicate n= header")
            if raw_faces:
                raise ComplexParseError(line_no, "n= header after facet lines")
            n_header = int(header.group(1))
            if n_header < 1:
                raise ComplexParseError(line_no, "n must be >= 1")
            continue
        face = []
        for token in line.split():
            if not token.isdigit() or int(token) < 1:
                raise ComplexParseError(
                    line_no, f"expected positive integers, got {token!r}")
            face.append(int(token))
        if len(set(face)) != len(face):
            raise ComplexParseError(line_no, f"repeated vertex in facet {face}")
        raw_faces.append(tuple(sorted(face)))
    if not raw_faces and n_header is None:
        raise ComplexParseError(0, "no facets and no n= header")
    n = n_header if n_header is not None \
        else max(v for f in raw_faces for v in f)
    try:
        delta = SimplicialComplex.from_facets(n, raw_faces)
    except ValueError as exc:
        raise ComplexParseError(0, str(exc)) from exc
    reduced = len(delta.facet_masks) != len(set(raw_faces)) \
        or frozenset(raw_faces) != frozenset(delta.facets)
    if delta.facet_masks == frozenset((0,)) and raw_faces:
        reduced = False
    info = {
        "n": n,
        "raw_count": len(raw_faces),
        "antichain_reduced": bool(reduced),
    }
    return delta, info


def serialize_complex(delta: SimplicialComplex) -> str:
    lines = [f"n={delta.n}"]
    for facet in delta.facets:
        if facet:
            lines.append(" ".join(map(str, facet)))
    return "\n".join(lines) + "\n"


def parse_field(token: str) -> FieldSpec:
    """CLI field tokens: q, f2, f3, or fp:<prime>."""
    token = token.strip().lower()
    if token == "q":
        return FieldSpec.rationals()
    if token in ("f2", "f3"):
        return FieldSpec.prime_field(int(token[1:]))
    if token.startswith("fp:"):
        try:
            p = int(token[3:])
        except ValueError:
            raise ValueError(f"bad field token {token!r}") from None
        return FieldSpec.prime_field(p)
    raise ValueError(f"bad field token {token!r}; use q, f2, f3 or fp:<p>")


def field_payload(field: FieldSpec) -> dict:
    return {
        "kind": "rationals" if field.is_rationals else "prime",
        "characteristic": field.characteristic,
    }


def input_payload(data: bytes, delta: SimplicialComplex, info: dict) -> dict:
    return {
        "sha256": hashlib.sha256(data).hexdigest(),
        "n": delta.n,
        "facets": [list(f) for f in delta.facets],
        "antichain_reduced": info.get("antichain_reduced", False),
    }


def report_payload(report: ClassificationReport,
                   eta_text: str | None,
                   extra_notes: tuple[str, ...] = ()) -> dict:
    return {
        "dim": report.dim,
        "pure": report.pure,
        "strongly_connected": report.strongly_connected,
        "f_vector": list(report.f) if report.f is not None else None,
        "h_vector": list(report.h) if report.h is not None else None,
        "cm": report.cm,
        "two_cm": report.two_cm,
        "uniformly_cm": report.uniformly_cm,
        "type": report.type,
        "delta": report.delta,
        "eta": list(report.eta) if report.eta is not None else None,
        "eta_polynomial": eta_text,
        "gorenstein_star": report.gorenstein_star,
        "almost_gorenstein_star": report.almost_gorenstein_star,
        "indecomposable": report.indecomposable,
        "notes": list(report.notes) + list(extra_notes),
    }


def analyze_payload(data: bytes, delta: SimplicialComplex, info: dict,
                    field: FieldSpec, report: ClassificationReport,
                    eta_text: str | None,
                    extra_notes: tuple[str, ...] = ()) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "agstar", "version": __version__},
        "input": input_payload(data, delta, info),
        "field": field_payload(field),
        "report": report_payload(report, eta_text, extra_notes),
    }


def load_report_schema() -> dict:
    with resources.files("agstar").joinpath("report_schema.json").open() as fh:
        return json.load(fh)


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"
