"""Command-line front end.

Subcommands: analyze (full classification report), decompose (ridge
decomposition of an almost Gorenstein* complex), betti (graded Betti table
or the type column), search (exhaustive scans with optional delta-parity
summaries and resumable checkpoints).

Exit codes: 0 success, 1 usage or parse error, 2 precondition or
verification failure, 3 resource cap reached.  Output is byte-identical
for identical inputs and flags.  AGSTAR_THREADS controls the thread count
of the Betti subset scan.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .betti import FULL_TABLE_UNIVERSE_CAP, UniverseCapError, \
    betti_table, cm_type, graded_type_column, hilbert_numerator_check
from .classify import (
    classify,
    delta_invariant,
    eta_polynomial,
    is_almost_gorenstein_star,
    is_cm,
    is_uniformly_cm,
)
from .complex_io import (
    ComplexParseError,
    analyze_payload,
    dumps,
    field_payload,
    input_payload,
    parse_complex,
    parse_field,
    report_payload,
)
from .homology import reduced_homology_dim
from .linalg import KERNEL_BACKEND
from .ridge import (
    Leaf,
    NotAlmostGorensteinStarError,
    decompose,
    find_ridge_split,
)
from .search import (
    ResourceCapError,
    SearchSpec,
    enumerate_search,
    run_delta_parity,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_RESOURCE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are exit code 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    try:
        delta, info = parse_complex(data.decode("utf-8"))
    except (ComplexParseError, UnicodeDecodeError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return data, delta, info


def _field(token: str):
    try:
        return parse_field(token)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _bool(value: bool) -> str:
    return "true" if value else "false"


def cmd_analyze(args) -> int:
    data, delta, info = _load(args.file)
    field = _field(args.field)
    report = classify(delta, field)
    extra_notes: list[str] = []
    if info["antichain_reduced"]:
        extra_notes.append(
            f"input reduced to maximal faces: {info['raw_count']} lines "
            f"gave {len(delta.facet_masks)} facets")
    top = None
    if delta.dim >= 1:
        top = reduced_homology_dim(delta, delta.dim, field)
        extra_notes.append(f"top homology dimension {top}")
        if report.uniformly_cm and not report.almost_gorenstein_star \
                and top is not None and top > 1:
            if find_ridge_split(delta) is None:
                extra_notes.append("no ridge split")
    if args.slow_verify:
        failures = _slow_verify(delta, field, report)
        if failures:
            for f in failures:
                print(f"slow-verify disagreement: {f}", file=sys.stderr)
            return EXIT_PRECONDITION
        extra_notes.append("slow-verify passed")
    eta_text = str(eta_polynomial(delta.h_vector())) if report.h else None
    if args.json:
        payload = analyze_payload(data, delta, info, field, report, eta_text,
                                  tuple(extra_notes))
        sys.stdout.write(dumps(payload))
        return EXIT_OK
    lines = [
        f"input: {args.file} (n={delta.n}, {len(delta.facet_masks)} facets)",
        f"field: {field} (characteristic {field.characteristic})",
        f"dim: {report.dim}",
        f"pure: {_bool(report.pure)}",
        f"strongly connected: {_bool(report.strongly_connected)}",
        f"f-vector: {report.f}",
        f"h-vector: {report.h}",
        f"cm: {_bool(report.cm)}",
        f"2-cm: {_bool(report.two_cm)}",
        f"uniformly cm: {_bool(report.uniformly_cm)}",
        f"type: {report.type if report.type is not None else '-'}",
        f"delta: {report.delta if report.delta is not None else '-'}",
        f"eta: {eta_text if eta_text is not None else '-'}"
        + (f"  coefficients {report.eta}" if report.eta else ""),
        f"gorenstein*: {_bool(report.gorenstein_star)}",
        f"almost gorenstein*: {_bool(report.almost_gorenstein_star)}",
        f"indecomposable: "
        f"{_bool(report.indecomposable) if report.indecomposable is not None else '-'}",
    ]
    for note in list(report.notes) + extra_notes:
        lines.append(f"note: {note}")
    print("\n".join(lines))
    return EXIT_OK


def _slow_verify(delta, field, report) -> list[str]:
    """Definition-level re-checks; non-empty return means disagreement."""
    failures = []
    if delta.dim >= 0:
        if is_cm(delta, field, method="reisner") != report.cm:
            failures.append("Reisner scan disagrees with the CM flag")
        slow_ucm = is_uniformly_cm(delta, field, method="definition")
        if slow_ucm != report.uniformly_cm:
            failures.append("facet-deletion scan disagrees with uniformly CM")
        if delta.dim >= 1:
            slow_ag = is_almost_gorenstein_star(delta, field, method="criterion")
            if slow_ag != report.almost_gorenstein_star:
                failures.append("type/delta criterion disagrees with the "
                                "almost Gorenstein* flag")
        if report.uniformly_cm:
            t = cm_type(delta, field)
            d = delta_invariant(delta.h_vector())
            if not t - 1 <= d:
                failures.append(f"type - 1 = {t - 1} exceeds delta = {d}")
            if (t - 1 == d) != report.almost_gorenstein_star and delta.dim >= 1:
                failures.append("delta/type equality mismatch")
    return failures


def _tree_payload(tree, field) -> dict:
    if isinstance(tree, Leaf):
        leaf = tree.complex
        rep = classify(leaf, field)
        eta_text = str(eta_polynomial(leaf.h_vector())) if rep.h else None
        return {
            "leaf": {
                "facets": [list(f) for f in leaf.facets],
                "report": report_payload(rep, eta_text),
            }
        }
    return {
        "ridge": list(tree.ridge),
        "left": _tree_payload(tree.left, field),
        "right": _tree_payload(tree.right, field),
    }


def _tree_text(tree, field, indent: str = "") -> list[str]:
    if isinstance(tree, Leaf):
        leaf = tree.complex
        rep = classify(leaf, field)
        tags = [t for t, on in (("gorenstein*", rep.gorenstein_star),
                                ("almost gorenstein*", rep.almost_gorenstein_star))
                if on]
        facets = " ".join("".join(map(str, f)) if max(f) < 10
                          else "-".join(map(str, f)) for f in leaf.facets)
        return [f"{indent}leaf: {facets}  [{', '.join(tags) or 'n/a'}; "
                f"h={rep.h}, type={rep.type}]"]
    lines = [f"{indent}split on ridge {','.join(map(str, tree.ridge))}"]
    lines += _tree_text(tree.left, field, indent + "  ")
    lines += _tree_text(tree.right, field, indent + "  ")
    return lines


def cmd_decompose(args) -> int:
    data, delta, info = _load(args.file)
    field = _field(args.field)
    try:
        tree = decompose(delta, field)
    except NotAlmostGorensteinStarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if delta.dim >= 1:
            top = reduced_homology_dim(delta, delta.dim, field)
            print(f"note: top homology dimension {top}", file=sys.stderr)
            if delta.is_pure() and delta.is_strongly_connected() \
                    and find_ridge_split(delta) is None:
                print("note: no ridge split", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.json:
        payload = {
            "schema_version": 1,
            "tool": {"name": "agstar", "version": __version__},
            "input": input_payload(data, delta, info),
            "field": field_payload(field),
            "tree": _tree_payload(tree, field),
        }
        sys.stdout.write(dumps(payload))
        return EXIT_OK
    print("\n".join(_tree_text(tree, field)))
    return EXIT_OK


def cmd_betti(args) -> int:
    data, delta, info = _load(args.file)
    field = _field(args.field)
    if delta.dim < 0:
        print("error: the complex {∅} has no Betti data here", file=sys.stderr)
        return EXIT_PRECONDITION
    if not args.type_only and delta.n > args.max_n:
        print(f"error: full table needs 2^{delta.n} subsets, over the cap "
              f"{args.max_n}; raise --max-n or use --type-only",
              file=sys.stderr)
        return EXIT_RESOURCE
    t = cm_type(delta, field)
    column = graded_type_column(delta, field)
    if args.type_only:
        if args.json:
            payload = {
                "schema_version": 1,
                "tool": {"name": "agstar", "version": __version__},
                "input": input_payload(data, delta, info),
                "field": field_payload(field),
                "type": t,
                "graded_type_column": [[deg, column[deg]]
                                       for deg in sorted(column)],
            }
            sys.stdout.write(dumps(payload))
            return EXIT_OK
        print(f"type: {t}")
        for deg in sorted(column):
            print(f"degree {deg}: {column[deg]}")
        return EXIT_OK
    try:
        table = betti_table(delta, field, universe_cap=args.max_n)
        check = hilbert_numerator_check(delta, field,
                                        universe_cap=args.max_n)
    except UniverseCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if args.json:
        payload = {
            "schema_version": 1,
            "tool": {"name": "agstar", "version": __version__},
            "input": input_payload(data, delta, info),
            "field": field_payload(field),
            "betti": [[i, list(face), value]
                      for i, face, value in table.rows()],
            "totals": [[i, table.total(i)] for i in
                       sorted({i for i, _ in table.entries})],
            "type": t,
            "graded_type_column": [[deg, column[deg]]
                                   for deg in sorted(column)],
            "hilbert_numerator_check": check,
        }
        sys.stdout.write(dumps(payload))
        return EXIT_OK
    print(f"graded Betti numbers over {field}:")
    for i, face, value in table.rows():
        print(f"  beta_{i},{{{','.join(map(str, face))}}} = {value}")
    for i in sorted({i for i, _ in table.entries}):
        print(f"total beta_{i} = {table.total(i)}")
    print(f"type: {t}")
    for deg in sorted(column):
        print(f"type column degree {deg}: {column[deg]}")
    print(f"hilbert numerator check: {_bool(check)}")
    return EXIT_OK


def cmd_search(args) -> int:
    field = _field(args.field)
    eta = None
    if args.eta:
        try:
            eta = tuple(int(tok) for tok in args.eta.split(","))
        except ValueError:
            print(f"error: bad --eta value {args.eta!r}; "
                  "expected comma-separated integers", file=sys.stderr)
            return EXIT_USAGE
    try:
        spec = SearchSpec(args.n, args.d, field, args.predicate,
                          eta_filter=eta, delta_parity_scan=args.delta_parity,
                          up_to_iso=args.iso, limit=args.limit,
                          scan_cap=args.scan_cap)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.delta_parity:
            resume = bool(args.resume) and os.path.exists(args.resume)
            report = run_delta_parity(spec, checkpoint_path=args.resume,
                                      resume=resume)
            payload = {
                "delta_parity": {
                    "histogram": [[d, report.histogram[d]]
                                  for d in sorted(report.histogram)],
                    "odd_certificates": [[list(f) for f in facets]
                                         for facets in report.certificates],
                    "scanned": report.scanned,
                    "hits": report.hits,
                    "complete": report.complete,
                    "all_even": report.all_even,
                }
            }
            print(json.dumps(payload, sort_keys=False))
            return EXIT_OK
        for hit in enumerate_search(spec):
            eta_text = str(eta_polynomial(hit.complex.h_vector()))
            record = {
                "index": hit.index,
                "facets": [list(f) for f in hit.complex.facets],
                "report": report_payload(hit.report, eta_text),
            }
            print(json.dumps(record, sort_keys=False))
        return EXIT_OK
    except KeyboardInterrupt:
        print("interrupted; checkpoint written" if args.resume
              else "interrupted", file=sys.stderr)
        return EXIT_RESOURCE
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def build_parser() -> _Parser:
    parser = _Parser(prog="agstar",
                     description="exact classification of simplicial "
                                 "complexes and ridge-sum decomposition")
    parser.add_argument("--version", action="version",
                        version=f"agstar {__version__} ({KERNEL_BACKEND} kernel)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify a complex from a facet file")
    p.add_argument("file")
    p.add_argument("--field", default="q", help="q | f2 | f3 | fp:<p>")
    p.add_argument("--json", action="store_true")
    p.add_argument("--slow-verify", action="store_true",
                   help="re-run definition-level checks; exit 2 on mismatch")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose",
                       help="ridge decomposition (input must be almost "
                            "Gorenstein*)")
    p.add_argument("file")
    p.add_argument("--field", default="q")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("betti", help="graded Betti table / type column")
    p.add_argument("file")
    p.add_argument("--field", default="q")
    p.add_argument("--type-only", action="store_true",
                   help="only the type column, pruned scan")
    p.add_argument("--max-n", type=int, default=FULL_TABLE_UNIVERSE_CAP,
                   help="cap on the universe size for full tables")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("search",
                       help="enumerate pure complexes matching a predicate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True,
                   help="facet size; complexes have dimension d-1")
    p.add_argument("--field", default="q")
    p.add_argument("--predicate", default="ag_star",
                   choices=["uniformly_cm", "ag_star",
                            "ag_star_indecomposable", "gorenstein_star"])
    p.add_argument("--eta", help="comma-separated eta coefficients filter")
    p.add_argument("--delta-parity", action="store_true",
                   help="emit a delta histogram instead of hit records")
    p.add_argument("--iso", action="store_true",
                   help="one representative per isomorphism class (n <= 8)")
    p.add_argument("--limit", type=int)
    p.add_argument("--scan-cap", type=int,
                   help="abort (exit 3) after this many families")
    p.add_argument("--resume", metavar="CKPT",
                   help="checkpoint file to resume from / write to")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        if argv is None:
            raise
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
