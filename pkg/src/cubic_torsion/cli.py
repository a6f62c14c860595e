"""Command-line interface: `cubic-torsion <command> ...`.

Exit codes: 0 on agreement, 1 when a check finds a disagreement, 2 on usage or IO errors.
"""

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra.poly import UniPoly
from .classification.aux_curves import AUX_CURVES, EXPECTED_POINTS, aux_curve_search
from .classification.growth import growth_fields
from .classification.isogeny import SUPPORTED_DEGREES, IsogenyUndetermined, rational_isogeny
from .classification.verify import verify_dataset, verify_table1
from .dataset import (
    BULK_FILE,
    TABLE1_FILE,
    DatasetError,
    bundled_path,
    default_dataset_path,
    emit_csv,
    filter_conductor,
    ingest,
)
from .elliptic import Curve, torsion_over_K, torsion_over_Q
from .number_field import CubicField

EXIT_OK, EXIT_DIFF, EXIT_USAGE = 0, 1, 2

# the only curve with three growth fields
THREE_FIELD_CURVES = ("162b2",)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    dataset_path: Optional[str]
    height_bound: int = 10**6
    max_conductor: Optional[int] = None
    parallelism: int = 1
    output_format: str = "json"

    def __post_init__(self):
        if self.height_bound < 1:
            raise UsageError("--height-bound must be at least 1")
        if self.parallelism < 1:
            raise UsageError("--jobs must be at least 1")
        if self.max_conductor is not None and self.max_conductor < 1:
            raise UsageError("--max-conductor must be at least 1")


# --- helpers ---------------------------------------------------------------

_INT_LIST = re.compile(r"^\s*-?\d+(\s*,\s*-?\d+)*\s*$")


def _int_list(text: str, length: int, what: str) -> list:
    if not _INT_LIST.match(text):
        raise UsageError(f"{what} must be {length} comma-separated integers, got {text.strip()!r}")
    vals = [int(t) for t in text.split(",")]
    if len(vals) != length:
        raise UsageError(f"{what} must have {length} entries, got {len(vals)}")
    return vals


def _protect_negative_lists(argv: list) -> list:
    # argparse reads "-2,0,0" as an unknown flag; a leading space makes it a value
    return [" " + a if re.match(r"^-\d+(,-?\d+)+$", a) else a for a in argv]


def _load(path) -> list:
    try:
        return ingest(path)
    except OSError as exc:
        raise UsageError(f"cannot read dataset {path}: {exc.strerror or exc}") from exc


def _dataset(cfg: RunConfig) -> list:
    path = cfg.dataset_path or default_dataset_path()
    return filter_conductor(_load(path), cfg.max_conductor)


def _resolve_curve(cfg: RunConfig, arg: str) -> Curve:
    """A label (dataset first, then the bundled fixtures) or five a-invariants."""
    if "," in arg:
        return Curve(tuple(_int_list(arg, 5, "a-invariants")))
    arg = arg.strip()
    sources = [cfg.dataset_path or default_dataset_path()]
    for name in (BULK_FILE, TABLE1_FILE):
        if bundled_path(name) not in sources:
            sources.append(bundled_path(name))
    for path in sources:
        for rec in _load(path):
            if rec.label == arg:
                return rec.curve()
    raise UsageError(f"unknown curve label {arg!r}")


def _cubic_field(text: str) -> CubicField:
    c0, c1, c2 = _int_list(text, 3, "--cubic")
    p = UniPoly((c0, c1, c2, 1))
    try:
        return CubicField(p)
    except ValueError as exc:
        raise UsageError(f"--cubic {text.strip()}: {exc}") from exc


def _frac(q) -> str:
    return str(Fraction(q))


def _point_json(P) -> Optional[dict]:
    if P.is_infinity:
        return None
    if P.field is None:
        return {"x": _frac(P.x), "y": _frac(P.y)}
    return {"x": [_frac(c) for c in P.x.coords], "y": [_frac(c) for c in P.y.coords]}


def _curve_json(E: Curve) -> dict:
    return {"label": E.label, "a_invariants": list(E.a_invariants), "short_model": [E.A, E.B]}


def _emit(cfg: RunConfig, payload, rows=None, out=None):
    out = out or sys.stdout
    if cfg.output_format == "json" or rows is None:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


# --- commands --------------------------------------------------------------


def cmd_ingest(cfg: RunConfig, args) -> int:
    try:
        records = ingest(args.path)
    except OSError as exc:
        raise UsageError(f"cannot read {args.path}: {exc.strerror or exc}") from exc
    except DatasetError as exc:
        payload = {"path": str(args.path), "errors": [{"line": e.line, "message": e.message} for e in exc.errors]}
        _emit(cfg, payload, [["line", "error"]] + [[e.line, e.message] for e in exc.errors], out=sys.stderr)
        return EXIT_USAGE
    records = filter_conductor(records, cfg.max_conductor)
    if args.emit:
        sys.stdout.write(emit_csv(records))
        return EXIT_OK
    payload = {"path": str(args.path), "curves": len(records), "labels": [r.label for r in records]}
    _emit(cfg, payload, [["path", "curves"], [args.path, len(records)]])
    return EXIT_OK


def cmd_torsion(cfg: RunConfig, args) -> int:
    E = _resolve_curve(cfg, args.curve)
    G = torsion_over_Q(E)
    payload = {
        "curve": _curve_json(E),
        "base": G.structure.as_list(),
        "base_name": str(G.structure),
        "base_generators": [_point_json(P) for P in G.generators],
    }
    rows = [["curve", "G"], [E.label or list(E.a_invariants), G.structure]]
    if args.cubic is not None:
        K = _cubic_field(args.cubic)
        H = torsion_over_K(E, K)
        payload["field"] = {"poly": K.poly.int_coeffs(), "field_disc": K.field_disc}
        payload["torsion"] = H.structure.as_list()
        payload["torsion_name"] = str(H.structure)
        payload["generators"] = [_point_json(P) for P in H.generators]
        rows = [["curve", "G", "field", "disc", "H"], rows[1] + [K.poly, K.field_disc, H.structure]]
    _emit(cfg, payload, rows)
    return EXIT_OK


def cmd_growth(cfg: RunConfig, args) -> int:
    E = _resolve_curve(cfg, args.curve)
    record = growth_fields(E)
    payload = record.as_dict()
    payload["label"] = E.label
    rows = [["field", "disc", "H"]] + [[e.field.poly, e.field.field_disc, e.torsion] for e in record.entries]
    if cfg.output_format == "table":
        sys.stdout.write(f"{E.label or list(E.a_invariants)}: G = {record.base}\n")
    _emit(cfg, payload, rows if record.entries else [["field", "disc", "H"], ["-", "-", "-"]])
    return EXIT_OK


def cmd_isogeny(cfg: RunConfig, args) -> int:
    if args.n not in SUPPORTED_DEGREES:
        raise UsageError(f"isogeny degree must be one of {list(SUPPORTED_DEGREES)}")
    E = _resolve_curve(cfg, args.curve)
    payload = {"curve": _curve_json(E), "degree": args.n}
    try:
        h = rational_isogeny(E, args.n)
    except IsogenyUndetermined as exc:
        payload.update(status="undetermined", kernel_poly=None, reason=str(exc))
    else:
        payload.update(status="present" if h is not None else "absent", kernel_poly=None if h is None else h.int_coeffs())
    _emit(cfg, payload, [["degree", "status", "kernel"], [args.n, payload["status"], payload["kernel_poly"]]])
    return EXIT_OK


def _verify_table1(cfg: RunConfig) -> int:
    path = cfg.dataset_path or bundled_path(TABLE1_FILE)
    rows = verify_table1(_load(path))
    payload = {
        "rows": [
            {"label": r.label, "ok": r.ok, "expected": r.expected, "computed": r.computed, "problems": r.problems}
            for r in rows
        ],
        "agree": all(r.ok for r in rows),
    }
    table = [["curve", "ok", "problems"]] + [[r.label, r.ok, "; ".join(r.problems) or "-"] for r in rows]
    _emit(cfg, payload, table)
    return EXIT_OK if payload["agree"] else EXIT_DIFF


def _run_sweep(cfg: RunConfig):
    records = _dataset(cfg)
    if not records:
        raise UsageError("dataset is empty after filtering")
    return records, verify_dataset(records, jobs=cfg.parallelism)


def _verify_phi(cfg: RunConfig) -> int:
    records, report = _run_sweep(cfg)
    violations = [v.as_dict() for v in report.violations]
    pairs = {}
    for r in report.records():
        for e in r.entries:
            key = f"{r.base} -> {e.torsion}"
            pairs[key] = pairs.get(key, 0) + 1
    payload = {
        "curves": len(records),
        "violations": violations,
        "notes": report.notes,
        "pair_counts": dict(sorted(pairs.items())),
        "agree": not violations,
    }
    table = [["curves", "violations", "notes"], [len(records), len(violations), len(report.notes)]]
    table += [[v["label"], v["check"], v["message"]] for v in violations]
    _emit(cfg, payload, table)
    return EXIT_OK if not violations else EXIT_DIFF


def _verify_hq3(cfg: RunConfig) -> int:
    records, report = _run_sweep(cfg)
    counting = {"at_most_three", "one_field_per_group"}
    violations = [v.as_dict() for v in report.violations if v.check in counting]
    histogram = {}
    for r in report.records():
        histogram[len(r.entries)] = histogram.get(len(r.entries), 0) + 1
    three = report.curves_with_fields(3)
    unexpected = [lab for lab in three if lab not in THREE_FIELD_CURVES]
    payload = {
        "curves": len(records),
        "max_fields": report.max_fields(),
        "field_count_histogram": {str(k): v for k, v in sorted(histogram.items())},
        "three_field_curves": three,
        "unexpected_three_field_curves": unexpected,
        "violations": violations,
        "agree": not violations and not unexpected,
    }
    table = [["curves", "max_fields", "three_field_curves"], [len(records), payload["max_fields"], ",".join(three) or "-"]]
    table += [[v["label"], v["check"], v["message"]] for v in violations]
    _emit(cfg, payload, table)
    return EXIT_OK if payload["agree"] else EXIT_DIFF


def _verify_aux(cfg: RunConfig) -> int:
    results = []
    for key, curve in AUX_CURVES.items():
        found = aux_curve_search(key, cfg.height_bound)
        expected = list(EXPECTED_POINTS[key])
        results.append(
            {
                "curve": key,
                "equation": curve.equation,
                "found": [[_frac(x), _frac(y)] for x, y in found],
                "expected": [[_frac(x), _frac(y)] for x, y in expected],
                "unexpected": [[_frac(x), _frac(y)] for x, y in found if (x, y) not in expected],
                "ok": sorted(found) == sorted(expected),
            }
        )
    payload = {"height_bound": cfg.height_bound, "curves": results, "agree": all(r["ok"] for r in results)}
    table = [["curve", "ok", "found"]] + [
        [r["equation"], r["ok"], " ".join(f"({x}, {y})" for x, y in r["found"])] for r in results
    ]
    _emit(cfg, payload, table)
    return EXIT_OK if payload["agree"] else EXIT_DIFF


_VERIFIERS = {"table1": _verify_table1, "phi": _verify_phi, "hq3": _verify_hq3, "aux": _verify_aux}


def cmd_verify(cfg: RunConfig, args) -> int:
    return _VERIFIERS[args.what](cfg)


# --- parser ----------------------------------------------------------------


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dataset", metavar="PATH", help="curve CSV (default: $CUBIC_TORSION_DATASET or bundled)")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--jobs", type=_integer, default=1, metavar="N")
    common.add_argument("--height-bound", type=_integer, default=10**6, metavar="N")
    common.add_argument("--max-conductor", type=_integer, default=None, metavar="N")

    parser = argparse.ArgumentParser(prog="cubic-torsion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common], help="parse and validate a curve CSV")
    p.add_argument("path")
    p.add_argument("--emit", action="store_true", help="write the parsed records back as CSV")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("torsion", parents=[common], help="torsion over Q, or over a cubic field")
    p.add_argument("curve", help="label, or a1,a2,a3,a4,a6")
    p.add_argument("--cubic", metavar="c0,c1,c2", help="the field Q[x]/(x^3 + c2 x^2 + c1 x + c0)")
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("growth", parents=[common], help="all cubic fields where the torsion grows")
    p.add_argument("curve", help="label, or a1,a2,a3,a4,a6")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("isogeny", parents=[common], help="rational n-isogeny with its kernel polynomial")
    p.add_argument("curve", help="label, or a1,a2,a3,a4,a6")
    p.add_argument("n", type=_integer)
    p.set_defaults(func=cmd_isogeny)

    p = sub.add_parser("verify", parents=[common], help="check the classification tables against data")
    p.add_argument("what", choices=sorted(_VERIFIERS))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negative_lists(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(args.dataset, args.height_bound, args.max_conductor, args.jobs, args.format)
        return args.func(cfg, args)
    except UsageError as exc:
        sys.stderr.write(f"cubic-torsion: error: {exc}\n")
        return EXIT_USAGE
    except DatasetError as exc:
        sys.stderr.write(f"cubic-torsion: error: invalid dataset: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"cubic-torsion: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
