"""Command-line interface: compute, validate, export-covers, cache.

``compute`` runs one pipeline at one (d, g) and prints the exact value
with a run record; results are served from an append-only cache when the
same query (including tool version and, for the graph-sum method, the
calibrated normalization reading) has been answered before.  ``validate``
runs every applicable pipeline over a (d, g) rectangle and reports the
pairwise identities.  ``export-covers`` writes the tropical quotient
covers as JSON or DOT.  Exact rationals are always printed as
numerator/denominator strings, never floats.

Exit codes: 0 success, 2 incompatible parameters, 3 step budget
exceeded, 4 unwritable export path.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cache import DEFAULT_CACHE_PATH, ResultCache
from .factorizations import BudgetExceeded, count_twisted
from .feynman import generating_series_coefficient, normalization_reading
from .fock import elliptic_disconnected
from .tropical import count_tropical, cover_to_dot, cover_to_json, enumerate_quotient_covers

METHODS = ("symgroup", "tropical", "feynman", "fock")

#: connected-vs-disconnected default when neither flag is given
_DEFAULT_CONNECTED = {
    "symgroup": True,
    "tropical": True,
    "feynman": True,
    "fock": False,
}

EXIT_OK = 0
EXIT_INCOMPATIBLE = 2
EXIT_BUDGET = 3
EXIT_UNWRITABLE = 4


@dataclass(frozen=True)
class RunRecord:
    method: str
    d: int
    g: int
    connected: bool
    numerator: str
    denominator: str
    wall_time_ms: int
    tool_version: str
    normalization_reading: str

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "d": self.d,
            "g": self.g,
            "connected": self.connected,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "wall_time_ms": self.wall_time_ms,
            "tool_version": self.tool_version,
            "normalization_reading": self.normalization_reading,
        }

    @classmethod
    def from_dict(cls, record: dict) -> "RunRecord":
        return cls(
            method=record["method"],
            d=int(record["d"]),
            g=int(record["g"]),
            connected=bool(record["connected"]),
            numerator=str(record["numerator"]),
            denominator=str(record["denominator"]),
            wall_time_ms=int(record["wall_time_ms"]),
            tool_version=str(record["tool_version"]),
            normalization_reading=str(record.get("normalization_reading", "")),
        )

    @property
    def value(self) -> Fraction:
        return Fraction(int(self.numerator), int(self.denominator))


def _incompatibility(method: str, d: int, g: int, connected) -> str:
    """One-line reason the query is outside the method's domain, or ''."""
    if d < 1:
        return "degree d must be a positive integer"
    if g < 1:
        return "genus g must be a positive integer"
    if method == "tropical":
        if g < 2:
            return "tropical enumeration needs genus g >= 2 (it places g-1 branch points)"
        if connected is False:
            return "the tropical pipeline counts connected covers only"
    elif method == "feynman":
        if g <= 2:
            return "the graph-sum pipeline is defined only for genus g > 2"
        if connected is False:
            return "the graph-sum pipeline computes connected counts only"
    elif method == "fock":
        if connected is True:
            return "the operator pipeline computes disconnected counts only"
    return ""


def _compute_value(method, d, g, connected, budget, threads):
    """(value, normalization_reading_label) for one query."""
    if method == "symgroup":
        result = count_twisted(d, g, connected=connected, budget=budget, threads=threads)
        return result.value, ""
    if method == "tropical":
        return count_tropical(d, g), ""
    if method == "feynman":
        return generating_series_coefficient(d, g), normalization_reading()
    if method == "fock":
        return elliptic_disconnected(d, g), ""
    raise ValueError("unknown method %r" % (method,))


def _emit(record: RunRecord, fmt: str, out) -> None:
    data = record.as_dict()
    if fmt == "json":
        print(json.dumps(data, sort_keys=False), file=out)
    elif fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(data))
        writer.writeheader()
        writer.writerow(data)
        out.write(buffer.getvalue())
    else:
        print(record.value, file=out)
        print(
            " ".join(
                "%s=%s" % (k, str(v).lower() if isinstance(v, bool) else v)
                for k, v in data.items()
                if k not in ("numerator", "denominator") and v != ""
            ),
            file=out,
        )


def cmd_compute(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    connected = args.connected
    if connected is None:
        connected = _DEFAULT_CONNECTED[args.method]
    reason = _incompatibility(args.method, args.degree, args.genus, args.connected)
    if reason:
        print("incompatible parameters: %s" % reason, file=err)
        return EXIT_INCOMPATIBLE

    cache = ResultCache(args.cache_file)
    key = {
        "method": args.method,
        "d": args.degree,
        "g": args.genus,
        "connected": connected,
        "tool_version": __version__,
        # reading is part of the key only once known; a cached feynman record
        # carries the reading that produced it
        "normalization_reading": normalization_reading() if args.method == "feynman" else "",
    }
    hit = cache.lookup(key)
    if hit is not None:
        _emit(RunRecord.from_dict(hit), args.format, out)
        return EXIT_OK

    start = time.perf_counter()
    try:
        value, reading = _compute_value(
            args.method, args.degree, args.genus, connected, args.budget, args.threads
        )
    except BudgetExceeded as exc:
        print("step budget exceeded: %s" % exc, file=err)
        return EXIT_BUDGET
    wall_ms = int(round((time.perf_counter() - start) * 1000))

    record = RunRecord(
        method=args.method,
        d=args.degree,
        g=args.genus,
        connected=connected,
        numerator=str(value.numerator),
        denominator=str(value.denominator),
        wall_time_ms=wall_ms,
        tool_version=__version__,
        normalization_reading=reading,
    )
    cache.store(record.as_dict())
    _emit(record, args.format, out)
    return EXIT_OK


def cmd_validate(args, out=None, err=None) -> int:
    """Cross-method value matrix with PASS/FAIL per identity."""
    out = out or sys.stdout
    failures = 0
    skips = 0
    for g in range(1, args.g_max + 1):
        for d in range(1, args.d_max + 1):
            def guarded(fn):
                nonlocal skips
                try:
                    return fn()
                except BudgetExceeded:
                    skips += 1
                    return None

            sym_conn = guarded(
                lambda: count_twisted(d, g, connected=True, budget=args.budget,
                                      threads=args.threads).value
            )
            sym_disc = guarded(
                lambda: count_twisted(d, g, connected=False, budget=args.budget,
                                      threads=args.threads).value
            )
            trop = count_tropical(d, g) if g >= 2 else None
            feyn = generating_series_coefficient(d, g) if g > 2 else None
            fock = elliptic_disconnected(d, g)

            cells = ["d=%d g=%d" % (d, g)]
            cells.append("sym=%s" % _cell(sym_conn))
            cells.append("sym_disc=%s" % _cell(sym_disc))
            cells.append("tropical=%s" % _cell(trop))
            cells.append("feynman=%s" % _cell(feyn))
            cells.append("fock=%s" % _cell(fock))

            verdicts = []
            for label, left, right in (
                ("tropical==sym", trop, sym_conn),
                ("feynman==sym", feyn, sym_conn),
                ("fock==sym_disc", fock, sym_disc),
            ):
                if left is None:
                    continue  # method not applicable at this (d, g)
                if right is None:
                    verdicts.append("%s:SKIP" % label)
                elif left == right:
                    verdicts.append("%s:PASS" % label)
                else:
                    verdicts.append("%s:FAIL" % label)
                    failures += 1
            print("  ".join(cells) + "  |  " + (" ".join(verdicts) or "-"), file=out)
    summary = "validate: %s" % ("all identities PASS" if failures == 0 else "%d FAIL" % failures)
    if skips:
        summary += " (%d budget SKIPs)" % skips
    print(summary, file=out)
    return EXIT_OK if failures == 0 else 1


def _cell(value) -> str:
    return "-" if value is None else str(value)


def cmd_export_covers(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    reason = _incompatibility("tropical", args.degree, args.genus, None)
    if reason:
        print("incompatible parameters: %s" % reason, file=err)
        return EXIT_INCOMPATIBLE
    covers = enumerate_quotient_covers(args.degree, args.genus)
    target = Path(args.out)
    try:
        if args.format == "json":
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(cover_to_json(covers) + "\n", encoding="utf-8")
            written = [target]
        else:
            target.mkdir(parents=True, exist_ok=True)
            written = []
            for i, cover in enumerate(covers):
                path = target / ("cover_%03d.dot" % i)
                path.write_text(cover_to_dot(cover, name="cover_%03d" % i), encoding="utf-8")
                written.append(path)
    except OSError as exc:
        print("cannot write %s: %s" % (target, exc), file=err)
        return EXIT_UNWRITABLE
    print(
        "%d covers at d=%d g=%d -> %s"
        % (len(covers), args.degree, args.genus, written[0].parent if args.format == "dot" else written[0]),
        file=out,
    )
    return EXIT_OK


def cmd_cache(args, out=None, err=None) -> int:
    out = out or sys.stdout
    cache = ResultCache(args.cache_file)
    if args.action == "clear":
        cache.clear()
        print("cache cleared: %s" % cache.path, file=out)
        return EXIT_OK
    entries = cache.entries()
    print("%d cached results in %s" % (len(entries), cache.path), file=out)
    for record in entries:
        print(json.dumps(record, sort_keys=False), file=out)
    return EXIT_OK


def _add_cache_flag(parser):
    parser.add_argument(
        "--cache-file",
        default=None,
        metavar="PATH",
        help="result cache location (default: %s)" % DEFAULT_CACHE_PATH,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twisted-hurwitz",
        description="Cross-validating pipelines for twisted elliptic covering counts.",
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="run one pipeline at one (d, g)")
    compute.add_argument("--method", choices=METHODS, required=True)
    compute.add_argument("-d", "--degree", type=int, required=True)
    compute.add_argument("-g", "--genus", type=int, required=True)
    conn = compute.add_mutually_exclusive_group()
    conn.add_argument("--connected", dest="connected", action="store_true", default=None)
    conn.add_argument("--disconnected", dest="connected", action="store_false", default=None)
    compute.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    compute.add_argument("--budget", type=int, default=None,
                         help="step budget (overrides TH_BUDGET)")
    compute.add_argument("--threads", type=int, default=1)
    _add_cache_flag(compute)
    compute.set_defaults(func=cmd_compute)

    validate = sub.add_parser("validate", help="cross-method identity matrix")
    validate.add_argument("-d", "--d-max", type=int, required=True)
    validate.add_argument("-g", "--g-max", type=int, required=True)
    validate.add_argument("--budget", type=int, default=None)
    validate.add_argument("--threads", type=int, default=1)
    validate.set_defaults(func=cmd_validate)

    export = sub.add_parser("export-covers", help="write quotient covers as JSON or DOT")
    export.add_argument("-d", "--degree", type=int, required=True)
    export.add_argument("-g", "--genus", type=int, required=True)
    export.add_argument("--out", required=True, metavar="PATH")
    export.add_argument("--format", choices=("json", "dot"), default="json")
    export.set_defaults(func=cmd_export_covers)

    cache = sub.add_parser("cache", help="inspect or clear the result cache")
    cache.add_argument("action", choices=("show", "clear"))
    _add_cache_flag(cache)
    cache.set_defaults(func=cmd_cache)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
