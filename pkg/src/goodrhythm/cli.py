"""Command-line entry point: ``goodrhythm <subcommand> ...``.

Exit codes: 0 on success, 2 for usage or parse errors, 3 when a verification
or invariant check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import dynamics, oracle
from . import transforms as tf
from .core import AscendingCycle, OnsetRhythm, cycle_to_rhythm, rhythm_to_cycle
from .corpus import CORPUS
from .errors import InvariantViolation, ParseError, UsageError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAIL = 3

FORMATS = ("text", "csv", "json")


# --- parsing ------------------------------------------------------------------

def _int_list(text: str, what: str) -> list[int]:
    parts = [p.strip() for p in text.replace(" ", ",").split(",") if p.strip()]
    if not parts:
        raise ParseError(f"empty {what}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"{what} must be comma-separated integers, got {text!r}") from None


def parse_rhythm(text: str, pulses: int | None = None) -> OnsetRhythm:
    """Read a rhythm written as a binary word, an onset list, or ``i:`` intervals.

    * ``1001001000100100``: pulses = word length.
    * ``0,3,6,10,12``: needs ``pulses``.
    * ``i:3,3,4,2,4`` or ``i:3,3,4,2,4@2``: pulses = sum; first onset at the
      ``@`` offset, else at pulse 0.
    """
    text = text.strip()
    if not text:
        raise ParseError("empty rhythm")
    if text.startswith("i:"):
        body, _, off = text[2:].partition("@")
        offset = 0
        if off:
            try:
                offset = int(off)
            except ValueError:
                raise ParseError(f"bad interval offset {off!r}") from None
        return OnsetRhythm.from_intervals(_int_list(body, "interval list"), offset, pulses)
    if set(text) <= {"0", "1"} and (pulses is None or len(text) == pulses):
        return OnsetRhythm.from_binary(text)
    if pulses is None:
        if "," in text:
            raise ParseError("an onset list needs --pulses N")
        raise ParseError(f"cannot read {text!r}: binary rhythms use only 0 and 1")
    if "," not in text and set(text) <= {"0", "1"} and len(text) > 2:
        raise ParseError(f"binary word has length {len(text)} but --pulses is {pulses}")
    return OnsetRhythm.from_onsets(_int_list(text, "onset list"), pulses)


def parse_vector(text: str) -> tf.DifferenceVector:
    text = text.strip()
    if text.startswith("i:"):
        text = text[2:].partition("@")[0]
    return tf.DifferenceVector(tuple(_int_list(text, "interval vector")))


# --- rendering ----------------------------------------------------------------

def _join(xs, sep=",") -> str:
    return sep.join(map(str, xs))


def trace_document(r: OnsetRhythm, report: dynamics.OrbitReport) -> dict:
    """Trace as a plain dict whose key order is the published schema."""
    return {
        "pulses": r.pulses,
        "onsets": list(r.sorted_onsets),
        "steps": [
            {"k": s.k, "a": list(s.a), "d": list(s.d), "width": s.width}
            for s in report.trace
        ],
        "distance_to_cycle": report.distance_to_cycle,
        "terminal_class": str(report.terminal_class),
        "period": report.period,
        "cap_hit": report.cap_hit,
    }


def _dumps(doc) -> str:
    return json.dumps(doc) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(header))]
    lines = ["  ".join(c[i].ljust(widths[i]) for i in range(len(c))).rstrip() for c in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render_trace(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return _dumps(doc)
    if fmt == "csv":
        return _csv(["k", "a", "d", "width"],
                    [(s["k"], _join(s["a"], ";"), _join(s["d"], ";"), s["width"]) for s in doc["steps"]])
    K = doc["distance_to_cycle"]
    rows = []
    for s in doc["steps"]:
        mark = "*" if s["k"] == K and not doc["cap_hit"] else ""
        rows.append((s["k"], f"({_join(s['a'])})", f"({_join(s['d'])})", s["width"], mark))
    out = [f"pulses {doc['pulses']}  onsets {{{_join(doc['onsets'])}}}", "",
           _table(["k", "a", "d", "w", ""], rows)]
    if doc["cap_hit"]:
        out.append(f"cap hit after {K} steps: width still > 1\n")
    else:
        out.append(f"distance to cycle {K}, {doc['terminal_class']}, period {doc['period']}\n")
    return "\n".join(out)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands --------------------------------------------------------------

def _rhythm_orbit(args) -> tuple[OnsetRhythm, dynamics.OrbitReport]:
    r = parse_rhythm(args.rhythm, args.pulses)
    a = rhythm_to_cycle(r)
    probe = dynamics.orbit_labeled(a, cap=args.max_steps)
    tail = probe.period if probe.terminal_class is dynamics.TerminalClass.PERIODIC_WIDTH1_ODD_MIN else 0
    rep = probe if tail == 0 else dynamics.orbit_labeled(a, cap=args.max_steps, tail=tail)
    return r, rep


def cmd_trace(args) -> int:
    r, rep = _rhythm_orbit(args)
    _emit(render_trace(trace_document(r, rep), args.format), args.out)
    if rep.cap_hit:
        print(f"error: width still > 1 after {rep.distance_to_cycle} steps", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_even(args) -> int:
    r, rep = _rhythm_orbit(args)
    if rep.cap_hit:
        print(f"error: width still > 1 after {rep.distance_to_cycle} steps", file=sys.stderr)
        return EXIT_FAIL
    final = rep.trace[rep.distance_to_cycle]
    f = cycle_to_rhythm(AscendingCycle(final.a, r.pulses))
    info = {
        "pulses": f.pulses,
        "steps": rep.distance_to_cycle,
        "binary": f.to_binary(),
        "onsets": f.to_onset_list(),
        "intervals": f.to_interval_notation(),
    }
    if args.format == "json":
        _emit(_dumps(info), args.out)
    elif args.format == "csv":
        _emit(_csv(list(info), [list(info.values())]), args.out)
    else:
        _emit(f"after {info['steps']} step(s), {f.pulses} pulses\n"
              f"  binary     {info['binary']}\n"
              f"  onsets     {info['onsets']}\n"
              f"  intervals  {info['intervals']}\n", args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    d = parse_vector(args.vector)
    cls = dynamics.classify(d)
    info: dict = {
        "vector": list(d.entries),
        "class": str(cls),
        "width": d.width,
        "min_parity": "even" if d.min % 2 == 0 else "odd",
    }
    if cls is dynamics.TerminalClass.PERIODIC_WIDTH1_ODD_MIN:
        info["period"] = dynamics.rotation_period(d)
    elif cls is not dynamics.TerminalClass.TRANSIENT:
        info["period"] = 1
    else:
        rep = dynamics.orbit(d, cap=args.max_steps)
        info["distance_to_cycle"] = rep.distance_to_cycle
        info["eventual_class"] = str(rep.terminal_class)
        if rep.cap_hit:
            info["cap_hit"] = True
    if args.format == "json":
        _emit(_dumps(info), args.out)
    elif args.format == "csv":
        _emit(_csv(list(info), [[_join(v, ";") if isinstance(v, list) else v for v in info.values()]]),
              args.out)
    else:
        line = f"{info['class']}  width {info['width']}  min {info['min_parity']}"
        if "period" in info:
            line += f"  period {info['period']}"
        if "distance_to_cycle" in info:
            line += f"  reaches {info['eventual_class']} after {info['distance_to_cycle']} step(s)"
        _emit(line + "\n", args.out)
    return EXIT_FAIL if info.get("cap_hit") else EXIT_OK


def cmd_verify(args) -> int:
    if not 3 <= args.max_pulses <= 12:
        raise UsageError(f"--max-pulses must be in [3, 12], got {args.max_pulses}")
    if args.inject:
        with oracle.injected(args.inject):
            rep = oracle.verify_identities(args.max_pulses, random_trials=args.random_trials)
    else:
        rep = oracle.verify_identities(args.max_pulses, random_trials=args.random_trials)
    ok = rep.strict_passed if args.strict else rep.passed
    if args.format == "json":
        _emit(_dumps({
            "max_pulses": args.max_pulses,
            "passed": ok,
            "identities": [
                {"name": r.name, "checked": r.checked, "failures": r.failures,
                 "known_defect": bool(r.known_defect),
                 "witness": None if r.witness is None else repr(r.witness)}
                for r in rep.results
            ],
        }), args.out)
    else:
        text = "\n".join(rep.lines())
        n_fail, n_dev = len(rep.failed()), len(rep.deviations())
        text += f"\n\n{len(rep.results)} identities, {n_fail} failed, {n_dev} known deviation(s)"
        text += " (counted as failures: --strict)\n" if args.strict and n_dev else "\n"
        _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_graph(args) -> int:
    if not 2 <= args.n < args.N:
        raise UsageError(f"need 2 <= n < N, got N={args.N}, n={args.n}")
    g = oracle.build_graph(args.N, args.n)
    _emit(g.to_dot(), args.out)
    problems = oracle.graph_crosscheck(g)
    cycles = sum(1 for c in g.cycle_length if c)
    print(f"{len(g.nodes)} nodes, {cycles} on cycles, max distance {max(g.distance)}",
          file=sys.stderr)
    for p in problems[:10]:
        print(f"mismatch: {p}", file=sys.stderr)
    return EXIT_FAIL if problems else EXIT_OK


def cmd_corpus(args) -> int:
    bossa = None
    rows, bad = [], []
    for e in CORPUS:
        r = e.rhythm
        rep = dynamics.orbit_labeled(rhythm_to_cycle(r))
        term = rep.trace[rep.distance_to_cycle].d
        if bossa is None:
            bossa = term
        rotated = any(term[k:] + term[:k] == bossa for k in range(len(term)))
        ok = rep.distance_to_cycle == e.expected_distance and not rep.cap_hit and rotated
        if not ok:
            bad.append(e.name)
        rows.append([e.name, _join(e.onsets), _join(r.intervals()), rep.distance_to_cycle,
                     e.expected_distance, str(rep.terminal_class), _join(term),
                     "ok" if ok else "MISMATCH"])
    header = ["name", "onsets", "intervals", "dist_c", "expected", "class", "terminal", "check"]
    if args.format == "json":
        _emit(_dumps([dict(zip(header, row)) for row in rows]), args.out)
    elif args.format == "csv":
        _emit(_csv(header, [[c.replace(",", ";") if isinstance(c, str) else c for c in row]
                            for row in rows]), args.out)
    else:
        _emit(_table(header, rows), args.out)
    if bad:
        print(f"corpus self-test failed for {', '.join(bad)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# --- argument parser -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="goodrhythm",
        description="Drive a cyclic rhythm to a maximally even one by repeated discrete averaging.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, rhythm=True, steps=True):
        if rhythm:
            sp.add_argument("rhythm", help="binary word, onset list (with --pulses) or i:intervals[@offset]")
            sp.add_argument("--pulses", type=int, help="pulse count N for onset-list input")
        if steps:
            sp.add_argument("--max-steps", type=int, default=None,
                            help="iteration cap (default max(N*n, 64))")
        sp.add_argument("--format", choices=FORMATS, default="text")
        sp.add_argument("--out", help="write output to FILE instead of stdout")

    sp = sub.add_parser("trace", help="labeled orbit until width <= 1, plus one terminal period")
    common(sp)
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("even", help="the maximally even rhythm reached, in all three notations")
    common(sp)
    sp.set_defaults(func=cmd_even)

    sp = sub.add_parser("classify", help="terminal class of an interval vector")
    sp.add_argument("vector", help="comma-separated integers, e.g. 3,3,4,3,3")
    common(sp, rhythm=False)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", help="run the exhaustive identity suite")
    sp.add_argument("--max-pulses", type=int, default=10)
    sp.add_argument("--random-trials", type=int, default=2000)
    sp.add_argument("--inject", choices=sorted(oracle.MUTATIONS),
                    help="run with a deliberately broken primitive")
    sp.add_argument("--strict", action="store_true",
                    help="count known deviations as failures")
    common(sp, rhythm=False, steps=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("graph", help="DOT export of the transition graph on CD_N^(n)")
    sp.add_argument("N", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("--out", help="write DOT to FILE instead of stdout")
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("corpus", help="built-in timelines with their distances to the cycle")
    common(sp, rhythm=False, steps=False)
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "max_steps", None) is not None and args.max_steps < 1:
        print("error: --max-steps must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
