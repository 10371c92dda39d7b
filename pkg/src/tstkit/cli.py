"""Command-line entry point: ``tstkit <command> ...`` with JSON reports on stdout.

Exit codes: 0 positive verdict, 1 negative verdict, 2 usage or input error,
3 disagreement between the zone checker and the region oracle.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib import resources
from pathlib import Path

from . import kinding, monitor, semantics, verify
from . import syntax as S
from .encoding import encode, export_dot

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2, 3

CORPUS_PREFIX = "corpus:"


class InputError(Exception):
    pass


def corpus_names() -> list[str]:
    root = resources.files("tstkit") / "corpus"
    return sorted(p.name for p in root.iterdir() if p.name.endswith((".tst", ".trc")))


def read_input(ref: str) -> str:
    """Read a file path, or a bundled corpus entry written ``corpus:NAME``."""
    if ref.startswith(CORPUS_PREFIX):
        name = ref[len(CORPUS_PREFIX):]
        root = resources.files("tstkit") / "corpus"
        for cand in (name, name + ".tst", name + ".trc"):
            f = root / cand
            if f.is_file():
                return f.read_text(encoding="utf-8")
        raise InputError(f"no corpus entry named {name!r}")
    try:
        return Path(ref).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {ref}: {e.strerror}") from None


class Session:
    """Collects input digests for the report of a single command."""

    def __init__(self):
        self.inputs: dict[str, str] = {}

    def text(self, ref: str) -> str:
        t = read_input(ref)
        self.inputs[ref] = hashlib.sha256(t.encode()).hexdigest()
        return t

    def tst(self, ref: str) -> S.Tst:
        text = self.text(ref)
        try:
            return S.parse(text)
        except S.TstSyntaxError as e:
            raise InputError(f"{ref}:{e}") from None
        except S.ValidationError as e:
            raise InputError(f"{ref}: invalid TST: {e}") from None


# ---------------------------------------------------------------------------
# commands: each returns (exit code, payload)


def cmd_check(args, ses: Session):
    p = ses.tst(args.file)
    d = S.to_denf(p, S.FreshVars("X", S.all_vars(p)))
    return EXIT_OK, {
        "valid": True,
        "normalized": S.print_tst(p),
        "max_constant": S.max_constant(p),
        "clocks": sorted(S.clocks(p)),
        "denf": str(d),
    }


def cmd_compliant(args, ses: Session):
    p, q = ses.tst(args.p), ses.tst(args.q)
    v = verify.compliant(p, q, order=args.order, max_states=args.max_states)
    payload = v.to_json()
    payload["seconds"] = round(v.seconds, 6) if not args.no_timing else None
    if args.oracle:
        o = semantics.oracle_compliant(p, q)
        payload["oracle"] = o
        if o != v.compliant:
            dump = {"p": S.print_tst(p), "q": S.print_tst(q),
                    "zone_checker": v.compliant, "region_oracle": o}
            print("oracle disagreement, please report:\n" + json.dumps(dump, indent=2),
                  file=sys.stderr)
            return EXIT_DISAGREE, payload
    if not v.compliant and args.trace_out:
        Path(args.trace_out).write_text(
            "".join(verify.event_text(e) + "\n" for e in v.trace), encoding="utf-8")
        payload["trace_file"] = args.trace_out
    return (EXIT_OK if v.compliant else EXIT_NEGATIVE), payload


def cmd_admits(args, ses: Session):
    p = ses.tst(args.file)
    ok, k = kinding.admits_compliant(p)
    payload = {"admits": ok, "kind": kinding.kind_guard(k)}
    if args.verbose:
        payload["kind_parts"] = [repr(part) for part in k.parts]
    return (EXIT_OK if ok else EXIT_NEGATIVE), payload


def cmd_dual(args, ses: Session):
    p = ses.tst(args.file)
    text = S.print_tst(kinding.dual(p))
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    return EXIT_OK, {"dual": text, "admits": kinding.admits(p), "out": args.out}


def cmd_subtype(args, ses: Session):
    p, q = ses.tst(args.p), ses.tst(args.q)
    ok = kinding.subtype(p, q, max_states=args.max_states)
    return (EXIT_OK if ok else EXIT_NEGATIVE), {"subtype": ok}


def cmd_to_ta(args, ses: Session):
    p = ses.tst(args.file)
    d = S.to_denf(p, S.FreshVars("X", S.all_vars(p)))
    a = encode(d)
    dot = export_dot(a, Path(args.file).stem if not args.file.startswith(CORPUS_PREFIX)
                     else args.file[len(CORPUS_PREFIX):])
    payload = {
        "denf": str(d),
        "locations": len(a.locations),
        "edges": len(a.edges),
        "urgent": sorted(a.urgent),
    }
    if args.dot:
        Path(args.dot).write_text(dot, encoding="utf-8")
        payload["dot_file"] = args.dot
    else:
        payload["dot"] = dot
    return EXIT_OK, payload


def cmd_monitor(args, ses: Session):
    p, q = ses.tst(args.p), ses.tst(args.q)
    try:
        events = monitor.parse_trace(ses.text(args.trace))
    except monitor.TraceError as e:
        raise InputError(f"{args.trace}: {e}") from None
    report = monitor.replay(p, q, events)
    return (EXIT_NEGATIVE if report.culpable else EXIT_OK), report.to_json()


def cmd_corpus(args, ses: Session):
    return EXIT_OK, {"entries": corpus_names()}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tstkit", description="Timed session type toolkit.")
    ap.add_argument("--max-states", type=int, default=1_000_000,
                    help="symbolic state budget of the compliance checker")
    ap.add_argument("--no-timing", action="store_true",
                    help="omit timings so that reports are byte-stable")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="parse and validate a TST")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("compliant", help="decide compliance of two TSTs")
    c.add_argument("p")
    c.add_argument("q")
    c.add_argument("--oracle", action="store_true", help="cross-check with the region oracle")
    c.add_argument("--trace-out", metavar="FILE", help="write a counterexample .trc")
    c.add_argument("--order", choices=("bfs", "dfs"), default="bfs")
    c.set_defaults(func=cmd_compliant)

    c = sub.add_parser("admits", help="kind inference and admissibility of a compliant")
    c.add_argument("file")
    c.add_argument("-v", "--verbose", action="store_true", help="also list the raw zones")
    c.set_defaults(func=cmd_admits)

    c = sub.add_parser("dual", help="canonical compliant")
    c.add_argument("file")
    c.add_argument("--out", metavar="FILE")
    c.set_defaults(func=cmd_dual)

    c = sub.add_parser("subtype", help="decide p <= q")
    c.add_argument("p")
    c.add_argument("q")
    c.set_defaults(func=cmd_subtype)

    c = sub.add_parser("to-ta", help="timed automaton encoding")
    c.add_argument("file")
    c.add_argument("--dot", metavar="FILE", help="write Graphviz output to FILE")
    c.set_defaults(func=cmd_to_ta)

    c = sub.add_parser("monitor", help="replay a trace through the runtime monitor")
    c.add_argument("p")
    c.add_argument("q")
    c.add_argument("trace")
    c.set_defaults(func=cmd_monitor)

    c = sub.add_parser("corpus", help="list bundled examples (use as corpus:NAME)")
    c.set_defaults(func=cmd_corpus)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    ses = Session()
    t0 = time.perf_counter()
    try:
        code, payload = args.func(args, ses)
    except InputError as e:
        print(f"tstkit: {e}", file=sys.stderr)
        code, payload = EXIT_INPUT, {"error": str(e)}
    except verify.StateBudgetExceeded as e:
        print(f"tstkit: {e}", file=sys.stderr)
        code, payload = EXIT_INPUT, {"error": str(e)}
    report = {
        "command": [args.command] + argv[argv.index(args.command) + 1:],
        "inputs": ses.inputs,
        "exit": code,
        "result": payload,
        "seconds": None if args.no_timing else round(time.perf_counter() - t0, 6),
    }
    if args.no_timing and isinstance(payload, dict) and "seconds" in payload:
        payload["seconds"] = None
    print(json.dumps(report, indent=2, ensure_ascii=False, sort_keys=True))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
