"""Command-line interface.

Exit codes: 0 for success / accept / equivalent / no witness, 1 for
reject / counterexample / witness found, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from .analysis import Runner, audit_reversibility, enumerate_language, equivalent_up_to
from .automata import AutomatonError, PartialFA, run_fa
from .compiler import compile_dfa
from .multihead import MultiHeadRFA, render_vector, run_mh, translate
from .system import PCRFASystem, degree_one, format_event, run_system
from .textformat import ParseError, document, load, serialize


class UsageError(Exception):
    pass


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _word(alphabet, text: str):
    try:
        return alphabet.word(text)
    except AutomatonError as e:
        raise UsageError(str(e)) from None


def _render(alphabet, w) -> str:
    return alphabet.render(w) if w else "ε"


def _render_config(c) -> str:
    return " ".join(f"({s},{''.join(u) or 'ε'})" for s, u in c.entries)


def cmd_check(args) -> int:
    doc = load(args.file)
    body = doc.body
    print(f"type: {doc.kind}")
    if isinstance(body, PCRFASystem):
        ok = True
        for name, comp in zip(body.names, body.components):
            rep = comp.report
            ok &= rep.reversible
            print(f"component {name}:")
            for line in rep.lines(lambda x: x or "-"):
                print("  " + line)
        print(f"all components reversible: {str(ok).lower()}")
        return 0 if ok else 1
    if isinstance(body, MultiHeadRFA):
        rep = body.report
        print("\n".join(rep.lines(render_vector)))
    else:
        rep = body.report
        print("\n".join(rep.lines(lambda x: x or "-")))
    return 0 if rep.reversible else 1


def cmd_compile(args) -> int:
    body = load(args.file).body
    if not isinstance(body, PartialFA):
        raise UsageError("compile expects a dfa or rfa file")
    system = compile_dfa(body, complete_partial=args.complete)
    _write(serialize(document(system)), args.output)
    return 0


def cmd_translate(args) -> int:
    body = load(args.file).body
    if not isinstance(body, MultiHeadRFA):
        raise UsageError("translate expects an mhrfa file")
    system = translate(body, literal=args.literal)
    _write(serialize(document(system)), args.output)
    return 0


def cmd_run(args) -> int:
    body = load(args.file).body
    w = _word(body.alphabet, args.input)
    if isinstance(body, MultiHeadRFA):
        res = run_mh(body, w, record=args.trace)
        if args.trace:
            for conf in res.path:
                print(f"HEADS {conf.state} " + ",".join(map(str, conf.positions)))
        verdict = "divergence" if res.diverged else ("accept" if res.accepted else "reject")
        print(f"{verdict} (halted in {res.halt_state}, heads at {','.join(map(str, res.positions))})")
        return 0 if res.accepted else 1
    if isinstance(body, PartialFA) and not args.trace:
        res = run_fa(body, w)
        verdict = "divergence" if res.diverged else ("accept" if res.accepted else "reject")
        print(f"{verdict} (halted in {res.halt_state} after {res.consumed_length} symbols)")
        return 0 if res.accepted else 1
    system = body if isinstance(body, PCRFASystem) else degree_one(body)
    res = run_system(system, w, trace=args.trace)
    if args.trace:
        for ev in res.trace:
            print(format_event(ev))
    print(f"{res.verdict} {_render_config(res.final_config)}")
    return 0 if res.accepted else 1


def cmd_equiv(args) -> int:
    a, b = load(args.a).body, load(args.b).body
    if a.alphabet != b.alphabet:
        raise UsageError("the two automata have different alphabets")
    cex = equivalent_up_to(Runner.of(a), Runner.of(b), args.max_len)
    if cex is None:
        print(f"equivalent up to length {args.max_len}")
        return 0
    ra, rb = Runner.of(a).accepts(cex), Runner.of(b).accepts(cex)
    print(f"counterexample {_render(a.alphabet, cex)}: "
          f"{'accept' if ra else 'reject'} vs {'accept' if rb else 'reject'}")
    return 1


def cmd_enum(args) -> int:
    body = load(args.file).body
    for w in enumerate_language(Runner.of(body), args.max_len):
        print(_render(body.alphabet, w))
    return 0


def cmd_audit(args) -> int:
    body = load(args.file).body
    if isinstance(body, PartialFA):
        body = degree_one(body)
    if not isinstance(body, PCRFASystem):
        raise UsageError("audit expects a pcrfa, dfa or rfa file")
    found = audit_reversibility(body, args.max_len, granularity=args.granularity)
    for wt in found:
        labels = "comm" if wt.labels is None else " ".join(x or "-" for x in wt.labels)
        print(f"WITNESS {_render_config(wt.configuration)} read [{labels}]")
        for p in sorted(wt.predecessors, key=lambda c: (c.states, c.suffixes)):
            print(f"  <- {_render_config(p)}")
    print(f"{len(found)} configuration(s) with several predecessors up to length {args.max_len}")
    return 1 if found else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcrfa", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="determinism / reversibility report")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("compile", help="compile a fully defined DFA into a system")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--complete", action="store_true", help="add a sink for missing transitions first")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("translate", help="translate a multi-head machine into a system")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--literal", action="store_true",
                   help="literal construction with shared wait states")
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("run", help="run an automaton on one word")
    s.add_argument("file")
    s.add_argument("--input", required=True)
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("equiv", help="bounded equivalence check")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--max-len", type=int, required=True)
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("enum", help="list accepted words")
    s.add_argument("file")
    s.add_argument("--max-len", type=int, required=True)
    s.set_defaults(func=cmd_enum)

    s = sub.add_parser("audit", help="configurations with several predecessors")
    s.add_argument("file")
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--granularity", choices=("macro", "raw"), default="macro")
    s.set_defaults(func=cmd_audit)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_len", 0) < 0:
        print("error: --max-len must be non-negative", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ParseError, UsageError, AutomatonError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
