"""Command-line front end.

Construction subcommands print an automaton file; ``verify``, ``search-msa``
and ``search-rc`` print ``key=value`` reports (or JSON with ``--json``) and
exit 0 only when every check passes.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .analysis import (cerny_bound_holds, min_strongly_connected_search,
                       reset_complexity_search, state_complexity, syn_report,
                       verify_construction)
from .automaton import Alphabet, Dfa, Word
from .constructions import build_b_u, build_c_s, build_d_uv, build_de_bruijn
from .errors import IdealSyncError
from .fileformat import export_dot, parse_automaton, render_automaton
from .languages import GeneratorSet, Recognizer, minimize, uniform_set

EXIT_FAIL = 1
EXIT_USAGE = 2


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "none"
    return str(value)


def _emit(report: dict, as_json: bool, out):
    if as_json:
        out.write(json.dumps(report, ensure_ascii=False) + "\n")
    else:
        out.write(" ".join(f"{k}={_fmt(v)}" for k, v in report.items()) + "\n")


def _alphabet(args) -> Alphabet | None:
    return Alphabet.from_letters(args.alphabet) if getattr(args, "alphabet", None) else None


def _gens(args) -> GeneratorSet:
    return GeneratorSet.parse(args.gens, _alphabet(args))


def _word_pair(args):
    u, v = Word.parse(args.u), Word.parse(args.v)
    return u, v


def _build(kind: str, args):
    """Return ``(automaton, generators, state bound check)`` for a construction."""
    if kind == "debruijn":
        alphabet = _alphabet(args) or Alphabet(2)
        A = build_de_bruijn(args.n, alphabet)
        return A, uniform_set(args.n, alphabet), A.num_states == 2 ** args.n
    if kind == "bu":
        U = _gens(args)
        A = build_b_u(U)
        return A, U, A.num_states == 2 ** U.max_length
    if kind == "cs":
        S = _gens(args)
        A = build_c_s(S)
        return A, S, A.num_states <= 2 ** S.max_length
    if kind == "duv":
        u, v = _word_pair(args)
        A = build_d_uv(u, v, general=args.general)
        S = GeneratorSet(A.alphabet, frozenset([u, v]))
        return A, S, A.num_states == len(u) + len(v)
    raise AssertionError(kind)


def _read(path: str):
    if path == "-":
        return parse_automaton(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_automaton(fh.read())


def _as_dfa(obj) -> Dfa:
    return obj.dfa if isinstance(obj, Recognizer) else obj


def cmd_construct(args, out):
    A, _, _ = _build(args.command, args)
    out.write(export_dot(A, args.command) if args.format == "dot" else render_automaton(A))
    return 0


def cmd_verify(args, out):
    if args.construction == "file":
        if not args.file or not args.gens:
            raise IdealSyncError("verify file needs --file and --gens")
        A = _as_dfa(_read(args.file))
        S = _gens(args)
        bound = None
    else:
        A, S, bound = _build(args.construction, args)
    report = verify_construction(A, S).as_dict()
    fields = {k: report[k] for k in ("states", "strongly_connected", "syn_equals_ideal")}
    if bound is not None:
        fields["state_bound"] = bound
    fields["synchronizing"] = report["synchronizing"]
    fields["shortest_reset"] = report["shortest_reset"]
    _emit(fields, args.json, out)
    checks = [fields["syn_equals_ideal"]]
    if args.construction != "file":
        checks += [fields["strongly_connected"], bound]
    return 0 if all(checks) else EXIT_FAIL


def cmd_syn(args, out):
    A = _as_dfa(_read(args.file))
    report = syn_report(A)
    _emit({k: v for k, v in report.as_dict().items()}, args.json, out)
    if args.recognizer:
        out.write(render_automaton(minimize(report.syn_recognizer)))
    return 0


def cmd_search(args, out):
    S = _gens(args)
    if args.command == "search-msa":
        result = min_strongly_connected_search(S, args.kmax, workers=args.workers)
    else:
        result = reset_complexity_search(S, args.kmax, workers=args.workers)
    report = {"gens": str(S), "kmax": result.k, "found": result.found is not None,
              "size": result.size, "witnesses": len(result.witnesses),
              "states_searched": result.states_searched}
    ok = result.found is not None
    if args.command == "search-rc" and result.found is not None:
        sc = state_complexity(S)
        report.update(rc=result.size, sc=sc, rc_le_sc=result.size <= sc,
                      cerny_bound=cerny_bound_holds(result.size, S))
        ok = ok and result.size <= sc
    if args.json:
        report["automata"] = [render_automaton(W) for W in result.witnesses]
        _emit(report, True, out)
    else:
        _emit(report, False, out)
        for W in result.witnesses:
            out.write(render_automaton(W))
    return 0 if ok else EXIT_FAIL


def cmd_export_dot(args, out):
    out.write(export_dot(_read(args.file), args.name))
    return 0


def _add_construction_args(p, kind):
    if kind == "debruijn":
        p.add_argument("--n", type=int, required=True, help="word length")
    elif kind in ("bu", "cs"):
        p.add_argument("--gens", required=True, help="comma-separated words, e.g. aa,aba")
    elif kind == "duv":
        p.add_argument("--u", required=True)
        p.add_argument("--v", required=True)
        p.add_argument("--general", action="store_true",
                       help="allow alphabets with more than two letters")
    p.add_argument("--alphabet", help="alphabet letters, e.g. abc (default: inferred)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idealsync",
        description="Strongly connected synchronizing automata for finitely generated ideals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    helps = {"debruijn": "De Bruijn automaton with Syn = Σ^{≥n}",
             "bu": "modified De Bruijn automaton for U ⊊ Σ^n",
             "cs": "quotient automaton for an anti-factorial set",
             "duv": "two-word automaton with |u|+|v| states"}
    for kind, text in helps.items():
        p = sub.add_parser(kind, help=text)
        _add_construction_args(p, kind)
        p.add_argument("--format", choices=("dfa", "dot"), default="dfa")
        p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a construction against its ideal")
    vsub = p.add_subparsers(dest="construction", required=True)
    for kind in list(helps) + ["file"]:
        vp = vsub.add_parser(kind)
        if kind == "file":
            vp.add_argument("--file", required=True)
            vp.add_argument("--gens", required=True)
            vp.add_argument("--alphabet")
        else:
            _add_construction_args(vp, kind)
        vp.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("syn", help="synchronizing-word report for an automaton file")
    p.add_argument("file", help="automaton file, or - for stdin")
    p.add_argument("--recognizer", action="store_true",
                   help="also print the minimal recognizer of Syn(A)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_syn)

    for name, text in (("search-msa", "smallest strongly connected automata"),
                       ("search-rc", "reset complexity by exhaustive search")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--gens", required=True)
        p.add_argument("--kmax", type=int, required=True)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--alphabet")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=cmd_search)

    p = sub.add_parser("export-dot", help="Graphviz source for an automaton file")
    p.add_argument("file", help="automaton file, or - for stdin")
    p.add_argument("--name", default="automaton")
    p.set_defaults(func=cmd_export_dot)
    return parser


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except (IdealSyncError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
