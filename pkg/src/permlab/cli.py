"""Command-line front end.

Exit status: 0 on success, 1 when a verification finds a counterexample,
2 on usage errors and on errors raised while computing (unresolved
comparisons, exhausted budgets).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from math import gcd

from . import analysis, automaton, finewilf, makarov
from .errors import PermlabError, SpecError
from .genperm import DEFAULT_LOOKAHEAD, PERM_SPEC_GRAMMAR, parse_perm
from .patterns import Pattern, factor, gamma_of
from .plot import plot as plot_perm, scatter_svg
from .words import parse_word

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

EPILOG = PERM_SPEC_GRAMMAR + """
automaton files:
  k=<base>
  state <name> out <|>|= [initial]
  edge <from> (<d1>,<d2>) <to>          # comments allowed

environment:
  PERMLAB_BUDGET    backtracking node budget for finewilf searches (default 10^7)

exit status: 0 ok, 1 a verification found a counterexample, 2 usage or runtime error
"""


class UsageError(Exception):
    pass


def _int_list(text):
    out = []
    for part in text.split(","):
        lo, sep, hi = part.partition("-")
        if sep:
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj):
    return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def _emit(args, payload, human, header=None, rows=None):
    if args.format == "json":
        return _json(payload)
    if args.format == "csv" and header is not None:
        return _csv(header, rows)
    return human


def cmd_factor(args):
    p = parse_perm(args.perm, args.L)
    pat = factor(p, args.start, args.len)
    payload = {"command": "factor", "perm": args.perm, "start": args.start,
               "length": args.len, "pattern": list(pat)}
    return EXIT_OK, _emit(args, payload, f"{pat}\n", ["start", "length", "pattern"],
                          [[args.start, args.len, str(pat)]])


def cmd_gamma(args):
    p = parse_perm(args.perm, args.L)
    rel = gamma_of(p, args.i, args.j).value
    payload = {"command": "gamma", "perm": args.perm, "i": args.i, "j": args.j, "relation": rel}
    return EXIT_OK, _emit(args, payload, f"{rel}\n", ["i", "j", "relation"], [[args.i, args.j, rel]])


def cmd_complexity(args):
    if (args.perm is None) == (args.word is None):
        raise UsageError("give exactly one of --perm or --word")
    ns = _int_list(args.n)
    sat = not args.no_saturation
    reports = []
    if args.word is not None:
        w = parse_word(args.word)
        M = args.M or 5000
        for n in ns:
            if args.kind == "factor":
                reports.append(analysis.word_factor_complexity(w, n, M, sat))
            else:
                reports.append(analysis.word_max_pattern_complexity(w, n, args.T, M, sat))
        source = args.word
    else:
        p = parse_perm(args.perm, args.L)
        M = args.M or analysis.DEFAULT_M
        for n in ns:
            if args.kind == "factor":
                reports.append(analysis.factor_complexity(p, n, M, sat))
            else:
                reports.append(analysis.max_pattern_complexity(p, n, args.T, M, sat))
        source = args.perm
    symbol = "p" if args.kind == "factor" else "p*"
    cols = ["n", "value", "bound", "M", "T"]
    rows = [[r.n, r.value, r.bound, r.M, "" if r.T is None else r.T] for r in reports]
    human = "".join(
        f"{symbol}({r.n}) {'=' if r.saturated else '≥'} {r.value}"
        f"  [M={r.M}{'' if r.T is None else f', T={r.T}, windows={r.windows_tried}'}]\n"
        for r in reports
    )
    payload = {"command": "complexity", "source": source, "kind": args.kind,
               "rows": [r.to_dict() for r in reports]}
    return EXIT_OK, _emit(args, payload, human, cols, rows)


def cmd_period(args):
    p = parse_perm(args.perm, args.L)
    t = analysis.detect_period(p, args.M, args.t_max)
    payload = {"command": "period", "perm": args.perm, "M": args.M, "t_max": args.t_max, "period": t}
    human = f"period {t}\n" if t else f"no period <= {args.t_max} within M={args.M}\n"
    return EXIT_OK, _emit(args, payload, human, ["M", "t_max", "period"],
                          [[args.M, args.t_max, "" if t is None else t]])


def cmd_finewilf(args):
    p, q = args.p, args.q
    g = gcd(p, q)
    if args.fw_cmd == "words":
        L = p + q - g
        at = finewilf.word_period_classes(L, {p, q})
        below = finewilf.word_period_classes(L - 1, {p, q}) if L > 1 else at
        holds = finewilf.is_residue_partition(at, g)
        tight = L == 1 or len(below) > g
        payload = {"command": "finewilf-words", "p": p, "q": q, "gcd": g, "length": L,
                   "classes": at, "classes_below": below, "holds": holds, "tight": tight}
        human = (f"length {L}: {len(at)} classes ({'residues mod ' + str(g) if holds else 'NOT residues'}); "
                 f"length {L - 1}: {len(below)} classes ({'tight' if tight else 'NOT tight'})\n")
        return (EXIT_OK if holds and tight else EXIT_FAILED), _emit(args, payload, human)
    if args.fw_cmd == "perms":
        if args.n is None:
            if g != 1:
                raise UsageError("periods are not coprime; give --n for the general-period check")
            rep = finewilf.verify_theorem2(p, q, args.budget)
            payload = {"command": "finewilf-perms", **rep.to_dict()}
            if rep.holds:
                human = f"monotone-only at length {rep.length}; witness at {rep.length - 1}: {rep.witness or 'none'}\n"
            else:
                human = f"FAILED at length {rep.length}: non-monotone {rep.counterexample}\n"
            return (EXIT_OK if rep.holds else EXIT_FAILED), _emit(args, payload, human)
        rep = finewilf.verify_theorem3(p, q, args.n, args.budget)
        payload = {"command": "finewilf-factors", **rep.to_dict()}
        if rep.holds:
            human = (f"all factors of length <= {rep.bound} of the {rep.patterns_checked} "
                     f"{p},{q}-periodic patterns of length {args.n} are {g}-periodic\n")
        else:
            pat, s, length = rep.counterexample
            human = f"FAILED: factor ({s}, {length}) of {pat} is not {g}-periodic\n"
        return (EXIT_OK if rep.holds else EXIT_FAILED), _emit(args, payload, human)
    # witness
    w = finewilf.find_nongcd_witness(p, q, args.n, args.budget)
    payload = {"command": "finewilf-witness", "p": p, "q": q, "n": args.n,
               "witness": None if w is None else list(w)}
    human = f"{w}\n" if w is not None else f"no {p},{q}-periodic pattern of length {args.n} escapes {g}-periodicity\n"
    return EXIT_OK, _emit(args, payload, human)


def cmd_makarov(args):
    rows = makarov.complexity_table(args.max_n)
    payload = {"command": "makarov", "asymptotic": makarov.ASYMPTOTIC_FORM, "rows": rows}
    human = f"# p(n+1) = sum_t psi(t) 2^(n-t) ~ {makarov.ASYMPTOTIC_FORM} (c not computed)\n" + "".join(
        f"t={r['t']} psi={r['psi']} oracle={r['oracle'] if r['oracle'] is not None else '-'} "
        f"p({r['t'] + 1})={r['p']}\n" for r in rows
    )
    ok = all(r["oracle"] is None or r["oracle"] == r["psi"] for r in rows)
    csv_rows = [[r["t"], r["psi"], "" if r["oracle"] is None else r["oracle"], r["p"]] for r in rows]
    return (EXIT_OK if ok else EXIT_FAILED), _emit(args, payload, human, ["t", "psi", "oracle", "p"], csv_rows)


def cmd_squares(args):
    if args.pattern:
        pat = Pattern.parse(args.pattern)
        sq, sf = analysis.is_square(pat), analysis.is_square_free(pat)
        payload = {"command": "squares", "pattern": list(pat), "is_square": sq, "is_square_free": sf}
        human = f"{pat}: square={'yes' if sq else 'no'} square-free={'yes' if sf else 'no'}\n"
        return EXIT_OK, _emit(args, payload, human, ["pattern", "is_square", "is_square_free"],
                              [[str(pat), sq, sf]])
    ns = _int_list(args.n)
    counts = [(n, analysis.count_square_free(n)) for n in ns]
    payload = {"command": "squares", "counts": [{"n": n, "square_free": c} for n, c in counts]}
    human = "".join(f"square-free permutations of length {n}: {c}\n" for n, c in counts)
    return EXIT_OK, _emit(args, payload, human, ["n", "square_free"], counts)


def cmd_automaton(args):
    aut = automaton.load_automaton(args.file) if args.file else automaton.tm_automaton()
    if args.aut_cmd == "show":
        return EXIT_OK, automaton.format_automaton(aut)
    missing = aut.missing_transitions()
    if missing:
        raise UsageError(f"automaton is not total: missing {missing[:5]}")
    p = parse_perm(args.perm, args.L)
    bad = automaton.crosscheck(aut, p, args.N)
    payload = {"command": "automaton-check", "perm": args.perm, "N": args.N,
               "mismatches": [list(x) for x in bad]}
    human = (f"automaton agrees with {args.perm} on all pairs below {args.N}\n" if not bad
             else f"{len(bad)} mismatching pairs, first {bad[:10]}\n")
    return (EXIT_OK if not bad else EXIT_FAILED), _emit(args, payload, human)


def cmd_plot(args):
    if args.witness:
        p, q, n = _int_list(args.witness)
        w = finewilf.find_nongcd_witness(p, q, n, args.budget)
        if w is None:
            raise UsageError(f"no {p},{q}-periodic non-{gcd(p, q)}-periodic pattern of length {n}")
        svg = scatter_svg([r - 1 for r in w], f"{p}- and {q}-periodic, not {gcd(p, q)}-periodic")
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(svg)
    else:
        if not args.perm:
            raise UsageError("give --perm or --witness")
        svg = plot_perm(parse_perm(args.perm, args.L), args.N, args.out)
    return EXIT_OK, ("" if args.out else svg)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "json", "csv"], default="human")
    common.add_argument("--L", type=int, default=DEFAULT_LOOKAHEAD,
                        help="lookahead for suffix comparisons (default %(default)s)")
    common.add_argument("--budget", type=int, default=None,
                        help="backtracking node budget (default 10^7 or $PERMLAB_BUDGET)")

    parser = argparse.ArgumentParser(
        prog="permlab", description="Exact infinite permutations from the command line.",
        epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("factor", parents=[common], help="factor pattern of a permutation")
    s.add_argument("--perm", required=True)
    s.add_argument("--start", type=int, default=0)
    s.add_argument("--len", type=int, required=True)
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("gamma", parents=[common], help="relation between positions i and j")
    s.add_argument("--perm", required=True)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("complexity", parents=[common], help="factor or maximal pattern complexity")
    s.add_argument("--perm")
    s.add_argument("--word")
    s.add_argument("--kind", choices=["factor", "maxpattern"], default="factor")
    s.add_argument("--n", required=True, help="length, list or range such as 1-6")
    s.add_argument("--T", type=int, default=analysis.DEFAULT_T)
    s.add_argument("--M", type=int, default=None,
                   help=f"scan bound (default {analysis.DEFAULT_M} for permutations, 5000 for words)")
    s.add_argument("--no-saturation", action="store_true", help="skip the doubling check")
    s.set_defaults(func=cmd_complexity)

    s = sub.add_parser("period", parents=[common], help="smallest period consistent with a prefix")
    s.add_argument("--perm", required=True)
    s.add_argument("--M", type=int, default=512)
    s.add_argument("--t-max", type=int, default=64)
    s.set_defaults(func=cmd_period)

    s = sub.add_parser("finewilf", help="Fine-Wilf checks for words and permutations")
    fw = s.add_subparsers(dest="fw_cmd", required=True)
    for name, hlp in [("words", "word period classes at p+q-gcd"),
                      ("perms", "coprime check at p+q, or factor check at --n"),
                      ("witness", "p,q-periodic pattern that is not gcd-periodic")]:
        t = fw.add_parser(name, parents=[common], help=hlp)
        t.add_argument("--p", type=int, required=True)
        t.add_argument("--q", type=int, required=True)
        t.add_argument("--n", type=int, required=(name == "witness"))
        t.set_defaults(func=cmd_finewilf)

    s = sub.add_parser("makarov", help="primitive word counts and maximal complexity")
    mk = s.add_subparsers(dest="mk_cmd", required=True)
    t = mk.add_parser("table", parents=[common])
    t.add_argument("--max-n", type=int, default=12)
    t.set_defaults(func=cmd_makarov)

    s = sub.add_parser("squares", parents=[common], help="square-free permutations")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", help="count square-free patterns of these lengths (<= 9)")
    g.add_argument("--pattern", help="test one pattern, e.g. 1324")
    s.set_defaults(func=cmd_squares)

    s = sub.add_parser("automaton", help="pair automata")
    au = s.add_subparsers(dest="aut_cmd", required=True)
    t = au.add_parser("check", parents=[common], help="cross-check an automaton against a permutation")
    t.add_argument("--file", help="automaton file (default: bundled Thue-Morse automaton)")
    t.add_argument("--perm", default="wordperm:tm")
    t.add_argument("--N", type=int, default=512)
    t.set_defaults(func=cmd_automaton)
    t = au.add_parser("show", parents=[common], help="print an automaton in file format")
    t.add_argument("--file")
    t.set_defaults(func=cmd_automaton)

    s = sub.add_parser("plot", parents=[common], help="SVG scatter of a permutation prefix")
    s.add_argument("--perm")
    s.add_argument("--witness", help="p,q,n: plot a non-gcd-periodic witness instead")
    s.add_argument("--N", type=int, default=40)
    s.add_argument("--out")
    s.set_defaults(func=cmd_plot)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        status, text = args.func(args)
    except (UsageError, SpecError) as exc:
        print(f"permlab: {exc}", file=stderr)
        return EXIT_USAGE
    except (PermlabError, ValueError) as exc:
        print(f"permlab: error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(text)
    return status


def main():
    sys.exit(run())
