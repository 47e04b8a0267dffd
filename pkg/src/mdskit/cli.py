"""Command-line entry point: ``mdskit <subcommand> ...``.

Exit status is 0 on success, 1 on a domain or input error, 2 when a search
ran out of budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from .alphabet import AlphabetError
from .bounds import aggregate_bound, bound_table
from .code import CodeError, Partition, normalize_contains_zero, verify_mds
from .codefile import CodeFileError, dumps, read_code, write_code
from .constructions import KINDS, ConstructionError, build, spec_for
from .enumerator import (NonIntegralError, analysis_dict, empirical_pwe,
                         empirical_weight_distribution, is_hypothetical,
                         mds_weight_distribution, pwe_formula)
from .search import (DEFAULT_NODES, DEFAULT_SECS, EXISTS, NOT_EXISTS, SearchProblem,
                     exists_mds, max_length)

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class Output:
    def __init__(self, args):
        self.json = args.json
        self.quiet = args.quiet

    def text(self, *lines: str) -> None:
        if not self.json and not self.quiet:
            for line in lines:
                print(line)

    def emit(self, obj) -> None:
        if self.json:
            print(json.dumps(obj))

    def always(self, line: str) -> None:
        print(line)


def _int_range(text: str) -> range:
    """``7`` or ``4..10`` (inclusive)."""
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}")
    if hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo_i, hi_i + 1)


def _profile(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"profile must be comma-separated integers, got {text!r}")


# ---------------------------------------------------------------------------

def cmd_construct(args, out: Output) -> int:
    base = None
    kind = args.kind
    if kind == "twisted":
        if not args.base:
            raise ConstructionError("twisted needs --base <kind>")
        base = spec_for(args.base, q=args.q, k=args.k, n=args.n, alphabet=args.alphabet)
    spec = spec_for(kind, q=args.q, k=args.k, n=args.n, alphabet=args.alphabet, base=base)
    code = build(spec)
    rep = verify_mds(code)
    if args.output:
        write_code(code, args.output, comment=spec.label())
    elif not out.json:
        sys.stdout.write(dumps(code, comment=spec.label()))
    out.emit({"construction": spec.label(), "n": code.n, "q": code.q, "k": code.k,
              "d": rep.d, "size": str(code.size), "is_mds": rep.is_mds, "file": args.output})
    if args.output:
        out.text(f"wrote {code.size} words of {spec.label()} to {args.output}: {rep}")
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    code = read_code(args.file)
    rep = verify_mds(code)
    out.emit(rep.as_dict())
    out.text(str(rep))
    return EXIT_OK


def cmd_analyze(args, out: Output) -> int:
    code = read_code(args.file)
    if (args.pwe is None) != (args.profile is None):
        raise CodeError("--pwe and --profile must be given together")
    z = normalize_contains_zero(code)
    rep = verify_mds(z)
    emp = empirical_weight_distribution(z)
    k = code.k
    formula = mds_weight_distribution(code.n, k, code.q) if k is not None and k >= 1 else None
    pwe_rows = []
    lines = [str(rep), "", "w   empirical   formula"]
    for w in range(code.n + 1):
        f = "-" if formula is None else str(formula[w])
        lines.append(f"{w:<3} {emp[w]:<11} {f}")
    result = {}
    if args.pwe is not None:
        t = Partition.parse(args.pwe, code.n)
        e_val = empirical_pwe(z, t, args.profile)
        f_val = None
        if k is not None and k >= 1:
            f_val = pwe_formula(code.n, k, code.q, t.sizes, args.profile)
        pwe_rows.append((t, args.profile, f_val if f_val is not None else e_val))
        match = f_val == e_val
        lines += ["", f"PWE parts {t} profile {','.join(map(str, args.profile))}: "
                  f"formula {f_val} {'==' if match else '!='} empirical {e_val}"]
        result["pwe_empirical"] = str(e_val)
        result["pwe_match"] = match
    E = formula.E if formula is not None else emp.E
    result.update(analysis_dict(code.n, k if k is not None else -1, code.q, E, pwe_rows))
    result["E_empirical"] = [str(e) for e in emp.E]
    result["E_match"] = formula is not None and formula.E == emp.E
    result["is_mds"] = rep.is_mds
    if k is not None and k >= 1:
        result["hypothetical"] = is_hypothetical(code.n, k, code.q)
    out.emit(result)
    out.text(*lines)
    return EXIT_OK


def _bound_row(r) -> str:
    lstar = "" if r.l_star is None else str(r.l_star)
    return f"{r.q:>5} {r.k:>5} {r.value:>7}  {','.join(map(str, r.by)):<18} {lstar}"


BOUND_HEADER = f"{'q':>5} {'k':>5} {'bound':>7}  {'by':<18} l*"


def cmd_bound(args, out: Output) -> int:
    r = aggregate_bound(args.q, args.k)
    out.emit(r.as_dict(full=args.full))
    out.text(BOUND_HEADER, _bound_row(r))
    if args.full:
        out.text("", *(f"  {p.theorem!s:<8} {p.value:>7}  {p.condition}" for p in r.provenance))
    return EXIT_OK


def cmd_bound_table(args, out: Output) -> int:
    rows = bound_table(args.q, args.k)
    out.emit([r.as_dict() for r in rows])
    out.text(BOUND_HEADER, *(_bound_row(r) for r in rows))
    return EXIT_OK


def _status_code(status: str) -> int:
    return EXIT_OK if status in (EXISTS, NOT_EXISTS) else EXIT_UNKNOWN


def cmd_search(args, out: Output) -> int:
    prob = SearchProblem(args.n, args.q, args.k, args.alphabet, args.budget_nodes, args.budget_secs)
    res = exists_mds(prob, workers=args.workers)
    if res.witness is not None:
        label = f"witness ({args.n}, {args.q}^{args.k}, {args.n - args.k + 1}) MDS code"
        if args.output:
            write_code(res.witness, args.output, comment=label)
        elif not out.json and not out.quiet:
            sys.stdout.write(dumps(res.witness, comment=label))
    out.emit({"n": args.n, "q": args.q, "k": args.k, "status": res.status,
              "nodes": res.nodes, "prunes": res.prunes, "secs": round(res.elapsed, 3),
              "witness": args.output})
    out.always(res.result_line())
    return _status_code(res.status)


def cmd_maxlen(args, out: Output) -> int:
    res = max_length(args.q, args.k, args.budget_nodes, args.budget_secs, args.workers, args.alphabet)
    out.emit(res.as_dict())
    lines = [f"n={n}: {s}" for n, s in sorted(res.statuses.items())]
    qual = "" if res.complete else " (lower bound; search budget exhausted)"
    lines.append(f"M_{args.q}({args.k}) = {res.n_max}{qual}; proven upper bound {res.bound}")
    out.text(*lines)
    last = max(res.statuses) if res.statuses else None
    if last is not None:
        o = res.outcomes[last]
        out.always(f"RESULT {o.status} nodes={sum(x.nodes for x in res.outcomes.values())} "
                   f"secs={sum(x.elapsed for x in res.outcomes.values()):.3f}")
    return EXIT_OK if res.complete else EXIT_UNKNOWN


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); argparse's own 2 means "unknown" here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="suppress text output")

    p = _Parser(prog="mdskit", parents=[common],
                                description="Construct, analyse and bound MDS codes.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="write a known MDS code to a file")
    c.add_argument("kind", choices=KINDS)
    c.add_argument("--q", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--alphabet", help="cyclic:<q> | product:<q1>x<q2>.. | field:<p>^<m>[:poly=..]")
    c.add_argument("--base", choices=[x for x in KINDS if x != "twisted"],
                   help="base construction for 'twisted'")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", parents=[common],
                       help="weight distribution and PWE: formula vs enumeration")
    a.add_argument("file")
    a.add_argument("--pwe", metavar="PARTS", help='partition, e.g. "1-3|4-6" (1-based)')
    a.add_argument("--profile", type=_profile, help="per-part weights, e.g. 2,3")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="check the MDS property")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bound", parents=[common], help="upper bound on M_q(k) (k >= 2)")
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--full", action="store_true", help="list every applicable theorem")
    b.set_defaults(func=cmd_bound)

    t = sub.add_parser("bound-table", parents=[common], help="bounds over ranges of q and k")
    t.add_argument("--q", type=_int_range, required=True, help="N or A..B")
    t.add_argument("--k", type=_int_range, required=True, help="N or A..B (k >= 2)")
    t.set_defaults(func=cmd_bound_table)

    for name, help_ in (("search", "decide existence of an (n, q^k, n-k+1) MDS code"),
                        ("maxlen", "largest n by exhaustive search")):
        s = sub.add_parser(name, parents=[common], help=help_)
        if name == "search":
            s.add_argument("--n", type=int, required=True)
        s.add_argument("--q", type=int, required=True)
        s.add_argument("--k", type=int, required=True)
        s.add_argument("--alphabet")
        s.add_argument("--budget-nodes", type=int, default=DEFAULT_NODES)
        s.add_argument("--budget-secs", type=float, default=DEFAULT_SECS)
        s.add_argument("--workers", type=int, default=1)
        if name == "search":
            s.add_argument("-o", "--output", help="write the witness here")
        s.set_defaults(func=cmd_search if name == "search" else cmd_maxlen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.quiet = getattr(args, "quiet", False)
    out = Output(args)
    try:
        return args.func(args, out)
    except (CodeFileError, CodeError, AlphabetError, ConstructionError,
            NonIntegralError, ValueError, OSError) as exc:
        print(f"mdskit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
