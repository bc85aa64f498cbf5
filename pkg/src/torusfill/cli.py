"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 precondition
violated, 4 inconclusive within the search bound.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .cutting import (
    Realness,
    canonical_cycle,
    cutting_cycle,
    format_cycle,
    hyperbolic_conjugate,
    is_odd_bipalindromic,
    is_real_hyperbolic,
    parse_cycle,
)
from .factorizations import (
    TwistFactorization,
    factorization_real_obstruction,
    hurwitz_classes_two,
    pairs_equivalent,
    parse_factorization,
    two_twist_diophantine,
    two_twist_solutions,
)
from .fibration import (
    GenusOneFibration,
    OpenBookMonodromy,
    boundary_open_book,
    paper_scenario,
    real_filling_verdict,
)
from .lattice import (
    PreconditionError,
    TorusFillError,
    deg_mod12,
    format_matrix,
    intersection,
    parse_class,
    parse_matrix,
    recognize_positive_twist,
    require_sl2z,
    sl2z_word,
    twist_matrix,
)
from .real import (
    DEFAULT_BOUND,
    Involution,
    check_certificate,
    enumerate_involutions,
    eigen_lattice_basis,
    pairing_and_type,
    realness_by_search,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        raise UsageError(message or "")


class Outcome:
    """Text lines plus a JSON payload for one subcommand."""

    def __init__(self, lines, payload, code=EXIT_OK):
        self.lines = list(lines)
        self.payload = payload
        self.code = code


def _fact_json(f: TwistFactorization) -> list[str]:
    return [str(w) for w in f.cycles]


def _fact_text(f: TwistFactorization) -> str:
    return "(" + ",".join(f"({w})" for w in f.cycles) + ")"


# -- subcommands -------------------------------------------------------------


def cmd_twist(args):
    w = parse_class(args.cls)
    m = twist_matrix(w)
    return Outcome([format_matrix(m)], {"class": str(w), "matrix": format_matrix(m)})


def cmd_intersect(args):
    x, y = parse_class(args.first), parse_class(args.second)
    n = intersection(x, y)
    return Outcome([str(n)], {"first": str(x), "second": str(y), "intersection": n})


def cmd_recognize(args):
    m = parse_matrix(args.matrix)
    rec = recognize_positive_twist(m)
    if rec is None:
        return Outcome(["none"], {"matrix": format_matrix(m), "twist": None})
    w, k = rec
    return Outcome([f"{w} k={k}"], {"matrix": format_matrix(m), "twist": {"class": str(w), "power": k}})


def cmd_word(args):
    m = parse_matrix(args.matrix)
    w = sl2z_word(m)
    return Outcome(
        [str(w), f"deg={w.exponent_sum % 12} (mod 12)"],
        {"matrix": format_matrix(m), "word": str(w), "exponent_sum": w.exponent_sum},
    )


def cmd_deg(args):
    m = parse_matrix(args.matrix)
    d = deg_mod12(m)
    return Outcome([str(d)], {"matrix": format_matrix(m), "deg_mod12": d})


def cmd_real_check(args):
    m = parse_matrix(args.matrix)
    require_sl2z(m)
    if abs(m.trace) > 2:
        hv = is_real_hyperbolic(m)
        canon = canonical_cycle(hv.cycle.word)
        line = f"{hv.verdict.value} cycle={format_cycle(canon)} sign={hv.cycle.sign_char}"
        if hv.split:
            line += f" split={hv.split}"
        return Outcome(
            [line],
            {
                "matrix": format_matrix(m),
                "method": "cutting-cycle",
                "verdict": hv.verdict.value,
                "cycle": format_cycle(canon),
                "sign": hv.cycle.sign_char,
                "split": str(hv.split) if hv.split else None,
            },
        )
    cert = realness_by_search(m, args.bound)
    payload = {"matrix": format_matrix(m), "method": "search", "bound": args.bound}
    if cert is None:
        payload["verdict"] = Realness.INCONCLUSIVE.value
        return Outcome([f"Inconclusive (no certificate within bound {args.bound})"], payload, EXIT_INCONCLUSIVE)
    payload.update(verdict="Real", c=str(cert.c), c_prime=str(cert.c_prime))
    return Outcome([f"Real c={cert.c} c'={cert.c_prime}"], payload)


def cmd_real_decompose(args):
    m = parse_matrix(args.matrix)
    if args.factors:
        if len(args.factors) != 2:
            raise TorusFillError("give either no factors or exactly two: C C'")
        c, c2 = (parse_matrix(t) for t in args.factors)
        ok = check_certificate(m, c, c2)
        payload = {"matrix": format_matrix(m), "c": str(c), "c_prime": str(c2), "valid": ok}
        return Outcome(["valid certificate" if ok else "invalid certificate"], payload, EXIT_OK if ok else EXIT_FAILED)
    cert = realness_by_search(m, args.bound)
    payload = {"matrix": format_matrix(m), "bound": args.bound}
    if cert is None:
        payload["certificate"] = None
        return Outcome([f"Inconclusive (no certificate within bound {args.bound})"], payload, EXIT_INCONCLUSIVE)
    payload["certificate"] = {"c": str(cert.c), "c_prime": str(cert.c_prime)}
    return Outcome([f"c={cert.c}", f"c'={cert.c_prime}"], payload)


def cmd_involutions(args):
    invs = enumerate_involutions(args.bound)
    lines = [f"{len(invs)} involutions with entries bounded by {args.bound}"]
    if not args.quiet:
        lines += [str(c) for c in invs]
    return Outcome(lines, {"bound": args.bound, "count": len(invs), "involutions": [str(c) for c in invs]})


def cmd_eigen(args):
    c = Involution(parse_matrix(args.matrix))
    e_plus, e_minus = eigen_lattice_basis(c)
    pairing, kind = pairing_and_type(c)
    return Outcome(
        [f"e+={e_plus} e-={e_minus} pairing={pairing} type={kind.value}"],
        {"matrix": str(c), "e_plus": str(e_plus), "e_minus": str(e_minus), "pairing": pairing, "type": kind.value},
    )


def cmd_cutting_cycle(args):
    m = parse_matrix(args.matrix)
    cyc = cutting_cycle(m)
    canon = canonical_cycle(cyc.word)
    return Outcome(
        [f"{format_cycle(canon)} sign={cyc.sign_char}"],
        {
            "matrix": format_matrix(m),
            "cycle": format_cycle(canon),
            "word": format_cycle(cyc.word),
            "sign": cyc.sign_char,
            "witness": format_matrix(cyc.witness),
        },
    )


def cmd_bipalindromic(args):
    word = parse_cycle(args.cycle)
    ok, split = is_odd_bipalindromic(word)
    text = f"true {split}" if ok else "false"
    return Outcome(
        [text],
        {
            "cycle": format_cycle(word),
            "odd_bipalindromic": ok,
            "split": None
            if split is None
            else {"rotation": split.rotation, "cut": split.cut, "pieces": [list(split.first), list(split.second)]},
        },
    )


def cmd_conjugate(args):
    m, n = parse_matrix(args.first), parse_matrix(args.second)
    ans = hyperbolic_conjugate(m, n)
    return Outcome([str(ans).lower()], {"first": format_matrix(m), "second": format_matrix(n), "conjugate": ans})


def cmd_two_twist(args):
    m = parse_matrix(args.matrix)
    eq = two_twist_diophantine(m)
    sols = two_twist_solutions(m, args.bound)
    hc = hurwitz_classes_two(m, args.bound)
    lines = [f"equation: {eq}", f"solutions (entries <= {args.bound}): " + " ".join(f"({w})" for w in sols)]
    lines.append(f"{len(hc)} Hurwitz classes:")
    for rep, grp in zip(hc.representatives, hc.members):
        lines.append(f"  {_fact_text(rep)} [{len(grp)} factorizations]")
    if hc.commuting:
        lines.append("commuting: " + " ".join(format_matrix(s) for s in hc.commuting))
    lines.append(f"closure: {'ok' if hc.closed else 'FAILED'}")
    payload = {
        "matrix": format_matrix(m),
        "bound": args.bound,
        "equation": {"a": eq.A, "b": eq.B, "c": eq.C, "rhs": eq.rhs, "text": str(eq)},
        "solutions": [str(w) for w in sols],
        "classes": [
            {"representative": _fact_json(rep), "members": [_fact_json(f) for f in grp]}
            for rep, grp in zip(hc.representatives, hc.members)
        ],
        "commuting": [format_matrix(s) for s in hc.commuting],
        "closed": hc.closed,
    }
    return Outcome(lines, payload)


def cmd_hurwitz_equiv(args):
    p, q = parse_factorization(args.first), parse_factorization(args.second)
    verdict = pairs_equivalent(p, q)
    payload = {"first": _fact_json(p), "second": _fact_json(q), "equivalent": verdict.equivalent, "witness": None}
    if verdict.witness:
        w = verdict.witness
        payload["witness"] = {"moves": w.moves, "K": format_matrix(w.K), "signs": list(w.signs)}
        return Outcome([f"equivalent moves={w.moves} K={format_matrix(w.K)}"], payload)
    return Outcome(["not equivalent"], payload)


def cmd_obstruction(args):
    f = parse_factorization(args.factorization)
    rep = factorization_real_obstruction(f)
    lines = [
        f"invariant: {rep.case_invariant}",
        f"swapped: {rep.case_swapped}",
        f"verdict: {rep.verdict.value}",
    ]
    if not args.quiet:
        lines.append("preserving structures: " + (" ".join(str(c) for c in rep.preserving) or "none"))
        lines.append("swapping structures: " + (" ".join(str(c) for c in rep.swapping) or "none"))
    payload = {
        "factorization": _fact_json(f),
        "case_invariant": {"status": rep.case_invariant.status.value, "value": rep.case_invariant.value},
        "case_swapped": {"status": rep.case_swapped.status.value, "value": rep.case_swapped.value},
        "verdict": rep.verdict.value,
        "preserving": [str(c) for c in rep.preserving],
        "swapping": [str(c) for c in rep.swapping],
    }
    return Outcome(lines, payload)


def cmd_boundary(args):
    f = parse_factorization(args.factorization)
    ob = boundary_open_book(GenusOneFibration(f.cycles))
    return Outcome(
        [f"{format_matrix(ob.matrix)} deg={ob.deg}"],
        {"factorization": _fact_json(f), "matrix": format_matrix(ob.matrix), "deg": ob.deg},
    )


def cmd_fill(args):
    m = parse_matrix(args.matrix)
    try:
        deg = int(args.deg)
    except ValueError:
        raise TorusFillError(f"cannot parse degree {args.deg!r}") from None
    ob = OpenBookMonodromy(m, deg)
    v = real_filling_verdict(ob, args.bound)
    fr = v.filling
    lines = [v.summary]
    classes = []
    for rep, obs in zip(fr.classes, fr.per_class_real):
        real = obs.verdict.value if obs else "n/a"
        lines.append(f"  {_fact_text(rep)} real={real}")
        classes.append({"representative": _fact_json(rep), "real": real})
    if not args.quiet:
        lines += [f"note: {n}" for n in fr.notes]
    payload = {
        "matrix": format_matrix(m),
        "deg": deg,
        "bound": args.bound,
        "open_book_real": v.open_book.verdict.value,
        "fillable": fr.fillable,
        "supported": fr.supported,
        "twist_count": fr.twist_count,
        "classes": classes,
        "real_filling": v.real_filling.value,
        "notes": list(fr.notes),
        "summary": v.summary,
    }
    return Outcome(lines, payload)


def cmd_verify_paper(args):
    report = paper_scenario(bound=args.bound)
    lines = report.lines()
    if args.quiet:
        # keep failures and the verdict line
        lines = [line for line in lines[:-1] if line.startswith("FAIL")] + lines[-1:]
    return Outcome(lines, report.to_dict(), EXIT_OK if report.passed else EXIT_FAILED)


COMMANDS = {
    "twist": (cmd_twist, ["cls"], "twist matrix of a class p,q"),
    "intersect": (cmd_intersect, ["first", "second"], "intersection number of two classes"),
    "recognize": (cmd_recognize, ["matrix"], "recognize a positive twist power"),
    "word": (cmd_word, ["matrix"], "word in t_a, t_b for an SL(2,Z) matrix"),
    "deg": (cmd_deg, ["matrix"], "degree mod 12"),
    "real-check": (cmd_real_check, ["matrix"], "decide or search realness"),
    "real-decompose": (
        cmd_real_decompose,
        ["matrix", "factors*"],
        "product of two real structures (search, or verify C C')",
    ),
    "involutions": (cmd_involutions, [], "list involutions of determinant -1"),
    "eigen": (cmd_eigen, ["matrix"], "eigenlattices of an involution"),
    "cutting-cycle": (cmd_cutting_cycle, ["matrix"], "cutting period cycle of a hyperbolic matrix"),
    "bipalindromic": (cmd_bipalindromic, ["cycle"], "odd-bipalindromic test of a cycle"),
    "conjugate": (cmd_conjugate, ["first", "second"], "conjugacy of hyperbolic matrices"),
    "two-twist": (cmd_two_twist, ["matrix"], "two-twist factorizations and Hurwitz classes"),
    "hurwitz-equiv": (cmd_hurwitz_equiv, ["first", "second"], "Hurwitz equivalence of two pairs"),
    "obstruction": (cmd_obstruction, ["factorization"], "realness obstruction of a pair"),
    "boundary": (cmd_boundary, ["factorization"], "boundary open book (matrix, deg)"),
    "fill": (cmd_fill, ["matrix", "deg"], "fillings of an open book and their realness"),
    "verify-paper": (cmd_verify_paper, [], "replay the two-singular-fiber example"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torusfill", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, positionals, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        for pos in positionals:
            if pos.endswith("*"):
                p.add_argument(pos[:-1], nargs="*")
            else:
                p.add_argument(pos)
        p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
        p.add_argument("--json", action="store_true")
        p.add_argument("--quiet", action="store_true")
    return parser


_VALUE_FLAGS = {"--bound"}


def _reorder(argv: list[str]) -> list[str]:
    """Move flags ahead of a ``--`` so arguments like ``-39,25;-25,16`` stay positional."""
    if not argv or argv[0].startswith("-"):
        return argv
    flags, positionals = [], []
    it = iter(argv[1:])
    for tok in it:
        if tok.startswith("--") and len(tok) > 2:
            flags.append(tok)
            if tok in _VALUE_FLAGS:
                flags.append(next(it, ""))
        elif tok in ("-h",):
            flags.append(tok)
        else:
            positionals.append(tok)
    if not positionals:
        return [argv[0], *flags]
    return [argv[0], *flags, "--", *positionals]


def run(argv: list[str]) -> tuple[int, str]:
    """Run one invocation; returns ``(exit code, output)``.

    On failure the output is the diagnostic message.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(_reorder(list(argv)))
    except UsageError as exc:
        msg = str(exc).strip()
        if not msg:
            # --help / --version
            return EXIT_OK, ""
        return EXIT_INPUT, msg
    if args.bound < 1:
        return EXIT_INPUT, "--bound must be a positive integer"
    func = COMMANDS[args.command][0]
    try:
        outcome = func(args)
    except PreconditionError as exc:
        return EXIT_PRECONDITION, f"precondition violated: {exc}"
    except TorusFillError as exc:
        return EXIT_INPUT, f"bad input: {exc}"
    if args.json:
        doc = {"schema": 1, "command": args.command, "exit_code": outcome.code, "result": outcome.payload}
        text = json.dumps(doc, indent=2, ensure_ascii=False)
    else:
        text = "\n".join(outcome.lines)
    return outcome.code, text + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, out = run(argv)
    if code in (EXIT_OK, EXIT_FAILED, EXIT_INCONCLUSIVE):
        sys.stdout.write(out)
    else:
        sys.stderr.write(out.rstrip("\n") + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
