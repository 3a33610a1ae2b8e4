"""Command-line front end.

Exit codes: 0 success, 2 usage or precondition failure, 3 non-closing
monodromy, 4 failed internal check (including a classification gap).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from math import gcd
from typing import Callable, Optional, Sequence

from . import __version__
from . import certificate as certmod
from .classifier import classify
from .diophantine import (
    Solution,
    descend,
    enumerate_markov,
    is_weakly_minimal,
    canonical_representative,
    enumerate_solutions,
    orbit_graph,
)
from .errors import ClassificationGapError, NonClosingMonodromyError
from .families import (
    DEFAULT_A_BOUND,
    DEFAULT_F2_BOUND,
    DEFAULT_MARKOV_BOUND,
    almost_complex_embeddable,
    enumerate_family,
    membership_f1,
    membership_f2,
    membership_f3,
    psi,
    s_p_set,
)
from .fibolucas import IDENTITIES, fib, fibonacci_index, identity_check, lucas, primitive_factor, rank_of_apparition
from .lattice import format_factorization, parse_factorization

EXIT_OK, EXIT_USAGE, EXIT_NONCLOSING, EXIT_CHECK = 0, 2, 3, 4

ENUMERATE_COLUMNS = ("family", "parameters", "sign", "o1", "p1", "q1", "o2", "p2", "q2", "o3", "p3", "q3")


class UsageError(Exception):
    pass


class CheckFailure(Exception):
    pass


def _int_list(text: str, length: Optional[int] = None) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if length is not None and len(values) != length:
        raise argparse.ArgumentTypeError(f"expected {length} integers, got {len(values)}")
    return values


def _triple(text: str) -> tuple[int, int, int]:
    return _int_list(text, 3)


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _fmt(args, default: str) -> str:
    return args.format or default


def _csv(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _machine(obj) -> str:
    return json.dumps(obj, separators=(", ", ": ")) + "\n"


# Commands. Each returns the text to print.

def cmd_check(args) -> str:
    p, q = args.p, args.q
    if p <= 1 or gcd(p, q) != 1:
        raise UsageError(f"({p},{q}) is not a valid ball: need p > 1 and gcd(p,q) = 1")
    markov_bound = args.bound or DEFAULT_MARKOV_BOUND
    f2_bound = args.bound or DEFAULT_F2_BOUND
    a_bound = args.a_bound or DEFAULT_A_BOUND
    witnesses = {
        "F1": membership_f1(p, q, markov_bound),
        "F2": membership_f2(p, q, f2_bound),
        "F3": membership_f3(p, q, a_bound),
    }
    found = next((w for w in witnesses.values() if w), None)
    almost_complex = almost_complex_embeddable(p, q, found) if found else None
    if _fmt(args, "text") == "machine":
        return _machine({
            "p": p, "q": q,
            "families": {k: (None if w is None else {"parameters": list(w.parameters),
                                                      "sign_choice": w.qsolution.sign_choice})
                         for k, w in witnesses.items()},
            "bounds": {"markov": markov_bound, "f2": f2_bound, "a": a_bound},
            "almost_complex": almost_complex,
        })
    lines = [f"ball B({p},{q})"]
    for k, w in witnesses.items():
        lines.append(f"{k}: " + ("no (within bounds)" if w is None else f"yes, witness {w.parameters}"))
    ac = "n/a (no family witness)" if almost_complex is None else str(almost_complex).lower()
    lines.append(f"almost-complex: {ac}")
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> str:
    try:
        f = parse_factorization(args.factorization)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = classify(f, h1=args.h1)
    rec = result.lambda_power
    if _fmt(args, "text") == "machine":
        return _machine({
            "factorization": format_factorization(f),
            "label": str(result.label),
            "branch": result.branch,
            "recognized": list(rec) if rec else None,
            "euler_characteristic": result.label.euler_characteristic(),
            "trace": result.trace,
            "notes": result.notes,
        })
    lines = [f"label: {result.label}", f"branch: {result.branch}"]
    lines.append("monodromy: " + (f"sign {rec[0]:+d}, k={rec[1]}" if rec else "not a lambda power (closes)"))
    lines += [f"  {step}" for step in result.trace]
    lines += [f"note: {n}" for n in result.notes]
    return "\n".join(lines) + "\n"


def cmd_enumerate(args) -> str:
    fam = args.family.upper()
    bound = args.bound or 100
    triples = enumerate_family(fam, bound)
    rows = []
    for t in triples:
        row = [t.family, " ".join(map(str, t.parameters)), t.qsolution.sign_choice]
        for b in t.balls:
            row += [b.orientation, b.p, b.q]
        rows.append(row)
    fmt = _fmt(args, "text")
    if fmt == "csv":
        return _csv(rows, ENUMERATE_COLUMNS)
    if fmt == "machine":
        return "".join(_machine(dict(zip(ENUMERATE_COLUMNS, r))) for r in rows)
    return "".join(f"{t.family} {t.parameters}: {', '.join(map(str, t.balls))}\n" for t in triples)


def cmd_markov(args) -> str:
    triples = enumerate_markov(args.limit)
    triples = sorted(tuple(sorted(t, reverse=True)) for t in triples)
    if _fmt(args, "csv") == "machine":
        return _machine([list(t) for t in triples])
    return _csv(triples, ("y1", "y2", "y3"))


def _solution(delta, x, a) -> Solution:
    s = Solution.of(delta, x)
    if a is not None and s.a != a:
        raise UsageError(f"{x} gives a = {s.a}, not {a}")
    return s


def cmd_orbit(args) -> str:
    s = _solution(args.delta, args.triple, args.a)
    nodes, edges = orbit_graph(s, args.depth, args.moves)
    fmt = "dot" if args.dot else _fmt(args, "dot")
    name = lambda t: '"' + ",".join(map(str, t.x)) + '"'  # noqa: E731
    if fmt == "dot":
        lines = ["digraph orbit {", f'  label="delta={s.delta} a={s.a}";']
        lines += [f"  {name(t)};" for t in nodes]
        lines += [f'  {name(u)} -> {name(v)} [label="{lab}"];' for u, v, lab in edges]
        return "\n".join(lines + ["}"]) + "\n"
    if fmt == "csv":
        return _csv([(",".join(map(str, u.x)), ",".join(map(str, v.x)), lab) for u, v, lab in edges],
                    ("source", "target", "move"))
    if fmt == "machine":
        return _machine({"nodes": [list(t.x) for t in nodes],
                         "edges": [[list(u.x), list(v.x), lab] for u, v, lab in edges]})
    return "".join(f"{u.x} -{lab}-> {v.x}\n" for u, v, lab in edges)


def cmd_fib(args) -> str:
    op, n = args.op, args.n
    if op == "value":
        out = fib(n)
    elif op == "lucas":
        out = lucas(n)
    elif op == "index":
        out = fibonacci_index(n)
    elif op == "rank":
        try:
            out = rank_of_apparition(n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        if n < 1:
            raise UsageError("n must be positive")
        out = primitive_factor(n)
    if _fmt(args, "text") == "machine":
        return _machine({"op": op, "n": n, "value": out})
    return f"{'none' if out is None else out}\n"


def _certificate_params(args) -> tuple[int, ...]:
    fam = args.family.upper()
    if fam == "F3":
        if None in (args.a, args.b, args.eps):
            raise UsageError("F3 needs --a, --b and --eps")
        return args.a, args.b, args.eps
    if args.triple is None:
        raise UsageError(f"{fam} needs --triple")
    return args.triple


def cmd_certify(args) -> str:
    if args.verify:
        with open(args.verify, encoding="utf-8") as fh:
            text = fh.read()
        try:
            problems = certmod.verify_certificate(certmod.loads(text))
        except certmod.CertificateError as exc:
            problems = [str(exc)]
        if problems:
            raise CheckFailure("; ".join(problems))
        return "certificate verified\n"
    fam = args.family.upper() if args.family else None
    if fam not in ("F1", "F2", "F3"):
        raise UsageError("certify needs a family f1, f2 or f3")
    bounds = certmod.Bounds(args.bound or DEFAULT_MARKOV_BOUND, args.bound or DEFAULT_F2_BOUND,
                            args.a_bound or DEFAULT_A_BOUND)
    params = _certificate_params(args)
    try:
        cert = certmod.build_certificate(fam, params, args.sign, bounds)
    except certmod.CertificateError as exc:
        raise CheckFailure(str(exc)) from None
    # Re-read what would be emitted and verify it before releasing it.
    problems = certmod.verify_certificate(certmod.loads(certmod.dumps(cert)))
    if problems:
        raise CheckFailure("; ".join(problems))
    if _fmt(args, "machine") == "text":
        return certmod.format_text(cert)
    return certmod.dumps(cert)


def cmd_minimal(args) -> str:
    fmt = _fmt(args, "text")
    if args.triple is not None:
        s = _solution(args.delta, args.triple, args.a)
        end, steps = descend(s)
        if fmt == "machine":
            return _machine({"start": list(s.x), "steps": steps, "end": list(end.x), "a": s.a,
                             "canonical": list(canonical_representative(end))})
        return (f"start {s.x} (a={s.a})\nmutations {steps}\nweakly minimal {end.x}\n"
                f"class representative {canonical_representative(end)}\n")
    if args.a is None:
        raise UsageError("give --triple, or --a to list weakly minimal classes")
    bound = args.bound or 20
    reps = sorted({canonical_representative(s)
                   for s in enumerate_solutions(args.delta, args.a, bound, jobs=args.jobs)
                   if is_weakly_minimal(s)}, key=lambda x: (max(map(abs, x)), x))
    if fmt == "csv":
        return _csv(reps, ("x1", "x2", "x3"))
    if fmt == "machine":
        return _machine([list(r) for r in reps])
    return "".join(f"{r}\n" for r in reps)


def cmd_verify_identities(args) -> str:
    r = args.range
    counts, failures = {}, []
    for name, (arity, domain, _) in IDENTITIES.items():
        grid = ([(n,) for n in range(-r, r + 1)] if arity == 1
                else [(m, n) for m in range(-r, r + 1) for n in range(-r, r + 1)])
        done = 0
        for params in grid:
            if not domain(*params):
                continue
            done += 1
            if not identity_check(name, params):
                failures.append((name, params))
        counts[name] = done
    if failures:
        raise CheckFailure(f"identity failures: {failures[:10]}")
    if _fmt(args, "text") == "machine":
        return _machine({"range": r, "checked": counts})
    return "".join(f"{k}: {v} cases pass\n" for k, v in counts.items())


def cmd_sp_stat(args) -> str:
    rows = []
    for a in range(5, args.a_max + 1, 2):
        m = fib(a)
        phi_half = sum(1 for k in range(1, a) if gcd(k, a) == 1) // 2
        rows.append((a, m, psi(a), len(s_p_set(a)), phi_half))
    header = ("a", "F_a", "psi", "S_p_size", "phi_half")
    fmt = _fmt(args, "text")
    if fmt == "csv":
        return _csv(rows, header)
    if fmt == "machine":
        return _machine([dict(zip(header, r)) for r in rows])
    return "".join(f"a={a} F_a={m} psi={ps} |S_p|={sz} phi(a)/2={ph}\n" for a, m, ps, sz, ph in rows)


# Parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=_positive, help="search bound for the command")
    common.add_argument("--a-bound", type=_positive, help="largest Fibonacci index for F3 searches")
    common.add_argument("--format", choices=("text", "machine", "csv", "dot"))
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for enumerations")
    common.add_argument("--out", help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="hdecomp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hdecomp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("check", cmd_check, "family membership of a ball B(p,q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)

    p = add("classify", cmd_classify, "label the closed manifold of a twist factorization")
    p.add_argument("factorization", help="'p,q:e;...' written as the left-to-right product")
    p.add_argument("--h1", type=int, default=1)

    p = add("enumerate", cmd_enumerate, "list ball triples of a family")
    p.add_argument("family", choices=("f1", "f2", "f3", "F1", "F2", "F3"))

    p = add("markov", cmd_markov, "Markov triples up to a limit")
    p.add_argument("--limit", type=_positive, required=True)

    p = add("orbit", cmd_orbit, "mutation or Hurwitz orbit graph of a solution")
    p.add_argument("--delta", type=_triple, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--triple", type=_triple, required=True)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--moves", choices=("mutation", "hurwitz"), default="mutation")
    p.add_argument("--dot", action="store_true", help="same as --format dot")

    p = add("fib", cmd_fib, "Fibonacci and Lucas utilities")
    p.add_argument("op", choices=("value", "lucas", "index", "rank", "primitive"))
    p.add_argument("n", type=int)

    p = add("certify", cmd_certify, "emit or verify an embedding certificate")
    p.add_argument("family", nargs="?", choices=("f1", "f2", "f3", "F1", "F2", "F3"))
    p.add_argument("--triple", type=_triple)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--eps", type=int, choices=(1, -1))
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)
    p.add_argument("--verify", metavar="FILE", help="re-verify a stored certificate")

    p = add("minimal", cmd_minimal, "descend a solution, or list weakly minimal classes")
    p.add_argument("--delta", type=_triple, required=True)
    p.add_argument("--triple", type=_triple)
    p.add_argument("--a", type=int)

    p = add("verify-identities", cmd_verify_identities, "check the Fibonacci/Lucas identity suite")
    p.add_argument("--range", type=int, default=60)

    p = add("sp-stat", cmd_sp_stat, "psi(a) and |S_p| for odd a")
    p.add_argument("--a-max", type=int, default=15)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        output = args.func(args)
    except NonClosingMonodromyError as exc:
        print(f"error: monodromy does not close: (M lambda).lambda = {exc.pairing}", file=sys.stderr)
        return EXIT_NONCLOSING
    except (CheckFailure, ClassificationGapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
