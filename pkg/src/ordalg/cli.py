"""Command-line front end.

Exit codes: 0 success or pass, 1 a check failed, 2 bad input, 3 a size
guard or budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import guards
from .bank import bank
from .dot import to_dot
from .finposet import (FinPoset, OrderError, canonical_presentation, coinserter)
from .guards import GuardExceeded
from .io import (InputError, load_pair, load_algebra, load_poset, load_presentation,
                 poset_to_json, read_json)
from .monad import (INCONCLUSIVE, associated_presentation,
                    check_duality, check_lifting, check_monad_laws, check_power_functor,
                    check_strongly_finitary, get_monad, CATALOG_NAMES)
from .monad.checks import Report, poset_name
from .saturation import SaturationBudgetExceeded, saturate_free
from .sexpr import ParseError
from .terms import Term
from .variety import Inequation, recognize, satisfies, show_word

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
DEFAULT_BANK = {"laws": 3, "sf": 4, "lift": 4}


def show_element(x) -> str:
    if isinstance(x, tuple):
        return show_word(x)
    if isinstance(x, Term):
        if x.args is None:
            return str(x.head)
        return x.head if not x.args else str(x)
    return str(x)


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _poset_text(P: FinPoset, show=str, title="elements") -> list[str]:
    lines = [f"{title} ({len(P)}):"]
    lines += [f"  {show(x)}" for x in P.elements]
    lines.append("hasse:")
    lines += [f"  {show(a)} < {show(b)}" for a, b in P.hasse_edges()]
    return lines


# -- commands ---------------------------------------------------------------------------


def cmd_free(args) -> int:
    P = load_presentation(args.presentation)
    X = load_poset(read_json(args.poset))
    nf = recognize(P)
    classes = None
    if nf is not None and not args.saturate:
        L = args.length if args.length is not None else 2
        alg = nf.normal_form(X, L)
        order, exact = alg.carrier, True
        method = f"normal form ({nf.name}, length <= {L})" if nf.name != "bounded-poset" \
            else f"normal form ({nf.name})"
    else:
        d = args.depth if args.depth is not None else 2
        b = args.subst_depth if args.subst_depth is not None else min(1, d)
        F = saturate_free(P, X, d, b)
        classes = [sorted(c, key=lambda t: (t.depth, t.size(), str(t))) for c in F.classes()]
        order, exact = FinPoset([c[0] for c in classes], F.order.matrix, check=False), F.exact
        method = f"saturation (depth <= {d}, substitution depth <= {b})"
    show = show_element
    if args.format == "dot":
        _emit(to_dot(order, "free", closure=args.closure, label=show))
    elif args.format == "json":
        out = {"schema": 1, "presentation": P.name or "custom", "poset": poset_name(X),
               "method": method, "exact": exact, "algebra": poset_to_json(order, show)}
        if classes is not None:
            out["classes"] = {show(c[0]): [show(t) for t in c] for c in classes}
        _emit(json.dumps(out, indent=2, ensure_ascii=False))
    else:
        lines = [f"free algebra of {P.name or 'custom presentation'} on {poset_name(X)}",
                 f"method: {method}", f"exact: {str(exact).lower()}"]
        if classes is not None:
            lines.append(f"classes ({len(classes)}):")
            lines += [f"  {show(c[0])}  [{len(c)} term{'s' if len(c) != 1 else ''}]" for c in classes]
            lines.append("hasse:")
            lines += [f"  {show(a)} < {show(b)}" for a, b in order.hasse_edges()]
        else:
            lines += _poset_text(order, show)
        _emit("\n".join(lines))
    return EXIT_OK


def _run_suite(args) -> list[Report]:
    suite, name = args.suite, args.monad
    size = args.bank_size if args.bank_size is not None else DEFAULT_BANK.get(suite, 4)
    if suite == "sf" and name == "square":
        return [check_power_functor(X, 2) for X in bank(size)]
    if suite == "duality":
        T = get_monad(name, depth=args.depth, length=args.length if args.length is not None else 2)
        N = args.max_arity if args.max_arity is not None else 2
        d = 2
        b = args.subst_depth if args.subst_depth is not None else 1
        return [check_duality(T, N, FinPoset.discrete(["a", "b"]), depth=d, subst_depth=b)]
    T = get_monad(name, depth=args.depth, length=args.length)
    explicit = args.depth if args.depth is not None else args.length
    posets = bank(size)
    if suite == "laws":
        out = [check_monad_laws(T, [X], budget=explicit, naturality=False) for X in posets]
        nat = check_monad_laws(T, posets, budget=explicit, elementwise=False)
        nat.poset = f"bank<={size}"
        nat.check = "natural"
        return out + [nat]
    if suite == "sf":
        return [check_strongly_finitary(T, X) for X in posets]
    if suite == "lift":
        return [check_lifting(T, X, budget=explicit) for X in posets]
    raise InputError(f"unknown suite {suite}")


def cmd_check(args) -> int:
    if args.monad not in CATALOG_NAMES and not (args.suite == "sf" and args.monad == "square"):
        raise InputError(f"unknown monad {args.monad!r}; known: {', '.join(CATALOG_NAMES)}")
    reports = _run_suite(args)
    if args.format == "json":
        _emit(json.dumps({"schema": 1, "reports": [r.to_json() for r in reports]},
                         indent=2, ensure_ascii=False))
    else:
        lines = []
        wm = max(len(r.monad) for r in reports)
        wp = max(len(r.poset) for r in reports)
        for r in reports:
            line = f"{r.check:<8} {r.monad:<{wm}}  {r.poset:<{wp}}  {r.verdict}"
            if r.witness:
                line += f"  -- {r.witness}"
            lines.append(line.rstrip())
        _emit("\n".join(lines))
    if any(r.verdict == INCONCLUSIVE for r in reports):
        print("warning: some checks were inconclusive at this truncation", file=sys.stderr)
    return EXIT_FAIL if any(r.failed for r in reports) else EXIT_OK


def cmd_coinserter(args) -> int:
    if args.canonical:
        P = load_poset(read_json(args.canonical))
        pp = canonical_presentation(P)
    elif args.pair:
        pp = load_pair(read_json(args.pair))
    else:
        raise InputError("give a pair file or --canonical POSET")
    C, c = coinserter(pp)
    show = show_element
    if args.format == "dot":
        _emit(to_dot(C, "coinserter", closure=args.closure, label=show))
    elif args.format == "json":
        _emit(json.dumps({"schema": 1, "coinserter": poset_to_json(C, show),
                          "quotient": {show(b): show(c(b)) for b in pp.cod.elements}},
                         indent=2, ensure_ascii=False))
    else:
        lines = [f"parallel pair: {len(pp.dom)} -> {len(pp.cod)}"]
        lines += _poset_text(C, show, "coinserter")
        lines.append("quotient:")
        lines += [f"  {show(b)} -> {show(c(b))}" for b in pp.cod.elements]
        _emit("\n".join(lines))
    return EXIT_OK


def cmd_present(args) -> int:
    T = get_monad(args.monad, depth=args.depth, length=args.length if args.length is not None else 2)
    P = associated_presentation(T, args.N)
    if args.format == "text":
        lines = ["symbols: " + " ".join(f"{n}/{k}" for n, k in P.signature)]
        lines += [f"{ax.kind} {ax.lhs} {ax.rhs}" for ax in P.axioms]
        _emit("\n".join(lines))
    else:
        _emit(json.dumps(P.to_json(), indent=2, ensure_ascii=False))
    return EXIT_OK


def cmd_satisfies(args) -> int:
    A = load_algebra(read_json(args.algebra))
    ineq = Inequation.parse(args.inequation, A.signature)
    ok, f = satisfies(A, ineq, witness=True)
    if args.format == "json":
        _emit(json.dumps({"schema": 1, "inequation": str(ineq), "satisfied": ok,
                          "witness": None if ok else {k: str(v) for k, v in f.items()}}))
    else:
        line = "true" if ok else "false  -- " + ", ".join(f"{k}={v}" for k, v in f.items())
        _emit(line)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dot(args) -> int:
    P = load_poset(read_json(args.poset))
    _emit(to_dot(P, args.name, closure=args.closure))
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=int, help="term depth truncation")
    common.add_argument("--subst-depth", type=int, help="depth of terms substituted into axioms")
    common.add_argument("--length", type=int, help="word length truncation")
    common.add_argument("--max-arity", type=int, help="largest arity N for associated presentations")
    common.add_argument("--guard-size", type=int,
                        help="bound on enumerations (maps, assignments, terms)")
    common.add_argument("--format", choices=("text", "json", "dot"),
                        help="output format (default: json for present, text otherwise)")
    common.add_argument("--closure", action="store_true", help="DOT: draw the full order")
    common.add_argument("--bank-size", type=int, help="largest test poset size")

    p = argparse.ArgumentParser(prog="ordalg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("free", parents=[common], help="free algebra of a presentation on a poset")
    s.add_argument("presentation", help="builtin name or presentation JSON file")
    s.add_argument("poset", help="poset JSON file")
    s.add_argument("--saturate", action="store_true", help="saturate even for builtin presentations")
    s.set_defaults(func=cmd_free)

    s = sub.add_parser("check", parents=[common], help="run a check suite on a catalog monad")
    s.add_argument("suite", choices=("laws", "sf", "lift", "duality"))
    s.add_argument("monad", help=f"one of {', '.join(CATALOG_NAMES)} (or 'square' for sf)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("coinserter", parents=[common], help="coinserter of a parallel pair")
    s.add_argument("pair", nargs="?", help="parallel pair JSON file")
    s.add_argument("--canonical", metavar="POSET", help="use the canonical pair of a poset")
    s.set_defaults(func=cmd_coinserter)

    s = sub.add_parser("present", parents=[common], help="associated presentation of a monad")
    s.add_argument("monad")
    s.add_argument("N", type=int, help="largest arity")
    s.set_defaults(func=cmd_present)

    s = sub.add_parser("satisfies", parents=[common], help="does an algebra satisfy an inequation")
    s.add_argument("algebra", help="algebra JSON file")
    s.add_argument("inequation", help='e.g. "leq 0 x0"')
    s.set_defaults(func=cmd_satisfies)

    s = sub.add_parser("dot", parents=[common], help="Hasse diagram of a poset file")
    s.add_argument("poset")
    s.add_argument("--name", default="P")
    s.set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "present" else "text"
    if args.guard_size is not None:
        if args.guard_size <= 0:
            print("error: --guard-size must be positive", file=sys.stderr)
            return EXIT_INPUT
        guards.configure(max_hom=args.guard_size, max_terms=args.guard_size)
    for flag in ("depth", "subst_depth", "length", "max_arity", "bank_size"):
        v = getattr(args, flag, None)
        if v is not None and v < 0:
            print(f"error: --{flag.replace('_', '-')} must be non-negative", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except GuardExceeded as e:
        print(f"guard exceeded: {e}", file=sys.stderr)
        return EXIT_GUARD
    except SaturationBudgetExceeded as e:
        print(f"saturation budget exceeded: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, ParseError, OrderError, KeyError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        guards.reset()


if __name__ == "__main__":
    sys.exit(main())
