"""The variety associated with a monad, and the duality spot-check."""

from __future__ import annotations

import itertools

from ..finposet import FinPoset, MonotoneMap, find_isomorphism, nat
from ..guards import GUARDS, check_size
from ..saturation import saturate_free
from ..terms import Signature, app
from ..variety import Inequation, Presentation, V
from .base import TruncatedMonad
from .checks import FAIL, PASS, Report, poset_name


def associated_presentation(T: TruncatedMonad, N: int, budget: int | None = None,
                            *, projections: bool = True) -> Presentation:
    """Operation symbols are the elements of Tn for n <= N.

    Axioms, all within the truncation:
      σ(x) <= τ(x)                          for σ <= τ in Tn,
      k*(σ)(x) = σ(k_0(x), ..., k_{m-1}(x))  for σ in Tm, k: m -> Tn, k* = μ_n∘Tk,
      η_n(i)(x) = x_i                       (the unit elements act as projections).
    Instances of the second schema whose k*(σ) falls outside the truncation
    are dropped.
    """
    b = T.budget if budget is None else budget
    Tn = {n: T.obj(nat(n), b) for n in range(N + 1)}
    for n in Tn:
        check_size(f"|T{n}|", len(Tn[n]), GUARDS.max_poset * GUARDS.max_poset)
    names: dict[tuple, str] = {}
    symbols = []
    for n in range(N + 1):
        for a in Tn[n].elements:
            name = f"{n}:{T.symbol_label(a).replace(' ', ',')}"
            if name in {s for s, _ in symbols}:
                name = f"{name}#{len(symbols)}"
            names[(n, a)] = name
            symbols.append((name, n))
    sig = Signature(tuple(symbols))

    def op(n, a, args):
        return app(names[(n, a)], *args)

    xs = {n: [V(i) for i in range(n)] for n in range(N + 1)}
    axioms: list[Inequation] = []
    if projections:
        for n in range(N + 1):
            for i in range(n):
                e = T.unit(nat(n), i)
                if e in Tn[n]:
                    axioms.append(Inequation(op(n, e, xs[n]), V(i), "eq"))
    for n in range(N + 1):
        for s, t in Tn[n].pairs():
            if s != t:
                axioms.append(Inequation(op(n, s, xs[n]), op(n, t, xs[n])))
    for m in range(N + 1):
        for n in range(N + 1):
            check_size(f"|T{n}|^{m} substitutions", len(Tn[n]) ** m * len(Tn[m]), GUARDS.max_hom)
            for sigma in Tn[m].elements:
                for k in itertools.product(Tn[n].elements, repeat=m):
                    kmap = MonotoneMap(nat(m), Tn[n], k, check=False)
                    kstar = T.mult(nat(n), T.fmap(kmap, sigma))
                    if kstar not in Tn[n]:
                        continue
                    lhs = op(n, kstar, xs[n])
                    rhs = op(m, sigma, [op(n, kj, xs[n]) for kj in k])
                    if lhs is not rhs:
                        axioms.append(Inequation(lhs, rhs, "eq"))
    return Presentation(sig, tuple(axioms), f"associated[{T.name},N={N}]")


def check_duality(T: TruncatedMonad, N: int, X: FinPoset, *, depth: int = 2, subst_depth: int = 1,
                  restrict: int = 1) -> Report:
    """Free algebra of the associated presentation on X, restricted to classes
    of terms of depth <= restrict, against TX at the monad's truncation."""
    P = associated_presentation(T, N)
    F = saturate_free(P, X, depth, subst_depth)
    R = F.restrict_depth(restrict)
    TX = T.obj(X)
    iso = find_isomorphism(R, TX)
    details = {"classes": len(R), "TX": len(TX), "symbols": len(P.signature),
               "axioms": len(P.axioms), "terms": len(F.terms)}
    name = poset_name(X)
    if iso is None:
        return Report("duality", T.name, name, FAIL,
                      f"no isomorphism: {len(R)} classes against {len(TX)} elements of TX", details)
    details["iso"] = {str(k): T.show(v) for k, v in iso.items()}
    return Report("duality", T.name, name, PASS, None, details)
