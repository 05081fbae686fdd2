"""Executable checks on truncated monads: laws, strong finitarity, lifting."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..finposet import (FinPoset, FinPreorder, MonotoneMap, ParallelPair,
                        canonical_presentation, coinserter, generated_preorder,
                        hom_maps, is_order_isomorphism, poset_reflection, product)
from ..guards import GuardExceeded
from .base import TruncatedMonad

PASS, FAIL = "PASS", "FAIL"
PRESERVES, FAILS, INCONCLUSIVE = "PRESERVES", "FAILS", "INCONCLUSIVE"


@dataclass
class Report:
    check: str
    monad: str
    poset: str
    verdict: str
    witness: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict in (PASS, PRESERVES)

    @property
    def failed(self) -> bool:
        return self.verdict in (FAIL, FAILS)

    def to_json(self) -> dict:
        return {"schema": 1, "check": self.check, "monad": self.monad, "poset": self.poset,
                "verdict": self.verdict, "witness": self.witness}


def poset_name(P: FinPreorder) -> str:
    pairs = ",".join(f"{a}<{b}" for a, b in P.hasse_edges())
    return "{" + ",".join(map(str, P.elements)) + (";" + pairs if pairs else "") + "}"


# -- monad laws ----------------------------------------------------------------------------


class _Violations:
    def __init__(self, limit=20):
        self.items: list[str] = []
        self.count = 0
        self.limit = limit

    def add(self, msg):
        self.count += 1
        if len(self.items) < self.limit:
            self.items.append(msg)


def _monotone_on(T, Y: FinPreorder, elems, Z: FinPreorder, images) -> int | None:
    """Index of a pair violating monotonicity of elems -> images, or None."""
    a = T.order_matrix(Y, elems)
    b = T.order_matrix(Z, images)
    bad = a & ~b
    if bad.any():
        return tuple(np.argwhere(bad)[0])
    return None


def check_monad_laws(T: TruncatedMonad, tests: Sequence[FinPreorder], *,
                     budget: int | None = None, naturality: bool = True,
                     elementwise: bool = True, max_maps: int = 10_000) -> Report:
    """Unit and associativity laws elementwise, monotonicity of η, μ and Tf,
    functoriality and naturality along every monotone map between test posets.

    μ is total on elements, so every enumerated element is checked; coverage
    reports the share whose composites all stay within the truncation.
    """
    b = T.law_budget if budget is None else budget
    bad = _Violations()
    checked = inside = 0
    skipped: list[str] = []
    sh = T.show
    for X in (tests if elementwise else ()):
        TX, ttx = T.ttx(X, b)
        eta = [T.unit(X, x) for x in X.elements]
        # η monotone
        if len(X) and np.any(X.matrix & ~T.order_matrix(X, eta)):
            i, j = np.argwhere(X.matrix & ~T.order_matrix(X, eta))[0]
            bad.add(f"η not monotone on {poset_name(X)}: {X.elements[i]} <= {X.elements[j]}")
        ident = MonotoneMap.identity(X)
        eta_map = MonotoneMap(X, TX, eta, check=False)
        for a in TX.elements:
            checked += 1
            inside += 1
            if T.fmap(ident, a) != a:
                bad.add(f"T(id) != id at {sh(a)}")
            left = T.mult(X, T.unit(TX, a))
            right = T.mult(X, T.fmap(eta_map, a))
            if left != a:
                bad.add(f"μ∘ηT != id at {sh(a)} on {poset_name(X)}: got {sh(left)}")
            if right != a:
                bad.add(f"μ∘Tη != id at {sh(a)} on {poset_name(X)}: got {sh(right)}")
        # μ monotone on the defined part of T(TX)
        if ttx:
            mu_img = [T.mult(X, aa) for aa in ttx]
            hit = _monotone_on(T, TX, ttx, X, mu_img)
            if hit is not None:
                bad.add(f"μ not monotone on {poset_name(X)}: {sh(ttx[hit[0]])} <= {sh(ttx[hit[1]])}")
        # associativity on T applied to the defined part of T(TX)
        try:
            TTX = FinPoset(ttx, T.order_matrix(TX, ttx), check=False)
            mu_map = MonotoneMap(TTX, TX, [T.mult(X, aa) for aa in ttx], check=False)
            for aaa in T.carrier(TTX, b):
                checked += 1
                flat_outer = T.mult(TX, aaa)                 # μ_TX
                flat_inner = T.fmap(mu_map, aaa)             # Tμ_X
                left, right = T.mult(X, flat_outer), T.mult(X, flat_inner)
                if all(T.measure(z) <= b for z in (flat_outer, flat_inner, left)):
                    inside += 1
                if left != right:
                    bad.add(f"associativity fails at {sh(aaa)} on {poset_name(X)}: "
                            f"{sh(left)} vs {sh(right)}")
        except GuardExceeded as e:
            skipped.append(f"associativity on {poset_name(X)}: {e}")
    if naturality:
        n_maps = 0
        for X, Y in itertools.product(tests, repeat=2):
            try:
                maps = hom_maps(X, Y, bound=max_maps)
            except GuardExceeded:
                continue
            TX, ttx = T.ttx(X, b)
            TY = T.obj(Y, b)
            for f in maps:
                n_maps += 1
                for x in X.elements:
                    if T.unit(Y, f(x)) != T.fmap(f, T.unit(X, x)):
                        bad.add(f"η not natural at {x} along {f}")
                images = [T.fmap(f, a) for a in TX.elements]
                outside = [z for z in images if z not in TY]
                if outside:
                    bad.add(f"T{f} leaves the truncation: {sh(outside[0])}")
                    continue
                hit = _monotone_on(T, X, TX.elements, Y, images) if len(TX) else None
                if hit is not None:
                    bad.add(f"T{f} not monotone: {sh(TX.elements[hit[0]])} <= {sh(TX.elements[hit[1]])}")
                Tf = MonotoneMap(TX, TY, images, check=False)
                for aa in ttx:
                    if T.mult(Y, T.fmap(Tf, aa)) != T.fmap(f, T.mult(X, aa)):
                        bad.add(f"μ not natural at {sh(aa)} along {f}")
        # functoriality on composable pairs among the smaller test posets
        small = [X for X in tests if len(X) <= 2]
        for X, Y, Z in itertools.product(small, repeat=3):
            for f in hom_maps(X, Y):
                for g in hom_maps(Y, Z):
                    gf = g @ f
                    for a in T.obj(X, b).elements:
                        if T.fmap(gf, a) != T.fmap(g, T.fmap(f, a)):
                            bad.add(f"T(g∘f) != Tg∘Tf at {sh(a)}")
    cov = inside / checked if checked else 1.0
    return Report("laws", T.name, ",".join(poset_name(X) for X in tests),
                  PASS if bad.count == 0 else FAIL,
                  bad.items[0] if bad.items else None,
                  {"violations": bad.count, "examples": bad.items, "checked": checked,
                   "coverage": cov, "budget": b, "skipped": skipped})


# -- strong finitarity ----------------------------------------------------------------------


@dataclass
class SFData:
    pair: ParallelPair
    Tn: FinPoset
    Q: FinPoset
    quotient: MonotoneMap      # Tn -> Q
    TP: FinPoset
    comparison: dict           # class label in Q -> element of TP


def sf_data(T: TruncatedMonad, P: FinPoset, budget: int | None = None) -> SFData:
    """Coinserter of T applied to the canonical presentation of P, and the
    comparison map into TP."""
    b = T.budget if budget is None else budget
    pp = canonical_presentation(P)
    k, n = pp.dom, pp.cod
    Tn = T.obj(n, b)
    Tk = T.carrier(k, b)
    extra = [(T.fmap(pp.f0, t), T.fmap(pp.f1, t)) for t in Tk]
    pre = generated_preorder(Tn, extra)
    Q, q = poset_reflection(pre)
    _, c = coinserter(pp)
    TP = T.obj(P, b)
    comparison = {}
    for t in Tn.elements:
        comparison.setdefault(q(t), []).append(T.fmap(c, t))
    return SFData(pp, Tn, Q, q, TP, comparison)


def check_strongly_finitary(T: TruncatedMonad, P: FinPoset, budget: int | None = None) -> Report:
    """Does T preserve the canonical coinserter presenting P (on the truncation)?"""
    b = T.budget if budget is None else budget
    name = poset_name(P)
    if b == 0 and T.truncated:
        return Report("sf", T.name, name, INCONCLUSIVE, "budget 0 leaves no operations to compare")
    try:
        data = sf_data(T, P, b)
    except GuardExceeded as e:
        return Report("sf", T.name, name, INCONCLUSIVE, f"guard: {e}")
    sh = T.show
    v = {}
    for cl, images in data.comparison.items():
        if len(set(images)) != 1:
            return Report("sf", T.name, name, FAIL,
                          f"comparison map not well defined on the class of {sh(cl)}")
        v[cl] = images[0]
    image = set(v.values())
    missing = [a for a in data.TP.elements if a not in image]
    details = {"budget": b, "Q": len(data.Q), "TP": len(data.TP)}
    if missing:
        return Report("sf", T.name, name, FAILS,
                      f"{sh(missing[0])} in TP is missing from the image of Tc",
                      details | {"missing": [sh(a) for a in missing]})
    if len(image) != len(data.Q):
        groups: dict = {}
        for cl, a in v.items():
            groups.setdefault(a, []).append(cl)
        a, cls = next((a, c) for a, c in groups.items() if len(c) > 1)
        return Report("sf", T.name, name, FAILS if T.measure_monotone else INCONCLUSIVE,
                      f"distinct classes {sh(cls[0])} and {sh(cls[1])} both map to {sh(a)}", details)
    vmap = MonotoneMap(data.Q, data.TP, [v[cl] for cl in data.Q.elements], check=False)
    if not is_order_isomorphism(vmap):
        idx = vmap.indices()
        diff = data.TP.matrix[np.ix_(idx, idx)] & ~data.Q.matrix
        i, j = np.argwhere(diff)[0]
        a, bb = data.Q.elements[i], data.Q.elements[j]
        verdict = FAILS if T.measure_monotone else INCONCLUSIVE
        return Report("sf", T.name, name, verdict,
                      f"{sh(v[a])} < {sh(v[bb])} in TP but [{sh(a)}] is not below [{sh(bb)}] "
                      f"in the coinserter", details)
    return Report("sf", T.name, name, PRESERVES, None, details)


def check_power_functor(P: FinPoset, m: int = 2) -> Report:
    """X ↦ X^m preserves the canonical coinserter of P."""
    pp = canonical_presentation(P)
    k, n = pp.dom, pp.cod

    def power(X):
        out = X
        for _ in range(m - 1):
            out = product(out, X)
        return out

    def flat(t):
        # nested pairs ((a, b), c) -> (a, b, c)
        out = []
        for _ in range(m - 1):
            t, last = t
            out.append(last)
        out.append(t)
        return tuple(reversed(out))

    km, nm = power(k), power(n)

    def lift(f):
        return MonotoneMap(km, nm, [_nest(tuple(f(x) for x in flat(t))) for t in km.elements],
                           check=False)

    Q, q = coinserter(ParallelPair(lift(pp.f0), lift(pp.f1)))
    _, c = coinserter(pp)
    Pm = power(P)
    v = {}
    for t in nm.elements:
        v.setdefault(q(t), set()).add(_nest(tuple(c(x) for x in flat(t))))
    name = poset_name(P)
    if any(len(s) != 1 for s in v.values()):
        return Report("power", f"X^{m}", name, FAIL, "comparison map not well defined")
    vmap = MonotoneMap(Q, Pm, [next(iter(v[cl])) for cl in Q.elements], check=False)
    if not is_order_isomorphism(vmap):
        return Report("power", f"X^{m}", name, FAIL, "comparison map is not an order isomorphism")
    return Report("power", f"X^{m}", name, PASS)


def _nest(xs: tuple):
    out = xs[0]
    for x in xs[1:]:
        out = (out, x)
    return out


# -- lifting --------------------------------------------------------------------------------


def check_lifting(T: TruncatedMonad, X: FinPoset, budget: int | None = None) -> Report:
    """Same underlying sets, units and multiplications for X and X with its order forgotten."""
    b = T.law_budget if budget is None else budget
    X0 = FinPoset.discrete(X.elements)
    sh = T.show
    name = poset_name(X)
    TX, TX0 = T.obj(X, b), T.obj(X0, b)
    a, a0 = set(TX.elements), set(TX0.elements)
    if a != a0:
        extra = sorted(map(sh, a - a0))
        lacking = sorted(map(sh, a0 - a))
        msg = (f"|TX| != |TX0|: {len(a)} vs {len(a0)}"
               + (f"; only in TX: {extra[0]}" if extra else "")
               + (f"; only in TX0: {lacking[0]}" if lacking else ""))
        return Report("lift", T.name, name, FAIL, msg)
    for x in X.elements:
        if T.unit(X, x) != T.unit(X0, x):
            return Report("lift", T.name, name, FAIL, f"units differ at {x}")
    _, ttx = T.ttx(X, b)
    _, ttx0 = T.ttx(X0, b)
    if set(ttx) != set(ttx0):
        diff = sorted(map(sh, set(ttx) ^ set(ttx0)))
        return Report("lift", T.name, name, FAIL, f"T(TX) and T(TX0) differ, e.g. at {diff[0]}")
    for aa in ttx:
        if T.mult(X, aa) != T.mult(X0, aa):
            return Report("lift", T.name, name, FAIL, f"multiplications differ at {sh(aa)}")
    return Report("lift", T.name, name, PASS, None, {"budget": b, "TX": len(TX)})
