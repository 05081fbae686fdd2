"""Monad morphisms: term-induced ones, variety quotients, the continuation monad."""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

import numpy as np

from ..finposet import FinPoset, FinPreorder, MonotoneMap, monotone_tables
from ..guards import GUARDS, check_size
from ..saturation import saturate_free
from ..terms import Signature, Term, evaluate, substitute, var
from ..variety import Presentation, recognize
from .base import TruncatedMonad, as_function
from .catalog import TermMonad, get_monad, VARIETY_MONAD
from .checks import FAIL, PASS, Report, _Violations, poset_name


class MonadMorphism:
    """Components b_X: TX -> SX given elementwise by ``component(X, a)``."""

    def __init__(self, source: TruncatedMonad, target: TruncatedMonad,
                 component: Callable, name: str = "morphism", approximate: bool = False):
        self.source, self.target = source, target
        self.component = component
        self.name = name
        self.approximate = approximate

    def __call__(self, X: FinPreorder, a):
        return self.component(X, a)

    def at(self, X: FinPreorder, budget: int | None = None, target_budget: int | None = None) -> MonotoneMap:
        TX = self.source.obj(X, budget)
        SX = self.target.obj(X, target_budget)
        return MonotoneMap(TX, SX, [self.component(X, a) for a in TX.elements], check=False)


def check_monad_morphism(m: MonadMorphism, tests: Sequence[FinPreorder], *,
                         budget: int | None = None, maps: bool = True) -> Report:
    """Monotone components, naturality, b∘η = η and b∘μ = μ∘(b*b) elementwise."""
    T, S = m.source, m.target
    b = T.law_budget if budget is None else budget
    bad = _Violations()
    for X in tests:
        TX, ttx = T.ttx(X, b)
        imgs = [m(X, a) for a in TX.elements]
        if len(TX):
            lo = TX.matrix & ~S.order_matrix(X, imgs)
            if lo.any():
                i, j = np.argwhere(lo)[0]
                bad.add(f"component at {poset_name(X)} not monotone: "
                        f"{T.show(TX.elements[i])} <= {T.show(TX.elements[j])}")
        for x in X.elements:
            if m(X, T.unit(X, x)) != S.unit(X, x):
                bad.add(f"b∘η != η at {x}")
        # (b*b)_X = b_SX ∘ T(b_X)
        SX = None if S.truncated else S.obj(X)
        for aa in ttx:
            left = m(X, T.mult(X, aa))
            inner = T.fmap(lambda a: m(X, a), aa)
            # truncated targets here (term monads) ignore the poset argument
            right = S.mult(X, m(SX if SX is not None else _poset_of(S, X, _vars_of(T, inner)), inner))
            if left != right:
                bad.add(f"b∘μ != μ∘(b*b) at {T.show(aa)}: {S.show(left)} vs {S.show(right)}")
    if maps:
        for X, Y in itertools.product(tests, repeat=2):
            for t in monotone_tables(X, Y):
                f = MonotoneMap(X, Y, t, check=False)
                for a in T.obj(X, b).elements:
                    if m(Y, T.fmap(f, a)) != S.fmap(f, m(X, a)):
                        bad.add(f"not natural at {T.show(a)} along {f}")
    return Report("morphism", m.name, ",".join(poset_name(X) for X in tests),
                  PASS if bad.count == 0 else FAIL, bad.items[0] if bad.items else None,
                  {"violations": bad.count, "examples": bad.items, "approximate": m.approximate})


def _vars_of(T: TruncatedMonad, a) -> list:
    # the elements of SX occurring in an element of T(SX)
    seen = []
    T.fmap(lambda z: seen.append(z) or z, a)
    return seen


def _poset_of(S: TruncatedMonad, X, elems) -> FinPoset:
    els = list(dict.fromkeys(elems))
    return FinPoset(els, S.order_matrix(X, els), check=False)


# -- term-induced morphisms ----------------------------------------------------------------


def omega_signature(n: int) -> Signature:
    return Signature.of(("omega", n))


def unfold(u: Term, t: Term) -> Term:
    """Replace every ω in t by u, recursively."""
    return evaluate(t, var, lambda h, args: substitute(u, {f"x{i}": a for i, a in enumerate(args)}))


def term_monad_morphism(u: Term, n: int, sig: Signature, budget: int = 2) -> MonadMorphism:
    """ũ: T_Ω → T_Σ sending an ω-term to its u-unfolding."""
    for x in u.variables():
        if x not in {f"x{i}" for i in range(n)}:
            raise ValueError(f"{u} uses {x} outside x0..x{n - 1}")
    src = TermMonad(budget, omega_signature(n), name=f"term[omega/{n}]")
    # unfolding multiplies depth by at most depth(u)
    tgt = TermMonad(budget * max(u.depth, 1), sig)
    return MonadMorphism(src, tgt, lambda X, t: unfold(u, t), name=f"unfold[{u}]")


# -- variety quotients ----------------------------------------------------------------------


class QuotientMonad(TruncatedMonad):
    """T_V realised by saturation: terms modulo the saturated preorder.

    Elements are class representatives; only the parts needed by the
    quotient checks (carrier, order, unit, map on representatives) exist.
    """

    def __init__(self, P: Presentation, d: int, b: int):
        super().__init__(d)
        self.P, self.d, self.b = P, d, b
        self.name = "quotient"
        self._free: dict = {}

    def free(self, X):
        key = (X.elements, X.matrix.tobytes())
        F = self._free.get(key)
        if F is None:
            F = saturate_free(self.P, X, self.d, self.b)
            self._free[key] = F
        return F

    def carrier(self, Y, budget):
        return list(self.free(Y).order.elements)

    def leq(self, Y, a, b):
        return self.free(Y).leq(a, b)

    def unit(self, Y, y):
        return self.free(Y).class_of(var(y))

    def fmap(self, f, a):
        raise NotImplementedError("use the quotient map on term representatives")


def variety_quotient_morphism(P: Presentation, *, depth: int = 2,
                              subst_depth: int = 1) -> MonadMorphism:
    """c_V: T_Σ → T_V on terms of depth <= depth.

    A recognised builtin presentation goes through its normal form; any
    other through saturation, and the morphism is then marked approximate.
    """
    src = TermMonad(depth, P.signature)
    if not P.axioms:
        return MonadMorphism(src, src, lambda X, t: t, name="quotient[free]")
    nf = recognize(P)
    if nf is not None:
        # a term of depth d evaluates to a word of length <= 2^d
        tgt = get_monad(VARIETY_MONAD[nf.name], length=2 ** depth)
        return MonadMorphism(src, tgt, lambda X, t: nf.evaluate(t), name=f"quotient[{nf.name}]")
    Q = QuotientMonad(P, depth, subst_depth)
    return MonadMorphism(src, Q, lambda X, t: Q.free(X).class_of(t), name="quotient[saturated]",
                         approximate=True)


def check_quotient(m: MonadMorphism, P: Presentation, tests: Sequence[FinPreorder]) -> Report:
    """Componentwise surjectivity onto the truncation, and c_V∘ũ0 <= c_V∘ũ1
    for every axiom u0 <= u1, elementwise on one-level ω-terms."""
    T, S = m.source, m.target
    bad = _Violations()
    for X in tests:
        image = {m(X, t) for t in T.obj(X).elements}
        for z in S.obj(X).elements:
            if z not in image:
                bad.add(f"{S.show(z)} not in the image at {poset_name(X)}")
        for ax in P.inequations():
            Om = TermMonad(1, omega_signature(ax.n_vars))
            for t in Om.carrier(X, 1):
                s0, s1 = unfold(ax.lhs, t), unfold(ax.rhs, t)
                if max(s0.depth, s1.depth) > T.budget:
                    continue
                if not S.leq(X, m(X, s0), m(X, s1)):
                    bad.add(f"axiom {ax} fails at {t}: {s0} vs {s1}")
    return Report("quotient", m.name, ",".join(poset_name(X) for X in tests),
                  PASS if bad.count == 0 else FAIL, bad.items[0] if bad.items else None,
                  {"violations": bad.count, "approximate": m.approximate})


# -- continuation monad ------------------------------------------------------------------------


class ContinuationMonad(TruncatedMonad):
    """⟨A,A⟩X: tuples of elements of A indexed by the monotone maps X -> A,
    ordered componentwise. Index order follows monotone_tables(X, A)."""

    truncated = False
    law_budget = 0

    def __init__(self, A: FinPoset):
        super().__init__(0)
        self.A = A
        self.name = f"continuation[{len(A)}]"
        self._homs: dict = {}

    def homs(self, X: FinPreorder) -> tuple[list[tuple], dict]:
        key = (X.elements, X.matrix.tobytes())
        h = self._homs.get(key)
        if h is None:
            check_size(f"hom enumeration |A|^|X| = {len(self.A)}^{len(X)}",
                       len(self.A) ** len(X), GUARDS.max_hom)
            tabs = list(monotone_tables(X, self.A))
            h = (tabs, {t: i for i, t in enumerate(tabs)})
            self._homs[key] = h
        return h

    def carrier(self, Y, budget):
        tabs, _ = self.homs(Y)
        check_size(f"|A|^|hom(X,A)| = {len(self.A)}^{len(tabs)}",
                   len(self.A) ** len(tabs), GUARDS.max_hom)
        return list(itertools.product(self.A.elements, repeat=len(tabs)))

    def leq(self, Y, a, b):
        return all(self.A.leq(x, y) for x, y in zip(a, b))

    def order_matrix(self, Y, elems):
        n = len(elems)
        if n == 0:
            return np.zeros((0, 0), dtype=bool)
        idx = np.array([[self.A.index(x) for x in a] for a in elems], dtype=np.intp).reshape(n, -1)
        m = np.ones((n, n), dtype=bool)
        for j in range(idx.shape[1]):
            m &= self.A.matrix[np.ix_(idx[:, j], idx[:, j])]
        return m

    def unit(self, Y, y):
        tabs, _ = self.homs(Y)
        i = Y.index(y)
        return tuple(t[i] for t in tabs)

    def fmap(self, h: MonotoneMap, a):
        """(⟨A,A⟩h)(a)_g = a_{g∘h}."""
        X, Y = h.dom, h.cod
        _, xidx = self.homs(X)
        tabs_y, _ = self.homs(Y)
        pos = [Y.index(h(x)) for x in X.elements]
        return tuple(a[xidx[tuple(g[p] for p in pos)]] for g in tabs_y)

    def mult(self, Y, aa):
        """μ(Φ)_f = Φ_{π_f}, where π_f projects ⟨A,A⟩Y onto the f-th coordinate."""
        CY = self.obj(Y)
        _, cidx = self.homs(CY)
        tabs, _ = self.homs(Y)
        return tuple(aa[cidx[tuple(z[i] for z in CY.elements)]] for i in range(len(tabs)))

    def show(self, a):
        return "(" + ",".join(map(str, a)) + ")"


def check_algebra(T: TruncatedMonad, A: FinPoset, alpha: MonotoneMap | Callable,
                  budget: int | None = None) -> Report:
    """α∘η = id and α∘μ = α∘Tα on the truncation, plus monotonicity of α."""
    b = T.law_budget if budget is None else budget
    al = as_function(alpha)
    bad = _Violations()
    TA, tta = T.ttx(A, b)
    for x in A.elements:
        if al(T.unit(A, x)) != x:
            bad.add(f"α∘η != id at {x}")
    vals = [al(a) for a in TA.elements]
    if any(v not in A for v in vals):
        bad.add("α leaves A")
    else:
        idx = [A.index(v) for v in vals]
        lo = TA.matrix & ~A.matrix[np.ix_(idx, idx)]
        if lo.any():
            i, j = np.argwhere(lo)[0]
            bad.add(f"α not monotone: {T.show(TA.elements[i])} <= {T.show(TA.elements[j])}")
    for aa in tta:
        if al(T.mult(A, aa)) != al(T.fmap(al, aa)):
            bad.add(f"α∘μ != α∘Tα at {T.show(aa)}")
    return Report("algebra", T.name, poset_name(A), PASS if bad.count == 0 else FAIL,
                  bad.items[0] if bad.items else None, {"violations": bad.count})


class AlgebraLawError(ValueError):
    pass


def algebra_to_morphism(T: TruncatedMonad, A: FinPoset, alpha, budget: int | None = None) -> MonadMorphism:
    """α̂: T → ⟨A,A⟩ with π_f∘α̂_X = α∘Tf."""
    rep = check_algebra(T, A, alpha, budget)
    if not rep.ok:
        raise AlgebraLawError(rep.witness)
    al = as_function(alpha)
    C = ContinuationMonad(A)

    def component(X, t):
        tabs, _ = C.homs(X)
        out = []
        for tab in tabs:
            f = dict(zip(X.elements, tab))
            out.append(al(T.fmap(f, t)))
        return tuple(out)

    return MonadMorphism(T, C, component, name=f"hat[{T.name}]")


def check_continuation_square(m: MonadMorphism, A: FinPoset, alpha, X: FinPreorder,
                              budget: int | None = None) -> Report:
    """π_f∘α̂_X = α∘Tf for every monotone f: X -> A, elementwise on TX."""
    T, C = m.source, m.target
    al = as_function(alpha)
    tabs, _ = C.homs(X)
    bad = _Violations()
    for t in T.obj(X, budget).elements:
        hat = m(X, t)
        for i, tab in enumerate(tabs):
            f = dict(zip(X.elements, tab))
            if hat[i] != al(T.fmap(f, t)):
                bad.add(f"square fails at {T.show(t)} for f={tab}")
    return Report("square", m.name, poset_name(X), PASS if bad.count == 0 else FAIL,
                  bad.items[0] if bad.items else None)
