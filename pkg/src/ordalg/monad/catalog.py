"""The builtin monads: terms, words, bounded posets and the two counterexamples."""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from ..terms import (BOUNDS, MONOID, PLUS_STAR, Signature, Term, app, rename,
                     structural_matrix, substitute, term_leq, terms_up_to_depth, var)
from ..variety import (bottom_unit_word_matrix, bounded_carrier, bounded_leq,
                       pointwise_word_matrix, show_word, word_leq_bottom_unit,
                       word_leq_pointwise, words_up_to)
from .base import TruncatedMonad, as_function


class IdentityMonad(TruncatedMonad):
    name = "identity"
    truncated = False

    def carrier(self, Y, budget):
        return list(Y.elements)

    def leq(self, Y, a, b):
        return Y.leq(a, b)

    def order_matrix(self, Y, elems):
        idx = [Y.index(a) for a in elems]
        return Y.matrix[np.ix_(idx, idx)]

    def unit(self, Y, y):
        return y

    def mult(self, Y, aa):
        return aa

    def fmap(self, f, a):
        return as_function(f)(a)


def _subterm_closure(elems: Sequence[Term]) -> list[Term]:
    seen, out = set(), []
    for t in elems:
        for u in t.subterms():
            if u not in seen:
                seen.add(u)
                out.append(u)
    return out


class TermMonad(TruncatedMonad):
    """Free ordered Σ-algebra monad, truncated at term depth."""

    name = "term"
    cross: tuple = ()

    def __init__(self, budget: int = 2, signature: Signature = MONOID, name: str | None = None):
        super().__init__(budget)
        self.signature = signature
        if name:
            self.name = name

    def carrier(self, Y, budget):
        return terms_up_to_depth(self.signature, Y, budget)

    def leq(self, Y, a, b):
        return term_leq(a, b, Y)

    def order_matrix(self, Y, elems):
        closed = _subterm_closure(elems)
        m = structural_matrix(closed, Y.leq, self.cross)
        pos = {t: i for i, t in enumerate(closed)}
        idx = [pos[t] for t in elems]
        return m[np.ix_(idx, idx)]

    def unit(self, Y, y):
        return var(y)

    def mult(self, Y, aa):
        return substitute(aa, lambda t: t)

    def fmap(self, f, a):
        return rename(a, as_function(f))

    def measure(self, a):
        return a.depth

    def show(self, a):
        if a.args is None:
            h = a.head
            return f"[{self.show(h)}]" if isinstance(h, Term) else str(h)
        if not a.args:
            return a.head
        return "(" + " ".join([a.head] + [self.show(x) for x in a.args]) + ")"


class PlusStarMonad(TermMonad):
    """Two binary operations with x + y <= x * y whenever x <= y.

    The order is the least one making both operations monotone and containing
    those instances; in closed form s1 + s2 <= u1 * u2 iff s1 <= u1, s2 <= u2
    and s1 <= u2, and otherwise terms compare shape by shape.
    """

    name = "plus-star"
    cross = (("+", "*", ((0, 1),)),)

    def __init__(self, budget: int = 2):
        super().__init__(budget, PLUS_STAR)

    def leq(self, Y, a, b):
        if a is b:
            return True
        if a.args is None or b.args is None:
            return a.args is None and b.args is None and Y.leq(a.head, b.head)
        if a.head == b.head:
            return all(self.leq(Y, s, t) for s, t in zip(a.args, b.args))
        if a.head == "+" and b.head == "*":
            (s1, s2), (u1, u2) = a.args, b.args
            return self.leq(Y, s1, u1) and self.leq(Y, s2, u2) and self.leq(Y, s1, u2)
        return False

    def show(self, a, top=True):
        if a.args is None:
            h = a.head
            return f"[{TermMonad.show(self, h)}]" if isinstance(h, Term) else str(h)
        s = f"{self.show(a.args[0], False)}{a.head}{self.show(a.args[1], False)}"
        return s if top else f"({s})"


class CtxPartialMonad(TermMonad):
    """One binary operation α, defined on pairs u0 <= u1 only.

    TX is built inductively: the elements of X, then α(u0, u1) for terms
    u0 <= u1; terms are ordered shape by shape.
    """

    name = "ctx-partial"

    def __init__(self, budget: int = 1):
        super().__init__(budget, Signature.of(("alpha", 2)))

    def carrier(self, Y, budget):
        vars_ = [var(y) for y in Y.elements]
        level = list(vars_)
        for _ in range(budget):
            m = self.order_matrix(Y, level)
            nxt = list(vars_)
            for i, j in itertools.product(range(len(level)), repeat=2):
                if m[i, j]:
                    nxt.append(app("alpha", level[i], level[j]))
            level = nxt
        return level

    def show(self, a):
        if a.args is None:
            h = a.head
            return f"[{self.show(h)}]" if isinstance(h, Term) else str(h)
        return f"α({self.show(a.args[0])},{self.show(a.args[1])})"


class BoundedMonad(TruncatedMonad):
    """X with a fresh bottom 0 and a fresh top 1; finite, so never truncated."""

    name = "bounded-poset"
    law_budget = 0
    truncated = False

    def __init__(self, budget: int = 0):
        super().__init__(budget)
        self.signature = BOUNDS

    def carrier(self, Y, budget):
        return bounded_carrier(Y)

    def leq(self, Y, a, b):
        return bounded_leq(Y, a, b)

    def unit(self, Y, y):
        return var(y)

    def mult(self, Y, aa):
        return aa.head if aa.args is None else aa

    def fmap(self, f, a):
        return var(as_function(f)(a.head)) if a.args is None else a

    def show(self, a):
        if a.args is None:
            h = a.head
            return f"[{self.show(h)}]" if isinstance(h, Term) else str(h)
        return a.head


class WordMonad(TruncatedMonad):
    """Words over X, truncated at length; pointwise or bottom-unit order."""

    law_budget = 2

    def __init__(self, budget: int = 3, bottom_unit: bool = False):
        super().__init__(budget)
        self.bottom_unit = bottom_unit
        self.name = "word-bottom-unit" if bottom_unit else "word-pointwise"
        self.signature = MONOID

    def carrier(self, Y, budget):
        return words_up_to(Y.elements, budget)

    def leq(self, Y, a, b):
        if self.bottom_unit:
            return word_leq_bottom_unit(Y.leq, a, b)
        return word_leq_pointwise(Y.leq, a, b)

    def order_matrix(self, Y, elems):
        if self.bottom_unit:
            return bottom_unit_word_matrix(Y, elems)
        return pointwise_word_matrix(Y, elems)

    def unit(self, Y, y):
        return (y,)

    def mult(self, Y, aa):
        return tuple(itertools.chain.from_iterable(aa))

    def fmap(self, f, a):
        f = as_function(f)
        return tuple(f(x) for x in a)

    def measure(self, a):
        return len(a)

    def show(self, a):
        return show_word(a)


def builtin_monads(depth: int | None = None, length: int | None = None) -> dict[str, TruncatedMonad]:
    """The catalog, keyed by name, with optional truncation overrides."""
    d = {} if depth is None else {"budget": depth}
    L = {} if length is None else {"budget": length}
    return {
        "identity": IdentityMonad(),
        "term": TermMonad(**({"budget": 2} | d)),
        "word-pointwise": WordMonad(**({"budget": 3} | L)),
        "word-bottom-unit": WordMonad(**({"budget": 3} | L), bottom_unit=True),
        "bounded-poset": BoundedMonad(),
        "ctx-partial": CtxPartialMonad(**({"budget": 1} | d)),
        "plus-star": PlusStarMonad(**({"budget": 2} | d)),
    }


CATALOG_NAMES = tuple(builtin_monads())
# the six monads under study; identity is kept as a baseline
STUDIED_MONADS = ("term", "word-pointwise", "word-bottom-unit", "bounded-poset",
                "ctx-partial", "plus-star")
VARIETY_MONAD = {"ordered-monoid": "word-pointwise",
                 "monoid-bottom-unit": "word-bottom-unit",
                 "bounded-poset": "bounded-poset"}


def get_monad(name: str, depth: int | None = None, length: int | None = None) -> TruncatedMonad:
    cat = builtin_monads(depth, length)
    if name not in cat:
        raise KeyError(f"unknown monad {name!r}; known: {', '.join(cat)}")
    return cat[name]
