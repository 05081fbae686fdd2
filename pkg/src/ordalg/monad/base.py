"""Executable monads on finite posets, truncated by a size measure.

A monad is given elementwise: ``carrier(Y, b)`` lists the elements of TY of
measure <= b, ``unit``, ``mult`` and ``fmap`` act on single elements and are
total (never truncated), and ``leq`` decides the order of TY. The object and
arrow actions package these as finite posets and monotone maps.
"""

from __future__ import annotations

from typing import Callable, Hashable, Sequence

import numpy as np

from ..finposet import FinPoset, FinPreorder, MonotoneMap


class TruncatedMonad:
    name = "monad"
    # related elements never decrease in measure, and fmap preserves measure;
    # together these make order questions on a truncation exact
    measure_monotone = True
    # budget used by the law checks when none is given (T(T(TX))) must stay small
    law_budget = 1
    # False when TX is finite and every budget yields all of it
    truncated = True

    def __init__(self, budget: int = 2):
        if budget < 0:
            raise ValueError("budget must be non-negative")
        self.budget = budget
        self._objs: dict = {}

    def __repr__(self):
        return f"{type(self).__name__}(budget={self.budget})"

    # -- elementwise interface ----------------------------------------------------

    def carrier(self, Y: FinPreorder, budget: int) -> list:
        raise NotImplementedError

    def leq(self, Y: FinPreorder, a, b) -> bool:
        raise NotImplementedError

    def unit(self, Y: FinPreorder, y):
        raise NotImplementedError

    def mult(self, Y: FinPreorder, aa):
        """Flatten an element of T(TY) to TY."""
        raise NotImplementedError

    def fmap(self, f: Callable, a):
        raise NotImplementedError

    def measure(self, a) -> int:
        return 0

    def show(self, a) -> str:
        return str(a)

    def symbol_label(self, a) -> str:
        """Compact name usable inside an operation symbol."""
        s = self.show(a).replace(" ", "").replace("(", "[").replace(")", "]")
        return s or "ε"

    def order_matrix(self, Y: FinPreorder, elems: Sequence) -> np.ndarray:
        n = len(elems)
        m = np.zeros((n, n), dtype=bool)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                m[i, j] = self.leq(Y, a, b)
        return m

    # -- object and arrow actions ---------------------------------------------------

    def obj(self, Y: FinPreorder, budget: int | None = None) -> FinPoset:
        b = self.budget if budget is None else budget
        key = (Y.elements, Y.matrix.tobytes(), b)
        P = self._objs.get(key)
        if P is None:
            els = self.carrier(Y, b)
            P = FinPoset(els, self.order_matrix(Y, els), check=False)
            self._objs[key] = P
        return P

    def on_arrow(self, f: MonotoneMap, budget: int | None = None) -> MonotoneMap:
        TX, TY = self.obj(f.dom, budget), self.obj(f.cod, budget)
        return MonotoneMap(TX, TY, [self.fmap(f, a) for a in TX.elements], check=False)

    def eta(self, X: FinPreorder, budget: int | None = None) -> MonotoneMap:
        TX = self.obj(X, budget)
        return MonotoneMap(X, TX, [self.unit(X, x) for x in X.elements], check=False)

    def ttx(self, X: FinPreorder, budget: int | None = None):
        """(TX, elements of T(TX) whose flattening stays within the budget)."""
        b = self.budget if budget is None else budget
        TX = self.obj(X, b)
        outer = self.carrier(TX, b)
        return TX, [aa for aa in outer if self.measure(self.mult(X, aa)) <= b]

    def mu(self, X: FinPreorder, budget: int | None = None) -> MonotoneMap:
        """μ_X restricted to the defined part of T(TX), as a map into TX."""
        TX, dom_els = self.ttx(X, budget)
        dom = FinPoset(dom_els, self.order_matrix(TX, dom_els), check=False)
        return MonotoneMap(dom, TX, [self.mult(X, aa) for aa in dom_els], check=False)


def as_function(f) -> Callable[[Hashable], Hashable]:
    if isinstance(f, dict):
        return f.__getitem__
    return f
