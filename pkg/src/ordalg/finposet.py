"""Finite posets, monotone maps and the colimits built from them.

Elements are arbitrary hashable labels. Orders are stored as closed boolean
matrices indexed by element position; posets produced by the monad module
may instead carry an order predicate and materialise the matrix on demand.
"""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from .guards import GUARDS, check_size

Label = Hashable


class OrderError(ValueError):
    """A relation is not a partial order (or a map is not monotone)."""


def transitive_closure(m: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a square boolean matrix (Warshall)."""
    m = np.array(m, dtype=bool, copy=True)
    n = m.shape[0]
    np.fill_diagonal(m, True)
    for k in range(n):
        col = m[:, k]
        if col.sum() > 1:
            m[col] |= m[k]
    return m


class FinPreorder:
    """Finite preorder: a reflexive, transitive relation on labelled elements."""

    def __init__(self, elements: Iterable[Label], matrix=None, *,
                 leq: Callable[[Label, Label], bool] | None = None,
                 check: bool = True):
        self.elements = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise OrderError("duplicate element labels")
        if matrix is None and leq is None:
            raise ValueError("need a matrix or an order predicate")
        self._pred = leq
        self._matrix = None
        if matrix is not None:
            m = np.asarray(matrix, dtype=bool)
            n = len(self.elements)
            if m.shape != (n, n):
                raise ValueError(f"matrix shape {m.shape} for {n} elements")
            m = m.copy()
            m.flags.writeable = False
            self._matrix = m
            if check:
                self._check()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_pairs(cls, elements, pairs=(), **kw):
        elements = tuple(elements)
        idx = {x: i for i, x in enumerate(elements)}
        m = np.eye(len(elements), dtype=bool)
        for a, b in pairs:
            m[idx[a], idx[b]] = True
        return cls(elements, transitive_closure(m), **kw)

    @classmethod
    def discrete(cls, elements):
        elements = tuple(elements)
        return cls(elements, np.eye(len(elements), dtype=bool), check=False)

    @classmethod
    def chain(cls, elements):
        elements = tuple(elements)
        n = len(elements)
        return cls(elements, np.triu(np.ones((n, n), dtype=bool)), check=False)

    # -- access -------------------------------------------------------------

    @property
    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            n = len(self.elements)
            m = np.zeros((n, n), dtype=bool)
            els, pred = self.elements, self._pred
            for i in range(n):
                for j in range(n):
                    m[i, j] = pred(els[i], els[j])
            m.flags.writeable = False
            self._matrix = m
        return self._matrix

    def index(self, x: Label) -> int:
        return self._index[x]

    def leq(self, a: Label, b: Label) -> bool:
        if self._matrix is None and self._pred is not None:
            if a not in self._index or b not in self._index:
                raise KeyError((a, b))
            return bool(self._pred(a, b))
        return bool(self._matrix[self._index[a], self._index[b]])

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def __eq__(self, other):
        if not isinstance(other, FinPreorder):
            return NotImplemented
        if self is other:
            return True
        return (type(self) is type(other) and self.elements == other.elements
                and np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash((type(self).__name__, self.elements))

    def __repr__(self):
        pairs = ", ".join(f"{a}<={b}" for a, b in self.hasse_edges())
        return f"{type(self).__name__}([{', '.join(map(str, self.elements))}]; {pairs})"

    def pairs(self) -> list[tuple[Label, Label]]:
        """All related pairs (a, b) with a <= b, lexicographic on indices."""
        ii, jj = np.nonzero(self.matrix)
        els = self.elements
        return [(els[i], els[j]) for i, j in zip(ii.tolist(), jj.tolist())]

    def up(self, x) -> list[Label]:
        row = self.matrix[self._index[x]]
        return [self.elements[j] for j in np.nonzero(row)[0]]

    def down(self, x) -> list[Label]:
        col = self.matrix[:, self._index[x]]
        return [self.elements[i] for i in np.nonzero(col)[0]]

    def hasse_edges(self) -> list[tuple[Label, Label]]:
        """Covering pairs of the strict order (transitive reduction)."""
        m = self.matrix
        strict = m & ~m.T
        s = strict.astype(np.int32)
        two_step = (s @ s) > 0
        cover = strict & ~two_step
        ii, jj = np.nonzero(cover)
        return [(self.elements[i], self.elements[j]) for i, j in zip(ii.tolist(), jj.tolist())]

    def relabel(self, mapping: Callable[[Label], Label] | dict):
        f = mapping.__getitem__ if isinstance(mapping, dict) else mapping
        return type(self)([f(x) for x in self.elements], self.matrix, check=False)

    def restrict(self, keep: Iterable[Label]):
        keep = [x for x in keep]
        idx = [self._index[x] for x in keep]
        return type(self)(keep, self.matrix[np.ix_(idx, idx)], check=False)

    def is_antisymmetric(self) -> bool:
        m = self.matrix
        return not np.any(m & m.T & ~np.eye(len(self), dtype=bool))

    def _check(self):
        m = self._matrix
        if not np.all(np.diag(m)):
            raise OrderError("relation is not reflexive")
        mi = m.astype(np.int32)
        if np.any(((mi @ mi) > 0) & ~m):
            raise OrderError("relation is not transitive")


class FinPoset(FinPreorder):
    """Finite partial order."""

    def _check(self):
        super()._check()
        if not self.is_antisymmetric():
            i, j = np.argwhere(self._matrix & self._matrix.T & ~np.eye(len(self), dtype=bool))[0]
            raise OrderError(f"antisymmetry violated: {self.elements[i]} and {self.elements[j]}")

    def is_discrete(self) -> bool:
        return bool(np.array_equal(self.matrix, np.eye(len(self), dtype=bool)))


def discrete(labels) -> FinPoset:
    return FinPoset.discrete(labels)


def chain(labels) -> FinPoset:
    return FinPoset.chain(labels)


def nat(n: int) -> FinPoset:
    """The discrete poset on {0, ..., n-1}."""
    return FinPoset.discrete(range(n))


class MonotoneMap:
    """Order-preserving function between finite (pre)orders.

    The assignment is given either as a dict/table or as a callable evaluated
    lazily on the domain elements.
    """

    def __init__(self, dom: FinPreorder, cod: FinPreorder, assign, *, check: bool = True):
        self.dom = dom
        self.cod = cod
        if isinstance(assign, dict):
            self._fn = assign.__getitem__
        elif callable(assign):
            self._fn = assign
        else:
            table = tuple(assign)
            if len(table) != len(dom):
                raise ValueError("table length does not match domain")
            self._table = table
            self._fn = None
        if self._fn is not None:
            self._table = None
        if check:
            self.validate()

    @property
    def table(self) -> tuple:
        if self._table is None:
            self._table = tuple(self._fn(x) for x in self.dom.elements)
        return self._table

    def __call__(self, x):
        if self._table is not None:
            return self._table[self.dom.index(x)]
        return self._fn(x)

    def validate(self):
        t = self.table
        for y in t:
            if y not in self.cod:
                raise OrderError(f"image {y!r} not in codomain")
        dm = self.dom.matrix
        idx = np.array([self.cod.index(y) for y in t], dtype=np.intp)
        if len(idx) and np.any(dm & ~self.cod.matrix[np.ix_(idx, idx)]):
            i, j = np.argwhere(dm & ~self.cod.matrix[np.ix_(idx, idx)])[0]
            raise OrderError(
                f"not monotone: {self.dom.elements[i]} <= {self.dom.elements[j]} "
                f"but {t[i]} !<= {t[j]}")
        return self

    def indices(self) -> np.ndarray:
        return np.array([self.cod.index(y) for y in self.table], dtype=np.intp)

    def __matmul__(self, other: "MonotoneMap") -> "MonotoneMap":
        # self ∘ other
        return MonotoneMap(other.dom, self.cod, [self(other(x)) for x in other.dom.elements],
                           check=False)

    def __eq__(self, other):
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        body = ", ".join(f"{x}->{y}" for x, y in zip(self.dom.elements, self.table))
        return f"MonotoneMap({body})"

    def leq(self, other: "MonotoneMap") -> bool:
        """Pointwise order of parallel maps."""
        return all(self.cod.leq(a, b) for a, b in zip(self.table, other.table))

    def is_surjective(self) -> bool:
        return set(self.table) == set(self.cod.elements)

    @classmethod
    def identity(cls, p: FinPreorder) -> "MonotoneMap":
        return cls(p, p, p.elements, check=False)


class ParallelPair:
    """Two monotone maps f0, f1: A -> B."""

    def __init__(self, f0: MonotoneMap, f1: MonotoneMap):
        if f0.dom is not f1.dom and f0.dom != f1.dom:
            raise ValueError("parallel pair with different domains")
        if f0.cod is not f1.cod and f0.cod != f1.cod:
            raise ValueError("parallel pair with different codomains")
        self.f0, self.f1 = f0, f1

    @property
    def dom(self):
        return self.f0.dom

    @property
    def cod(self):
        return self.f0.cod

    def reflexive_section(self) -> MonotoneMap | None:
        """A monotone i: B -> A with f0∘i = id = f1∘i, if one exists."""
        A, B = self.dom, self.cod
        cands = []
        for b in B.elements:
            cs = [a for a in A.elements if self.f0(a) == b and self.f1(a) == b]
            if not cs:
                return None
            cands.append(cs)
        for choice in itertools.product(*cands):
            try:
                return MonotoneMap(B, A, choice)
            except OrderError:
                continue
        return None


# -- colimits ------------------------------------------------------------------


def poset_reflection(p: FinPreorder) -> tuple[FinPoset, MonotoneMap]:
    """Quotient a preorder by mutual comparability.

    Each class is labelled by its first member in element order; classes are
    ordered by those representatives.
    """
    m = p.matrix
    sym = m & m.T
    n = len(p)
    cls = np.full(n, -1, dtype=np.intp)
    reps: list[int] = []
    for i in range(n):
        if cls[i] < 0:
            members = np.nonzero(sym[i])[0]
            cls[members] = len(reps)
            reps.append(i)
    reps_arr = np.array(reps, dtype=np.intp)
    qm = m[np.ix_(reps_arr, reps_arr)] if n else np.zeros((0, 0), dtype=bool)
    q = FinPoset([p.elements[i] for i in reps], qm, check=False)
    quot = MonotoneMap(p, q, [p.elements[reps[c]] for c in cls.tolist()], check=False)
    return q, quot


def generated_preorder(B: FinPreorder, extra: Iterable[tuple[Label, Label]]) -> FinPreorder:
    m = np.array(B.matrix, dtype=bool, copy=True)
    idx = B._index
    for a, b in extra:
        m[idx[a], idx[b]] = True
    return FinPreorder(B.elements, transitive_closure(m), check=False)


def coinserter(pp: ParallelPair) -> tuple[FinPoset, MonotoneMap]:
    """Coinserter c: B -> C of f0, f1: A -> B, universal with c∘f0 <= c∘f1."""
    pre = generated_preorder(pp.cod, ((pp.f0(a), pp.f1(a)) for a in pp.dom.elements))
    C, q = poset_reflection(pre)
    c = MonotoneMap(pp.cod, C, q.table, check=False)
    return C, c


def canonical_presentation(P: FinPoset) -> ParallelPair:
    """P as the coinserter of its comparable-pairs pair p0, p1: k -> n.

    k is labelled by the comparable pairs (x, y), x <= y, reflexive pairs
    included, listed lexicographically on element indices; n carries the
    labels of P with the discrete order.
    """
    pairs = P.pairs()
    k = FinPoset.discrete(pairs)
    n = FinPoset.discrete(P.elements)
    p0 = MonotoneMap(k, n, [a for a, _ in pairs], check=False)
    p1 = MonotoneMap(k, n, [b for _, b in pairs], check=False)
    return ParallelPair(p0, p1)


def product(P: FinPreorder, Q: FinPreorder) -> FinPoset:
    els = [(p, q) for p in P.elements for q in Q.elements]
    m = np.kron(P.matrix, Q.matrix).astype(bool)
    return FinPoset(els, m, check=False)


def coproduct(P: FinPreorder, Q: FinPreorder) -> FinPoset:
    els = [(0, p) for p in P.elements] + [(1, q) for q in Q.elements]
    n, k = len(P), len(Q)
    m = np.zeros((n + k, n + k), dtype=bool)
    m[:n, :n] = P.matrix
    m[n:, n:] = Q.matrix
    return FinPoset(els, m, check=False)


def linear_extension(P: FinPreorder) -> list[int]:
    """Element indices sorted so that every element follows its strict predecessors."""
    m = P.matrix
    below = (m & ~m.T).sum(axis=0)
    return sorted(range(len(P)), key=lambda i: (int(below[i]), i))


def monotone_tables(X: FinPreorder, A: FinPreorder) -> Iterator[tuple]:
    """All monotone maps X -> A as tables in X's element order (lexicographic)."""
    n = len(X)
    xm, am = X.matrix, A.matrix
    order = list(range(n))
    assign = [-1] * n
    na = len(A)

    def rec(pos):
        if pos == n:
            yield tuple(A.elements[assign[i]] for i in range(n))
            return
        i = order[pos]
        for a in range(na):
            ok = True
            for j in range(pos):
                jj = order[j]
                if xm[jj, i] and not am[assign[jj], a]:
                    ok = False
                    break
                if xm[i, jj] and not am[a, assign[jj]]:
                    ok = False
                    break
            if ok:
                assign[i] = a
                yield from rec(pos + 1)
        assign[i] = -1

    yield from rec(0)


def hom_maps(X: FinPreorder, A: FinPreorder, *, bound: int | None = None) -> list[MonotoneMap]:
    bound = GUARDS.max_hom if bound is None else bound
    check_size(f"hom enumeration |A|^|X| = {len(A)}^{len(X)}", len(A) ** len(X), bound)
    return [MonotoneMap(X, A, t, check=False) for t in monotone_tables(X, A)]


def hom_poset(X: FinPreorder, A: FinPoset, *, bound: int | None = None) -> FinPoset:
    """All monotone maps X -> A, ordered pointwise; elements are image tables."""
    bound = GUARDS.max_hom if bound is None else bound
    check_size(f"hom enumeration |A|^|X| = {len(A)}^{len(X)}", len(A) ** len(X), bound)
    tables = list(monotone_tables(X, A))
    if not tables:
        return FinPoset([], np.zeros((0, 0), dtype=bool), check=False)
    idx = np.array([[A.index(a) for a in t] for t in tables], dtype=np.intp).reshape(len(tables), len(X))
    am = A.matrix
    m = np.ones((len(tables), len(tables)), dtype=bool)
    for col in range(len(X)):
        c = idx[:, col]
        m &= am[np.ix_(c, c)]
    return FinPoset(tables, m, check=False)


# -- comparison ----------------------------------------------------------------


def same_order(P: FinPreorder, Q: FinPreorder) -> bool:
    """Label-respecting equality (element order ignored)."""
    if set(P.elements) != set(Q.elements):
        return False
    perm = [Q.index(x) for x in P.elements]
    return bool(np.array_equal(P.matrix, Q.matrix[np.ix_(perm, perm)]))


def find_isomorphism(P: FinPreorder, Q: FinPreorder) -> dict | None:
    """Order isomorphism P -> Q by backtracking, or None."""
    n = len(P)
    if n != len(Q):
        return None
    pm, qm = P.matrix, Q.matrix
    pu, pd = pm.sum(1), pm.sum(0)
    qu, qd = qm.sum(1), qm.sum(0)
    if sorted(zip(pu, pd)) != sorted(zip(qu, qd)):
        return None
    order = linear_extension(P)
    assign = [-1] * n
    used = [False] * n

    def rec(pos):
        if pos == n:
            return True
        i = order[pos]
        for j in range(n):
            if used[j] or pu[i] != qu[j] or pd[i] != qd[j]:
                continue
            ok = True
            for t in range(pos):
                k = order[t]
                if pm[i, k] != qm[j, assign[k]] or pm[k, i] != qm[assign[k], j]:
                    ok = False
                    break
            if ok:
                assign[i], used[j] = j, True
                if rec(pos + 1):
                    return True
                assign[i], used[j] = -1, False
        return False

    if not rec(0):
        return None
    return {P.elements[i]: Q.elements[assign[i]] for i in range(n)}


def is_order_isomorphism(f: MonotoneMap) -> bool:
    """Bijective, order-preserving and order-reflecting."""
    if len(set(f.table)) != len(f.dom) or len(f.dom) != len(f.cod):
        return False
    idx = f.indices()
    return bool(np.array_equal(f.dom.matrix, f.cod.matrix[np.ix_(idx, idx)]))


# -- universal property ----------------------------------------------------------


def coinserter_violations(pp: ParallelPair, C: FinPoset, c: MonotoneMap,
                          targets: Sequence[FinPoset]) -> list[str]:
    """Exhaustively test the coinserter's universal property against targets.

    (0) c∘f0 <= c∘f1;
    (1) every u: B -> D with u∘f0 <= u∘f1 factors as v∘c for exactly one v;
    (2) u <= u' pointwise implies v <= v' pointwise.
    """
    B = pp.cod
    out = []
    f0 = [B.index(pp.f0(a)) for a in pp.dom.elements]
    f1 = [B.index(pp.f1(a)) for a in pp.dom.elements]
    cidx = c.indices()
    for a, i, j in zip(pp.dom.elements, f0, f1):
        if not C.matrix[cidx[i], cidx[j]]:
            out.append(f"c∘f0 <= c∘f1 fails at {a}")
    for D in targets:
        dm = D.matrix
        us = [np.array([D.index(y) for y in t], dtype=np.intp) for t in monotone_tables(B, D)]
        valid = [u for u in us if all(dm[u[i], u[j]] for i, j in zip(f0, f1))]
        factor: dict[tuple, list[np.ndarray]] = {}
        for t in monotone_tables(C, D):
            v = np.array([D.index(y) for y in t], dtype=np.intp)
            factor.setdefault(tuple(v[cidx].tolist()), []).append(v)
        vs = []
        for u in valid:
            hits = factor.get(tuple(u.tolist()), [])
            if len(hits) != 1:
                out.append(f"target {D!r}: u={u.tolist()} has {len(hits)} factorisations")
                vs.append(None)
            else:
                vs.append(hits[0])
        for (u, v), (u2, v2) in itertools.product(zip(valid, vs), repeat=2):
            if v is None or v2 is None:
                continue
            if np.all(dm[u, u2]) and not np.all(dm[v, v2]):
                out.append(f"target {D!r}: order clause fails for u={u.tolist()}, u'={u2.tolist()}")
    return out
