"""Signatures, interned terms and the free ordered term algebra.

Terms are hash-consed: structurally equal terms are the same object, so
equality is identity and hashing is precomputed. A variable's label may be
any hashable value, including another term (terms over terms are how the
monad module represents T(TX)).
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from . import sexpr
from .finposet import FinPoset, FinPreorder
from .guards import GUARDS, check_size


class Term:
    __slots__ = ("head", "args", "depth", "_hash", "__weakref__")

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        if self.args is None:
            return (var, (self.head,))
        return (app, (self.head, *self.args))

    @property
    def is_var(self) -> bool:
        return self.args is None

    @property
    def label(self):
        """The carrier label of a variable."""
        if self.args is not None:
            raise TypeError("not a variable")
        return self.head

    def __str__(self):
        return to_sexpr(self)

    def __repr__(self):
        return f"Term({to_sexpr(self)})"

    def __lt__(self, other):
        # deterministic tiebreak only; never a semantic order
        return (self.depth, str(self)) < (other.depth, str(other))

    def variables(self) -> list:
        out, seen = [], set()
        stack = [self]
        while stack:
            t = stack.pop()
            if t.args is None:
                if t.head not in seen:
                    seen.add(t.head)
                    out.append(t.head)
            else:
                stack.extend(reversed(t.args))
        return out

    def size(self) -> int:
        if self.args is None:
            return 1
        return 1 + sum(a.size() for a in self.args)

    def subterms(self):
        yield self
        if self.args:
            for a in self.args:
                yield from a.subterms()


_INTERN: "weakref.WeakValueDictionary[tuple, Term]" = weakref.WeakValueDictionary()


def var(label) -> Term:
    key = ("v", label)
    t = _INTERN.get(key)
    if t is None:
        t = Term.__new__(Term)
        t.head, t.args, t.depth = label, None, 0
        t._hash = hash(key)
        _INTERN[key] = t
    return t


def app(symbol: str, *args: Term) -> Term:
    key = ("a", symbol, args)
    t = _INTERN.get(key)
    if t is None:
        t = Term.__new__(Term)
        t.head, t.args = symbol, args
        # constants have depth 1
        t.depth = 1 + max((a.depth for a in args), default=0)
        t._hash = hash(key)
        _INTERN[key] = t
    return t


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [n for n, _ in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError("duplicate operation symbols")
        for n, k in self.symbols:
            if k < 0:
                raise ValueError(f"negative arity for {n}")
            if not n or any(c.isspace() or c in "()" for c in n):
                raise ValueError(f"bad symbol name {n!r}")

    @classmethod
    def of(cls, *pairs) -> "Signature":
        return cls(tuple((str(n), int(k)) for n, k in pairs))

    def arity(self, name: str) -> int:
        for n, k in self.symbols:
            if n == name:
                return k
        raise KeyError(name)

    def __contains__(self, name) -> bool:
        return any(n == name for n, _ in self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def names(self) -> list[str]:
        return [n for n, _ in self.symbols]

    def to_json(self) -> dict:
        return {"symbols": [{"name": n, "arity": k} for n, k in self.symbols]}

    @classmethod
    def from_json(cls, obj) -> "Signature":
        return cls(tuple((s["name"], int(s["arity"])) for s in obj["symbols"]))


MONOID = Signature.of(("mul", 2), ("e", 0))
PLUS_STAR = Signature.of(("+", 2), ("*", 2))
BOUNDS = Signature.of(("0", 0), ("1", 0))


# -- syntax --------------------------------------------------------------------


def to_sexpr(t: Term) -> str:
    if t.args is None:
        return str(t.head)
    if not t.args:
        return t.head
    return "(" + " ".join([t.head] + [to_sexpr(a) for a in t.args]) + ")"


def parse_term(s: str, sig: Signature, variables: Callable[[str], Hashable] | None = None) -> Term:
    """Parse a prefix s-expression. Atoms naming a nullary symbol are constants."""
    return from_sexpr(sexpr.read(s), sig, variables)


def from_sexpr(node, sig: Signature, variables=None) -> Term:
    if isinstance(node, str):
        if node in sig and sig.arity(node) == 0:
            return app(node)
        if node in sig:
            raise sexpr.ParseError(f"symbol {node} used without arguments")
        return var(variables(node) if variables else node)
    if not node:
        raise sexpr.ParseError("empty application")
    head, *rest = node
    if not isinstance(head, str) or head not in sig:
        raise sexpr.ParseError(f"unknown operation symbol {head!r}")
    if sig.arity(head) != len(rest):
        raise sexpr.ParseError(f"{head} expects {sig.arity(head)} arguments, got {len(rest)}")
    return app(head, *(from_sexpr(r, sig, variables) for r in rest))


# -- enumeration -----------------------------------------------------------------


def terms_up_to_depth(sig: Signature, X, d: int, *, limit: int | None = None) -> list[Term]:
    """All terms of depth <= d over the labels of X.

    Order: variables first, then by symbol order, then child tuples
    lexicographically in the order of the depth d-1 list.
    """
    if d < 0:
        raise ValueError("depth must be non-negative")
    limit = GUARDS.max_terms if limit is None else limit
    labels = list(X.elements if isinstance(X, FinPreorder) else X)
    vars_ = [var(x) for x in labels]
    level = list(vars_)
    for _ in range(d):
        count = len(vars_) + sum(len(level) ** k for _, k in sig)
        check_size("term enumeration", count, limit)
        nxt = list(vars_)
        for name, k in sig:
            nxt.extend(app(name, *ch) for ch in itertools.product(level, repeat=k))
        level = nxt
    return level


def count_terms(n_vars: int, n_symbols_by_arity: dict[int, int], d: int) -> int:
    c = n_vars
    for _ in range(d):
        c = n_vars + sum(m * c ** k for k, m in n_symbols_by_arity.items())
    return c


# -- order -------------------------------------------------------------------------


def term_leq(s: Term, t: Term, X: FinPreorder) -> bool:
    """Generated order of the free ordered algebra: shape-wise comparison."""
    if s is t:
        return True
    if s.args is None or t.args is None:
        return s.args is None and t.args is None and X.leq(s.head, t.head)
    if s.head != t.head:
        return False
    return all(term_leq(a, b, X) for a, b in zip(s.args, t.args))


def structural_matrix(terms: Sequence[Term], var_leq: np.ndarray | Callable,
                      cross: Iterable[tuple[str, str, Sequence[tuple[int, int]]]] = ()) -> np.ndarray:
    """Order matrix of a subterm-closed list of terms.

    Variables compare through ``var_leq`` (matrix over the variable positions
    in ``terms`` or a predicate on labels); applications with equal heads
    compare componentwise. Each ``cross`` entry (h1, h2, extra) additionally
    lets h1(s) <= h2(t) when the children compare componentwise and
    s[j] <= t[k] for every (j, k) in extra.
    """
    n = len(terms)
    idx = {t: i for i, t in enumerate(terms)}
    m = np.zeros((n, n), dtype=bool)
    vpos = np.array([i for i, t in enumerate(terms) if t.args is None], dtype=np.intp)
    if len(vpos):
        if callable(var_leq):
            labels = [terms[i].head for i in vpos]
            vm = np.array([[var_leq(a, b) for b in labels] for a in labels], dtype=bool)
        else:
            vm = np.asarray(var_leq, dtype=bool)
        m[np.ix_(vpos, vpos)] = vm
    groups: dict[str, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
    by_head: dict[str, list[int]] = {}
    for i, t in enumerate(terms):
        if t.args is not None:
            by_head.setdefault(t.head, []).append(i)
    for h, rows in by_head.items():
        r = np.array(rows, dtype=np.intp)
        k = len(terms[rows[0]].args)
        ch = np.array([[idx[a] for a in terms[i].args] for i in rows], dtype=np.intp).reshape(len(rows), k)
        dep = np.array([terms[i].depth for i in rows])
        groups[h] = (r, ch, dep)
    cross = list(cross)
    maxd = max((t.depth for t in terms), default=0)
    for level in range(1, maxd + 1):
        for h, (r, ch, dep) in groups.items():
            sel = dep <= level
            rr, cc = r[sel], ch[sel]
            blk = np.ones((len(rr), len(rr)), dtype=bool)
            for j in range(cc.shape[1]):
                blk &= m[np.ix_(cc[:, j], cc[:, j])]
            m[np.ix_(rr, rr)] = blk
        for h1, h2, extra in cross:
            if h1 not in groups or h2 not in groups:
                continue
            r1, c1, d1 = groups[h1]
            r2, c2, d2 = groups[h2]
            s1, s2 = d1 <= level, d2 <= level
            r1, c1, r2, c2 = r1[s1], c1[s1], r2[s2], c2[s2]
            blk = np.ones((len(r1), len(r2)), dtype=bool)
            for j in range(c1.shape[1]):
                blk &= m[np.ix_(c1[:, j], c2[:, j])]
            for j, k in extra:
                blk &= m[np.ix_(c1[:, j], c2[:, k])]
            m[np.ix_(r1, r2)] = blk
    return m


def term_poset(sig: Signature, X: FinPreorder, d: int) -> FinPoset:
    """The free ordered Σ-algebra on X, truncated to depth <= d."""
    terms = terms_up_to_depth(sig, X, d)
    vidx = [X.index(t.head) for t in terms if t.args is None]
    m = structural_matrix(terms, X.matrix[np.ix_(vidx, vidx)])
    return FinPoset(terms, m, check=False)


# -- substitution and evaluation ---------------------------------------------------------


def substitute(t: Term, s: Callable[[Hashable], Term] | dict) -> Term:
    """Simultaneous substitution of terms for variable labels."""
    get = s.__getitem__ if isinstance(s, dict) else s
    memo: dict[Term, Term] = {}

    def go(u: Term) -> Term:
        r = memo.get(u)
        if r is None:
            r = get(u.head) if u.args is None else app(u.head, *(go(a) for a in u.args))
            memo[u] = r
        return r

    return go(t)


def rename(t: Term, f: Callable[[Hashable], Hashable]) -> Term:
    """Apply f to every variable label."""
    return substitute(t, lambda x: var(f(x)))


def evaluate(t: Term, assign: Callable | dict, ops: Callable[[str, tuple], Hashable]):
    """Fold a term: variables through ``assign``, applications through ``ops``."""
    get = assign.__getitem__ if isinstance(assign, dict) else assign
    memo: dict[Term, Hashable] = {}

    def go(u: Term):
        if u in memo:
            return memo[u]
        r = get(u.head) if u.args is None else ops(u.head, tuple(go(a) for a in u.args))
        memo[u] = r
        return r

    return go(t)


def extend_hom(f, A) -> Callable[[Term], Hashable]:
    """Unique homomorphic extension of f: X -> |A| to terms over X.

    ``A`` is any object with an ``apply(symbol, args)`` method (an ordered
    algebra); ``f`` is a monotone map, dict or callable on labels.
    """
    def f_sharp(t: Term):
        return evaluate(t, f, A.apply)

    return f_sharp
