"""Inequational presentations, ordered algebras and builtin free algebras."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

import numpy as np

from . import sexpr
from .finposet import FinPoset, FinPreorder
from .guards import GUARDS, check_size
from .terms import (BOUNDS, MONOID, Signature, Term, app, evaluate, extend_hom,
                    from_sexpr, parse_term, var)

_VAR = re.compile(r"x(\d+)$")


class UndefinedOperation(KeyError):
    """A partial (truncated) operation was applied outside its domain."""


def variable_index(label) -> int:
    m = _VAR.match(str(label))
    if not m:
        raise ValueError(f"{label!r} is not a variable of the supply x0, x1, ...")
    return int(m.group(1))


def V(i: int) -> Term:
    """The i-th variable of the countable supply."""
    return var(f"x{i}")


@dataclass(frozen=True)
class Inequation:
    lhs: Term
    rhs: Term
    kind: str = "leq"        # "eq" stands for the pair lhs <= rhs, rhs <= lhs

    def __post_init__(self):
        if self.kind not in ("leq", "eq"):
            raise ValueError(f"unknown inequation kind {self.kind}")
        for x in self.lhs.variables() + self.rhs.variables():
            variable_index(x)

    @property
    def n_vars(self) -> int:
        vs = [variable_index(x) for x in self.lhs.variables() + self.rhs.variables()]
        return max(vs) + 1 if vs else 0

    def directed(self) -> list["Inequation"]:
        if self.kind == "leq":
            return [self]
        return [Inequation(self.lhs, self.rhs), Inequation(self.rhs, self.lhs)]

    def __str__(self):
        rel = "<=" if self.kind == "leq" else "="
        return f"{self.lhs} {rel} {self.rhs}"

    def to_json(self) -> dict:
        return {"lhs": str(self.lhs), "rhs": str(self.rhs), "kind": self.kind}

    @classmethod
    def parse(cls, s: str, sig: Signature) -> "Inequation":
        """Read ``leq LHS RHS`` or ``eq LHS RHS`` (optionally parenthesised)."""
        items = sexpr.read_all(s)
        if len(items) == 1 and isinstance(items[0], list):
            items = items[0]
        if len(items) != 3 or items[0] not in ("leq", "eq"):
            raise sexpr.ParseError(f"expected 'leq LHS RHS' or 'eq LHS RHS', got {s!r}")
        return cls(from_sexpr(items[1], sig), from_sexpr(items[2], sig), items[0])


@dataclass(frozen=True)
class Presentation:
    signature: Signature
    axioms: tuple[Inequation, ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        for ax in self.axioms:
            for t in (ax.lhs, ax.rhs):
                for u in t.subterms():
                    if u.args is not None and (u.head not in self.signature
                                               or self.signature.arity(u.head) != len(u.args)):
                        raise ValueError(f"axiom {ax} is not well formed over the signature")

    def inequations(self) -> list[Inequation]:
        return [d for ax in self.axioms for d in ax.directed()]

    def to_json(self) -> dict:
        out = {"signature": self.signature.to_json(),
               "axioms": [ax.to_json() for ax in self.axioms]}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, obj, name=None) -> "Presentation":
        if isinstance(obj, str):
            return builtin(obj).presentation
        if "builtin" in obj:
            return builtin(obj["builtin"]).presentation
        sig = Signature.from_json(obj["signature"])
        axioms = tuple(Inequation(parse_term(a["lhs"], sig), parse_term(a["rhs"], sig),
                                  a.get("kind", "leq")) for a in obj.get("axioms", []))
        return cls(sig, axioms, name or obj.get("name"))

    def same_theory_text(self, other: "Presentation") -> bool:
        """Same signature and the same set of directed inequations."""
        key = lambda p: {(str(i.lhs), str(i.rhs)) for i in p.inequations()}
        return self.signature == other.signature and key(self) == key(other)


# -- ordered algebras ---------------------------------------------------------------


class OrderedAlgebra:
    """A poset with an operation per symbol.

    ``ops`` maps each symbol to either a dict from argument tuples to values
    or a callable. Results outside the carrier (truncated algebras) raise
    UndefinedOperation.
    """

    def __init__(self, signature: Signature, carrier: FinPoset, ops: dict):
        self.signature = signature
        self.carrier = carrier
        self.ops = dict(ops)
        missing = [n for n in signature.names() if n not in self.ops]
        if missing:
            raise ValueError(f"no operation for {missing}")

    def apply(self, name: str, args: tuple):
        op = self.ops[name]
        if callable(op):
            r = op(*args)
        else:
            try:
                r = op[tuple(args)]
            except KeyError:
                raise UndefinedOperation((name, args)) from None
        if r is None or r not in self.carrier:
            raise UndefinedOperation((name, args))
        return r

    def defined(self, name, args) -> bool:
        try:
            self.apply(name, args)
            return True
        except UndefinedOperation:
            return False

    def leq(self, a, b) -> bool:
        return self.carrier.leq(a, b)

    def table(self, name: str) -> dict:
        k = self.signature.arity(name)
        out = {}
        for args in itertools.product(self.carrier.elements, repeat=k):
            try:
                out[args] = self.apply(name, args)
            except UndefinedOperation:
                pass
        return out

    def monotonicity_violations(self) -> list:
        """Pairs of argument tuples (componentwise <=) whose results are not <=."""
        out = []
        P = self.carrier
        for name, k in self.signature:
            check_size("operation table", len(P) ** (2 * k), GUARDS.max_hom)
            tab = self.table(name)
            for a, b in itertools.product(tab, repeat=2):
                if all(P.leq(x, y) for x, y in zip(a, b)) and not P.leq(tab[a], tab[b]):
                    out.append((name, a, b))
        return out

    def evaluate(self, t: Term, assign):
        return extend_hom(assign, self)(t)


def satisfies(A: OrderedAlgebra, ineq: Inequation, *, witness: bool = False):
    """Whether every interpretation of the variables validates the inequation."""
    n = ineq.n_vars
    check_size(f"assignments |A|^{n}", len(A.carrier) ** n, GUARDS.max_hom)
    for directed in ineq.directed():
        for vals in itertools.product(A.carrier.elements, repeat=n):
            f = {f"x{i}": v for i, v in enumerate(vals)}
            lhs = A.evaluate(directed.lhs, f)
            rhs = A.evaluate(directed.rhs, f)
            if not A.leq(lhs, rhs):
                return (False, f) if witness else False
    return (True, None) if witness else True


def in_variety(A: OrderedAlgebra, P: Presentation) -> bool:
    return all(satisfies(A, ax) for ax in P.axioms)


# -- words ----------------------------------------------------------------------------


def words_up_to(labels: Sequence, L: int) -> list[tuple]:
    out = []
    for n in range(L + 1):
        out.extend(itertools.product(labels, repeat=n))
    return out


def show_word(w: tuple) -> str:
    if not w:
        return "ε"
    parts = []
    for a in w:
        if isinstance(a, tuple):
            parts.append("[" + show_word(a) + "]")
        else:
            parts.append(str(a))
    return "".join(parts)


def word_leq_pointwise(leq: Callable, u: tuple, w: tuple) -> bool:
    return len(u) == len(w) and all(leq(a, b) for a, b in zip(u, w))


def word_leq_bottom_unit(leq: Callable, u: tuple, w: tuple) -> bool:
    """u <= w iff w splits into len(u) consecutive nonempty blocks, the i-th
    block containing a letter above u[i]; the empty word is below everything.

    Equivalent to a dominated subsequence embedding; decided greedily.
    """
    if len(u) > len(w):
        return False
    pos = 0
    for a in u:
        while pos < len(w) and not leq(a, w[pos]):
            pos += 1
        if pos == len(w):
            return False
        pos += 1
    return True


def pointwise_word_matrix(Y: FinPreorder, words: Sequence[tuple]) -> np.ndarray:
    n = len(words)
    m = np.zeros((n, n), dtype=bool)
    ym = Y.matrix
    by_len: dict[int, list[int]] = {}
    for i, w in enumerate(words):
        by_len.setdefault(len(w), []).append(i)
    for L, rows in by_len.items():
        r = np.array(rows, dtype=np.intp)
        blk = np.ones((len(rows), len(rows)), dtype=bool)
        if L:
            letters = np.array([[Y.index(a) for a in words[i]] for i in rows], dtype=np.intp)
            for j in range(L):
                blk &= ym[np.ix_(letters[:, j], letters[:, j])]
        m[np.ix_(r, r)] = blk
    return m


def _word_algebra(X: FinPreorder, L: int, leq_words) -> OrderedAlgebra:
    words = words_up_to(X.elements, L)
    carrier = FinPoset(words, leq_words(X, words), check=False)

    def mul(u, w):
        r = u + w
        return r if len(r) <= L else None

    return OrderedAlgebra(MONOID, carrier, {"mul": mul, "e": lambda: ()})


def free_word_pointwise(X: FinPreorder, L: int) -> OrderedAlgebra:
    """Free ordered monoid on X: words of length <= L, same-length letterwise order."""
    return _word_algebra(X, L, pointwise_word_matrix)


def bottom_unit_word_matrix(Y: FinPreorder, words: Sequence[tuple]) -> np.ndarray:
    n = len(words)
    m = np.zeros((n, n), dtype=bool)
    leq = Y.leq
    for i, u in enumerate(words):
        for j, w in enumerate(words):
            m[i, j] = word_leq_bottom_unit(leq, u, w)
    return m


def free_word_bottom_unit(X: FinPreorder, L: int) -> OrderedAlgebra:
    """Free ordered monoid with the unit as least element, truncated at length L."""
    return _word_algebra(X, L, bottom_unit_word_matrix)


BOT, TOP = app("0"), app("1")


def bounded_leq(Y: FinPreorder, a: Term, b: Term) -> bool:
    if a is BOT or b is TOP:
        return True
    if a is TOP or b is BOT:
        return False
    return Y.leq(a.head, b.head)


def bounded_carrier(Y: FinPreorder) -> list[Term]:
    return [BOT] + [var(x) for x in Y.elements] + [TOP]


def free_bounded_poset(X: FinPreorder) -> OrderedAlgebra:
    """X with a fresh least element 0 and a fresh greatest element 1."""
    els = bounded_carrier(X)
    n = len(els)
    m = np.zeros((n, n), dtype=bool)
    m[0, :] = True
    m[:, -1] = True
    m[1:-1, 1:-1] = X.matrix
    carrier = FinPoset(els, m, check=False)
    return OrderedAlgebra(BOUNDS, carrier, {"0": lambda: BOT, "1": lambda: TOP})


# -- admissibility ------------------------------------------------------------------------


def check_admissible(rel: FinPreorder, sig: Signature, *, witness: bool = False):
    """Is the relation on terms closed under every operation applied componentwise?

    Only applications whose result lies in the carrier are considered.
    """
    terms = rel.elements
    idx = {t: i for i, t in enumerate(terms)}
    m = rel.matrix
    for name, k in sig:
        if k == 0:
            continue
        rows = [i for i, t in enumerate(terms)
                if isinstance(t, Term) and t.args is not None and t.head == name
                and all(a in idx for a in t.args)]
        if not rows:
            continue
        r = np.array(rows, dtype=np.intp)
        ch = np.array([[idx[a] for a in terms[i].args] for i in rows], dtype=np.intp)
        need = np.ones((len(rows), len(rows)), dtype=bool)
        for j in range(k):
            need &= m[np.ix_(ch[:, j], ch[:, j])]
        bad = need & ~m[np.ix_(r, r)]
        if bad.any():
            if witness:
                i, j = np.argwhere(bad)[0]
                return False, (terms[rows[i]], terms[rows[j]])
            return False
    return (True, None) if witness else True


# -- builtin varieties -----------------------------------------------------------------------


def _p(s, sig=MONOID):
    return parse_term(s, sig)


ASSOC = Inequation(_p("(mul (mul x0 x1) x2)"), _p("(mul x0 (mul x1 x2))"), "eq")
LEFT_UNIT = Inequation(_p("(mul e x0)"), _p("x0"), "eq")
RIGHT_UNIT = Inequation(_p("(mul x0 e)"), _p("x0"), "eq")
MONOID_AXIOMS = (ASSOC, LEFT_UNIT, RIGHT_UNIT)
UNIT_BELOW = Inequation(_p("e"), _p("x0"))                       # e <= y
RIGHT_FACTOR = Inequation(_p("x0"), _p("(mul x0 x1)"))           # x <= x·y


def word_of(t: Term) -> tuple:
    """Evaluate a monoid term in the free monoid (words over variable labels)."""
    return evaluate(t, lambda x: (x,), lambda h, args: () if h == "e" else args[0] + args[1])


def bounded_of(t: Term) -> Term:
    return t


@dataclass(frozen=True)
class BuiltinVariety:
    name: str
    presentation: Presentation
    normal_form: Callable[[FinPreorder, int], OrderedAlgebra]
    evaluate: Callable[[Term], Hashable]        # the canonical quotient map on terms
    leq: Callable[[FinPreorder, Hashable, Hashable], bool]


def _pw_leq(Y, a, b):
    return word_leq_pointwise(Y.leq, a, b)


def _bu_leq(Y, a, b):
    return word_leq_bottom_unit(Y.leq, a, b)


BUILTINS: dict[str, BuiltinVariety] = {
    "ordered-monoid": BuiltinVariety(
        "ordered-monoid", Presentation(MONOID, MONOID_AXIOMS, "ordered-monoid"),
        free_word_pointwise, word_of, _pw_leq),
    "monoid-bottom-unit": BuiltinVariety(
        "monoid-bottom-unit", Presentation(MONOID, MONOID_AXIOMS + (UNIT_BELOW,), "monoid-bottom-unit"),
        free_word_bottom_unit, word_of, _bu_leq),
    "bounded-poset": BuiltinVariety(
        "bounded-poset",
        Presentation(BOUNDS, (Inequation(app("0"), V(0)), Inequation(V(0), app("1"))), "bounded-poset"),
        lambda X, L=0: free_bounded_poset(X), bounded_of, bounded_leq),
}


def builtin(name: str) -> BuiltinVariety:
    try:
        return BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown builtin variety {name!r}; known: {sorted(BUILTINS)}") from None


def recognize(P: Presentation) -> BuiltinVariety | None:
    for b in BUILTINS.values():
        if P.same_theory_text(b.presentation):
            return b
    return None
