"""Bounded-depth saturation: an approximation of the free ordered algebra.

The least preorder on the terms of depth <= d that contains the order of X,
every axiom instance (substituting terms of depth <= b) whose sides fit in
depth d, and is closed under the operations and transitivity. Mutually
related terms are kept merged as classes while the closure runs, so the
working relation lives on classes, not terms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .finposet import FinPoset, FinPreorder
from .guards import GUARDS, check_size
from .terms import Term, structural_matrix, substitute, terms_up_to_depth
from .variety import Presentation, recognize

_CHUNK = 1 << 20


class SaturationBudgetExceeded(RuntimeError):
    """Round budget spent before the fixpoint; ``partial`` is a sound lower bound."""

    def __init__(self, msg, partial: "FreeAlgebraApprox"):
        super().__init__(msg)
        self.partial = partial


@dataclass
class FreeAlgebraApprox:
    presentation: Presentation
    X: FinPreorder
    d: int
    b: int
    terms: list[Term]
    cls: np.ndarray                  # class id of each term
    order: FinPoset                  # classes, labelled by their first term
    exact: bool = False
    complete: bool = True
    rounds: int = 0
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        if self._index is None:
            self._index = {t: i for i, t in enumerate(self.terms)}

    def class_of(self, t: Term) -> Term:
        return self.order.elements[self.cls[self._index[t]]]

    def leq(self, s: Term, t: Term) -> bool:
        return bool(self.order.matrix[self.cls[self._index[s]], self.cls[self._index[t]]])

    def equivalent(self, s: Term, t: Term) -> bool:
        return self.cls[self._index[s]] == self.cls[self._index[t]]

    def classes(self) -> list[list[Term]]:
        out: list[list[Term]] = [[] for _ in range(len(self.order))]
        for i, c in enumerate(self.cls.tolist()):
            out[c].append(self.terms[i])
        return out

    def relation(self) -> np.ndarray:
        """The saturated preorder on terms, as a dense matrix."""
        c = self.cls
        return self.order.matrix[np.ix_(c, c)]

    def preorder(self) -> FinPreorder:
        return FinPreorder(self.terms, self.relation(), check=False)

    def restrict_depth(self, k: int) -> FinPoset:
        """Classes met by terms of depth <= k, each labelled by its first such term."""
        label: dict[int, Term] = {}
        for i, t in enumerate(self.terms):
            if t.depth <= k:
                label.setdefault(int(self.cls[i]), t)
        ids = sorted(label)
        m = self.order.matrix[np.ix_(ids, ids)]
        return FinPoset([label[c] for c in ids], m, check=False)


def _max_position_depth(t: Term, x) -> int:
    """Deepest position of variable x in t (-1 if absent)."""
    if t.args is None:
        return 0 if t.head == x else -1
    best = -1
    for a in t.args:
        p = _max_position_depth(a, x)
        if p >= 0:
            best = max(best, p + 1)
    return best


def axiom_instances(P: Presentation, terms, index, d: int, b: int):
    """Index pairs of all instances of the axioms that fit the truncation."""
    depth = np.array([t.depth for t in terms])
    by_bound = {k: [terms[i] for i in np.nonzero(depth <= k)[0]] for k in range(b + 1)}
    pairs = []
    for ineq in P.inequations():
        l, r = ineq.lhs, ineq.rhs
        vs = sorted(set(l.variables()) | set(r.variables()), key=str)
        bounds = []
        for x in vs:
            pos = max(_max_position_depth(l, x), _max_position_depth(r, x))
            bounds.append(min(b, d - pos))
        if any(k < 0 for k in bounds):
            continue
        if not vs:
            if l in index and r in index:
                pairs.append((index[l], index[r]))
            continue
        cands = [by_bound[k] for k in bounds]
        total = 1
        for c in cands:
            total *= len(c)
        check_size(f"instances of {ineq}", total, GUARDS.max_hom)
        for combo in itertools.product(*cands):
            s = dict(zip(vs, combo))
            li, ri = index.get(substitute(l, s)), index.get(substitute(r, s))
            if li is not None and ri is not None:
                pairs.append((li, ri))
    return pairs


class _Closure:
    """Closed order on classes of terms, with strong components merged eagerly."""

    def __init__(self, n: int):
        self.cls = np.arange(n, dtype=np.intp)
        self.rep = np.arange(n, dtype=np.intp)        # first term of each class
        self.C = sp.identity(n, dtype=np.float32, format="csr")
        self._keys = None

    @property
    def k(self) -> int:
        return self.C.shape[0]

    def keys(self) -> np.ndarray:
        if self._keys is None:
            coo = self.C.tocoo()
            self._keys = np.sort(coo.row.astype(np.int64) * self.k + coo.col)
        return self._keys

    def related(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        keys = self.keys()
        if len(keys) == 0:
            return np.zeros(len(a), dtype=bool)
        q = a.astype(np.int64) * self.k + b
        pos = np.searchsorted(keys, q)
        pos = np.minimum(pos, len(keys) - 1)
        return keys[pos] == q

    def add(self, src: np.ndarray, dst: np.ndarray) -> bool:
        a, b = self.cls[src], self.cls[dst]
        new = ~self.related(a, b)
        if not new.any():
            return False
        coo = self.C.tocoo()
        rows = np.concatenate([coo.row, a[new]])
        cols = np.concatenate([coo.col, b[new]])
        k = self.k
        G = sp.csr_matrix((np.ones(len(rows), np.float32), (rows, cols)), shape=(k, k))
        # strong components of the edge graph are the classes of its closure
        ncomp, lab = connected_components(G, directed=True, connection="strong")
        first = np.full(ncomp, np.iinfo(np.intp).max, dtype=np.intp)
        np.minimum.at(first, lab, self.rep)
        rank = np.empty(ncomp, dtype=np.intp)
        rank[np.argsort(first, kind="stable")] = np.arange(ncomp)
        new_of_old = rank[lab]
        self.C = _dag_closure(ncomp, new_of_old[rows], new_of_old[cols])
        self.cls = new_of_old[self.cls]
        self.rep = np.sort(first)
        self._keys = None
        return True


def _dag_closure(k: int, rows: np.ndarray, cols: np.ndarray) -> sp.csr_matrix:
    """Reflexive-transitive closure of an acyclic edge list (self-loops allowed)."""
    keep = rows != cols
    e = np.unique(np.stack([rows[keep], cols[keep]]), axis=1) if keep.any() else np.zeros((2, 0), np.intp)
    r, c = e[0], e[1]
    order = np.argsort(r, kind="stable")
    r, c = r[order], c[order]
    start = np.searchsorted(r, np.arange(k + 1))
    succ = c.tolist()
    indeg = np.bincount(c, minlength=k)
    # Kahn's algorithm, then accumulate reachability in reverse topological order
    topo = []
    stack = np.nonzero(indeg == 0)[0].tolist()
    indeg = indeg.tolist()
    st = start.tolist()
    while stack:
        v = stack.pop()
        topo.append(v)
        for w in succ[st[v]:st[v + 1]]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if len(topo) != k:
        raise RuntimeError("closure input is not acyclic")
    reach = [0] * k
    for v in reversed(topo):
        acc = 1 << v
        for w in succ[st[v]:st[v + 1]]:
            acc |= reach[w]
        reach[v] = acc
    nbytes = (k + 7) // 8
    out_r, out_c = [], []
    for v, bits in enumerate(reach):
        row = np.unpackbits(np.frombuffer(bits.to_bytes(nbytes, "little"), np.uint8),
                            bitorder="little")[:k]
        idx = np.flatnonzero(row)
        out_r.append(np.full(len(idx), v, dtype=np.intp))
        out_c.append(idx)
    rr = np.concatenate(out_r) if out_r else np.zeros(0, np.intp)
    cc = np.concatenate(out_c) if out_c else np.zeros(0, np.intp)
    C = sp.csr_matrix((np.ones(len(rr), np.float32), (rr, cc)), shape=(k, k))
    C.sort_indices()
    return C


def _congruence_edges(st: _Closure, groups) -> tuple[np.ndarray, np.ndarray]:
    """Applied terms whose argument classes are related but which are not yet."""
    src, dst = [], []
    cls = st.cls
    for apps, ch in groups:
        T = cls[ch]
        uniq, first, inv = np.unique(T, axis=0, return_index=True, return_inverse=True)
        inv = inv.reshape(-1)
        rep_app = apps[first]
        # equal argument classes force equal results
        same = cls[apps] != cls[rep_app[inv]]
        if same.any():
            src.extend([apps[same], rep_app[inv][same]])
            dst.extend([rep_app[inv][same], apps[same]])
        # componentwise-related argument classes
        k = st.k
        firsts = uniq[:, 0]
        order = np.argsort(firsts, kind="stable")
        cnt = np.bincount(firsts, minlength=k)
        start = np.concatenate(([0], np.cumsum(cnt)[:-1]))
        coo = st.C.tocoo()
        keep = (cnt[coo.row] > 0) & (cnt[coo.col] > 0)
        er, ec = coo.row[keep], coo.col[keep]
        sizes = cnt[er].astype(np.int64) * cnt[ec]
        for lo, hi in _chunks(sizes):
            s = sizes[lo:hi]
            tot = int(s.sum())
            if tot == 0:
                continue
            e = np.repeat(np.arange(lo, hi), s)
            off = np.arange(tot) - np.repeat(np.cumsum(s) - s, s)
            w = cnt[ec[e]]
            u = order[start[er[e]] + off // w]
            v = order[start[ec[e]] + off % w]
            ok = u != v
            for j in range(1, uniq.shape[1]):
                ok &= st.related(uniq[u, j], uniq[v, j])
            u, v = u[ok], v[ok]
            a, b = rep_app[u], rep_app[v]
            fresh = ~st.related(cls[a], cls[b])
            src.append(a[fresh])
            dst.append(b[fresh])
    if not src:
        return np.zeros(0, np.intp), np.zeros(0, np.intp)
    return np.concatenate(src), np.concatenate(dst)


def _chunks(sizes: np.ndarray):
    lo, acc = 0, 0
    for i, s in enumerate(sizes.tolist()):
        acc += s
        if acc >= _CHUNK:
            yield lo, i + 1
            lo, acc = i + 1, 0
    if lo < len(sizes):
        yield lo, len(sizes)


def saturate_free(P: Presentation, X: FinPreorder, d: int, b: int, *,
                  max_rounds: int | None = None) -> FreeAlgebraApprox:
    """Sound approximation of the free algebra of P on X, truncated at depth d."""
    if d < 0 or b < 0 or b > d:
        raise ValueError("need 0 <= b <= d")
    terms = terms_up_to_depth(P.signature, X, d)
    index = {t: i for i, t in enumerate(terms)}
    n = len(terms)
    st = _Closure(n)

    vpos = {t.head: i for i, t in enumerate(terms) if t.args is None}
    seed = [(vpos[a], vpos[c]) for a, c in X.pairs() if a != c]
    seed += axiom_instances(P, terms, index, d, b)

    groups = []
    for name, k in P.signature:
        if k == 0:
            continue
        apps = [i for i, t in enumerate(terms) if t.args is not None and t.head == name]
        if apps:
            ch = np.array([[index[a] for a in terms[i].args] for i in apps], dtype=np.intp)
            groups.append((np.array(apps, dtype=np.intp), ch))

    if seed:
        s = np.array(seed, dtype=np.intp)
        st.add(s[:, 0], s[:, 1])
    rounds = 0
    complete = True
    while True:
        src, dst = _congruence_edges(st, groups)
        if len(src) == 0:
            break
        if max_rounds is not None and rounds >= max_rounds:
            complete = False
            break
        st.add(src, dst)
        rounds += 1

    order = FinPoset([terms[i] for i in st.rep.tolist()], st.C.toarray().astype(bool), check=False)
    approx = FreeAlgebraApprox(P, X, d, b, terms, st.cls.copy(), order,
                               complete=complete, rounds=rounds, _index=index)
    if not complete:
        raise SaturationBudgetExceeded(f"no fixpoint after {rounds} rounds", approx)
    approx.exact = matches_normal_form(approx)
    return approx


def matches_normal_form(F: FreeAlgebraApprox) -> bool:
    """Whether F coincides with a builtin normal form on its truncation."""
    if not F.presentation.axioms and F.X.is_antisymmetric():
        # no axioms: the free algebra is the term poset, truncated
        vidx = [F.X.index(t.head) for t in F.terms if t.args is None]
        m = structural_matrix(F.terms, F.X.matrix[np.ix_(vidx, vidx)])
        return len(F.order) == len(F.terms) and bool(np.array_equal(F.relation(), m))
    nf = recognize(F.presentation)
    if nf is None:
        return False
    vals = [nf.evaluate(t) for t in F.terms]
    # classes must be exactly the fibres of the evaluation
    val_of_class: dict[int, object] = {}
    class_of_val: dict[object, int] = {}
    for c, v in zip(F.cls.tolist(), vals):
        if val_of_class.setdefault(c, v) != v or class_of_val.setdefault(v, c) != c:
            return False
    reps = [val_of_class[c] for c in range(len(F.order))]
    m = F.order.matrix
    for i, u in enumerate(reps):
        for j, w in enumerate(reps):
            if bool(m[i, j]) != bool(nf.leq(F.X, u, w)):
                return False
    return True
