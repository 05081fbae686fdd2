"""Test-poset bank: every finite poset of small size, up to isomorphism."""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .finposet import FinPoset, transitive_closure
from .guards import GUARDS, check_size


def _canonical_key(m: np.ndarray) -> tuple:
    n = m.shape[0]
    best = None
    for perm in itertools.permutations(range(n)):
        p = list(perm)
        key = tuple(m[np.ix_(p, p)].flatten().tolist())
        if best is None or key > best:
            best = key
    return best


@functools.lru_cache(maxsize=None)
def posets_of_size(n: int) -> tuple[FinPoset, ...]:
    """One representative per isomorphism class, labelled x0..x{n-1}.

    Representatives are naturally labelled (x_i <= x_j implies i <= j); the
    list order is deterministic.
    """
    check_size("bank poset size", n, min(GUARDS.max_poset, 6))
    labels = [f"x{i}" for i in range(n)]
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = {}
    for bits in itertools.product((False, True), repeat=len(upper)):
        m = np.eye(n, dtype=bool)
        for (i, j), b in zip(upper, bits):
            m[i, j] = b
        if not np.array_equal(transitive_closure(m), m):
            continue
        key = _canonical_key(m)
        if key not in seen:
            seen[key] = m
    out = [FinPoset(labels, m, check=False) for m in seen.values()]
    out.sort(key=lambda p: (int(p.matrix.sum()), p.matrix.flatten().tolist()))
    return tuple(out)


def bank(max_size: int = 4) -> list[FinPoset]:
    return [p for n in range(max_size + 1) for p in posets_of_size(n)]


def two_chain(labels=("x0", "x1")) -> FinPoset:
    return FinPoset.chain(labels)


def v_poset() -> FinPoset:
    """a < c, b < c."""
    return FinPoset.from_pairs(["a", "b", "c"], [("a", "c"), ("b", "c")])
