import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordalg.bank import bank, posets_of_size, two_chain, v_poset
from ordalg.finposet import (FinPoset, FinPreorder, MonotoneMap, OrderError, ParallelPair,
                             canonical_presentation, chain, coinserter, coinserter_violations,
                             coproduct, discrete, find_isomorphism, generated_preorder, hom_maps,
                             hom_poset, is_order_isomorphism, monotone_tables, nat,
                             poset_reflection, product, same_order, transitive_closure)
from ordalg.guards import GuardExceeded

from conftest import posets


def brute_closure(m):
    """Least reflexive transitive relation containing m, by iterating to a fixpoint."""
    n = len(m)
    rel = {(i, j) for i in range(n) for j in range(n) if m[i][j]} | {(i, i) for i in range(n)}
    while True:
        new = {(i, k) for (i, j) in rel for (j2, k) in rel if j == j2} | rel
        if new == rel:
            return rel
        rel = new


@settings(max_examples=60)
@given(st.integers(0, 6).flatmap(
    lambda n: st.lists(st.lists(st.booleans(), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_closure_matches_fixpoint(rows):
    m = np.array(rows, dtype=bool).reshape(len(rows), len(rows))
    got = transitive_closure(m)
    want = brute_closure(rows)
    assert {(i, j) for i, j in zip(*np.nonzero(got))} == want


def test_rejects_non_orders():
    with pytest.raises(OrderError):
        FinPoset.from_pairs(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(OrderError):
        FinPoset(["a", "a"])


def test_hasse_of_chain_and_v():
    assert chain([0, 1, 2]).hasse_edges() == [(0, 1), (1, 2)]
    V = v_poset()
    assert len(V.hasse_edges()) == 2 and len(V) == 3


def test_bank_counts():
    assert [len(posets_of_size(n)) for n in range(5)] == [1, 1, 2, 5, 16]
    assert len(bank(3)) == 9


@given(posets())
def test_hasse_edges_regenerate_order(P):
    Q = FinPoset.from_pairs(P.elements, P.hasse_edges())
    assert same_order(P, Q)
    # no covering edge is implied by the others
    for e in P.hasse_edges():
        rest = [f for f in P.hasse_edges() if f != e]
        assert not same_order(P, FinPoset.from_pairs(P.elements, rest))


def test_reflection_quotients_cycles():
    pre = FinPreorder.from_pairs(list("abc"), [("a", "b"), ("b", "a"), ("b", "c")])
    P, q = poset_reflection(pre)
    assert len(P) == 2
    assert q("a") == q("b") != q("c")
    assert P.leq(q("a"), q("c"))


def test_monotone_map_rejects_order_reversal():
    C = two_chain()
    with pytest.raises(OrderError):
        MonotoneMap(C, C, ["x1", "x0"])


def brute_hom(X, A):
    out = []
    for t in itertools.product(A.elements, repeat=len(X)):
        f = dict(zip(X.elements, t))
        if all(A.leq(f[a], f[b]) for a, b in X.pairs()):
            out.append(t)
    return out


@settings(max_examples=40)
@given(posets(3), posets(3))
def test_hom_enumeration_matches_brute_force(X, A):
    assert sorted(monotone_tables(X, A), key=repr) == sorted(brute_hom(X, A), key=repr)


def test_hom_poset_of_chains():
    # monotone maps 2 -> 2 form a 3-chain
    H = hom_poset(chain([0, 1]), chain([0, 1]))
    assert len(H) == 3
    assert find_isomorphism(H, chain([0, 1, 2])) is not None


def test_hom_guard():
    with pytest.raises(GuardExceeded):
        hom_maps(discrete(range(8)), discrete(range(8)), bound=1000)


@given(posets(3), posets(3))
def test_product_is_pointwise(P, Q):
    R = product(P, Q)
    for (a, b), (c, d) in itertools.product(R.elements, repeat=2):
        assert R.leq((a, b), (c, d)) == (P.leq(a, c) and Q.leq(b, d))


def test_coproduct_sizes():
    S = coproduct(nat(2), v_poset())
    assert len(S) == 5
    assert not S.leq((0, 0), (1, v_poset().elements[0]))


def test_canonical_presentation_of_two_chain():
    pp = canonical_presentation(two_chain())
    assert pp.dom.elements == (("x0", "x0"), ("x0", "x1"), ("x1", "x1"))
    assert pp.cod.is_discrete()
    C, c = coinserter(pp)
    assert same_order(C, two_chain())
    assert c.table == ("x0", "x1")
    assert pp.reflexive_section() is not None


@given(posets(4))
def test_canonical_presentation_recovers_poset(P):
    C, c = coinserter(canonical_presentation(P))
    assert is_order_isomorphism(MonotoneMap(P, C, c.table, check=False))


def test_coinserter_identifies_and_orders():
    A, B = discrete(["a"]), discrete(["p", "q", "r"])
    pp = ParallelPair(MonotoneMap(A, B, ["p"]), MonotoneMap(A, B, ["q"]))
    C, c = coinserter(pp)
    assert len(C) == 3 and C.leq(c("p"), c("q"))
    pp2 = ParallelPair(MonotoneMap(discrete([0, 1]), B, ["p", "q"]),
                       MonotoneMap(discrete([0, 1]), B, ["q", "p"]))
    C2, c2 = coinserter(pp2)
    assert len(C2) == 2 and c2("p") == c2("q")


def test_coinserter_universal_small():
    targets = bank(2)
    for A, B in itertools.product(bank(2), repeat=2):
        for f0, f1 in itertools.product(hom_maps(A, B), repeat=2):
            pp = ParallelPair(f0, f1)
            C, c = coinserter(pp)
            assert coinserter_violations(pp, C, c, targets) == []


def test_violations_detect_a_wrong_coinserter():
    # the identity on a discrete pair is not the coinserter of p -> q
    A, B = discrete(["a"]), discrete(["p", "q"])
    pp = ParallelPair(MonotoneMap(A, B, ["p"]), MonotoneMap(A, B, ["q"]))
    wrong = MonotoneMap(B, B, ["p", "q"])
    assert coinserter_violations(pp, B, wrong, [nat(2)])


@given(posets(4))
def test_isomorphism_to_relabelled_copy(P):
    Q = P.relabel(lambda x: ("copy", x))
    iso = find_isomorphism(P, Q)
    assert iso is not None
    assert is_order_isomorphism(MonotoneMap(P, Q, [iso[x] for x in P.elements], check=False))


def test_non_isomorphic():
    assert find_isomorphism(chain([0, 1, 2]), v_poset()) is None


def test_generated_preorder_closes():
    B = discrete(list("abc"))
    pre = generated_preorder(B, [("a", "b"), ("b", "c")])
    assert pre.leq("a", "c")
