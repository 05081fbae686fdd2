import itertools

import pytest

from ordalg.bank import bank, two_chain, v_poset
from ordalg.finposet import (FinPoset, chain, discrete, find_isomorphism, hom_maps,
                             transitive_closure)
from ordalg.monad import (FAIL, FAILS, INCONCLUSIVE, PASS, PRESERVES, STUDIED_MONADS,
                          ContinuationMonad, CtxPartialMonad, PlusStarMonad, TermMonad, WordMonad,
                          check_lifting, check_monad_laws, check_power_functor,
                          check_strongly_finitary, get_monad, sf_data)
from ordalg.monad.catalog import CATALOG_NAMES
from ordalg.terms import app, var


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_laws_on_small_bank(name):
    T = get_monad(name)
    r = check_monad_laws(T, bank(2))
    assert r.verdict == PASS, r.details["examples"]
    assert 0 < r.details["coverage"] <= 1


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_objects_are_posets_and_unit_is_monotone(name):
    T = get_monad(name)
    for X in bank(3):
        TX = T.obj(X)
        FinPoset(TX.elements, TX.matrix)  # antisymmetry is checked on construction
        eta = T.eta(X)
        eta.validate()


class BrokenMult(WordMonad):
    """Flattening that drops the last inner word: breaks the unit law."""

    def mult(self, Y, aa):
        if len(aa) > 1:
            aa = aa[:-1]
        return super().mult(Y, aa)


class ReversingMult(WordMonad):
    """Flattening that reverses the outer word: unit laws hold, associativity
    and monotonicity arguments do not."""

    def mult(self, Y, aa):
        return super().mult(Y, tuple(reversed(aa)))


def test_fault_injection_breaks_laws():
    r = check_monad_laws(BrokenMult(2), bank(2))
    assert r.verdict == FAIL and "μ" in r.witness
    r2 = check_monad_laws(ReversingMult(2), bank(2))
    assert r2.verdict == FAIL


class SwappedOrder(WordMonad):
    """Words ordered in reverse: η stops being monotone on the 2-chain."""

    def leq(self, Y, a, b):
        return super().leq(Y, b, a)

    def order_matrix(self, Y, elems):
        return super().order_matrix(Y, elems).T


def test_fault_injection_breaks_monotonicity():
    r = check_monad_laws(SwappedOrder(2), [two_chain()])
    assert r.verdict == FAIL and "η not monotone" in r.witness


def test_plus_star_order():
    T = PlusStarMonad(2)
    C = two_chain()
    plus = app("+", var("x0"), var("x1"))
    star = app("*", var("x0"), var("x1"))
    assert T.leq(C, plus, star)
    assert not T.leq(C, app("+", var("x1"), var("x0")), app("*", var("x1"), var("x0")))
    assert T.show(plus) == "x0+x1"


def test_ctx_partial_carrier():
    T = CtxPartialMonad(1)
    shown = [T.show(a) for a in T.obj(two_chain()).elements]
    assert shown == ["x0", "x1", "α(x0,x0)", "α(x0,x1)", "α(x1,x1)"]
    assert len(T.obj(discrete(["x0", "x1"]))) == 4


def test_sf_verdicts_on_two_chain():
    C = two_chain()
    r = check_strongly_finitary(get_monad("ctx-partial"), C)
    assert r.verdict == FAILS
    assert r.witness == "α(x0,x1) in TP is missing from the image of Tc"
    r = check_strongly_finitary(get_monad("plus-star"), C)
    assert r.verdict == FAILS and r.witness.startswith("x0+x1 < x0*x1")
    for name in ("identity", "term", "word-pointwise", "word-bottom-unit", "bounded-poset"):
        assert check_strongly_finitary(get_monad(name), C).verdict == PRESERVES


def zero_to_one_variants(t):
    """Terms obtained from t by changing some occurrences of x0 into x1."""
    if t.args is None:
        return {t, var("x1")} if t.head == "x0" else {t}
    return {app(t.head, *args) for args in itertools.product(*map(zero_to_one_variants, t.args))}


def test_plus_star_coinserter_order_by_description():
    # the plus-star order of T2 (2 discrete), plus t below every x0 -> x1
    # variant of t, closed under both operations and transitivity; the
    # t+s <= t*s rule applies only to t <= s in T2 itself
    from test_terms import plus_star_fixpoint
    T = PlusStarMonad(2)
    d = sf_data(T, two_chain())
    terms = list(d.Tn.elements)
    idx = {t: i for i, t in enumerate(terms)}
    rel = plus_star_fixpoint(terms, d.pair.cod)
    for t in terms:
        for s in zero_to_one_variants(t):
            rel[idx[t], idx[s]] = True
    apps = [t for t in terms if t.args]
    while True:
        new = transitive_closure(rel)
        for s, t in itertools.product(apps, repeat=2):
            if s.head == t.head and all(new[idx[a], idx[b]] for a, b in zip(s.args, t.args)):
                new[idx[s], idx[t]] = True
        if (new == rel).all():
            break
        rel = new
    got = [[d.Q.leq(d.quotient(s), d.quotient(t)) for t in terms] for s in terms]
    assert (rel == got).all()


def test_sf_on_discrete_posets_is_trivial():
    # the canonical pair of a discrete poset only has reflexive pairs
    for name in CATALOG_NAMES:
        T = get_monad(name)
        assert check_strongly_finitary(T, discrete(["a", "b"])).verdict == PRESERVES


def test_sf_at_budget_zero_is_inconclusive():
    r = check_strongly_finitary(TermMonad(0), two_chain())
    assert r.verdict == INCONCLUSIVE


def test_sf_data_shapes():
    d = sf_data(WordMonad(2), v_poset())
    assert len(d.Q) == len(d.TP)
    assert d.pair.dom.is_discrete() and d.pair.cod.is_discrete()


@pytest.mark.parametrize("X", bank(3), ids=str)
def test_power_functor(X):
    assert check_power_functor(X, 2).verdict == PASS
    assert check_power_functor(X, 3).verdict == PASS


@pytest.mark.parametrize("name", [n for n in STUDIED_MONADS if n != "ctx-partial"])
def test_liftings(name):
    T = get_monad(name)
    for X in bank(3):
        assert check_lifting(T, X).verdict == PASS


def test_ctx_partial_is_not_a_lifting():
    r = check_lifting(get_monad("ctx-partial"), two_chain())
    assert r.verdict == FAIL
    assert "α(x0,x1)" in r.witness


def test_continuation_monad_is_not_a_lifting():
    # hom-based carriers change size when the order of X is forgotten
    T = ContinuationMonad(chain([0, 1]))
    r = check_lifting(T, two_chain())
    assert r.verdict == FAIL and r.witness.startswith("|TX| != |TX0|")


def test_functor_on_arrows_composes():
    T = WordMonad(2)
    X, Y = two_chain(), v_poset()
    for f, g in itertools.product(hom_maps(X, Y), hom_maps(Y, X)):
        assert T.on_arrow(g @ f) == T.on_arrow(g) @ T.on_arrow(f)


def test_word_monads_on_two_chain():
    C = two_chain()
    pw, bu = WordMonad(2).obj(C), WordMonad(2, bottom_unit=True).obj(C)
    assert len(pw) == len(bu) == 7
    assert len(pw.pairs()) < len(bu.pairs())
    assert find_isomorphism(pw, bu) is None
