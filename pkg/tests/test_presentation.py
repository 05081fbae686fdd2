from ordalg.finposet import discrete
from ordalg.monad import (FAIL, PASS, BoundedMonad, IdentityMonad, WordMonad,
                          associated_presentation, check_duality)


def test_identity_presentation_has_only_variables():
    P = associated_presentation(IdentityMonad(), 2)
    assert [n for n, _ in P.signature] == ["1:0", "2:0", "2:1"]
    # every axiom is an identity, and the projections are among them
    assert all(ax.kind == "eq" for ax in P.axioms)
    proj = [str(ax) for ax in P.axioms if ax.rhs.args is None]
    assert proj == ["(1:0 x0) = x0", "(2:0 x0 x1) = x0", "(2:1 x0 x1) = x1"]


def test_word_presentation_symbols():
    P = associated_presentation(WordMonad(2), 2)
    # one symbol per word of length <= 2 over n letters, n = 0, 1, 2
    assert len(P.signature.symbols) == 1 + 3 + 7
    assert ("2:01", 2) in P.signature.symbols
    # n is discrete, so the pointwise order adds no strict inequations
    assert {ax.kind for ax in P.axioms} == {"eq"}


def test_bottom_unit_order_axioms():
    P = associated_presentation(WordMonad(2, bottom_unit=True), 1)
    order = sorted(str(ax) for ax in P.axioms if ax.kind == "leq")
    assert order == ["(1:0 x0) <= (1:00 x0)", "(1:ε x0) <= (1:0 x0)", "(1:ε x0) <= (1:00 x0)"]


def test_projection_schema_can_be_dropped():
    with_p = associated_presentation(WordMonad(2), 1)
    without = associated_presentation(WordMonad(2), 1, projections=False)
    assert len(with_p.axioms) == len(without.axioms) + 1


def test_duality_word_pointwise():
    r = check_duality(WordMonad(2), 2, discrete(["a", "b"]))
    assert r.verdict == PASS
    assert r.details["classes"] == r.details["TX"] == 7


def test_duality_bounded():
    r = check_duality(BoundedMonad(), 1, discrete(["a"]), depth=1, subst_depth=1)
    assert r.verdict == PASS


def test_duality_fails_without_enough_depth():
    # depth 0 leaves only the generators
    r = check_duality(WordMonad(2), 2, discrete(["a", "b"]), depth=1, subst_depth=0, restrict=0)
    assert r.verdict == FAIL
