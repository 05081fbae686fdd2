import itertools

import pytest
from hypothesis import given, settings

from ordalg.bank import bank, two_chain
from ordalg.finposet import FinPoset, chain, discrete
from ordalg.io import InputError, algebra_to_json, load_algebra, load_presentation
from ordalg.sexpr import ParseError
from ordalg.terms import BOUNDS, MONOID, parse_term, term_poset
from ordalg.variety import (BUILTINS, MONOID_AXIOMS, RIGHT_FACTOR, UNIT_BELOW, Inequation,
                            OrderedAlgebra, Presentation, bottom_unit_word_matrix,
                            check_admissible, free_bounded_poset, free_word_bottom_unit,
                            free_word_pointwise, in_variety, UndefinedOperation, recognize, satisfies,
                            word_leq_bottom_unit, word_of, words_up_to)

from conftest import posets


def bounded_two():
    C = chain(["0", "1"])
    return OrderedAlgebra(BOUNDS, C, {"0": {(): "0"}, "1": {(): "1"}})


def test_parse_inequation():
    ineq = Inequation.parse("leq 0 x0", BOUNDS)
    assert ineq.kind == "leq" and ineq.n_vars == 1
    assert Inequation.parse("(eq (mul x0 e) x0)", MONOID).kind == "eq"
    with pytest.raises(ParseError):
        Inequation.parse("lt x0 x1", MONOID)
    with pytest.raises(ValueError):
        Inequation.parse("leq y x0", MONOID)


def test_satisfies_bounded_two():
    A = bounded_two()
    assert satisfies(A, Inequation.parse("leq 0 x0", BOUNDS))
    ok, w = satisfies(A, Inequation.parse("leq x0 0", BOUNDS), witness=True)
    assert not ok and w == {"x0": "1"}


def test_two_chain_max_is_an_ordered_monoid():
    C = chain([0, 1])
    A = OrderedAlgebra(MONOID, C, {"mul": lambda a, b: max(a, b), "e": lambda: 0})
    assert A.monotonicity_violations() == []
    assert in_variety(A, Presentation(MONOID, MONOID_AXIOMS + (UNIT_BELOW, RIGHT_FACTOR)))
    B = OrderedAlgebra(MONOID, C, {"mul": lambda a, b: min(a, b), "e": lambda: 1})
    assert in_variety(B, Presentation(MONOID, MONOID_AXIOMS))
    assert not satisfies(B, UNIT_BELOW)


def test_monotonicity_violation_found():
    C = chain([0, 1])
    A = OrderedAlgebra(MONOID, C, {"mul": lambda a, b: 1 - a, "e": lambda: 0})
    assert A.monotonicity_violations()


def blocks_leq(leq, u, w):
    """u <= w iff w splits into len(u) nonempty consecutive blocks with a
    letter above u[i] in block i (any leftover letters join the last block)."""
    if not u:
        return True
    n = len(w)
    for cuts in itertools.combinations(range(1, n), len(u) - 1):
        bounds = (0,) + cuts + (n,)
        if all(any(leq(a, x) for x in w[bounds[i]:bounds[i + 1]]) for i, a in enumerate(u)):
            return True
    return False


@settings(max_examples=25)
@given(posets(3, labels=["a", "b", "c"]))
def test_bottom_unit_order_matches_block_oracle(X):
    words = words_up_to(X.elements, 3)
    for u, w in itertools.product(words, repeat=2):
        assert word_leq_bottom_unit(X.leq, u, w) == blocks_leq(X.leq, u, w)


def test_bottom_unit_examples():
    X = discrete(["x", "y"])
    assert word_leq_bottom_unit(X.leq, (), ("x",))
    assert word_leq_bottom_unit(X.leq, ("x",), ("y", "x"))
    assert not word_leq_bottom_unit(X.leq, ("x", "x"), ("x", "y"))


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_normal_forms_are_models(name):
    # the normal form satisfies its own axioms wherever operations are defined
    v = BUILTINS[name]
    for X in bank(2):
        A = v.normal_form(X, 2)
        assert A.monotonicity_violations() == []
        for ax in v.presentation.axioms:
            assert satisfies_where_defined(A, ax)


def satisfies_where_defined(A, ax):
    for d in ax.directed():
        for vals in itertools.product(A.carrier.elements, repeat=d.n_vars):
            f = {f"x{i}": v for i, v in enumerate(vals)}
            try:
                lhs, rhs = A.evaluate(d.lhs, f), A.evaluate(d.rhs, f)
            except UndefinedOperation:
                continue
            if not A.leq(lhs, rhs):
                return False
    return True


def test_free_bounded_is_three_chain_on_a_point():
    A = free_bounded_poset(discrete(["x"]))
    assert [str(t) for t in A.carrier.elements] == ["0", "x", "1"]
    assert len(A.carrier.hasse_edges()) == 2


def test_word_normal_form_sizes():
    assert len(free_word_pointwise(two_chain(), 2).carrier) == 7
    assert len(free_word_bottom_unit(two_chain(), 2).carrier) == 7
    m = bottom_unit_word_matrix(two_chain(), words_up_to(("x0", "x1"), 2))
    assert m[0].all()  # the empty word is least


def test_word_of_evaluates():
    t = parse_term("(mul (mul x e) (mul y x))", MONOID)
    assert word_of(t) == ("x", "y", "x")


def test_admissibility():
    X = two_chain()
    assert check_admissible(term_poset(MONOID, X, 1), MONOID)
    terms = term_poset(MONOID, X, 1).elements
    # the bare variable order without the induced order on products
    flat = FinPoset(terms, [[a is b or (a.args is None and b.args is None and X.leq(a.head, b.head))
                             for b in terms] for a in terms])
    ok, w = check_admissible(flat, MONOID, witness=True)
    assert not ok and w[0].args is not None


def test_recognize_builtins():
    for name, v in BUILTINS.items():
        assert recognize(v.presentation) is v
    assert recognize(Presentation(MONOID, MONOID_AXIOMS + (RIGHT_FACTOR,))) is None


def test_presentation_json_roundtrip():
    P = Presentation(MONOID, MONOID_AXIOMS + (UNIT_BELOW,), "mbu")
    Q = load_presentation(P.to_json())
    assert Q.same_theory_text(P) and Q.name == "mbu"
    assert load_presentation("ordered-monoid").same_theory_text(BUILTINS["ordered-monoid"].presentation)


def test_algebra_json_roundtrip():
    A = bounded_two()
    B = load_algebra(algebra_to_json(A))
    assert B.carrier.elements == A.carrier.elements
    assert satisfies(B, Inequation.parse("leq x0 1", BOUNDS))


def test_algebra_loader_rejects_bad_tables():
    C = {"elements": [0, 1], "leq": [[0, 1]]}
    sig = {"symbols": [{"name": "f", "arity": 1}]}
    with pytest.raises(InputError, match="undefined"):
        load_algebra({"signature": sig, "carrier": C, "ops": {"f": [[0, 1]]}})
    with pytest.raises(InputError, match="not monotone"):
        load_algebra({"signature": sig, "carrier": C, "ops": {"f": [[0, 1], [1, 0]]}})
    with pytest.raises(InputError, match="not in the carrier"):
        load_algebra({"signature": sig, "carrier": C, "ops": {"f": [[0, 2], [1, 2]]}})


@pytest.mark.parametrize("X", bank(2), ids=str)
def test_pointwise_words_satisfy_monoid_axioms(X):
    A = free_word_pointwise(X, 3)
    for ax in MONOID_AXIOMS:
        assert satisfies_where_defined(A, ax)
