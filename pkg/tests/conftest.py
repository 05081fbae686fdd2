import sys

import numpy as np
from hypothesis import settings
from hypothesis import strategies as st

from ordalg.finposet import FinPoset, transitive_closure


@st.composite
def posets(draw, max_size=4, labels=None):
    """Random finite posets: an upper-triangular relation, closed, then shuffled."""
    n = draw(st.integers(0, max_size))
    m = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            m[i, j] = draw(st.booleans())
    m = transitive_closure(m)
    perm = draw(st.permutations(range(n)))
    m = m[np.ix_(perm, perm)]
    els = list(labels[:n]) if labels else [f"p{i}" for i in range(n)]
    return FinPoset(els, m)


settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=int):
        terminalreporter.write_line(results[key])
