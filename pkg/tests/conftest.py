from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from gacalc import Multivector, get_algebra

#: criterion number -> "PASS ..." / "FAIL ..." line, filled by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def signatures(draw, max_n=6, min_n=1, degenerate=True):
    n = draw(st.integers(min_n, max_n))
    r = draw(st.integers(0, min(1, n))) if degenerate else 0
    q = draw(st.integers(0, n - r))
    return (n - q - r, q, r)


@st.composite
def rational_mvs(draw, sig, count=1, density=1.0):
    """``count`` exact multivectors of ``G(sig)``; ``density`` < 1 leaves most coefficients zero."""
    alg = get_algebra(*sig)
    out = []
    for _ in range(count):
        coeffs = []
        for _ in range(alg.dim):
            keep = density >= 1.0 or draw(st.floats(0, 1)) < density
            coeffs.append(draw(small_fractions) if keep else Fraction(0))
        out.append(Multivector(alg, coeffs))
    return out


def float_vector(alg, values):
    return Multivector.from_vector(alg, [float(v) for v in values])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
