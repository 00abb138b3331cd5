import json
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rational_mvs, signatures
from gacalc import (GAError, Multivector, MvMatrix, NotInvertibleError, RationalFunction,
                    SignatureMismatchError, block, get_algebra, mm_adjoint, mm_solve)

G11 = get_algebra(1, 1, 0)


def e(alg, k):
    return Multivector.blade(alg, k, F(1))


def listing_matrix():
    e1, e2 = e(G11, 1), e(G11, 2)
    return MvMatrix([[e1, e1 + e2], [e2, e2 - e1]])


def test_listing_inverse_is_exact():
    M = listing_matrix()
    Minv = M ** -1
    assert all(x.exact for r in Minv.entries for x in r)
    assert M * Minv == MvMatrix.identity(G11, 2)
    assert (M * Minv).to_text().split("\n")[0].split() == ["(", "1", ")*e0", "0"]


def test_float_inverse_and_solve():
    alg = get_algebra(2, 0, 0)
    rng = np.random.default_rng(0)
    M = MvMatrix([[Multivector.rand(alg, rng) + 2 for _ in range(3)] for _ in range(3)])
    assert (M * M.inverse()).equals(MvMatrix.identity(alg, 3), tol=1e-9)
    b = [Multivector.rand(alg, rng) for _ in range(3)]
    x = M.solve(b)
    assert (M * x).equals(MvMatrix.column(b), tol=1e-9)


def test_singular_matrix():
    e1 = e(G11, 1)
    M = MvMatrix([[e1, e1], [e1, e1]])
    with pytest.raises(NotInvertibleError, match="not invertible"):
        M.inverse()
    one = e(get_algebra(2, 0, 0), 0)
    with pytest.raises(NotInvertibleError):
        MvMatrix([[one, 0 * one], [0 * one, 0 * one]]).inverse()


def test_shape_and_signature_errors():
    M = listing_matrix()
    with pytest.raises(GAError):
        M * MvMatrix([[e(G11, 1)]] * 3)
    with pytest.raises(SignatureMismatchError):
        M + MvMatrix([[e(get_algebra(2), 1)] * 2] * 2)
    with pytest.raises(GAError):
        MvMatrix([[e(G11, 1)], [e(G11, 1), e(G11, 2)]])
    with pytest.raises(GAError):
        MvMatrix([[e(G11, 1), e(G11, 2)]]).inverse()
    with pytest.raises(GAError):
        M ** -2


def test_scalars_are_lifted_and_json_round_trip():
    M = MvMatrix([[e(G11, 1), 2], [0, e(G11, 3)]])
    assert M[0, 1] == 2 * e(G11, 0)
    back = MvMatrix.from_json(json.loads(json.dumps(M.to_json())))
    assert back == M


def test_rational_function_entries():
    alg = get_algebra(2)
    s = RationalFunction.s()
    z = Multivector(alg, [1 + s, RationalFunction.const(F(1, 10)), RationalFunction(), RationalFunction()])
    one = Multivector.scalar(alg, RationalFunction.const(1))
    M = MvMatrix([[z, one], [one, z]])
    assert M * M.inverse() == MvMatrix.identity(alg, 2).map(lambda x: x * RationalFunction.const(1))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_block_homomorphism_and_adjoint(data):
    sig = data.draw(signatures(max_n=3))
    n = data.draw(st.integers(1, 3))
    flat = data.draw(rational_mvs(sig, 2 * n * n))
    M = MvMatrix([flat[i * n:(i + 1) * n] for i in range(n)])
    N = MvMatrix([flat[n * n + i * n:n * n + (i + 1) * n] for i in range(n)])
    assert (block(M * N) == block(M).dot(block(N))).all()
    assert mm_adjoint(M * N) == mm_adjoint(N) * mm_adjoint(M)
    assert (M * N).T.T == M * N


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_exact_solve(data):
    sig = data.draw(signatures(max_n=2))
    flat = data.draw(rational_mvs(sig, 6))
    M = MvMatrix([flat[0:2], flat[2:4]])
    b = flat[4:6]
    try:
        x = mm_solve(M, b)
    except NotInvertibleError:
        return
    assert M * x == MvMatrix.column(b)
