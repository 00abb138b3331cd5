import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import signatures
from gacalc import GAError, Signature, get_algebra
from gacalc.algebra import blade_product, graded_lex_bits


def word_product(a, b, metric):
    """Product of two basis blades given as ascending index tuples, by bubble sort and contraction."""
    word = list(a) + list(b)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
    out = []
    for idx in word:
        if out and out[-1] == idx:
            out.pop()
            sign *= metric[idx]
        else:
            out.append(idx)
    return tuple(out), sign


def indices(bits, n):
    return tuple(i + 1 for i in range(n) if bits >> i & 1)


def test_graded_lex_order():
    alg = get_algebra(3, 0, 0)
    assert alg.basis_names == ["e0", "e1", "e2", "e3", "e12", "e13", "e23", "e123"]
    assert graded_lex_bits(2) == [0, 1, 2, 3]
    assert list(alg.grade_positions(2)) == [4, 5, 6]


def test_conformal_names():
    alg = get_algebra(3, 1, 0)
    names = [alg.basis_name(i, conformal=True) for i in range(alg.dim)]
    assert names[:5] == ["e0", "n0", "e1", "e2", "ni"]
    assert "n0e1ni" in names and names[-1] == "n0e12ni"


def test_underscore_names_above_nine():
    alg = get_algebra(10, 0, 0)
    assert alg.basis_name(alg.position_of(1 | 1 << 9)) == "e1_10"
    assert alg.basis_name(alg.position_of(0b11)) == "e12"


@settings(max_examples=60, deadline=None)
@given(signatures(max_n=5))
def test_tables_match_word_oracle(sig):
    alg = get_algebra(*sig)
    s = Signature(*sig)
    metric = {i: s.metric(i) for i in range(1, s.n + 1)}
    res, signs = alg.table("gp")
    for i, j in itertools.product(range(alg.dim), repeat=2):
        word, sign = word_product(indices(alg.bits[i], s.n), indices(alg.bits[j], s.n), metric)
        expected_pos = alg.position_of(sum(1 << (k - 1) for k in word))
        assert res[i, j] == expected_pos
        assert signs[i, j] == sign


def test_on_the_fly_rows_match_scalar_rule():
    alg = get_algebra(6, 2, 1)
    assert alg.table() is None
    rng = np.random.default_rng(0)
    for i in rng.integers(0, alg.dim, 20):
        res, sgn = alg.row(int(i))
        for j in rng.integers(0, alg.dim, 20):
            bp = blade_product(int(alg.bits[i]), int(alg.bits[j]), alg.signature)
            assert res[j] == alg.position_of(bp.bits)
            assert sgn[j] == bp.coefficient


def test_grade_restricted_rows():
    alg = get_algebra(3, 0, 0)
    e1, e12 = alg.position_of(0b1), alg.position_of(0b11)
    res, sgn = alg.row(e1, "lc")
    assert sgn[e12] == 1 and res[e12] == alg.position_of(0b10)
    res, sgn = alg.row(e12, "lc")
    assert sgn[e1] == 0
    res, sgn = alg.row(e1, "outer")
    assert sgn[e1] == 0 and sgn[e12] == 0
    res, sgn = alg.row(e1, "inner")
    assert sgn[e1] == 1 and sgn[e12] == 1


def test_signature_parse_and_errors():
    assert Signature.parse("2,0,1") == Signature(2, 0, 1)
    assert str(Signature(4, 1, 0)) == "[4,1,0]"
    assert get_algebra("2,0,0") is get_algebra(2, 0, 0)
    with pytest.raises(GAError):
        Signature(0, 0, 0)
    with pytest.raises(GAError):
        Signature(-1, 2, 0)
    with pytest.raises(GAError):
        Signature.parse("1,2,3,4")
    with pytest.raises(GAError):
        get_algebra(2).table("bogus")
