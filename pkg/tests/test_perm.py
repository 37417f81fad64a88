import itertools

import pytest
from hypothesis import given, strategies as st

from poissonoperad import perm as P


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(tuple)


def test_cycles_roundtrip():
    p = P.from_cycles("(12)(354)", 5)
    assert p == (2, 1, 5, 3, 4)
    assert P.from_cycles(P.to_cycles(p), 5) == p
    assert P.to_cycles(P.identity(3)) == "()"


def test_compose_is_function_composition():
    s, t = (2, 3, 1), (1, 3, 2)
    assert P.compose(s, t) == tuple(s[t[i] - 1] for i in range(3))


def test_shuffles_count_and_shape():
    for m, n in [(0, 3), (2, 2), (3, 1)]:
        sh = P.shuffles(m, n)
        assert len(sh) == len(list(itertools.combinations(range(m + n), m)))
        for s in sh:
            assert list(s[:m]) == sorted(s[:m]) and list(s[m:]) == sorted(s[m:])


def test_block_example():
    # sigma=(12), blocks of sizes 2 and 1: the 2-block moves after the 1-block
    assert P.block((2, 1), [(1, 2), (1,)]) == (2, 3, 1)
    assert P.circ((1, 2), 1, (2, 1)) == (2, 1, 3)


def test_check_rejects():
    with pytest.raises(ValueError):
        P.check((1, 1))


@given(perms(5), perms(5))
def test_koszul_is_a_character(s, t):
    # sign of composite = product of signs for all-odd parities
    odd = [1] * 5
    assert P.koszul_sign(P.compose(s, t), odd) == P.koszul_sign(s, odd) * P.koszul_sign(t, odd)


@given(perms(6))
def test_inverse(s):
    assert P.compose(s, P.inverse(s)) == P.identity(6)


@given(perms(3), st.integers(1, 3), perms(2), perms(2))
def test_circ_is_multiplicative(s1, i, t1, t2):
    # (s1 o_i t1)(s2 o_{...}) sanity: circ with identity outer block is a block embedding
    left = P.circ(P.identity(3), i, P.compose(t1, t2))
    right = P.compose(P.circ(P.identity(3), i, t1), P.circ(P.identity(3), i, t2))
    assert left == right
    assert P.circ(s1, i, P.identity(2)) == P.block(s1, [(1,)] * (i - 1) + [(1, 2)] + [(1,)] * (3 - i))
