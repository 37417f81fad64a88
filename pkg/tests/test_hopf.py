import random
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from poissonoperad.hopf import DimensionMismatch, Hopf, HopfElement, LieAlgebraSpec, random_element
from poissonoperad.suites import hopf_identities

H1 = Hopf(LieAlgebraSpec.abelian(1))
HEIS = Hopf(LieAlgebraSpec.heisenberg(1))
W2 = Hopf(LieAlgebraSpec.two_dim_nonabelian())


@pytest.mark.parametrize("n", range(7))
def test_binomial_coproduct_and_sign_antipode(n):
    # F[d]: Delta d^n = sum C(n,k) d^k (x) d^{n-k}, S(d^n) = (-1)^n d^n
    D = H1.coproduct({(n,): Fraction(1)})
    assert D == {((k,), (n - k,)): Fraction(comb(n, k)) for k in range(n + 1)}
    assert H1.antipode({(n,): Fraction(1)}) == {(n,): Fraction((-1) ** n)}


def test_twisted_right_small():
    # (id (x) S) Delta(d) = d (x) 1 - 1 (x) d
    assert H1.twisted_right({(1,): Fraction(1)}) == {((1,), (0,)): 1, ((0,), (1,)): -1}


t = sympy.Symbol("t")


def _weyl(H, v, poly):
    """d0 -> 1, d1 -> d/dt, d2 -> t on polynomials in t; monomials act right to left."""
    out = 0
    for (i0, i1, i2), c in v.items():
        p = poly
        for _ in range(i2):
            p = t * p
        p = sympy.diff(p, t, i1) if i1 else p
        out += c * p
    return sympy.expand(out)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_heisenberg_product_against_weyl_representation(seed):
    rng = random.Random(seed)
    a = random_element(HEIS, rng, 3).terms
    b = random_element(HEIS, rng, 3).terms
    poly = sympy.Poly([rng.randint(-3, 3) for _ in range(6)], t).as_expr()
    assert _weyl(HEIS, HEIS.mul(a, b), poly) == _weyl(HEIS, a, _weyl(HEIS, b, poly))


def test_heisenberg_commutator():
    x, y = HEIS.gen(1), HEIS.gen(2)
    comm = {k: v for k, v in HEIS.mul(x, y).items()}
    for k, v in HEIS.mul(y, x).items():
        comm[k] = comm.get(k, 0) - v
    assert {k: v for k, v in comm.items() if v} == HEIS.gen(0)


def test_nonabelian_commutator():
    # [d0, d1] = d1
    a = HopfElement(W2, W2.gen(0))
    b = HopfElement(W2, W2.gen(1))
    assert a * b - b * a == b


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([H1, HEIS, W2]))
def test_coproduct_and_antipode_are_multiplicative(seed, H):
    rng = random.Random(seed)
    a = random_element(H, rng, 3)
    b = random_element(H, rng, 3)
    assert (a * b).coproduct() == a.coproduct() * b.coproduct()
    assert (a * b).antipode() == b.antipode() * a.antipode()
    assert a.antipode().antipode() == a


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([H1, Hopf(LieAlgebraSpec.abelian(3)), HEIS, W2]))
def test_identities_hold(seed, H):
    h = random_element(H, random.Random(seed), 4).terms
    assert hopf_identities(H, h) == []


def test_iterated_coproduct_counit_legs():
    h = {(2, 1, 0): Fraction(3)}
    D3 = HEIS.iterated_coproduct(h, 2)  # three legs
    # contracting the first two legs with the counit leaves h
    back = {K[2]: c for K, c in D3.items() if K[0] == K[1] == HEIS.zero_index}
    assert back == h


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        HopfElement(H1, {(1, 0): 1})
    with pytest.raises(DimensionMismatch):
        HopfElement(H1, {}) + HopfElement(HEIS, {})


def test_lie_json_roundtrip_and_jacobi_check():
    lie = LieAlgebraSpec.heisenberg(1)
    assert LieAlgebraSpec.from_json(lie.to_json()) == lie
    with pytest.raises(ValueError):
        # [d0,d1]=d2, [d1,d2]=d0, [d0,d2]=d0 violates Jacobi
        LieAlgebraSpec(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})
