import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from poissonoperad import operad as O
from poissonoperad import perm as P
from poissonoperad.graphs import Graph, edgeless, enumerate_acyclic
from poissonoperad.hmodule import FREE, ModuleSpec
from poissonoperad.hopf import LieAlgebraSpec, add_into
from poissonoperad.pseudoalg import build_affine, build_boson, build_fermion, build_type_K, build_type_W, build_W
from poissonoperad.suites import operad_axiom_instance

EO = ModuleSpec(LieAlgebraSpec.abelian(1), [("e", 0), ("o", 1)], kind=FREE)
H = EO.hopf
Z = H.zero_index
e, o = 0, 1


def mono(l, k=0):
    return ((l, (k,)),)


def _act(h, m):
    return EO.act_basis_vec(h, {m: Fraction(1)})


def _mul(a, b):
    return H.mul({a: Fraction(1)}, {b: Fraction(1)})


def _emit(raw, slots, ymono, coef):
    for tup, c in H.tensor(*slots).items():
        add_into(raw, (tup, ymono), coef * c)


# --- worked example: Y o_1 X on "6; 1->3, 3->4, 2->5", partition (3,1,1,1) ------------------

GAMMA1 = Graph.parse("6; 1->3, 3->4, 2->5")
X1_INNER = Graph.parse("3; 1->3")
Y1_OUTER = Graph.parse("4; 1->2, 1->3")


def _example1_elements():
    kx = frozenset({(1, 3)})
    X = O.free_element(EO, 3, 1, {kx: {(e, e, e): {(((2,),), mono(o)): Fraction(3)},
                                      (e, o, e): {(((1,),), mono(e)): Fraction(-1)}}},
                       choices={(kx, 0): 1}, name="X")
    ky = frozenset({(1, 2), (1, 3)})
    Y = O.free_element(EO, 4, 1, {ky: {(o, e, e, e): {(((1,),), mono(e)): Fraction(2)},
                                      (e, e, o, e): {(((0,),), mono(o)): Fraction(5)},
                                      (e, e, e, e): {(((2,),), mono(e)): Fraction(1)}}},
                       choices={(ky, 0): 1}, name="Y")
    return X, Y


def oracle_example1(Y, X, v):
    """(f1(1) g1(1) (x) f2(1) g1(2) (x) g2) (x)_H y(x(v1 v2 v3), f1(-2) v4, f2(-2) v5, v6)."""
    raw = {}
    for (F, xm), c in X.value(X1_INNER, v[:3]).items():
        f1, f2 = F[0], Z
        for (f1a, f1b), c1 in H.twisted_right({f1: 1}).items():
            for (f2a, f2b), c2 in H.twisted_right({f2: 1}).items():
                w = ({xm: Fraction(1)}, _act(f1b, v[3]), _act(f2b, v[4]), {v[5]: Fraction(1)})
                for (G, ym), d in Y.eval_vec(Y1_OUTER, w).items():
                    g1, g2 = G[0], Z
                    for (ga, gb), d2 in H.iterated_coproduct({g1: 1}, 1).items():
                        _emit(raw, (_mul(f1a, ga), _mul(f2a, gb), {g2: 1}), ym, c * c1 * c2 * d * d2)
    return EO.normalize(raw, 3)


@pytest.mark.parametrize("inputs", [
    (mono(e), mono(e), mono(e), mono(e), mono(e), mono(e)),
    (mono(e), mono(e), mono(e, 2), mono(e, 1), mono(e), mono(e, 1)),
    (mono(e), mono(o), mono(e, 1), mono(e, 3), mono(e), mono(e)),
])
def test_circle_one_matches_worked_example(inputs):
    X, Y = _example1_elements()
    got = O.circle(Y, X, 1).value(GAMMA1, inputs)
    assert got and got == oracle_example1(Y, X, inputs)


def test_circle_one_example_is_not_vacuous():
    X, Y = _example1_elements()
    v = (mono(e), mono(e), mono(e, 1), mono(e), mono(e), mono(e))
    assert O.circle(Y, X, 1).value(GAMMA1, v)


# --- worked example: Y o_4 X on "7; 1->5, 3->4, 6->7" --------------------------------

GAMMA2 = Graph.parse("7; 1->5, 3->4, 6->7")
Y2_OUTER = Graph.parse("5; 1->4, 3->4, 4->5")


def _example2_elements():
    X = O.free_element(EO, 3, 1, {frozenset(): {(e, e, e): {(((2,), (1,)), mono(o)): Fraction(1)},
                                                (o, e, e): {(((1,), (0,)), mono(e)): Fraction(2)}}},
                       name="X")
    ky = frozenset({(1, 4), (3, 4), (4, 5)})
    Y = O.free_element(EO, 5, 0, {ky: {(e, e, e, o, e): {(((1,),), mono(e)): Fraction(3)},
                                      (o, e, e, e, e): {(((2,),), mono(e)): Fraction(-1)},
                                      (e, e, e, e, e): {(((1,),), mono(o)): Fraction(1)},
                                      (e, o, e, o, e): {(((0,),), mono(e)): Fraction(7)}}},
                       choices={(ky, 0): 0}, name="Y")
    return X, Y


def oracle_example2(Y, X, v):
    """sign * (f2(1) g1(2) (x) g2 (x) f1(1) g1(1) (x) f3(1) g1(3)) (x)_H
    y(f2(-2) v1, v2, f1(-2) v3, x(v4 v5 v6), f3(-2) v7)."""
    pbar = lambda m: 1 - EO.parity(m)
    sign = -1 if X.parity * (pbar(v[0]) + pbar(v[1]) + pbar(v[2])) % 2 else 1
    raw = {}
    for (F, xm), c in X.value(edgeless(3), v[3:6]).items():
        f = F + (Z,)
        tw = [H.twisted_right({fi: 1}).items() for fi in f]
        for ((f1a, f1b), c1), ((f2a, f2b), c2), ((f3a, f3b), c3) in itertools.product(*tw):
            w = (_act(f2b, v[0]), {v[1]: Fraction(1)}, _act(f1b, v[2]), {xm: Fraction(1)}, _act(f3b, v[6]))
            for (G, ym), d in Y.eval_vec(Y2_OUTER, w).items():
                g1, g2 = G[0], Z
                for (ga, gb, gc), d2 in H.iterated_coproduct({g1: 1}, 2).items():
                    slots = (_mul(f2a, gb), {g2: 1}, _mul(f1a, ga), _mul(f3a, gc))
                    _emit(raw, slots, ym, sign * c * c1 * c2 * c3 * d * d2)
    return EO.normalize(raw, 4)


@pytest.mark.parametrize("inputs", [
    (mono(e), mono(e), mono(e), mono(e), mono(e), mono(e), mono(e)),
    (mono(e, 1), mono(o), mono(e), mono(e), mono(e), mono(e), mono(e)),
    (mono(o), mono(e), mono(e), mono(o), mono(e), mono(e), mono(e)),
    (mono(e), mono(e), mono(e), mono(e, 2), mono(e), mono(e, 1), mono(e)),
])
def test_circle_k_matches_worked_example(inputs):
    X, Y = _example2_elements()
    got = O.circle(Y, X, 4).value(GAMMA2, inputs)
    assert got and got == oracle_example2(Y, X, inputs)


def test_circle_k_example_sign_and_nonvacuous():
    X, Y = _example2_elements()
    v = (mono(e), mono(e), mono(e), mono(e), mono(e), mono(e), mono(e))
    val = O.circle(Y, X, 4).value(GAMMA2, v)
    assert val and val == oracle_example2(Y, X, v)


def test_cyclic_clasp_gives_zero():
    X, Y = _example2_elements()
    # clasping 4..6 turns 1->4 and 1->5 into a double edge
    g = Graph.parse("7; 1->4, 1->5, 6->7")
    v = (mono(e),) * 7
    assert O.circle(Y, X, 4).value(g, v) == {}


# --- the box product on arity 2 ---------------------------------------------------------------

@pytest.mark.parametrize("builder", [build_boson, build_fermion, build_affine])
def test_box_product_expansion(builder):
    X = O.poisson_to_master(builder()).X
    rhs = O.linear_combination([(1, O.circle(X, X, 1)), (1, O.circle(X, X, 2)),
                                (1, O.symmetric_action(O.circle(X, X, 2), (2, 1, 3)))])
    probes = O.probe_tuples(X.module, 3, with_degree_two=False)
    assert O.compare(O.box_product(X, X), rhs, enumerate_acyclic(3), probes) == []


def test_box_with_arity_zero_is_zero():
    M = build_boson().module
    v = O.quotient_element(M, M.parse("u"))
    assert O.box_product(v, O.unit(M)).arity == 0
    assert O.compare(O.box_product(v, O.unit(M)), O.zero(M, 0), [edgeless(0)], [()]) == []


def test_bracket_supersymmetry():
    spec = build_boson()
    M = spec.module
    rng = random.Random(3)
    X = O.poisson_to_master(spec).X
    for _ in range(4):
        f = O.random_derivation(M, rng)
        a = O.bracket(X, f)
        b = O.bracket(f, X)
        s = -1 if (X.parity * f.parity) % 2 else 1
        probes = O.probe_tuples(M, 2)
        assert O.compare(a, O.linear_combination([(-s, b)]), enumerate_acyclic(2), probes) == []


# --- master elements ------------------------------------------------------------------------

POISSON = {"boson": build_boson, "fermion": build_fermion, "affine": build_affine,
           "type_W": lambda: build_type_W(beta={(0, 0): {0: 1}})}


@pytest.mark.parametrize("name", POISSON)
def test_master_squares_to_zero(name):
    master = O.poisson_to_master(POISSON[name]())
    assert O.check_master(master) == []


def test_master_for_lie_pseudoalgebras():
    for spec in (build_W(), build_W(LieAlgebraSpec.two_dim_nonabelian()), build_type_K(1)):
        assert O.check_master(O.poisson_to_master(spec)) == []


@pytest.mark.parametrize("name", POISSON)
def test_master_invariance_cycles_linearity(name):
    master = O.poisson_to_master(POISSON[name]())
    X, M = master.X, master.module
    probes = O.probe_tuples(M, 2)
    assert O.invariance_residuals(X, probes) == []
    cyc = [Graph(2, ((1, 2), (2, 1))), Graph(3, ((1, 2), (2, 3), (3, 1)))]
    assert O.check_cycle_conditions(X, cyc[:1], probes) == []
    for Gr in enumerate_acyclic(2):
        for v in probes:
            assert O.check_h_linearity(X, Gr, v, M.hopf.gen(0)) == []


@pytest.mark.parametrize("name", POISSON)
def test_master_roundtrip(name):
    spec = POISSON[name]()
    master = O.poisson_to_master(spec)
    prod, br = O.master_to_poisson(master)
    M = spec.module
    for (a, b), T in br.items():
        assert T == spec.table.get((a, b), {})
        ga, gb = M.gen_vec(M.names[a]), M.gen_vec(M.names[b])
        assert prod[(a, b)] == M.mul(ga, gb)


def test_master_components():
    spec = build_boson()
    X = O.poisson_to_master(spec).X
    u = ((0, (0,)),)
    assert X.value(O.EDGELESS2, (u, u)) == spec.bracket_mono(u, u)
    assert X.value(O.EDGE12, (u, u)) == {((), ((0, (0,)), (0, (0,)))): 1}
    assert X.value(O.EDGE21, (u, u)) == {((), ((0, (0,)), (0, (0,)))): -1}
    psi = ((0, (0,)),)
    Xf = O.poisson_to_master(build_fermion()).X
    # (-1)^{p(a)} sign for an odd first argument
    assert Xf.value(O.EDGELESS2, (psi, psi)) == {k: -c for k, c in build_fermion().bracket_mono(psi, psi).items()}


@pytest.mark.parametrize("kind", ["jacobi", "leibniz", "associativity"])
def test_negative_controls_hit_their_case(kind):
    res = O.check_master(O.negative_control(kind))
    assert res and {r["case"] for r in res} == {kind}


def test_check_master_parallel_matches_serial():
    master = O.negative_control("leibniz")
    assert O.check_master(master, jobs=4) == O.check_master(master, jobs=1)


# --- operad axioms ---------------------------------------------------------------------------

def _boson_pool(rng):
    spec = build_boson()
    M = spec.module
    X = O.poisson_to_master(spec).X
    return [O.unit(M), X, O.random_derivation(M, rng), O.random_quotient_element(M, rng),
            O.random_weight_map(M, rng), O.symmetric_action(X, (2, 1))], [m for m in M.monomials_up_to(2) if m]


def _free_pool(rng):
    W = build_W()
    M = W.module
    X = O.poisson_to_master(W).X
    pool = [O.unit(M), X] + [O.random_free_element(M, rng, n) for n in (0, 1, 2, 2, 3)]
    return pool, M.monomials_up_to(2)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_operad_axioms_boson(seed):
    rng = random.Random(seed)
    pool, monos = _boson_pool(rng)
    assert operad_axiom_instance(rng, pool, monos) == []


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_operad_axioms_free(seed):
    rng = random.Random(seed)
    pool, monos = _free_pool(rng)
    assert operad_axiom_instance(rng, pool, monos) == []


def test_random_free_elements_are_valid():
    rng = random.Random(11)
    M = build_W().module
    for n in (1, 2, 3):
        Y = O.random_free_element(M, rng, n)
        probes = O.probe_tuples(M, n)[:6]
        cyc = [Graph(2, ((1, 2), (2, 1)))] if n == 2 else []
        assert O.check_cycle_conditions(Y, cyc, probes) == []
        for Gr in enumerate_acyclic(n):
            for v in probes:
                assert O.check_h_linearity(Y, Gr, v, M.hopf.gen(0)) == []


def test_arity_mismatch():
    M = build_boson().module
    with pytest.raises(O.ArityMismatch):
        O.unit(M).value(edgeless(2), ((), ()))


# --- cohomology ------------------------------------------------------------------------------

def _image_is_zero(img):
    M = img.module
    n = img.arity
    probes = list(itertools.product(O.generator_monomials(M), repeat=n))
    if n <= 2:
        probes = O.probe_tuples(M, n)
    return O.compare(img, O.zero(M, n), enumerate_acyclic(n), probes) == []


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["quotient", "derivation", "weight"]))
def test_ad_x_squared(seed, kind):
    spec = build_boson()
    M = spec.module
    master = O.poisson_to_master(spec)
    rng = random.Random(seed)
    f = {"quotient": O.random_quotient_element, "derivation": O.random_derivation,
         "weight": O.random_weight_map}[kind](M, rng)
    img = O.classical_differential(master, O.classical_differential(master, f))
    assert _image_is_zero(img)


@pytest.mark.parametrize("name", ["boson", "fermion", "affine"])
def test_grade_pieces_commute(name):
    master = O.poisson_to_master(POISSON[name]())
    X0, X1 = master.X0, master.X1
    probes = list(itertools.product(O.generator_monomials(master.module), repeat=3))
    for a, b in ((X0, X0), (X1, X1), (X0, X1)):
        assert O.compare(O.bracket(a, b), O.zero(master.module, 3), enumerate_acyclic(3), probes) == []
    # X = X0 + X1
    assert O.compare(master.X, X0 + X1, enumerate_acyclic(2), O.probe_tuples(master.module, 2)) == []


def test_variational_leibniz_condition():
    spec = build_boson()
    M = spec.module
    Xstar = O.phi(O.poisson_to_master(spec).X)
    assert O.check_variational_leibniz(Xstar) == []
    rng = random.Random(5)
    for parity in (0, 1):
        assert O.check_variational_leibniz(O.random_derivation(M, rng, parity)) == []
    # Euler map (weight = polynomial degree) is a derivation, a quadratic weight is not
    assert O.check_variational_leibniz(O.weight_element(M, {d: Fraction(d) for d in range(5)})) == []
    assert O.check_variational_leibniz(O.weight_element(M, {d: Fraction(d * d) for d in range(5)}))
    with pytest.raises(O.PreconditionFailed):
        O.variational_differential(Xstar, O.weight_element(M, {d: Fraction(d * d) for d in range(5)}))


def test_fermion_derivations_pass_leibniz_condition():
    M = build_fermion().module
    rng = random.Random(9)
    for parity in (0, 1):
        assert O.check_variational_leibniz(O.random_derivation(M, rng, parity)) == []


def test_phi_intertwines_differentials():
    spec = build_boson()
    M = spec.module
    master = O.poisson_to_master(spec)
    Xstar = O.phi(master.X)
    rng = random.Random(2)
    for f in (O.random_derivation(M, rng), O.random_quotient_element(M, rng), Xstar):
        lhs = O.phi(O.classical_differential(master, O.phi(f)))
        rhs = O.variational_differential(Xstar, f)
        n = lhs.arity
        probes = list(itertools.product(O.generator_monomials(M), repeat=n))
        assert O.compare(lhs, rhs, [edgeless(n)], probes) == []
    assert _image_is_zero(O.variational_differential(Xstar, Xstar))
