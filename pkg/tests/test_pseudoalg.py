import json
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from poissonoperad.hmodule import ModuleSpec, ParseError, random_vector
from poissonoperad.hopf import LieAlgebraSpec
from poissonoperad.pseudoalg import (PseudoAlgebraSpec, UnsupportedConversion, ValidationError, build_affine,
                                     build_boson, build_example, build_fermion, build_type_K, build_type_W,
                                     build_W, from_config, load_spec, shipped_specs, to_lambda_bracket)
from poissonoperad.suites import random_bracket_value

NONAB = LieAlgebraSpec.two_dim_nonabelian()

BUILTINS = {
    "W_d_n1": lambda: build_W(),
    "W_d_n2": lambda: build_W(LieAlgebraSpec.abelian(2)),
    "W_d_nonabelian": lambda: build_W(NONAB),
    "boson": build_boson,
    "fermion": build_fermion,
    "affine": build_affine,
    "type_W": lambda: build_type_W(beta={(0, 0): {0: 1}}),
    "type_W_nonabelian": lambda: build_type_W(NONAB),
    "type_K": lambda: build_type_K(1),
}
POISSON = {"boson": build_boson, "fermion": build_fermion, "affine": build_affine}


@pytest.mark.parametrize("name", BUILTINS)
def test_builtin_skew_and_jacobi(name):
    spec = BUILTINS[name]()
    assert spec.check_skewsymmetry(order=0) == []
    assert spec.check_jacobi(order=0) == []


@pytest.mark.parametrize("name", ["boson", "fermion", "affine", "type_W", "W_d_nonabelian"])
def test_builtin_axioms_on_derivatives(name):
    spec = BUILTINS[name]()
    assert spec.check_skewsymmetry(order=1) == []
    assert spec.check_jacobi(order=1) == []


@pytest.mark.parametrize("name", POISSON)
def test_leibniz_rules(name):
    spec = POISSON[name]()
    assert spec.check_leibniz(max_atoms=2, order=1) == []


@pytest.mark.parametrize("name", POISSON)
def test_chain_identity(name):
    spec = POISSON[name]()
    M = spec.module
    rng = random.Random(7)
    for _ in range(100):
        a, b, c = (random_vector(M, rng, max_terms=1) for _ in range(3))
        if not (a and b and c):
            continue
        pa, pb, pc = (M.parity(next(iter(v))) for v in (a, b, c))
        assert spec.chain_residual(a, b, c, pa, pb, pc) == {}


def test_printed_brackets():
    boson = build_boson()
    assert str(boson.bracket(boson.parse("u"), boson.parse("u"))) == "(d[1]|1) @ 1"
    assert boson.format_lambda(to_lambda_bracket(boson, boson.parse("u"), boson.parse("u"))) == "-λ"
    assert str(boson.bracket(boson.parse("u"), boson.parse("1"))) == "0"
    W = build_W()
    assert str(W.bracket(W.parse("e0"), W.parse("e0"))) == "-(1|1) @ d[1] e0 + 2 * (d[1]|1) @ e0"
    K = build_type_K(1)
    assert str(K.bracket(K.parse("e"), K.parse("e"))).count("@") >= 3


# --- master formula oracle (abelian H = F[d], even generators) -----------------------

lam = sympy.Symbol("lam")


def _sym_mono(M, mono):
    out = sympy.Integer(1)
    for l, (k,) in mono:
        out *= sympy.Symbol(f"{M.names[l]}_{k}")
    return out


def _sym_vec(M, v):
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * _sym_mono(M, m) for m, c in v.items()))


def _D(expr):
    out = 0
    for s in expr.free_symbols - {lam}:
        name, k = s.name.rsplit("_", 1)
        out += sympy.diff(expr, s) * sympy.Symbol(f"{name}_{int(k) + 1}")
    return sympy.expand(out)


def _shift(expr, n, sign=1):
    """(sign * (lam + d))^n applied to expr."""
    for _ in range(n):
        expr = sympy.expand(sign * (lam * expr + _D(expr)))
    return expr


def master_formula(spec, f, g, max_order=4):
    M = spec.module
    out = 0
    for i, ni in enumerate(M.names):
        for j, nj in enumerate(M.names):
            H = _lambda_sym(spec, spec.table.get((i, j), {}))
            for m in range(max_order):
                df = sympy.diff(f, sympy.Symbol(f"{ni}_{m}"))
                if df == 0:
                    continue
                inner = _shift(df, m, -1)
                # H(lam + d) acting to the right
                poly = sympy.Poly(H, lam)
                applied = sum(coef * _shift(inner, k) for (k,), coef in poly.terms())
                for n in range(max_order):
                    dg = sympy.diff(g, sympy.Symbol(f"{nj}_{n}"))
                    if dg != 0:
                        out += dg * _shift(sympy.expand(applied), n)
    return sympy.expand(out)


def _lambda_sym(spec, T):
    L = spec.to_lambda(T)
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * lam ** I[0] * _sym_mono(spec.module, m)
                            for (I, m), c in L.items()))


ORACLE_SPECS = {
    "boson": build_boson(),
    "boson2": build_boson(generators=(("u", 0), ("v", 0)), beta={("u", "u"): {0: 1}, ("u", "v"): {0: 2}}),
    "affine_nonabelian": build_affine(generators=(("a", 0), ("b", 0)), structure={("a", "b"): {"b": 1}},
                                      beta={("a", "a"): {0: 1}}),
}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(sorted(ORACLE_SPECS)))
def test_bracket_matches_master_formula(seed, key):
    spec = ORACLE_SPECS[key]
    M = spec.module
    rng = random.Random(seed)
    a = random_vector(M, rng, max_atoms=2, max_order=2)
    b = random_vector(M, rng, max_atoms=2, max_order=2)
    got = _lambda_sym(spec, spec.bracket_vec(a, b))
    assert got == master_formula(spec, _sym_vec(M, a), _sym_vec(M, b))


# --- lambda dictionary ---------------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_lambda_roundtrip(seed):
    spec = build_boson()
    T = random_bracket_value(spec, random.Random(seed), max_degree=3)
    assert spec.from_lambda(spec.to_lambda(T)) == T


def test_lambda_needs_abelian():
    K = build_type_K(1)
    with pytest.raises(UnsupportedConversion):
        K.to_lambda(K.bracket_vec(K.parse("e").terms, K.parse("e").terms))


def test_lambda_several_variables():
    W = build_W(LieAlgebraSpec.abelian(2))
    text = W.format_lambda(W.to_lambda(W.bracket_vec(W.parse("e0").terms, W.parse("e1").terms)))
    assert "λ" in text


# --- config files ------------------------------------------------------------------------

PAIRS = {
    "boson_n1": build_boson, "fermion": build_fermion, "affine": build_affine,
    "type_k_m1": lambda: build_type_K(1), "type_w_n1": BUILTINS["type_W"],
    "type_w_nonabelian": BUILTINS["type_W_nonabelian"], "w_d_n1": build_W,
    "w_d_n2": BUILTINS["W_d_n2"], "w_d_nonabelian": BUILTINS["W_d_nonabelian"],
}


@pytest.mark.parametrize("stem", sorted(PAIRS))
def test_data_files_match_builders(stem):
    spec, ref = load_spec(stem), PAIRS[stem]()
    assert spec.table == ref.table
    assert spec.module.kind == ref.module.kind and spec.module.lie == ref.module.lie


@pytest.mark.parametrize("stem", sorted(PAIRS))
def test_config_roundtrip(stem):
    spec = load_spec(stem)
    again = from_config(json.loads(json.dumps(spec.to_config())))
    assert again.table == spec.table


def test_negative_controls_fail():
    assert load_spec("boson_broken").check_skewsymmetry()
    assert load_spec("type_w_jacobi_broken").check_jacobi()
    assert set(PAIRS) | {"boson_broken", "type_w_jacobi_broken"} == set(shipped_specs())


def test_config_errors():
    good = json.loads(json.dumps(load_spec("boson_n1").to_config()))
    bad = dict(good, kind="symmetric")
    with pytest.raises(ValidationError):
        from_config(bad)
    ferm = json.loads(json.dumps(load_spec("fermion").to_config()))
    bad = dict(ferm, bracket_table=[{"a": "psi", "b": "psi", "value": "(1|1) @ psi"}])
    with pytest.raises(ValidationError):
        from_config(bad)  # odd value on an even pair
    bad = dict(good, bracket_table=[{"a": "u", "b": "u", "value": "(1|1) @ (u"}])
    with pytest.raises(ParseError) as exc:
        from_config(bad)
    assert "bracket_table[0]" in str(exc.value) and exc.value.column == 11
    with pytest.raises(FileNotFoundError):
        load_spec("no_such_spec")


def test_builder_validation():
    with pytest.raises(ValidationError):
        build_fermion(generators=(("x", 1), ("y", 0)), gamma={("x", "y"): 1})
    with pytest.raises(ValidationError):
        build_affine(generators=(("a", 0), ("b", 0)), structure={("a", "b"): {"b": 1}},
                     beta={("b", "b"): {0: 1}})
    with pytest.raises(ValueError):
        build_example("nope")
    assert build_example("boson").name == "boson"


def test_bracket_mono_agrees_with_recursive_expansion():
    spec = build_type_W(beta={(0, 0): {0: 1}})
    for A in spec.probe_monomials(3, 1):
        for B in spec.probe_monomials(2, 1):
            assert spec.bracket_mono(A, B) == spec.bracket_recursive(A, B)
