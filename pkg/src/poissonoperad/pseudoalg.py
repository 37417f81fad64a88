"""Lie and Poisson pseudoalgebras on a module V.

A pseudobracket is stored on generator pairs as canonical arity-2
pseudo-tensors and extended by H-bilinearity and (for symmetric algebras)
the iterated Leibniz rule.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .hopf import LieAlgebraSpec, add_into, scale, format_index
from .hmodule import (FREE, SYMMETRIC, AlgebraElement, ModuleSpec, ParseError,
                      PseudoTensor, NoProductError)

DATA_DIR = Path(__file__).with_name("data")


class ValidationError(ValueError):
    pass


class UnsupportedConversion(ValueError):
    pass


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


class PseudoAlgebraSpec:
    """Bracket table on generators plus the machinery to extend it."""

    def __init__(self, module: ModuleSpec, table: Mapping, central: Mapping | None = None,
                 name: str = "", complete: bool = True):
        self.module = module
        self.name = name
        self.central = {k: Fraction(v) for k, v in (central or {}).items()}
        tab: dict = {}
        for (a, b), T in table.items():
            a = module.index[a] if isinstance(a, str) else a
            b = module.index[b] if isinstance(b, str) else b
            tab[(a, b)] = {k: Fraction(c) for k, c in T.items() if c}
        if complete:
            for (a, b), T in list(tab.items()):
                if (b, a) not in tab:
                    s = -_sign(module.parities[a] * module.parities[b])
                    tab[(b, a)] = scale(module.permute_slots((2, 1), T, 2), s)
        self.table = tab
        for (a, b), T in tab.items():
            want = (module.parities[a] + module.parities[b]) % 2
            for (F, m) in T:
                if module.parity(m) != want:
                    raise ValidationError(
                        f"bracket value for ({module.names[a]}, {module.names[b]}) is not even")
        self._atom_cache: dict = {}
        self._mono_cache: dict = {}
        self._rec_cache: dict = {}

    @property
    def is_poisson(self) -> bool:
        return self.module.kind == SYMMETRIC

    def __repr__(self):
        return f"PseudoAlgebraSpec({self.name or 'custom'}, {self.module!r})"

    # brackets ------------------------------------------------------------------
    def bracket_atoms(self, x, y) -> dict:
        """[d^I a * d^J b] = ((d^I (x) d^J) (x)_H 1) [a*b]."""
        key = (x, y)
        hit = self._atom_cache.get(key)
        if hit is not None:
            return hit
        (a, I), (b, J) = x, y
        M, H = self.module, self.module.hopf
        base = self.table.get((a, b), {})
        z = H.zero_index
        if I == z and J == z:
            out = base
        else:
            raw: dict = {}
            for ((F,), m), c in base.items():
                for K, d in H.mul_basis(I, F).items():
                    add_into(raw, ((K, J), m), c * d)
            out = M.normalize(raw, 2)
        self._atom_cache[key] = out
        return out

    def bracket_mono(self, A: tuple, B: tuple) -> dict:
        """Iterated Leibniz expansion on monomials."""
        if not A or not B:
            return {}
        M = self.module
        if M.is_free:
            return self.bracket_atoms(A[0], B[0])
        key = (A, B)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        pa = [M.parities[l] for l, _ in A]
        pb = [M.parities[l] for l, _ in B]
        out: dict = {}
        for i, ai in enumerate(A):
            rest_a = A[:i] + A[i + 1:]
            for j, bj in enumerate(B):
                rest_b = B[:j] + B[j + 1:]
                eps = _sign(pa[i] * sum(pa[i + 1:]) + pb[j] * sum(pb[:j]))
                T = self.bracket_atoms(ai, bj)
                if rest_b:
                    T = M.multiply_right(T, {rest_b: Fraction(1)})
                if rest_a:
                    T = M.multiply_left({rest_a: Fraction(1)}, T)
                for k, c in T.items():
                    add_into(out, k, eps * c)
        self._mono_cache[key] = out
        return out

    def bracket_recursive(self, A: tuple, B: tuple) -> dict:
        """Independent expansion by repeated single Leibniz rules."""
        if not A or not B:
            return {}
        M = self.module
        if len(A) == 1 and len(B) == 1:
            return self.bracket_atoms(A[0], B[0])
        key = (A, B)
        hit = self._rec_cache.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        if len(A) >= 2:
            a, rest = A[:1], A[1:]
            for k, c in M.multiply_left({a: Fraction(1)}, self.bracket_recursive(rest, B)).items():
                add_into(out, k, c)
            s = _sign(M.parity(a) * M.parity(rest))
            for k, c in M.multiply_left({rest: Fraction(1)}, self.bracket_recursive(a, B)).items():
                add_into(out, k, s * c)
        else:
            b, rest = B[:1], B[1:]
            for k, c in M.multiply_right(self.bracket_recursive(A, b), {rest: Fraction(1)}).items():
                add_into(out, k, c)
            s = _sign(M.parity(b) * M.parity(rest))
            for k, c in M.multiply_right(self.bracket_recursive(A, rest), {b: Fraction(1)}).items():
                add_into(out, k, s * c)
        self._rec_cache[key] = out
        return out

    def bracket_vec(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for A, c in a.items():
            for B, d in b.items():
                for k, e in self.bracket_mono(A, B).items():
                    add_into(out, k, c * d * e)
        return out

    def product_vec(self, a: Mapping, b: Mapping) -> dict:
        return self.module.mul(a, b)

    # compositions ---------------------------------------------------------------
    def _as_raw(self, T: Mapping) -> dict:
        first = next(iter(T), None)
        if first is None:
            return {}
        slots, _ = first
        return self.module.canonical_to_raw(T) if len(slots) == 1 else dict(T)

    def compose_right(self, T: Mapping, c: Mapping) -> dict:
        """[[a*b]*c] from T = [a*b] given canonically or as raw {((f, g), e): x}."""
        M, H = self.module, self.module.hopf
        z = H.zero_index
        raw: dict = {}
        for ((f, g), e), x in self._as_raw(T).items():
            inner = self.bracket_vec({e: Fraction(1)}, c)
            for ((f2,), e2), y in inner.items():
                for (l1, l2), w in H.coproduct_basis(f2, 2):
                    for K1, u in H.mul_basis(f, l1).items():
                        for K2, v in H.mul_basis(g, l2).items():
                            add_into(raw, ((K1, K2, z), e2), x * y * w * u * v)
        return M.normalize(raw, 3)

    def compose_left(self, a: Mapping, T: Mapping) -> dict:
        """[a*[b*c]] from T = [b*c] given canonically or raw {((h, l), d): x}."""
        M, H = self.module, self.module.hopf
        raw: dict = {}
        for ((h, l), d), x in self._as_raw(T).items():
            inner = self.bracket_vec(a, {d: Fraction(1)})
            for ((h2,), d2), y in inner.items():
                add_into(raw, ((h2, h, l), d2), x * y)
        return M.normalize(raw, 3)

    # checks ------------------------------------------------------------------------
    def generator_atoms(self, order: int = 0) -> list:
        M = self.module
        out = []
        for l in range(len(M.names)):
            for I in _indices_upto(M.N, order):
                out.append((l, I))
        return out

    def probe_monomials(self, max_atoms: int = 2, order: int = 0) -> list:
        atoms = self.generator_atoms(order)
        if self.module.is_free:
            return [(a,) for a in atoms]
        out = []
        for k in range(1, max_atoms + 1):
            for combo in itertools.combinations_with_replacement(atoms, k):
                s, m = self.module.sort_atoms(combo)
                if s:
                    out.append(m)
        return out

    def skew_residual(self, A, B) -> dict:
        M = self.module
        T = self.bracket_mono(A, B)
        out = dict(self.bracket_mono(B, A))
        s = _sign(M.parity(A) * M.parity(B))
        for k, c in M.permute_slots((2, 1), T, 2).items():
            add_into(out, k, s * c)
        return out

    def jacobi_residual(self, A, B, C) -> dict:
        M = self.module
        a, b, c = ({A: Fraction(1)}, {B: Fraction(1)}, {C: Fraction(1)})
        out = dict(self.compose_left(a, self.bracket_vec(b, c)))
        s = _sign(M.parity(A) * M.parity(B))
        swapped = M.permute_slots((2, 1, 3), self.compose_left(b, self.bracket_vec(a, c)), 3)
        for k, x in swapped.items():
            add_into(out, k, -s * x)
        for k, x in self.compose_right(self.bracket_vec(a, b), c).items():
            add_into(out, k, -x)
        return out

    def left_leibniz_residual(self, A, B, C) -> dict:
        """[a*bc] - [a*b]c - (-1)^{p(b)p(c)} [a*c]b."""
        M = self.module
        s, BC = M.mul_mono(B, C)
        out: dict = {}
        if s:
            out = scale(self.bracket_mono(A, BC), s)
        for k, x in M.multiply_right(self.bracket_mono(A, B), {C: Fraction(1)}).items():
            add_into(out, k, -x)
        t = _sign(M.parity(B) * M.parity(C))
        for k, x in M.multiply_right(self.bracket_mono(A, C), {B: Fraction(1)}).items():
            add_into(out, k, -t * x)
        return out

    def right_leibniz_residual(self, A, B, C) -> dict:
        """[ab*c] - a[b*c] - (-1)^{p(a)p(b)} b[a*c]."""
        M = self.module
        s, AB = M.mul_mono(A, B)
        out: dict = {}
        if s:
            out = scale(self.bracket_mono(AB, C), s)
        for k, x in M.multiply_left({A: Fraction(1)}, self.bracket_mono(B, C)).items():
            add_into(out, k, -x)
        t = _sign(M.parity(A) * M.parity(B))
        for k, x in M.multiply_left({B: Fraction(1)}, self.bracket_mono(A, C)).items():
            add_into(out, k, -t * x)
        return out

    def chain_residual(self, a: Mapping, b: Mapping, c: Mapping, pa: int, pb: int, pc: int) -> dict:
        """-(-1)^{p(a)p(b)} (sigma (x)_H 1)([b*a]c) - (-1)^{(p(a)+p(b))p(c)} c[a*b]."""
        M = self.module
        lhs = M.permute_slots((2, 1), M.multiply_right(self.bracket_vec(b, a), c), 2)
        out = scale(lhs, -_sign(pa * pb))
        for k, x in M.multiply_left(c, self.bracket_vec(a, b)).items():
            add_into(out, k, -_sign((pa + pb) * pc) * x)
        return out

    def _fmt_args(self, *monos) -> list:
        return [self.module.format_mono(m) for m in monos]

    def check_skewsymmetry(self, order: int = 0) -> list:
        atoms = [(a,) for a in self.generator_atoms(order)]
        out = []
        for A, B in itertools.product(atoms, repeat=2):
            r = self.skew_residual(A, B)
            if r:
                out.append({"identity": "skewsymmetry", "args": self._fmt_args(A, B),
                            "residual": self.module.format_pseudo(r, 2)})
        return out

    def check_jacobi(self, order: int = 0) -> list:
        atoms = [(a,) for a in self.generator_atoms(order)]
        out = []
        for A, B, C in itertools.product(atoms, repeat=3):
            r = self.jacobi_residual(A, B, C)
            if r:
                out.append({"identity": "jacobi", "args": self._fmt_args(A, B, C),
                            "residual": self.module.format_pseudo(r, 3)})
        return out

    def check_leibniz(self, max_atoms: int = 2, order: int = 0) -> list:
        """Left, right and iterated Leibniz on monomials with up to max_atoms atoms."""
        if not self.is_poisson:
            return []
        monos = self.probe_monomials(max_atoms, order)
        out = []
        for A, B, C in itertools.product(monos, repeat=3):
            if len(A) + len(B) + len(C) > max_atoms + 2:
                continue
            for name, fn in (("left_leibniz", self.left_leibniz_residual),
                             ("right_leibniz", self.right_leibniz_residual)):
                r = fn(A, B, C)
                if r:
                    out.append({"identity": name, "args": self._fmt_args(A, B, C),
                                "residual": self.module.format_pseudo(r, 2)})
        for A, B in itertools.product(monos, repeat=2):
            r = dict(self.bracket_mono(A, B))
            for k, x in self.bracket_recursive(A, B).items():
                add_into(r, k, -x)
            if r:
                out.append({"identity": "iterated_leibniz", "args": self._fmt_args(A, B),
                            "residual": self.module.format_pseudo(r, 2)})
        return out

    def check_right_leibniz(self, max_atoms: int = 2, order: int = 0) -> list:
        return [r for r in self.check_leibniz(max_atoms, order) if r["identity"] == "right_leibniz"]

    def check_all(self, order: int = 0, max_atoms: int = 2) -> dict:
        return {
            "skewsymmetry": self.check_skewsymmetry(order),
            "jacobi": self.check_jacobi(order),
            "leibniz": self.check_leibniz(max_atoms, order),
        }

    # lambda dictionary -----------------------------------------------------------------
    def to_lambda(self, T: Mapping) -> dict:
        """(f(d) (x) 1) (x)_H e  ->  f(-lambda) e, keyed by (exponents, mono)."""
        if not self.module.lie.is_abelian:
            raise UnsupportedConversion("lambda brackets need an abelian H")
        return {(F[0], m): c * _sign(sum(F[0])) for (F, m), c in T.items()}

    def from_lambda(self, L: Mapping) -> dict:
        if not self.module.lie.is_abelian:
            raise UnsupportedConversion("lambda brackets need an abelian H")
        return {((I,), m): c * _sign(sum(I)) for (I, m), c in L.items()}

    def format_lambda(self, L: Mapping) -> str:
        if not L:
            return "0"
        N = self.module.N
        parts = []
        for (I, m), c in sorted(L.items()):
            pieces = []
            for k, e in enumerate(I):
                if e:
                    sym = "λ" if N == 1 else f"λ{k}"
                    pieces.append(sym if e == 1 else f"{sym}^{e}")
            lam = "*".join(pieces)
            mono = self.module.format_mono(m)
            body = " * ".join(p for p in (lam, mono if mono != "1" else "") if p) or "1"
            if body == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c} * {body}")
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    # element-level API ---------------------------------------------------------------
    def bracket(self, a: AlgebraElement, b: AlgebraElement) -> PseudoTensor:
        return PseudoTensor(self.module, 2, self.bracket_vec(a.terms, b.terms))

    def parse(self, text: str) -> AlgebraElement:
        return AlgebraElement(self.module, self.module.parse(text, self.central))

    # serialization -------------------------------------------------------------------
    def to_config(self) -> dict:
        M = self.module
        table = []
        for (a, b), T in sorted(self.table.items()):
            table.append({"a": M.names[a], "b": M.names[b], "value": M.format_pseudo(T, 2)})
        return {
            "name": self.name,
            "hopf": M.lie.to_json(),
            "generators": [{"name": n, "parity": "odd" if p else "even"} for n, p in zip(M.names, M.parities)],
            "kind": M.kind,
            "bracket_table": table,
            "central": {},
        }


def _indices_upto(N: int, order: int):
    out = []
    for deg in range(order + 1):
        for parts in itertools.product(range(deg + 1), repeat=N):
            if sum(parts) == deg:
                out.append(tuple(parts))
    return sorted(out)


def bracket(spec: PseudoAlgebraSpec, a: AlgebraElement, b: AlgebraElement) -> PseudoTensor:
    return spec.bracket(a, b)


def compose_bracket_left(spec, a: AlgebraElement, T: PseudoTensor) -> PseudoTensor:
    if T.arity != 2:
        raise ValueError("arity mismatch")
    return PseudoTensor(spec.module, 3, spec.compose_left(a.terms, T.terms))


def compose_bracket_right(spec, T: PseudoTensor, c: AlgebraElement) -> PseudoTensor:
    if T.arity != 2:
        raise ValueError("arity mismatch")
    return PseudoTensor(spec.module, 3, spec.compose_right(T.terms, c.terms))


def check_skewsymmetry(spec, order: int = 0):
    return spec.check_skewsymmetry(order)


def check_jacobi(spec, order: int = 0):
    return spec.check_jacobi(order)


def check_leibniz(spec, max_atoms: int = 2, order: int = 0):
    return spec.check_leibniz(max_atoms, order)


def check_right_leibniz(spec, max_atoms: int = 2, order: int = 0):
    return spec.check_right_leibniz(max_atoms, order)


def to_lambda_bracket(spec, a: AlgebraElement, b: AlgebraElement) -> dict:
    return spec.to_lambda(spec.bracket_vec(a.terms, b.terms))


def from_lambda_bracket(spec, L: Mapping) -> PseudoTensor:
    return PseudoTensor(spec.module, 2, spec.from_lambda(L))


# ----------------------------------------------------------------------------------
# examples

def _dvec(v) -> dict:
    """Element of d given as {k: c} or an int index."""
    if isinstance(v, int):
        return {v: Fraction(1)}
    return {int(k): Fraction(c) for k, c in dict(v).items() if Fraction(c)}


def _d_as_h(module: ModuleSpec, v: Mapping) -> dict:
    out: dict = {}
    for k, c in v.items():
        for I, e in module.hopf.gen(k).items():
            add_into(out, I, c * e)
    return out


def _scalar_pt(module, h: Mapping, coef=1) -> dict:
    """(h (x) 1) (x)_H 1."""
    return {((I,), ()): c * coef for I, c in h.items()}


def build_W(lie: LieAlgebraSpec | None = None) -> PseudoAlgebraSpec:
    lie = lie or LieAlgebraSpec.abelian(1)
    N = lie.dim
    M = ModuleSpec(lie, [(f"e{i}", 0) for i in range(N)], FREE)
    H = M.hopf
    z = H.zero_index
    table = {}
    for a in range(N):
        for b in range(N):
            raw: dict = {}
            for k, c in lie.bracket(a, b).items():
                add_into(raw, ((z, z), ((k, z),)), c)
            (Ib,) = H.gen(b)
            (Ia,) = H.gen(a)
            add_into(raw, ((Ib, z), ((a, z),)), Fraction(1))
            add_into(raw, ((z, Ia), ((b, z),)), Fraction(-1))
            table[(a, b)] = M.normalize(raw, 2)
    return PseudoAlgebraSpec(M, table, name="W_d", complete=False)


def build_boson(lie=None, generators=(("u", 0),), beta=None) -> PseudoAlgebraSpec:
    lie = lie or LieAlgebraSpec.abelian(1)
    M = ModuleSpec(lie, list(generators), SYMMETRIC)
    beta = beta if beta is not None else {("u", "u"): {0: 1}}
    form = {(M.index[a], M.index[b]): _dvec(v) for (a, b), v in beta.items()}
    for (a, b), v in list(form.items()):
        s = _sign(M.parities[a] * M.parities[b])
        if (b, a) in form and form[(b, a)] != scale(v, s):
            raise ValidationError(f"beta is not supersymmetric on ({M.names[a]}, {M.names[b]})")
        form.setdefault((b, a), scale(v, s))
        if v and M.parities[a] != M.parities[b]:
            raise ValidationError("beta must vanish on generators of different parity")
    table = {k: _scalar_pt(M, _d_as_h(M, v)) for k, v in form.items()}
    return PseudoAlgebraSpec(M, table, {"K": 1}, name="boson", complete=False)


def build_fermion(lie=None, generators=(("psi", 1),), gamma=None) -> PseudoAlgebraSpec:
    lie = lie or LieAlgebraSpec.abelian(1)
    M = ModuleSpec(lie, list(generators), SYMMETRIC)
    gamma = gamma if gamma is not None else {("psi", "psi"): 1}
    form = {(M.index[a], M.index[b]): Fraction(v) for (a, b), v in gamma.items()}
    for (a, b), v in list(form.items()):
        s = -_sign(M.parities[a] * M.parities[b])
        if (b, a) in form and form[(b, a)] != s * v:
            raise ValidationError(f"gamma is not super-skew on ({M.names[a]}, {M.names[b]})")
        form.setdefault((b, a), s * v)
        if v and M.parities[a] != M.parities[b]:
            raise ValidationError("gamma(a, b) must vanish when parities differ")
    table = {k: _scalar_pt(M, M.hopf.unit(), v) for k, v in form.items()}
    return PseudoAlgebraSpec(M, table, {"K": 1}, name="fermion", complete=False)


def build_affine(lie=None, generators=(("a", 0),), structure=None, beta=None) -> PseudoAlgebraSpec:
    """[a*b] = (1 (x) 1) (x)_H [a, b] + (beta(a, b) (x) 1) (x)_H K with K -> 1."""
    lie = lie or LieAlgebraSpec.abelian(1)
    M = ModuleSpec(lie, list(generators), SYMMETRIC)
    n = len(M.names)
    g = {}
    for (a, b), v in (structure or {}).items():
        g[(M.index[a], M.index[b])] = {M.index[k] if isinstance(k, str) else k: Fraction(c) for k, c in v.items()}
        g[(M.index[b], M.index[a])] = {M.index[k] if isinstance(k, str) else k: -Fraction(c) for k, c in v.items()}
    beta = beta if beta is not None else {(M.names[0], M.names[0]): {0: 1}}
    form = {}
    for (a, b), v in beta.items():
        form[(M.index[a], M.index[b])] = _dvec(v)
        form[(M.index[b], M.index[a])] = _dvec(v)

    def gbr(x, y):
        out: dict = {}
        for i, c in x.items():
            for j, d in y.items():
                for k, e in g.get((i, j), {}).items():
                    add_into(out, k, c * d * e)
        return out

    def bval(x, y):
        out: dict = {}
        for i, c in x.items():
            for j, d in y.items():
                for k, e in form.get((i, j), {}).items():
                    add_into(out, k, c * d * e)
        return out

    for a, b, c in itertools.product(range(n), repeat=3):
        if bval(gbr({a: 1}, {b: 1}), {c: 1}) != bval({a: 1}, gbr({b: 1}, {c: 1})):
            raise ValidationError(
                f"beta([a,b],c) = beta(a,[b,c]) fails on ({M.names[a]}, {M.names[b]}, {M.names[c]})")
    z = M.hopf.zero_index
    table = {}
    for a in range(n):
        for b in range(n):
            T: dict = {}
            for k, c in g.get((a, b), {}).items():
                add_into(T, ((z,), ((k, z),)), c)
            for k, c in _scalar_pt(M, _d_as_h(M, form.get((a, b), {}))).items():
                add_into(T, k, c)
            table[(a, b)] = T
    return PseudoAlgebraSpec(M, table, {"K": 1}, name="affine", complete=False)


def build_type_W(lie=None, beta=None, c=1) -> PseudoAlgebraSpec:
    """W(d) bracket plus the central term (beta(a, b) (x) 1) (x)_H C, C -> c."""
    lie = lie or LieAlgebraSpec.abelian(1)
    N = lie.dim
    W = build_W(lie)
    M = ModuleSpec(lie, [(f"e{i}", 0) for i in range(N)], SYMMETRIC)
    form = {}
    for (a, b), v in (beta or {}).items():
        form[(a, b)] = _dvec(v)
        form[(b, a)] = _dvec(v)
    for a, b, x in itertools.product(range(N), repeat=3):
        lhs = _bform(form, lie.bracket(a, b), {x: 1})
        rhs = _bform(form, {a: 1}, lie.bracket(b, x))
        if lhs != rhs:
            raise ValidationError(f"beta([a,b],c) = beta(a,[b,c]) fails on (e{a}, e{b}, e{x})")
    table = {}
    for (a, b), T in W.table.items():
        T = dict(T)
        for k, v in _scalar_pt(M, _d_as_h(M, form.get((a, b), {})), c).items():
            add_into(T, k, v)
        table[(a, b)] = T
    return PseudoAlgebraSpec(M, table, {"C": c}, name="type_W", complete=False)


def _bform(form, x, y) -> dict:
    out: dict = {}
    for i, c in x.items():
        for j, d in y.items():
            for k, e in form.get((i, j), {}).items():
                add_into(out, k, Fraction(c) * Fraction(d) * e)
    return out


def build_type_K(M_half: int = 1, c=1) -> PseudoAlgebraSpec:
    """[e*e] = alpha (x)_H e + c (d_0 (x) 1) (x)_H 1 over the Heisenberg d."""
    lie = LieAlgebraSpec.heisenberg(M_half)
    M = ModuleSpec(lie, [("e", 0)], SYMMETRIC)
    H = M.hopf
    z = H.zero_index
    d = lambda i: next(iter(H.gen(i)))
    e = ((0, z),)
    raw: dict = {}
    add_into(raw, ((z, d(0)), e), Fraction(1))
    add_into(raw, ((d(0), z), e), Fraction(-1))
    for i in range(1, M_half + 1):
        add_into(raw, ((d(i), d(M_half + i)), e), Fraction(1))
        add_into(raw, ((d(M_half + i), d(i)), e), Fraction(-1))
    add_into(raw, ((d(0), z), ()), Fraction(c))
    return PseudoAlgebraSpec(M, {(0, 0): M.normalize(raw, 2)}, {"C": c}, name="type_K", complete=False)


EXAMPLES = ("W_d", "boson", "fermion", "affine", "type_W", "type_K")


def build_example(name: str, **params) -> PseudoAlgebraSpec:
    builders = {"W_d": build_W, "boson": build_boson, "fermion": build_fermion,
                "affine": build_affine, "type_W": build_type_W, "type_K": build_type_K}
    if name not in builders:
        raise ValueError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    return builders[name](**params)


# ----------------------------------------------------------------------------------
# config files

def _parity(v) -> int:
    if v in (0, 1):
        return int(v)
    if str(v).lower() in ("even", "0"):
        return 0
    if str(v).lower() in ("odd", "1"):
        return 1
    raise ValidationError(f"bad parity {v!r}")


def from_config(obj: Mapping) -> PseudoAlgebraSpec:
    try:
        lie = LieAlgebraSpec.from_json(obj["hopf"])
        gens = [(g["name"], _parity(g.get("parity", "even"))) for g in obj["generators"]]
        kind = obj.get("kind", SYMMETRIC)
        M = ModuleSpec(lie, gens, kind)
        central = {k: Fraction(str(v)) for k, v in obj.get("central", {}).items()}
    except KeyError as exc:
        raise ValidationError(f"missing config field {exc}") from None
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    table = {}
    for idx, entry in enumerate(obj.get("bracket_table", [])):
        try:
            a, b, text = entry["a"], entry["b"], entry["value"]
        except KeyError as exc:
            raise ValidationError(f"bracket_table[{idx}] lacks field {exc}") from None
        for s in (a, b):
            if s not in M.index:
                raise ValidationError(f"bracket_table[{idx}]: symbol {s!r} not in module")
        try:
            arity, T = M.parse_pseudo(text, central)
        except ParseError as exc:
            raise exc.with_context(f"bracket_table[{idx}].value") from None
        if T and arity != 2:
            raise ValidationError(f"bracket_table[{idx}] must have two slots")
        table[(M.index[a], M.index[b])] = T
    return PseudoAlgebraSpec(M, table, central, name=obj.get("name", ""), complete=True)


def load_spec(path_or_name: str) -> PseudoAlgebraSpec:
    """Load a JSON spec file, or one of the shipped data files by stem."""
    p = Path(path_or_name)
    if not p.exists():
        # unknown paths fall back to the shipped file with the same basename
        name = p.name if p.suffix == ".json" else p.name + ".json"
        cand = DATA_DIR / name
        if cand.exists():
            p = cand
        else:
            raise FileNotFoundError(f"no spec file {path_or_name!r}")
    text = p.read_text(encoding="utf-8")
    return from_config(json.loads(text))


def shipped_specs() -> list[str]:
    return sorted(q.stem for q in DATA_DIR.glob("*.json") if q.stem != "golden")
