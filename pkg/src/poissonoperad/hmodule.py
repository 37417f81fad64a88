"""Left H-modules V and the spaces H^{(x)n} (x)_H V.

An atom ``(l, I)`` is d^I applied to generator number l.  A monomial is a
sorted tuple of atoms; for ``kind="free"`` it always has exactly one atom,
for ``kind="symmetric_algebra"`` the empty tuple is the unit.  Vectors are
dicts monomial -> Fraction.

A pseudo-tensor of arity n is stored in canonical form, with the last H slot
equal to 1: a dict ``(F, mono) -> coeff`` where ``F`` holds the first n-1
multi-indices.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .hopf import Hopf, LieAlgebraSpec, add_into, scale, format_index
from . import perm as P

FREE = "free"
SYMMETRIC = "symmetric_algebra"


class NoProductError(TypeError):
    pass


class BoundExceeded(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg: str, text: str = "", pos: int = 0):
        self.text, self.pos = text, pos
        col = pos + 1
        super().__init__(f"{msg} (column {col})" + (f" in {text!r}" if text else ""))
        self.column = col

    def with_context(self, prefix: str) -> "ParseError":
        err = ParseError.__new__(ParseError)
        ValueError.__init__(err, f"{prefix}: {self}")
        err.text, err.pos, err.column = self.text, self.pos, self.column
        return err


class ModuleSpec:
    """V = H (x) V_0 (free) or S(H (x) g) (symmetric superalgebra)."""

    def __init__(self, lie: LieAlgebraSpec, generators: Sequence[tuple[str, int]], kind: str = SYMMETRIC):
        if kind not in (FREE, SYMMETRIC):
            raise ValueError(f"unknown module kind {kind!r}")
        names = [g[0] for g in generators]
        if len(set(names)) != len(names):
            raise ValueError("generator symbols must be distinct")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name) or name == "d":
                raise ValueError(f"invalid generator symbol {name!r}")
        self.lie = lie
        self.hopf = Hopf(lie)
        self.N = lie.dim
        self.kind = kind
        self.names = tuple(names)
        self.parities = tuple(int(g[1]) % 2 for g in generators)
        self.index = {n: i for i, n in enumerate(names)}
        self._act: dict = {}
        self._quot: dict = {}
        self._pieces: dict = {}

    @property
    def is_free(self) -> bool:
        return self.kind == FREE

    def __repr__(self):
        return f"ModuleSpec({self.kind}, {list(zip(self.names, self.parities))}, N={self.N})"

    # monomials --------------------------------------------------------------
    def atom(self, name: str, I: Sequence[int] | None = None) -> tuple:
        if name not in self.index:
            raise KeyError(f"symbol {name!r} not in module")
        return (self.index[name], tuple(I) if I is not None else self.hopf.zero_index)

    def parity(self, mono) -> int:
        return sum(self.parities[l] for l, _ in mono) % 2

    def weight(self, mono) -> int:
        return sum(1 + sum(I) for _, I in mono)

    def sort_atoms(self, atoms: Sequence) -> tuple[int, tuple]:
        """Normal-order a word of atoms; returns (sign, mono) with sign 0 for odd squares."""
        atoms = list(atoms)
        sign = 1
        odd = [self.parities[a[0]] for a in atoms]
        for i in range(len(atoms)):
            for j in range(i + 1, len(atoms)):
                if atoms[i] > atoms[j] and odd[i] and odd[j]:
                    sign = -sign
        mono = tuple(sorted(atoms))
        for a, b in zip(mono, mono[1:]):
            if a == b and self.parities[a[0]]:
                return 0, mono
        return sign, mono

    def mul_mono(self, m1, m2) -> tuple[int, tuple]:
        if self.is_free:
            raise NoProductError("free module has no product")
        return self.sort_atoms(m1 + m2)

    def mul(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for m1, c in a.items():
            for m2, d in b.items():
                s, m = self.mul_mono(m1, m2)
                if s:
                    add_into(out, m, s * c * d)
        return out

    def unit(self) -> dict:
        if self.is_free:
            raise NoProductError("free module has no unit")
        return {(): Fraction(1)}

    def gen_vec(self, name: str, I=None) -> dict:
        return {(self.atom(name, I),): Fraction(1)}

    # H-action -----------------------------------------------------------------
    def act_basis(self, J, mono) -> dict:
        if not any(J):
            return {mono: Fraction(1)}
        key = (J, mono)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        H = self.hopf
        out: dict = {}
        if not mono:
            pass  # augmentation: d^J . 1 = eps(d^J) 1 = 0
        else:
            for legs, c in H.coproduct_basis(J, len(mono)):
                parts = [H.mul_basis(leg, I) for leg, (_, I) in zip(legs, mono)]
                for combo in itertools.product(*(p.items() for p in parts)):
                    coef = Fraction(c)
                    for _, e in combo:
                        coef *= e
                    s, m = self.sort_atoms([(mono[j][0], K) for j, (K, _) in enumerate(combo)])
                    if s:
                        add_into(out, m, s * coef)
        self._act[key] = out
        return out

    def act(self, h: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for J, c in h.items():
            for m, d in v.items():
                for m2, e in self.act_basis(J, m).items():
                    add_into(out, m2, c * d * e)
        return out

    # pseudo-tensors ---------------------------------------------------------------
    def _slot_times_antipode(self, h, leg) -> dict:
        key = (h, leg)
        hit = self._pieces.get(key)
        if hit is None:
            H = self.hopf
            hit = H.mul({h: Fraction(1)}, H.antipode_basis(leg))
            self._pieces[key] = hit
        return hit

    def normalize(self, raw: Mapping, arity: int) -> dict:
        """(h_1..h_n) (x)_H v  ->  sum (h_1 S(h_n(1)) .. h_{n-1} S(h_n(n-1))) (x) h_n(n) v."""
        if arity < 1:
            raise ValueError("arity 0 pseudo-tensors live in V/H_+V; use quotient_class")
        H = self.hopf
        zero = H.zero_index
        out: dict = {}
        for (slots, mono), c in raw.items():
            if len(slots) != arity:
                raise ValueError("arity mismatch in raw pseudo-tensor")
            last = slots[-1]
            if last == zero:
                add_into(out, (tuple(slots[:-1]), mono), c)
                continue
            for legs, d in H.coproduct_basis(last, arity):
                parts = [self._slot_times_antipode(h, leg).items() for h, leg in zip(slots[:-1], legs[:-1])]
                vpart = self.act_basis(legs[-1], mono)
                if not vpart:
                    continue
                for combo in itertools.product(*parts):
                    coef = c * d
                    for _, e in combo:
                        coef *= e
                    F = tuple(k for k, _ in combo)
                    for m2, e in vpart.items():
                        add_into(out, (F, m2), coef * e)
        return out

    def canonical_to_raw(self, T: Mapping) -> dict:
        z = self.hopf.zero_index
        return {(F + (z,), m): c for (F, m), c in T.items()}

    def act_component(self, h: Mapping, k: int, T: Mapping, arity: int) -> dict:
        """(1 (x) .. h .. (x) 1) T with h in slot k (1-based)."""
        if not 1 <= k <= arity:
            raise ValueError(f"slot {k} out of range for arity {arity}")
        H = self.hopf
        raw: dict = {}
        for (slots, m), c in self.canonical_to_raw(T).items():
            for K, d in H.mul(h, {slots[k - 1]: Fraction(1)}).items():
                add_into(raw, (slots[:k - 1] + (K,) + slots[k:], m), c * d)
        return self.normalize(raw, arity)

    def permute_slots(self, sigma, T: Mapping, arity: int) -> dict:
        """Slot l moves to position sigma(l)."""
        sigma = P.check(sigma)
        if len(sigma) != arity:
            raise ValueError("size mismatch")
        if sigma == P.identity(arity):
            return dict(T)
        inv = P.inverse(sigma)
        raw: dict = {}
        for (slots, m), c in self.canonical_to_raw(T).items():
            add_into(raw, (tuple(slots[inv[j] - 1] for j in range(arity)), m), c)
        return self.normalize(raw, arity)

    def dot_slot(self, b: Mapping, i: int, T: Mapping, arity: int) -> dict:
        """b .i T = sum (g_1 .. g_i(1) .. g_n) (x)_H (g_i(-2) b) v."""
        if self.is_free:
            raise NoProductError("free module has no product")
        if i == arity:
            return _left_times(self, b, T)
        H = self.hopf
        out: dict = {}
        for (F, m), c in T.items():
            for (g1, sg2), d in H.twisted_right({F[i - 1]: Fraction(1)}).items():
                w = self.mul(self.act_basis_vec(sg2, b), {m: Fraction(1)})
                Fn = F[:i - 1] + (g1,) + F[i:]
                for m2, e in w.items():
                    add_into(out, (Fn, m2), c * d * e)
        return out

    def act_basis_vec(self, J, v: Mapping) -> dict:
        out: dict = {}
        for m, c in v.items():
            for m2, e in self.act_basis(J, m).items():
                add_into(out, m2, c * e)
        return out

    def multiply_right(self, T: Mapping, c: Mapping) -> dict:
        """[a*b] c for canonical T of arity 2."""
        out: dict = {}
        for (F, m), a in T.items():
            for m2, e in self.mul({m: Fraction(1)}, c).items():
                add_into(out, (F, m2), a * e)
        return out

    def multiply_right_raw(self, raw: Mapping, c: Mapping) -> dict:
        """Formula (f (x) g(1)) (x)_H e (g(-2) c) on an arbitrary presentation."""
        H = self.hopf
        out: dict = {}
        for ((f, g), e), a in raw.items():
            for (g1, sg2), d in H.twisted_right({g: Fraction(1)}).items():
                w = self.mul({e: Fraction(1)}, self.act_basis_vec(sg2, c))
                for m2, x in w.items():
                    add_into(out, ((f, g1), m2), a * d * x)
        return self.normalize(out, 2)

    def multiply_left(self, a: Mapping, T: Mapping) -> dict:
        """a [b*c] for canonical T of arity 2."""
        return self.dot_slot(a, 1, T, 2)

    def multiply_left_raw(self, a: Mapping, raw: Mapping) -> dict:
        """Formula (h(1) (x) l) (x)_H (h(-2) a) d on an arbitrary presentation."""
        H = self.hopf
        out: dict = {}
        for ((h, l), dm), x in raw.items():
            for (h1, sh2), c in H.twisted_right({h: Fraction(1)}).items():
                w = self.mul(self.act_basis_vec(sh2, a), {dm: Fraction(1)})
                for m2, y in w.items():
                    add_into(out, ((h1, l), m2), x * c * y)
        return self.normalize(out, 2)

    # quotient V / H_+ V ---------------------------------------------------------------
    def monomials_up_to(self, bound: int) -> list:
        """All monomials of weight <= bound (weight = sum over atoms of 1 + |I|)."""
        atoms = []
        for w in range(1, bound + 1):
            for I in _indices_of_degree(self.N, w - 1):
                for l in range(len(self.names)):
                    atoms.append((l, I))
        atoms.sort()
        if self.is_free:
            return [(a,) for a in atoms]
        out = [()]

        def grow(start, mono, wt):
            for idx in range(start, len(atoms)):
                a = atoms[idx]
                w = 1 + sum(a[1])
                if wt + w > bound:
                    continue
                if self.parities[a[0]] and a in mono:
                    continue
                m = mono + (a,)
                out.append(m)
                grow(idx + (1 if self.parities[a[0]] else 0), m, wt + w)

        grow(0, (), 0)
        return out

    def _quotient_basis(self, bound: int) -> dict:
        hit = self._quot.get(bound)
        if hit is not None:
            return hit
        basis: dict = {}
        for m in self.monomials_up_to(bound - 1):
            for i in range(self.N):
                e = [0] * self.N
                e[i] = 1
                _insert(basis, self.act_basis(tuple(e), m), self._order_key)
        self._quot[bound] = basis
        return basis

    def _order_key(self, mono):
        return (self.weight(mono), len(mono), mono)

    def quotient_class(self, v: Mapping, bound: int) -> dict:
        """Canonical representative of v modulo H_+V."""
        if self.is_free:
            z = self.hopf.zero_index
            return {m: c for m, c in v.items() if m[0][1] == z}
        for m in v:
            if self.weight(m) > bound:
                raise BoundExceeded(f"monomial of weight {self.weight(m)} exceeds bound {bound}")
        return _reduce(dict(v), self._quotient_basis(bound), self._order_key)

    # parsing / printing -----------------------------------------------------------------
    def format_mono(self, mono) -> str:
        if not mono:
            return "1"
        parts = []
        for l, I in mono:
            parts.append(self.names[l] if not any(I) else f"{format_index(I)} {self.names[l]}")
        return " * ".join(parts)

    def format_vec(self, v: Mapping) -> str:
        if not v:
            return "0"
        out = []
        for m, c in sorted(v.items()):
            body = self.format_mono(m)
            out.append(_coef_body(c, body))
        return _join(out)

    def format_pseudo(self, T: Mapping, arity: int) -> str:
        if not T:
            return "0"
        out = []
        for (F, m), c in sorted(T.items()):
            slots = [format_index(I) for I in F]
            if arity >= 1:
                slots.append("1")
            body = "(" + "|".join(slots) + ") @ " + self.format_mono(m)
            out.append(_coef_body(c, body))
        return _join(out)

    def parse(self, text: str, central: Mapping | None = None) -> dict:
        return _Parser(self, text, central).parse_vector()

    def parse_pseudo(self, text: str, central: Mapping | None = None) -> tuple[int, dict]:
        return _Parser(self, text, central).parse_pseudo()

    def element(self, v) -> "AlgebraElement":
        if isinstance(v, str):
            v = self.parse(v)
        return AlgebraElement(self, v)


def _coef_body(c: Fraction, body: str) -> str:
    if body == "1":
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c} * {body}"


def _join(parts: list[str]) -> str:
    s = parts[0]
    for p in parts[1:]:
        s += " - " + p[1:] if p.startswith("-") else " + " + p
    return s


def _left_times(module: ModuleSpec, b: Mapping, T: Mapping) -> dict:
    """Multiply every value on the left by b (the slot being 1)."""
    out: dict = {}
    for (F, m), c in T.items():
        for m2, e in module.mul(b, {m: Fraction(1)}).items():
            add_into(out, (F, m2), c * e)
    return out


def _indices_of_degree(N: int, deg: int):
    for parts in itertools.product(range(deg + 1), repeat=N):
        if sum(parts) == deg:
            yield parts


def _lead(v: Mapping, key):
    return max(v, key=key)


def _insert(basis: dict, vec: Mapping, key) -> None:
    v = _reduce(dict(vec), basis, key)
    if not v:
        return
    lead = _lead(v, key)
    inv = 1 / v[lead]
    v = {m: c * inv for m, c in v.items()}
    # keep the basis fully reduced so representatives are canonical
    for p, w in basis.items():
        if lead in w:
            f = w[lead]
            for m, c in v.items():
                add_into(w, m, -f * c)
    basis[lead] = v


def _reduce(v: dict, basis: Mapping, key) -> dict:
    v = dict(v)
    while True:
        pivots = [m for m in v if m in basis]
        if not pivots:
            return v
        m = max(pivots, key=key)
        f = v[m]
        for m2, c in basis[m].items():
            add_into(v, m2, -f * c)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<d>d\[)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*()|@\],]))")


class _Parser:
    """Recursive descent parser for vectors and pseudo-tensors."""

    def __init__(self, module: ModuleSpec, text: str, central: Mapping | None):
        self.m, self.text = module, text
        self.central = {k: Fraction(str(v)) for k, v in (central or {}).items()}
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            mt = _TOKEN.match(text, pos)
            if not mt:
                raise ParseError("unexpected character", text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
            kind = mt.lastgroup
            start = mt.start(kind)
            self.toks.append((kind, mt.group(kind), start))
            pos = mt.end()
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else (None, None, len(self.text))

    def take(self, value=None, kind=None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value or kind
            found = "end of input" if tok[1] is None else repr(tok[1])
            raise ParseError(f"expected {want!r}, found {found}", self.text, tok[2])
        self.i += 1
        return tok

    def done(self):
        if self.i != len(self.toks):
            tok = self.peek()
            raise ParseError(f"unexpected token {tok[1]!r}", self.text, tok[2])

    # vectors
    def parse_vector(self) -> dict:
        v = self.vec_expr()
        self.done()
        return v

    def vec_expr(self) -> dict:
        out: dict = {}
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            pos = self.peek()[2]
            term = self.vec_term()
            if isinstance(term, Fraction):
                if self.m.is_free and term:
                    raise ParseError("bare scalar in a free module", self.text, pos)
                term = scale(self.m.unit(), term) if term else {}
            for m, c in term.items():
                add_into(out, m, sign * c)
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
            else:
                return out

    def _starts_factor(self, tok) -> bool:
        return tok[0] in ("num", "d", "name") or tok[1] == "("

    def vec_term(self) -> dict:
        acc = None
        while True:
            f = self.vec_factor()
            acc = f if acc is None else self._times(acc, f)
            tok = self.peek()
            if tok[1] == "*" and tok[0] == "op":
                self.take()
            elif not self._starts_factor(tok):
                return acc

    def _times(self, a, b):
        if isinstance(a, Fraction):
            return b * a if isinstance(b, Fraction) else scale(b, a)
        if isinstance(b, Fraction):
            return scale(a, b)
        return self.m.mul(a, b)

    def vec_factor(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return Fraction(val)
        if kind == "d":
            I = self.multi_index()
            target = self.vec_factor()
            if isinstance(target, Fraction):
                if not self.m.is_free and not any(I):
                    return target
                target = scale(self.m.unit(), target)
            return self.m.act({I: Fraction(1)}, target)
        if kind == "name":
            self.take()
            if val in self.central:
                return self.central[val]
            if val not in self.m.index:
                raise ParseError(f"symbol {val!r} not in module", self.text, pos)
            return self.m.gen_vec(val)
        if val == "(":
            self.take()
            v = self.vec_expr()
            self.take(")")
            return v
        raise ParseError("unexpected end of input" if val is None else f"unexpected token {val!r}", self.text, pos)

    def multi_index(self):
        _, _, pos = self.take(kind="d")
        nums = [int(self.take(kind="num")[1])]
        while self.peek()[1] == ",":
            self.take(",")
            nums.append(int(self.take(kind="num")[1]))
        self.take("]")
        if len(nums) != self.m.N:
            raise ParseError(f"multi-index needs {self.m.N} entries", self.text, pos)
        return tuple(nums)

    # H elements inside slots
    def h_expr(self) -> dict:
        out: dict = {}
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            coef = Fraction(sign)
            h = None
            while True:
                kind, val, pos = self.peek()
                if kind == "num":
                    self.take()
                    coef *= Fraction(val)
                elif kind == "d":
                    I = self.multi_index()
                    h = {I: Fraction(1)} if h is None else self.m.hopf.mul(h, {I: Fraction(1)})
                else:
                    raise ParseError(f"expected H element, found {'end of input' if val is None else repr(val)}", self.text, pos)
                if self.peek()[1] == "*":
                    self.take()
                    continue
                if self.peek()[0] in ("num", "d"):
                    continue
                break
            h = h or self.m.hopf.unit()
            for I, c in h.items():
                add_into(out, I, coef * c)
            tok = self.peek()
            if tok[1] in ("+", "-"):
                self.take()
                sign = -1 if tok[1] == "-" else 1
            else:
                return out

    def parse_pseudo(self) -> tuple[int, dict]:
        raw: dict = {}
        arity = None
        if self.peek()[1] == "0" and len(self.toks) == 1:
            self.take()
            return 0, {}
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            coef = Fraction(sign)
            if self.peek()[0] == "num":
                coef *= Fraction(self.take()[1])
                self.take("*")
            _, _, pos = self.take("(")
            slots = [self.h_expr()]
            while self.peek()[1] == "|":
                self.take("|")
                slots.append(self.h_expr())
            self.take(")")
            self.take("@")
            v = self.vec_term()
            if isinstance(v, Fraction):
                v = scale(self.m.unit(), v) if v else {}
            if arity is None:
                arity = len(slots)
            elif arity != len(slots):
                raise ParseError("terms of different arity", self.text, pos)
            for tup, c in self.m.hopf.tensor(*slots).items():
                for mono, d in v.items():
                    add_into(raw, (tup, mono), coef * c * d)
            tok = self.peek()
            if tok[1] in ("+", "-") and tok[0] == "op":
                self.take()
                sign = -1 if tok[1] == "-" else 1
            else:
                break
        self.done()
        return arity, self.m.normalize(raw, arity)


class AlgebraElement:
    """Immutable vector of V."""

    __slots__ = ("module", "terms")

    def __init__(self, module: ModuleSpec, terms: Mapping):
        self.module = module
        self.terms = {m: Fraction(c) for m, c in terms.items() if c}

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            add_into(out, m, c)
        return AlgebraElement(self.module, out)

    def __neg__(self):
        return AlgebraElement(self.module, scale(self.terms, -1))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.module, self.module.mul(self.terms, other.terms))
        return AlgebraElement(self.module, scale(self.terms, Fraction(other)))

    def __rmul__(self, other):
        return AlgebraElement(self.module, scale(self.terms, Fraction(other)))

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __str__(self):
        return self.module.format_vec(self.terms)

    __repr__ = __str__

    def act(self, h) -> "AlgebraElement":
        return AlgebraElement(self.module, self.module.act(h.terms, self.terms))

    def is_homogeneous(self) -> bool:
        return len({self.module.parity(m) for m in self.terms}) <= 1


class PseudoTensor:
    """Immutable canonical element of H^{(x)n} (x)_H V."""

    __slots__ = ("module", "arity", "terms")

    def __init__(self, module: ModuleSpec, arity: int, terms: Mapping):
        self.module, self.arity = module, arity
        self.terms = {k: Fraction(c) for k, c in terms.items() if c}

    @classmethod
    def from_raw(cls, module, arity, raw) -> "PseudoTensor":
        return cls(module, arity, module.normalize(raw, arity))

    @classmethod
    def parse(cls, module, text, central=None) -> "PseudoTensor":
        arity, terms = module.parse_pseudo(text, central)
        return cls(module, arity, terms)

    def __add__(self, other):
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            add_into(out, k, c)
        return PseudoTensor(self.module, self.arity, out)

    def __neg__(self):
        return PseudoTensor(self.module, self.arity, scale(self.terms, -1))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return PseudoTensor(self.module, self.arity, scale(self.terms, Fraction(c)))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PseudoTensor) and (self.arity, self.terms) == (other.arity, other.terms)

    def __hash__(self):
        return hash((self.arity, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return self.module.format_pseudo(self.terms, self.arity)

    __repr__ = __str__

    def act_component(self, h, k: int) -> "PseudoTensor":
        return PseudoTensor(self.module, self.arity, self.module.act_component(h.terms, k, self.terms, self.arity))

    def permute_slots(self, sigma) -> "PseudoTensor":
        return PseudoTensor(self.module, self.arity, self.module.permute_slots(sigma, self.terms, self.arity))


def normalize(module: ModuleSpec, raw: Mapping, arity: int) -> PseudoTensor:
    return PseudoTensor.from_raw(module, arity, raw)


def module_action(h, v: AlgebraElement) -> AlgebraElement:
    return v.act(h)


def super_multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def act_component(h, k: int, T: PseudoTensor) -> PseudoTensor:
    return T.act_component(h, k)


def permute_slots(sigma, T: PseudoTensor) -> PseudoTensor:
    return T.permute_slots(sigma)


def multiply_right_by_V(T: PseudoTensor, c: AlgebraElement) -> PseudoTensor:
    return PseudoTensor(T.module, 2, T.module.multiply_right(T.terms, c.terms))


def multiply_left_by_V(a: AlgebraElement, T: PseudoTensor) -> PseudoTensor:
    return PseudoTensor(T.module, 2, T.module.multiply_left(a.terms, T.terms))


def quotient_class(v: AlgebraElement, degree_bound: int) -> AlgebraElement:
    return AlgebraElement(v.module, v.module.quotient_class(v.terms, degree_bound))


def random_vector(module: ModuleSpec, rng, max_atoms: int = 2, max_order: int = 1, max_terms: int = 3) -> dict:
    """Random element with small monomials; used by property tests and probes."""
    out: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        k = 1 if module.is_free else rng.randint(0, max_atoms)
        atoms = []
        for _ in range(k):
            I = [0] * module.N
            for _ in range(rng.randint(0, max_order)):
                I[rng.randrange(module.N)] += 1
            atoms.append((rng.randrange(len(module.names)), tuple(I)))
        s, m = module.sort_atoms(atoms)
        if s:
            add_into(out, m, s * Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 2)))
    return out
