"""Exact arithmetic in H = U(d) for a finite-dimensional Lie algebra d.

Elements are kept in PBW normal form: a dict mapping multi-indices
``I = (i_0, .., i_{N-1})`` to Fractions, where ``I`` stands for the ordered
monomial d_0^{i_0} ... d_{N-1}^{i_{N-1}}.  Generators are numbered from 0.

The heavy lifting works on plain dicts; :class:`HopfElement` and
:class:`HTensor` are thin immutable wrappers for callers and tests.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import reduce
from math import factorial
from typing import Iterable, Mapping

from . import perm as _perm

MultiIndex = tuple[int, ...]
Vec = dict  # MultiIndex -> Fraction


class DimensionMismatch(ValueError):
    pass


def add_into(acc: dict, key, c) -> None:
    """acc[key] += c, dropping zeros."""
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def scale(vec: Mapping, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in vec.items()}


def compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


class LieAlgebraSpec:
    """Structure constants of d: [d_i, d_j] = sum_k c[i, j][k] d_k."""

    def __init__(self, dim: int, brackets: Mapping | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), val in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"bracket index out of range: {(i, j)}")
            clean = {int(k): Fraction(c) for k, c in dict(val).items() if Fraction(c)}
            if any(not 0 <= k < dim for k in clean):
                raise ValueError(f"bracket value out of range at {(i, j)}")
            if i == j:
                if clean:
                    raise ValueError(f"antisymmetry violated: [d{i}, d{i}] != 0")
                continue
            if (j, i) in table:
                if table[(j, i)] != {k: -c for k, c in clean.items()}:
                    raise ValueError(f"antisymmetry violated for pair {(i, j)}")
                continue
            if clean:
                table[(i, j)] = clean
                table[(j, i)] = {k: -c for k, c in clean.items()}
        self.table = table
        self._check_jacobi()

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        return self.table.get((i, j), {})

    @property
    def is_abelian(self) -> bool:
        return not self.table

    def _bracket_vec(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]):
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.bracket(i, j).items():
                    add_into(out, k, a * b * c)
        return out

    def _check_jacobi(self) -> None:
        n = self.dim
        for i, j, k in itertools.combinations(range(n), 3):
            tot: dict[int, Fraction] = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                for key, val in self._bracket_vec(self.bracket(a, b), {c: Fraction(1)}).items():
                    add_into(tot, key, val)
            if tot:
                raise ValueError(f"Jacobi identity fails on (d{i}, d{j}, d{k})")

    def __eq__(self, other):
        return isinstance(other, LieAlgebraSpec) and (self.dim, self.table) == (other.dim, other.table)

    def __hash__(self):
        return hash((self.dim, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.table.items()))))

    def __repr__(self):
        return f"LieAlgebraSpec(dim={self.dim}, brackets={len(self.table) // 2})"

    # common examples -----------------------------------------------------
    @classmethod
    def abelian(cls, n: int) -> "LieAlgebraSpec":
        return cls(n)

    @classmethod
    def heisenberg(cls, m: int = 1) -> "LieAlgebraSpec":
        """Basis d_0, .., d_{2m} with [d_i, d_{m+i}] = d_0."""
        return cls(2 * m + 1, {(i, m + i): {0: 1} for i in range(1, m + 1)})

    @classmethod
    def two_dim_nonabelian(cls) -> "LieAlgebraSpec":
        """[d_0, d_1] = d_1."""
        return cls(2, {(0, 1): {1: 1}})

    @classmethod
    def from_json(cls, obj: Mapping) -> "LieAlgebraSpec":
        br = {}
        for entry in obj.get("brackets", []):
            val = entry["value"]
            if isinstance(val, Mapping):
                val = {int(k): Fraction(str(c)) for k, c in val.items()}
            else:
                val = {int(k): Fraction(str(c)) for k, c in val}
            br[(int(entry["i"]), int(entry["j"]))] = val
        return cls(int(obj["dim"]), br)

    def to_json(self) -> dict:
        out = []
        for (i, j), val in sorted(self.table.items()):
            if i < j:
                out.append({"i": i, "j": j, "value": {str(k): str(c) for k, c in sorted(val.items())}})
        return {"dim": self.dim, "brackets": out}


class Hopf:
    """H = U(d) with memoized PBW product, coproduct and antipode."""

    def __init__(self, lie: LieAlgebraSpec):
        self.lie = lie
        self.N = lie.dim
        self.zero_index: MultiIndex = (0,) * self.N
        self._lmul: dict = {}
        self._mul: dict = {}
        self._cop: dict = {}
        self._anti: dict = {}

    def __eq__(self, other):
        return isinstance(other, Hopf) and self.lie == other.lie

    def __hash__(self):
        return hash(self.lie)

    def unit(self) -> Vec:
        return {self.zero_index: Fraction(1)}

    def gen(self, i: int) -> Vec:
        e = [0] * self.N
        e[i] = 1
        return {tuple(e): Fraction(1)}

    def degree(self, I: MultiIndex) -> int:
        return sum(I)

    # product --------------------------------------------------------------
    def _left_gen(self, j: int, I: MultiIndex) -> Vec:
        """d_j * d^I in normal form."""
        key = (j, I)
        hit = self._lmul.get(key)
        if hit is not None:
            return hit
        a = next((k for k in range(self.N) if I[k]), None)
        if a is None or j <= a:
            out = {I[:j] + (I[j] + 1,) + I[j + 1:]: Fraction(1)}
        else:
            rest = I[:a] + (I[a] - 1,) + I[a + 1:]
            out: Vec = {}
            for K, c in self._left_gen(j, rest).items():
                for L, d in self._left_gen(a, K).items():
                    add_into(out, L, c * d)
            for k, c in self.lie.bracket(j, a).items():
                for L, d in self._left_gen(k, rest).items():
                    add_into(out, L, c * d)
        self._lmul[key] = out
        return out

    def left_gen_vec(self, j: int, v: Mapping) -> Vec:
        out: Vec = {}
        for I, c in v.items():
            for L, d in self._left_gen(j, I).items():
                add_into(out, L, c * d)
        return out

    def mul_basis(self, I: MultiIndex, J: MultiIndex) -> Vec:
        if self.lie.is_abelian:
            return {tuple(a + b for a, b in zip(I, J)): Fraction(1)}
        key = (I, J)
        hit = self._mul.get(key)
        if hit is not None:
            return hit
        out: Vec = {J: Fraction(1)}
        for k in range(self.N - 1, -1, -1):
            for _ in range(I[k]):
                out = self.left_gen_vec(k, out)
        self._mul[key] = out
        return out

    def mul(self, a: Mapping, b: Mapping) -> Vec:
        out: Vec = {}
        for I, c in a.items():
            for J, d in b.items():
                for K, e in self.mul_basis(I, J).items():
                    add_into(out, K, c * d * e)
        return out

    def mul_many(self, *factors: Mapping) -> Vec:
        return reduce(self.mul, factors, self.unit())

    # coalgebra ------------------------------------------------------------
    def counit(self, a: Mapping) -> Fraction:
        return Fraction(a.get(self.zero_index, 0))

    def coproduct_basis(self, I: MultiIndex, legs: int) -> list:
        """Delta^{(legs-1)}(d^I) as a list of (tuple of multi-indices, int).

        ``legs == 0`` gives the counit as the single term ((), eps).
        """
        if legs == 0:
            return [((), 1)] if not any(I) else []
        key = (I, legs)
        hit = self._cop.get(key)
        if hit is not None:
            return hit
        per_coord = []
        for ik in I:
            opts = []
            for parts in compositions(ik, legs):
                coef = factorial(ik)
                for p in parts:
                    coef //= factorial(p)
                opts.append((parts, coef))
            per_coord.append(opts)
        out = []
        for choice in itertools.product(*per_coord):
            coef = 1
            for _, c in choice:
                coef *= c
            tup = tuple(tuple(choice[k][0][leg] for k in range(self.N)) for leg in range(legs))
            out.append((tup, coef))
        self._cop[key] = out
        return out

    def iterated_coproduct(self, a: Mapping, n: int) -> dict:
        """Delta^{(n)}(a) as a dict over (n+1)-tuples; n = -1 gives {(): eps(a)}."""
        if n < -1:
            raise ValueError("invalid arity: iterated coproduct needs n >= -1")
        out: dict = {}
        for I, c in a.items():
            for tup, d in self.coproduct_basis(I, n + 1):
                add_into(out, tup, c * d)
        return out

    def coproduct(self, a: Mapping) -> dict:
        return self.iterated_coproduct(a, 1)

    def antipode_basis(self, I: MultiIndex) -> Vec:
        hit = self._anti.get(I)
        if hit is not None:
            return hit
        if self.lie.is_abelian:
            out = {I: Fraction((-1) ** sum(I))}
        else:
            # S(d^I) = (-1)^{|I|} d_{N-1}^{i_{N-1}} .. d_0^{i_0}; build the reversed
            # word by left-multiplying the letters d_0 first.
            out = self.unit()
            for k in range(self.N):
                for _ in range(I[k]):
                    out = self.left_gen_vec(k, out)
            if sum(I) % 2:
                out = scale(out, -1)
        self._anti[I] = out
        return out

    def antipode(self, a: Mapping) -> Vec:
        out: Vec = {}
        for I, c in a.items():
            for K, d in self.antipode_basis(I).items():
                add_into(out, K, c * d)
        return out

    def twisted_right(self, a: Mapping) -> dict:
        """(id (x) S) Delta(a) = sum a_(1) (x) a_(-2)."""
        out: dict = {}
        for I, c in a.items():
            for (J, K), d in self.coproduct_basis(I, 2):
                for L, e in self.antipode_basis(K).items():
                    add_into(out, (J, L), c * d * e)
        return out

    def twisted_left(self, a: Mapping) -> dict:
        """(S (x) id) Delta(a) = sum a_(-1) (x) a_(2)."""
        out: dict = {}
        for I, c in a.items():
            for (J, K), d in self.coproduct_basis(I, 2):
                for L, e in self.antipode_basis(J).items():
                    add_into(out, (L, K), c * d * e)
        return out

    # tensors ----------------------------------------------------------------
    def tensor_mul(self, a: Mapping, b: Mapping) -> dict:
        """Slotwise product in H^{(x)n}."""
        out: dict = {}
        for ta, c in a.items():
            for tb, d in b.items():
                if len(ta) != len(tb):
                    raise ValueError("arity mismatch")
                parts = [self.mul_basis(x, y) for x, y in zip(ta, tb)]
                for combo in itertools.product(*(p.items() for p in parts)):
                    coef = c * d
                    for _, e in combo:
                        coef *= e
                    add_into(out, tuple(k for k, _ in combo), coef)
        return out

    def tensor(self, *factors: Mapping) -> dict:
        """Outer product h_1 (x) .. (x) h_n."""
        out: dict = {}
        for combo in itertools.product(*(f.items() for f in factors)):
            coef = Fraction(1)
            for _, c in combo:
                coef *= c
            add_into(out, tuple(k for k, _ in combo), coef)
        return out

    # convenience wrappers -----------------------------------------------------
    def element(self, terms: Mapping | None = None) -> "HopfElement":
        return HopfElement(self, terms or {})

    def one(self) -> "HopfElement":
        return HopfElement(self, self.unit())

    def d(self, *index: int) -> "HopfElement":
        """PBW monomial with the given exponents, e.g. H.d(1, 0)."""
        if len(index) != self.N:
            raise DimensionMismatch(f"expected {self.N} exponents")
        return HopfElement(self, {tuple(index): Fraction(1)})


def format_index(I: MultiIndex) -> str:
    if not any(I):
        return "1"
    return "d[" + ",".join(map(str, I)) + "]"


def format_coef_term(c: Fraction, body: str) -> str:
    if body == "1":
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def format_hvec(v: Mapping) -> str:
    if not v:
        return "0"
    parts = [format_coef_term(c, format_index(I)) for I, c in sorted(v.items())]
    return " + ".join(parts).replace("+ -", "- ")


class HopfElement:
    """Immutable element of H in PBW normal form."""

    __slots__ = ("hopf", "terms")

    def __init__(self, hopf: Hopf, terms: Mapping):
        self.hopf = hopf
        clean = {}
        for I, c in terms.items():
            I = tuple(I)
            if len(I) != hopf.N:
                raise DimensionMismatch(f"multi-index {I} has wrong length")
            if c:
                clean[I] = Fraction(c)
        self.terms = clean

    def _same(self, other: "HopfElement"):
        if self.hopf != other.hopf:
            raise DimensionMismatch("elements over different Lie algebras")

    def _lift(self, other):
        if isinstance(other, HopfElement):
            self._same(other)
            return other
        return HopfElement(self.hopf, scale(self.hopf.unit(), Fraction(other)))

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            add_into(out, k, v)
        return HopfElement(self.hopf, out)

    __radd__ = __add__

    def __neg__(self):
        return HopfElement(self.hopf, scale(self.terms, -1))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, HopfElement):
            self._same(other)
            return HopfElement(self.hopf, self.hopf.mul(self.terms, other.terms))
        return HopfElement(self.hopf, scale(self.terms, Fraction(other)))

    def __rmul__(self, other):
        return HopfElement(self.hopf, scale(self.terms, Fraction(other)))

    def __eq__(self, other):
        if isinstance(other, HopfElement):
            return self.hopf == other.hopf and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __str__(self):
        return format_hvec(self.terms)

    __repr__ = __str__

    def counit(self) -> Fraction:
        return self.hopf.counit(self.terms)

    def antipode(self) -> "HopfElement":
        return HopfElement(self.hopf, self.hopf.antipode(self.terms))

    def coproduct(self) -> "HTensor":
        return HTensor(self.hopf, 2, self.hopf.coproduct(self.terms))

    def iterated_coproduct(self, n: int) -> "HTensor":
        return HTensor(self.hopf, n + 1, self.hopf.iterated_coproduct(self.terms, n))

    def twisted_coproduct_right(self) -> "HTensor":
        return HTensor(self.hopf, 2, self.hopf.twisted_right(self.terms))

    def twisted_coproduct_left(self) -> "HTensor":
        return HTensor(self.hopf, 2, self.hopf.twisted_left(self.terms))


class HTensor:
    """Immutable element of H^{(x)n}; arity 0 is a scalar stored under key ()."""

    __slots__ = ("hopf", "arity", "terms")

    def __init__(self, hopf: Hopf, arity: int, terms: Mapping):
        self.hopf, self.arity = hopf, arity
        clean = {}
        for t, c in terms.items():
            if len(t) != arity:
                raise ValueError("arity mismatch")
            if c:
                clean[tuple(t)] = Fraction(c)
        self.terms = clean

    @classmethod
    def of(cls, *factors: HopfElement) -> "HTensor":
        hopf = factors[0].hopf
        return cls(hopf, len(factors), hopf.tensor(*(f.terms for f in factors)))

    def __add__(self, other: "HTensor"):
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        out = dict(self.terms)
        for k, v in other.terms.items():
            add_into(out, k, v)
        return HTensor(self.hopf, self.arity, out)

    def __neg__(self):
        return HTensor(self.hopf, self.arity, scale(self.terms, -1))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HTensor):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return HTensor(self.hopf, self.arity, self.hopf.tensor_mul(self.terms, other.terms))
        return HTensor(self.hopf, self.arity, scale(self.terms, Fraction(other)))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, HTensor) and (self.arity, self.terms) == (other.arity, other.terms)

    def __hash__(self):
        return hash((self.arity, tuple(sorted(self.terms.items()))))

    def permute(self, sigma) -> "HTensor":
        return HTensor(self.hopf, self.arity, permute_tensor(self.terms, sigma))

    def swap(self) -> "HTensor":
        return self.permute((2, 1))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for t, c in sorted(self.terms.items()):
            body = "(" + "|".join(format_index(I) for I in t) + ")"
            parts.append(format_coef_term(c, body) if t else str(c))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def permute_tensor(terms: Mapping, sigma) -> dict:
    """Slot l moves to position sigma(l): new[j] = old[sigma^{-1}(j)]."""
    sigma = _perm.check(sigma)
    inv = _perm.inverse(sigma)
    out: dict = {}
    for t, c in terms.items():
        if len(t) != len(sigma):
            raise ValueError("size mismatch")
        add_into(out, tuple(t[inv[j] - 1] for j in range(len(t))), c)
    return out


def pbw_multiply(a: HopfElement, b: HopfElement) -> HopfElement:
    return a * b


def coproduct(h: HopfElement) -> HTensor:
    return h.coproduct()


def antipode(h: HopfElement) -> HopfElement:
    return h.antipode()


def counit(h: HopfElement) -> Fraction:
    return h.counit()


def iterated_coproduct(h: HopfElement, n: int) -> HTensor:
    return h.iterated_coproduct(n)


def twisted_coproduct_right(h: HopfElement) -> HTensor:
    return h.twisted_coproduct_right()


def twisted_coproduct_left(h: HopfElement) -> HTensor:
    return h.twisted_coproduct_left()


def htensor_multiply(a: HTensor, b: HTensor) -> HTensor:
    return a * b


def htensor_permute(a: HTensor, sigma) -> HTensor:
    return a.permute(sigma)


def random_element(hopf: Hopf, rng, max_degree: int = 4, max_terms: int = 4) -> HopfElement:
    """Random PBW element with small integer/rational coefficients."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        I = [0] * hopf.N
        for _ in range(deg):
            I[rng.randrange(hopf.N)] += 1
        terms[tuple(I)] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return HopfElement(hopf, terms)


__all__ = [
    "LieAlgebraSpec", "Hopf", "HopfElement", "HTensor", "pbw_multiply", "coproduct",
    "antipode", "counit", "iterated_coproduct", "twisted_coproduct_right",
    "twisted_coproduct_left", "htensor_multiply", "htensor_permute", "random_element",
]
