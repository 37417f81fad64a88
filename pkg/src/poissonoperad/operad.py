"""The classical operad of graph-indexed H-multilinear maps on PiV.

An element Y of arity n is a computable family Y^G : V^{(x)n} -> H^{(x)s(G)} (x)_H V
indexed by n-graphs G.  Values are canonical pseudo-tensors keyed by
(coefficient slots, monomial); arity-0 values are representatives in V/H_+V.
All operadic signs use the reversed parity pbar = 1 + p.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from . import perm as P
from .graphs import (Graph, cocompose, connected_components, edgeless, enumerate_acyclic,
                     externally_connected, induced_component_permutation, is_acyclic,
                     oriented_cycles, permute_graph, rho_permutation)
from .hmodule import AlgebraElement, ModuleSpec, PseudoTensor
from .hopf import add_into, scale
from .pseudoalg import PseudoAlgebraSpec

Value = dict
ValueFn = Callable[[Graph, tuple], Value]


class ArityMismatch(ValueError):
    pass


class InvarianceViolation(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def pbar(module: ModuleSpec, mono) -> int:
    return 1 - module.parity(mono)


class OperadElement:
    """A graph-indexed family of maps, evaluated lazily and memoized."""

    def __init__(self, module: ModuleSpec, arity: int, parity: int, fn: ValueFn, name: str = ""):
        if arity < 0:
            raise ArityMismatch("arity must be non-negative")
        self.module = module
        self.arity = arity
        self.parity = parity % 2
        self._fn = fn
        self.name = name
        self._cache: dict = {}

    def __repr__(self):
        return f"OperadElement({self.name or '?'}, arity={self.arity}, pbar={self.parity})"

    def value(self, G: Graph, monos: tuple) -> Value:
        """Y^G on a tuple of monomials."""
        if G.n != self.arity or len(monos) != self.arity:
            raise ArityMismatch(f"{self!r} evaluated on {G.n} vertices / {len(monos)} inputs")
        if not is_acyclic(G):
            return {}
        key = (G, monos)
        hit = self._cache.get(key)
        if hit is None:
            hit = {k: c for k, c in self._fn(G, monos).items() if c}
            self._cache[key] = hit
        return hit

    def eval_vec(self, G: Graph, vecs: Sequence[Mapping]) -> Value:
        if len(vecs) != self.arity:
            raise ArityMismatch(f"expected {self.arity} inputs, got {len(vecs)}")
        if not is_acyclic(G):
            return {}
        out: dict = {}
        for combo in itertools.product(*(v.items() for v in vecs)):
            coef = Fraction(1)
            for _, c in combo:
                coef *= c
            if not coef:
                continue
            for k, x in self.value(G, tuple(m for m, _ in combo)).items():
                add_into(out, k, coef * x)
        return out

    def eval(self, G: Graph, v: Sequence[AlgebraElement]) -> PseudoTensor:
        return PseudoTensor(self.module, connected_components(G).__len__(),
                            self.eval_vec(G, [x.terms for x in v]))

    def __add__(self, other):
        return linear_combination([(1, self), (1, other)])

    def __sub__(self, other):
        return linear_combination([(1, self), (-1, other)])

    def __neg__(self):
        return linear_combination([(-1, self)])

    def __rmul__(self, c):
        return linear_combination([(c, self)])


def eval(Y: OperadElement, G: Graph, v: Sequence[AlgebraElement]) -> PseudoTensor:
    return Y.eval(G, v)


def reduce_value(module: ModuleSpec, val: Mapping, s: int) -> dict:
    """Canonical comparison form; arity-0 values are reduced modulo H_+V."""
    if s or not val:
        return {k: c for k, c in val.items() if c}
    vec = {m: c for (_, m), c in val.items()}
    bound = max(module.weight(m) for m in vec)
    return {((), m): c for m, c in module.quotient_class(vec, bound).items()}


def difference(module, a: Mapping, b: Mapping, s: int) -> dict:
    out = dict(a)
    for k, c in b.items():
        add_into(out, k, -c)
    return reduce_value(module, out, s)


# ---------------------------------------------------------------------------
# basic elements

def unit(module: ModuleSpec) -> OperadElement:
    return OperadElement(module, 1, 0, lambda G, v: {((), v[0]): Fraction(1)}, "1")


def zero(module: ModuleSpec, arity: int, parity: int = 0) -> OperadElement:
    return OperadElement(module, arity, parity, lambda G, v: {}, "0")


def linear_combination(terms: Sequence[tuple]) -> OperadElement:
    terms = [(Fraction(c), Y) for c, Y in terms]
    Y0 = terms[0][1]
    for _, Y in terms:
        if Y.arity != Y0.arity:
            raise ArityMismatch("linear combination of different arities")

    def fn(G, v):
        out: dict = {}
        for c, Y in terms:
            for k, x in Y.value(G, v).items():
                add_into(out, k, c * x)
        return out

    return OperadElement(Y0.module, Y0.arity, Y0.parity, fn, "lincomb")


def restrict(Y: OperadElement, keep: Callable[[Graph], bool], name: str = "") -> OperadElement:
    return OperadElement(Y.module, Y.arity, Y.parity,
                         lambda G, v: Y.value(G, v) if keep(G) else {}, name or Y.name)


def quotient_element(module: ModuleSpec, vec: Mapping, name: str = "v") -> OperadElement:
    """A degree -1 cochain: the class of vec in V/H_+V."""
    pars = {module.parity(m) for m in vec}
    if len(pars) > 1:
        raise ValueError("class must be parity-homogeneous")
    p = pars.pop() if pars else 0
    vec = {m: Fraction(c) for m, c in vec.items()}
    return OperadElement(module, 0, 1 - p, lambda G, v: {((), m): c for m, c in vec.items()}, name)


def derivation_element(module: ModuleSpec, images: Mapping, parity: int, name: str = "D") -> OperadElement:
    """H-linear superderivation of V fixed by generator images; pbar = V-parity for arity 1."""
    imgs = {}
    for g, vec in images.items():
        l = module.index[g] if isinstance(g, str) else g
        for m in vec:
            if module.parity(m) != (module.parities[l] + parity) % 2:
                raise ValueError("image parity does not match the derivation parity")
        imgs[l] = dict(vec)

    def on_mono(mono):
        out: dict = {}
        before = 0
        for i, (l, I) in enumerate(mono):
            img = module.act_basis_vec(I, imgs.get(l, {})) if l in imgs else {}
            s = _sign(parity * before)
            left, right = {mono[:i]: Fraction(1)}, {mono[i + 1:]: Fraction(1)}
            for m, c in module.mul(module.mul(left, img), right).items():
                add_into(out, m, s * c)
            before += module.parities[l]
        return out

    return OperadElement(module, 1, parity,
                         lambda G, v: {((), m): c for m, c in on_mono(v[0]).items()}, name)


def weight_element(module: ModuleSpec, weights: Mapping[int, Fraction], name: str = "W") -> OperadElement:
    """Even H-linear map m -> w(deg m) m, deg = number of atoms."""
    w = {int(k): Fraction(c) for k, c in weights.items()}
    return OperadElement(module, 1, 0,
                         lambda G, v: {((), v[0]): w[len(v[0])]} if w.get(len(v[0])) else {}, name)


# ---------------------------------------------------------------------------
# symmetric action and circle products

def symmetric_action(Y: OperadElement, sigma: Sequence[int]) -> OperadElement:
    """(Y^sigma)^G(v) = (sigma~ (x)_H 1) Y^{sigma G}(sigma v)."""
    sigma = P.check(sigma)
    if len(sigma) != Y.arity:
        raise ArityMismatch("permutation size does not match the arity")
    if sigma == P.identity(Y.arity):
        return Y
    M = Y.module
    inv = P.inverse(sigma)

    def fn(G, v):
        sv = tuple(v[inv[i] - 1] for i in range(len(v)))
        s = P.koszul_sign(sigma, [pbar(M, m) for m in v])
        val = Y.value(permute_graph(sigma, G), sv)
        if not val:
            return {}
        nc = len(connected_components(G))
        if nc <= 1:
            return scale(val, s)
        tilde = induced_component_permutation(sigma, G)
        return scale(M.permute_slots(tilde, val, nc), s)

    return OperadElement(M, Y.arity, Y.parity, fn, f"{Y.name}^{P.to_cycles(sigma)}")


def circle(Y: OperadElement, X: OperadElement, k: int, reverse_twists: bool = False) -> OperadElement:
    """Y o_k X: insert X into slot k of Y.

    ``reverse_twists`` applies the twisted Sweedler legs in the opposite order;
    the result must not change because their supports are disjoint.
    """
    n, m = Y.arity, X.arity
    if not 1 <= k <= n:
        raise ArityMismatch(f"slot {k} out of range for arity {n}")
    if Y.module is not X.module and Y.module.names != X.module.names:
        raise ArityMismatch("elements over different modules")
    M, H = Y.module, Y.module.hopf
    z = H.zero_index
    sizes = tuple([1] * (k - 1) + [m] + [1] * (n - k))

    def fn(G, v):
        co = cocompose(G, sizes)
        if not is_acyclic(co.outer):
            return {}
        inner = co.inner[k - 1]
        xval = X.value(inner, tuple(v[k - 1:k - 1 + m]))
        if not xval:
            return {}
        rho = rho_permutation(G, k, m)
        icomps = connected_components(inner)
        ocomps = connected_components(co.outer)
        s, t = len(icomps), len(ocomps)
        q = next(j for j, c in enumerate(ocomps, 1) if k in c)
        ext = []
        for comp in icomps:
            e: set = set()
            for x in comp:
                e |= externally_connected(G, sizes, k - 1 + x)
            ext.append(sorted(e))
        base = {}
        for j in range(1, n + 1):
            if j != k:
                base[j] = {v[j - 1] if j < k else v[j + m - 2]: Fraction(1)}
        sign = _sign(X.parity * sum(pbar(M, x) for x in v[:k - 1]))
        total = s + t - 1
        order = list(range(s - 1))
        if reverse_twists:
            order.reverse()
        raw: dict = {}
        for (F, e), c in xval.items():
            branches = [(c * sign, {}, base)]
            for l in order:
                tw = H.twisted_right({F[l]: Fraction(1)})
                nb = []
                for coef, fp, inp in branches:
                    for (a, b), w in tw.items():
                        if not ext[l]:
                            if b == z:
                                nb.append((coef * w, {**fp, l: a}, inp))
                            continue
                        for legs, d in H.coproduct_basis(b, len(ext[l])):
                            new = dict(inp)
                            for j, leg in zip(ext[l], legs):
                                new[j] = M.act_basis_vec(leg, inp[j])
                            if all(new[j] for j in ext[l]):
                                nb.append((coef * w * d, {**fp, l: a}, new))
                branches = nb
            for coef, fp, inp in branches:
                yin = [inp[j] for j in range(1, k)] + [{e: Fraction(1)}] + [inp[j] for j in range(k + 1, n + 1)]
                for (Gs, y), d in Y.eval_vec(co.outer, yin).items():
                    Gs = Gs + (z,) if t else Gs
                    outer_slots = {}
                    for j in range(1, t + 1):
                        if j != q:
                            outer_slots[s + j if j < q else s - 1 + j] = Gs[j - 1]
                    if s == 0:
                        if Gs[q - 1] != z:
                            continue
                        if total == 0:
                            add_into(raw, ((), y), coef * d)
                            continue
                        slots = [None] * total
                        for lab, g in outer_slots.items():
                            slots[rho[lab - 1] - 1] = g
                        add_into(raw, (tuple(slots), y), coef * d)
                        continue
                    for legs, w in H.coproduct_basis(Gs[q - 1], s):
                        factors = []
                        for i in range(s):
                            f1 = fp.get(i, z) if i < s - 1 else z
                            factors.append(H.mul_basis(f1, legs[i]))
                        for combo in itertools.product(*(f.items() for f in factors)):
                            x = coef * d * w
                            slots = [None] * total
                            for i, (K, c2) in enumerate(combo):
                                x *= c2
                                slots[rho[i] - 1] = K
                            for lab, g in outer_slots.items():
                                slots[rho[lab - 1] - 1] = g
                            add_into(raw, (tuple(slots), y), x)
        if total == 0:
            return raw
        return M.normalize(raw, total)

    return OperadElement(M, n + m - 1, Y.parity + X.parity, fn, f"({Y.name} o{k} {X.name})")


def circle1(Y: OperadElement, X: OperadElement) -> OperadElement:
    return circle(Y, X, 1)


def circlek(Y: OperadElement, X: OperadElement, k: int) -> OperadElement:
    return circle(Y, X, k)


def compose(Y: OperadElement, Xs: Sequence[OperadElement]) -> OperadElement:
    """Y(X_1, .., X_n) as iterated circle products."""
    if len(Xs) != Y.arity:
        raise ArityMismatch(f"need {Y.arity} elements, got {len(Xs)}")
    out, pos = Y, 1
    for X in Xs:
        out = circle(out, X, pos)
        pos += X.arity
    return out


# ---------------------------------------------------------------------------
# universal Lie superalgebra

def box_product(f: OperadElement, g: OperadElement, probes: Iterable | None = None) -> OperadElement:
    """f box g = sum over (m+1, n)-shuffles of (f o1 g)^{sigma^{-1}}."""
    if probes is not None:
        for Y in (f, g):
            bad = invariance_residuals(Y, probes)
            if bad:
                raise InvarianceViolation(f"{Y.name} is not permutation invariant: {bad[0]}")
    n, m = f.arity - 1, g.arity - 1
    arity = n + m + 1
    if n < 0:
        return zero(f.module, max(arity, 0), f.parity + g.parity)
    base = circle(f, g, 1)
    parts = [symmetric_action(base, P.inverse(sig)) for sig in P.shuffles(m + 1, n)]
    out = linear_combination([(1, Y) for Y in parts])
    out.name = f"({f.name} box {g.name})"
    return out


def bracket(f: OperadElement, g: OperadElement) -> OperadElement:
    a, b = box_product(f, g), box_product(g, f)
    out = linear_combination([(1, a), (-_sign(f.parity * g.parity), b)])
    out.name = f"[{f.name},{g.name}]"
    return out


# ---------------------------------------------------------------------------
# probes and checks

def generator_monomials(module: ModuleSpec) -> list:
    z = module.hopf.zero_index
    return [((l, z),) for l in range(len(module.names))]


def degree_two_monomials(module: ModuleSpec) -> list:
    """Products of two generators, or first derivatives for a free module."""
    z = module.hopf.zero_index
    if module.is_free:
        out = []
        for l in range(len(module.names)):
            for i in range(module.N):
                I = tuple(1 if j == i else 0 for j in range(module.N))
                out.append(((l, I),))
        return out
    out = []
    gens = [(l, z) for l in range(len(module.names))]
    for a, b in itertools.combinations_with_replacement(gens, 2):
        s, m = module.sort_atoms((a, b))
        if s:
            out.append(m)
    return out


def probe_tuples(module: ModuleSpec, n: int, with_degree_two: bool = True) -> list:
    """All generator tuples plus each slot replaced in turn by a degree-2 monomial."""
    gens = generator_monomials(module)
    out = list(itertools.product(gens, repeat=n))
    if with_degree_two and n:
        twos = degree_two_monomials(module)
        for i in range(n):
            for w in twos:
                for rest in itertools.product(gens[:1], repeat=n - 1):
                    out.append(rest[:i] + (w,) + rest[i:])
    seen, uniq = set(), []
    for t in out:
        if t not in seen:
            seen.add(t)
            uniq.append(t)
    return uniq


def residual_record(module, Gr: Graph, monos, res: Mapping, **extra) -> dict:
    s = len(connected_components(Gr))
    return {"graph": str(Gr), "args": [module.format_mono(m) for m in monos],
            "residual": module.format_pseudo(res, s) if s else module.format_vec({m: c for (_, m), c in res.items()}),
            **extra}


def compare(A: OperadElement, B: OperadElement, graphs: Iterable[Graph], probes: Iterable) -> list:
    """Extensional comparison of two elements; returns the nonzero residuals."""
    out = []
    probes = list(probes)
    for Gr in graphs:
        s = len(connected_components(Gr))
        for v in probes:
            r = difference(A.module, A.value(Gr, v), B.value(Gr, v), s)
            if r:
                out.append(residual_record(A.module, Gr, v, r))
    return out


def invariance_residuals(Y: OperadElement, probes: Iterable, graphs: Iterable[Graph] | None = None) -> list:
    n = Y.arity
    if n < 2:
        return []
    graphs = list(graphs) if graphs is not None else enumerate_acyclic(n)
    out = []
    for i in range(1, n):
        out += compare(symmetric_action(Y, P.transposition(n, i, i + 1)), Y, graphs, probes)
    return out


def check_cycle_conditions(Y: OperadElement, graphs: Iterable[Graph], probes: Iterable, max_len: int = 3) -> list:
    """First and second cycle conditions on the given (possibly cyclic) graphs."""
    out = []
    M = Y.module
    probes = list(probes)
    for Gr in graphs:
        s = len(connected_components(Gr))
        for v in probes:
            if not is_acyclic(Gr) and Y.value(Gr, v):
                out.append(residual_record(M, Gr, v, Y.value(Gr, v), condition="first"))
            for C in oriented_cycles(Gr, max_len):
                acc: dict = {}
                for e in C:
                    for key, c in Y.value(Gr.remove_edge(e), v).items():
                        add_into(acc, key, c)
                acc = reduce_value(M, acc, s)
                if acc:
                    out.append(residual_record(M, Gr, v, acc, condition="second",
                                               cycle=[f"{a}->{b}" for a, b in C]))
    return out


def check_h_linearity(Y: OperadElement, Gr: Graph, monos: tuple, h: Mapping) -> list:
    """Y^G(h ._{G_k} v) = (1 .. h .. 1) Y^G(v) for every component k."""
    M, H = Y.module, Y.module.hopf
    comps = connected_components(Gr)
    s = len(comps)
    out = []
    if s == 0:
        return out
    base = Y.value(Gr, monos)
    for k, comp in enumerate(comps, 1):
        verts = sorted(comp)
        vecs = [{x: Fraction(1)} for x in monos]
        lhs: dict = {}
        for legs, c in H.iterated_coproduct(h, len(verts) - 1).items():
            acted = list(vecs)
            for vtx, leg in zip(verts, legs):
                acted[vtx - 1] = M.act_basis_vec(leg, vecs[vtx - 1])
            for key, x in Y.eval_vec(Gr, acted).items():
                add_into(lhs, key, c * x)
        rhs = M.act_component(h, k, base, s) if s > 1 else _act_value(M, h, base)
        r = difference(M, lhs, rhs, s)
        if r:
            out.append(residual_record(M, Gr, monos, r, component=k))
    return out


def _act_value(M, h, val):
    out: dict = {}
    for ((), m), c in val.items():
        for m2, d in M.act(h, {m: Fraction(1)}).items():
            add_into(out, ((), m2), c * d)
    return out


# ---------------------------------------------------------------------------
# master element

@dataclass
class MasterElement:
    X: OperadElement
    spec: PseudoAlgebraSpec

    @property
    def module(self) -> ModuleSpec:
        return self.spec.module

    @property
    def X0(self) -> OperadElement:
        return grade_decompose(self.X)[0]

    @property
    def X1(self) -> OperadElement:
        return grade_decompose(self.X)[1]


EDGELESS2 = Graph(2, ())
EDGE12 = Graph(2, ((1, 2),))
EDGE21 = Graph(2, ((2, 1),))


def master_from_maps(module: ModuleSpec, bracket_fn, product_fn, spec=None, name: str = "X") -> OperadElement:
    """Odd arity-2 element from a bracket and a product on monomials.

    bracket_fn(A, B) returns a canonical arity-2 value and product_fn(A, B)
    returns a vector (or None for a pure Lie pseudoalgebra).
    """
    M = module

    def fn(G, v):
        A, B = v
        s = _sign(M.parity(A))
        if not G.edges:
            return scale(bracket_fn(A, B), s)
        if product_fn is None:
            return {}
        c = s if G.edges == ((1, 2),) else -s
        return {((), m): c * x for m, x in product_fn(A, B).items()}

    return OperadElement(M, 2, 1, fn, name)


def poisson_to_master(spec: PseudoAlgebraSpec) -> MasterElement:
    """ab = (-1)^{p(a)} X^{1->2}(a (x) b) and [a*b] = (-1)^{p(a)} X^{edgeless}(a (x) b).

    For a Lie pseudoalgebra (free module) only the edgeless component is present.
    """
    M = spec.module
    product = None if M.is_free else (lambda A, B: M.mul({A: Fraction(1)}, {B: Fraction(1)}))
    return MasterElement(master_from_maps(M, spec.bracket_mono, product), spec)


def master_to_poisson(master: MasterElement) -> tuple[dict, dict]:
    """Recover (product table, bracket table) on generators."""
    M = master.module
    gens = generator_monomials(M)
    prod, br = {}, {}
    for A, B in itertools.product(gens, repeat=2):
        s = _sign(M.parity(A))
        a, b = A[0][0], B[0][0]
        br[(a, b)] = scale(master.X.value(EDGELESS2, (A, B)), s)
        if not M.is_free:
            prod[(a, b)] = {m: s * c for ((), m), c in master.X.value(EDGE12, (A, B)).items()}
    return prod, br


CASES = {0: "jacobi", 1: "leibniz", 2: "associativity"}


def check_master(master: MasterElement, probes: Iterable | None = None, jobs: int = 1,
                 graphs: Iterable[Graph] | None = None) -> list:
    """(X box X)^G(v) on acyclic 3-graphs; residuals tagged by edge count."""
    M = master.module
    XX = box_product(master.X, master.X)
    probes = list(probes) if probes is not None else list(itertools.product(generator_monomials(M), repeat=3))
    graphs = list(graphs) if graphs is not None else enumerate_acyclic(3)

    def run(Gr):
        s = len(connected_components(Gr))
        found = []
        for v in probes:
            r = reduce_value(M, XX.value(Gr, v), s)
            if r:
                found.append(residual_record(M, Gr, v, r, case=CASES[len(Gr.edges)]))
        return found

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(run, graphs))
    else:
        chunks = [run(Gr) for Gr in graphs]
    return [r for c in chunks for r in c]


# ---------------------------------------------------------------------------
# grading and cohomology

def grade_decompose(Y: OperadElement) -> dict[int, OperadElement]:
    """Y = sum_r Y_r with Y_r supported on graphs with r edges."""
    top = max(Y.arity - 1, 0)
    return {r: restrict(Y, (lambda G, r=r: len(G.edges) == r), f"{Y.name}_{r}") for r in range(top + 1)}


def phi(f: OperadElement) -> OperadElement:
    """Embed an edgeless-supported cochain into the degree-0 graded piece."""
    return restrict(f, lambda G: not G.edges, f"phi({f.name})")


def classical_differential(master: MasterElement, f: OperadElement) -> OperadElement:
    out = bracket(master.X, f)
    out.name = f"ad_X {f.name}"
    return out


def variational_differential(Xstar: OperadElement, f: OperadElement, check: bool = True) -> OperadElement:
    """ad_{X*} f computed inside the edgeless suboperad."""
    if check:
        bad = check_variational_leibniz(f)
        if bad:
            raise PreconditionFailed(f"cochain {f.name} fails the Leibniz condition: {bad[0]}")
    return phi(bracket(phi(Xstar), phi(f)))


def check_variational_leibniz(f: OperadElement, atoms: Sequence | None = None) -> list:
    """Residuals of the Leibniz condition for edgeless cochains, every slot.

    In slot 1 with inputs (ab, c_2, .., c_n) the condition reads
    f(ab, c) = (-1)^{pbar f + p(a)} (T1 + T2) with
    T2 = (-1)^{pbar(b) pbar(c)} (-1)^{p(x)(1+p(b))} b ._1 f(a, c),
    T1 = -(-1)^{pbar(a)(pbar(b)+pbar(c))} (-1)^{p(x')(1+p(a))} a ._1 f(b, c),
    where x, x' are the outputs of f(a, c), f(b, c).  Other slots are moved to
    slot 1 by a transposition.
    """
    M = f.module
    n = f.arity
    if n == 0 or M.is_free:
        return []
    gens = generator_monomials(M)
    atoms = list(atoms) if atoms is not None else gens
    E = edgeless(n)
    F = f.parity
    pV = (F + n + 1) % 2
    out = []
    for i in range(1, n + 1):
        g = f if i == 1 else symmetric_action(f, P.transposition(n, 1, i))
        for A, B in itertools.product(atoms, repeat=2):
            sg, AB = M.mul_mono(A, B)
            for cs in itertools.product(gens, repeat=n - 1):
                pa, pb = M.parity(A), M.parity(B)
                pc = sum(M.parity(c) for c in cs)
                qc = sum(1 - M.parity(c) for c in cs)
                lhs = scale(g.value(E, (AB,) + cs), sg) if sg else {}
                px = (pV + pa + pc) % 2
                px2 = (pV + pb + pc) % 2
                t2 = M.dot_slot({B: Fraction(1)}, 1, g.value(E, (A,) + cs), n)
                t1 = M.dot_slot({A: Fraction(1)}, 1, g.value(E, (B,) + cs), n)
                s2 = _sign((1 - pb) * qc + px * (1 + pb))
                s1 = -_sign((1 - pa) * ((1 - pb) + qc) + px2 * (1 + pa))
                pre = _sign(F + pa)
                res = dict(lhs)
                for k, c in t2.items():
                    add_into(res, k, -pre * s2 * c)
                for k, c in t1.items():
                    add_into(res, k, -pre * s1 * c)
                if res:
                    v = (AB,) + cs
                    out.append(residual_record(M, E, v, res, slot=i,
                                               factors=[M.format_mono(A), M.format_mono(B)]))
    return out


# ---------------------------------------------------------------------------
# random elements

def random_quotient_element(module: ModuleSpec, rng, max_terms: int = 2) -> OperadElement:
    par = rng.randrange(2)
    mon = [m for m in module.monomials_up_to(3) if m and module.parity(m) == par]
    if not mon:
        par = 1 - par
        mon = [m for m in module.monomials_up_to(3) if m and module.parity(m) == par]
    vec: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        add_into(vec, rng.choice(mon), Fraction(rng.choice([-2, -1, 1, 3])))
    return quotient_element(module, vec or {mon[0]: Fraction(1)}, "v")


def random_derivation(module: ModuleSpec, rng, parity: int | None = None, max_terms: int = 2) -> OperadElement:
    parity = rng.randrange(2) if parity is None else parity
    monos = [m for m in module.monomials_up_to(3)]
    images = {}
    for l, p in enumerate(module.parities):
        cand = [m for m in monos if module.parity(m) == (p + parity) % 2]
        vec: dict = {}
        for _ in range(rng.randint(0, max_terms)):
            if cand:
                add_into(vec, rng.choice(cand), Fraction(rng.choice([-1, 1, 2])))
        images[l] = {m: c for m, c in vec.items() if c}
    return derivation_element(module, images, parity, "D")


def random_weight_map(module: ModuleSpec, rng) -> OperadElement:
    return weight_element(module, {d: Fraction(rng.randint(-2, 2)) for d in range(0, 5)}, "Wt")


def free_element(module: ModuleSpec, arity: int, parity: int, tables: Mapping, choices: Mapping | None = None,
                 name: str = "Y") -> OperadElement:
    """Element over a free module fixed by its values on generator tuples.

    ``tables`` maps an undirected edge set (frozenset of sorted pairs) to
    {generator tuple: canonical value}; the value on an oriented graph carries
    the sign (-1)^{#edges pointing downwards}.  On inputs d^{I_i} e_{l_i}
    component k keeps the H-factor of one chosen vertex and applies the counit
    to the rest, which makes the element componentwise H-linear.  With support
    on at most one edge both cycle conditions hold.
    """
    if not module.is_free:
        raise ValueError("free_element needs a free module")
    H = module.hopf
    z = H.zero_index
    choices = dict(choices or {})

    def fn(G, v):
        key = frozenset(tuple(sorted(e)) for e in G.edges)
        table = tables.get(key)
        if not table or len(key) != len(G.edges):
            return {}
        sign = _sign(sum(1 for a, b in G.edges if a > b))
        gens = tuple(m[0][0] for m in v)
        T = table.get(gens)
        if not T:
            return {}
        if arity == 0:
            return dict(T)
        comps = connected_components(G)
        xs = []
        for k, comp in enumerate(comps):
            verts = sorted(comp)
            pick = verts[choices.get((key, k), 0) % len(verts)]
            if any(v[u - 1][0][1] != z for u in verts if u != pick):
                return {}
            xs.append(v[pick - 1][0][1])
        raw: dict = {}
        for (Fs, e), c in T.items():
            slots = list(Fs) + [z]
            parts = [H.mul_basis(x, f) for x, f in zip(xs, slots)]
            for combo in itertools.product(*(p.items() for p in parts)):
                x = c * sign
                for _, d in combo:
                    x *= d
                add_into(raw, (tuple(K for K, _ in combo), e), x)
        return module.normalize(raw, len(comps))

    return OperadElement(module, arity, parity, fn, name)


def random_free_element(module: ModuleSpec, rng, arity: int, with_edges: bool = True,
                        max_order: int = 1) -> OperadElement:
    """Random free_element with rational coefficients and small H-degrees."""
    H = module.hopf
    z = H.zero_index
    parity = rng.randrange(2)
    pV = (parity + arity + 1) % 2
    keys = [frozenset()]
    if with_edges:
        keys += [frozenset([e]) for e in itertools.combinations(range(1, arity + 1), 2)]
    small = [I for I in _multi_indices(module.N, max_order)]
    tables, choices = {}, {}
    for key in keys:
        Gr = Graph(arity, tuple(key))
        s = len(connected_components(Gr))
        table = {}
        for gens in itertools.product(range(len(module.names)), repeat=arity):
            want = (pV + sum(module.parities[l] for l in gens)) % 2
            outs = [l for l, p in enumerate(module.parities) if p == want]
            if not outs or rng.random() < 0.2:
                continue
            T: dict = {}
            for _ in range(rng.randint(1, 3)):
                F = tuple(rng.choice(small) for _ in range(max(s - 1, 0)))
                I = rng.choice(small) if arity else z
                add_into(T, (F, ((rng.choice(outs), I),)), Fraction(rng.choice([-2, -1, 1, 2, 3])))
            if arity and s:
                T = module.normalize(module.canonical_to_raw(T), s)
            else:
                T = {((), m): c for ((), m), c in T.items() if m[0][1] == z}
            if T:
                table[gens] = T
        tables[key] = table
        for k in range(s):
            choices[(key, k)] = rng.randrange(arity or 1)
    return free_element(module, arity, parity, tables, choices, f"R{arity}")


def _multi_indices(N: int, order: int) -> list:
    out = []
    for parts in itertools.product(range(order + 1), repeat=N):
        if sum(parts) <= order:
            out.append(tuple(parts))
    return sorted(out)


# ---------------------------------------------------------------------------
# negative controls

def negative_control(kind: str) -> MasterElement:
    """Deliberately broken master elements, one per failure mode.

    jacobi:        type-W bracket with an extra central term d^5 (x) 1
    leibniz:       boson bracket doubled on products of generators
    associativity: zero bracket, commutative product with u.v doubled
    """
    from .pseudoalg import build_boson, build_type_W
    from .hmodule import SYMMETRIC
    from .hopf import LieAlgebraSpec
    if kind == "jacobi":
        W = build_type_W()
        M = W.module
        bad = dict(W.table[(0, 0)])
        add_into(bad, (((5,),), ()), Fraction(1))
        spec = PseudoAlgebraSpec(M, {(0, 0): bad}, name="jacobi_control", complete=False)
        return poisson_to_master(spec)
    if kind == "leibniz":
        spec = build_boson()
        M = spec.module

        def br(A, B):
            T = spec.bracket_mono(A, B)
            return scale(T, 2) if len(A) + len(B) > 2 else T

        prod = lambda A, B: M.mul({A: Fraction(1)}, {B: Fraction(1)})
        return MasterElement(master_from_maps(M, br, prod, name="X_leibniz_control"), spec)
    if kind == "associativity":
        M = ModuleSpec(LieAlgebraSpec.abelian(1), [("u", 0), ("v", 0)], SYMMETRIC)
        spec = PseudoAlgebraSpec(M, {}, name="associativity_control")
        uv = {((0, (0,)),), ((1, (0,)),)}

        def prod(A, B):
            w = 2 if {A, B} == uv else 1
            return scale(M.mul({A: Fraction(1)}, {B: Fraction(1)}), w)

        return MasterElement(master_from_maps(M, lambda A, B: {}, prod, name="X_assoc_control"), spec)
    raise ValueError(f"unknown control {kind!r}")
