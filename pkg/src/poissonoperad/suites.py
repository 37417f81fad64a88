"""Reusable property checks shared by the test-suite and the selftest command.

Every function returns a list of failures (empty means pass) so that callers
can aggregate them into reports.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from pathlib import Path

from . import graphs as G
from . import perm as P
from .hopf import Hopf, LieAlgebraSpec, add_into, random_element
from .operad import (OperadElement, circle, compare, linear_combination, symmetric_action, unit)

DATA_DIR = Path(__file__).with_name("data")


# Hopf algebra ---------------------------------------------------------------------

def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        add_into(out, k, -c)
    return out


def _tensor_apply(H: Hopf, T: dict, ops) -> dict:
    """Apply one linear map per leg (None = identity) to a tensor."""
    out: dict = {}
    for legs, c in T.items():
        parts = []
        for leg, op in zip(legs, ops):
            parts.append(op({leg: Fraction(1)}) if op else {leg: Fraction(1)})
        for combo in itertools.product(*(p.items() for p in parts)):
            x = c
            for _, d in combo:
                x *= d
            add_into(out, tuple(k for k, _ in combo), x)
    return out


def _mul_legs(H: Hopf, T: dict, i: int, j: int) -> dict:
    """Multiply leg i into leg j (i < j adjacent), producing one fewer leg."""
    out: dict = {}
    for legs, c in T.items():
        for K, d in H.mul_basis(legs[i], legs[j]).items():
            new = legs[:i] + (K,) + legs[j + 1:]
            add_into(out, new, c * d)
    return out


def hopf_identities(H: Hopf, h: dict) -> list[str]:
    """Coassociativity, cocommutativity and the antipode/counit identities."""
    fails = []
    z = H.zero_index
    S = H.antipode
    D2 = H.iterated_coproduct(h, 2)
    left = {}
    for (a, b), c in H.coproduct(h).items():
        for (a1, a2), d in H.coproduct({a: Fraction(1)}).items():
            add_into(left, (a1, a2, b), c * d)
    if _sub(left, D2):
        fails.append("coassociativity")
    D = H.coproduct(h)
    if _sub(D, {(b, a): c for (a, b), c in D.items()}):
        fails.append("cocommutativity")
    eps = H.counit(h)
    unit_eps = {z: eps} if eps else {}
    # eps(h) = h(-1) h(2) = h(1) h(-2)
    for name, T in (("S(h1)h2", _tensor_apply(H, D, (S, None))), ("h1S(h2)", _tensor_apply(H, D, (None, S)))):
        prod: dict = {}
        for (a, b), c in T.items():
            for K, d in H.mul_basis(a, b).items():
                add_into(prod, K, c * d)
        if _sub(prod, unit_eps):
            fails.append(f"antipode {name}")
    # h = eps(h(1)) h(2) = h(1) eps(h(2))
    l1 = {b: c for (a, b), c in D.items() if a == z}
    l2 = {a: c for (a, b), c in D.items() if b == z}
    if _sub(l1, h) or _sub(l2, h):
        fails.append("counit")
    one_h = {(z, k): c for k, c in h.items()}
    h_one = {(k, z): c for k, c in h.items()}
    if _sub(_mul_legs(H, _tensor_apply(H, D2, (S, None, None)), 0, 1), one_h):
        fails.append("h(-1)h(2) (x) h(3) = 1 (x) h")
    if _sub(_mul_legs(H, _tensor_apply(H, D2, (None, S, None)), 0, 1), one_h):
        fails.append("h(1)h(-2) (x) h(3) = 1 (x) h")
    if _sub(_mul_legs(H, _tensor_apply(H, D2, (None, S, None)), 1, 2), h_one):
        fails.append("h(1) (x) h(-2)h(3) = h (x) 1")
    if _sub(_mul_legs(H, _tensor_apply(H, D2, (None, None, S)), 1, 2), h_one):
        fails.append("h(1) (x) h(2)h(-3) = h (x) 1")
    return fails


def hopf_suite(rng, count: int = 200, max_degree: int = 4) -> list[dict]:
    algebras = [("abelian1", LieAlgebraSpec.abelian(1)), ("abelian2", LieAlgebraSpec.abelian(2)),
                ("abelian3", LieAlgebraSpec.abelian(3)), ("heisenberg1", LieAlgebraSpec.heisenberg(1))]
    out = []
    for name, lie in algebras:
        H = Hopf(lie)
        for i in range(count):
            h = random_element(H, rng, max_degree).terms
            for f in hopf_identities(H, h):
                out.append({"algebra": name, "instance": i, "identity": f})
    return out


# graphs ---------------------------------------------------------------------------

def golden_graphs(path: Path | None = None) -> list[dict]:
    """Replay the stored worked examples; each entry carries ok/got/expected."""
    gold = json.loads((path or DATA_DIR / "golden.json").read_text(encoding="utf-8"))
    out = []
    c = gold["cocomposition"]
    co = G.cocompose(G.Graph.parse(c["graph"]), c["partition"])
    got = {"outer": str(co.outer), "inner": [str(g) for g in co.inner]}
    exp = {"outer": c["outer"], "inner": c["inner"]}
    out.append({"name": "cocomposition", "ok": got == exp, "got": got, "expected": exp})
    e = gold["external_connectedness"]
    g = G.Graph.parse(e["graph"])
    got = {str(k): sorted(G.externally_connected(g, e["partition"], k)) for k in range(1, g.n + 1)}
    out.append({"name": "external_connectedness", "ok": got == e["sets"], "got": got, "expected": e["sets"]})
    r = gold["relabeling"]
    g = G.Graph.parse(r["graph"])
    sigma = P.from_cycles(r["sigma"], g.n)
    got = str(G.permute_graph(sigma, g))
    out.append({"name": "relabeling", "ok": got == r["image"], "got": got, "expected": r["image"]})
    t = gold["component_permutation"]
    g = G.Graph.parse(t["graph"])
    got = list(G.induced_component_permutation(P.from_cycles(t["sigma"], g.n), g))
    out.append({"name": "component_permutation", "ok": got == t["tilde"], "got": got, "expected": t["tilde"]})
    r = gold["rho"]
    got = list(G.rho_permutation(G.Graph.parse(r["graph"]), r["k"], r["m"]))
    out.append({"name": "rho", "ok": got == r["rho"], "got": got, "expected": r["rho"]})
    for n, cnt in gold["counts"].items():
        got = len(G.enumerate_acyclic(int(n)))
        out.append({"name": f"count_G0({n})", "ok": got == cnt, "got": got, "expected": cnt})
    return out


def _random_forest(rng, n):
    return G.random_graph(rng, n, acyclic=True)


def cooperad_instance(rng, max_vertices: int = 8) -> list[str]:
    """One random instance of coassociativity, coequivariance and the counting lemmas."""
    fails = []
    L = rng.randint(1, max_vertices)
    g = _random_forest(rng, L)
    l = G.random_partition(rng, L)
    m = G.random_partition(rng, len(l))
    n = len(m)
    starts = [sum(m[:i]) for i in range(n)]
    groups = [l[starts[i]:starts[i] + m[i]] for i in range(n)]
    K = [sum(gr) for gr in groups]
    co_l = G.cocompose(g, l)
    co_K = G.cocompose(g, K)
    co_ml = G.cocompose(co_l.outer, m)
    if co_ml.outer != co_K.outer:
        fails.append("coassociativity (1)")
    for i in range(n):
        if co_ml.inner[i] != G.cocompose(co_K.inner[i], groups[i]).outer:
            fails.append(f"coassociativity (2) i={i + 1}")
        inner_i = G.cocompose(co_K.inner[i], groups[i])
        for j in range(m[i]):
            if co_l.inner[starts[i] + j] != inner_i.inner[j]:
                fails.append(f"coassociativity (3) i={i + 1} j={j + 1}")
    # Lemma: edge bijection
    if len(g.edges) != len(co_l.outer.edges) + sum(len(x.edges) for x in co_l.inner):
        fails.append("edge count")
    # coequivariance
    sigma = tuple(rng.sample(range(1, n + 1), n))
    taus = [tuple(rng.sample(range(1, k + 1), k)) for k in K]
    big = P.block(sigma, taus)
    sinv = P.inverse(sigma)
    new_sizes = [K[sinv[j] - 1] for j in range(n)]
    lhs = G.cocompose(G.permute_graph(big, g), new_sizes)
    if lhs.outer != G.permute_graph(sigma, co_K.outer):
        fails.append("coequivariance outer")
    for j in range(n):
        src = sinv[j] - 1
        if lhs.inner[j] != G.permute_graph(taus[src], co_K.inner[src]):
            fails.append(f"coequivariance inner {j + 1}")
    # component count s + t - 1 for a single insertion with acyclic outer graph
    mm = rng.randint(1, L)
    k = rng.randint(1, L - mm + 1)
    sizes = [1] * (k - 1) + [mm] + [1] * (L - mm - k + 1)
    co = G.cocompose(g, sizes)
    if G.is_acyclic(co.outer):
        s = G.n_components(co.inner[k - 1])
        t = G.n_components(co.outer)
        if G.n_components(g) != s + t - 1:
            fails.append(f"component count k={k} m={mm}")
    return fails


def cooperad_suite(rng, count: int = 500, max_vertices: int = 8) -> list[dict]:
    out = []
    for i in range(count):
        for f in cooperad_instance(rng, max_vertices):
            out.append({"instance": i, "law": f})
    return out


# operad axioms ----------------------------------------------------------------------

def _graphs_for(rng, n: int, k: int) -> list:
    if n <= 3:
        gs = G.enumerate_acyclic(n)
        return gs if len(gs) <= k else rng.sample(gs, k)
    return [G.random_graph(rng, n, acyclic=True) for _ in range(k)]


def _probes(rng, module, n: int, k: int, pool) -> list:
    return [tuple(rng.choice(pool) for _ in range(n)) for _ in range(k)]


def operad_axiom_instance(rng, pool: list[OperadElement], monos: list, n_graphs: int = 4,
                          n_probes: int = 3) -> list[dict]:
    """Unity, associativity (all cases), equivariance and the action law for one
    random triple (Z, Y, X) drawn from ``pool``."""
    M = pool[0].module
    u = unit(M)
    fails = []
    pos = [p for p in pool if p.arity >= 1]
    Z = rng.choice(pos)
    Y = rng.choice([p for p in pos if p.arity + Z.arity <= 4] or [u])
    X = rng.choice([p for p in pool if Y.arity + Z.arity + p.arity <= 5] or [u])
    nZ, nY, nX = Z.arity, Y.arity, X.arity

    def cmp(A, B, n, label):
        r = compare(A, B, _graphs_for(rng, n, n_graphs), _probes(rng, M, n, n_probes, monos))
        if r:
            fails.append({"axiom": label, "elements": [Z.name, Y.name, X.name], "residual": r[0]})

    i = rng.randint(1, nZ)
    cmp(circle(Z, u, i), Z, nZ, "unit right")
    cmp(circle(u, Z, 1), Z, nZ, "unit left")
    ZY = circle(Z, Y, i)
    sgn = -1 if (X.parity * Y.parity) % 2 else 1
    n = nZ + nY + nX - 2
    for j in range(1, nZ + nY):
        lhs = circle(ZY, X, j)
        if j < i:
            rhs, case = linear_combination([(sgn, circle(circle(Z, X, j), Y, i + nX - 1))]), "before"
        elif j < i + nY:
            rhs, case = circle(Z, circle(Y, X, j - i + 1), i), "nested"
        else:
            rhs, case = linear_combination([(sgn, circle(circle(Z, X, j - nY + 1), Y, i))]), "after"
        cmp(lhs, rhs, n, f"associativity {case}")
    sig = tuple(rng.sample(range(1, nY + 1), nY))
    tau = tuple(rng.sample(range(1, nX + 1), nX))
    k = rng.randint(1, nY)
    lhs = circle(symmetric_action(Y, sig), symmetric_action(X, tau) if nX else X, k)
    rhs = symmetric_action(circle(Y, X, sig[k - 1]), P.circ(sig, k, tau))
    cmp(lhs, rhs, nY + nX - 1, "equivariance")
    s1 = tuple(rng.sample(range(1, nZ + 1), nZ))
    s2 = tuple(rng.sample(range(1, nZ + 1), nZ))
    cmp(symmetric_action(symmetric_action(Z, s1), s2), symmetric_action(Z, P.compose(s1, s2)), nZ, "action law")
    k = rng.randint(1, nZ)
    cmp(circle(Z, Y, k), circle(Z, Y, k, reverse_twists=True), nZ + nY - 1, "twist order")
    return fails


# lambda dictionary ----------------------------------------------------------------------

def random_bracket_value(spec, rng, max_degree: int = 3, max_terms: int = 4) -> dict:
    """Random canonical arity-2 pseudo-tensor with H-degree <= max_degree."""
    M = spec.module
    monos = [m for m in M.monomials_up_to(3)]
    out: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        I = [0] * M.N
        for _ in range(rng.randint(0, max_degree)):
            I[rng.randrange(M.N)] += 1
        add_into(out, ((tuple(I),), rng.choice(monos)), Fraction(rng.randint(-4, 4)))
    return {k: c for k, c in out.items() if c}
