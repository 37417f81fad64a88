"""Permutations of {1..n} stored as tuples: ``p[i-1] == sigma(i)``."""

from __future__ import annotations

import itertools
import re
from typing import Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def check(p: Sequence[int]) -> Perm:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation: {p}")
    return p


def compose(s: Perm, t: Perm) -> Perm:
    """(s t)(i) = s(t(i))."""
    if len(s) != len(t):
        raise ValueError("size mismatch")
    return tuple(s[t[i] - 1] for i in range(len(t)))


def inverse(s: Perm) -> Perm:
    inv = [0] * len(s)
    for i, si in enumerate(s, 1):
        inv[si - 1] = i
    return tuple(inv)


def from_cycles(text: str, n: int) -> Perm:
    """Parse cycle notation such as ``(12)(354)`` or ``(1,2)(3,5,4)``."""
    p = list(range(1, n + 1))
    for body in re.findall(r"\(([^)]*)\)", text):
        if "," in body or " " in body.strip():
            cyc = [int(x) for x in re.split(r"[,\s]+", body.strip()) if x]
        else:
            cyc = [int(c) for c in body]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a - 1] = b
    return check(p)


def to_cycles(p: Perm) -> str:
    seen, out = set(), []
    for i in range(1, len(p) + 1):
        if i in seen or p[i - 1] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j - 1]
        out.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def inversions(p: Perm):
    n = len(p)
    for i in range(n):
        for j in range(i + 1, n):
            if p[i] > p[j]:
                yield i, j


def koszul_sign(p: Perm, parities: Sequence[int]) -> int:
    """Product over inversions i<j, p(i)>p(j) of (-1)^{par_i par_j}."""
    s = 1
    for i, j in inversions(p):
        if parities[i] & parities[j] & 1:
            s = -s
    return s


def shuffles(m: int, n: int) -> list[Perm]:
    """(m, n)-shuffles: sigma(1)<..<sigma(m) and sigma(m+1)<..<sigma(m+n)."""
    if m < 0 or n < 0:
        return []
    out = []
    for first in itertools.combinations(range(1, m + n + 1), m):
        rest = [x for x in range(1, m + n + 1) if x not in first]
        out.append(tuple(first) + tuple(rest))
    return out


def block(sigma: Perm, taus: Sequence[Perm]) -> Perm:
    """sigma(tau_1,..,tau_n)(M_{k-1}+i) = tau_k(i) + sum_{j<sigma(k)} m_{sigma^{-1}(j)}."""
    n = len(sigma)
    if len(taus) != n:
        raise ValueError("need one block permutation per letter")
    sizes = [len(t) for t in taus]
    sinv = inverse(sigma)
    out = []
    for k in range(1, n + 1):
        offset = sum(sizes[sinv[j - 1] - 1] for j in range(1, sigma[k - 1]))
        out.extend(taus[k - 1][i] + offset for i in range(sizes[k - 1]))
    return tuple(out)


def circ(sigma: Perm, i: int, tau: Perm) -> Perm:
    """sigma o_i tau = sigma(1,..,tau,..,1) with tau in slot i."""
    taus = [(1,)] * len(sigma)
    taus[i - 1] = tau
    return block(sigma, taus)


def transposition(n: int, a: int, b: int) -> Perm:
    p = list(range(1, n + 1))
    p[a - 1], p[b - 1] = b, a
    return tuple(p)
