"""Worked examples: group algebras, Sweedler's H₄, Taft algebras and
cyclic groups with a non-trivial 3-cocycle as associator."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coalg import Coalgebra, counit_power
from .cqbialg import make_bialgebra, with_antipode
from .linalg import GF, QQ, contract


class NotAGroup(ValueError):
    pass


class BadRoot(ValueError):
    pass


class CharTwo(ValueError):
    pass


@dataclass(frozen=True)
class ZooSpec:
    name: str
    params: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)


def group_algebra(table, F, names=None, name="kG"):
    """Group algebra from a multiplication table ``table[i][j] = index of g_i g_j``."""
    n = len(table)
    _check_group(table)
    names = tuple(names or (f"g{i}" for i in range(n)))
    D = F.zeros((n, n, n))
    P = F.zeros((n, n, n))
    for i in range(n):
        D[i, i, i] = F.one
        for j in range(n):
            P[i, j, table[i][j]] = F.one
    C = Coalgebra(F, names, D, F.ones(n))
    e = _identity_index(table)
    unit = F.unit_vector(n, e)
    B = make_bialgebra(C, P, unit, counit_power(C, 3), name=name)
    inv = [next(j for j in range(n) if table[i][j] == e) for i in range(n)]
    S = F.zeros((n, n))
    for i in range(n):
        S[inv[i], i] = F.one
    return with_antipode(B, S, F.ones(n), F.ones(n))


def _identity_index(table):
    n = len(table)
    for e in range(n):
        if all(table[e][j] == j and table[j][e] == j for j in range(n)):
            return e
    raise NotAGroup("no identity element")


def _check_group(table):
    n = len(table)
    if any(len(row) != n or sorted(row) != list(range(n)) for row in table):
        raise NotAGroup("table is not a Latin square")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise NotAGroup(f"not associative at {(a, b, c)}")
    _identity_index(table)


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def cyclic_group_algebra(n, F=QQ):
    return group_algebra(cyclic_table(n), F, [f"g^{i}" if i else "1" for i in range(n)],
                         name=f"kZ{n}")


def s3_table():
    import itertools
    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    # (στ)(k) = σ(τ(k))
    return [[idx[tuple(s[t[k]] for k in range(3))] for t in perms] for s in perms], perms


def symmetric_group_s3(F=QQ):
    table, perms = s3_table()
    names = ["".join(str(v + 1) for v in p) for p in perms]
    return group_algebra(table, F, names, name="kS3")


def _is_primitive_root(F, q, n):
    q = F.scalar(q)
    powers = [pow(q, k, F.p) if getattr(F, "p", None) else q ** k for k in range(1, n + 1)]
    return powers[-1] == 1 and all(x != 1 for x in powers[:-1])


def taft(n, q, F):
    """Taft algebra T_n: g^n = 1, x^n = 0, xg = q·gx, Δx = x⊗1 + g⊗x.

    Basis g^i x^j at index j·n + i, so that n = 2 lists 1, g, x, gx.
    """
    if n < 2 or not _is_primitive_root(F, q, n):
        raise BadRoot(f"{q} is not a primitive {n}-th root of unity in {F!r}")
    q = F.scalar(q)
    dim = n * n
    idx = lambda i, j: (j % n) * n + (i % n)
    names = []
    for j in range(n):
        for i in range(n):
            g = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            x = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
            names.append(g + x or "1")
    P = F.zeros((dim, dim, dim))
    for j in range(n):
        for i in range(n):
            for l in range(n):
                for k in range(n):
                    if j + l < n:
                        c = F.reduce(np.array([_power(F, q, j * k)], dtype=F.dtype))[0]
                        P[idx(i, j), idx(k, l), idx(i + k, j + l)] = c
    one = F.unit_vector(dim, idx(0, 0))
    g = F.unit_vector(dim, idx(1, 0))
    x = F.unit_vector(dim, idx(0, 1))
    mul = lambda a, b: contract(F, "i,j,ijk->k", a, b, P)
    mul2 = lambda A, B: contract(F, "ab,cd,ack,bdl->kl", A, B, P, P)
    dg = np.multiply.outer(g, g)
    dx = F.reduce(np.multiply.outer(x, one) + np.multiply.outer(g, x))
    D = F.zeros((dim, dim, dim))
    eps = F.zeros(dim)
    for j in range(n):
        for i in range(n):
            t = np.multiply.outer(one, one)
            for _ in range(i):
                t = mul2(t, dg)
            for _ in range(j):
                t = mul2(t, dx)
            D[idx(i, j)] = t
            eps[idx(i, j)] = F.one if j == 0 else F.zero
    C = Coalgebra(F, tuple(names), D, eps)
    B = make_bialgebra(C, P, one, counit_power(C, 3), name=f"Taft{n}")
    # S anti-multiplicative: S(g^i x^j) = S(x)^j S(g)^i, S(g) = g^{-1}, S(x) = -g^{-1}x
    g_inv = F.unit_vector(dim, idx(n - 1, 0))
    Sx = F.reduce(-mul(g_inv, x))
    S = F.zeros((dim, dim))
    for j in range(n):
        for i in range(n):
            v = one
            for _ in range(j):
                v = mul(v, Sx)
            for _ in range(i):
                v = mul(v, g_inv)
            S[:, idx(i, j)] = v
    return with_antipode(B, S, eps, eps)


def _power(F, q, k):
    if getattr(F, "p", None):
        return pow(int(q), k, F.p)
    return q ** k


def sweedler_h4(F=QQ):
    if F.characteristic == 2:
        raise CharTwo("H₄ needs characteristic ≠ 2")
    H = taft(2, F.from_int(-1), F)
    return _renamed(H, "H4")


def _renamed(H, name):
    from dataclasses import replace
    return replace(H, name=name)


def cyclic_cocycle_coquasi(n, zeta, F):
    """k[ℤ/n] with associator φ(g^i, g^j, g^k) = ζ^{i·⌊(j+k)/n⌋}."""
    if not _is_primitive_root(F, zeta, n):
        raise BadRoot(f"{zeta} is not a primitive {n}-th root of unity in {F!r}")
    base = cyclic_group_algebra(n, F)
    zeta = F.scalar(zeta)
    phi = F.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                phi[i, j, k] = F.reduce(np.array([_power(F, zeta, i * ((j + k) // n))],
                                                 dtype=F.dtype))[0]
    B = make_bialgebra(base.coalgebra, base.prod, base.unit, phi, name=f"kZ{n}_omega")
    # antipode axioms on a group-like h read φ⁻¹(h, h⁻¹, h)·β(h)·α(h) = 1, so with
    # α = ε we need β(h) = φ(h, h⁻¹, h)
    beta = F.zeros(n)
    for i in range(n):
        beta[i] = phi[i, (-i) % n, i]
    return with_antipode(B, base.S, F.ones(n), beta)


def zoo_specs():
    return [
        ZooSpec("kZ2", {"n": 2, "field": "Q"}, {"a": "1", "W": "1"}),
        ZooSpec("kZ3", {"n": 3, "field": "GF(7)"}, {"a": "1", "W": "1"}),
        ZooSpec("kS3", {"field": "Q"}, {"a": "123", "W": "123"}),
        ZooSpec("H4", {"field": "Q"}, {"a": "g", "W": "gx"}),
        ZooSpec("Taft3", {"n": 3, "q": 2, "field": "GF(7)"}, {}),
        ZooSpec("kZ2_omega", {"n": 2, "zeta": -1, "field": "Q"}, {"a": "1", "W": "1"}),
        ZooSpec("kZ3_omega", {"n": 3, "zeta": 2, "field": "GF(7)"}, {"a": "1", "W": "1"}),
    ]


def build(name, **params):
    """Construct a zoo algebra by name."""
    key = name.lower().replace("-", "_")
    F = _field(params.get("field"))
    if key in ("kz2", "z2"):
        return _renamed(cyclic_group_algebra(2, F or QQ), "kZ2")
    if key in ("kz3", "z3"):
        return _renamed(cyclic_group_algebra(3, F or GF(7)), "kZ3")
    if key in ("kzn", "cyclic_group", "group"):
        n = int(params.get("n", 2))
        return cyclic_group_algebra(n, F or QQ)
    if key in ("ks3", "s3"):
        return symmetric_group_s3(F or QQ)
    if key in ("h4", "sweedler"):
        return sweedler_h4(F or QQ)
    if key in ("taft", "taft3"):
        n = int(params.get("n", 3))
        F = F or GF(7)
        q = params.get("q", 2)
        return _renamed(taft(n, F.scalar(q), F), f"Taft{n}")
    if key in ("kz2_omega", "cyclic_cocycle", "cyclic", "kz3_omega"):
        n = int(params.get("n", 3 if key in ("kz3_omega", "cyclic", "cyclic_cocycle") else 2))
        default_F = GF(7) if n == 3 else QQ
        F = F or default_F
        zeta = params.get("zeta", 2 if n == 3 else -1)
        return _renamed(cyclic_cocycle_coquasi(n, F.scalar(zeta), F), f"kZ{n}_omega")
    raise KeyError(f"unknown zoo algebra {name!r}")


def _field(desc):
    if desc is None:
        return None
    from .linalg import field_from_descriptor
    return field_from_descriptor(desc) if isinstance(desc, str) else desc


ZOO_NAMES = ("kZ2", "kZ3", "kS3", "H4", "Taft3", "kZ2_omega", "kZ3_omega")


def all_zoo():
    return {n: build(n) for n in ZOO_NAMES}
