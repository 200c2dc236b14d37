"""Bicomodules over coquasi bialgebras, their tensor product with the
φ-twisted associativity constraint, cotensor products and duals.

A bicomodule is stored as two coaction tensors in a fixed basis:
``lam[m, a, n]`` is the coefficient of e_a⊗e_n in λ(e_m) and ``rho[m, n, b]``
that of e_n⊗e_b in ρ(e_m).  One-sided comodules use the trivial bialgebra 𝕜
on the other side.  Linear maps are raw arrays of shape (dim_out, dim_in);
the tensor product of spaces is flattened in C order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .checks import Report, compare, holds
from .coalg import Coalgebra, cop
from .cqbialg import CoquasiHopf, circ, trivial_bialgebra
from .linalg import (QQ, SolutionSpace, Singular, ainv, akron, contract, contract_network, mm,
                     nullspace)


class AmbientMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def unit_ambient(F):
    """The trivial coquasi Hopf algebra 𝕜 (one shared instance per field)."""
    return trivial_bialgebra(F)


def _coalg(X):
    return X if isinstance(X, Coalgebra) else X.coalgebra


def same_ambient(A, B):
    if A is B:
        return True
    ca, cb = _coalg(A), _coalg(B)
    if ca.dim != cb.dim or ca.field is not cb.field:
        return False
    if np.any(ca.delta != cb.delta) or np.any(ca.counit != cb.counit):
        return False
    if isinstance(A, Coalgebra) or isinstance(B, Coalgebra):
        return True
    return not (np.any(A.prod != B.prod) or np.any(A.unit != B.unit)
                or np.any(A.phi != B.phi))


def _require(A, B, what):
    if not same_ambient(A, B):
        raise AmbientMismatch(f"{what}: ambient coalgebras differ")


@dataclass(frozen=True, eq=False)
class Bicomodule:
    left: object
    right: object
    lam: np.ndarray = dc_field(repr=False)
    rho: np.ndarray = dc_field(repr=False)
    names: tuple | None = None

    @property
    def field(self):
        return _coalg(self.right).field

    @property
    def dim(self):
        return self.lam.shape[0]

    def combined(self):
        """X[m, a, n, b]: coefficient of e_a⊗e_n⊗e_b in (λ⊗id)ρ(e_m)."""
        return contract(self.field, "mak,knb->manb", self.lam, self.rho)

    def is_right(self):
        return _coalg(self.left).dim == 1


@dataclass(frozen=True, eq=False)
class ComoduleMorphism:
    source: Bicomodule
    target: Bicomodule
    matrix: np.ndarray


# ---------------------------------------------------------------- constructors

def bicomodule(left, right, lam, rho, names=None):
    F = _coalg(right).field
    return Bicomodule(left, right, F.reduce(np.asarray(lam, dtype=F.dtype)),
                      F.reduce(np.asarray(rho, dtype=F.dtype)), names)


def _trivial_side(F, d):
    t = F.zeros((d, 1, d))
    for i in range(d):
        t[i, 0, i] = F.one
    return t


def right_comodule(H, rho, names=None):
    F = H.field
    d = rho.shape[0]
    K = unit_ambient(F)
    lam = _trivial_side(F, d)
    return bicomodule(K, H, lam, rho, names)


def left_comodule(H, lam, names=None):
    F = H.field
    d = lam.shape[0]
    rho = _trivial_side(F, d).transpose(0, 2, 1).copy()
    return bicomodule(H, unit_ambient(F), lam, rho, names)


def unit_object(H):
    """𝕜 as an H-bicomodule."""
    return unit_object_like(regular(H))


def regular(H):
    """H as an H-bicomodule via Δ²."""
    return bicomodule(H, H, H.delta, H.delta, H.names)


def regular_right(H):
    return right_comodule(H, H.delta, H.names)


def regular_left(H):
    return left_comodule(H, H.delta, H.names)


def trivialize_left(M, H):
    """₀M: a right comodule made into a bicomodule with left coaction 1⊗m."""
    if not M.is_right():
        raise ValueError("₀(−) expects a right comodule")
    F = M.field
    lam = F.zeros((M.dim, H.dim, M.dim))
    for i in range(M.dim):
        lam[i, :, i] = H.unit
    return bicomodule(H, M.right, lam, M.rho, M.names)


def trivialize_right(M, H):
    """M₀: a left comodule made into a bicomodule with right coaction m⊗1."""
    if _coalg(M.right).dim != 1:
        raise ValueError("(−)₀ expects a left comodule")
    F = M.field
    rho = F.zeros((M.dim, M.dim, H.dim))
    for i in range(M.dim):
        rho[i, i, :] = H.unit
    return bicomodule(M.left, H, M.lam, rho, M.names)


def forget_left(M):
    """Restrict a bicomodule to its right comodule structure."""
    return bicomodule(unit_ambient(M.field), M.right, _trivial_side(M.field, M.dim), M.rho, M.names)


def forget_right(M):
    F = M.field
    return bicomodule(M.left, unit_ambient(F), M.lam,
                      _trivial_side(F, M.dim).transpose(0, 2, 1).copy(), M.names)


# ---------------------------------------------------------------- checks

def check_bicomodule(M):
    F = M.field
    r = Report("bicomodule")
    CL, CR = _coalg(M.left), _coalg(M.right)
    lam, rho = M.lam, M.rho
    # (Δ⊗id)λ = (id⊗λ)λ
    r.add(compare("left_coassociative", contract(F, "mkn,kab->mabn", lam, CL.delta),
                  contract(F, "mak,kbn->mabn", lam, lam), ("m", "a", "b", "n")))
    r.add(compare("left_counit", contract(F, "man,a->mn", lam, CL.counit), F.eye(M.dim),
                  ("m", "n")))
    r.add(compare("right_coassociative", contract(F, "mnk,kab->mnab", rho, CR.delta),
                  contract(F, "mkb,kna->mnab", rho, rho), ("m", "n", "a", "b")))
    r.add(compare("right_counit", contract(F, "mnb,b->mn", rho, CR.counit), F.eye(M.dim),
                  ("m", "n")))
    r.add(compare("coactions_commute", contract(F, "mak,knb->manb", lam, rho),
                  contract(F, "mkb,kan->manb", rho, lam), ("m", "a", "n", "b")))
    return r


def morphism_sides(f, M, N):
    """Both sides of the intertwining equations for f: M → N."""
    F = M.field
    return ((contract(F, "nm,nak->mak", f, N.lam), contract(F, "maj,kj->mak", M.lam, f)),
            (contract(F, "nm,nkb->mkb", f, N.rho), contract(F, "mjb,kj->mkb", M.rho, f)))


def check_morphism(f, M, N, name="morphism"):
    r = Report(name)
    if f.shape != (N.dim, M.dim):
        r.add(holds("shape", False, {"shape": list(f.shape), "expected": [N.dim, M.dim]}))
        return r
    (l1, l2), (r1, r2) = morphism_sides(f, M, N)
    r.add(compare("left_colinear", l1, l2, ("m", "a", "out")))
    r.add(compare("right_colinear", r1, r2, ("m", "out", "b")))
    return r


def is_morphism(f, M, N):
    return check_morphism(f, M, N).ok


# ---------------------------------------------------------------- cotensor product

def cotensor(M, N):
    """M □_D N with its inclusion matrix into M⊗N (columns = basis of the equalizer)."""
    _require(M.right, N.left, "cotensor")
    F = M.field
    dM, dN = M.dim, N.dim
    D = _coalg(M.right).dim
    # ρ_M⊗id − id⊗λ_N : M⊗N → M⊗D⊗N
    A = (contract(F, "mxd,ny->xdymn", M.rho, F.eye(dN))
         - contract(F, "mx,ndy->xdymn", F.eye(dM), N.lam))
    A = F.reduce(A).reshape(dM * D * dN, dM * dN)
    K = nullspace(F, A)                       # rows, RREF
    incl = K.T.copy()
    k = K.shape[0]
    pivots = [int(np.nonzero(K[i] != 0)[0][0]) for i in range(k)]
    # induced coactions: apply λ_M⊗id (resp. id⊗ρ_N) to the basis, then take coordinates
    lamT = contract(F, "mak,nl->mnakl", M.lam, F.eye(dN)).reshape(dM * dN, -1, dM * dN)
    rhoT = contract(F, "mk,nlb->mnklb", F.eye(dM), N.rho).reshape(dM * dN, dM * dN, -1)
    lam = contract(F, "vs,vat->sat", incl, lamT)[:, :, pivots]
    rho = contract(F, "vs,vtb->stb", incl, rhoT)[:, pivots, :]
    return bicomodule(M.left, N.right, lam, rho), incl


def corestrict_plus(f, C, D):
    """f₊ = C_f: regular C with right coaction x ↦ x₁⊗f(x₂)."""
    F = _coalg(C).field
    Dl = _coalg(C).delta
    rho = contract(F, "xnk,bk->xnb", Dl, f)
    return bicomodule(C, D, Dl, rho, _coalg(C).names)


def corestrict_coplus(f, C, D):
    """f⁺ = _fC: regular C with left coaction x ↦ f(x₁)⊗x₂."""
    F = _coalg(C).field
    Dl = _coalg(C).delta
    lam = contract(F, "xkn,ak->xan", Dl, f)
    return bicomodule(D, C, lam, Dl, _coalg(C).names)


def corestricted(M, f, D):
    """M_f: same space, right coaction post-composed with f (≅ M □ f₊)."""
    F = M.field
    return bicomodule(M.left, D, M.lam, contract(F, "mnk,bk->mnb", M.rho, f), M.names)


# ---------------------------------------------------------------- tensor product

def tensor_comodules(M, N):
    _require(M.left, N.left, "tensor (left)")
    _require(M.right, N.right, "tensor (right)")
    F = M.field
    L, R = M.left, M.right
    dM, dN = M.dim, N.dim
    lam = contract(F, "mcx,ndy,cda->mnaxy", M.lam, N.lam, L.prod)
    rho = contract(F, "mxc,nyd,cdb->mnxyb", M.rho, N.rho, R.prod)
    names = None
    if M.names and N.names:
        names = tuple(f"{a}⊗{b}" for a in M.names for b in N.names)
    return bicomodule(L, R, lam.reshape(dM * dN, -1, dM * dN),
                      rho.reshape(dM * dN, dM * dN, -1), names)


def tensor_many(*objs):
    out = objs[0]
    for o in objs[1:]:
        out = tensor_comodules(out, o)
    return out


def assoc_constraint(L, M, N, inverse=False):
    """Φ_{L,M,N}: (L⊗M)⊗N → L⊗(M⊗N) as a matrix on the flattened space.

    Φ((l⊗m)⊗n) = Σ φ_C(l₋₁, m₋₁, n₋₁) l₀⊗m₀⊗n₀ φ_D⁻¹(l₁, m₁, n₁);
    the inverse swaps the roles of φ and φ⁻¹.
    """
    F = L.field
    A, B = L.left, L.right
    pl, pr = (A.phi_inv, B.phi) if inverse else (A.phi, B.phi_inv)
    terms = [(("l", "a", "L", "b"), L.combined()), (("m", "c", "M", "d"), M.combined()),
             (("n", "e", "N", "f"), N.combined()), (("a", "c", "e"), pl), (("b", "d", "f"), pr)]
    T = contract_network(F, terms, ("L", "M", "N", "l", "m", "n"))
    d = L.dim * M.dim * N.dim
    return T.reshape(d, d)


# ---------------------------------------------------------------- object trees and reassociation

def tree_object(t, cache=None):
    """The bicomodule of a binary tree of bicomodules (nested 2-tuples)."""
    if isinstance(t, Bicomodule):
        return t
    if cache is not None and id(t) in cache:
        return cache[id(t)][1]
    obj = tensor_comodules(tree_object(t[0], cache), tree_object(t[1], cache))
    if cache is not None:
        cache[id(t)] = (t, obj)
    return obj


def tree_leaves(t):
    if isinstance(t, Bicomodule):
        return [t]
    return tree_leaves(t[0]) + tree_leaves(t[1])


def tree_dim(t):
    return int(np.prod([x.dim for x in tree_leaves(t)]))


def _phi_trivial(L):
    """Φ is the identity when both ambient associators are ε⊗ε⊗ε."""
    return all(getattr(A, "phi", None) is not None and A.phi_is_trivial()
               for A in (L.left, L.right))


def assoc_apply(L, M, N, X, inverse=False):
    """Φ_{L,M,N} (or its inverse) applied to the columns of X without forming the matrix."""
    if _phi_trivial(L):
        return X
    F = L.field
    A, B = L.left, L.right
    pl, pr = (A.phi_inv, B.phi) if inverse else (A.phi, B.phi_inv)
    k = X.shape[1]
    terms = [(("l", "a", "L", "b"), L.combined()), (("m", "c", "M", "d"), M.combined()),
             (("n", "e", "N", "f"), N.combined()), (("a", "c", "e"), pl), (("b", "d", "f"), pr),
             (("l", "m", "n", "k"), X.reshape(L.dim, M.dim, N.dim, k))]
    T = contract_network(F, terms, ("L", "M", "N", "k"))
    return T.reshape(-1, k)


def assoc_row(L, M, N, Y, inverse=False):
    """Y∘Φ_{L,M,N} (or Y∘Φ⁻¹) for rows Y, without forming the matrix."""
    if _phi_trivial(L):
        return Y
    F = L.field
    A, B = L.left, L.right
    pl, pr = (A.phi_inv, B.phi) if inverse else (A.phi, B.phi_inv)
    k = Y.shape[0]
    terms = [(("l", "a", "L", "b"), L.combined()), (("m", "c", "M", "d"), M.combined()),
             (("n", "e", "N", "f"), N.combined()), (("a", "c", "e"), pl), (("b", "d", "f"), pr),
             (("k", "L", "M", "N"), Y.reshape(k, L.dim, M.dim, N.dim))]
    T = contract_network(F, terms, ("k", "l", "m", "n"))
    return T.reshape(k, -1)


def _apply_right(F, d, f, X):
    """(id_d ⊗ f) X, with f acting on columns of its argument."""
    k = X.shape[1]
    inner = X.shape[0] // d
    Y = X.reshape(d, inner, k).transpose(1, 0, 2).reshape(inner, d * k)
    Y = f(Y)
    return Y.reshape(-1, d, k).transpose(1, 0, 2).reshape(-1, k)


def _to_right_normal(t, X, cache):
    """Map from the tree's object to the right-bracketed object on the same leaves, applied to X."""
    if isinstance(t, Bicomodule):
        return X
    P, Y = t
    if isinstance(P, Bicomodule):
        return _apply_right(P.field, P.dim, lambda Z: _to_right_normal(Y, Z, cache), X)
    A, B = P
    X = assoc_apply(tree_object(A, cache), tree_object(B, cache), tree_object(Y, cache), X)
    return _to_right_normal((A, (B, Y)), X, cache)


def _from_right_normal(t, X, cache):
    """Inverse of _to_right_normal, built from inverse associators."""
    if isinstance(t, Bicomodule):
        return X
    P, Y = t
    if isinstance(P, Bicomodule):
        return _apply_right(P.field, P.dim, lambda Z: _from_right_normal(Y, Z, cache), X)
    A, B = P
    X = _from_right_normal((A, (B, Y)), X, cache)
    return assoc_apply(tree_object(A, cache), tree_object(B, cache), tree_object(Y, cache), X,
                       inverse=True)


def reassociate_apply(src, dst, X):
    """The canonical map between two bracketings, applied to the columns of X."""
    ls, ld = tree_leaves(src), tree_leaves(dst)
    if len(ls) != len(ld) or any(a is not b for a, b in zip(ls, ld)):
        raise ValueError("trees have different leaves")
    cache = {}
    return _from_right_normal(dst, _to_right_normal(src, X, cache), cache)


def reassociate(src, dst):
    """The canonical map between two bracketings of the same sequence of objects."""
    F = tree_leaves(src)[0].field
    return reassociate_apply(src, dst, F.eye(tree_dim(src)))


def tensor_maps(F, *ms):
    return akron(F, *ms)


# ---------------------------------------------------------------- (−)^r, (−)^ℓ, (−)°

def right_adjoint(M):
    """M^r ∈ ᶜ𝓜 for M ∈ 𝓜ᶜ: f ↦ Σ f(e_{i,0}) e_{i,1} ⊗ e^i."""
    if not M.is_right():
        raise ValueError("right_adjoint expects a right comodule")
    lam = M.rho.transpose(1, 2, 0).copy()        # lam_r[j, b, i] = rho[i, j, b]
    return left_comodule(M.right, lam)


def left_adjoint(N):
    """N^ℓ ∈ 𝓜ᶜ for N ∈ ᶜ𝓜: f ↦ Σ e^i ⊗ e_{i,-1} f(e_{i,0})."""
    if _coalg(N.right).dim != 1:
        raise ValueError("left_adjoint expects a left comodule")
    rho = N.lam.transpose(2, 0, 1).copy()        # rho_l[j, i, a] = lam[i, a, j]
    return right_comodule(N.left, rho)


def _circ_ambient(X):
    if isinstance(X, Coalgebra):
        return cop(X)
    if _coalg(X).dim == 1:
        return X
    return circ(X)


def circ_comod(M):
    """M° ∈ ^{D°}𝓜^{C°}: coaction m ↦ Σ m₁⊗m₀⊗m₋₁."""
    return bicomodule(_circ_ambient(M.right), _circ_ambient(M.left),
                      M.rho.transpose(0, 2, 1).copy(), M.lam.transpose(0, 2, 1).copy(), M.names)


# ---------------------------------------------------------------- duals

@dataclass(frozen=True, eq=False)
class Dual:
    """A dual object together with its evaluation and coevaluation."""
    base: Bicomodule
    obj: Bicomodule
    ev: np.ndarray      # 1 × (dim·dim)
    coev: np.ndarray    # (dim·dim) × 1
    side: str           # "left": ev on *M⊗M;  "right": ev on M⊗M*


def _antipode_of(X, inverse=False):
    F = _coalg(X).field
    if _coalg(X).dim == 1:
        return F.ones((1, 1))
    if not isinstance(X, CoquasiHopf):
        raise TypeError("duals need a coquasi Hopf algebra")
    if inverse:
        if X.antipode.S_inv is None:
            raise Singular("antipode is not invertible")
        return X.antipode.S_inv
    return X.S


def _ab(X):
    F = _coalg(X).field
    if _coalg(X).dim == 1:
        return F.ones(1), F.ones(1)
    return X.alpha, X.beta


def theta_left(M):
    """θ_M = (βS̄⊗id⊗α)χ, so that ev^ℓ(f⊗m) = f(θ_M m)."""
    F = M.field
    _, betaL = _ab(M.left)
    alphaR, _ = _ab(M.right)
    bS = contract(F, "c,ca->a", betaL, _antipode_of(M.left, True))
    return contract(F, "manb,a,b->nm", M.combined(), bS, alphaR)


def theta_right(M):
    """ev^r(m⊗f) = f(θ m) with θ = (β⊗id⊗αS̄)χ."""
    F = M.field
    _, betaL = _ab(M.left)
    alphaR, _ = _ab(M.right)
    aS = contract(F, "c,ca->a", alphaR, _antipode_of(M.right, True))
    return contract(F, "manb,a,b->nm", M.combined(), betaL, aS)


def left_dual(M):
    """*M with ev^ℓ(f⊗m) = Σβ(S̄m₋₁)α(m₁)f(m₀) and coev^ℓ = Σα(S̄e_{i,-1})β(e_{i,1})e_{i,0}⊗e^i."""
    F = M.field
    Sb_l = _antipode_of(M.left, True)
    S_r = _antipode_of(M.right)
    lam = contract(F, "nci,ac->ian", M.lam, Sb_l)
    rho = contract(F, "nid,bd->inb", M.rho, S_r)
    D = bicomodule(M.left, M.right, lam, rho,
                   tuple(f"{n}*" for n in M.names) if M.names else None)
    d = M.dim
    ev = theta_left(M).reshape(1, d * d)                 # index (i, m)
    alphaL, _ = _ab(M.left)
    _, betaR = _ab(M.right)
    aS = contract(F, "c,ca->a", alphaL, Sb_l)
    coev = contract(F, "ianb,a,b->ni", M.combined(), aS, betaR).reshape(d * d, 1)
    return Dual(M, D, ev, coev, "left")


def right_dual(M):
    """M* with ev^r(m⊗f) = Σβ(m₋₁)α(S̄m₁)f(m₀) and coev^r = Σe^i⊗α(e_{i,-1})β(S̄e_{i,1})e_{i,0}."""
    F = M.field
    S_l = _antipode_of(M.left)
    Sb_r = _antipode_of(M.right, True)
    lam = contract(F, "nci,ac->ian", M.lam, S_l)
    rho = contract(F, "nid,bd->inb", M.rho, Sb_r)
    D = bicomodule(M.left, M.right, lam, rho,
                   tuple(f"{n}*" for n in M.names) if M.names else None)
    d = M.dim
    ev = theta_right(M).T.reshape(1, d * d)              # index (m, i)
    alphaL, _ = _ab(M.left)
    _, betaR = _ab(M.right)
    bS = contract(F, "c,ca->a", betaR, Sb_r)
    coev = contract(F, "ianb,a,b->in", M.combined(), alphaL, bS).reshape(d * d, 1)
    return Dual(M, D, ev, coev, "right")


def check_dual_coaction(dual):
    """The dual coaction against the pointwise characterization with S and S̄."""
    M, D = dual.base, dual.obj
    F = M.field
    X, Y = M.combined(), D.combined()
    if dual.side == "left":
        SL, SR = _antipode_of(M.left, True), _antipode_of(M.right)
    else:
        SL, SR = _antipode_of(M.left), _antipode_of(M.right, True)
    # Σ f₀(m) f₋₁⊗f₁ = Σ f(m₀) S'(m₋₁)⊗S''(m₁), evaluated on f = e^i, m = e_n
    lhs = Y.transpose(0, 2, 1, 3)                        # [i, n, a, b]
    rhs = contract(F, "ncid,ac,bd->inab", X, SL, SR)
    return compare(f"{dual.side}_dual_coaction", lhs, rhs, ("f", "m", "a", "b"))


def check_triangles(M):
    F = M.field
    d = M.dim
    r = Report("triangles")
    L = left_dual(M)
    Ms = L.obj
    I = F.eye(d)
    # id_M = (id⊗ev)Φ_{M,*M,M}(coev⊗id)
    z1 = mm(F, akron(F, I, L.ev), assoc_apply(M, Ms, M, akron(F, L.coev, I)))
    r.add(compare("left_zigzag_M", z1, I, ("out", "in")))
    # id_{*M} = (ev⊗id)Φ⁻¹_{*M,M,*M}(id⊗coev)
    z2 = mm(F, akron(F, L.ev, I), assoc_apply(Ms, M, Ms, akron(F, I, L.coev), inverse=True))
    r.add(compare("left_zigzag_dual", z2, I, ("out", "in")))
    R = right_dual(M)
    Md = R.obj
    # id_M = (ev^r⊗id)Φ⁻¹_{M,M*,M}(id⊗coev^r)
    z3 = mm(F, akron(F, R.ev, I), assoc_apply(M, Md, M, akron(F, I, R.coev), inverse=True))
    r.add(compare("right_zigzag_M", z3, I, ("out", "in")))
    # id_{M*} = (id⊗ev^r)Φ_{M*,M,M*}(coev^r⊗id)
    z4 = mm(F, akron(F, I, R.ev), assoc_apply(Md, M, Md, akron(F, R.coev, I)))
    r.add(compare("right_zigzag_dual", z4, I, ("out", "in")))
    unit = unit_object_like(M)
    r.add(check_morphism(L.ev, tensor_comodules(Ms, M), unit, "ev_left"))
    r.add(check_morphism(L.coev, unit, tensor_comodules(M, Ms), "coev_left"))
    r.add(check_morphism(R.ev, tensor_comodules(M, Md), unit, "ev_right"))
    r.add(check_morphism(R.coev, unit, tensor_comodules(Md, M), "coev_right"))
    r.add(check_dual_coaction(L))
    r.add(check_dual_coaction(R))
    return r


def unit_object_like(M):
    F = M.field
    lam = F.zeros((1, _coalg(M.left).dim, 1))
    lam[0, :, 0] = M.left.unit
    rho = F.zeros((1, 1, _coalg(M.right).dim))
    rho[0, 0, :] = M.right.unit
    return bicomodule(M.left, M.right, lam, rho, ("1",))


# ---------------------------------------------------------------- duality on morphisms

def dual_map(f, A, B):
    """*f: *B → *A, determined by ev_A(*f⊗id) = ev_B(id⊗f)."""
    F = A.field
    return mm(F, theta_left(B), f, ainv(F, theta_left(A))).T.copy()


def kappa(A, B):
    """κ_{A,B}: *B⊗*A → *(A⊗B), determined by
    ev_{A⊗B}(κ⊗id) = ev_B(id⊗(ev_A⊗id))Φ⁻¹_{*A,A,B}Φ_{*B,*A,A⊗B}."""
    F = A.field
    dA, dB = A.dim, B.dim
    Ad, Bd = left_dual(A), left_dual(B)
    AB = tensor_comodules(A, B)
    inner = assoc_row(Ad.obj, A, B, akron(F, Ad.ev, F.eye(dB)), inverse=True)
    pairing = assoc_row(Bd.obj, Ad.obj, AB,
                        mm(F, Bd.ev.reshape(dB, dB), inner).reshape(1, -1))   # 1 × (dB·dA·dA·dB)
    P = pairing.reshape(dB * dA, dA * dB)                        # [(g,f), (a,b)]
    # ev_{A⊗B}(x⊗v) = x·θ_{A⊗B} v  ⇒  κ^T = P θ⁻¹
    return mm(F, P, ainv(F, theta_left(AB))).T.copy()


def double_dual(M):
    """**M on the basis of M (via M ≅ M^∨∨)."""
    return left_dual(left_dual(M).obj).obj


def double_dual_right(M):
    return right_dual(right_dual(M).obj).obj


def double_dual_tensor_iso(X, Y):
    """c₂: **X⊗**Y → **(X⊗Y), equal to *(κ_{X,Y})⁻¹ ∘ κ_{*Y,*X}."""
    F = X.field
    Xd, Yd = left_dual(X).obj, left_dual(Y).obj
    k1 = kappa(Yd, Xd)                                 # **X⊗**Y → *(*Y⊗*X)
    kxy = kappa(X, Y)                                  # *Y⊗*X → *(X⊗Y)
    dk = dual_map(kxy, tensor_comodules(Yd, Xd), left_dual(tensor_comodules(X, Y)).obj)
    return mm(F, ainv(F, dk), k1)


def dual_map_right(f, A, B):
    """f*: B* → A*, determined by ev^r_A(id⊗f*) = ev^r_B(f⊗id)."""
    F = A.field
    return mm(F, theta_right(B), f, ainv(F, theta_right(A))).T.copy()


def kappa_right(A, B):
    """B*⊗A* → (A⊗B)*, determined by
    ev^r_{A⊗B}(id⊗κ) = ev^r_A(id⊗(ev^r_B⊗id))(id⊗Φ⁻¹_{B,B*,A*})Φ_{A,B,B*⊗A*}."""
    F = A.field
    dA, dB = A.dim, B.dim
    Ad, Bd = right_dual(A), right_dual(B)
    BA = tensor_comodules(Bd.obj, Ad.obj)
    inner = assoc_row(B, Bd.obj, Ad.obj, akron(F, Bd.ev, F.eye(dA)), inverse=True)
    pairing = assoc_row(A, B, BA, mm(F, Ad.ev.reshape(dA, dA), inner).reshape(1, -1))
    P = pairing.reshape(dA * dB, dB * dA)                        # [(a,b), (g,f)]
    # ev^r(v⊗w) = w·θ v  ⇒  θᵀ κ = P
    return mm(F, ainv(F, theta_right(tensor_comodules(A, B))).T, P)


def double_dual_tensor_iso_right(X, Y):
    """X**⊗Y** → (X⊗Y)**, equal to ((κ^r_{X,Y})*)⁻¹ ∘ κ^r_{Y*,X*}."""
    F = X.field
    Xd, Yd = right_dual(X).obj, right_dual(Y).obj
    k1 = kappa_right(Yd, Xd)
    kxy = kappa_right(X, Y)
    dk = dual_map_right(kxy, tensor_comodules(Yd, Xd), right_dual(tensor_comodules(X, Y)).obj)
    return mm(F, ainv(F, dk), k1)


# ---------------------------------------------------------------- functionals ↔ morphisms

def solve_nacho(g, h, C):
    """All γ with (γ⊗g)Δ = (h⊗γ)Δ, for coalgebra maps g, h: C → D."""
    Cc = _coalg(C)
    F = Cc.field
    Dl = Cc.delta
    n = Cc.dim
    A = (contract(F, "cjk,dk->cdj", Dl, g) - contract(F, "ckj,dk->cdj", Dl, h))
    A = F.reduce(A).reshape(-1, n)
    K = nullspace(F, A)
    return SolutionSpace(F, F.zeros(n), K)


def gamma_to_theta(gamma, C):
    """θ = (id⊗γ)Δ as a matrix."""
    Cc = _coalg(C)
    return contract(Cc.field, "cjk,k->jc", Cc.delta, gamma)


def coinvariants_left(M):
    """{m : λ(m) = 1⊗m} as a right comodule, with its inclusion."""
    F = M.field
    A = F.reduce(M.lam - contract(F, "a,mn->man", M.left.unit, F.eye(M.dim)))
    K = nullspace(F, A.reshape(M.dim, -1).T.copy())
    incl = K.T.copy()
    pivots = [int(np.nonzero(K[i] != 0)[0][0]) for i in range(K.shape[0])]
    rho = contract(F, "vs,vtb->stb", incl, M.rho)[:, pivots, :]
    return right_comodule(M.right, rho), incl


def coinvariants_right(M):
    F = M.field
    A = F.reduce(M.rho - contract(F, "b,mn->mnb", M.right.unit, F.eye(M.dim)))
    K = nullspace(F, A.transpose(1, 2, 0).reshape(-1, M.dim))
    incl = K.T.copy()
    pivots = [int(np.nonzero(K[i] != 0)[0][0]) for i in range(K.shape[0])]
    lam = contract(F, "vs,vat->sat", incl, M.lam)[:, :, pivots]
    return left_comodule(M.left, lam), incl


def coordinates(incl, v):
    """Coordinates of vectors v (columns) in the span of an RREF-derived inclusion."""
    K = incl.T
    pivots = [int(np.nonzero(K[i] != 0)[0][0]) for i in range(K.shape[0])]
    return v[pivots]


# ---------------------------------------------------------------- random test comodules

def random_comodule(H, rng, max_dim=4, grouplikes=None):
    """A right H-comodule of dim ≤ max_dim: a sum of cyclic subcomodules of H
    and one-dimensional group-like comodules, with a random change of basis."""
    F = H.field
    blocks = []
    total = 0
    while total == 0 or (total < max_dim and rng.random() < 0.5):
        room = max_dim - total
        if grouplikes and rng.random() < 0.35:
            g = grouplikes[rng.integers(len(grouplikes))]
            rho = F.zeros((1, 1, H.dim))
            rho[0, 0, :] = g
            blocks.append(rho)
            total += 1
            continue
        sub = _cyclic_subcomodule(H, rng, room)
        if sub is None:
            continue
        blocks.append(sub)
        total += sub.shape[0]
    d = sum(b.shape[0] for b in blocks)
    rho = F.zeros((d, d, H.dim))
    o = 0
    for b in blocks:
        k = b.shape[0]
        rho[o:o + k, o:o + k, :] = b
        o += k
    P = _random_invertible(F, d, rng)
    Pi = ainv(F, P)
    # new basis e'_i = Σ_j P[j, i] e_j
    rho = contract(F, "ji,jkb,lk->ilb", P, rho, Pi)
    return right_comodule(H, rho)


def _random_vector(F, n, rng):
    if getattr(F, "p", None):
        return F.asarray(rng.integers(0, F.p, size=n).tolist())
    return F.asarray([int(v) for v in rng.integers(-2, 3, size=n)])


def _random_invertible(F, d, rng):
    if F is QQ:
        # unimodular, so comodules stay integral and contractions stay on the int64 path
        Lo = np.tril(rng.integers(-2, 3, size=(d, d)), -1) + np.eye(d, dtype=np.int64)
        Up = np.triu(rng.integers(-2, 3, size=(d, d)), 1) + np.eye(d, dtype=np.int64)
        return F.asarray((Lo @ Up).tolist())
    while True:
        P = np.stack([_random_vector(F, d, rng) for _ in range(d)])
        try:
            ainv(F, P)
            return P
        except Singular:
            continue


def _cyclic_subcomodule(H, rng, room):
    """Span of {(id⊗ξ)Δv : ξ ∈ H^∨} for a random v, when its dimension fits."""
    F = H.field
    for _ in range(6):
        v = _random_vector(F, H.dim, rng)
        if not np.any(v != 0):
            continue
        # the subcomodule generated by v is spanned by the left legs of Δv
        T = contract(F, "i,ijk->kj", v, H.delta)          # rows: (ξ = δ_k) ↦ Σ v₁ δ_k(v₂)
        from .linalg import rref
        R, piv = rref(F, T)
        basis = R[: len(piv)]
        k = basis.shape[0]
        if k == 0 or k > room:
            continue
        incl = basis.T.copy()
        rho = contract(F, "vs,vtb->stb", incl, H.delta)[:, piv, :]
        return rho
    return None
