"""Hopf modules: right H-modules inside H-bicomodules, the free module
functor, the fundamental theorem as an explicit isomorphism, the functor 𝓘
and the natural isomorphism τ: F(𝓘(M)₀) → F(₀M)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .checks import Report, compare, holds
from .coalg import conv_inverse_array
from .comod import (Bicomodule, assoc_apply, assoc_row, check_bicomodule, check_morphism, coinvariants_left,
                    cotensor, left_comodule, regular, tensor_comodules, trivialize_left,
                    trivialize_right)
from .linalg import ainv, akron, contract_network, mm, rank, solve_matrix


@dataclass(frozen=True, eq=False)
class HopfModule:
    module: Bicomodule
    action: np.ndarray          # dim × (dim·dim H)

    @property
    def H(self):
        return self.module.right

    @property
    def dim(self):
        return self.module.dim

    @property
    def field(self):
        return self.module.field


def product_matrix(H):
    """p: H⊗H → H as a (n, n²) matrix."""
    n = H.dim
    return H.prod.reshape(n * n, n).T.copy()


def unit_matrix(H):
    return H.unit.reshape(-1, 1).copy()


def check_hopf_module(X: HopfModule):
    M, H, a = X.module, X.H, X.action
    F = X.field
    d, n = M.dim, H.dim
    r = Report("hopf_module")
    r.add(check_bicomodule(M))
    if a.shape != (d, d * n):
        r.add(holds("action_shape", False, {"shape": list(a.shape)}))
        return r
    R = regular(H)
    r.add(check_morphism(a, tensor_comodules(M, R), M, "action_colinear"))
    lhs = mm(F, a, akron(F, a, F.eye(n)))
    rhs = assoc_row(M, R, R, mm(F, a, akron(F, F.eye(d), product_matrix(H))))
    r.add(compare("action_associative", lhs, rhs, ("out", "in")))
    r.add(compare("action_unital", mm(F, a, akron(F, F.eye(d), unit_matrix(H))), F.eye(d),
                  ("out", "in")))
    return r


def check_hopf_morphism(f, X: HopfModule, Y: HopfModule, name="hopf_morphism"):
    F = X.field
    r = Report(name)
    r.add(check_morphism(f, X.module, Y.module, "colinear"))
    if f.shape == (Y.dim, X.dim):
        r.add(compare("linear", mm(F, f, X.action),
                      mm(F, Y.action, akron(F, f, F.eye(X.H.dim))), ("out", "in")))
    return r


def free_hopf_module(M: Bicomodule) -> HopfModule:
    """M⊗H with the action (id⊗p)Φ_{M,H,H}."""
    H = M.right
    F = M.field
    R = regular(H)
    MH = tensor_comodules(M, R)
    act = assoc_row(M, R, R, akron(F, F.eye(M.dim), product_matrix(H)))
    return HopfModule(MH, act)


def iota(M: Bicomodule) -> Bicomodule:
    """𝓘(M): the left comodule m ↦ Σ S(m₁)⊗m₀."""
    if not M.is_right():
        raise ValueError("iota expects a right comodule")
    H = M.right
    lam = contract_network(M.field, [(("m", "n", "b"), M.rho), (("a", "b"), H.S)],
                           ("m", "a", "n"))
    return left_comodule(H, lam, M.names)


def _split(H, src, legs):
    """Network terms splitting the label ``src`` into the labels ``legs`` by Δ."""
    terms = []
    cur = src
    for i, leg in enumerate(legs[:-1]):
        rest = legs[-1] if i == len(legs) - 2 else (src, "rest", i)
        terms.append(((cur, leg, rest), H.delta))
        cur = rest
    return terms


def _tau_network(M, inverse=False):
    H = M.right
    F = M.field
    c = [("c", i) for i in range(1, 5)]
    h = [("h", 1), ("h", 2)]
    terms = [(("m", "m0", "c"), M.rho)] + _split(H, "c", c) + _split(H, "h", h)
    if not inverse:
        # Σ m₀ φ⁻¹(m₁, S m₃, h₂) β(m₂) ⊗ S(m₄) h₁
        terms += [((c[0], "s3", h[1]), H.phi_inv), (("s3", c[2]), H.S), ((c[1],), H.beta),
                  (("s4", c[3]), H.S), (("s4", h[0], "o"), H.prod)]
    else:
        # Σ φ(S m₁, m₃, h₁) α(m₂) m₀ ⊗ m₄ h₂
        terms += [(("s1", c[2], h[0]), H.phi), (("s1", c[0]), H.S), ((c[1],), H.alpha),
                  ((c[3], h[1], "o"), H.prod)]
    T = contract_network(F, terms, ("m0", "o", "m", "h"))
    d = M.dim * H.dim
    return T.reshape(d, d)


@dataclass(frozen=True, eq=False)
class Tau:
    comodule: Bicomodule
    source: HopfModule      # F(𝓘(M)₀)
    target: HopfModule      # F(₀M)
    matrix: np.ndarray
    inverse: np.ndarray


def tau(M: Bicomodule) -> Tau:
    H = M.right
    src = free_hopf_module(trivialize_right(iota(M), H))
    tgt = free_hopf_module(trivialize_left(M, H))
    return Tau(M, src, tgt, _tau_network(M), _tau_network(M, inverse=True))


def tau_inv(M: Bicomodule):
    return _tau_network(M, inverse=True)


def pi_map(M: Bicomodule):
    """π_M: 𝓘(M)₀ → ₀M⊗H, m ↦ Σ m₀⊗β(m₁)S(m₂)."""
    H = M.right
    terms = [(("m", "m0", "c"), M.rho)] + _split(H, "c", ["c1", "c2"])
    terms += [(("c1",), H.beta), (("o", "c2"), H.S)]
    T = contract_network(M.field, terms, ("m0", "o", "m"))
    return T.reshape(M.dim * H.dim, M.dim)


def tau_composite(M: Bicomodule):
    """(id⊗p)Φ_{₀M,H,H}(π_M⊗id)."""
    H = M.right
    F = M.field
    M0 = trivialize_left(M, H)
    R = regular(H)
    return mm(F, assoc_row(M0, R, R, akron(F, F.eye(M.dim), product_matrix(H))),
              akron(F, pi_map(M), F.eye(H.dim)))


def tau_hopf_form(M: Bicomodule):
    """m⊗h ↦ Σ m₀⊗S(m₁)h, what τ reduces to when φ, α, β are trivial."""
    H = M.right
    T = contract_network(M.field, [(("m", "m0", "c"), M.rho), (("s", "c"), H.S),
                                   (("s", "h", "o"), H.prod)], ("m0", "o", "m", "h"))
    return T.reshape(M.dim * H.dim, M.dim * H.dim)


def check_tau(M: Bicomodule, t: Tau | None = None):
    t = t or tau(M)
    F = M.field
    d = t.matrix.shape[0]
    r = Report("tau")
    r.add(check_hopf_module(t.source))
    r.add(check_hopf_module(t.target))
    r.add(check_morphism(pi_map(M), trivialize_right(iota(M), M.right),
                         tensor_comodules(trivialize_left(M, M.right), regular(M.right)), "pi"))
    r.add(compare("composite", t.matrix, tau_composite(M), ("out", "in")))
    r.add(check_hopf_morphism(t.matrix, t.source, t.target, "tau_hopf_morphism"))
    r.add(compare("tau_tau_inv", mm(F, t.matrix, t.inverse), F.eye(d), ("out", "in")))
    r.add(compare("tau_inv_tau", mm(F, t.inverse, t.matrix), F.eye(d), ("out", "in")))
    if M.right.is_hopf():
        r.add(compare("hopf_form", t.matrix, tau_hopf_form(M), ("out", "in")))
    return r


def check_tau_natural(f, M: Bicomodule, N: Bicomodule):
    """τ_N∘(f⊗id) = (f⊗id)∘τ_M for a comodule map f: M → N."""
    F = M.field
    n = M.right.dim
    fh = akron(F, f, F.eye(n))
    r = Report("tau_natural")
    r.add(check_morphism(f, M, N, "f"))
    r.add(compare("square", mm(F, tau(N).matrix, fh), mm(F, fh, tau(M).matrix), ("out", "in")))
    return r


# ---------------------------------------------------------------- fundamental theorem

@dataclass(frozen=True, eq=False)
class Fundamental:
    coinvariants: Bicomodule        # right comodule N
    inclusion: np.ndarray           # N → M
    epsilon: np.ndarray             # ₀N⊗H → M, n⊗h ↦ n·h
    free: HopfModule
    report: Report

    @property
    def is_iso(self):
        return self.report.ok


def fundamental_check(X: HopfModule) -> Fundamental:
    M, H = X.module, X.H
    F = X.field
    N, incl = coinvariants_left(M)
    free = free_hopf_module(trivialize_left(N, H))
    eps = mm(F, X.action, akron(F, incl, F.eye(H.dim)))
    r = Report("fundamental", data={"coinvariants_dim": N.dim})
    r.add(holds("square", eps.shape[0] == eps.shape[1],
                {"shape": list(eps.shape)}))
    r.add(holds("bijective", eps.shape[0] == eps.shape[1] and rank(F, eps) == eps.shape[0]))
    r.add(check_hopf_morphism(eps, free, X, "epsilon_hopf_morphism"))
    return Fundamental(N, incl, eps, free, r)


# ---------------------------------------------------------------- □ of Hopf modules

def _interchange_ambient(F, dM, dN, dL, dR, X):
    """m⊗n⊗l⊗r ↦ m⊗l⊗n⊗r on the rows of X."""
    k = X.shape[1]
    return X.reshape(dM, dN, dL, dR, k).transpose(0, 2, 1, 3, 4).reshape(-1, k)


def interchange(M: Bicomodule, N: Bicomodule, L: Bicomodule, R: Bicomodule):
    """(M□N)⊗(L□R) → (M⊗L)□(N⊗R), m⊗n⊗l⊗r ↦ m⊗l⊗n⊗r, on cotensor coordinates."""
    F = M.field
    MN, i1 = cotensor(M, N)
    LR, i2 = cotensor(L, R)
    tgt, i3 = cotensor(tensor_comodules(M, L), tensor_comodules(N, R))
    amb = _interchange_ambient(F, M.dim, N.dim, L.dim, R.dim, akron(F, i1, i2))
    x = solve_matrix(F, i3, amb)
    if x is None:
        raise ValueError("interchange does not land in the cotensor product")
    return x, (tensor_comodules(MN, LR), tgt)


def cotensor_hopf_module(X: HopfModule, Y: HopfModule) -> HopfModule:
    """X□Y with action (M□N)⊗H → (M□N)⊗(H□H) → (M⊗H)□(N⊗H) → M□N via a_M⊗a_N."""
    F = X.field
    H = X.H
    n = H.dim
    MN, i1 = cotensor(X.module, Y.module)
    delta = H.delta.reshape(n, n * n).T                       # H → H⊗H, lands in H□H
    amb = _interchange_ambient(F, X.dim, Y.dim, n, n, akron(F, i1, delta))
    amb = mm(F, akron(F, X.action, Y.action), amb)
    act = solve_matrix(F, i1, amb)
    if act is None:
        raise ValueError("lifted action leaves the cotensor product")
    return HopfModule(MN, act)


# ---------------------------------------------------------------- monoidality of τ

def _sw(F, a, b):
    """sw: A⊗B → B⊗A."""
    s = F.zeros((b * a, a * b))
    for i in range(a):
        for j in range(b):
            s[j * a + i, i * b + j] = F.one
    return s


def iota_constraint(M: Bicomodule, N: Bicomodule, chi):
    """J: 𝓘(M)⊗𝓘(N) → 𝓘(N⊗M), m⊗n ↦ Σ χ⁻¹(m₁⊗n₁) n₀⊗m₀ for χ = χ^S."""
    H = M.right
    F = M.field
    chi_inv = conv_inverse_array(H.coalgebra, chi)
    T = contract_network(F, [(("m", "m0", "a"), M.rho), (("n", "n0", "b"), N.rho),
                             (("a", "b"), chi_inv)], ("n0", "m0", "m", "n"))
    return T.reshape(N.dim * M.dim, M.dim * N.dim)


def fsquare_iso_left(M: Bicomodule, N: Bicomodule):
    """₀N⊗(₀M⊗H) → (₀M⊗H)□(₀N⊗H), n⊗m⊗h ↦ (m₀⊗h₁)⊗(n⊗m₁h₂), in cotensor coordinates."""
    H = M.right
    F = M.field
    M0, N0 = trivialize_left(M, H), trivialize_left(N, H)
    R = regular(H)
    A, B = tensor_comodules(M0, R), tensor_comodules(N0, R)
    _, inc = cotensor(A, B)
    T = contract_network(F, [(("m", "m0", "c"), M.rho), (("h", "h1", "h2"), H.delta),
                             (("c", "h2", "k"), H.prod)], ("m0", "h1", "k", "m", "h"))
    dM, dN, n = M.dim, N.dim, H.dim
    amb = F.zeros((dM, n, dN, n, dN, dM, n))
    for i in range(dN):
        amb[:, :, i, :, i, :, :] = T
    amb = amb.reshape(dM * n * dN * n, dN * dM * n)
    x = solve_matrix(F, inc, amb)
    if x is None:
        raise ValueError("map does not land in the cotensor product")
    return x, (A, B)


def fsquare_iso_right(P: Bicomodule, Q: Bicomodule):
    """P₀⊗(Q₀⊗H) → (P₀⊗H)□(Q₀⊗H), p⊗q⊗h ↦ (p⊗q₋₁h₁)⊗(q₀⊗h₂), in cotensor coordinates."""
    H = P.left
    F = P.field
    P0, Q0 = trivialize_right(P, H), trivialize_right(Q, H)
    R = regular(H)
    A, B = tensor_comodules(P0, R), tensor_comodules(Q0, R)
    _, inc = cotensor(A, B)
    T = contract_network(F, [(("q", "c", "q0"), Q.lam), (("h", "h1", "h2"), H.delta),
                             (("c", "h1", "k"), H.prod)], ("k", "q0", "h2", "q", "h"))
    dP, dQ, n = P.dim, Q.dim, H.dim
    amb = F.zeros((dP, n, dQ, n, dP, dQ, n))
    for i in range(dP):
        amb[i, :, :, :, i, :, :] = T
    amb = amb.reshape(dP * n * dQ * n, dP * dQ * n)
    x = solve_matrix(F, inc, amb)
    if x is None:
        raise ValueError("map does not land in the cotensor product")
    return x, (A, B)


def check_tau_monoidal(M: Bicomodule, N: Bicomodule, chi=None):
    """Outer rectangle: τ_M□τ_N against τ_{N⊗M} and the constraint J of 𝓘,
    both read through the canonical isomorphisms of cotensors of free modules."""
    from .cqbialg import chi_s
    H = M.right
    F = M.field
    n = H.dim
    if chi is None:
        chi = chi_s(H).morphism.chi
    r = Report("tau_monoidal")
    P, Q = iota(M), iota(N)
    tM, tN = tau(M), tau(N)
    isoR, (A, B) = fsquare_iso_right(P, Q)
    isoL, (C, D) = fsquare_iso_left(M, N)
    r.add(holds("iso_right_invertible", isoR.shape[0] == isoR.shape[1]
                and rank(F, isoR) == isoR.shape[0]))
    r.add(holds("iso_left_invertible", isoL.shape[0] == isoL.shape[1]
                and rank(F, isoL) == isoL.shape[0]))
    # τ_M□τ_N on cotensor coordinates
    _, incAB = cotensor(A, B)
    _, incCD = cotensor(C, D)
    tt = solve_matrix(F, incCD, mm(F, akron(F, tM.matrix, tN.matrix), incAB))
    if tt is None:
        r.add(holds("tau_square_restricts", False))
        return r
    lhs = mm(F, ainv(F, isoL), tt, isoR)
    P0, Q0 = trivialize_right(P, H), trivialize_right(Q, H)
    R = regular(H)
    NM = tensor_comodules(N, M)
    J = iota_constraint(M, N, chi)
    r.add(check_morphism(J, tensor_comodules(P, Q), iota(NM), "iota_constraint"))
    M0, N0 = trivialize_left(M, H), trivialize_left(N, H)
    rhs = assoc_apply(N0, M0, R, mm(F, tau(NM).matrix, akron(F, J, F.eye(n))))
    rhs = assoc_row(P0, Q0, R, rhs, inverse=True)
    r.add(compare("rectangle", lhs, rhs, ("out", "in")))
    return r
