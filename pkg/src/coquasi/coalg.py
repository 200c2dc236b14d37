"""Coalgebras by structure constants and the convolution algebras (C^⊗k)^∨."""

from __future__ import annotations

import string
from dataclasses import dataclass, field as dc_field

import numpy as np

from .checks import Report, compare
from .linalg import Matrix, contract, nullspace, outer, solve


class NotConvolutionInvertible(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class Coalgebra:
    """Based coalgebra.  ``delta[i, j, k]`` is the coefficient of e_j⊗e_k in Δ(e_i)."""

    field: object
    names: tuple
    delta: np.ndarray = dc_field(repr=False)
    counit: np.ndarray = dc_field(repr=False)

    @property
    def dim(self):
        return len(self.names)

    @classmethod
    def from_sparse(cls, F, names, delta, counit):
        """``delta`` maps i to a list of (j, k, coeff)."""
        n = len(names)
        D = F.zeros((n, n, n))
        for i, terms in delta.items():
            for j, k, c in terms:
                if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                    raise IndexError(f"delta entry {(i, j, k)} out of range for dim {n}")
                D[i, j, k] = F.reduce(np.array([D[i, j, k] + F.scalar(c)], dtype=F.dtype))[0]
        return cls(F, tuple(names), D, F.asarray(list(counit)))

    def sparse_delta(self):
        return {i: [(j, k, self.delta[i, j, k])
                    for j in range(self.dim) for k in range(self.dim) if self.delta[i, j, k] != 0]
                for i in range(self.dim)}

    def delta_matrix(self):
        """Δ as a dim²×dim matrix (row index j·dim+k)."""
        n = self.dim
        return Matrix(self.field, self.delta.reshape(n, n * n).T.copy())


def trivial_coalgebra(F):
    """The ground field 𝕜 as a one-dimensional coalgebra."""
    return Coalgebra(F, ("1",), F.ones((1, 1, 1)), F.ones(1))


def check_coalgebra(C):
    F, D, e = C.field, C.delta, C.counit
    r = Report("coalgebra")
    lhs = contract(F, "iab,ajk->ijkb", D, D)
    rhs = contract(F, "ija,akb->ijkb", D, D)
    r.add(compare("coassociativity", lhs, rhs, ("x", "x1", "x2", "x3")))
    eye = F.eye(C.dim)
    r.add(compare("counit_left", contract(F, "ijk,j->ik", D, e), eye, ("x", "out")))
    r.add(compare("counit_right", contract(F, "ijk,k->ij", D, e), eye, ("x", "out")))
    return r


def delta_power(C, n, v):
    """Δⁿ(v) as a tensor with n+1 legs (n = 0 returns v)."""
    F = C.field
    t = np.asarray(v)
    for _ in range(n):
        t = contract(F, "...i,ijk->...jk", t, C.delta)
    return t


def cop(C):
    return Coalgebra(C.field, C.names, C.delta.transpose(0, 2, 1).copy(), C.counit)


def tensor_coalgebra(C, D):
    F = C.field
    n, m = C.dim, D.dim
    T = contract(F, "iab,jcd->ijacbd", C.delta, D.delta).reshape(n * m, n * m, n * m)
    names = tuple(f"{a}⊗{b}" for a in C.names for b in D.names)
    return Coalgebra(F, names, T, outer(F, C.counit, D.counit).reshape(-1))


# ---------------------------------------------------------------- convolution

_LETTERS = string.ascii_letters


def _conv_subscripts(k):
    v = _LETTERS[:k]
    a = _LETTERS[k:2 * k]
    b = _LETTERS[2 * k:3 * k]
    deltas = ",".join(v[l] + a[l] + b[l] for l in range(k))
    return f"{deltas},{a},{b}->{v}"


def convolve_arrays(C, f, g):
    k = f.ndim
    return contract(C.field, _conv_subscripts(k), *([C.delta] * k), f, g)


def counit_power(C, k):
    return outer(C.field, *([C.counit] * k)) if k else C.field.ones(())


@dataclass(frozen=True, eq=False)
class Functional:
    """Element of (C^⊗k)^∨; ``values`` has shape (dim,)*k."""

    coalgebra: Coalgebra
    values: np.ndarray = dc_field(repr=False)

    @property
    def arity(self):
        return self.values.ndim

    @property
    def flat(self):
        return self.values.reshape(-1)

    def __call__(self, *idx):
        return self.values[idx]

    def _same(self, other):
        if other.coalgebra is not self.coalgebra or other.arity != self.arity:
            raise ValueError("functionals live on different spaces")

    def __eq__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        return (other.coalgebra is self.coalgebra and other.arity == self.arity
                and not np.any(self.values != other.values))

    __hash__ = None

    def __mul__(self, other):
        return convolve(self, other)


def counit_functional(C, k=1):
    return Functional(C, counit_power(C, k))


def convolve(f, g):
    f._same(g)
    return Functional(f.coalgebra, convolve_arrays(f.coalgebra, f.values, g.values))


def left_convolution_matrix(C, f):
    """Matrix of g ↦ f⋆g on (C^⊗k)^∨ in the flattened basis."""
    k = f.ndim
    v = _LETTERS[:k]
    a = _LETTERS[k:2 * k]
    b = _LETTERS[2 * k:3 * k]
    deltas = ",".join(v[l] + a[l] + b[l] for l in range(k))
    L = contract(C.field, f"{deltas},{a}->{v}{b}", *([C.delta] * k), f)
    n = C.dim ** k
    return Matrix(C.field, L.reshape(n, n))


def conv_inverse_array(C, f):
    C.field
    k = f.ndim
    unit = counit_power(C, k)
    sol = solve(left_convolution_matrix(C, f), unit.reshape(-1))
    if not sol.consistent:
        raise NotConvolutionInvertible("f⋆g = ε has no solution")
    g = sol.particular.reshape(f.shape)
    if np.any(convolve_arrays(C, f, g) != unit) or np.any(convolve_arrays(C, g, f) != unit):
        raise NotConvolutionInvertible("one-sided inverse only")
    return g


def conv_inverse(f):
    return Functional(f.coalgebra, conv_inverse_array(f.coalgebra, f.values))


# ---------------------------------------------------------------- group-likes

def grouplikes(C, max_dim=16):
    """All c with Δc = c⊗c and ε(c) = 1.

    With L_k(x) = (δ_k⊗id)Δ(x), a group-like c satisfies L_k c = c_k·c, so c is
    a common eigenvector whose eigenvalue list is c itself.  We branch over
    the eigenvalues of each L_k while intersecting eigenspaces, and keep the
    branches whose eigenvalue vector passes the exact test.
    """
    F, n = C.field, C.dim
    if n > max_dim:
        raise ValueError(f"group-like search limited to dim ≤ {max_dim}")
    L = [C.delta[:, k, :].T for k in range(n)]   # L_k[j, i] = D[i, k, j]
    found = []

    def branch(k, V, lams):
        if k == n:
            c = F.asarray(lams)
            if (contract(F, "i,i->", c, C.counit) == F.one
                    and np.all(contract(F, "i,ijk->jk", c, C.delta) == outer(F, c, c))
                    and not any(np.all(c == g) for g in found)):
                found.append(c)
            return
        for lam in _eigenvalues(F, L[k]):
            A = np.concatenate([V, F.reduce(L[k] - lam * F.eye(n))], axis=0)
            if len(nullspace(F, A)):
                branch(k + 1, A, lams + [lam])

    branch(0, F.zeros((0, n)), [])
    return found


def _eigenvalues(F, M):
    n = M.shape[0]
    if getattr(F, "p", None):
        return [lam for lam in range(F.p)
                if len(nullspace(F, F.reduce(M - lam * F.eye(n))))]
    import sympy
    from fractions import Fraction
    ch = sympy.Matrix(n, n, [sympy.Rational(str(x)) for x in M.reshape(-1)]).charpoly()
    roots = sympy.roots(ch.as_expr(), filter="Q")
    return [F.scalar(Fraction(int(r.p), int(r.q))) for r in sorted(roots)]
