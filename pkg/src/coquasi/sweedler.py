"""Sweedler-notation sums written as tensor networks.

Each leg of an iterated coproduct is a network label; products, the
antipode and functionals are structure tensors attached to labels.  A
formula such as Σ φ(S h₁ ⊗ h₃ ⊗ S h₅) α(h₂) β(h₄) reads

    sw = Sweedler(H)
    h = sw.var()
    h1, h2, h3, h4, h5 = sw.split(h, 5)
    sw.phi(sw.S(h1), h3, sw.S(h5)); sw.alpha(h2); sw.beta(h4)
    sw.eval(h)
"""

from __future__ import annotations

import itertools

from .linalg import contract_network


class Sweedler:
    def __init__(self, H, coalgebra=None):
        self.H = H
        self.F = H.field
        self.C = coalgebra if coalgebra is not None else H.coalgebra
        self.terms = []
        self._ids = itertools.count()

    def var(self):
        return next(self._ids)

    def add(self, labels, array):
        self.terms.append((tuple(labels), array))

    def split(self, v, k):
        """Labels for v₁, …, v_k (Δ^{k-1} applied to v)."""
        legs = []
        cur = v
        for _ in range(k - 1):
            a, b = self.var(), self.var()
            self.add((cur, a, b), self.C.delta)
            legs.append(a)
            cur = b
        legs.append(cur)
        return legs

    def mul(self, a, b):
        t = self.var()
        self.add((a, b, t), self.H.prod)
        return t

    def apply(self, M, a):
        t = self.var()
        self.add((t, a), M)
        return t

    def S(self, a):
        return self.apply(self.H.S, a)

    def Sbar(self, a):
        return self.apply(self.H.Sbar, a)

    def unit(self):
        t = self.var()
        self.add((t,), self.H.unit)
        return t

    def const(self, vec):
        t = self.var()
        self.add((t,), vec)
        return t

    def fn(self, values, *labels):
        self.add(labels, values)

    def phi(self, a, b, c):
        self.add((a, b, c), self.H.phi)

    def phi_inv(self, a, b, c):
        self.add((a, b, c), self.H.phi_inv)

    def alpha(self, a):
        self.add((a,), self.H.alpha)

    def beta(self, a):
        self.add((a,), self.H.beta)

    def eps(self, a):
        self.add((a,), self.H.counit)

    def eval(self, *out):
        return contract_network(self.F, self.terms, out)
