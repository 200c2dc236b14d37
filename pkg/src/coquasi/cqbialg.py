"""Coquasi bialgebras and coquasi Hopf algebras.

Structure tensors (all dense numpy arrays over the base field):

* ``prod[i, j, k]``   coefficient of e_k in e_i·e_j
* ``unit[k]``         coefficients of 1
* ``phi[i, j, k]``    φ(e_i⊗e_j⊗e_k), and ``phi_inv`` its convolution inverse
* ``S[k, i]``         coefficient of e_k in S(e_i); ``alpha``, ``beta`` vectors
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .checks import Report, compare, holds
from .coalg import (Coalgebra, NotConvolutionInvertible, conv_inverse_array, convolve_arrays,
                    cop, counit_power, trivial_coalgebra)
from .linalg import Matrix, Singular, contract, invert, outer, solve
from .sweedler import Sweedler


class MissingPhiInverse(ArithmeticError):
    pass


class ChiSFormulaMismatch(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class Antipode:
    S: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    S_inv: np.ndarray | None = None


@dataclass(frozen=True, eq=False, kw_only=True)
class CoquasiBialgebra:
    coalgebra: Coalgebra
    prod: np.ndarray = dc_field(repr=False)
    unit: np.ndarray = dc_field(repr=False)
    phi: np.ndarray = dc_field(repr=False)
    phi_inv: np.ndarray = dc_field(repr=False)
    name: str = ""

    @property
    def field(self):
        return self.coalgebra.field

    @property
    def dim(self):
        return self.coalgebra.dim

    @property
    def names(self):
        return self.coalgebra.names

    @property
    def delta(self):
        return self.coalgebra.delta

    @property
    def counit(self):
        return self.coalgebra.counit

    def mul(self, x, y):
        return contract(self.field, "i,j,ijk->k", x, y, self.prod)

    def basis(self, i):
        return self.field.unit_vector(self.dim, i)

    def left_mult(self, a):
        """Matrix of y ↦ a·y."""
        return contract(self.field, "i,ijk->ki", a, self.prod)

    def right_mult(self, a):
        """Matrix of y ↦ y·a."""
        return contract(self.field, "j,ijk->ki", a, self.prod)

    def phi_is_trivial(self):
        return not np.any(self.phi != counit_power(self.coalgebra, 3))


@dataclass(frozen=True, eq=False, kw_only=True)
class CoquasiHopf(CoquasiBialgebra):
    antipode: Antipode

    @property
    def S(self):
        return self.antipode.S

    @property
    def Sbar(self):
        if self.antipode.S_inv is None:
            raise Singular("antipode is not invertible")
        return self.antipode.S_inv

    @property
    def alpha(self):
        return self.antipode.alpha

    @property
    def beta(self):
        return self.antipode.beta

    def is_hopf(self):
        """φ trivial and α = β = ε: an ordinary Hopf algebra."""
        e = self.counit
        return self.phi_is_trivial() and not np.any(self.alpha != e) and not np.any(self.beta != e)

    def inverse_grouplike(self, a):
        return contract(self.field, "ki,i->k", self.S, a)


def make_bialgebra(coalgebra, prod, unit, phi, name=""):
    """Assemble a coquasi bialgebra; φ⁻¹ is computed and verified two-sidedly."""
    F = coalgebra.field
    trivial = counit_power(coalgebra, 3)
    if not np.any(phi != trivial):
        phi_inv = trivial
    else:
        try:
            phi_inv = conv_inverse_array(coalgebra, phi)
        except NotConvolutionInvertible as exc:
            raise MissingPhiInverse(str(exc)) from exc
    return CoquasiBialgebra(coalgebra=coalgebra, prod=F.reduce(np.asarray(prod, dtype=F.dtype)),
                            unit=F.reduce(np.asarray(unit, dtype=F.dtype)), phi=phi,
                            phi_inv=phi_inv, name=name)


def with_antipode(B, S, alpha, beta):
    F = B.field
    S = F.reduce(np.asarray(S, dtype=F.dtype))
    try:
        S_inv = invert(Matrix(F, S)).data
    except Singular:
        S_inv = None
    ant = Antipode(S, F.reduce(np.asarray(alpha, dtype=F.dtype)),
                   F.reduce(np.asarray(beta, dtype=F.dtype)), S_inv)
    return CoquasiHopf(coalgebra=B.coalgebra, prod=B.prod, unit=B.unit, phi=B.phi,
                       phi_inv=B.phi_inv, name=B.name, antipode=ant)


def trivial_bialgebra(F):
    """𝕜 as a coquasi Hopf algebra."""
    C = trivial_coalgebra(F)
    one = F.ones(1)
    B = CoquasiBialgebra(coalgebra=C, prod=F.ones((1, 1, 1)), unit=one,
                         phi=F.ones((1, 1, 1)), phi_inv=F.ones((1, 1, 1)), name="k")
    return with_antipode(B, F.ones((1, 1)), one, one)


# ---------------------------------------------------------------- checks

def check_coquasi(H):
    F, D, P, u, e = H.field, H.delta, H.prod, H.unit, H.counit
    C = H.coalgebra
    r = Report("coquasi")
    n = H.dim
    # p and u are coalgebra maps
    lhs = contract(F, "xyk,kab->xyab", P, D)
    rhs = contract(F, "xcd,yfg,cfa,dgb->xyab", D, D, P, P)
    r.add(compare("product_comultiplicative", lhs, rhs, ("x", "y", "out1", "out2")))
    r.add(compare("product_counital", contract(F, "xyk,k->xy", P, e), outer(F, e, e), ("x", "y")))
    r.add(compare("unit_grouplike", contract(F, "k,kab->ab", u, D), outer(F, u, u), ("out1", "out2")))
    r.add(holds("unit_counit", contract(F, "k,k->", u, e) == F.one))
    # unit is a two-sided identity for the product
    eye = F.eye(n)
    r.add(compare("unitprod_left", contract(F, "i,iyk->ky", u, P), eye, ("out", "y")))
    r.add(compare("unitprod_right", contract(F, "i,xik->kx", u, P), eye, ("out", "x")))
    # φ⁻¹ is two-sided
    unit3 = counit_power(C, 3)
    r.add(compare("phi_inverse_right", convolve_arrays(C, H.phi, H.phi_inv), unit3, ("c", "d", "e")))
    r.add(compare("phi_inverse_left", convolve_arrays(C, H.phi_inv, H.phi), unit3, ("c", "d", "e")))
    # φ intertwines the two bracketings of the product
    sw = Sweedler(H)
    c, d, ee = sw.var(), sw.var(), sw.var()
    c1, c2 = sw.split(c, 2)
    d1, d2 = sw.split(d, 2)
    e1, e2 = sw.split(ee, 2)
    out = sw.mul(sw.mul(c1, d1), e1)
    sw.phi(c2, d2, e2)
    lhs = sw.eval(c, d, ee, out)
    sw = Sweedler(H)
    c, d, ee = sw.var(), sw.var(), sw.var()
    c1, c2 = sw.split(c, 2)
    d1, d2 = sw.split(d, 2)
    e1, e2 = sw.split(ee, 2)
    sw.phi(c1, d1, e1)
    out = sw.mul(c2, sw.mul(d2, e2))
    rhs = sw.eval(c, d, ee, out)
    r.add(compare("associator1", lhs, rhs, ("c", "d", "e", "out")))
    # pentagon for φ: φ(p⊗id⊗id)⋆φ(id⊗id⊗p) = (φ⊗ε)⋆φ(id⊗p⊗id)⋆(ε⊗φ) in (C^⊗4)^∨
    phi_p11 = contract(F, "cdt,tef->cdef", P, H.phi)
    phi_11p = contract(F, "eft,cdt->cdef", P, H.phi)
    phi_e = contract(F, "cde,f->cdef", H.phi, e)
    phi_1p1 = contract(F, "det,ctf->cdef", P, H.phi)
    e_phi = contract(F, "c,def->cdef", e, H.phi)
    lhs = convolve_arrays(C, phi_p11, phi_11p)
    rhs = convolve_arrays(C, convolve_arrays(C, phi_e, phi_1p1), e_phi)
    r.add(compare("associator2", lhs, rhs, ("c", "d", "e", "f")))
    # normalization of φ on the unit
    ee2 = outer(F, e, e)
    r.add(compare("associator3", contract(F, "cjd,j->cd", H.phi, u), ee2, ("c", "d")))
    r.add(compare("consequence_left", contract(F, "jcd,j->cd", H.phi, u), ee2, ("c", "d")))
    r.add(compare("consequence_right", contract(F, "cdj,j->cd", H.phi, u), ee2, ("c", "d")))
    return r


def _antipode_sides(H):
    F = H.field
    out = {}
    sw = Sweedler(H)
    h = sw.var()
    h1, h2, h3 = sw.split(h, 3)
    sw.alpha(h2)
    o = sw.mul(sw.S(h1), h3)
    out["antipode1_alpha"] = (sw.eval(h, o), outer(F, H.alpha, H.unit))
    sw = Sweedler(H)
    h = sw.var()
    h1, h2, h3 = sw.split(h, 3)
    sw.beta(h2)
    o = sw.mul(h1, sw.S(h3))
    out["antipode1_beta"] = (sw.eval(h, o), outer(F, H.beta, H.unit))
    sw = Sweedler(H)
    h = sw.var()
    h1, h2, h3, h4, h5 = sw.split(h, 5)
    sw.phi_inv(h1, sw.S(h3), h5)
    sw.beta(h2)
    sw.alpha(h4)
    out["antipode2"] = (sw.eval(h), H.counit)
    sw = Sweedler(H)
    h = sw.var()
    h1, h2, h3, h4, h5 = sw.split(h, 5)
    sw.phi(sw.S(h1), h3, sw.S(h5))
    sw.alpha(h2)
    sw.beta(h4)
    out["antipode3"] = (sw.eval(h), H.counit)
    return out


def check_antipode(H):
    F, D, S = H.field, H.delta, H.S
    r = Report("antipode")
    lhs = contract(F, "th,tab->hab", S, D)
    rhs = contract(F, "hcd,ad,bc->hab", D, S, S)
    r.add(compare("S_anticomultiplicative", lhs, rhs, ("h", "out1", "out2")))
    r.add(compare("S_counital", contract(F, "th,t->h", S, H.counit), H.counit, ("h",)))
    for name, (lhs, rhs) in _antipode_sides(H).items():
        labels = ("h", "out") if lhs.ndim == 2 else ("h",)
        r.add(compare(name, lhs, rhs, labels))
    r.add(holds("S_invertible", H.antipode.S_inv is not None))
    r.add(compare("S_unit", contract(F, "ki,i->k", S, H.unit), H.unit, ("out",)))
    return r


def check_grouplike_inverses(H, grouplike_list):
    H.field
    r = Report("grouplike_inverses")
    for t, a in enumerate(grouplike_list):
        Sa = H.inverse_grouplike(a)
        r.add(compare(f"S(a{t})·a{t}", H.mul(Sa, a), H.unit, ("out",)))
        r.add(compare(f"a{t}·S(a{t})", H.mul(a, Sa), H.unit, ("out",)))
    return r


def antipode_inverse(H):
    return invert(Matrix(H.field, H.S)).data


# ---------------------------------------------------------------- H°

def circ(H):
    """H° = (C^cop, p∘sw, u, φ(z,y,x)) with antipode (S, β, α)."""
    C = cop(H.coalgebra)
    B = CoquasiBialgebra(coalgebra=C, prod=H.prod.transpose(1, 0, 2).copy(), unit=H.unit,
                         phi=H.phi.transpose(2, 1, 0).copy(),
                         phi_inv=H.phi_inv.transpose(2, 1, 0).copy(),
                         name=f"{H.name}°" if H.name else "")
    if isinstance(H, CoquasiHopf):
        return CoquasiHopf(coalgebra=C, prod=B.prod, unit=B.unit, phi=B.phi, phi_inv=B.phi_inv,
                           name=B.name,
                           antipode=Antipode(H.S, H.beta, H.alpha, H.antipode.S_inv))
    return B


# ---------------------------------------------------------------- monoidal morphisms

@dataclass(frozen=True, eq=False)
class MonoidalMorphism:
    """A coalgebra map f: C → D (matrix f[d, c]) with monoidal structure (χ, ρ)."""

    source: CoquasiBialgebra
    target: CoquasiBialgebra
    f: np.ndarray
    chi: np.ndarray
    rho: object


def identity_monoidal(H):
    F = H.field
    return MonoidalMorphism(H, H, F.eye(H.dim), counit_power(H.coalgebra, 2), F.one)


def unit_monoidal(H):
    F = H.field
    k = trivial_bialgebra(F)
    return MonoidalMorphism(k, H, H.unit.reshape(-1, 1).copy(), F.ones((1, 1)), F.one)


def _chi1_sides(m, chi):
    Cb, Db, f = m.source, m.target, m.f
    F = Cb.field
    lhs = contract(F, "cab,dgh,ag,xb,yh,xyo->cdo", Cb.delta, Cb.delta, chi, f, f, Db.prod)
    rhs = contract(F, "cab,dgh,agt,ot,bh->cdo", Cb.delta, Cb.delta, Cb.prod, f, chi)
    return lhs, rhs


def _chimonoidal_sides(m, chi):
    Cb, Db, f = m.source, m.target, m.f
    F = Cb.field
    C = Cb.coalgebra
    e = Cb.counit
    a1 = contract(F, "xc,yd,ze,xyz->cde", f, f, f, Db.phi)
    a2 = contract(F, "cd,e->cde", chi, e)
    a3 = contract(F, "cdt,te->cde", Cb.prod, chi)
    b1 = contract(F, "c,de->cde", e, chi)
    b2 = contract(F, "det,ct->cde", Cb.prod, chi)
    lhs = convolve_arrays(C, convolve_arrays(C, a1, a2), a3)
    rhs = convolve_arrays(C, convolve_arrays(C, b1, b2), Cb.phi)
    return lhs, rhs


def check_monoidal_morphism(m):
    Cb, Db, f, chi = m.source, m.target, m.f, m.chi
    F = Cb.field
    r = Report("monoidal_morphism")
    # f is a coalgebra map
    r.add(compare("f_comultiplicative", contract(F, "tc,tab->cab", f, Db.delta),
                  contract(F, "cxy,ax,by->cab", Cb.delta, f, f), ("c", "out1", "out2")))
    r.add(compare("f_counital", contract(F, "tc,t->c", f, Db.counit), Cb.counit, ("c",)))
    lhs, rhs = _chi1_sides(m, chi)
    r.add(compare("chi1", lhs, rhs, ("c", "d", "out")))
    r.add(compare("chi1_unit", contract(F, "tc,c->t", f, Cb.unit), Db.unit, ("out",)))
    lhs, rhs = _chimonoidal_sides(m, chi)
    r.add(compare("chimonoidal", lhs, rhs, ("c", "d", "e")))
    e = Cb.counit
    rho = F.scalar(m.rho)
    r.add(compare("rho_left", F.reduce(rho * contract(F, "t,tc->c", Cb.unit, chi)), e, ("c",)))
    r.add(compare("rho_right", F.reduce(rho * contract(F, "t,ct->c", Cb.unit, chi)), e, ("c",)))
    try:
        conv_inverse_array(Cb.coalgebra, chi)
        inv = True
    except NotConvolutionInvertible:
        inv = False
    r.add(holds("chi_invertible", inv))
    return r


def compose_monoidal(mf, mg):
    """Structure on g∘f: (χ^g(f⊗f) ⋆ χ^f, ρ^f ρ^g)."""
    if mf.target is not mg.source and mf.target.dim != mg.source.dim:
        raise ValueError("morphisms are not composable")
    F = mf.source.field
    C = mf.source.coalgebra
    chi_g_ff = contract(F, "xc,yd,xy->cd", mf.f, mf.f, mg.chi)
    chi = convolve_arrays(C, chi_g_ff, mf.chi)
    return MonoidalMorphism(mf.source, mg.target, contract(F, "ab,bc->ac", mg.f, mf.f), chi,
                            F.reduce(np.array([F.scalar(mf.rho) * F.scalar(mg.rho)],
                                              dtype=F.dtype))[0])


# ---------------------------------------------------------------- χ^S

def chi_s_formula(H):
    """The closed-form sum for the monoidal structure of S: H° → H."""
    sw = Sweedler(H)
    x, y = sw.var(), sw.var()
    xs = sw.split(x, 9)
    ys = sw.split(y, 8)
    x1, x2, x3, x4, x5, x6, x7, x8, x9 = xs
    y1, y2, y3, y4, y5, y6, y7, y8 = ys
    sw.phi_inv(sw.S(y3), sw.S(x3), x5)
    sw.alpha(x4)
    sw.phi(sw.mul(sw.S(y2), sw.S(x2)), x6, y5)
    sw.alpha(y4)
    sw.beta(sw.mul(x8, y7))
    sw.phi(sw.mul(sw.S(y1), sw.S(x1)), sw.mul(x7, y6), sw.S(sw.mul(x9, y8)))
    return sw.eval(x, y)


def antipode_morphism(H, chi=None):
    """S: H° → H as a monoidal morphism (χ defaults to the closed form)."""
    F = H.field
    Ho = circ(H)
    if chi is None:
        chi = chi_s_formula(H)
    return MonoidalMorphism(Ho, H, H.S, chi, F.one)


def chi1_solution_space(m):
    """All χ making m monoidal with its scalar ρ, as a SolutionSpace."""
    Cb = m.source
    F = Cb.field
    n = Cb.dim
    basis = np.eye(n * n, dtype=np.int64).reshape(n * n, n, n)
    cols = []
    for B in basis:
        B = F.asarray(B)
        lhs, rhs = _chi1_sides(m, B)
        rl = contract(F, "t,tc->c", Cb.unit, B)
        rr = contract(F, "t,ct->c", Cb.unit, B)
        cols.append(np.concatenate([F.reduce(lhs - rhs).reshape(-1), rl, rr]))
    A = Matrix(F, np.stack(cols, axis=1))
    rho_inv = F.inv(F.scalar(m.rho))
    e = F.reduce(Cb.counit * rho_inv)
    b = np.concatenate([F.zeros(n * n * n), e, e])
    return solve(A, b)


@dataclass
class ChiSResult:
    morphism: MonoidalMorphism
    formula: np.ndarray
    formula_ok: bool
    in_chi1_space: bool
    source: str
    report: Report


def chi_s(H, enumerate_limit=4096):
    """χ^S by the closed form, cross-checked against the linear solver.

    Candidates in order: the closed form, the closed form with its
    arguments exchanged, members of the solver space.  The report checks the
    selected candidate; how the closed form itself fared is kept in ``data``.
    """
    F = H.field
    formula = chi_s_formula(H)
    m = antipode_morphism(H, formula)
    literal = check_monoidal_morphism(m)
    space = chi1_solution_space(m)
    in_space = space.consistent and _in_affine_space(F, space, formula.reshape(-1))
    r = Report("chi_s", data={"closed_form_ok": literal.ok})
    if not literal.ok:
        r.data["closed_form_failure"] = literal.failures()[0].to_json() | {
            "check": literal.failures()[0].name}

    def done(mm, rep, source):
        r.data["source"] = source
        r.add(rep)
        return ChiSResult(mm, formula, literal.ok, in_space, source, r)

    if literal.ok:
        r.add(holds("formula_in_chi1_space", in_space))
        return done(m, literal, "formula")
    ms = antipode_morphism(H, formula.T.copy())
    rep = check_monoidal_morphism(ms)
    if rep.ok:
        return done(ms, rep, "formula_swapped")
    for cand in _affine_members(F, space, enumerate_limit):
        mc = antipode_morphism(H, cand.reshape(H.dim, H.dim))
        rep = check_monoidal_morphism(mc)
        if rep.ok:
            return done(mc, rep, "solver")
    return done(m, literal, "none")


def _in_affine_space(F, space, v):
    diff = F.reduce(v - space.particular)
    K = space.kernel_basis
    if K.shape[0] == 0:
        return not np.any(diff != 0)
    A = Matrix(F, K.T.copy())
    return solve(A, diff).consistent


def _affine_members(F, space, limit):
    if not space.consistent:
        return
    K = space.kernel_basis
    d = K.shape[0]
    yield space.particular
    if d == 0:
        return
    if getattr(F, "p", None) and F.p ** d <= limit:
        for coeffs in itertools.product(range(F.p), repeat=d):
            if any(coeffs):
                yield space.member(coeffs)
    else:
        for k in K:
            yield F.reduce(space.particular + k)


# ---------------------------------------------------------------- harpoons

def harpoon_left(H, gamma):
    """Matrix of x ↦ γ⇀x = Σ x₁γ(x₂)."""
    return contract(H.field, "xob,b->ox", H.delta, gamma)


def harpoon_right(H, gamma):
    """Matrix of x ↦ x↼γ = Σ γ(x₁)x₂."""
    return contract(H.field, "xao,a->ox", H.delta, gamma)
