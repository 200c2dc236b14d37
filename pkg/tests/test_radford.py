import numpy as np
import pytest

from coquasi.radford import (NotAHopfAlgebra, check_frobenius, check_modular, check_nakayama,
                             check_radford, check_sigma_monoidal, cointegral_system,
                             hopf_cointegral, hopf_specialize, nakayama_of, right_integrals,
                             sigma_from_mu, sigma_solve_direct)
from coquasi.linalg import nullspace
from coquasi.zoo import ZOO_NAMES, build


def fmt(H, v):
    return [H.field.format(x) for x in v]


def test_h4_regression(contexts):
    ctx = contexts("H4")
    H = ctx.H
    assert fmt(H, ctx.W.phi) == ["0", "0", "0", "1"]     # δ_gx
    assert fmt(H, ctx.a) == ["0", "1", "0", "0"]         # g
    sig = sigma_from_mu(ctx)
    assert fmt(H, sig.sigma) == ["1", "-1", "0", "0"]
    assert fmt(H, right_integrals(H)[0]) == ["0", "0", "1", "-1"]


def test_taft_regression(contexts):
    ctx = contexts("Taft3")
    sig = sigma_from_mu(ctx)
    H = ctx.H
    assert fmt(H, sig.sigma)[:3] == ["1", "2", "4"]
    r, omega = hopf_specialize(ctx, sig)
    assert fmt(H, omega)[:3] == ["1", "2", "4"]
    assert r.data["sigma_is_omega"] and r.data["classical_S4_omega_inverse"]
    assert not r.data["S4_is_identity"]


@pytest.mark.parametrize("name", ["kZ2", "kS3", "kZ2_omega", "kZ3_omega"])
def test_group_like_cases_have_trivial_a(contexts, name):
    ctx = contexts(name)
    assert not np.any(ctx.a != ctx.H.unit)


@pytest.mark.parametrize("name", ["kZ2", "H4", "kZ2_omega", "kZ3_omega"])
def test_stage_checks(contexts, name):
    ctx = contexts(name)
    H = ctx.H
    assert check_modular(H, ctx.W, ctx.a).ok
    assert check_frobenius(ctx).ok
    assert check_nakayama(ctx).ok
    sig = sigma_from_mu(ctx)
    assert sig.report.ok
    assert check_radford(H, ctx.a, sig.sigma).ok
    assert check_sigma_monoidal(H, ctx.a, sig.sigma, ctx.chi).ok
    assert sigma_solve_direct(H, ctx.a).consistent


def test_wrong_sigma_fails_radford(contexts):
    ctx = contexts("H4")
    # on H4 the twist by a = g must be compensated by σ(g) = -1
    assert not check_radford(ctx.H, ctx.a, ctx.H.counit).ok


def test_hopf_specialize_rejects_cocycle(contexts):
    with pytest.raises(NotAHopfAlgebra):
        hopf_specialize(contexts("kZ2_omega"))


def test_nakayama_of_hopf_cointegral():
    H = build("H4")
    phi = hopf_cointegral(H)
    N = nakayama_of(H, phi)
    lhs = np.einsum("xyk,k->xy", H.prod, phi)
    rhs = np.einsum("ykt,kx,t->xy", H.prod, N, phi)
    assert not np.any(lhs != rhs)


def test_cointegral_space_is_one_dimensional():
    for name in ZOO_NAMES:
        H = build(name)
        assert nullspace(H.field, cointegral_system(H)).shape[0] == 1
