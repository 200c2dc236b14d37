from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coquasi.coalg import conv_inverse_array, grouplikes
from coquasi.cqbialg import (antipode_morphism, check_antipode, check_coquasi,
                             check_grouplike_inverses, check_monoidal_morphism, chi_s,
                             compose_monoidal, harpoon_left, harpoon_right, identity_monoidal)
from coquasi.linalg import mm
from coquasi.zoo import ZOO_NAMES, build


@pytest.mark.parametrize("name", ZOO_NAMES)
def test_zoo_axioms(name):
    H = build(name)
    assert check_coquasi(H).ok
    assert check_antipode(H).ok
    assert check_grouplike_inverses(H, grouplikes(H.coalgebra)).ok


def test_denormalized_phi_fails_normalization():
    H = build("kZ2_omega")
    phi = H.phi.copy()
    phi[0, 1, 1] = -1            # φ(1, g, g) ≠ 1 breaks the unit normalization
    bad = replace(H, phi=phi, phi_inv=conv_inverse_array(H.coalgebra, phi))
    failed = {c.name for c in check_coquasi(bad).failures()}
    assert failed & {"associator3", "consequence_left", "consequence_right"}


def test_wrong_beta_fails_antipode():
    H = build("kZ3_omega")
    ant = replace(H.antipode, beta=H.counit.copy())
    assert not check_antipode(replace(H, antipode=ant)).ok


@pytest.mark.parametrize("name", ["H4", "kZ2_omega", "kZ3", "kZ3_omega", "Taft3"])
def test_chi_s_is_monoidal(name):
    res = chi_s(build(name))
    assert res.report.ok
    assert check_monoidal_morphism(res.morphism).ok


def test_identity_monoidal_composes():
    H = build("H4")
    m = identity_monoidal(H)
    assert check_monoidal_morphism(compose_monoidal(m, m)).ok


@given(st.sampled_from(["H4", "kZ3", "Taft3"]), st.integers(0, 2**32))
def test_harpoons_commute(name, seed):
    H = build(name)
    F = H.field
    rng = np.random.default_rng(seed)
    mk = lambda: F.asarray(rng.integers(0, F.p, size=H.dim).tolist()) if getattr(F, "p", None) \
        else F.asarray(rng.integers(-3, 4, size=H.dim).tolist())
    f, g = mk(), mk()
    A = harpoon_left(H, f)
    B = harpoon_right(H, g)
    assert not np.any(mm(F, A, B) != mm(F, B, A))


def test_antipode_morphism_uses_closed_form_by_default():
    H = build("kZ2_omega")
    assert check_monoidal_morphism(antipode_morphism(H)).ok
