import numpy as np
import pytest
from hypothesis import given, strategies as st

from coquasi.coalg import grouplikes
from coquasi.comod import random_comodule, regular, regular_right, trivialize_left
from coquasi.hopfmod import (check_hopf_module, check_tau, check_tau_monoidal,
                             check_tau_natural, cotensor_hopf_module, free_hopf_module,
                             fundamental_check, tau, tau_hopf_form)
from coquasi.linalg import GF
from coquasi.zoo import build, cyclic_cocycle_coquasi

SMALL = ["kZ2", "kZ3", "H4", "kZ2_omega", "kZ3_omega"]


@given(st.sampled_from(SMALL), st.integers(0, 2**32))
def test_tau_is_invertible_hopf_morphism(name, seed):
    H = build(name)
    M = random_comodule(H, np.random.default_rng(seed), grouplikes=grouplikes(H.coalgebra))
    assert check_tau(M).ok


@given(st.sampled_from(SMALL), st.integers(0, 2**32))
def test_free_modules_satisfy_fundamental_theorem(name, seed):
    H = build(name)
    M = random_comodule(H, np.random.default_rng(seed), max_dim=3)
    X = free_hopf_module(trivialize_left(M, H))
    assert check_hopf_module(X).ok
    fund = fundamental_check(X)
    assert fund.is_iso and fund.coinvariants.dim == M.dim


def test_tau_is_natural():
    H = build("kZ3_omega")
    M = regular_right(H)
    assert check_tau_natural(H.field.eye(H.dim), M, M).ok


def test_tau_hopf_form_differs_with_cocycle():
    # the Hopf-case formula is only valid for trivial φ, α, β
    H = cyclic_cocycle_coquasi(3, 2, GF(7))
    M = regular_right(H)
    assert np.any(tau(M).matrix != tau_hopf_form(M))


@pytest.mark.parametrize("name", ["H4", "kZ2_omega"])
def test_tau_monoidal(name):
    M = regular_right(build(name))
    assert check_tau_monoidal(M, M).ok


@pytest.mark.parametrize("name", ["kZ2", "kZ2_omega"])
def test_cotensor_of_free_modules(name):
    X = free_hopf_module(regular(build(name)))
    C = cotensor_hopf_module(X, X)
    assert check_hopf_module(C).ok
