import numpy as np
import pytest
from hypothesis import given, strategies as st

from coquasi.coalg import grouplikes
from coquasi.comod import (AmbientMismatch, assoc_apply, assoc_constraint, assoc_row,
                           check_bicomodule, check_dual_coaction, check_morphism, check_triangles,
                           coinvariants_left, left_dual, random_comodule, reassociate,
                           regular, regular_right, right_dual, tensor_comodules)
from coquasi.linalg import mm
from coquasi.zoo import build

COCYCLE = ["kZ2_omega", "kZ3_omega"]
ALL = ["kZ2", "kZ3", "H4", "Taft3", "kZ2_omega", "kZ3_omega"]


def _rand(name, seed, max_dim=3):
    H = build(name)
    return H, random_comodule(H, np.random.default_rng(seed), max_dim=max_dim,
                              grouplikes=grouplikes(H.coalgebra))


@given(st.sampled_from(ALL), st.integers(0, 2**32))
def test_random_comodules_are_comodules(name, seed):
    _, M = _rand(name, seed, 4)
    assert 1 <= M.dim <= 4
    assert check_bicomodule(M).ok


@given(st.sampled_from(ALL), st.integers(0, 2**32))
def test_duals_are_rigid(name, seed):
    _, M = _rand(name, seed)
    assert check_triangles(M).ok
    assert check_dual_coaction(left_dual(M)).ok
    assert check_dual_coaction(right_dual(M)).ok


@given(st.sampled_from(COCYCLE + ["H4"]), st.integers(0, 2**32))
def test_associator_is_a_natural_isomorphism(name, seed):
    H, L = _rand(name, seed, 2)
    _, M = _rand(name, seed + 1, 2)
    _, N = _rand(name, seed + 2, 2)
    F = H.field
    A = assoc_constraint(L, M, N)
    Ai = assoc_constraint(L, M, N, inverse=True)
    d = A.shape[0]
    assert not np.any(mm(F, A, Ai) != F.eye(d))
    assert not np.any(assoc_apply(L, M, N, F.eye(d)) != A)
    assert not np.any(assoc_row(L, M, N, F.eye(d)) != A)
    src = tensor_comodules(tensor_comodules(L, M), N)
    dst = tensor_comodules(L, tensor_comodules(M, N))
    assert check_morphism(A, src, dst).ok


@pytest.mark.parametrize("name", COCYCLE)
def test_pentagon(name):
    H = build(name)
    R = regular_right(H)
    # two routes ((RR)R)R → R(R(RR)) agree
    t0 = (((R, R), R), R)
    t1 = (R, (R, (R, R)))
    direct = reassociate(t0, t1)
    via = mm(H.field, reassociate(((R, (R, R)), R), t1), reassociate(t0, ((R, (R, R)), R)))
    assert not np.any(direct != via)


def test_phi_nontrivial_associator_is_not_identity():
    H = build("kZ2_omega")
    R = regular_right(H)
    assert np.any(assoc_constraint(R, R, R) != H.field.eye(8))


def test_mixed_ambient_rejected():
    with pytest.raises(AmbientMismatch):
        tensor_comodules(regular(build("kZ2")), regular(build("kZ2_omega")))


def test_coinvariants_of_regular():
    H = build("H4")
    N, incl = coinvariants_left(regular(H))
    assert N.dim == 1
