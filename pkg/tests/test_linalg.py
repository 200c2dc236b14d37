from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coquasi.linalg import (GF, QQ, FieldMismatch, Matrix, ScalarFormatError, Singular,
                            contract, contract_network, field_from_descriptor, invert,
                            nullspace, rank, rref, solve)

fields = st.sampled_from([QQ, GF(7), GF(5), GF(101)])
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def matrices(draw, F=None, rows=None, cols=None):
    F = F or draw(fields)
    r = rows or draw(st.integers(1, 5))
    c = cols or draw(st.integers(1, 5))
    vals = draw(st.lists(rationals, min_size=r * c, max_size=r * c))
    if F is not QQ:
        vals = [v for v in vals if v.denominator % F.p]
        vals += [Fraction(0)] * (r * c - len(vals))
    return Matrix(F, F.asarray(vals).reshape(r, c))


@given(matrices())
def test_nullspace_is_annihilated(A):
    F = A.field
    K = nullspace(F, A.data)
    assert K.shape[0] == A.cols - rank(F, A.data)
    if K.shape[0]:
        assert not np.any(contract(F, "ij,kj->ik", A.data, K) != 0)


@given(matrices(), st.data())
def test_solve_returns_every_solution(A, data):
    F = A.field
    x = F.asarray(data.draw(st.lists(st.integers(-5, 5), min_size=A.cols, max_size=A.cols)))
    b = A.apply(x)
    sol = solve(A, b)
    assert sol.consistent
    assert not np.any(A.apply(sol.particular) != b)
    # x itself differs from the particular solution by a kernel element
    diff = F.reduce(x - sol.particular)
    K = sol.kernel_basis
    if K.shape[0] == 0:
        assert not np.any(diff != 0)
    else:
        assert solve(Matrix(F, K.T.copy()), diff).consistent


@given(matrices(rows=4, cols=4))
def test_invert_or_singular(A):
    F = A.field
    if rank(F, A.data) == 4:
        Ai = invert(A)
        assert (A @ Ai).is_identity() and (Ai @ A).is_identity()
    else:
        with pytest.raises(Singular):
            invert(A)


@given(matrices())
def test_rref_is_idempotent(A):
    F = A.field
    R, piv = rref(F, A.data)
    R2, piv2 = rref(F, R)
    assert piv == piv2 and not np.any(R != R2)


@given(fields, st.lists(rationals, min_size=1, max_size=6))
def test_scalar_format_round_trip(F, vals):
    for v in vals:
        if F is not QQ and v.denominator % F.p == 0:
            continue
        x = F.scalar(v)
        assert F.parse(F.format(x)) == x


@pytest.mark.parametrize("F, text", [(GF(7), "7"), (GF(7), "-1"), (GF(7), "03"),
                                     (QQ, "2/4"), (QQ, "+1"), (QQ, "1/0")])
def test_non_canonical_scalars_rejected(F, text):
    with pytest.raises(ScalarFormatError):
        F.parse(text)


def test_field_descriptors():
    assert field_from_descriptor("Q") is QQ
    assert field_from_descriptor("GF(7)") is GF(7)
    assert field_from_descriptor("F7") is GF(7)
    with pytest.raises(ScalarFormatError):
        field_from_descriptor("R")


def test_mixed_fields_raise():
    with pytest.raises(FieldMismatch):
        Matrix(GF(7), GF(7).eye(2)) @ Matrix(GF(5), GF(5).eye(2))
    with pytest.raises(FieldMismatch):
        GF(7).element(1) + GF(5).element(1)


@given(fields, st.integers(0, 2**32))
def test_contract_network_matches_einsum(F, seed):
    rng = np.random.default_rng(seed)
    if F is QQ:
        mk = lambda *s: F.asarray(rng.integers(-3, 4, size=s).tolist())
    else:
        mk = lambda *s: F.asarray(rng.integers(0, F.p, size=s).tolist())
    A, B, C = mk(3, 4), mk(4, 2, 3), mk(2, 5)
    net = contract_network(F, [(("i", "j"), A), (("j", "k", "l"), B), (("k", "m"), C)],
                           ("i", "l", "m"))
    ref = np.einsum("ij,jkl,km->ilm", A.astype(object), B.astype(object), C.astype(object))
    assert not np.any(net != F.reduce(F.asarray(ref.tolist())))
