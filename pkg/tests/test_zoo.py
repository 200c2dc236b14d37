import numpy as np
import pytest

from coquasi.cqbialg import check_antipode, check_coquasi
from coquasi.linalg import GF, QQ, mm
from coquasi.zoo import (BadRoot, CharTwo, NotAGroup, ZOO_NAMES, build, cyclic_cocycle_coquasi,
                         group_algebra, sweedler_h4, taft, zoo_specs)


def test_zoo_names_and_dims():
    dims = {n: build(n).dim for n in ZOO_NAMES}
    assert dims == {"kZ2": 2, "kZ3": 3, "kS3": 6, "H4": 4, "Taft3": 9,
                    "kZ2_omega": 2, "kZ3_omega": 3}
    assert [s.name for s in zoo_specs()] == list(ZOO_NAMES)


def test_not_a_group():
    with pytest.raises(NotAGroup):
        group_algebra([[0, 1], [1, 1]], QQ)


def test_bad_roots():
    with pytest.raises(BadRoot):
        taft(3, 1, GF(7))
    with pytest.raises(BadRoot):
        cyclic_cocycle_coquasi(3, 6, GF(7))


def test_char_two():
    with pytest.raises(CharTwo):
        sweedler_h4(GF(2))


def test_taft2_is_h4():
    T = taft(2, -1, QQ)
    H = sweedler_h4(QQ)
    for attr in ("delta", "prod", "unit", "counit", "S"):
        assert not np.any(getattr(T, attr) != getattr(H, attr))


@pytest.mark.parametrize("name, order", [("H4", 4), ("Taft3", 6)])
def test_antipode_order(name, order):
    H = build(name)
    F = H.field
    P = F.eye(H.dim)
    for k in range(1, order + 1):
        P = mm(F, H.S, P)
        if k == 2:
            assert np.any(P != F.eye(H.dim))
    assert not np.any(P != F.eye(H.dim))


def test_cocycle_values():
    H = build("kZ2_omega")
    assert H.phi[1, 1, 1] == -1 and H.beta[1] == -1
    for i in range(2):
        for j in range(2):
            for k in range(2):
                assert H.phi[i, j, k] == (-1) ** (i * ((j + k) // 2))


def test_gf11_cyclic_cocycle():
    # 3 is a primitive 5th root of unity in GF(11)
    H = cyclic_cocycle_coquasi(5, 3, GF(11))
    assert check_coquasi(H).ok and check_antipode(H).ok
