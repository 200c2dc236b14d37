import numpy as np
import pytest
from hypothesis import given, strategies as st

from coquasi.coalg import (NotConvolutionInvertible, check_coalgebra, conv_inverse_array,
                           convolve_arrays, counit_power, grouplikes, tensor_coalgebra)
from coquasi.zoo import ZOO_NAMES, build

SMALL = ["kZ2", "kZ3", "H4", "kZ2_omega"]


def _functional(H, rng, arity=1):
    F = H.field
    shape = (H.dim,) * arity
    if getattr(F, "p", None):
        return F.asarray(rng.integers(0, F.p, size=shape).tolist())
    return F.asarray(rng.integers(-3, 4, size=shape).tolist())


@pytest.mark.parametrize("name", ZOO_NAMES)
def test_zoo_coalgebras_pass(name):
    assert check_coalgebra(build(name).coalgebra).ok


@given(st.sampled_from(SMALL), st.integers(0, 2**32), st.integers(1, 2))
def test_convolution_is_associative_and_unital(name, seed, k):
    C = build(name).coalgebra
    rng = np.random.default_rng(seed)
    f, g, h = (_functional(C, rng, k) for _ in range(3))
    lhs = convolve_arrays(C, convolve_arrays(C, f, g), h)
    rhs = convolve_arrays(C, f, convolve_arrays(C, g, h))
    assert not np.any(lhs != rhs)
    e = counit_power(C, k)
    assert not np.any(convolve_arrays(C, e, f) != f)
    assert not np.any(convolve_arrays(C, f, e) != f)


@given(st.sampled_from(SMALL), st.integers(0, 2**32))
def test_convolution_inverse_is_two_sided(name, seed):
    C = build(name).coalgebra
    f = _functional(C, np.random.default_rng(seed))
    try:
        g = conv_inverse_array(C, f)
    except NotConvolutionInvertible:
        return
    e = counit_power(C, 1)
    assert not np.any(convolve_arrays(C, f, g) != e)
    assert not np.any(convolve_arrays(C, g, f) != e)


def test_tensor_coalgebra_passes():
    C = build("H4").coalgebra
    assert check_coalgebra(tensor_coalgebra(C, C)).ok


@pytest.mark.parametrize("name, count", [("kZ2", 2), ("kZ3", 3), ("kS3", 6), ("H4", 2),
                                         ("Taft3", 3), ("kZ3_omega", 3)])
def test_grouplike_counts(name, count):
    assert len(grouplikes(build(name).coalgebra)) == count
