import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polywidth.ellipsoid import EllipsoidCoords, ellipsoid_membership, random_member, tail_check
from polywidth.errors import NotInEllipsoidError, RangeError, ShapeError

LAM = np.array([1.0, 4.0, 9.0, 16.0])


def test_membership_ignores_free_axes():
    c = EllipsoidCoords(np.array([1e6]), np.array([0.5, 0.25, 0, 0]), LAM)
    m = ellipsoid_membership(c)
    assert m.inside and abs(m.value - 0.5) <= 1e-15


def test_membership_outside():
    assert not ellipsoid_membership(EllipsoidCoords([], [1.1, 0, 0, 0], LAM)).inside


def test_tail_check_values():
    c = EllipsoidCoords([], [0.6, 0.2, 0.1, 0.05], LAM)
    res = tail_check(c, 2)
    assert abs(res.tail_error - math.sqrt(0.01 + 0.0025)) <= 1e-15
    assert abs(res.bound - 1 / 3) <= 1e-15 and res.satisfied


def test_tail_check_errors():
    with pytest.raises(NotInEllipsoidError):
        tail_check(EllipsoidCoords([], [2, 0, 0, 0], LAM), 0)
    with pytest.raises(RangeError):
        tail_check(EllipsoidCoords([], [0, 0, 0, 0], LAM), 4)


def test_shape_and_finiteness():
    with pytest.raises(ShapeError):
        EllipsoidCoords([], [1.0], LAM)
    with pytest.raises(ValueError):
        EllipsoidCoords([np.nan], [0, 0, 0, 0], LAM)


@given(seed=st.integers(0, 2**32 - 1), decay=st.floats(0.5, 4.0))
def test_random_member_on_boundary(seed, decay):
    c = random_member(LAM, np.random.default_rng(seed), decay, n_free=2)
    assert abs(ellipsoid_membership(c).value - 1.0) <= 1e-13
    for k in range(4):
        assert tail_check(c, k).satisfied
