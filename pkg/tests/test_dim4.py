"""Full-stack exercise at the top of the supported scale: the 4-dimensional
cross-polytope fan (8 rays, 16 orthant cones) and the unit 4-cube on it."""

from fractions import Fraction
from itertools import product

from multifan import (
    MultiFan,
    MultiPolytope,
    count,
    degree,
    e_vector,
    ehrhart_polynomial,
    h_vector,
    is_complete,
    kp_count,
    signature,
    todd_count,
    volume,
)


def _cross_fan():
    rays = []
    for k in range(4):
        e = [0] * 4
        e[k] = 1
        rays.append(tuple(e))
    for k in range(4):
        e = [0] * 4
        e[k] = -1
        rays.append(tuple(e))
    cones = [({k + 1 + 4 * s for k, s in enumerate(signs)}, 1, 0)
             for signs in product((0, 1), repeat=4)]
    return MultiFan(4, rays, cones)


def test_cross_polytope_fan_invariants():
    fan = _cross_fan()
    assert is_complete(fan)
    assert degree(fan) == 1
    assert h_vector(fan) == (1, 4, 6, 4, 1)
    assert e_vector(fan) == (1, 8, 24, 32, 16)   # face counts of the fan
    assert signature(fan) == 0


def test_unit_4_cube_counts():
    box = MultiPolytope(_cross_fan(), [1, 1, 1, 1, 0, 0, 0, 0])
    assert count(box) == 16
    assert volume(box) == 1
    assert todd_count(box, tol_pole=0.0, tol_int=0.0) == 16
    assert kp_count(box) == 16
    assert ehrhart_polynomial(box).coefficients == (1, 4, 6, 4, 1)
