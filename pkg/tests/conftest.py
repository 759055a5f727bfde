"""Shared builders: named fixtures and randomized complete instances.

The random generators are constructive so that completeness holds by
design: 1-d fans from balanced ray pairs, 2-d fans from cyclic ray
sequences weighted by rotation sign, 3-d fans from unimodular images of
the simplex/octahedron fans with optional stellar subdivisions.  Lattice
polytopes scale random integer supports by the lcm of the vertex
denominators.
"""

import math
import random
from fractions import Fraction

import pytest

from multifan import MultiFan, MultiPolytope, example
from multifan.ehrhart import support_box
from multifan.linalg import mat_vec, primitive_vector


@pytest.fixture
def p2_fan():
    return example("p2")


@pytest.fixture
def p2_triangle():
    return example("p2-triangle")


@pytest.fixture
def star_fan():
    return example("star")


@pytest.fixture
def star_polytope():
    return example("star-polytope")


@pytest.fixture
def square():
    return example("square")


@pytest.fixture
def p112():
    return example("p112")


@pytest.fixture
def segment():
    return example("segment")


@pytest.fixture
def cube():
    return example("cube")


# ---------------------------------------------------------------------------
# random instances


def random_primitive_ray(rng, n, bound=3):
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(v):
            return primitive_vector(v)


def _det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def random_complete_fan_1d(rng, scale_weights=True):
    rays, cones = [], []
    for _ in range(rng.randint(1, 3)):
        w = rng.randint(1, 3) if scale_weights else 1
        rays.append((rng.choice((1, 1, 2)),))
        cones.append(({len(rays)}, w, 0))
        rays.append((-rng.choice((1, 1, 2)),))
        cones.append(({len(rays)}, w, 0))
    return MultiFan(1, rays, cones)


def random_complete_fan_2d(rng, d=None, scale=None):
    """Cyclic fan: consecutive rays span the 2-cones, the weight pair is
    (s, 0) for counterclockwise steps and (0, s) for clockwise ones.  Such
    fans are complete with degree = s * (rotation number)."""
    d = d or rng.randint(3, 6)
    scale = scale or rng.randint(1, 2)
    rays = []
    while len(rays) < d:
        v = random_primitive_ray(rng, 2)
        if rays and _det2(rays[-1], v) == 0:
            continue
        if len(rays) == d - 1 and _det2(v, rays[0]) == 0:
            continue
        rays.append(v)
    cones = []
    for i in range(d):
        j = (i + 1) % d
        if _det2(rays[i], rays[j]) > 0:
            cones.append(({i + 1, j + 1}, scale, 0))
        else:
            cones.append(({i + 1, j + 1}, 0, scale))
    return MultiFan(2, rays, cones)


def random_unimodular(rng, n, ops=3):
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(ops):
        i, j = rng.sample(range(n), 2)
        k = rng.choice((-1, 1))
        for c in range(n):
            M[j][c] += k * M[i][c]
    return tuple(tuple(row) for row in M)


def stellar_subdivide(fan, rng):
    """Replace a random top cone by the n cones over its facets and the
    primitive sum of its rays; preserves completeness and weights."""
    I = rng.choice(fan.top)
    labels = sorted(I)
    new_ray = primitive_vector(
        tuple(sum(fan.ray(i)[k] for i in labels) for k in range(fan.dim)))
    rays = list(fan.rays) + [new_ray]
    new_label = len(rays)
    cones = []
    for J, (wp, wm) in fan.weights.items():
        if J == I:
            for i in labels:
                cones.append(((J - {i}) | {new_label}, wp, wm))
        else:
            cones.append((J, wp, wm))
    return MultiFan(fan.dim, rays, cones)


def random_complete_fan_3d(rng, subdivide=True):
    kind = rng.choice(("simplex", "octahedron"))
    if kind == "simplex":
        rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
        cones = [({1, 2, 3}, 1, 0), ({1, 2, 4}, 1, 0),
                 ({1, 3, 4}, 1, 0), ({2, 3, 4}, 1, 0)]
    else:
        rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1),
                (-1, 0, 0), (0, -1, 0), (0, 0, -1)]
        cones = [({a, b, c}, 1, 0)
                 for a in (1, 4) for b in (2, 5) for c in (3, 6)]
    U = random_unimodular(rng, 3)
    rays = [mat_vec(U, r) for r in rays]
    fan = MultiFan(3, rays, cones)
    if subdivide and kind == "simplex":
        for _ in range(rng.randint(0, 2)):
            fan = stellar_subdivide(fan, rng)
    return fan


def random_complete_fan(rng, n=None):
    n = n or rng.choice((1, 2, 3))
    if n == 1:
        return random_complete_fan_1d(rng)
    if n == 2:
        return random_complete_fan_2d(rng)
    return random_complete_fan_3d(rng)


def _singular_shear(rng, fan):
    """Apply an integer map of determinant > 1 and re-primitivize the rays;
    the cones are unchanged as sets, so completeness survives, but the
    quotient groups generally become nontrivial."""
    n = fan.dim
    T = [list(row) for row in random_unimodular(rng, n)]
    k = rng.randrange(n)
    T[k] = [2 * x for x in T[k]]
    rays = [primitive_vector(mat_vec(T, r)) for r in fan.rays]
    return MultiFan(n, rays, dict(fan.weights))


def box_point_estimate(poly):
    lows, highs = support_box(poly)
    total = 1
    for lo, hi in zip(lows, highs):
        total *= int(hi - lo) + 1
    return total


def random_lattice_polytope(rng, n, max_box=4000, singular=None):
    """A lattice multi-polytope on a random complete fan with primitive
    rays; supports are random integers scaled by the lcm of all vertex
    denominators so that every vertex is a lattice point."""
    for _ in range(64):
        if n == 1:
            fan = MultiFan(1, [(1,), (-1,)], [({1}, 1, 0), ({2}, 1, 0)])
        elif n == 2:
            fan = random_complete_fan_2d(rng, d=rng.randint(3, 5))
        else:
            fan = random_complete_fan_3d(rng, subdivide=False)
            if singular:
                fan = _singular_shear(rng, fan)
        c = [rng.randint(-2, 3) for _ in range(fan.nrays)]
        poly = MultiPolytope(fan, c)
        m = 1
        for I in fan.top:
            for x in poly.vertex(I):
                m = math.lcm(m, Fraction(x).denominator)
        poly = MultiPolytope(fan, [m * ci for ci in c])
        if box_point_estimate(poly) <= max_box:
            return poly
    raise RuntimeError("no small enough lattice instance found")


def random_offwall_point(rng, poly, tries=256):
    """A rational point in the support box avoiding every hyperplane."""
    lows, highs = support_box(poly)
    q = 64
    for _ in range(tries):
        u = tuple(Fraction(rng.randint(math.ceil(lo * q), math.floor(hi * q)), q)
                  for lo, hi in zip(lows, highs))
        if all(b != 0 for b in poly.gaps(u)):
            return u
    raise RuntimeError("no off-wall point found")
