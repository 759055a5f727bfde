"""Acceptance suite: one test per criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.  Every
tolerance is pinned here; exact means exact (integer/rational equality).
"""

import itertools
import math
import random
import time
from fractions import Fraction

from multifan import (
    MultiFan,
    MultiPolytope,
    character_identity_check,
    count,
    count_interior,
    decompose_star,
    degree,
    dh_eval,
    e_vector,
    ehrhart_polynomial,
    example,
    h_vector,
    is_complete,
    is_precomplete,
    kp_count,
    minimal_normalize,
    project,
    random_generic_vector,
    reciprocity_check,
    signature,
    todd_count,
    ty_genus,
    volume,
    wn_eval,
)
from multifan.ehrhart import support_box
from multifan.linalg import solve
from conftest import (
    random_complete_fan,
    random_lattice_polytope,
    random_offwall_point,
)


def _report(k, message, started, budget):
    elapsed = time.perf_counter() - started
    print(f"criterion {k}: PASS ({message}; {elapsed:.2f}s < {budget}s)")
    assert elapsed < budget


def test_criterion_01_star_fan():
    t0 = time.perf_counter()
    star = example("star")
    assert degree(star) == 2
    assert is_complete(star)
    assert star.is_nonsingular()
    _report(1, "star fan: degree 2, complete, non-singular", t0, 1)


def test_criterion_02_rotation_fans():
    t0 = time.perf_counter()

    def rotation(rays):
        total = 0.0
        for i in range(len(rays)):
            a, b = rays[i], rays[(i + 1) % len(rays)]
            total += math.atan2(a[0] * b[1] - a[1] * b[0],
                                a[0] * b[0] + a[1] * b[1])
        return round(total / (2 * math.pi))

    folded = example("folded")
    assert degree(folded) == 1 and is_complete(folded)

    def cyclic_fan(rays):
        cones = []
        for i in range(len(rays)):
            j = (i + 1) % len(rays)
            dt = rays[i][0] * rays[j][1] - rays[i][1] * rays[j][0]
            cones.append(({i + 1, j + 1}, 1, 0) if dt > 0
                         else ({i + 1, j + 1}, 0, 1))
        return MultiFan(2, rays, cones)

    instances = [
        [(1, 0), (0, 1), (-1, 0), (0, -1)] * 2,     # winds twice
        [(1, 0), (0, 1), (1, 0), (0, 1)],           # net rotation zero
        [(1, 0), (0, -1), (-1, 0), (0, 1)],         # clockwise circuit
    ]
    degrees = []
    for rays in instances:
        fan = cyclic_fan(rays)
        assert is_complete(fan)
        assert degree(fan) == rotation(rays)
        degrees.append(degree(fan))
    assert degrees == [2, 0, -1]
    _report(2, f"folded fan degree 1; rotation degrees {degrees}", t0, 1)


def test_criterion_03_precomplete_not_complete():
    t0 = time.perf_counter()
    ex24 = example("ex24")
    assert [ex24.w(I) for I in ex24.top] == [2, 1, 1, -1]
    ok, deg = is_precomplete(ex24)
    assert ok and deg == 1
    assert not is_complete(ex24)
    assert is_precomplete(project(ex24, {1}).fan) == (False, None)
    assert is_precomplete(project(ex24, {2}).fan) == (False, None)
    assert is_precomplete(project(ex24, {3}).fan) == (True, 1)
    _report(3, "overlap fan: precomplete degree 1, not complete, "
               "projections 1,2 fail / 3 passes", t0, 1)


def test_criterion_04_star_dh_profile():
    t0 = time.perf_counter()
    star = example("star-polytope")
    lines = {i: (star.fan.ray(i), star.c(i)) for i in range(1, 6)}

    def cross(i, j):
        return solve((lines[i][0], lines[j][0]), (lines[i][1], lines[j][1]))

    # spike at tip (i,j): the two pentagon corners lie on the base line k
    spikes = [({1, 2}, 4), ({2, 3}, 5), ({3, 4}, 1), ({4, 5}, 2), ({1, 5}, 3)]
    probes = [((0, 0), 2)]
    for (tip, base) in spikes:
        i, j = sorted(tip)
        tip_pt = star.vertex(tip)
        c1, c2 = cross(i, base), cross(j, base)
        centroid = tuple((a + b + c) / 3 for a, b, c in zip(tip_pt, c1, c2))
        probes.append((centroid, 1))
    probes += [((9, 9), 0), ((-9, 1), 0), ((0, -9), 0), ((9, -9), 0)]
    assert len(probes) == 10
    for u, expected in probes:
        assert all(b != 0 for b in star.gaps(u))
        assert dh_eval(star, u) == expected
    _report(4, "star DH: 2 center, 1 on five spikes, 0 outside (10 probes)", t0, 1)


def test_criterion_05_dh_equals_wn():
    t0 = time.perf_counter()
    rng = random.Random(101)
    # 20 randomized complete instances, 10 off-wall points each
    checked = 0
    for k in range(20):
        n = (1, 2, 3)[k % 3]
        fan = random_complete_fan(rng, n=n)
        assert fan.nrays <= 8
        support = [Fraction(rng.randint(-5, 5), rng.choice((1, 2)))
                   for _ in range(fan.nrays)]
        poly = MultiPolytope(fan, support)
        for _ in range(10):
            u = random_offwall_point(rng, poly)
            assert dh_eval(poly, u) == wn_eval(poly, u)
            checked += 1
    assert checked == 200
    # both shifts at every lattice point of the support box
    shifted = 0
    for n in (1, 2, 3):
        poly = random_lattice_polytope(rng, n, max_box=350)
        lows, highs = support_box(poly)
        for u in itertools.product(*[range(math.ceil(lo), math.floor(hi) + 1)
                                     for lo, hi in zip(lows, highs)]):
            for shift in ("plus", "minus"):
                assert dh_eval(poly, u, shift) == wn_eval(poly, u, shift)
                shifted += 1
    _report(5, f"DH = WN at {checked} off-wall points over 20 instances "
               f"and {shifted} shifted lattice evaluations", t0, 60)


def test_criterion_06_h_e_identities():
    t0 = time.perf_counter()
    rng = random.Random(103)
    for k in range(12):
        fan = random_complete_fan(rng, n=(1, 2, 3)[k % 3])
        n = fan.dim
        h = h_vector(fan, rng=rng)
        for _ in range(5):
            assert h_vector(fan, random_generic_vector(fan, rng)) == h
        assert h == tuple(reversed(h))
        e = e_vector(fan)
        lhs = [0] * (n + 1)
        for q in range(n + 1):
            for m in range(q + 1):
                lhs[m] += h[q] * math.comb(q, m)
        assert lhs == [e[n - m] for m in range(n + 1)]
    _report(6, "h/e identity, v-independence and symmetry on 12 instances", t0, 30)


def test_criterion_07_ehrhart_fixtures():
    t0 = time.perf_counter()
    expected = {
        "p2-triangle": ((1, Fraction(9, 2), Fraction(9, 2)), 1),
        "p112": ((1, 4, 4), 1),
        "square": ((1, 2, 1), 0),
    }
    for name, (coeffs, interior) in expected.items():
        poly = example(name)
        ehr = ehrhart_polynomial(poly)   # also verifies degree bound
        assert ehr.coefficients == coeffs
        assert count_interior(poly) == interior
        assert ehr.constant == degree(poly.fan) == 1
        assert ehr.leading == volume(poly)
        assert reciprocity_check(poly)
    _report(7, "Ehrhart polynomials, constants, leading terms, reciprocity", t0, 10)


def test_criterion_08_three_way_counts():
    t0 = time.perf_counter()
    rng = random.Random(107)
    fixtures = [example(n) for n in
                ("p2-triangle", "p112", "square", "cube", "segment",
                 "star-polytope")]
    instances = list(fixtures)
    for k in range(20):
        n = (1, 2, 2, 3)[k % 4]
        instances.append(random_lattice_polytope(
            rng, n, max_box=500 if n < 3 else 800,
            singular=(n == 3 and k % 8 == 3)))
    singular = nonsingular = 0
    for poly in instances:
        c = count(poly)
        if poly.fan.is_nonsingular():
            # exact path: zero tolerance
            assert todd_count(poly, tol_pole=0.0, tol_int=0.0) == c
            nonsingular += 1
        else:
            assert todd_count(poly, tol_pole=1e-9, tol_int=1e-6) == c
            singular += 1
        assert kp_count(poly, tol_int=1e-6) == c
    assert singular >= 3
    _report(8, f"count = todd = kp on {len(instances)} instances "
               f"({singular} singular)", t0, 120)


def test_criterion_09_character_identity():
    t0 = time.perf_counter()
    rng = random.Random(109)
    polys = [example(n) for n in
             ("p2-triangle", "p112", "square", "cube", "star-polytope")]
    for _ in range(3):
        polys.append(random_lattice_polytope(rng, 2, max_box=500))
    for poly in polys:
        assert character_identity_check(poly, trials=8, tol=1e-9)
    # corrupted weight: the identity must fail
    fan = example("p2")
    broken = dict(fan.weights)
    wp, wm = broken[frozenset({1, 2})]
    broken[frozenset({1, 2})] = (wp + 1, wm)
    bad = MultiPolytope(MultiFan(2, fan.rays, broken), (1, 1, 1))
    assert not character_identity_check(bad, trials=8, tol=1e-9)
    _report(9, f"localization identity on {len(polys)} instances at 1e-9; "
               "corrupted weight rejected", t0, 60)


def test_criterion_10_star_decomposition():
    t0 = time.perf_counter()
    rng = random.Random(113)
    fans = [example("star")]
    for k in range(10):
        fans.append(random_complete_fan(rng, n=(2, 3)[k % 2]))
    pieces_total = 0
    for fan in fans:
        ell = random_generic_vector(fan, rng)
        pieces = decompose_star(fan, ell)   # cancellation asserted inside
        assert len(pieces) == len(fan.top)
        for piece in pieces:
            assert is_complete(piece)
            norm = minimal_normalize(piece)
            ok, deg = is_precomplete(norm)
            wp, wm = next(iter(norm.weights.values()))
            assert ok and deg == wp - wm   # cones tile with constant pair
        pieces_total += len(pieces)
    _report(10, f"star decomposition of {len(fans)} fans into "
                f"{pieces_total} minimal complete pieces", t0, 30)


def test_criterion_11_genus_and_signature():
    t0 = time.perf_counter()
    p2, star = example("p2"), example("star")
    assert ty_genus(p2) == (1, -1, 1)
    assert signature(p2) == 1
    assert ty_genus(star) == (2, -1, 2)
    assert signature(star) == 3
    rng = random.Random(127)
    for _ in range(6):
        fan = random_complete_fan(rng)
        ty_genus(fan, rng=rng)    # asserts the e-vector expansion agrees
        signature(fan, rng=rng)   # asserts T_1 equals the e-vector formula
    _report(11, "genus 1-y+y^2 / 2-y+2y^2, signatures 1 and 3, "
                "both routes agree on randomized instances", t0, 5)


def test_criterion_12_brute_force_oracle():
    t0 = time.perf_counter()
    for name in ("square", "p2-triangle", "p112", "segment", "cube"):
        poly = example(name)
        fan = poly.fan
        lows, highs = support_box(poly, pad=2)
        brute = brute_interior = 0
        for u in itertools.product(*[range(math.ceil(lo), math.floor(hi) + 1)
                                     for lo, hi in zip(lows, highs)]):
            vals = [sum(a * b for a, b in zip(u, fan.ray(i))) - poly.c(i)
                    for i in range(1, fan.nrays + 1)]
            brute += all(v <= 0 for v in vals)
            brute_interior += all(v < 0 for v in vals)
        assert count(poly) == brute
        assert count_interior(poly) == brute_interior
    _report(12, "counts equal raw half-space enumeration on all convex "
                "fixtures", t0, 10)
