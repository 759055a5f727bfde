"""Lattice-point counting and Ehrhart polynomials of multi-polytopes.

The count of a lattice multi-polytope is the sum of the outward-shifted
Duistermaat-Heckman function over the lattice, the interior count the sum
of the inward-shifted one.  Dilation by integers makes the count a
polynomial of degree at most n whose constant term is the degree of the
fan and whose leading coefficient is the volume; reciprocity relates the
interior counts to the polynomial at negative arguments.

The same data is checked against a character identity: a localized sum of
rational functions over the top cones, with roots of unity from the
quotient groups N/N_I, equals the generating sum of DH values on the
lattice as a function of one complex variable.
"""

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as _cartesian

from .fan import (
    GenericityError,
    NotComplete,
    degree,
    ensure_complete,
)
from .linalg import SingularMatrix, character, pairing, solve
from .polytope import (
    SHIFT_MINUS,
    SHIFT_PLUS,
    MultiPolytope,
    dh_eval_framed,
    dh_frames,
    ensure_lattice,
)

_DEFAULT_SEED = 0x5EED


def support_box(poly, pad=1):
    """An axis-aligned rational box containing the support of DH and of its
    shifted variants: the bounding box of all vertices of the hyperplane
    arrangement (any n independent hyperplanes), padded."""
    fan = poly.fan
    n = fan.dim
    points = []
    for S in combinations(range(1, fan.nrays + 1), n):
        rows = tuple(fan.ray(i) for i in S)
        rhs = tuple(poly.c(i) for i in S)
        try:
            points.append(solve(rows, rhs))
        except SingularMatrix:
            continue
    if not points:
        raise NotComplete("no vertex at all; the fan cannot be complete")
    lows = tuple(min(p[k] for p in points) - pad for k in range(n))
    highs = tuple(max(p[k] for p in points) + pad for k in range(n))
    return lows, highs


def _box_lattice_points(lows, highs):
    ranges = [range(math.ceil(lo), math.floor(hi) + 1)
              for lo, hi in zip(lows, highs)]
    return _cartesian(*ranges)


def lattice_dh_values(poly, shift, rng=None):
    """All nonzero DH values of the shifted polytope on the lattice, as a
    mapping {lattice point: value}.  One generic direction is drawn and its
    per-cone sign frames are reused for every point."""
    ensure_complete(poly.fan)
    ensure_lattice(poly)
    frames = dh_frames(poly, rng=rng)
    out = {}
    for u in _box_lattice_points(*support_box(poly)):
        val = dh_eval_framed(poly, frames, u, shift)
        if val:
            out[u] = val
    return out


def count(poly, rng=None):
    """Number of lattice points, counted by the outward-shifted DH values."""
    return sum(lattice_dh_values(poly, SHIFT_PLUS, rng).values())


def count_interior(poly, rng=None):
    """Interior lattice-point count, via the inward-shifted DH values."""
    return sum(lattice_dh_values(poly, SHIFT_MINUS, rng).values())


def dilate(poly, nu):
    """The multi-polytope with every support number scaled by the integer nu."""
    return MultiPolytope(poly.fan, tuple(int(nu) * c for c in poly.support))


@dataclass(frozen=True)
class EhrhartPoly:
    """Coefficients (constant first) of the counting polynomial."""
    coefficients: tuple

    def __call__(self, nu):
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * nu + c
        return acc

    @property
    def constant(self):
        return self.coefficients[0]

    @property
    def leading(self):
        return self.coefficients[-1]


def _interpolate(points):
    """Exact Lagrange interpolation through (x, y) pairs, coefficients
    constant-first."""
    m = len(points)
    coeffs = [Fraction(0)] * m
    for xj, yj in points:
        basis = [Fraction(1)]
        denom = Fraction(1)
        for xk, _ in points:
            if xk == xj:
                continue
            denom *= xj - xk
            # multiply the running polynomial by (x - xk)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for p, c in enumerate(basis):
                nxt[p] -= c * xk
                nxt[p + 1] += c
            basis = nxt
        scale = Fraction(yj) / denom
        for p, c in enumerate(basis):
            coeffs[p] += scale * c
    return tuple(coeffs)


def ehrhart_polynomial(poly, rng=None):
    """Interpolate the counts of the dilates nu = 0..n and verify:
    the polynomial predicts the counts at n+1 and n+2 (degree bound),
    its constant term is the fan degree, and its leading coefficient is the
    volume."""
    n = poly.dim
    samples = [(nu, count(dilate(poly, nu), rng)) for nu in range(n + 1)]
    coeffs = _interpolate(samples)
    ehr = EhrhartPoly(coefficients=coeffs)
    for nu in (n + 1, n + 2):
        predicted = ehr(nu)
        actual = count(dilate(poly, nu), rng)
        if predicted != actual:
            raise AssertionError(
                f"degree-{n} bound violated: predicted {predicted} vs counted "
                f"{actual} at dilation {nu}")
    deg = degree(poly.fan)
    if ehr.constant != deg:
        raise AssertionError(f"constant term {ehr.constant} != degree {deg}")
    from .cohomology import volume
    vol = volume(poly, rng=rng)
    if ehr.leading != vol:
        raise AssertionError(f"leading coefficient {ehr.leading} != volume {vol}")
    return ehr


def reciprocity_check(poly, rng=None):
    """Interior counts of dilates against the polynomial at negated
    arguments: #(nu P interior) = (-1)^n #(-nu P) for nu = 1..n+1."""
    n = poly.dim
    ehr = ehrhart_polynomial(poly, rng)
    for nu in range(1, n + 2):
        interior = count_interior(dilate(poly, nu), rng)
        if interior != (-1) ** n * ehr(-nu):
            return False
    return True


# ---------------------------------------------------------------------------
# character identity


def _admissible_direction(poly, rng):
    """An integer vector v with every <u_i^I, v> a nonzero integer: a small
    generic vector scaled by the least common multiple of the quotient
    orders, which clears all dual denominators."""
    fan = poly.fan
    m = 1
    for I in fan.top:
        m = math.lcm(m, fan.quotient(I).order)
    v0 = _small_generic_vector(fan, rng)
    return tuple(m * x for x in v0)


def _small_generic_vector(fan, rng, tries=256):
    from .fan import is_generic
    bound = 3
    for attempt in range(tries):
        v = tuple(rng.randint(-bound, bound) for _ in range(fan.dim))
        try:
            if is_generic(fan, v):
                return v
        except SingularMatrix:
            pass
        if attempt % 32 == 31:
            bound += 1
    raise GenericityError("no small generic vector found")


def character_series_eval(poly, v, z, dh_cache=None, rng=None):
    """Both sides of the localization identity at a complex sample z.

    Left side: sum over top cones I of w(I) z^<u_I, v> / |N/N_I| times the
    character-averaged product 1 / prod_i (1 - chi z^(-<u_i^I, v>)).
    Right side: sum over lattice points of DH_plus(u) z^<u, v>.

    Requires every <u_i^I, v> to be a nonzero integer and |z| different
    from 0 and 1 (which keeps z clear of all poles).
    """
    fan = poly.fan
    ensure_lattice(poly)
    az = abs(z)
    if az == 0 or az == 1:
        raise ValueError("|z| must differ from 0 and 1")
    exponents = {}
    for I in fan.top:
        dual = fan.dual_basis(I)
        for i, u in dual.items():
            m = pairing(u, v)
            if m == 0 or Fraction(m).denominator != 1:
                raise ValueError(
                    f"<u_{i}^{sorted(I)}, v> = {m} is not a nonzero integer")
            exponents[(I, i)] = int(m)
    lhs = 0j
    for I in fan.top:
        quot = fan.quotient(I)
        u_I = poly.vertex(I)
        exp_uI = pairing(u_I, v)
        term = 0j
        for g in quot.representatives:
            prod = 1 + 0j
            for i in sorted(I):
                chi = character(fan.dual_basis(I)[i], g).to_complex()
                prod *= 1 - chi * z ** (-exponents[(I, i)])
            term += 1 / prod
        lhs += fan.w(I) * z ** int(exp_uI) * term / quot.order
    if dh_cache is None:
        dh_cache = lattice_dh_values(poly, SHIFT_PLUS, rng)
    rhs = 0j
    for u, val in dh_cache.items():
        rhs += val * z ** int(pairing(u, v))
    return lhs, rhs


def character_identity_check(poly, trials=8, rng=None, tol=1e-9):
    """Run the localization identity at random admissible (v, z) pairs;
    True iff every trial agrees within the relative tolerance.

    A polytope whose fan is not complete fails outright: the lattice sum of
    its DH values is not even well defined (tampering with any single
    weight of a complete fan lands here).
    """
    from .fan import is_complete
    if not is_complete(poly.fan):
        return False
    rng = rng if rng is not None else random.Random(_DEFAULT_SEED)
    cache = lattice_dh_values(poly, SHIFT_PLUS, rng)
    for trial in range(trials):
        v = _admissible_direction(poly, rng)
        radius = rng.uniform(1.02, 1.15) if trial % 2 == 0 else rng.uniform(0.87, 0.98)
        z = radius * cmath.exp(2j * math.pi * rng.random())
        lhs, rhs = character_series_eval(poly, v, z, dh_cache=cache)
        scale = max(1.0, abs(lhs), abs(rhs))
        if abs(lhs - rhs) > tol * scale:
            return False
    return True
