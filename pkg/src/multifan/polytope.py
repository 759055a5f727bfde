"""Multi-polytopes and their locally constant integer functions.

A multi-polytope is a complete multi-fan together with one affine
hyperplane per ray, the hyperplane being perpendicular to the ray.  Two
functions on the complement of the hyperplanes are computed here:

* the Duistermaat-Heckman function, a signed sum of dual-cone indicator
  functions over the top cones, and
* the winding number, evaluated by shooting a generic ray and recursing
  into the codimension-one polytopes it crosses.

Both admit evaluation just off the walls: the tags "plus" / "minus" move
every hyperplane outward / inward by an infinitesimal, which is how lattice
points sitting on a wall are counted consistently.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .fan import (
    GenericityError,
    InvalidFan,
    ensure_complete,
    is_generic,
    project,
    random_generic_vector,
    validate,
)
from .linalg import pairing, vec_scale, vec_sub

SHIFT_EXACT = "exact"
SHIFT_PLUS = "plus"
SHIFT_MINUS = "minus"
_SHIFTS = (SHIFT_EXACT, SHIFT_PLUS, SHIFT_MINUS)

_DEFAULT_SEED = 0x5EED


class OnHyperplane(ValueError):
    """Exact evaluation was requested at a point lying on a wall."""


class MultiPolytope:
    """A complete multi-fan plus support numbers c_i, one per ray.

    The i-th hyperplane is {u : <u, v_i> = c_i}.  Completeness of the fan
    is a standing assumption of every evaluation; it is verified lazily (and
    cached on the fan) so that malformed files can still be loaded and
    reported on.
    """

    def __init__(self, fan, support):
        self.fan = fan
        self.support = tuple(Fraction(c) for c in support)
        if len(self.support) != fan.nrays:
            raise InvalidFan(
                f"{len(self.support)} support numbers for {fan.nrays} rays")
        self._vertices = {}
        self._projected = {}

    @property
    def dim(self):
        return self.fan.dim

    def c(self, i):
        return self.support[i - 1]

    def vertex(self, I):
        """The point F_I where the hyperplanes of a top cone meet:
        sum_i c_i u_i^I."""
        I = frozenset(I)
        if I not in self._vertices:
            if I not in self.fan.weights:
                raise InvalidFan(f"{sorted(I)} is not a top cone")
            dual = self.fan.dual_basis(I)
            n = self.fan.dim
            u = tuple(
                sum((self.c(i) * dual[i][k] for i in I), Fraction(0))
                for k in range(n))
            self._vertices[I] = u
        return self._vertices[I]

    def vertices(self):
        return {I: self.vertex(I) for I in self.fan.top}

    def gaps(self, u):
        """b_i = <u, v_i> - c_i for every label; zero means u is on wall i."""
        return tuple(pairing(u, self.fan.ray(i)) - self.c(i)
                     for i in range(1, self.fan.nrays + 1))

    def shifted(self, eps):
        """The polytope with every hyperplane pushed outward by eps
        (inward for negative eps)."""
        return MultiPolytope(self.fan, tuple(c + eps for c in self.support))

    def __repr__(self):
        return f"MultiPolytope(dim={self.dim}, rays={self.fan.nrays})"


def _check_shift(shift):
    if shift not in _SHIFTS:
        raise ValueError(f"shift must be one of {_SHIFTS}, got {shift!r}")


def dh_frames(poly, v=None, rng=None):
    """Per-cone sign data for a fixed generic direction, reusable across
    many evaluation points: (labels, sigma, (-1)^mu w(I)) per top cone."""
    fan = poly.fan
    ensure_complete(fan)
    if v is None:
        v = random_generic_vector(fan, rng)
    elif not is_generic(fan, v):
        raise GenericityError(f"{v} is not generic")
    frames = []
    for I in fan.top:
        labels = sorted(I)
        dual = fan.dual_basis(I)
        sigma = {i: (1 if pairing(dual[i], v) > 0 else -1) for i in labels}
        mu = sum(1 for s in sigma.values() if s > 0)
        frames.append((labels, sigma, (-1) ** mu * fan.w(I)))
    return frames


def dh_eval_framed(poly, frames, u, shift=SHIFT_EXACT):
    """DH value at u given precomputed frames (see dh_frames)."""
    gaps = poly.gaps(u)
    total = 0
    for labels, sigma, signed_w in frames:
        member = True
        for i in labels:
            b = gaps[i - 1]
            if b != 0:
                eff = 1 if b > 0 else -1
            elif shift == SHIFT_PLUS:
                eff = -1
            elif shift == SHIFT_MINUS:
                eff = 1
            else:
                raise OnHyperplane(f"point lies on hyperplane {i}")
            if eff != sigma[i]:
                member = False
                break
        if member:
            total += signed_w
    return total


def dh_eval(poly, u, shift=SHIFT_EXACT, v=None, rng=None):
    """Duistermaat-Heckman value at u: sum over top cones I of
    (-1)^I w(I) [u in C*(I)^+], decided exactly.

    Membership of u in the shifted dual cone of I holds iff for every i in I
    the sign of b_i = <u, v_i> - c_i matches the sign of <u_i^I, v>, where v
    is any generic direction (the value does not depend on it).
    """
    _check_shift(shift)
    u = tuple(Fraction(x) for x in u)
    return dh_eval_framed(poly, dh_frames(poly, v, rng), u, shift)


def project_polytope(poly, i):
    """The codimension-one multi-polytope living on wall i.

    The fan projects along ray i; hyperplane j moves to the quotient with
    support c_j - <f_i, v_j>, where f_i = (c_i/|v_i|^2) v_i is the chosen
    base point of wall i.  Returns the polytope; the quotient map and base
    point are cached alongside for internal use.
    """
    if poly.dim < 2:
        raise InvalidFan("cannot project a 1-dimensional multi-polytope")
    if i in poly._projected:
        return poly._projected[i][0]
    fan = poly.fan
    v_i = fan.ray(i)
    f_i = vec_scale(poly.c(i) / Fraction(pairing(v_i, v_i)), v_i)
    pr = project(fan, {i})
    support = []
    for new in range(1, pr.fan.nrays + 1):
        j = pr.old_label(new)
        support.append(poly.c(j) - pairing(f_i, fan.ray(j)))
    sub = MultiPolytope(pr.fan, support)
    poly._projected[i] = (sub, pr.qmap, f_i)
    return sub


def _wall_coordinates(poly, i, point):
    """Quotient coordinates of a point of wall i, relative to the base point."""
    project_polytope(poly, i)
    _sub, qmap, f_i = poly._projected[i]
    return qmap.restrict_dual(vec_sub(point, f_i))


def _wn_exact(poly, u, rng, depth_tries=64):
    fan = poly.fan
    n = fan.dim
    gaps = poly.gaps(u)
    if any(b == 0 for b in gaps):
        raise OnHyperplane("winding number requested on a wall")
    if n == 1:
        # walls are the numbers c_i / v_i; a wall below u contributes
        # -w for an outward (positive) ray and +w for an inward one
        total = 0
        for i in range(1, fan.nrays + 1):
            (vi,) = fan.ray(i)
            if Fraction(poly.c(i), vi) < u[0]:
                total += -fan.w({i}) if vi > 0 else fan.w({i})
        return total

    rays = [fan.ray(i) for i in range(1, fan.nrays + 1)]
    bound = 10 * max(1, max(abs(x) for r in rays for x in r))
    for attempt in range(depth_tries):
        gamma = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(pairing(gamma, r) == 0 for r in rays):
            continue
        hits = []
        for i in range(1, fan.nrays + 1):
            t = -gaps[i - 1] / pairing(gamma, rays[i - 1])
            if t > 0:
                hits.append((i, t))
        # every hit point must avoid the other walls (coincident walls are
        # genuinely the same hyperplane and cannot be avoided; they are
        # handled label by label below)
        ok = True
        for i, t in hits:
            point = tuple(a + t * g for a, g in zip(u, gamma))
            for j in range(1, fan.nrays + 1):
                if j == i:
                    continue
                if pairing(point, rays[j - 1]) == poly.c(j) and not _same_wall(poly, i, j):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            if attempt % 16 == 15:
                bound *= 2
            continue
        total = 0
        for i, t in hits:
            point = tuple(a + t * g for a, g in zip(u, gamma))
            sub = project_polytope(poly, i)
            ubar = _wall_coordinates(poly, i, point)
            sgn = 1 if pairing(gamma, rays[i - 1]) > 0 else -1
            total += sgn * _wn_exact(sub, ubar, rng, depth_tries)
        return total
    raise GenericityError("no usable ray direction found for the winding number")


def _same_wall(poly, i, j):
    """True iff hyperplanes i and j coincide as point sets."""
    vi, vj = poly.fan.ray(i), poly.fan.ray(j)
    k = next(idx for idx, x in enumerate(vi) if x)
    if vj[k] == 0:
        return False
    lam = Fraction(vj[k], vi[k])
    return tuple(lam * x for x in vi) == tuple(Fraction(x) for x in vj) \
        and lam * poly.c(i) == poly.c(j)


def wn_eval(poly, u, shift=SHIFT_EXACT, rng=None):
    """Winding number of the boundary cycle around u, via ray shooting.

    In dimension one the walls below u are summed with the orientation sign
    of their rays.  In higher dimension a verified-generic ray from u picks
    up sign<gamma, v_i> times the winding number of the projected polytope
    at each wall crossing.  The plus / minus shifts evaluate the polytope
    with supports moved by a concrete epsilon below the least nonzero gap,
    which realizes the infinitesimal shift exactly.
    """
    _check_shift(shift)
    ensure_complete(poly.fan)
    rng = rng if rng is not None else random.Random(_DEFAULT_SEED)
    u = tuple(Fraction(x) for x in u)
    if shift != SHIFT_EXACT:
        gaps = [abs(b) for b in poly.gaps(u) if b != 0]
        eps = min(gaps) / 2 if gaps else Fraction(1, 2)
        poly = poly.shifted(eps if shift == SHIFT_PLUS else -eps)
    return _wn_exact(poly, u, rng)


@dataclass(frozen=True)
class WallCrossing:
    ok: bool
    lhs: int
    rhs: int
    wall_labels: tuple
    crossing_point: tuple


def wall_crossing_check(poly, u_a, u_b, wall, rng=None):
    """Verify the wall crossing identity across the hyperplane of label `wall`:
    DH(u_a) - DH(u_b) equals the signed sum of the projected DH values at the
    crossing point, over all labels whose hyperplane is that wall.

    Preconditions are enforced by exact intersection counting: the open
    segment (u_a, u_b) meets exactly the named wall, exactly once, and the
    endpoints are off every hyperplane.
    """
    fan = poly.fan
    ensure_complete(fan)
    u_a = tuple(Fraction(x) for x in u_a)
    u_b = tuple(Fraction(x) for x in u_b)
    if any(b == 0 for b in poly.gaps(u_a)) or any(b == 0 for b in poly.gaps(u_b)):
        raise OnHyperplane("segment endpoints must avoid all hyperplanes")
    delta = vec_sub(u_b, u_a)
    crossings = {}
    for j in range(1, fan.nrays + 1):
        denom = pairing(delta, fan.ray(j))
        if denom == 0:
            continue
        t = (poly.c(j) - pairing(u_a, fan.ray(j))) / denom
        if 0 < t < 1:
            crossings[j] = t
    wall_labels = tuple(sorted(j for j in range(1, fan.nrays + 1)
                               if _same_wall(poly, wall, j)))
    if sorted(crossings) != list(wall_labels):
        raise ValueError(
            f"segment crosses walls {sorted(crossings)}, expected exactly "
            f"{list(wall_labels)}")
    t_star = crossings[wall]
    mu = tuple(a + t_star * dx for a, dx in zip(u_a, delta))
    lhs = dh_eval(poly, u_a, rng=rng) - dh_eval(poly, u_b, rng=rng)
    rhs = 0
    for j in wall_labels:
        sgn = 1 if pairing(delta, fan.ray(j)) > 0 else -1
        if fan.dim == 1:
            rhs += sgn * fan.w({j})
        else:
            sub = project_polytope(poly, j)
            rhs += sgn * dh_eval(sub, _wall_coordinates(poly, j, mu), rng=rng)
    return WallCrossing(ok=(lhs == rhs), lhs=lhs, rhs=rhs,
                        wall_labels=wall_labels, crossing_point=mu)


def lattice_data(poly):
    """Primitivity of the rays and integrality of all vertices; the counting
    layer requires both.  Returns (ok, issues)."""
    issues = []
    rep = validate(poly.fan)
    if not rep.ok:
        issues.extend(rep.issues)
    for i, prim in enumerate(rep.primitive, start=1):
        if not prim:
            issues.append(f"ray {i} is not primitive")
    for I in poly.fan.top:
        u = poly.vertex(I)
        if any(x.denominator != 1 for x in u):
            issues.append(f"vertex of cone {sorted(I)} is not a lattice point: {u}")
    return (not issues, issues)


def ensure_lattice(poly):
    ok, issues = lattice_data(poly)
    if not ok:
        raise InvalidFan("not a lattice multi-polytope: " + "; ".join(issues))
