"""Multi-fans: finite labeled families of rational simplicial cones.

A multi-fan is a family of cones in Z^n indexed by an augmented simplicial
set on labels {1..d}, with a pair of nonnegative integer weights on every
top-dimensional cone.  Unlike an ordinary fan, cones may overlap and the
same cone may appear under several labels; the signed weight w = w+ - w-
measures covering multiplicity.

This module provides validation, genericity tests, the covering degree,
pre-completeness and completeness (decided exactly over one interior point
per chamber of the induced hyperplane arrangement), projections to quotient
lattices, the h- and e-vectors, the T_y-genus and signature, the boundary
cycle test, and the star decomposition into minimal multi-fans.
"""

import math
import random
from dataclasses import dataclass
from itertools import combinations

from .linalg import (
    DimensionMismatch,
    SingularMatrix,
    det,
    dot,
    dual_basis,
    nullspace,
    pairing,
    primitive_vector,
    quotient_group,
    quotient_projection,
    rank,
)

_DEFAULT_SEED = 0x5EED


class InvalidFan(ValueError):
    """The data does not satisfy the multi-fan axioms."""


class GenericityError(RuntimeError):
    """No generic vector was found within the retry budget."""


class NotComplete(ValueError):
    """An operation required a (pre-)complete multi-fan."""


def _closure(faces):
    out = set()
    stack = list(faces)
    while stack:
        f = stack.pop()
        if f in out:
            continue
        out.add(f)
        for i in f:
            stack.append(f - {i})
    return out


class MultiFan:
    """A multi-fan: rays, an augmented simplicial set of faces, and weights.

    Parameters
    ----------
    dim : ambient lattice rank n.
    rays : d nonzero integer vectors, one per label 1..d (1-based).
    cones : mapping {frozenset I -> (w_plus, w_minus)} over the
        top-dimensional faces, or an iterable of (labels, w_plus, w_minus).
    extra_faces : optional faces not contained in any top cone.

    The face set is the downward closure of the top cones, the extra faces
    and all singletons.  Geometric conditions (independent rays per face)
    are checked by :func:`validate`, not here, so that malformed input can
    be loaded and then reported on.
    """

    def __init__(self, dim, rays, cones, extra_faces=()):
        self.dim = int(dim)
        if self.dim < 1:
            raise InvalidFan("dimension must be at least 1")
        self.rays = tuple(tuple(int(x) for x in r) for r in rays)
        for r in self.rays:
            if len(r) != self.dim:
                raise InvalidFan(f"ray {r} does not have length {self.dim}")
            if all(x == 0 for x in r):
                raise InvalidFan("zero vector is not allowed as a ray")
        d = len(self.rays)
        if isinstance(cones, dict):
            items = cones.items()
        else:
            items = ((frozenset(s), (wp, wm)) for s, wp, wm in cones)
        weights = {}
        for s, (wp, wm) in items:
            I = frozenset(int(i) for i in s)
            if not all(1 <= i <= d for i in I):
                raise InvalidFan(f"cone {sorted(I)} references a missing ray label")
            if len(I) != self.dim:
                raise InvalidFan(f"cone {sorted(I)} is not top-dimensional")
            if I in weights:
                raise InvalidFan(f"cone {sorted(I)} listed twice")
            wp, wm = int(wp), int(wm)
            if wp < 0 or wm < 0:
                raise InvalidFan(f"negative weight on cone {sorted(I)}")
            if wp == 0 and wm == 0:
                raise InvalidFan(f"cone {sorted(I)} carries weight (0, 0)")
            weights[I] = (wp, wm)
        if not weights:
            raise InvalidFan("a multi-fan needs at least one top-dimensional cone")
        self.weights = weights
        self.top = tuple(sorted(weights, key=sorted))
        extras = [frozenset(int(i) for i in f) for f in extra_faces]
        for f in extras:
            if not all(1 <= i <= d for i in f):
                raise InvalidFan(f"face {sorted(f)} references a missing ray label")
            if len(f) > self.dim:
                raise InvalidFan(f"face {sorted(f)} exceeds the ambient dimension")
        singletons = [frozenset({i}) for i in range(1, d + 1)]
        self.faces = frozenset(_closure(list(weights) + extras + singletons + [frozenset()]))
        # lazy caches
        self._dual = {}
        self._quot = {}
        self._frames = {}
        self._chambers = None
        self._precomplete = None
        self._complete = None
        self._projections = {}

    # -- basic accessors ----------------------------------------------------

    @property
    def nrays(self):
        return len(self.rays)

    def ray(self, i):
        """Ray vector of label i (1-based)."""
        return self.rays[i - 1]

    def w(self, I):
        wp, wm = self.weights[frozenset(I)]
        return wp - wm

    def faces_of_dim(self, m):
        return sorted((f for f in self.faces if len(f) == m), key=sorted)

    def dual_basis(self, I):
        """Cached dual basis of the rays of a top face, ordered by label."""
        I = frozenset(I)
        if I not in self._dual:
            labels = sorted(I)
            duals = dual_basis(tuple(self.ray(i) for i in labels))
            self._dual[I] = dict(zip(labels, duals))
        return self._dual[I]

    def quotient(self, I):
        """Cached finite quotient N / N_I of a top face."""
        I = frozenset(I)
        if I not in self._quot:
            self._quot[I] = quotient_group(tuple(self.ray(i) for i in sorted(I)))
        return self._quot[I]

    def is_nonsingular(self):
        return all(self.quotient(I).order == 1 for I in self.top)

    def __repr__(self):
        return (f"MultiFan(dim={self.dim}, rays={len(self.rays)}, "
                f"top_cones={len(self.top)})")


@dataclass(frozen=True)
class ConeFrame:
    """Per-cone data relative to a generic direction v: the dual basis,
    the quotient group, and the signs <u_i^I, v>."""
    labels: tuple            # sorted labels of I
    dual: dict               # label -> dual covector
    signs: dict              # label -> +1 / -1
    mu: int                  # number of positive signs
    parity: int              # (-1)^mu

    @property
    def face(self):
        return frozenset(self.labels)


def cone_frame(fan, I, v):
    labels = tuple(sorted(I))
    dual = fan.dual_basis(I)
    signs = {}
    for i in labels:
        p = pairing(dual[i], v)
        if p == 0:
            raise GenericityError(f"direction {v} lies on a wall of cone {list(labels)}")
        signs[i] = 1 if p > 0 else -1
    mu = sum(1 for s in signs.values() if s > 0)
    return ConeFrame(labels=labels, dual=dual, signs=signs, mu=mu, parity=(-1) ** mu)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    ok: bool
    issues: list
    primitive: tuple   # per-ray primitivity flags
    all_primitive: bool

    def __bool__(self):
        return self.ok


def validate(fan):
    """Check the multi-fan axioms; structural problems are collected, not raised.

    Reports dependent rays inside a face (simpliciality failure) together
    with the offending face, and the primitivity of each ray (not required
    here, but the lattice-point counting layer insists on it).
    """
    issues = []
    for f in sorted(fan.faces, key=sorted):
        if not f:
            continue
        rows = tuple(fan.ray(i) for i in sorted(f))
        if rank(rows) != len(f):
            issues.append(f"face {sorted(f)}: rays are linearly dependent")
    if not fan.top:
        issues.append("no top-dimensional cones")
    primitive = tuple(math.gcd(*(abs(x) for x in r)) == 1 for r in fan.rays)
    return ValidationReport(ok=not issues, issues=issues, primitive=primitive,
                            all_primitive=all(primitive))


# ---------------------------------------------------------------------------
# genericity


def is_generic(fan, v):
    """True iff v avoids every linear span of a face of dimension < n.

    Checks all proper faces, and additionally that every dual pairing
    <u_i^I, v> over the top cones is nonzero.
    """
    if len(v) != fan.dim:
        raise DimensionMismatch("direction has the wrong length")
    if all(x == 0 for x in v):
        return False
    n = fan.dim
    for f in fan.faces:
        if not 1 <= len(f) <= n - 1:
            continue
        rows = tuple(fan.ray(i) for i in sorted(f))
        if rank(rows + (v,)) == rank(rows):
            return False
    for I in fan.top:
        dual = fan.dual_basis(I)
        if any(pairing(u, v) == 0 for u in dual.values()):
            return False
    return True


def random_generic_vector(fan, rng=None, tries=64):
    """Draw integer vectors until one passes is_generic; fail loudly after
    the retry budget."""
    rng = rng if rng is not None else random.Random(_DEFAULT_SEED)
    bound = 10 * max(1, max(abs(x) for r in fan.rays for x in r))
    for attempt in range(tries):
        v = tuple(rng.randint(-bound, bound) for _ in range(fan.dim))
        try:
            if is_generic(fan, v):
                return v
        except SingularMatrix:
            pass
        if attempt % 16 == 15:
            bound *= 2
    raise GenericityError(f"no generic vector found in {tries} draws")


# ---------------------------------------------------------------------------
# covering degree and chamber enumeration


def _degree_at(fan, v):
    """Sum of w(I) over the open cones containing v.  Assumes v is off all
    cone walls (every dual pairing nonzero)."""
    total = 0
    for I in fan.top:
        dual = fan.dual_basis(I)
        if all(pairing(u, v) > 0 for u in dual.values()):
            total += fan.w(I)
    return total


def local_degree(fan, v):
    """Covering number d_v = sum of w(I) over cones whose interior holds v."""
    if not is_generic(fan, v):
        raise GenericityError(f"{v} is not generic for this multi-fan")
    return _degree_at(fan, v)


def _facet_normals(fan):
    """Primitive normals of the arrangement: spans of all (n-1)-subsets of
    top cones and of all (n-1)-dimensional faces."""
    n = fan.dim
    walls = set()
    for I in fan.top:
        for sub in combinations(sorted(I), n - 1):
            walls.add(frozenset(sub))
    for f in fan.faces:
        if len(f) == n - 1:
            walls.add(f)
    normals = set()
    for wall in walls:
        rows = tuple(fan.ray(i) for i in sorted(wall))
        ker = nullspace(rows, width=n)
        if len(ker) != 1:
            continue  # degenerate face; reported by validate
        normals.add(primitive_vector(ker[0], canonical_sign=True))
    return tuple(sorted(normals))


def _chamber_points(normals, n):
    """One exact interior point per full-dimensional chamber of the central
    arrangement with the given (primitive, sign-canonical) normals.

    Recursive: candidate extreme lines come from (n-1)-subsets of normals;
    chambers around each line are enumerated in the quotient by the line and
    lifted with a dominant multiple of the line direction.  Non-essential
    arrangements are first reduced modulo their common lineality space.
    """
    if n == 0:
        return [()]
    if not normals:
        return [(1,) + (0,) * (n - 1)]
    r = rank(normals)
    if r < n:
        lineality = [primitive_vector(kv) for kv in nullspace(normals, width=n)]
        qm = quotient_projection(lineality)
        qnormals = sorted({primitive_vector(qm.restrict_dual(e), canonical_sign=True)
                           for e in normals})
        return [qm.lift(p) for p in _chamber_points(tuple(qnormals), r)]
    if n == 1:
        return [(1,), (-1,)]

    points = {}
    lines = set()
    for T in combinations(normals, n - 1):
        ker = nullspace(T, width=n)
        if len(ker) != 1:
            continue
        lines.add(primitive_vector(ker[0], canonical_sign=True))
    for g in sorted(lines):
        for u in (g, tuple(-x for x in g)):
            localized = [e for e in normals if dot(e, u) == 0]
            rest = [e for e in normals if dot(e, u) != 0]
            qm = quotient_projection([u])
            qnormals = sorted({primitive_vector(qm.restrict_dual(e), canonical_sign=True)
                               for e in localized})
            for pbar in _chamber_points(tuple(qnormals), n - 1):
                x = qm.lift(pbar)
                scale = 1
                for e in rest:
                    scale = max(scale, abs(dot(e, x)) // abs(dot(e, u)) + 1)
                p = tuple(scale * a + b for a, b in zip(u, x))
                sv = tuple(1 if dot(e, p) > 0 else -1 if dot(e, p) < 0 else 0
                           for e in normals)
                assert 0 not in sv
                points.setdefault(sv, p)
    return list(points.values())


def chamber_points(fan):
    """Interior points, one per chamber of the wall arrangement of the fan."""
    if fan._chambers is None:
        fan._chambers = tuple(_chamber_points(_facet_normals(fan), fan.dim))
    return fan._chambers


def is_precomplete(fan):
    """Decide whether d_v is the same over all generic directions.

    Returns (True, degree) or (False, None).  Exact: d_v is constant on
    each chamber of the wall arrangement, so one interior point per chamber
    decides the question.
    """
    if fan._precomplete is None:
        degrees = {_degree_at(fan, p) for p in chamber_points(fan)}
        if len(degrees) == 1:
            fan._precomplete = (True, degrees.pop())
        else:
            fan._precomplete = (False, None)
    return fan._precomplete


def degree(fan):
    ok, deg = is_precomplete(fan)
    if not ok:
        raise NotComplete("multi-fan is not pre-complete; its degree is undefined")
    return deg


# ---------------------------------------------------------------------------
# projections


@dataclass(frozen=True)
class Projection:
    """A projected multi-fan plus the bookkeeping needed to pull data back:
    the quotient map of lattices and the old label of each new label."""
    fan: "MultiFan"
    qmap: object
    labels: tuple  # labels[new - 1] == old label

    def old_label(self, new):
        return self.labels[new - 1]


def project(fan, K):
    """Projected multi-fan with respect to a face K: faces containing K are
    pushed to the quotient of the lattice by the saturated span of K's rays,
    weights restrict from the parent."""
    K = frozenset(K)
    if K not in fan.faces:
        raise InvalidFan(f"{sorted(K)} is not a face of the multi-fan")
    if not K:
        ident = quotient_projection([], ambient_dim=fan.dim)
        return Projection(fan=fan, qmap=ident,
                          labels=tuple(range(1, fan.nrays + 1)))
    if len(K) == fan.dim:
        raise InvalidFan("projection along a top face has dimension 0")
    key = K
    if key in fan._projections:
        return fan._projections[key]
    qm = quotient_projection([fan.ray(i) for i in sorted(K)])
    old_labels = sorted(j for j in range(1, fan.nrays + 1)
                        if j not in K and (K | {j}) in fan.faces)
    relabel = {old: new for new, old in enumerate(old_labels, start=1)}
    new_rays = []
    for old in old_labels:
        img = qm.apply(fan.ray(old))
        if all(x == 0 for x in img):
            raise InvalidFan(
                f"ray {old} projects to zero along {sorted(K)}; face "
                f"{sorted(K | {old})} is not simplicial")
        new_rays.append(img)
    cones = {}
    for J in fan.top:
        if K <= J:
            cones[frozenset(relabel[j] for j in J - K)] = fan.weights[J]
    extras = [frozenset(relabel[j] for j in f - K)
              for f in fan.faces if K <= f and f != K]
    if not cones:
        raise NotComplete(
            f"no top cone contains {sorted(K)}; the projected multi-fan is empty")
    proj = Projection(
        fan=MultiFan(fan.dim - len(K), new_rays, cones, extra_faces=extras),
        qmap=qm,
        labels=tuple(old_labels))
    fan._projections[key] = proj
    return proj


def _projection_balanced(fan, J):
    """Balance test for the 1-dimensional projection along J in Sigma^(n-1):
    the weights of positively and negatively projected rays must agree."""
    qm = quotient_projection([fan.ray(i) for i in sorted(J)],
                             ambient_dim=fan.dim)
    pos = neg = 0
    found = False
    for I in fan.top:
        if J <= I:
            found = True
            (j,) = I - J
            (img,) = qm.apply(fan.ray(j))
            if img > 0:
                pos += fan.w(I)
            elif img < 0:
                neg += fan.w(I)
            else:
                raise InvalidFan(f"face {sorted(I)} is not simplicial")
    return found and pos == neg


def is_complete(fan):
    """Pre-complete, and every projection along an (n-1)-face is a balanced
    1-dimensional multi-fan.  (Checking codimension one suffices; lower faces
    inherit pre-completeness from these.)"""
    if fan._complete is None:
        ok, _ = is_precomplete(fan)
        if ok:
            for J in fan.faces_of_dim(fan.dim - 1):
                if not _projection_balanced(fan, J):
                    ok = False
                    break
        fan._complete = ok
    return fan._complete


def ensure_complete(fan):
    if not is_complete(fan):
        raise NotComplete("operation requires a complete multi-fan")


# ---------------------------------------------------------------------------
# boundary cycle


def boundary_cycle_check(fan):
    """Form the weighted chain of oriented top simplices and apply the
    simplicial boundary; True iff the chain is a cycle.  For a simplicial
    multi-fan this is equivalent to completeness."""
    coeffs = {}
    for I in fan.top:
        labels = sorted(I)
        d = det(tuple(fan.ray(i) for i in labels))
        if d == 0:
            raise InvalidFan(f"cone {labels} is not simplicial")
        orient = 1 if d > 0 else -1
        for k in range(len(labels)):
            facet = frozenset(labels[:k] + labels[k + 1:])
            coeffs[facet] = coeffs.get(facet, 0) + fan.w(I) * orient * (-1) ** k
    return all(c == 0 for c in coeffs.values())


# ---------------------------------------------------------------------------
# h- and e-vectors, T_y-genus, signature


def h_vector(fan, v=None, rng=None):
    """h_q = sum of w(I) over top cones with exactly q positive coordinates
    of the generic direction v in the basis of I.  Independent of v."""
    ensure_complete(fan)
    if v is None:
        v = random_generic_vector(fan, rng)
    elif not is_generic(fan, v):
        raise GenericityError(f"{v} is not generic")
    h = [0] * (fan.dim + 1)
    for I in fan.top:
        h[cone_frame(fan, I, v).mu] += fan.w(I)
    return tuple(h)


def e_vector(fan):
    """e_q = sum over q-faces K of the degree of the projected multi-fan."""
    ensure_complete(fan)
    n = fan.dim
    e = [0] * (n + 1)
    for q in range(n + 1):
        for K in fan.faces_of_dim(q):
            if q == n:
                e[q] += fan.w(K)
            else:
                try:
                    sub = fan if q == 0 else project(fan, K).fan
                except NotComplete as exc:
                    raise NotComplete(
                        f"projection along {sorted(K)} has no top cones") from exc
                ok, deg = is_precomplete(sub)
                if not ok:
                    raise NotComplete(
                        f"projection along {sorted(K)} is not pre-complete")
                e[q] += deg
    return tuple(e)


def ty_genus(fan, rng=None):
    """Coefficients (ascending in y) of sum_q h_q (-y)^q; cross-checked
    against the e-vector expansion sum_m e_{n-m) (-1-y)^m."""
    h = h_vector(fan, rng=rng)
    n = fan.dim
    ty = tuple(h[q] * (-1) ** q for q in range(n + 1))
    e = e_vector(fan)
    alt = [0] * (n + 1)
    for m in range(n + 1):
        for k in range(m + 1):
            alt[k] += e[n - m] * (-1) ** m * math.comb(m, k)
    if ty != tuple(alt):
        raise AssertionError(f"genus mismatch: h-route {ty} vs e-route {tuple(alt)}")
    return ty


def signature(fan, rng=None):
    """Genus at y = 1; equals sum_m (-2)^m e_{n-m}."""
    ty = ty_genus(fan, rng=rng)
    at_one = sum(ty)
    e = e_vector(fan)
    alt = sum((-2) ** m * e[fan.dim - m] for m in range(fan.dim + 1))
    if at_one != alt:
        raise AssertionError(f"signature mismatch: {at_one} vs {alt}")
    return at_one


@dataclass(frozen=True)
class FanInvariants:
    degree: int
    h: tuple
    e: tuple
    ty: tuple


def invariants(fan, rng=None):
    """Degree, h-vector, e-vector and genus bundled, with the symmetry
    h_q = h_{n-q} and the edge identities asserted."""
    deg = degree(fan)
    h = h_vector(fan, rng=rng)
    e = e_vector(fan)
    ty = ty_genus(fan, rng=rng)
    n = fan.dim
    assert h[n] == deg == e[0], (h, deg, e)
    assert all(h[q] == h[n - q] for q in range(n + 1)), h
    assert ty[0] == deg
    return FanInvariants(degree=deg, h=h, e=e, ty=ty)


# ---------------------------------------------------------------------------
# star decomposition and minimal multi-fans


def decompose_star(fan, ell, check=True):
    """Split a complete fan into one minimal multi-fan per top cone, all
    sharing the extra ray ell.

    For each top cone I the coefficients a_i of ell = -sum a_i v_i drive the
    weight bookkeeping: faces replacing i by the star label swap the weight
    pair exactly when a_i < 0.  Each piece is complete, and over every
    (n-1)-face J of the parent the signed weights of the star cones cancel.
    """
    ensure_complete(fan)
    ell = tuple(int(x) for x in ell)
    if not is_generic(fan, ell):
        raise GenericityError(f"star ray {ell} is not generic")
    n = fan.dim
    pieces = []
    star_sign = {}   # (I, i) -> sign of a_i
    for I in fan.top:
        labels = sorted(I)
        dual = fan.dual_basis(I)
        signs = {}
        for i in labels:
            a = -pairing(dual[i], ell)
            assert a != 0
            signs[i] = 1 if a > 0 else -1
            star_sign[(I, i)] = signs[i]
        wp, wm = fan.weights[I]
        rays = [fan.ray(i) for i in labels] + [ell]
        # the n-subsets of {1..n+1} are exactly the top cones, so the face
        # set closes down to the full simplex boundary on its own
        cones = {frozenset(range(1, n + 1)): (wp, wm)}
        for k, i in enumerate(labels, start=1):
            face = frozenset(j for j in range(1, n + 1) if j != k) | {n + 1}
            cones[face] = (wp, wm) if signs[i] > 0 else (wm, wp)
        pieces.append(MultiFan(n, rays, cones))
    if check:
        for piece in pieces:
            if not is_complete(piece):
                raise AssertionError("star piece is not complete")
        for J in fan.faces_of_dim(n - 1):
            total = 0
            for I in fan.top:
                if J <= I:
                    (i,) = I - J
                    total += star_sign[(I, i)] * fan.w(I)
            if total != 0:
                raise AssertionError(
                    f"star weights over face {sorted(J)} do not cancel")
    return pieces


def _is_simplex_boundary(fan):
    n = fan.dim
    if fan.nrays != n + 1:
        return False
    full = frozenset(range(1, n + 2))
    expected = _closure([full - {i} for i in full])
    return fan.faces == frozenset(expected)


def minimal_normalize(fan):
    """Flip the rays with negative coefficient in the unique linear relation
    of a minimal multi-fan, swapping weight pairs on cones with an odd number
    of flipped labels.  The result has cones tiling the whole space with a
    constant ordered weight pair."""
    n = fan.dim
    if not _is_simplex_boundary(fan):
        raise InvalidFan("input faces are not the boundary of a simplex")
    pairs = {frozenset((wp, wm)) if wp != wm else frozenset((wp,))
             for wp, wm in fan.weights.values()}
    if len(pairs) != 1:
        raise InvalidFan("the weight set {w+, w-} must not depend on the cone")
    ensure_complete(fan)
    ker = nullspace(tuple(zip(*fan.rays)))   # relation on the columns
    if len(ker) != 1:
        raise InvalidFan("rays of a minimal multi-fan satisfy a unique relation")
    b = ker[0]
    if any(x == 0 for x in b):
        raise InvalidFan("degenerate relation: some coefficient vanishes")
    lead = next(x for x in b if x)
    if lead < 0:
        b = tuple(-x for x in b)
    flipped = {i + 1 for i, x in enumerate(b) if x < 0}
    rays = [tuple(-x for x in r) if (i + 1) in flipped else r
            for i, r in enumerate(fan.rays)]
    cones = {}
    for I, (wp, wm) in fan.weights.items():
        if len(I & flipped) % 2:
            cones[I] = (wm, wp)
        else:
            cones[I] = (wp, wm)
    out = MultiFan(n, rays, cones)
    first = next(iter(out.weights.values()))
    if any(pair != first for pair in out.weights.values()):
        raise AssertionError("normalized weight pair is not constant")
    return out
