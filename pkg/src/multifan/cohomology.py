"""Face ring of a multi-fan and the cohomological counting formulas.

The face ring Z[x_1..x_d]/(monomials off the face set) plays the role of
equivariant cohomology of a complete simplicial multi-fan.  Restriction to
a top cone substitutes the dual basis covectors for the x_i; the index map
sums weighted restrictions divided by the product of dual linear forms and
by the quotient group order.  On homogeneous elements of top degree the
index is a constant rational number, which is evaluated exactly at one
generic lattice direction.

Two independent lattice-point counts are derived from this: the localized
Todd-class count (one-variable Laurent expansion along a generic direction,
with poles required to cancel) and the Todd-operator count applied to the
volume polynomial in the support numbers.
"""

import cmath
import math
import random
from fractions import Fraction

from .fan import (
    GenericityError,
    ensure_complete,
    is_generic,
    random_generic_vector,
)
from .linalg import character, pairing
from .polytope import ensure_lattice

_DEFAULT_SEED = 0x5EED


def _support(expo):
    return frozenset(i + 1 for i, e in enumerate(expo) if e)


class FaceRingElement:
    """Polynomial in the ray classes x_1..x_d with monomials supported on
    faces; anything else is zero by the face relations.

    Coefficients are exact rationals, or complex numbers once roots of
    unity enter (Todd classes of singular fans).
    """

    __slots__ = ("fan", "terms")

    def __init__(self, fan, terms=None):
        self.fan = fan
        clean = {}
        faces = fan.faces
        for expo, coef in (terms or {}).items():
            if not coef:
                continue
            if _support(expo) not in faces:
                continue
            clean[expo] = clean.get(expo, 0) + coef
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def zero(cls, fan):
        return cls(fan, {})

    @classmethod
    def constant(cls, fan, c):
        return cls(fan, {(0,) * fan.nrays: c})

    @classmethod
    def variable(cls, fan, i, power=1):
        expo = [0] * fan.nrays
        expo[i - 1] = power
        return cls(fan, {tuple(expo): Fraction(1)})

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return FaceRingElement(self.fan, terms)

    def __sub__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) - c
        return FaceRingElement(self.fan, terms)

    def __mul__(self, other):
        if not isinstance(other, FaceRingElement):
            return self.scale(other)
        faces = self.fan.faces
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if _support(e) not in faces:
                    continue
                terms[e] = terms.get(e, 0) + c1 * c2
        return FaceRingElement(self.fan, terms)

    def scale(self, c):
        return FaceRingElement(self.fan, {e: c * v for e, v in self.terms.items()})

    __rmul__ = scale

    def truncate(self, total_degree):
        return FaceRingElement(
            self.fan, {e: c for e, c in self.terms.items() if sum(e) <= total_degree})

    def homogeneous_part(self, total_degree):
        return FaceRingElement(
            self.fan, {e: c for e, c in self.terms.items() if sum(e) == total_degree})

    def degrees(self):
        return sorted({sum(e) for e in self.terms})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return self.fan is other.fan and self.terms == other.terms

    def __repr__(self):
        return f"FaceRingElement({len(self.terms)} terms)"


def face_reduce(fan, terms):
    """Reduce a raw exponent->coefficient mapping modulo the face relations."""
    return FaceRingElement(fan, terms)


def pullback(fan, u):
    """The linear form sum_i <u, v_i> x_i induced by a covector u."""
    terms = {}
    for i in range(1, fan.nrays + 1):
        c = pairing(u, fan.ray(i))
        if c:
            expo = [0] * fan.nrays
            expo[i - 1] = 1
            terms[tuple(expo)] = Fraction(c)
    return FaceRingElement(fan, terms)


def chern_class(poly):
    """Linear form sum_i c_i x_i of the support numbers (the equivariant
    first Chern class of the multi-polytope)."""
    terms = {}
    for i, c in enumerate(poly.support, start=1):
        if c:
            expo = [0] * poly.fan.nrays
            expo[i - 1] = 1
            terms[tuple(expo)] = c
    return FaceRingElement(poly.fan, terms)


# ---------------------------------------------------------------------------
# restriction and the index map


def _poly_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def restrict(elem, I):
    """Substitute the dual covectors of a top cone for the variables:
    x_i -> u_i^I for i in I and 0 otherwise.  The result is a polynomial in
    n ambient dual coordinates, as an exponent->coefficient mapping."""
    fan = elem.fan
    I = frozenset(I)
    dual = fan.dual_basis(I)
    n = fan.dim
    zero_expo = (0,) * n
    linear = {}
    for i in I:
        u = dual[i]
        form = {}
        for k in range(n):
            if u[k]:
                e = [0] * n
                e[k] = 1
                form[tuple(e)] = u[k]
        linear[i] = form
    out = {}
    for expo, coef in elem.terms.items():
        if not _support(expo) <= I:
            continue
        acc = {zero_expo: coef}
        for i in I:
            for _ in range(expo[i - 1]):
                acc = _poly_mul(acc, linear[i])
        for e, c in acc.items():
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _restrict_value(elem, I, pairings):
    """restrict(elem, I) evaluated at a point, given the precomputed
    pairings {i: <u_i^I, point>}."""
    total = 0
    I = frozenset(I)
    for expo, coef in elem.terms.items():
        if not _support(expo) <= I:
            continue
        val = coef
        for i in I:
            e = expo[i - 1]
            if e:
                val = val * pairings[i] ** e
        total += val
    return total


class _IndexEvaluator:
    """Evaluates the index map at one generic lattice direction; the value
    on a homogeneous element of top degree is a constant, so a single
    verified-generic point decides it exactly."""

    def __init__(self, fan, point=None, rng=None):
        ensure_complete(fan)
        self.fan = fan
        if point is None:
            point = random_generic_vector(fan, rng)
        elif not is_generic(fan, point):
            raise GenericityError(f"{point} is not generic")
        self.point = point
        self.data = []
        for I in fan.top:
            pairings = {i: pairing(fan.dual_basis(I)[i], point) for i in I}
            denom = fan.quotient(I).order
            for p in pairings.values():
                denom *= p
            self.data.append((I, pairings, denom))

    def value(self, elem):
        total = 0
        for I, pairings, denom in self.data:
            num = _restrict_value(elem, I, pairings)
            if num:
                total += self.fan.w(I) * num / denom
        return total


def index_value_at(elem, point):
    """The raw index sum at an explicit generic point (no homogeneity
    requirement); used to check that lower-degree elements index to zero."""
    return _IndexEvaluator(elem.fan, point=point).value(elem)


def index(elem, rng=None):
    """Index of a homogeneous element of top total degree: the weighted sum
    of restrictions divided by quotient orders and dual-form products."""
    n = elem.fan.dim
    degs = elem.degrees()
    if elem.is_zero():
        return Fraction(0)
    if degs != [n]:
        raise ValueError(
            f"index needs a homogeneous element of total degree {n}, got degrees {degs}")
    return _IndexEvaluator(elem.fan, rng=rng).value(elem)


def integral(elem, rng=None):
    """Evaluation against the fundamental class: only the top-degree part
    survives, lower degrees contribute zero."""
    top = elem.homogeneous_part(elem.fan.dim)
    if top.is_zero():
        return Fraction(0)
    return index(top, rng=rng)


def volume(poly, rng=None):
    """vol(P) = (1/n!) * integral of the n-th power of the Chern form.
    Exact for any simple multi-polytope; can be zero or negative."""
    n = poly.dim
    ensure_complete(poly.fan)
    c1 = chern_class(poly)
    power = FaceRingElement.constant(poly.fan, Fraction(1))
    for _ in range(n):
        power = power * c1
    return Fraction(1, math.factorial(n)) * integral(power, rng=rng)


# ---------------------------------------------------------------------------
# univariate series helpers (exponents are a window [lead, lead + width))


def _series_mul(a, b, width):
    la, ca = a
    lb, cb = b
    out = [0] * width
    for i, x in enumerate(ca):
        if not x:
            continue
        if i >= width:
            break
        for j, y in enumerate(cb):
            k = i + j
            if k >= width:
                break
            if y:
                out[k] += x * y
    return (la + lb, out)


def _series_inverse(coeffs, order):
    """Inverse of a power series with nonzero constant term, to the given
    order (inclusive)."""
    c0 = coeffs[0]
    if not c0:
        raise ZeroDivisionError("series has no constant term")
    inv = [0] * (order + 1)
    one = Fraction(1) if isinstance(c0, Fraction) else 1.0
    inv[0] = one / c0
    for k in range(1, order + 1):
        s = 0
        for j in range(1, k + 1):
            if j < len(coeffs) and coeffs[j]:
                s += coeffs[j] * inv[k - j]
        inv[k] = -s / c0
    return inv


def _exp_series(a, order):
    """Power series of exp(a s) to the given order."""
    out = [Fraction(1) if isinstance(a, Fraction) else 1.0]
    for k in range(1, order + 1):
        out.append(out[-1] * a / k)
    return (0, out)


def _geometric_factor(phase, a, order):
    """Series of 1 / (1 - rho * exp(-a s)) with rho = exp(2 pi i phase).

    For rho = 1 this has a simple pole (lead -1); otherwise it is a unit
    power series with complex coefficients.
    """
    if phase == 0:
        # (1 - e^{-as}) / (as) = sum_k (-a)^k s^k / (k+1)!
        unit = [Fraction((-1) ** k) * Fraction(a) ** k / math.factorial(k + 1)
                for k in range(order + 1)]
        inv = _series_inverse(unit, order)
        return (-1, [c / Fraction(a) for c in inv])
    rho = cmath.exp(2j * math.pi * float(phase))
    af = float(a)
    coeffs = [1 - rho]
    fact = 1.0
    for k in range(1, order + 1):
        fact *= k
        coeffs.append(-rho * (-af) ** k / fact)
    return (0, _series_inverse(coeffs, order))


def todd_count(poly, rng=None, tol_pole=1e-9, tol_int=1e-6):
    """Lattice-point count through the localized Todd formula.

    Along a verified-generic direction each (cone, group element) pair
    contributes the one-variable Laurent series of
    exp(s <u_I, w>) / prod_i (1 - chi exp(-s <u_i^I, w>)); the poles of the
    total must cancel (exactly in the non-singular case, within `tol_pole`
    otherwise) and the constant term is the count.
    """
    fan = poly.fan
    ensure_lattice(poly)
    ensure_complete(fan)
    w = random_generic_vector(fan, rng)
    n = fan.dim
    width = 2 * n + 1
    totals = {}  # exponent -> coefficient (Fraction + float mix)
    for I in fan.top:
        dual = fan.dual_basis(I)
        quot = fan.quotient(I)
        u_I = poly.vertex(I)
        a0 = Fraction(pairing(u_I, w))
        scale = Fraction(fan.w(I), quot.order)
        for g in quot.representatives:
            series = _exp_series(a0, width - 1)
            for i in sorted(I):
                phase = character(dual[i], g).phase
                series = _series_mul(
                    series, _geometric_factor(phase, Fraction(pairing(dual[i], w)), width - 1),
                    width)
            lead, coeffs = series
            for k, c in enumerate(coeffs):
                if c:
                    expo = lead + k
                    if expo > n:
                        continue
                    totals[expo] = totals.get(expo, 0) + scale * c
    const = totals.get(0, 0)
    ref = max(1.0, abs(complex(const)))
    for expo, c in totals.items():
        if expo < 0:
            if isinstance(c, Fraction):
                if c != 0:
                    raise AssertionError(f"exact pole residue {c} at order {expo}")
            elif abs(c) > tol_pole * ref:
                raise AssertionError(f"pole residue {c} at order {expo} exceeds {tol_pole}")
    value = complex(const)
    nearest = round(value.real)
    if abs(value - nearest) > tol_int:
        raise AssertionError(f"constant term {value} is not within {tol_int} of an integer")
    return nearest


# ---------------------------------------------------------------------------
# Todd classes and the volume-polynomial operator count


def _group_elements(fan):
    """The union of the finite groups over all top cones, as tuples of
    rational phases per ray (zero off the cone); deduplicated."""
    d = fan.nrays
    seen = {}
    for I in fan.top:
        dual = fan.dual_basis(I)
        for g in fan.quotient(I).representatives:
            phases = [Fraction(0)] * d
            for i in I:
                phases[i - 1] = character(dual[i], g).phase
            key = tuple(phases)
            seen.setdefault(key, key)
    return sorted(seen, key=str)


def _todd_series(phase, order):
    """Coefficients of x / (1 - rho e^{-x}) up to x^order; no constant term
    unless rho = 1."""
    if phase == 0:
        unit = [Fraction((-1) ** k, math.factorial(k + 1)) for k in range(order + 1)]
        return _series_inverse(unit, order)
    rho = cmath.exp(2j * math.pi * float(phase))
    denom = [1 - rho]
    fact = 1.0
    for k in range(1, order + 1):
        fact *= k
        denom.append(-rho * (-1.0) ** k / fact)
    inv = _series_inverse(denom, order)
    return [0.0] + inv[:order]


def equivariant_todd_class(fan, order=None):
    """Sum over the union of cone groups of prod_i x_i / (1 - rho_i e^{-x_i}),
    truncated at the given total degree (default n)."""
    if order is None:
        order = fan.dim
    total = FaceRingElement.zero(fan)
    for phases in _group_elements(fan):
        acc = FaceRingElement.constant(fan, Fraction(1))
        for i in range(1, fan.nrays + 1):
            coeffs = _todd_series(phases[i - 1], order)
            terms = {}
            for k, c in enumerate(coeffs):
                if c:
                    expo = [0] * fan.nrays
                    expo[i - 1] = k
                    terms[tuple(expo)] = c
            acc = (acc * FaceRingElement(fan, terms)).truncate(order)
            if acc.is_zero():
                break
        total = total + acc
    return total


def todd_class(fan, order=None):
    """The image of the equivariant Todd class in the quotient ring; the
    distinction only matters under the integral, so the data is the same."""
    return equivariant_todd_class(fan, order)


def exp_class(elem, order):
    """exp of a face-ring element, truncated at the given total degree."""
    fan = elem.fan
    acc = FaceRingElement.constant(fan, Fraction(1))
    term = FaceRingElement.constant(fan, Fraction(1))
    for k in range(1, order + 1):
        term = (term * elem).truncate(order).scale(Fraction(1, k))
        if term.is_zero():
            break
        acc = acc + term
    return acc


def _compositions(total, length):
    if length == 1:
        yield (total,)
        return
    for first in range(1, total - length + 2):
        for rest in _compositions(total - first, length - 1):
            yield (first,) + rest


def volume_polynomial(poly, rng=None):
    """vol as a polynomial in per-ray offsets h_i of the support numbers:
    expand (1/n!) (sum (c_i + h_i) x_i)^n over monomials supported on faces
    and integrate each coefficient.  Returns {h-exponent tuple: Fraction}."""
    fan = poly.fan
    ensure_complete(fan)
    n = fan.dim
    d = fan.nrays
    evaluator = _IndexEvaluator(fan, rng=rng)
    out = {}
    for q in range(1, n + 1):
        for J in (f for f in fan.faces_of_dim(q)):
            labels = sorted(J)
            for expo in _compositions(n, q):
                full = [0] * d
                for lab, e in zip(labels, expo):
                    full[lab - 1] = e
                mono = FaceRingElement(fan, {tuple(full): Fraction(1)})
                ival = evaluator.value(mono)
                if not ival:
                    continue
                base = ival
                for e in expo:
                    base /= math.factorial(e)
                # expand prod (c_i + h_i)^{e_i} into h-monomials
                expansion = {(): base}
                for lab, e in zip(labels, expo):
                    c = poly.c(lab)
                    nxt = {}
                    for hk in range(e + 1):
                        coef = math.comb(e, hk) * c ** (e - hk)
                        if not coef:
                            continue
                        for prev, pc in expansion.items():
                            key = prev + ((lab, hk),) if hk else prev
                            nxt[key] = nxt.get(key, 0) + pc * coef
                    expansion = nxt
                for key, coef in expansion.items():
                    full_h = [0] * d
                    for lab, hk in key:
                        full_h[lab - 1] = hk
                    tkey = tuple(full_h)
                    out[tkey] = out.get(tkey, 0) + coef
    return {k: v for k, v in out.items() if v}


def evaluate_volume_polynomial(vol_poly, offsets):
    total = Fraction(0)
    for expo, coef in vol_poly.items():
        val = coef
        for k, e in enumerate(expo):
            if e:
                val *= offsets[k] ** e
        total += val
    return total


def kp_count(poly, rng=None, tol_int=1e-6):
    """Lattice-point count by applying the Todd operator in the support
    offsets to the volume polynomial and evaluating at zero offset.

    The operator truncates at total differential order n because the volume
    polynomial has degree n; a factor with nontrivial character has no
    constant term, so group elements only act through monomials touching
    every ray they twist.
    """
    fan = poly.fan
    ensure_lattice(poly)
    vol_poly = volume_polynomial(poly, rng=rng)
    n = fan.dim
    series = {}
    result = 0
    for phases in _group_elements(fan):
        for expo, coef in vol_poly.items():
            # a twisted factor has no constant term, so its ray must appear
            opc = 1
            for k, e in enumerate(expo):
                ph = phases[k]
                if ph not in series:
                    series[ph] = _todd_series(ph, n)
                opc *= series[ph][e]
                if not opc:
                    break
            else:
                weight = math.prod(math.factorial(e) for e in expo)
                result += opc * weight * coef
    value = complex(result)
    nearest = round(value.real)
    if abs(value - nearest) > tol_int:
        raise AssertionError(f"operator count {value} is not within {tol_int} of an integer")
    return nearest
