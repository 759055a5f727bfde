"""Exact lattice linear algebra.

Pairings, dual bases, Smith normal form, finite quotient groups of the
integer lattice, saturated quotient projections, and roots of unity with
exact rational phase.  Everything runs on arbitrary-precision integers and
`fractions.Fraction`; floating point appears only when a root of unity is
finally converted to a complex number.

Vectors are plain tuples, matrices are sequences of row tuples.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian


class DimensionMismatch(ValueError):
    """Vectors of unequal length were paired."""


class SingularMatrix(ValueError):
    """A matrix required to be invertible (or of full rank) is not."""


# ---------------------------------------------------------------------------
# vectors


def dot(u, v):
    s = 0
    for a, b in zip(u, v):
        s += a * b
    return s


def pairing(u, v):
    """Natural pairing <u, v> = sum_k u_k v_k, exact."""
    if len(u) != len(v):
        raise DimensionMismatch(f"pairing of a length-{len(u)} with a length-{len(v)} vector")
    return dot(u, v)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def is_zero_vector(v):
    return all(a == 0 for a in v)


def primitive_vector(v, canonical_sign=False):
    """Integer primitive vector on the same line through the origin as v.

    Rational entries are cleared first; with ``canonical_sign`` the first
    nonzero entry is made positive (useful for deduplicating lines).
    """
    denom = 1
    for a in v:
        if isinstance(a, Fraction):
            denom = denom * a.denominator // math.gcd(denom, a.denominator)
    ints = [int(a * denom) for a in v]
    g = 0
    for a in ints:
        g = math.gcd(g, abs(a))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    ints = [a // g for a in ints]
    if canonical_sign:
        lead = next(a for a in ints if a)
        if lead < 0:
            ints = [-a for a in ints]
    return tuple(ints)


def is_primitive(v):
    g = 0
    for a in v:
        g = math.gcd(g, abs(int(a)))
    return g == 1


# ---------------------------------------------------------------------------
# dense rational matrix routines (sizes here are tiny, n <= 4 or so)


def transpose(M):
    return tuple(zip(*M))


def mat_vec(M, v):
    return tuple(dot(row, v) for row in M)


def mat_mul(A, B):
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def _echelon(rows):
    """Gauss-reduce a copy of `rows`; returns (pivot column list, work rows)."""
    work = [[Fraction(x) for x in row] for row in rows]
    m = len(work)
    k = len(work[0]) if m else 0
    pivots = []
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, m) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(m):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots, work


def rank(rows):
    if not rows:
        return 0
    return len(_echelon(rows)[0])


def nullspace(rows, width=None):
    """Basis of {x : rows @ x = 0} as tuples of Fractions."""
    if not rows:
        if width is None:
            raise ValueError("nullspace of an empty system needs an explicit width")
        return tuple(tuple(Fraction(int(i == j)) for j in range(width)) for i in range(width))
    k = len(rows[0])
    pivots, work = _echelon(rows)
    free = [c for c in range(k) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * k
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -work[r][f]
        basis.append(tuple(vec))
    return tuple(basis)


def det(M):
    n = len(M)
    work = [[Fraction(x) for x in row] for row in M]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            sign = -sign
        result *= work[c][c]
        inv = 1 / work[c][c]
        for i in range(c + 1, n):
            if work[i][c] != 0:
                f = work[i][c] * inv
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return sign * result


def inverse(M):
    """Exact inverse, rows of Fractions.  Raises SingularMatrix."""
    n = len(M)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(M)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        work[c], work[pivot] = work[pivot], work[c]
        inv = 1 / work[c][c]
        work[c] = [x * inv for x in work[c]]
        for i in range(n):
            if i != c and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return tuple(tuple(row[n:]) for row in work)


def solve(M, rhs):
    """Solve M x = rhs exactly (square M)."""
    return mat_vec(inverse(M), rhs)


def dual_basis(rays):
    """Dual basis {u_i} of n independent rays: <u_i, v_j> = delta_ij.

    `rays` are the rows; the result is a tuple of rational covectors.
    Raises SingularMatrix when the rays are dependent.
    """
    n = len(rays)
    for r in rays:
        if len(r) != n:
            raise DimensionMismatch("need exactly n vectors of length n")
    inv = inverse(rays)
    return tuple(tuple(inv[k][i] for k in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# Smith normal form and quotient structures


def smith_normal_form(A):
    """Diagonalize an integer matrix: S @ A @ T = D.

    S and T are unimodular, D is diagonal with nonnegative entries
    satisfying the divisibility chain d_1 | d_2 | ... .  Returns (S, D, T)
    as tuples of row tuples.
    """
    M = [[int(x) for x in row] for row in A]
    m = len(M)
    k = len(M[0]) if m else 0
    S = [[int(i == j) for j in range(m)] for i in range(m)]
    T = [[int(i == j) for j in range(k)] for i in range(k)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        S[i], S[j] = S[j], S[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in T:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        M[dst] = [a - q * b for a, b in zip(M[dst], M[src])]
        S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in M:
            row[dst] -= q * row[src]
        for row in T:
            row[dst] -= q * row[src]

    def min_entry(t):
        best = None
        for i in range(t, m):
            for j in range(t, k):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        return best

    def reduce_from(t):
        while t < min(m, k):
            pos = min_entry(t)
            if pos is None:
                break
            while True:
                i0, j0 = min_entry(t)
                if i0 != t:
                    swap_rows(t, i0)
                if j0 != t:
                    swap_cols(t, j0)
                piv = M[t][t]
                clean = True
                for i in range(t + 1, m):
                    if M[i][t]:
                        add_row(i, t, M[i][t] // piv)
                        if M[i][t]:
                            clean = False
                for j in range(t + 1, k):
                    if M[t][j]:
                        add_col(j, t, M[t][j] // piv)
                        if M[t][j]:
                            clean = False
                if clean:
                    break
            if M[t][t] < 0:
                M[t] = [-a for a in M[t]]
                S[t] = [-a for a in S[t]]
            t += 1

    reduce_from(0)
    # divisibility chain fix
    while True:
        bad = None
        for i in range(min(m, k) - 1):
            a, b = M[i][i], M[i + 1][i + 1]
            if a and b and b % a:
                bad = i
                break
        if bad is None:
            break
        add_col(bad, bad + 1, -1)  # mixes the two diagonal entries
        reduce_from(bad)

    return (tuple(tuple(r) for r in S),
            tuple(tuple(r) for r in M),
            tuple(tuple(r) for r in T))


@dataclass(frozen=True)
class FiniteQuotient:
    """The finite group Z^n / (sublattice spanned by n independent rays)."""
    order: int
    invariant_factors: tuple
    representatives: tuple  # one integer vector per group element; identity first

    def __iter__(self):
        return iter(self.representatives)


def quotient_group(rays):
    """Quotient of Z^n by the sublattice generated by n independent rays.

    Representatives are B @ (k_1, .., k_n) for 0 <= k_j < s_j, where
    diag(s_j) is the Smith form of the ray matrix and B the inverse of its
    left transform; this enumerates each coset exactly once.
    """
    n = len(rays)
    A = tuple(tuple(r[i] for r in rays) for i in range(n))  # columns are rays
    S, D, _T = smith_normal_form(A)
    factors = tuple(D[j][j] for j in range(n))
    if any(f == 0 for f in factors):
        raise SingularMatrix("rays are linearly dependent")
    B = inverse(S)
    B = tuple(tuple(int(x) for x in row) for row in B)
    reps = []
    for ks in _cartesian(*[range(f) for f in factors]):
        reps.append(tuple(dot(row, ks) for row in B))
    order = math.prod(factors)
    return FiniteQuotient(order=order, invariant_factors=factors,
                          representatives=tuple(reps))


@dataclass(frozen=True)
class UnityRoot:
    """exp(2 pi i q) for an exact rational phase q in [0, 1)."""
    phase: Fraction

    @property
    def is_one(self):
        return self.phase == 0

    def to_complex(self):
        return cmath.exp(2j * math.pi * float(self.phase))

    def __complex__(self):
        return self.to_complex()

    def __mul__(self, other):
        return UnityRoot((self.phase + other.phase) % 1)


def character(u, g):
    """Character value exp(2 pi i <u, g>) as a UnityRoot.

    Well defined on the class of g modulo the ray lattice whenever u pairs
    integrally with the lattice generators.
    """
    value = pairing(u, g)
    return UnityRoot(Fraction(value) % 1)


@dataclass(frozen=True)
class QuotientMap:
    """Surjection Z^n -> Z^(n-k) whose kernel is the saturated span of k rays.

    `mat` is the unimodular left transform S from the Smith form of the ray
    matrix; the projection reads off the last n-k coordinates of S @ x.
    Dual vectors annihilating the span embed/restrict through S transposes.
    """
    n: int
    k: int
    mat: tuple      # S, rows
    inv: tuple      # S^-1, rows

    @property
    def codim(self):
        return self.n - self.k

    def apply(self, v):
        """Project a vector of the ambient lattice (or its rational span)."""
        return tuple(dot(self.mat[i], v) for i in range(self.k, self.n))

    def lift(self, w):
        """Some preimage of a quotient vector under `apply`."""
        padded = (0,) * self.k + tuple(w)
        return tuple(dot(row, padded) for row in self.inv)

    def embed_dual(self, ubar):
        """Embed a quotient covector as an ambient covector killing the span."""
        rows = self.mat[self.k:]
        return tuple(dot([row[j] for row in rows], ubar) for j in range(self.n))

    def restrict_dual(self, u):
        """Inverse of embed_dual on covectors that annihilate the span."""
        inv_t = transpose(self.inv)
        return tuple(dot(inv_t[i], u) for i in range(self.k, self.n))


def quotient_projection(span_rays, ambient_dim=None):
    """Quotient map of Z^n by the saturation of the span of the given rays.

    The saturation keeps the quotient torsion-free, so the image really is
    a lattice Z^(n-k).  `ambient_dim` is only needed when no rays are given.
    """
    span_rays = tuple(tuple(int(x) for x in r) for r in span_rays)
    if span_rays:
        n = len(span_rays[0])
    elif ambient_dim is not None:
        n = ambient_dim
    else:
        raise ValueError("empty span needs an explicit ambient dimension")
    k = len(span_rays)
    if k == 0:
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return QuotientMap(n=n, k=0, mat=ident, inv=ident)
    A = tuple(tuple(r[i] for r in span_rays) for i in range(n))  # n x k, columns
    S, D, _T = smith_normal_form(A)
    if any(D[j][j] == 0 for j in range(k)):
        raise SingularMatrix("span rays are linearly dependent")
    Sinv = tuple(tuple(int(x) for x in row) for row in inverse(S))
    return QuotientMap(n=n, k=k, mat=S, inv=Sinv)
