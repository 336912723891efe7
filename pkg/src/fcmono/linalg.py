"""Dense exact matrices over cyclotomic numbers.

Index-word conventions: a basis vector of (C^2)^{tensor n} is labelled
by a word I = (i_1, ..., i_n) in {0,1}^n and sits at position
sum_k i_k 2^{k-1}, so the first tensor slot varies fastest.  The
matching matrix tensor product is ``rkron``, whose block (i, j) is
A * B[i][j]; this is the reverse of the usual Kronecker convention and
is what makes slot k of a chain act on index i_k.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .cyclotomic import CycNum, involution, context

__all__ = [
    "ExactMatrix", "SingularMatrixError", "rkron", "identity",
    "index_words", "word_rank", "word_weight", "basis_vector",
    "vec_equal", "vec_is_zero", "nonsingular_certificate",
]


class SingularMatrixError(ArithmeticError):
    pass


def index_words(n):
    """All words of {0,1}^n in rank order (first coordinate fastest)."""
    return [tuple((r >> k) & 1 for k in range(n)) for r in range(1 << n)]


def word_rank(I):
    return sum(b << k for k, b in enumerate(I))


def word_weight(I):
    return sum(I)


def _cyc(x):
    if isinstance(x, CycNum):
        return x
    return CycNum.from_fraction(Fraction(x))


class ExactMatrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        self.data = [[_cyc(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.rows else 0
        if any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged rows")

    def __getitem__(self, ij):
        return self.data[ij[0]][ij[1]]

    def row(self, i):
        return list(self.data[i])

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def __add__(self, other):
        return ExactMatrix([[a + b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.data, other.data)])

    def __sub__(self, other):
        return ExactMatrix([[a - b for a, b in zip(ra, rb)]
                            for ra, rb in zip(self.data, other.data)])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        bt = list(zip(*other.data))
        out = []
        for arow in self.data:
            out.append([_dot(arow, bc) for bc in bt])
        return ExactMatrix(out)

    def scale(self, c):
        c = _cyc(c)
        return ExactMatrix([[a * c for a in row] for row in self.data])

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(a == b for ra, rb in zip(self.data, other.data)
                   for a, b in zip(ra, rb))

    __hash__ = None

    def transpose(self):
        return ExactMatrix([list(r) for r in zip(*self.data)])

    def involution(self):
        return ExactMatrix([[involution(a) for a in row] for row in self.data])

    def apply(self, vec):
        return [_dot(row, vec) for row in self.data]

    def is_integral(self):
        return all(a.is_rational() and a.as_fraction().denominator == 1
                   for row in self.data for a in row)

    def is_rational(self):
        return all(a.is_rational() for row in self.data for a in row)

    def max_conductor(self):
        return max(a.conductor() for row in self.data for a in row)

    # -- elimination-based operations ---------------------------------

    def _echelon(self, augment=None):
        """Row echelon form; returns (rows, pivots, aug, swaps).

        First-nonzero pivoting in column order, no magnitude heuristics
        needed in exact arithmetic.  Quadratic-time field inversions:
        fine for the small dense systems this package produces.
        """
        m = [list(r) for r in self.data]
        aug = [list(r) for r in augment] if augment is not None else None
        pivots = []
        swaps = 0
        pr = 0
        for pc in range(self.cols):
            pivot = None
            for r in range(pr, self.rows):
                if not m[r][pc].is_zero():
                    pivot = r
                    break
            if pivot is None:
                continue
            if pivot != pr:
                m[pr], m[pivot] = m[pivot], m[pr]
                if aug is not None:
                    aug[pr], aug[pivot] = aug[pivot], aug[pr]
                swaps += 1
            inv = m[pr][pc].inverse()
            m[pr] = [x * inv for x in m[pr]]
            if aug is not None:
                aug[pr] = [x * inv for x in aug[pr]]
            for r in range(self.rows):
                if r != pr and not m[r][pc].is_zero():
                    f = m[r][pc]
                    m[r] = [x - f * y for x, y in zip(m[r], m[pr])]
                    if aug is not None:
                        aug[r] = [x - f * y for x, y in zip(aug[r], aug[pr])]
            pivots.append(pc)
            pr += 1
            if pr == self.rows:
                break
        return m, pivots, aug, swaps

    def rank(self):
        return len(self._echelon()[1])

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        m = [list(r) for r in self.data]
        det = CycNum.one()
        for pc in range(self.cols):
            pivot = None
            for r in range(pc, self.rows):
                if not m[r][pc].is_zero():
                    pivot = r
                    break
            if pivot is None:
                return CycNum.zero()
            if pivot != pc:
                m[pc], m[pivot] = m[pivot], m[pc]
                det = -det
            det = det * m[pc][pc]
            below = [r for r in range(pc + 1, self.rows)
                     if not m[r][pc].is_zero()]
            if below:
                inv = m[pc][pc].inverse()
                for r in below:
                    f = m[r][pc] * inv
                    m[r] = [x - f * y for x, y in zip(m[r], m[pc])]
        return det

    def inverse(self):
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        eye = identity(self.rows).data
        m, pivots, aug, _ = self._echelon(augment=eye)
        if len(pivots) != self.cols:
            raise SingularMatrixError("matrix is singular")
        return ExactMatrix(aug)

    def solve(self, rhs):
        """Solve A x = rhs exactly (A nonsingular, rhs a vector)."""
        m, pivots, aug, _ = self._echelon(augment=[[b] for b in rhs])
        if len(pivots) != self.cols:
            raise SingularMatrixError("matrix is singular")
        return [row[0] for row in aug]

    def kernel_basis(self):
        m, pivots, _, _ = self._echelon()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [CycNum.zero()] * self.cols
            v[fc] = CycNum.one()
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][fc]
            basis.append(v)
        return basis

    def in_column_span(self, vec):
        """Exact membership of vec in the column span."""
        m = ExactMatrix([row + [x] for row, x in zip(self.data, vec)])
        return m.rank() == self.rank()


def _dot(a, b):
    acc = None
    for x, y in zip(a, b):
        t = x * y
        acc = t if acc is None else acc + t
    return acc if acc is not None else CycNum.zero()


def identity(n):
    return ExactMatrix([[1 if i == j else 0 for j in range(n)]
                        for i in range(n)])


def rkron(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Tensor product with block (i, j) equal to A * B[i][j].

    The first factor acts on the fastest-varying index, matching the
    index-word rank convention; equivalently rkron(A, B) equals the
    usual Kronecker product of B and A.
    """
    rows = A.rows * B.rows
    cols = A.cols * B.cols
    out = [[None] * cols for _ in range(rows)]
    for i in range(B.rows):
        for j in range(B.cols):
            b = B.data[i][j]
            for p in range(A.rows):
                for q in range(A.cols):
                    out[i * A.rows + p][j * A.cols + q] = A.data[p][q] * b
    return ExactMatrix(out)


def basis_vector(I):
    """Standard unit vector for the index word I (length 2^len(I))."""
    n = len(I)
    out = [CycNum.zero()] * (1 << n)
    out[word_rank(I)] = CycNum.one()
    return out


def vec_is_zero(v):
    return all(x.is_zero() for x in v)


def vec_equal(u, v):
    return all((x - y).is_zero() for x, y in zip(u, v))


# -- modular nonsingularity certificates -------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n):
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _root_field(N, seed):
    """A prime p = 1 mod N and an element of exact order N in F_p."""
    rng = random.Random(seed)
    k = (1 << 50) // N + rng.randrange(1 << 20)
    while True:
        p = k * N + 1
        if _is_prime(p):
            break
        k += 1
    qs = [q for q, _ in _ctx_factors(N)]
    while True:
        g = pow(rng.randrange(2, p - 1), (p - 1) // N, p)
        if g != 1 and all(pow(g, N // q, p) != 1 for q in qs):
            return p, g


def _ctx_factors(N):
    return context(N).factors if N > 1 else ()


def _entry_mod(x: CycNum, N, p, gpow):
    acc = 0
    vec = x._at(N)
    for k, a in enumerate(vec):
        if a:
            acc = (acc + a * gpow[k]) % p
    return acc * pow(x.den, -1, p) % p


def nonsingular_certificate(M: ExactMatrix, attempts=3):
    """True proves det(M) != 0 (reduction mod a prime splitting Q(zeta_N)).

    A nonzero determinant in F_p under a ring homomorphism certifies a
    nonzero exact determinant.  Zero images are inconclusive, so after
    a few primes the exact determinant is computed instead.
    """
    if M.rows != M.cols:
        raise ValueError("not square")
    N = 1
    for row in M.data:
        for x in row:
            x._canonicalize()
            N = math.lcm(N, x.N)
    for attempt in range(attempts):
        p, g = _root_field(N, seed=1000 * N + attempt)
        gpow = [1] * N
        for k in range(1, N):
            gpow[k] = gpow[k - 1] * g % p
        a = [[_entry_mod(x, N, p, gpow) for x in row] for row in M.data]
        det = 1
        n = M.rows
        singular = False
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                singular = True
                break
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det = det * a[c][c] % p
            inv = pow(a[c][c], -1, p)
            for r in range(c + 1, n):
                if a[r][c]:
                    f = a[r][c] * inv % p
                    a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
        if not singular and det % p:
            return True
    return not M.det().is_zero()
