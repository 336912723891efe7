"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A ``CycNum`` stores an integer coefficient vector indexed by exponents
of zeta_N (all of Z/N, not just a basis) plus a positive denominator.
Shifts and adds on that vector are the cheap bulk operations; a
canonical form is obtained on demand by rewriting onto the tensor
product of the power bases of Q(zeta_{p^a}) over the prime powers
dividing N.  Values are conceptually immutable: normalisation replaces
the representation, never the value.

External serialisation uses the power basis of Q[X]/(Phi_N), see
``power_coeffs``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _kernel as K

__all__ = [
    "CycNum", "CycContext", "ParameterSet", "UnitRoots",
    "context", "cyclotomic", "involution", "unit_roots",
    "cyclotomic_polynomial", "rational",
]


def _factorize(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


class CycContext:
    """Cached per-conductor data: factorization, phi, reduction tables."""

    __slots__ = ("N", "factors", "phi", "axes", "_phi_poly")

    def __init__(self, N):
        self.N = N
        self.factors = _factorize(N)
        phi = 1
        axes = []
        for p, a in self.factors:
            pa = p ** a
            phi_pa = pa - pa // p
            phi *= phi_pa
            s = pow(N // pa, -1, pa)  # axis coordinate of exponent k is k*s mod pa
            bad = tuple(m for m in range(pa) if (m * s) % pa >= phi_pa)
            deltas = tuple(
                ((r * pa // p - phi_pa) % pa) * (N // pa) % N for r in range(p - 1)
            )
            axes.append((pa, bad, deltas))
        self.phi = phi
        self.axes = tuple(axes)
        self._phi_poly = None

    @property
    def phi_poly(self):
        """Coefficients of the N-th cyclotomic polynomial (ascending)."""
        if self._phi_poly is None:
            self._phi_poly = cyclotomic_polynomial(self.N)
        return self._phi_poly


@lru_cache(maxsize=None)
def context(N: int) -> CycContext:
    if N < 1:
        raise ValueError("conductor must be positive")
    return CycContext(N)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_div_exact(num, den):
    """Exact division of integer polynomials (den monic or +-1 lead)."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        q = c // lead
        out[k - dn] = q
        if q:
            for j, y in enumerate(den):
                if y:
                    num[k - dn + j] -= q * y
    if any(num[:dn]):
        raise ArithmeticError("nonzero remainder")
    return out


def cyclotomic_polynomial(N: int) -> list:
    """Phi_N via the Moebius product prod_{d|N} (x^{N/d}-1)^{mu(d)}."""
    if N == 1:
        return [-1, 1]
    primes = [p for p, _ in _factorize(N)]
    rad = math.prod(primes)
    # Phi_N(x) = Phi_rad(x^{N/rad})
    num = [1]
    den = [1]
    for bits in range(1 << len(primes)):
        d = 1
        mu = 1
        for i, p in enumerate(primes):
            if bits >> i & 1:
                d *= p
                mu = -mu
        f = [0] * (rad // d + 1)
        f[0], f[-1] = -1, 1
        if mu == 1:
            num = _poly_mul(num, f)
        else:
            den = _poly_mul(den, f)
    q = _poly_div_exact(num, den)
    if N == rad:
        return q
    out = [0] * ((len(q) - 1) * (N // rad) + 1)
    for i, c in enumerate(q):
        out[i * (N // rad)] = c
    return out


class CycNum:
    """Element of Q(zeta_N): integer exponent vector over Z/N, denominator."""

    __slots__ = ("N", "num", "den", "_canon")

    def __init__(self, N, num, den=1, _canon=False):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            num = [-x for x in num]
        self.N = N
        self.num = num
        self.den = den
        self._canon = _canon

    # -- constructors ------------------------------------------------

    @staticmethod
    def from_fraction(q) -> "CycNum":
        q = Fraction(q)
        return CycNum(1, [q.numerator], q.denominator, _canon=True)

    @staticmethod
    def zero() -> "CycNum":
        return CycNum(1, [0], 1, _canon=True)

    @staticmethod
    def one() -> "CycNum":
        return CycNum(1, [1], 1, _canon=True)

    # -- normalisation -----------------------------------------------

    def _canonicalize(self):
        """Reduce onto the tensor basis, shrink conductor, reduce den."""
        if self._canon:
            return self
        vec, N = self.num, self.N
        while True:
            if N > 1:
                K.reduce_axes(vec, context(N).axes)
            g = 0
            for k, a in enumerate(vec):
                if a:
                    g = math.gcd(g, k)
                    if g == 1:
                        break
            if g == 1 or N == 1:
                break
            g = math.gcd(g, N) if g else N
            if g == 1:
                break
            vec = K.compress(vec, g)
            N //= g
        content = 0
        for a in vec:
            content = math.gcd(content, a)
            if content == 1:
                break
        if content == 0:
            self.N, self.num, self.den = 1, [0], 1
        else:
            g = math.gcd(content, self.den)
            if g > 1:
                vec = [a // g for a in vec]
                self.den //= g
            self.N, self.num = N, vec
        self._canon = True
        return self

    def _at(self, N2):
        """Coefficient vector lifted to conductor N2 (a multiple of N)."""
        if N2 == self.N:
            return list(self.num)
        return K.lift(self.num, N2 // self.N)

    # -- predicates / conversions ------------------------------------

    def is_zero(self) -> bool:
        self._canonicalize()
        return self.N == 1 and self.num[0] == 0

    def is_rational(self) -> bool:
        self._canonicalize()
        return self.N == 1

    def as_fraction(self) -> Fraction:
        self._canonicalize()
        if self.N != 1:
            raise ValueError("not a rational number")
        return Fraction(self.num[0], self.den)

    def support_size(self) -> int:
        return sum(1 for a in self.num if a)

    def conductor(self) -> int:
        self._canonicalize()
        return self.N

    def power_coeffs(self) -> list:
        """Coordinates in the power basis 1, zeta, ..., zeta^{phi(N)-1}."""
        self._canonicalize()
        ctx = context(self.N)
        vec = list(self.num)
        phi = ctx.phi_poly
        deg = len(phi) - 1
        steps = [(j, c) for j, c in enumerate(phi[:-1]) if c]
        for k in range(len(vec) - 1, deg - 1, -1):
            c = vec[k]
            if c:
                vec[k] = 0
                for j, pj in steps:
                    vec[k - deg + j] -= c * pj
        return [Fraction(a, self.den) for a in vec[:deg]]

    @staticmethod
    def from_power_coeffs(N, coeffs) -> "CycNum":
        ctx = context(N)
        if len(coeffs) != ctx.phi:
            raise ValueError("expected %d coefficients for conductor %d"
                             % (ctx.phi, N))
        coeffs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        vec = [0] * N
        for k, c in enumerate(coeffs):
            vec[k] = c.numerator * (den // c.denominator)
        return CycNum(N, vec, den)

    def complex_value(self) -> complex:
        """Embedding zeta_N -> exp(2 pi i / N)."""
        tau = 2.0 * math.pi / self.N
        re = im = 0.0
        for k, a in enumerate(self.num):
            if a:
                re += a * math.cos(tau * k)
                im += a * math.sin(tau * k)
        return complex(re / self.den, im / self.den)

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return CycNum.from_fraction(x)
        return NotImplemented

    def _binop_prep(self, other):
        N = math.lcm(self.N, other.N)
        return N, self._at(N), other._at(N)

    def __add__(self, other):
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        N, a, b = self._binop_prep(other)
        g = math.gcd(self.den, other.den)
        da, db = other.den // g, self.den // g
        K.scale_inplace(a, da)
        K.add_scaled(a, b, db)
        return CycNum(N, a, self.den * da)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.N, [-x for x in self.num], self.den,
                      _canon=self._canon)

    def __sub__(self, other):
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.N == 1:
            out = list(self.num)
            K.scale_inplace(out, other.num[0])
            return CycNum(self.N, out, self.den * other.den)
        if self.N == 1:
            out = list(other.num)
            K.scale_inplace(out, self.num[0])
            return CycNum(other.N, out, self.den * other.den)
        N, a, b = self._binop_prep(other)
        acc = [0] * N
        K.convolve_into(acc, a, b)
        return CycNum(N, acc, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNum._coerce(other) * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out = CycNum.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def __eq__(self, other):
        other = CycNum._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # equality crosses conductors; use canonical_key instead

    def __repr__(self):
        self._canonicalize()
        if self.N == 1:
            return f"CycNum({Fraction(self.num[0], self.den)})"
        terms = [f"{Fraction(a, self.den)}*z{self.N}^{k}"
                 for k, a in enumerate(self.num) if a]
        return "CycNum(" + " + ".join(terms) + ")"

    def canonical_key(self, N=None):
        """Hashable key; equal values at conductors dividing N get equal keys."""
        self._canonicalize()
        if N is None:
            N = self.N
        return (self.den, tuple(self._at(N)))

    # -- inversion ----------------------------------------------------

    def inverse(self) -> "CycNum":
        self._canonicalize()
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        nnz = [(k, a) for k, a in enumerate(self.num) if a]
        if len(nnz) == 1:
            k, a = nnz[0]
            out = [0] * self.N
            out[(-k) % self.N] = self.den
            return CycNum(self.N, out, a)
        # scaled roots of unity (in any basis presentation): x * x^vee is
        # rational, and then 1/x = x^vee / (x * x^vee)
        conj = CycNum(self.N, K.negate_exponents(self.num), self.den)
        norm = self * conj
        norm._canonicalize()
        if norm.N == 1:
            return conj * CycNum(1, [norm.den], norm.num[0])
        if len(nnz) == 2:
            (k1, a1), (k2, a2) = nnz
            if a1 == -a2:
                # a1 * zeta^{k1} * (1 - zeta^{k2-k1})
                inv = _inv_one_minus_root(self.N, (k2 - k1) % self.N)
                mono = [0] * self.N
                mono[(-k1) % self.N] = self.den
                return CycNum(self.N, mono, a1) * inv
            if a1 == a2:
                # a1 * zeta^{k1} * (1 + zeta^m); 1/(1+x) = (1-x)/(1-x^2)
                m = (k2 - k1) % self.N
                if (2 * m) % self.N != 0:
                    one_minus = CycNum(self.N,
                                       _delta_vec(self.N, 0, 1, m, -1), 1)
                    inv = one_minus * _inv_one_minus_root(self.N,
                                                          (2 * m) % self.N)
                    mono = [0] * self.N
                    mono[(-k1) % self.N] = self.den
                    return CycNum(self.N, mono, a1) * inv
        return self._inverse_generic()

    def _inverse_generic(self):
        """Extended Euclid against Phi_N in the power basis.

        Quadratic in phi(N); intended for small conductors.  The fast
        paths above cover the monomial and binomial shapes that occur
        in bulk computations.
        """
        coeffs = self.power_coeffs()
        ctx = context(self.N)
        phi = [Fraction(c) for c in ctx.phi_poly]
        r0, r1 = phi, coeffs + [Fraction(0)] * (len(phi) - 1 - len(coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def deg(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        while deg(r1) > 0:
            d0, d1 = deg(r0), deg(r1)
            q = [Fraction(0)] * (d0 - d1 + 1)
            rem = list(r0)
            for k in range(d0, d1 - 1, -1):
                c = rem[k] / r1[d1]
                q[k - d1] = c
                if c:
                    for j in range(d1 + 1):
                        rem[k - d1 + j] -= c * r1[j]
            news = list(s0) + [Fraction(0)] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        news[i + j] -= qi * sj
            r0, r1 = r1, rem
            s0, s1 = s1, news
        lead = r1[deg(r1)]
        if lead == 0:
            raise ZeroDivisionError("inverse of zero")
        inv_coeffs = [c / lead for c in s1][:ctx.phi]
        inv_coeffs += [Fraction(0)] * (ctx.phi - len(inv_coeffs))
        return CycNum.from_power_coeffs(self.N, inv_coeffs)


def _delta_vec(N, k1, a1, k2=None, a2=0):
    vec = [0] * N
    vec[k1 % N] = a1
    if k2 is not None:
        vec[k2 % N] += a2
    return vec


def _inv_one_minus_root(N, m):
    """1/(1 - zeta_N^m) as a CycNum, m != 0 mod N.

    With M the order of zeta_N^m, (1-zeta)*sum_{j=1}^{M-1} j zeta^j = -M,
    so the inverse is -(1/M) sum_j j zeta^{jm}.
    """
    m %= N
    if m == 0:
        raise ZeroDivisionError("1 - zeta^0 is zero")
    M = N // math.gcd(m, N)
    vec = [0] * N
    for j in range(1, M):
        vec[(j * m) % N] -= j
    return CycNum(N, vec, M)


def rational(p, q=1) -> CycNum:
    return CycNum.from_fraction(Fraction(p, q))


def cyclotomic(conductor: int, power: int = 1) -> CycNum:
    """zeta_conductor ** power, in canonical form."""
    if conductor < 1:
        raise ValueError("conductor must be positive")
    vec = [0] * conductor
    vec[power % conductor] = 1
    x = CycNum(conductor, vec)
    x._canonicalize()
    return x


def involution(x: CycNum) -> CycNum:
    """The field automorphism sending every root of unity to its inverse."""
    return CycNum(x.N, K.negate_exponents(x.num), x.den)


# -- parameters ------------------------------------------------------


@dataclass(frozen=True)
class ParameterSet:
    """Rational exponents (a, b, c_1..c_n) of the hypergeometric system."""

    a: Fraction
    b: Fraction
    c: tuple

    def __init__(self, a, b, c):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "c", tuple(Fraction(x) for x in c))
        if len(self.c) < 1:
            raise ValueError("need at least one c parameter")

    @property
    def n(self) -> int:
        return len(self.c)

    def conductor(self) -> int:
        return math.lcm(self.a.denominator, self.b.denominator,
                        *(x.denominator for x in self.c))


@dataclass(frozen=True)
class UnitRoots:
    """alpha = e(a), beta = e(b), gamma_k = e(c_k) with e(q) = exp(2 pi i q)."""

    alpha: CycNum
    beta: CycNum
    gamma: tuple
    conductor: int


def unit_roots(p: ParameterSet) -> UnitRoots:
    N = p.conductor()

    def root(q):
        return cyclotomic(N, int(q * N) % N)

    return UnitRoots(root(p.a), root(p.b), tuple(root(x) for x in p.c), N)
