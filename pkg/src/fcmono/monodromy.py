"""Monodromy generators of the rank-2^n hypergeometric system E_C.

Builds the circuit matrices M_0..M_n on (C^2)^{tensor n}, the invariant
pairing H, and derived objects: the last-row vector v with
M_0 = E - N_0, the special eigenvalue delta_0 = det M_0, the vectors
f_I = M^I e_{(1..1)}, and the conjugate reflections R_I.

H is a scalar multiple of a matrix with short entries:

    H = s * Ht,   s = 1 / ((alpha - prod gamma_k) (beta - 1)),

and every invariance identity is verified on Ht after cancelling the
nonzero scalar s, which keeps exact verification cheap even when the
dense expansion of s has thousands of terms.  ``dense_H`` materialises
the true entries when they are needed as values.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import (CycNum, ParameterSet, UnitRoots, involution,
                         unit_roots, _inv_one_minus_root)
from .linalg import (ExactMatrix, identity, index_words, rkron, word_rank,
                     word_weight, basis_vector, vec_equal, vec_is_zero,
                     nonsingular_certificate)

__all__ = [
    "UndefinedIntersectionError", "MonodromySystem", "ReflectionGen",
    "build_Gk", "build_Mk", "build_v", "build_M0", "build_H", "delta0_value",
    "build_fI", "build_MI", "build_reflection", "nu_matrix",
    "kernel_basis_of_N0", "run_identity_checks", "DENSE_CHECK_MAX_CONDUCTOR",
]

# conductor bound under which checks are additionally run on the dense H
DENSE_CHECK_MAX_CONDUCTOR = 60


class UndefinedIntersectionError(ArithmeticError):
    """The pairing H is undefined: one of its denominators vanishes."""

    def __init__(self, condition):
        super().__init__(f"intersection pairing undefined: {condition}")
        self.condition = condition


def build_Gk(gamma_k: CycNum) -> ExactMatrix:
    """2x2 factor [[1, -1/gamma], [0, 1/gamma]] of the k-th circuit."""
    if gamma_k.is_zero():
        raise ValueError("gamma must be a nonzero root of unity")
    gi = gamma_k.inverse()
    return ExactMatrix([[CycNum.one(), -gi], [CycNum.zero(), gi]])


def build_Mk(n: int, k: int, gamma_k: CycNum) -> ExactMatrix:
    """E_2 tensor ... tensor G_k (slot k) tensor ... tensor E_2."""
    if not 1 <= k <= n:
        raise IndexError(f"k must be in 1..{n}")
    M = build_Gk(gamma_k) if k == 1 else identity(2)
    for slot in range(2, n + 1):
        M = rkron(M, build_Gk(gamma_k) if slot == k else identity(2))
    return M


def delta0_value(roots: UnitRoots) -> CycNum:
    n = len(roots.gamma)
    prod_g = math.prod(roots.gamma, start=CycNum.one())
    return CycNum.from_fraction((-1) ** (n + 1)) * prod_g / (roots.alpha * roots.beta)


def build_v(roots: UnitRoots) -> list:
    """Last-row vector of E - M_0, indexed by words in rank order."""
    n = len(roots.gamma)
    al, be, gs = roots.alpha, roots.beta, roots.gamma
    ab_inv = (al * be).inverse()
    out = []
    for I in index_words(n):
        w = word_weight(I)
        if w == 0:
            val = (al - 1) * (be - 1)
            for g in gs:
                val = val * g
            val = val * ab_inv * ((-1) ** n)
        else:
            prod_in = math.prod((g for g, i in zip(gs, I) if i),
                                start=CycNum.one())
            prod_out = math.prod((g for g, i in zip(gs, I) if not i),
                                 start=CycNum.one())
            val = (al * be + prod_in * ((-1) ** w)) * prod_out * ab_inv
            val = val * ((-1) ** (n + w))
        out.append(val)
    return out


def build_M0(roots: UnitRoots) -> ExactMatrix:
    n = len(roots.gamma)
    v = build_v(roots)
    size = 1 << n
    data = [[CycNum.one() if i == j else CycNum.zero() for j in range(size)]
            for i in range(size)]
    for j in range(size):
        data[size - 1][j] = data[size - 1][j] - v[j]
    return ExactMatrix(data)


def _h_scalar_parts(roots: UnitRoots):
    """Inverse factors of s = 1/((alpha - prod gamma)(beta - 1)).

    Raises UndefinedIntersectionError naming the vanishing denominator.
    Both denominators are differences of two roots of unity, so their
    inverses come from the closed form for 1/(1 - zeta^m).
    """
    al, be = roots.alpha, roots.beta
    prod_g = math.prod(roots.gamma, start=CycNum.one())
    d1 = al - prod_g
    if d1.is_zero():
        raise UndefinedIntersectionError("alpha = gamma_1 * ... * gamma_n")
    if (be - 1).is_zero():
        raise UndefinedIntersectionError("beta = 1")
    # d1 = zeta^p - zeta^q and beta - 1 = -(1 - beta): invert via binomial forms
    return d1.inverse(), (be - CycNum.one()).inverse()


def _build_Htilde(roots: UnitRoots) -> ExactMatrix:
    """H times (alpha - prod gamma)(beta - 1): short polynomial entries."""
    n = len(roots.gamma)
    al, be, gs = roots.alpha, roots.beta, roots.gamma
    one = CycNum.one()
    words = index_words(n)
    ab = al * be
    amb1 = (al - 1) * (be - 1)
    rows = []
    for I in words:
        row = []
        for Ip in words:
            II = tuple(i * ip for i, ip in zip(I, Ip))
            if word_weight(II) == 0:
                val = amb1
                for g, i, ip in zip(gs, I, Ip):
                    if ip:
                        val = val * (-g)
                    if 1 - i - ip == 1:
                        val = val * (one - g)
            else:
                prod_ii = math.prod((g for g, t in zip(gs, II) if t),
                                    start=one)
                val = ab + prod_ii * ((-1) ** word_weight(II))
                for g, i, ip in zip(gs, I, Ip):
                    if ip and not i:
                        val = val * (-g)
                    if (not i) and (not ip):
                        val = val * (one - g)
            row.append(val)
        rows.append(row)
    return ExactMatrix(rows)


def build_H(roots_or_params) -> ExactMatrix:
    """The invariant pairing H with its entries fully materialised."""
    roots = (unit_roots(roots_or_params)
             if isinstance(roots_or_params, ParameterSet) else roots_or_params)
    inv1, inv2 = _h_scalar_parts(roots)
    s = inv1 * inv2
    Ht = _build_Htilde(roots)
    return Ht.scale(s)


class MonodromySystem:
    """Generators, pairing and derived data for one parameter set."""

    def __init__(self, params: ParameterSet):
        self.params = params
        self.n = params.n
        self.size = 1 << self.n
        self.roots = unit_roots(params)
        self.v = build_v(self.roots)
        self.M = [build_M0(self.roots)] + [
            build_Mk(self.n, k, self.roots.gamma[k - 1])
            for k in range(1, self.n + 1)
        ]
        self.delta0 = delta0_value(self.roots)
        # det M_0 is the product of its diagonal; cross-check the closed form
        diag = math.prod((self.M[0][i, i] for i in range(self.size)),
                         start=CycNum.one())
        if diag != self.delta0:
            raise AssertionError("delta_0 closed form disagrees with det M_0")
        self._Ht = None
        self._H = None

    @property
    def Htilde(self) -> ExactMatrix:
        if self._Ht is None:
            _h_scalar_parts(self.roots)  # fail early if undefined
            self._Ht = _build_Htilde(self.roots)
        return self._Ht

    @property
    def H(self) -> ExactMatrix:
        if self._H is None:
            inv1, inv2 = _h_scalar_parts(self.roots)
            self._H = self.Htilde.scale(inv1 * inv2)
        return self._H

    def prod_gamma(self) -> CycNum:
        return math.prod(self.roots.gamma, start=CycNum.one())


# -- derived objects ---------------------------------------------------


def build_MI(sys: MonodromySystem, I) -> ExactMatrix:
    """M^I = M_1^{i_1} ... M_n^{i_n} (the factors commute)."""
    out = identity(sys.size)
    for k, bit in enumerate(I):
        if bit:
            out = out @ sys.M[k + 1]
    return out


def _MI_inverse(sys: MonodromySystem, I) -> ExactMatrix:
    """Structural inverse: G^{-1} = [[1, 1], [0, gamma]] slot by slot."""
    n = sys.n
    mats = []
    for k in range(n):
        if I[k]:
            g = sys.roots.gamma[k]
            mats.append(ExactMatrix([[1, 1], [CycNum.zero(), g]]))
        else:
            mats.append(identity(2))
    out = mats[0]
    for m in mats[1:]:
        out = rkron(out, m)
    return out


def build_fI(sys: MonodromySystem, I) -> list:
    """f_I = M^I e_{(1..1)}, built slotwise as a tensor of G^{i} e_1."""
    e1 = [CycNum.zero(), CycNum.one()]
    facs = []
    for k, bit in enumerate(I):
        if bit:
            gi = sys.roots.gamma[k].inverse()
            facs.append([-gi, gi])  # G e_1
        else:
            facs.append(list(e1))
    vec = facs[0]
    for f in facs[1:]:
        vec = [x * y for y in f for x in vec]
    return vec


class ReflectionGen:
    """R_I = M^I M_0 (M^I)^{-1} = E - N_I with N_I = f_I u_I^T."""

    __slots__ = ("I", "f", "u", "R", "N")

    def __init__(self, sys: MonodromySystem, I):
        self.I = tuple(I)
        self.f = build_fI(sys, I)
        mi_inv = _MI_inverse(sys, I)
        # N_0 = e_last v^T, so N_I = (M^I e_last) (v^T (M^I)^{-1})
        self.u = mi_inv.transpose().apply(sys.v)
        size = sys.size
        ndata = [[self.f[i] * self.u[j] for j in range(size)]
                 for i in range(size)]
        self.N = ExactMatrix(ndata)
        self.R = identity(size) - self.N


def build_reflection(sys: MonodromySystem, I) -> ReflectionGen:
    return ReflectionGen(sys, I)


def nu_matrix(sys: MonodromySystem) -> ExactMatrix:
    """Rows are the functionals u_I: w maps to (N_I w = (u_I . w) f_I)_I."""
    rows = []
    for I in index_words(sys.n):
        rows.append(_MI_inverse(sys, I).transpose().apply(sys.v))
    return ExactMatrix(rows)


def kernel_basis_of_N0(sys: MonodromySystem) -> list:
    """Exact basis of ker N_0 = {w : v . w = 0}, dimension 2^n - 1."""
    v = sys.v
    j0 = next(j for j, x in enumerate(v) if not x.is_zero())
    basis = []
    for j in range(sys.size):
        if j == j0:
            continue
        w = [CycNum.zero()] * sys.size
        w[j] = v[j0]
        w[j0] = -v[j]
        basis.append(w)
    return basis


# -- identity suite ----------------------------------------------------


def _conj_sparse(M: ExactMatrix, Ht: ExactMatrix) -> ExactMatrix:
    """t(M) * Ht * involution(M)."""
    return M.transpose() @ Ht @ M.involution()


def run_identity_checks(sys: MonodromySystem, dense=None) -> list:
    """Verify the stated matrix identities exactly.

    Every identity involving H is checked on Ht = (alpha - prod gamma)
    (beta - 1) * H; the scalar is nonzero by construction, so the
    cancelled identity is equivalent to the original.  For conductors
    up to ``DENSE_CHECK_MAX_CONDUCTOR`` (or when ``dense=True``) the
    checks are repeated on the materialised H as a second route.

    Returns a list of (name, ok, detail) triples.
    """
    checks = []
    n = sys.n
    Ht = sys.Htilde
    if dense is None:
        dense = sys.roots.conductor <= DENSE_CHECK_MAX_CONDUCTOR
    Hd = sys.H if dense else None

    for i, M in enumerate(sys.M):
        ok = _conj_sparse(M, Ht) == Ht
        if dense and ok:
            ok = _conj_sparse(M, Hd) == Hd
        checks.append((f"isometry_M{i}", ok, "tM.H.M^vee = H"))

    # tH = (-1)^n H^vee  <=>  tHt = (-1)^n alpha beta prod(gamma) Ht^vee,
    # using s^vee = alpha beta prod(gamma) s for the cancelled scalar.
    mult = sys.roots.alpha * sys.roots.beta * sys.prod_gamma()
    mult = mult * ((-1) ** n)
    ok = Ht.transpose() == Ht.involution().scale(mult)
    if dense and ok:
        ok = Hd.transpose() == Hd.involution().scale((-1) ** n)
    checks.append(("pairing_symmetry", ok, "tH = (-1)^n H^vee"))

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            ok = sys.M[i] @ sys.M[j] == sys.M[j] @ sys.M[i]
            checks.append((f"commute_M{i}_M{j}", ok, "M_i M_j = M_j M_i"))
    if n >= 2:
        # the braid-type relation holds for n >= 2 only
        for k in range(1, n + 1):
            A = sys.M[0] @ sys.M[k]
            B = sys.M[k] @ sys.M[0]
            ok = A @ A == B @ B
            checks.append((f"braid_M0_M{k}", ok, "(M0 Mk)^2 = (Mk M0)^2"))

    checks.extend(reflection_structure_checks(sys))
    return checks


def reflection_structure_checks(sys: MonodromySystem) -> list:
    """M_0 is a reflection with special eigenvalue delta_0."""
    checks = []
    size = sys.size
    v = sys.v

    checks.append(("rank_M0_minus_E_is_1",
                   not vec_is_zero(v),
                   "E - M_0 = e_last v^T with v != 0"))

    dets = [("det_M0_is_delta0", sys.M[0].det() == sys.delta0)]
    half = 1 << (sys.n - 1)
    for k in range(1, sys.n + 1):
        # det(M_k) = det(G_k)^{2^{n-1}} since G_k sits in one tensor slot
        dets.append((f"det_M{k}_is_inv_gamma{k}_pow",
                     sys.M[k].det() == sys.roots.gamma[k - 1].inverse() ** half))
    checks.extend((name, ok, "determinants") for name, ok in dets)

    e_last = basis_vector(tuple([1] * sys.n))
    img = sys.M[0].apply(e_last)
    checks.append(("M0_eigenvector_e_last",
                   vec_equal(img, [sys.delta0 * x for x in e_last]),
                   "M_0 e_(1..1) = delta_0 e_(1..1)"))

    # ker N_0 = {w : tw H e_(1..1) = 0}: the two functionals v and
    # H e_(1..1) must be proportional; compare against Ht's last column
    # (the scalar s cancels).
    hcol = sys.Htilde.column(size - 1)
    prop = all((v[i] * hcol[j] - v[j] * hcol[i]).is_zero()
               for i in range(size) for j in range(i + 1, size))
    checks.append(("kernel_functional_matches_pairing", prop,
                   "v proportional to H e_(1..1)"))

    basis = kernel_basis_of_N0(sys)
    ok = len(basis) == size - 1
    for w in basis:
        ok = ok and sum((x * y for x, y in zip(v, w)),
                        CycNum.zero()).is_zero()
        ok = ok and sum((x * y for x, y in zip(hcol, w)),
                        CycNum.zero()).is_zero()
    checks.append(("kernel_N0_dimension_and_membership", ok,
                   f"dim ker N_0 = {size - 1}, membership exact"))
    return checks


def basis_and_nu_checks(sys: MonodromySystem) -> list:
    """f_I independence and invertibility of the nu map (needs irr)."""
    checks = []
    F = ExactMatrix(list(zip(*[build_fI(sys, I)
                               for I in index_words(sys.n)])))
    ok = nonsingular_certificate(F)
    # second route: det F = prod gamma_k^{-2^{n-1}} by the tensor structure
    expect = math.prod((g.inverse() ** (1 << (sys.n - 1))
                        for g in sys.roots.gamma), start=CycNum.one())
    ok = ok and F.det() == expect
    checks.append(("f_basis_independent", ok, "{f_I} is a basis"))
    checks.append(("nu_map_invertible",
                   nonsingular_certificate(nu_matrix(sys)),
                   "w -> (N_I w)_I is an isomorphism"))
    return checks
