"""Pure-Python coefficient-vector kernel.

A cyclotomic number with conductor N is stored as an integer vector of
length N indexed by exponents of zeta_N (group-algebra coordinates),
together with a denominator managed by the caller.  These functions are
the hot loops shared with the compiled kernel in ``_kernel_c``: both
implement the same contracts, this one with arbitrary-precision ints.

All vectors are plain ``list[int]``.  Functions ending in ``_into``
mutate their first argument.
"""


def shift_scaled_add(acc, src, shift, num):
    """acc[(k+shift) % N] += num * src[k] for all k."""
    n = len(src)
    if num == 0:
        return
    shift %= n
    j = shift
    for k in range(n - shift):
        a = src[k]
        if a:
            acc[j] += a * num
        j += 1
    j = 0
    for k in range(n - shift, n):
        a = src[k]
        if a:
            acc[j] += a * num
        j += 1


def add_scaled(acc, src, num):
    """acc[k] += num * src[k]."""
    if num == 0:
        return
    for k, a in enumerate(src):
        if a:
            acc[k] += a * num


def scale_inplace(vec, num):
    for k, a in enumerate(vec):
        if a:
            vec[k] = a * num


def convolve_into(acc, a, b):
    """Cyclic convolution: acc += a * b (as Z[Z/N] elements)."""
    # iterate over the sparser factor
    nnza = sum(1 for x in a if x)
    nnzb = sum(1 for x in b if x)
    if nnzb < nnza:
        a, b = b, a
    for k, c in enumerate(a):
        if c:
            shift_scaled_add(acc, b, k, c)


def negate_exponents(vec):
    """Image under zeta -> zeta^{-1} (exponent negation mod N)."""
    n = len(vec)
    out = [0] * n
    out[0] = vec[0]
    for k in range(1, n):
        out[n - k] = vec[k]
    return out


def lift(vec, factor):
    """Re-express at conductor N*factor via zeta_N = zeta_{N*factor}^factor."""
    n = len(vec)
    out = [0] * (n * factor)
    for k, a in enumerate(vec):
        if a:
            out[k * factor] = a
    return out


def compress(vec, g):
    """Inverse of lift: support must lie on multiples of g."""
    n = len(vec)
    out = [0] * (n // g)
    for k, a in enumerate(vec):
        if a:
            out[k // g] = a
    return out


def reduce_axes(vec, axes):
    """Rewrite onto the tensor basis of prime-power power bases, in place.

    ``axes`` is a tuple of (pa, bad, deltas) triples, one per prime power
    pa = p^a dividing N: ``bad`` lists the residues m mod pa whose axis
    coordinate falls outside the power basis of Q(zeta_{p^a}), and
    ``deltas`` the p-1 global exponent shifts of the rewriting
    zeta_{p^a}^t = -sum_r zeta_{p^a}^{t - phi(p^a) + r p^{a-1}}.

    Shifts along one axis never disturb the coordinates of another, and
    rewrite targets are never bad for their own axis, so a single pass
    per axis suffices.
    """
    n = len(vec)
    for pa, bad, deltas in axes:
        for m in bad:
            for k in range(m, n, pa):
                c = vec[k]
                if c:
                    vec[k] = 0
                    for d in deltas:
                        t = k + d
                        if t >= n:
                            t -= n
                        vec[t] -= c


def maxabs(vec):
    m = 0
    for a in vec:
        if a < 0:
            a = -a
        if a > m:
            m = a
    return m
