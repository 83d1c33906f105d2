"""Error-free transformations on float64 arrays.

Vectorized forms of Knuth's TwoSum and Dekker's TwoProduct, plus the two
accurate kernels built on them: a compensated homogeneous Horner scheme and a
double-double convolution.
"""
import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def fast_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def comp_horner2(coeffs, x, y):
    """Evaluate sum_j coeffs[j] * x**(m-j) * y**j with compensated Horner steps.

    Every rounding error of the homogeneous Horner recurrence (and of the
    running power of ``y``) is captured by an error-free transformation and
    folded into a correction term evaluated alongside, so the result is as
    accurate as if computed in twice the working precision.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x, y = np.broadcast_arrays(x, y)
    s = np.full(x.shape, float(coeffs[0]))
    corr = np.zeros(x.shape)
    yh = np.ones(x.shape)
    yl = np.zeros(x.shape)
    for c in coeffs[1:]:
        yh, e = two_prod(yh, y)
        yl = yl * y + e
        q, rho = two_prod(float(c), yh)
        rho = rho + float(c) * yl
        p, pi = two_prod(s, x)
        s, sigma = two_sum(p, q)
        corr = corr * x + (pi + sigma + rho)
    out = s + corr
    return out if out.ndim else float(out)


def dd_convolve(ah, al, bh, bl):
    """Convolve two double-double coefficient vectors.

    ``(ah, al)`` and ``(bh, bl)`` hold hi/lo parts. Leading products go through
    TwoProduct and are accumulated with TwoSum; all error terms are summed in a
    separate float64 accumulator. Returns the renormalized (hi, lo) pair.
    """
    ah = np.asarray(ah, dtype=float)
    al = np.asarray(al, dtype=float)
    bh = np.asarray(bh, dtype=float)
    bl = np.asarray(bl, dtype=float)
    if len(ah) > len(bh):
        ah, al, bh, bl = bh, bl, ah, al
    n = len(ah) + len(bh) - 1
    nb = len(bh)
    s = np.zeros(n)
    c = np.zeros(n)
    for i in range(len(ah)):
        p, pe = two_prod(ah[i], bh)
        x1, x1e = two_prod(ah[i], bl)
        x2, x2e = two_prod(al[i], bh)
        seg = slice(i, i + nb)
        s[seg], se = two_sum(s[seg], p)
        c[seg] += ((se + pe) + (x1 + x2)) + ((x1e + x2e) + al[i] * bl)
    big = np.abs(s) >= np.abs(c)
    hi = s + c
    lo = np.where(big, c - (hi - s), s - (hi - c))
    return hi, lo
