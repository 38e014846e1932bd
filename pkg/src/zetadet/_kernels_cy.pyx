# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled continuation kernels (Cython backend).

Same algorithms and coefficients as ``zetadet._kernels_py``; see that module
for the documentation.  Kept in lockstep with the pure backend — the test
suite compares the two on a grid.
"""

cimport cython

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)
    double cabs(double complex)

import math
from fractions import Fraction

_BERNOULLI = (
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
    Fraction(-3617, 510), Fraction(43867, 798), Fraction(-174611, 330),
    Fraction(854513, 138), Fraction(-236364091, 2730), Fraction(8553103, 6),
)

cdef double[13] _EM_COEF
cdef double[13] _STIRLING_COEF
cdef int _NCOEF = 13

for _k, _b in enumerate(_BERNOULLI):
    _EM_COEF[_k] = float(_b / math.factorial(2 * (_k + 1)))
    _STIRLING_COEF[_k] = float(_b / ((2 * (_k + 1)) * (2 * (_k + 1) - 1)))

cdef double _HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
cdef double _STIRLING_RADIUS = 12.0


def hurwitz_zeta(s, q, int n_terms, int order):
    cdef double complex cs = s
    cdef double complex cq = q
    cdef double complex total = 0
    cdef double complex w, logw, w_minus_s, winv2, poch, wpow, term
    cdef int k, j
    for k in range(n_terms):
        total = total + cexp(-cs * clog(cq + k))
    w = cq + n_terms
    logw = clog(w)
    w_minus_s = cexp(-cs * logw)
    total = total + w * w_minus_s / (cs - 1.0)
    total = total + 0.5 * w_minus_s
    winv2 = 1.0 / (w * w)
    poch = cs
    wpow = w_minus_s / w
    term = 0
    for j in range(1, order + 1):
        term = _EM_COEF[j - 1] * poch * wpow
        total = total + term
        poch = poch * (cs + (2 * j - 1)) * (cs + 2 * j)
        wpow = wpow * winv2
    cdef double err
    if order < _NCOEF:
        err = cabs(_EM_COEF[order] * poch * wpow)
    else:
        err = cabs(term)
    return complex(total), err


def log_gamma(z):
    cdef double complex cz = z
    cdef double complex shift = 0
    while cabs(cz) < _STIRLING_RADIUS:
        shift = shift + clog(cz)
        cz = cz + 1.0
    cdef double complex logz = clog(cz)
    cdef double complex result = (cz - 0.5) * logz - cz + _HALF_LOG_TWO_PI
    cdef double complex zinv = 1.0 / cz
    cdef double complex zinv2 = zinv * zinv
    cdef double complex frac = zinv
    cdef int k
    for k in range(_NCOEF):
        result = result + _STIRLING_COEF[k] * frac
        frac = frac * zinv2
    return complex(result - shift)
