# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled special-function kernels.

Twin of ``_pykernels``: identical algorithms, constants and branch
points, compiled for the hot per-element evaluation paths (residual-life
tables, quadrature oracles, censored likelihoods).  Keep the two files
in lockstep; the test suite cross-checks them.
"""
from libc.math cimport (erfc, exp, fabs, isnan, lgamma, log, log1p, sqrt,
                        INFINITY, NAN)

BACKEND = "compiled"

cdef double _EPS = 1e-16
cdef double _FPMIN = 1e-300
cdef int _MAX_ITER = 1000
cdef int _MAX_2F1_TERMS = 10000

cdef double _EULER_GAMMA = 0.5772156649015328606
cdef double _SQRT2 = 1.4142135623730950488
cdef double _SQRT_2PI = 2.5066282746310005024


cpdef double ln_gamma(double a):
    """Natural log of the gamma function for a > 0 (NaN otherwise)."""
    if not a > 0.0 or a == INFINITY:
        return NAN
    return lgamma(a)


cpdef double ln_beta(double a, double b):
    """ln B(a, b) for a, b > 0 (NaN otherwise)."""
    if not (a > 0.0 and b > 0.0):
        return NAN
    return lgamma(a) + lgamma(b) - lgamma(a + b)


# ---------------------------------------------------------------------------
# incomplete gamma
# ---------------------------------------------------------------------------

cdef int _lower_gamma_series(double x, double a, double *p, double *ln_unnorm) except -1:
    # series for the regularized lower incomplete gamma, x < a + 1
    cdef double ap = a
    cdef double delt = 1.0 / a
    cdef double total = delt
    cdef int i
    for i in range(_MAX_ITER):
        ap += 1.0
        delt *= x / ap
        total += delt
        if fabs(delt) < fabs(total) * _EPS:
            ln_unnorm[0] = -x + a * log(x) + log(total)
            p[0] = exp(ln_unnorm[0] - lgamma(a))
            return 0
    p[0] = NAN
    ln_unnorm[0] = NAN
    return 0


cdef int _upper_gamma_cf(double x, double a, double *q, double *ln_unnorm) except -1:
    # Lentz continued fraction for the upper incomplete gamma, x >= a + 1
    cdef double b = x + 1.0 - a
    cdef double c = 1.0 / _FPMIN
    cdef double d = 1.0 / b
    cdef double h = d
    cdef double an, delt
    cdef int i
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if fabs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if fabs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delt = d * c
        h *= delt
        if fabs(delt - 1.0) < _EPS:
            ln_unnorm[0] = -x + a * log(x) + log(h)
            q[0] = exp(ln_unnorm[0] - lgamma(a))
            return 0
    q[0] = NAN
    ln_unnorm[0] = NAN
    return 0


cpdef double reg_lower_gamma(double x, double a):
    """Regularized lower incomplete gamma P(x, a) = gamma(x, a)/Gamma(a)."""
    cdef double v, ln_v
    if not (x >= 0.0 and a > 0.0):
        return NAN
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        _lower_gamma_series(x, a, &v, &ln_v)
        return v
    _upper_gamma_cf(x, a, &v, &ln_v)
    return 1.0 - v


cpdef double reg_upper_gamma(double x, double a):
    """Regularized upper incomplete gamma Q(x, a) = Gamma(x, a)/Gamma(a)."""
    cdef double v, ln_v
    if not (x >= 0.0 and a > 0.0):
        return NAN
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        _lower_gamma_series(x, a, &v, &ln_v)
        return 1.0 - v
    _upper_gamma_cf(x, a, &v, &ln_v)
    return v


cpdef double ln_upper_inc_gamma(double x, double a):
    """ln Gamma(x, a), the unnormalized upper incomplete gamma in log scale."""
    cdef double v, ln_v
    if not (x >= 0.0 and a > 0.0):
        return NAN
    if x == 0.0:
        return lgamma(a)
    if x < a + 1.0:
        _lower_gamma_series(x, a, &v, &ln_v)
        if not v < 1.0:
            return NAN
        return lgamma(a) + log1p(-v)
    _upper_gamma_cf(x, a, &v, &ln_v)
    return ln_v


cpdef double ln_lower_inc_gamma(double x, double a):
    """ln gamma(x, a), the unnormalized lower incomplete gamma in log scale."""
    cdef double v, ln_v
    if not (x >= 0.0 and a > 0.0):
        return NAN
    if x == 0.0:
        return -INFINITY
    if x < a + 1.0:
        _lower_gamma_series(x, a, &v, &ln_v)
        return ln_v
    _upper_gamma_cf(x, a, &v, &ln_v)
    if not v < 1.0:
        return NAN
    return lgamma(a) + log1p(-v)


cpdef double upper_inc_gamma(double x, double a):
    """Unnormalized upper incomplete gamma Gamma(x, a) = int_x^inf t^(a-1) e^-t dt."""
    cdef double v = ln_upper_inc_gamma(x, a)
    if isnan(v):
        return NAN
    return exp(v)


# ---------------------------------------------------------------------------
# exponential integral E1
# ---------------------------------------------------------------------------

cdef double _e1_scaled_cf(double z):
    cdef double b = z + 1.0
    cdef double c = 1.0 / _FPMIN
    cdef double d = 1.0 / b
    cdef double h = d
    cdef double an, delt
    cdef int i
    for i in range(1, _MAX_ITER + 1):
        an = -1.0 * i * i
        b += 2.0
        d = an * d + b
        if fabs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if fabs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delt = d * c
        h *= delt
        if fabs(delt - 1.0) < _EPS:
            return h
    return NAN


cdef double _e1_series(double z):
    cdef double total = -_EULER_GAMMA - log(z)
    cdef double term = 1.0
    cdef double contrib
    cdef int k
    for k in range(1, _MAX_ITER + 1):
        term *= -z / k
        contrib = -term / k
        total += contrib
        if fabs(contrib) < fabs(total) * _EPS:
            return total
    return NAN


cpdef double exp_integral_e1(double z):
    """Exponential integral E1(z) = int_z^inf t^-1 e^-t dt for z > 0."""
    if not z > 0.0:
        return NAN
    if z < 1.0:
        return _e1_series(z)
    return exp(-z) * _e1_scaled_cf(z)


cpdef double exp_integral_e1_scaled(double z):
    """exp(z) * E1(z); stays representable for large z."""
    if not z > 0.0:
        return NAN
    if z < 1.0:
        return exp(z) * _e1_series(z)
    return _e1_scaled_cf(z)


# ---------------------------------------------------------------------------
# regularized incomplete beta
# ---------------------------------------------------------------------------

cdef double _betacf(double x, double a, double b):
    cdef double qab = a + b
    cdef double qap = a + 1.0
    cdef double qam = a - 1.0
    cdef double c = 1.0
    cdef double d = 1.0 - qab * x / qap
    cdef double h, aa, delt
    cdef int m, m2
    if fabs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if fabs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if fabs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if fabs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delt = d * c
        h *= delt
        if fabs(delt - 1.0) < _EPS:
            return h
    return NAN


cdef double _ln_inc_beta_direct(double x, double a, double b):
    cdef double cf = _betacf(x, a, b)
    if isnan(cf) or cf <= 0.0:
        return NAN
    return (-ln_beta(a, b) + a * log(x) + b * log1p(-x) + log(cf) - log(a))


cpdef double reg_inc_beta(double x, double a, double b):
    """Regularized incomplete beta I_x(a, b) for 0 <= x <= 1, a, b > 0."""
    if not (0.0 <= x <= 1.0 and a > 0.0 and b > 0.0):
        return NAN
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    if x < (a + 1.0) / (a + b + 2.0):
        return exp(_ln_inc_beta_direct(x, a, b))
    return 1.0 - exp(_ln_inc_beta_direct(1.0 - x, b, a))


cpdef double ln_reg_inc_beta(double x, double a, double b):
    """ln I_x(a, b) in log scale; accurate for I_x down to the underflow floor."""
    cdef double q
    if not (0.0 <= x <= 1.0 and a > 0.0 and b > 0.0):
        return NAN
    if x == 0.0:
        return -INFINITY
    if x == 1.0:
        return 0.0
    if x < (a + 1.0) / (a + b + 2.0):
        return _ln_inc_beta_direct(x, a, b)
    q = exp(_ln_inc_beta_direct(1.0 - x, b, a))
    if not q < 1.0:
        return NAN
    return log1p(-q)


# ---------------------------------------------------------------------------
# Gauss hypergeometric 2F1
# ---------------------------------------------------------------------------

cdef double _hyp2f1_series(double a, double b, double c, double z):
    cdef double term = 1.0
    cdef double total = 1.0
    cdef int n
    for n in range(_MAX_2F1_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (1.0 + n)) * z
        total += term
        if fabs(term) <= fabs(total) * _EPS:
            return total
    return NAN


cpdef double gauss_2f1(double a, double b, double c, double z):
    """2F1(a, b; c; z) for the survival-ratio regime c > b > 0, z <= 0.

    The power series is summed directly for z in (-0.5, 0]; for z <= -0.5 the
    Pfaff transformation z -> z/(z-1) maps the argument into (0, 1) first.
    The direct-series window stops at -0.5 rather than -1 because alternating
    sums with large parameter values lose too many digits near z = -1.
    """
    cdef double w, s
    if not (c > b > 0.0) or z > 0.0 or isnan(a) or isnan(z):
        return NAN
    if z == 0.0:
        return 1.0
    if z > -0.5:
        return _hyp2f1_series(a, b, c, z)
    w = z / (z - 1.0)
    s = _hyp2f1_series(c - a, b, c, w)
    if isnan(s):
        return NAN
    return exp(-b * log1p(-z)) * s


cpdef double ln_gauss_2f1(double a, double b, double c, double z):
    """ln 2F1(a, b; c; z), same regime as gauss_2f1 (the value is positive there)."""
    cdef double w, s
    if not (c > b > 0.0) or z > 0.0 or isnan(a) or isnan(z):
        return NAN
    if z == 0.0:
        return 0.0
    if z > -0.5:
        s = _hyp2f1_series(a, b, c, z)
        if isnan(s) or s <= 0.0:
            return NAN
        return log(s)
    w = z / (z - 1.0)
    s = _hyp2f1_series(c - a, b, c, w)
    if isnan(s) or s <= 0.0:
        return NAN
    return -b * log1p(-z) + log(s)


# ---------------------------------------------------------------------------
# standard normal
# ---------------------------------------------------------------------------

cpdef double std_normal_cdf(double z):
    """Standard normal CDF via the complementary error function."""
    if isnan(z):
        return NAN
    return 0.5 * erfc(-z / _SQRT2)


cpdef double ln_std_normal_sf(double z):
    """ln(1 - Phi(z)); asymptotic tail expansion once erfc would underflow."""
    cdef double zz, corr
    if isnan(z):
        return NAN
    if z < 37.0:
        return log(0.5 * erfc(z / _SQRT2))
    zz = z * z
    corr = -1.0 / zz + 3.0 / (zz * zz) - 15.0 / (zz * zz * zz) \
        + 105.0 / (zz * zz * zz * zz)
    return -0.5 * zz - log(z * _SQRT_2PI) + log1p(corr)


# Acklam's rational approximation to the normal quantile, then one Halley step.
cdef double[6] _QN_A = [-3.969683028665376e+01, 2.209460984245205e+02,
                        -2.759285104469687e+02, 1.383577518672690e+02,
                        -3.066479806614716e+01, 2.506628277459239e+00]
cdef double[5] _QN_B = [-5.447609879822406e+01, 1.615858368580409e+02,
                        -1.556989798598866e+02, 6.680131188771972e+01,
                        -1.328068155288572e+01]
cdef double[6] _QN_C = [-7.784894002430293e-03, -3.223964580411365e-01,
                        -2.400758277161838e+00, -2.549732539343734e+00,
                        4.374664141464968e+00, 2.938163982698783e+00]
cdef double[4] _QN_D = [7.784695709041462e-03, 3.224671290700398e-01,
                        2.445134137142996e+00, 3.754408661907416e+00]
cdef double _QN_PLOW = 0.02425


cpdef double std_normal_quantile(double p):
    """Standard normal quantile; p=0 -> -inf, p=1 -> +inf, outside [0,1] -> NaN."""
    cdef double q, r, x, e, u
    if isnan(p) or p < 0.0 or p > 1.0:
        return NAN
    if p == 0.0:
        return -INFINITY
    if p == 1.0:
        return INFINITY
    if p < _QN_PLOW:
        q = sqrt(-2.0 * log(p))
        x = ((((((_QN_C[0] * q + _QN_C[1]) * q + _QN_C[2]) * q + _QN_C[3]) * q
               + _QN_C[4]) * q + _QN_C[5])
             / ((((_QN_D[0] * q + _QN_D[1]) * q + _QN_D[2]) * q + _QN_D[3]) * q + 1.0))
    elif p <= 1.0 - _QN_PLOW:
        q = p - 0.5
        r = q * q
        x = ((((((_QN_A[0] * r + _QN_A[1]) * r + _QN_A[2]) * r + _QN_A[3]) * r
               + _QN_A[4]) * r + _QN_A[5]) * q
             / (((((_QN_B[0] * r + _QN_B[1]) * r + _QN_B[2]) * r + _QN_B[3]) * r
                 + _QN_B[4]) * r + 1.0))
    else:
        q = sqrt(-2.0 * log1p(-p))
        x = -((((((_QN_C[0] * q + _QN_C[1]) * q + _QN_C[2]) * q + _QN_C[3]) * q
                + _QN_C[4]) * q + _QN_C[5])
              / ((((_QN_D[0] * q + _QN_D[1]) * q + _QN_D[2]) * q + _QN_D[3]) * q + 1.0))
    # Halley refinement; skipped in the far tails where exp(x*x/2) overflows.
    # The residual is formed on whichever side of 0.5 keeps it cancellation
    # free (1-p is exact for p >= 0.5).
    if x * x < 1400.0:
        if p <= 0.5:
            e = 0.5 * erfc(-x / _SQRT2) - p
        else:
            e = (1.0 - p) - 0.5 * erfc(x / _SQRT2)
        u = e * _SQRT_2PI * exp(x * x / 2.0)
        x -= u / (1.0 + x * u / 2.0)
    return x
