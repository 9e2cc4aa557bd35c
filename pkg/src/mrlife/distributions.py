"""Parametric survival distributions with closed-form mean residual life.

Ten families are supported, keyed by the tag strings used throughout the
package and the CLI::

    exponential    rate
    weibull        shape, scale
    gamma          shape, rate   (shape, scale also accepted)
    gompertz       shape, rate
    lnorm          meanlog, sdlog
    llogis         shape, scale
    gengamma.orig  shape, scale, k
    gengamma       mu, sigma, Q
    genf.orig      mu, sigma, s1, s2
    genf           mu, sigma, Q, P

Every distribution object exposes ``pdf``, ``cdf``, ``survival``,
``ln_survival``, ``quantile``, ``isf``, ``mean`` and ``mrl``.  The mean
residual life ``mrl(x)`` is evaluated in closed form through the
special-function kernels, in log space wherever the survival ratios can
overflow; when the survival probability at ``x`` underflows to zero the
result is NaN (the same degenerate rows a double-precision reference
produces).  Distribution objects are immutable after construction and
all methods are pure, so instances are safe to share across threads.
"""
import math
from typing import NamedTuple

from . import specfun as sf
from ._integrate import conditional_survival_integral

_INF = float("inf")
_NAN = float("nan")
_LN_2PI = 1.8378770664093454836


class ParameterError(ValueError):
    """Bad distribution tag, parameter names, or parameter values."""

    def __init__(self, message, code="bad_parameters"):
        super().__init__(message)
        self.code = code


def _log(x):
    """log with C semantics: log(0) = -inf, log(x<0) = NaN."""
    if x > 0.0:
        return math.log(x)
    if x == 0.0:
        return -_INF
    return _NAN


def _exp(y):
    """exp that saturates to inf/0 instead of raising."""
    if y != y:
        return _NAN
    if y > 709.0:
        return _INF
    if y < -746.0:
        return 0.0
    return math.exp(y)


def _softplus(y):
    """log(1 + exp(y)) without overflow."""
    if y > 0.0:
        return y + math.log1p(_exp(-y))
    return math.log1p(_exp(y))


class Distribution:
    """Shared machinery for the parametric families."""

    tag = ""
    param_names = ()

    def params(self):
        """Named parameter values, in canonical order."""
        return {name: getattr(self, self._attr(name)) for name in self.param_names}

    @staticmethod
    def _attr(name):
        return name.lower()

    def __repr__(self):
        inner = ", ".join(f"{k}={v!r}" for k, v in self.params().items())
        return f"{type(self).__name__}({inner})"

    def __eq__(self, other):
        return type(other) is type(self) and other.params() == self.params()

    def __hash__(self):
        return hash((self.tag, tuple(self.params().items())))

    # -- densities and probabilities ------------------------------------

    def pdf(self, t):
        """Density at t >= 0."""
        if t < 0.0:
            raise ValueError("t must be nonnegative")
        return _exp(self.ln_pdf(t))

    def cdf(self, t):
        """P(T <= t); exact complement of survival()."""
        if t < 0.0:
            raise ValueError("t must be nonnegative")
        return 1.0 - self.survival(t)

    def survival(self, t):
        raise NotImplementedError

    def ln_survival(self, t):
        raise NotImplementedError

    def ln_pdf(self, t):
        raise NotImplementedError

    # -- quantiles -------------------------------------------------------

    def quantile(self, p):
        """Inverse CDF; p=0 gives 0 and p=1 gives +inf."""
        if not 0.0 <= p <= 1.0 or p != p:
            raise ValueError("p must lie in [0, 1]")
        if p == 0.0:
            return 0.0
        if p == 1.0:
            return _INF
        return self._isf_from_ln(math.log1p(-p))

    def isf(self, s):
        """Inverse survival function: the t with survival(t) = s."""
        if not 0.0 <= s <= 1.0 or s != s:
            raise ValueError("s must lie in [0, 1]")
        if s == 1.0:
            return 0.0
        if s == 0.0:
            return _INF
        return self._isf_from_ln(math.log(s))

    def _pivot(self):
        """Positive scale guess used to bracket quantile root-finds."""
        return 1.0

    def _isf_from_ln(self, ln_target):
        # Bracketing bisection on ln(t): ln_survival is monotone decreasing.
        lo = hi = self._pivot()
        while self.ln_survival(hi) > ln_target:
            hi *= 8.0
            if hi > 1e300:
                return _INF
        while self.ln_survival(lo) <= ln_target:
            lo /= 8.0
            if lo < 1e-300:
                return 0.0
        ln_lo, ln_hi = math.log(lo), math.log(hi)
        for _ in range(200):
            ln_mid = 0.5 * (ln_lo + ln_hi)
            if self.ln_survival(math.exp(ln_mid)) > ln_target:
                ln_lo = ln_mid
            else:
                ln_hi = ln_mid
            if ln_hi - ln_lo < 4e-16 * max(1.0, abs(ln_hi)):
                break
        return math.exp(0.5 * (ln_lo + ln_hi))

    # -- moments and residual life ----------------------------------------

    def mean(self):
        raise NotImplementedError

    def mrl(self, x):
        """Mean residual life at x >= 0; NaN once survival(x) underflows."""
        if x < 0.0 or x != x:
            raise ValueError("x must be nonnegative")
        if self.survival(x) <= 0.0:
            return _NAN
        return self._mrl(x)

    def _mrl(self, x):
        raise NotImplementedError


class Exponential(Distribution):
    """Constant-hazard lifetime; the memoryless baseline."""

    tag = "exponential"
    param_names = ("rate",)

    def __init__(self, rate):
        self.rate = rate

    def ln_pdf(self, t):
        return math.log(self.rate) - self.rate * t

    def survival(self, t):
        return _exp(-self.rate * t)

    def ln_survival(self, t):
        return -self.rate * t

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or p != p:
            raise ValueError("p must lie in [0, 1]")
        if p == 1.0:
            return _INF
        return -math.log1p(-p) / self.rate

    def isf(self, s):
        if not 0.0 <= s <= 1.0 or s != s:
            raise ValueError("s must lie in [0, 1]")
        return -_log(s) / self.rate

    def mean(self):
        return 1.0 / self.rate

    def _mrl(self, x):
        return 1.0 / self.rate


class Weibull(Distribution):
    """Weibull lifetime with shape alpha and scale lambda."""

    tag = "weibull"
    param_names = ("shape", "scale")

    def __init__(self, shape, scale):
        self.shape = shape
        self.scale = scale

    def _cum_hazard(self, t):
        return _exp(self.shape * _log(t / self.scale))

    def ln_pdf(self, t):
        ln_ratio = _log(t / self.scale)
        return (math.log(self.shape / self.scale) + (self.shape - 1.0) * ln_ratio
                - _exp(self.shape * ln_ratio))

    def survival(self, t):
        return _exp(-self._cum_hazard(t))

    def ln_survival(self, t):
        return -self._cum_hazard(t)

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or p != p:
            raise ValueError("p must lie in [0, 1]")
        if p == 1.0:
            return _INF
        return self.scale * (-math.log1p(-p)) ** (1.0 / self.shape)

    def isf(self, s):
        if not 0.0 <= s <= 1.0 or s != s:
            raise ValueError("s must lie in [0, 1]")
        if s == 0.0:
            return _INF
        return self.scale * (-_log(s)) ** (1.0 / self.shape)

    def mean(self):
        return _exp(math.log(self.scale) + sf.ln_gamma(1.0 + 1.0 / self.shape))

    def _mrl(self, x):
        # (scale/shape) * Gamma((x/scale)^shape, 1/shape) * exp((x/scale)^shape)
        z = self._cum_hazard(x)
        return _exp(math.log(self.scale / self.shape)
                    + sf.ln_upper_inc_gamma(z, 1.0 / self.shape) + z)


class Gamma(Distribution):
    """Gamma lifetime with shape alpha and rate lambda (scale = 1/rate)."""

    tag = "gamma"
    param_names = ("shape", "rate")

    def __init__(self, shape, rate):
        self.shape = shape
        self.rate = rate

    def ln_pdf(self, t):
        return (self.shape * math.log(self.rate) + (self.shape - 1.0) * _log(t)
                - self.rate * t - sf.ln_gamma(self.shape))

    def survival(self, t):
        return sf.reg_upper_gamma(self.rate * t, self.shape)

    def ln_survival(self, t):
        return sf.ln_upper_inc_gamma(self.rate * t, self.shape) - sf.ln_gamma(self.shape)

    def mean(self):
        return self.shape / self.rate

    def _pivot(self):
        return self.shape / self.rate

    def _mrl(self, x):
        # Gamma(rate*x, shape+1) / (rate * Gamma(rate*x, shape)) - x
        z = self.rate * x
        return _exp(sf.ln_upper_inc_gamma(z, self.shape + 1.0)
                    - sf.ln_upper_inc_gamma(z, self.shape)
                    - math.log(self.rate)) - x


class Gompertz(Distribution):
    """Gompertz lifetime; shape is the aging rate and may be any real."""

    tag = "gompertz"
    param_names = ("shape", "rate")

    def __init__(self, shape, rate):
        self.shape = shape
        self.rate = rate

    def ln_pdf(self, t):
        if self.shape == 0.0:
            return math.log(self.rate) - self.rate * t
        return math.log(self.rate) + self.shape * t + self.ln_survival(t)

    def survival(self, t):
        return _exp(self.ln_survival(t))

    def ln_survival(self, t):
        if self.shape == 0.0:
            return -self.rate * t
        arg = self.shape * t
        growth = math.expm1(arg) if arg < 709.0 else _INF
        return -(self.rate / self.shape) * growth

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or p != p:
            raise ValueError("p must lie in [0, 1]")
        if p == 1.0:
            return _INF
        return self._isf_closed(math.log1p(-p))

    def isf(self, s):
        if not 0.0 <= s <= 1.0 or s != s:
            raise ValueError("s must lie in [0, 1]")
        if s == 0.0:
            return _INF
        return self._isf_closed(_log(s))

    def _isf_closed(self, ln_s):
        if self.shape == 0.0:
            return -ln_s / self.rate
        arg = 1.0 - (self.shape / self.rate) * ln_s
        if arg <= 0.0:
            # shape < 0 leaves a survival plateau the target never crosses
            return _INF
        return math.log(arg) / self.shape

    def mean(self):
        if self.shape < 0.0:
            return _NAN  # P(T = inf) > 0: no finite mean
        if self.shape == 0.0:
            return 1.0 / self.rate
        return sf.exp_integral_e1_scaled(self.rate / self.shape) / self.shape

    def _mrl(self, x):
        # exp(z) * E1(z) / shape with z = (rate/shape) * exp(shape*x)
        if self.shape < 0.0:
            return _NAN
        if self.shape == 0.0:
            return 1.0 / self.rate
        z = (self.rate / self.shape) * _exp(self.shape * x)
        return sf.exp_integral_e1_scaled(z) / self.shape


class LogNormal(Distribution):
    """Log-normal lifetime parameterized by meanlog and sdlog."""

    tag = "lnorm"
    param_names = ("meanlog", "sdlog")

    def __init__(self, meanlog, sdlog):
        self.meanlog = meanlog
        self.sdlog = sdlog

    def _w(self, t):
        return (_log(t) - self.meanlog) / self.sdlog

    def ln_pdf(self, t):
        w = self._w(t)
        if w == -_INF:
            return -_INF
        return -_log(t) - math.log(self.sdlog) - 0.5 * _LN_2PI - 0.5 * w * w

    def survival(self, t):
        if t <= 0.0:
            return 1.0
        return sf.std_normal_cdf(-self._w(t))

    def ln_survival(self, t):
        if t <= 0.0:
            return 0.0
        return sf.ln_std_normal_sf(self._w(t))

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or p != p:
            raise ValueError("p must lie in [0, 1]")
        return _exp(self.meanlog + self.sdlog * sf.std_normal_quantile(p))

    def isf(self, s):
        if not 0.0 <= s <= 1.0 or s != s:
            raise ValueError("s must lie in [0, 1]")
        return _exp(self.meanlog - self.sdlog * sf.std_normal_quantile(s))

    def mean(self):
        return _exp(self.meanlog + 0.5 * self.sdlog * self.sdlog)

    def _mrl(self, x):
        if x == 0.0:
            return self.mean()
        shifted = (math.log(x) - (self.meanlog + self.sdlog * self.sdlog)) / self.sdlog
        return _exp(self.meanlog + 0.5 * self.sdlog * self.sdlog
                    + sf.ln_std_normal_sf(shifted)
                    - sf.ln_std_normal_sf(self._w(x))) - x


class LogLogistic(Distribution):
    """Log-logistic lifetime; the mean exists only for shape > 1."""

    tag = "llogis"
    param_names = ("shape", "scale")

    def __init__(self, shape, scale):
        self.shape = shape
        self.scale = scale

    def _ln_odds(self, t):
        return self.shape * _log(t / self.scale)

    def ln_pdf(self, t):
        ln_ratio = _log(t / self.scale)
        return (math.log(self.shape / self.scale) + (self.shape - 1.0) * ln_ratio
                - 2.0 * _softplus(self.shape * ln_ratio))

    def survival(self, t):
        return _exp(self.ln_survival(t))

    def ln_survival(self, t):
        return -_softplus(self._ln_odds(t))

    def quantile(self, p):
        if not 0.0 <= p <= 1.0 or p != p:
            raise ValueError("p must lie in [0, 1]")
        if p == 1.0:
            return _INF
        return _exp(math.log(self.scale) + (_log(p) - math.log1p(-p)) / self.shape)

    def isf(self, s):
        if not 0.0 <= s <= 1.0 or s != s:
            raise ValueError("s must lie in [0, 1]")
        if s == 0.0:
            return _INF
        return _exp(math.log(self.scale) + (math.log1p(-s) - _log(s)) / self.shape)

    def _ln_moment_factor(self):
        return (math.log(self.scale) + sf.ln_gamma(1.0 + 1.0 / self.shape)
                + sf.ln_gamma(1.0 - 1.0 / self.shape))

    def mean(self):
        if self.shape <= 1.0:
            return _NAN
        return _exp(self._ln_moment_factor())

    def _mrl(self, x):
        # scale*G(1+1/a)*G(1-1/a) * [1 - I_z(1+1/a, 1-1/a)] / S(x) - x, with the
        # bracket evaluated through its complement I_{S(x)}(1-1/a, 1+1/a).
        if self.shape <= 1.0:
            return _NAN
        if x == 0.0:
            return self.mean()
        inv = 1.0 / self.shape
        ln_sx = self.ln_survival(x)
        ln_tail = sf.ln_reg_inc_beta(self.survival(x), 1.0 - inv, 1.0 + inv)
        return _exp(self._ln_moment_factor() + ln_tail - ln_sx) - x


class GenGammaOrig(Distribution):
    """Three-parameter generalized gamma (shape b, scale a, k)."""

    tag = "gengamma.orig"
    param_names = ("shape", "scale", "k")

    def __init__(self, shape, scale, k):
        self.shape = shape
        self.scale = scale
        self.k = k

    def _z(self, t):
        return _exp(self.shape * _log(t / self.scale))

    def ln_pdf(self, t):
        bk = self.shape * self.k
        return (math.log(self.shape) + (bk - 1.0) * _log(t) - bk * math.log(self.scale)
                - sf.ln_gamma(self.k) - self._z(t))

    def survival(self, t):
        return sf.reg_upper_gamma(self._z(t), self.k)

    def ln_survival(self, t):
        return sf.ln_upper_inc_gamma(self._z(t), self.k) - sf.ln_gamma(self.k)

    def _pivot(self):
        return self.scale

    def mean(self):
        return _exp(math.log(self.scale) + sf.ln_gamma(self.k + 1.0 / self.shape)
                    - sf.ln_gamma(self.k))

    def _mrl(self, x):
        # scale * Gamma((x/scale)^shape, k + 1/shape) / Gamma((x/scale)^shape, k) - x
        z = self._z(x)
        return _exp(math.log(self.scale)
                    + sf.ln_upper_inc_gamma(z, self.k + 1.0 / self.shape)
                    - sf.ln_upper_inc_gamma(z, self.k)) - x


class GenGamma(Distribution):
    """Log-location generalized gamma (mu, sigma, Q), Q != 0.

    For Q > 0 the family coincides with ``gengamma.orig`` under the
    parameter map shape=Q/sigma, scale=exp(mu - log(Q^-2)*sigma/Q),
    k=Q^-2, and the residual-life closed form is evaluated through that
    representation.  For Q < 0 there is no such map; the mean is still
    available in closed form but mrl(x > 0) falls back to adaptive
    quadrature of the survival curve.
    """

    tag = "gengamma"
    param_names = ("mu", "sigma", "Q")

    def __init__(self, mu, sigma, q):
        self.mu = mu
        self.sigma = sigma
        self.q = q
        self._k = q ** -2
        self._orig = None
        if q > 0.0:
            shape, scale, k = convert_gengamma_to_orig(mu, sigma, q)
            self._orig = GenGammaOrig(shape, scale, k)

    def _z(self, t):
        w = (_log(t) - self.mu) / self.sigma
        return self._k * _exp(self.q * w)

    def ln_pdf(self, t):
        w = (_log(t) - self.mu) / self.sigma
        qw = self.q * w
        return (math.log(abs(self.q)) + self._k * math.log(self._k)
                - sf.ln_gamma(self._k) - math.log(self.sigma) - _log(t)
                + self._k * (qw - _exp(qw)))

    def survival(self, t):
        if t <= 0.0:
            return 1.0
        z = self._z(t)
        if self.q > 0.0:
            return sf.reg_upper_gamma(z, self._k)
        return sf.reg_lower_gamma(z, self._k)

    def ln_survival(self, t):
        if t <= 0.0:
            return 0.0
        z = self._z(t)
        if self.q > 0.0:
            return sf.ln_upper_inc_gamma(z, self._k) - sf.ln_gamma(self._k)
        return sf.ln_lower_inc_gamma(z, self._k) - sf.ln_gamma(self._k)

    def _pivot(self):
        return _exp(self.mu)

    def mean(self):
        # exp(mu) * (Q^2)^(sigma/Q) * Gamma(k + sigma/Q) / Gamma(k)
        g = self._k + self.sigma / self.q
        if g <= 0.0:
            return _NAN
        return _exp(self.mu + 2.0 * (self.sigma / self.q) * math.log(abs(self.q))
                    + sf.ln_gamma(g) - sf.ln_gamma(self._k))

    def _mrl(self, x):
        if self._orig is not None:
            return self._orig._mrl(x)
        if x == 0.0:
            return self.mean()
        value, converged = conditional_survival_integral(self, x)
        return value if converged else _NAN


class GenFOrig(Distribution):
    """Four-parameter generalized F (mu, sigma, s1, s2).

    The residual-life closed form runs through the Gauss 2F1 kernel and
    is undefined (NaN) whenever s2 <= sigma, where the distribution has
    no mean.
    """

    tag = "genf.orig"
    param_names = ("mu", "sigma", "s1", "s2")

    def __init__(self, mu, sigma, s1, s2):
        self.mu = mu
        self.sigma = sigma
        self.s1 = s1
        self.s2 = s2

    def _ln_u(self, t):
        return (-self.mu / self.sigma + math.log(self.s1 / self.s2)
                + _log(t) / self.sigma)

    def ln_pdf(self, t):
        ln_u = self._ln_u(t)
        return (-math.log(self.sigma) - _log(t) - sf.ln_beta(self.s1, self.s2)
                + self.s1 * ln_u - (self.s1 + self.s2) * _softplus(ln_u))

    def _upper_beta_arg(self, t):
        # 1 - u/(1+u) = 1/(1+u), computed without cancellation
        u = _exp(self._ln_u(t))
        if u == _INF:
            return 0.0
        return 1.0 / (1.0 + u)

    def survival(self, t):
        if t <= 0.0:
            return 1.0
        return sf.reg_inc_beta(self._upper_beta_arg(t), self.s2, self.s1)

    def ln_survival(self, t):
        if t <= 0.0:
            return 0.0
        return sf.ln_reg_inc_beta(self._upper_beta_arg(t), self.s2, self.s1)

    def _pivot(self):
        return _exp(self.mu)

    def mean(self):
        # exp(mu) * (s2/s1)^sigma * B(s1+sigma, s2-sigma) / B(s1, s2)
        if self.s2 <= self.sigma:
            return _NAN
        return _exp(self.mu + self.sigma * math.log(self.s2 / self.s1)
                    + sf.ln_beta(self.s1 + self.sigma, self.s2 - self.sigma)
                    - sf.ln_beta(self.s1, self.s2))

    def _ln_2f1_term(self, ln_c):
        # ln 2F1(s1+s2, s2-sigma; s2-sigma+1; -1/C).  Once the capped series
        # declines (C very small), use the exact c = b+1 reduction to the
        # incomplete beta: 2F1 = b*C^b*B(b, s1+sigma)*I_{1/(1+C)}(b, s1+sigma).
        b = self.s2 - self.sigma
        c_val = _exp(ln_c)
        z = -_exp(-ln_c)
        value = sf.ln_gauss_2f1(self.s1 + self.s2, b, b + 1.0, z)
        if value == value:
            return value
        return (math.log(b) + b * ln_c + sf.ln_beta(b, self.s1 + self.sigma)
                + sf.ln_reg_inc_beta(1.0 / (1.0 + c_val), b, self.s1 + self.sigma))

    def _mrl(self, x):
        if self.s2 <= self.sigma:
            return _NAN
        if x == 0.0:
            return self.mean()
        ln_c = self._ln_u(x)
        ln_num = ((self.sigma - self.s2) * ln_c - math.log(self.s2 - self.sigma)
                  + self._ln_2f1_term(ln_c) - sf.ln_beta(self.s1, self.s2))
        return _exp(self.mu + self.sigma * math.log(self.s2 / self.s1)
                    + ln_num - self.ln_survival(x)) - x


class GenF(Distribution):
    """Generalized F in the (mu, sigma, Q, P) parameterization, P > 0."""

    tag = "genf"
    param_names = ("mu", "sigma", "Q", "P")

    def __init__(self, mu, sigma, q, p):
        self.mu = mu
        self.sigma = sigma
        self.q = q
        self.p = p
        om, os, s1, s2 = convert_genf_to_orig(mu, sigma, q, p)
        self._orig = GenFOrig(om, os, s1, s2)
        self._delta = math.sqrt(q * q + 2.0 * p)

    def ln_pdf(self, t):
        # direct density: delta/(sigma*t*B(s1,s2)) * u^s1 / (1+u)^(s1+s2)
        d = self._orig
        ln_u = (-self.mu * self._delta / self.sigma + math.log(d.s1 / d.s2)
                + (self._delta / self.sigma) * _log(t))
        return (math.log(self._delta) - math.log(self.sigma) - _log(t)
                - sf.ln_beta(d.s1, d.s2) + d.s1 * ln_u
                - (d.s1 + d.s2) * _softplus(ln_u))

    def survival(self, t):
        return self._orig.survival(t)

    def ln_survival(self, t):
        return self._orig.ln_survival(t)

    def _pivot(self):
        return _exp(self.mu)

    def mean(self):
        return self._orig.mean()

    def _mrl(self, x):
        return self._orig._mrl(x)


class GenGammaOrigParams(NamedTuple):
    shape: float
    scale: float
    k: float


class GenGammaParams(NamedTuple):
    mu: float
    sigma: float
    q: float


class GenFOrigParams(NamedTuple):
    mu: float
    sigma: float
    s1: float
    s2: float


def convert_gengamma_to_orig(mu, sigma, q):
    """Map (mu, sigma, Q) with Q > 0 to the (shape, scale, k) family."""
    if not q > 0.0:
        raise ParameterError(
            "unsupported conversion: Q must be > 0 to map gengamma onto "
            "gengamma.orig", code="unsupported_conversion")
    if not sigma > 0.0:
        raise ParameterError("sigma must be > 0")
    shape = q / sigma
    scale = math.exp(mu - math.log(q ** -2) * sigma / q)
    k = q ** -2
    return GenGammaOrigParams(shape, scale, k)


def convert_gengamma_from_orig(shape, scale, k):
    """Map (shape, scale, k) back to (mu, sigma, Q); inverse of the above."""
    if not (shape > 0.0 and scale > 0.0 and k > 0.0):
        raise ParameterError("shape, scale and k must all be > 0")
    mu = math.log(scale) + math.log(k) / shape
    sigma = 1.0 / (shape * math.sqrt(k))
    q = 1.0 / math.sqrt(k)
    return GenGammaParams(mu, sigma, q)


def convert_genf_to_orig(mu, sigma, q, p):
    """Map (mu, sigma, Q, P) with P > 0 to the (mu, sigma, s1, s2) family."""
    if not p > 0.0:
        raise ParameterError("P must be > 0", code="bad_parameters")
    if not sigma > 0.0:
        raise ParameterError("sigma must be > 0")
    tmp = q * q + 2.0 * p
    delta = math.sqrt(tmp)
    s1 = 2.0 / (tmp + q * delta)
    s2 = 2.0 / (tmp - q * delta)
    return GenFOrigParams(mu, sigma / delta, s1, s2)


_CLASSES = (Exponential, Weibull, Gamma, Gompertz, LogNormal, LogLogistic,
            GenGammaOrig, GenGamma, GenFOrig, GenF)
DISTRIBUTION_TAGS = tuple(cls.tag for cls in _CLASSES)
_BY_TAG = {cls.tag: cls for cls in _CLASSES}
PARAM_NAMES = {cls.tag: cls.param_names for cls in _CLASSES}

# parameters that must be strictly positive at construction; gompertz shape
# is a signed aging rate and deliberately absent
POSITIVE_PARAMS = {
    "exponential": ("rate",),
    "weibull": ("shape", "scale"),
    "gamma": ("shape", "rate"),
    "gompertz": ("rate",),
    "lnorm": ("sdlog",),
    "llogis": ("shape", "scale"),
    "gengamma.orig": ("shape", "scale", "k"),
    "gengamma": ("sigma",),
    "genf.orig": ("sigma", "s1", "s2"),
    "genf": ("sigma", "P"),
}


def _expected_names_message(tag):
    names = list(_BY_TAG[tag].param_names)
    if tag == "gamma":
        listed = "shape and rate (or shape and scale)"
    elif len(names) == 1:
        listed = names[0]
    else:
        listed = ", ".join(names[:-1]) + " and " + names[-1]
    return f"incorrect parameters entered. Parameters for {tag} are {listed}"


def make_distribution(tag, params):
    """Build a distribution from its tag and a name -> value mapping.

    Parameter names must match the canonical set for the tag (gamma also
    accepts shape/scale, normalized internally to shape/rate), otherwise
    a ParameterError with an "incorrect parameters entered..." message is
    raised.  Value constraints (positivity, Q != 0, ...) are checked here
    as well so instances are always valid.
    """
    if tag not in _BY_TAG:
        known = ", ".join(DISTRIBUTION_TAGS)
        raise ParameterError(f"unknown distribution '{tag}'; choose one of {known}",
                             code="unknown_distribution")
    cls = _BY_TAG[tag]
    given = dict(params)
    names = set(given)
    if tag == "gamma" and names == {"shape", "scale"}:
        given = {"shape": given["shape"], "rate": 1.0 / given["scale"]}
        names = {"shape", "rate"}
    if names != set(cls.param_names):
        raise ParameterError(_expected_names_message(tag), code="bad_parameter_names")
    for name in cls.param_names:
        value = given[name]
        if not math.isfinite(value):
            raise ParameterError(f"parameter {name} must be finite")
        if name in POSITIVE_PARAMS[tag] and not value > 0.0:
            raise ParameterError(f"parameter {name} must be > 0 for {tag}")
    if tag == "gengamma" and given["Q"] == 0.0:
        raise ParameterError(
            "Q = 0 is not supported for gengamma (the family degenerates to "
            "a log-normal; use lnorm instead)", code="bad_parameters")
    ordered = [given[name] for name in cls.param_names]
    return cls(*ordered)
