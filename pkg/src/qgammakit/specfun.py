"""Certified evaluation of the gamma / q-gamma family.

Every evaluator returns an Enclosure: a double-precision value together with
a certified bound on the truncation error of the defining series or product
(plus a documented, non-rigorous rounding-slop term).  Two independent
evaluation routes exist for the digamma/polygamma functions: the default
recurrence-shift + asymptotic route and a direct-series route with an
integral-comparison tail bracket, used to cross-check the former.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "Enclosure",
    "QParam",
    "TruncationPolicy",
    "LogMeanOrder",
    "DEFAULT_POLICY",
    "EULER_GAMMA",
    "ln_gamma",
    "digamma",
    "digamma_series",
    "polygamma",
    "polygamma_series",
    "q_gamma",
    "q_ln_gamma",
    "q_digamma",
    "q_polygamma",
    "log_mean",
    "kernel_h",
    "kernel_derivative",
    "unit_ball_volume",
]

EULER_GAMMA = 0.5772156649015328606065120900824024
_LN_2PI = math.log(2.0 * math.pi)
_EPS_MACH = 2.220446049250313e-16

# Bernoulli numbers B_2, B_4, ..., B_30 (floats of the exact rationals).
_BERNOULLI_2K = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
)

_LNGAMMA_SHIFT = 20.0
_DIGAMMA_SHIFT = 20.0


@dataclass(frozen=True)
class Enclosure:
    """A computed value with a certified absolute truncation-error bound.

    ``abs_error`` bounds the truncation tail of the defining series plus a
    heuristic rounding-slop term (terms_used * machine epsilon * |value|,
    which is not rigorous for floating point).  ``warn_slow`` is set when a
    q-series needed more than 10**5 terms (q very close to 1).
    """

    value: float
    abs_error: float
    terms_used: int
    warn_slow: bool = False

    def __post_init__(self):
        if self.abs_error < 0.0 or self.terms_used < 0:
            raise ValueError("abs_error and terms_used must be nonnegative")


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule for the certified series evaluators.

    ``eps`` is the relative stopping tolerance, ``max_terms`` a hard term
    budget (exceeding it raises ConvergenceError rather than returning an
    uncertified value), and ``tail_strategy`` the preferred tail certificate
    where a series admits both.
    """

    eps: float = 1e-16
    max_terms: int = 10**6
    tail_strategy: str = "geometric_ratio"  # or "integral_comparison"

    def __post_init__(self):
        if not (0.0 < self.eps < 1.0):
            raise ValueError("eps must lie in (0, 1)")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.tail_strategy not in ("geometric_ratio", "integral_comparison"):
            raise ValueError(f"unknown tail strategy {self.tail_strategy!r}")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class QParam:
    """Deformation parameter q > 0, q != 1, with its branch tag."""

    q: float
    branch: str = field(init=False)

    def __post_init__(self):
        if not math.isfinite(self.q) or self.q <= 0.0 or self.q == 1.0:
            raise DomainError(f"q must be positive, finite and != 1, got {self.q}")
        object.__setattr__(self, "branch", "sub_one" if self.q < 1.0 else "super_one")


@dataclass(frozen=True)
class LogMeanOrder:
    """Order r of the generalized logarithmic mean L_r."""

    r: float


def _require_positive(x, name="x"):
    if not (isinstance(x, (int, float)) and math.isfinite(x)) or x <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {x!r}")


def _as_q(q) -> float:
    if isinstance(q, QParam):
        return q.q
    qf = float(q)
    QParam(qf)  # validates
    return qf


def _slop(terms: int, value: float) -> float:
    return terms * _EPS_MACH * abs(value)


# ---------------------------------------------------------------------------
# classical gamma family
# ---------------------------------------------------------------------------


def _stirling_ln_gamma(y: float, eps: float):
    """Stirling form at y >= 20 with Bernoulli corrections.

    Returns (value, tail_bound, terms).  The correction series alternates,
    so the first omitted term bounds the truncation error.
    """
    base = (y - 0.5) * math.log(y) - y + 0.5 * _LN_2PI
    corr = 0.0
    y2 = y * y
    ypow = y  # y^(2k-1)
    tail = math.inf
    terms = 0
    for k, b2k in enumerate(_BERNOULLI_2K, start=1):
        term = b2k / ((2 * k) * (2 * k - 1) * ypow)
        if k > 1 and abs(term) <= eps * (abs(base) + abs(corr)):
            tail = abs(term)
            break
        corr += term
        ypow *= y2
        terms += 1
    else:
        # table exhausted; certify by the magnitude of the next Bernoulli term
        tail = abs(_BERNOULLI_2K[-1] / ((2 * 15) * (2 * 15 - 1) * ypow))
    return base + corr, tail, terms


def ln_gamma(x: float, policy: TruncationPolicy | None = None) -> Enclosure:
    """ln Gamma(x) for x > 0 via upward recurrence to x >= 20 plus Stirling."""
    policy = policy or DEFAULT_POLICY
    _require_positive(x)
    shift_logs = []
    y = float(x)
    while y < _LNGAMMA_SHIFT:
        shift_logs.append(math.log(y))
        y += 1.0
    val, tail, terms = _stirling_ln_gamma(y, policy.eps)
    if shift_logs:
        val -= math.fsum(shift_logs)
    terms += len(shift_logs)
    return Enclosure(val, tail + _slop(terms + 4, val), terms)


def digamma(x: float, policy: TruncationPolicy | None = None) -> Enclosure:
    """psi(x) for x > 0 via recurrence shift to x >= 20 plus asymptotic tail."""
    policy = policy or DEFAULT_POLICY
    _require_positive(x)
    recips = []
    y = float(x)
    while y < _DIGAMMA_SHIFT:
        recips.append(1.0 / y)
        y += 1.0
    val = math.log(y) - 0.5 / y
    y2 = y * y
    ypow = y2
    corr = 0.0
    tail = math.inf
    terms = 0
    for k, b2k in enumerate(_BERNOULLI_2K, start=1):
        term = b2k / ((2 * k) * ypow)
        if k > 1 and abs(term) <= policy.eps * (abs(val) + abs(corr)):
            tail = abs(term)
            break
        corr -= term
        ypow *= y2
        terms += 1
    else:
        tail = abs(_BERNOULLI_2K[-1]) / (30 * ypow)
    val += corr
    if recips:
        val -= math.fsum(recips)
    terms += len(recips)
    return Enclosure(val, tail + _slop(terms + 4, val), terms)


def digamma_series(x: float, policy: TruncationPolicy | None = None) -> Enclosure:
    """psi(x) from the defining series -gamma + sum(1/(n+1) - 1/(x+n)).

    Independent of the asymptotic route.  The tail is bracketed by integral
    comparison: for the convex, monotone summand f the tail sum over n >= N
    lies between int_N f + f(N)/2 and int_{N-1/2} f.
    """
    policy = policy or DEFAULT_POLICY
    _require_positive(x)
    n_terms = 4000
    n = np.arange(n_terms, dtype=float)
    partial = float(np.sum(1.0 / (n + 1.0) - 1.0 / (x + n)))
    # tail over n >= N of (x-1)/((n+1)(n+x)); sign handled via |x-1| scaling
    N = float(n_terms)

    def f_abs(t):
        return abs(1.0 / (t + 1.0) - 1.0 / (t + x))

    def integral_from(t0):
        # int_{t0}^inf |1/(t+1) - 1/(t+x)| dt = |ln((t0+x)/(t0+1))|
        return abs(math.log((t0 + x) / (t0 + 1.0)))

    lo = integral_from(N) + 0.5 * f_abs(N)
    hi = integral_from(N - 0.5)
    sign = 1.0 if x >= 1.0 else -1.0
    tail_mid = sign * 0.5 * (lo + hi)
    tail_err = 0.5 * (hi - lo) + _EPS_MACH * hi
    val = -EULER_GAMMA + partial + tail_mid
    return Enclosure(val, tail_err + _slop(n_terms, val), n_terms)


def _polygamma_asymptotic(n: int, y: float, eps: float):
    """(-1)^(n+1) psi^(n)(y) asymptotic, y large; first-omitted-term bound."""
    lead = math.factorial(n - 1) / y**n + math.factorial(n) / (2.0 * y ** (n + 1))
    corr = 0.0
    # term_k = B_2k * (2k+n-1)! / ((2k)! * y^(2k+n))
    rising = 1.0  # (2k+n-1)!/( (2k)! (n-1)! ) accumulated below as product
    fact_nm1 = math.factorial(n - 1)
    ypow = y**n
    y2 = y * y
    terms = 0
    tail = None
    prev = math.inf
    for k, b2k in enumerate(_BERNOULLI_2K, start=1):
        # rising = (n)(n+1)...(n+2k-1) / (2k)!
        rising *= (n + 2 * k - 2) * (n + 2 * k - 1) / ((2 * k - 1) * (2 * k))
        ypow *= y2
        term = b2k * rising * fact_nm1 / ypow
        if abs(term) >= prev:
            # asymptotic series started diverging; certify by last added term
            tail = prev
            break
        if abs(term) <= eps * (lead + abs(corr)):
            tail = abs(term)
            break
        corr += term
        prev = abs(term)
        terms += 1
    if tail is None:
        tail = prev if math.isfinite(prev) else abs(corr)
    return lead + corr, tail, terms


def polygamma(n: int, x: float, policy: TruncationPolicy | None = None) -> Enclosure:
    """psi^(n)(x), n >= 1, x > 0; sign convention (-1)^(n+1) psi^(n)(x) > 0."""
    policy = policy or DEFAULT_POLICY
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"derivative order must be an integer >= 1, got {n!r}")
    _require_positive(x)
    threshold = 10.0 + n
    shift_terms = []
    y = float(x)
    while y < threshold:
        shift_terms.append(y ** (-(n + 1)))
        y += 1.0
    mag, tail, terms = _polygamma_asymptotic(n, y, policy.eps)
    if shift_terms:
        mag += math.factorial(n) * math.fsum(shift_terms)
    sign = 1.0 if n % 2 == 1 else -1.0
    val = sign * mag
    terms += len(shift_terms)
    return Enclosure(val, tail + _slop(terms + 4, val), terms)


def polygamma_series(n: int, x: float, policy: TruncationPolicy | None = None) -> Enclosure:
    """psi^(n)(x) from n! * sum 1/(x+k)^(n+1), integral-comparison tail.

    The summand is positive, decreasing and convex, so the tail over k >= K
    lies between int_K f + f(K)/2 and int_{K-1/2} f, both in closed form;
    in particular it never exceeds (1/n)(x+K-1)^(-n).
    """
    policy = policy or DEFAULT_POLICY
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"derivative order must be an integer >= 1, got {n!r}")
    _require_positive(x)
    K = 3000
    k = np.arange(K, dtype=float)
    partial = float(np.sum((x + k) ** (-(n + 1))))
    lo = (x + K) ** (-n) / n + 0.5 * (x + K) ** (-(n + 1))
    hi = (x + K - 0.5) ** (-n) / n
    tail_mid = 0.5 * (lo + hi)
    tail_err = 0.5 * (hi - lo) + _EPS_MACH * hi
    mag = math.factorial(n) * (partial + tail_mid)
    err = math.factorial(n) * tail_err
    sign = 1.0 if n % 2 == 1 else -1.0
    val = sign * mag
    return Enclosure(val, err + _slop(K, val), K)


# ---------------------------------------------------------------------------
# q-gamma family (0 < q < 1 series; q > 1 via the Gamma_{1/q} relation)
# ---------------------------------------------------------------------------

_BLOCK = 256
_BLOCK_MAX = 1 << 17


def _q_ln_gamma_sub1(x: float, q: float, policy: TruncationPolicy):
    """log Gamma_q(x) for 0 < q < 1 from the infinite product, in log space.

    Term n is log((1 - q^(n+1)) / (1 - q^(n+x))); |term_n| <= q^n |q^x - q|
    / (1 - q^(n+min(x,1))), which decays geometrically with ratio q.
    """
    lnq = math.log(q)
    const = (1.0 - x) * math.log1p(-q)
    diff = abs(q**x - q)
    m = min(x, 1.0)
    total = 0.0
    n0 = 0
    block = _BLOCK
    while True:
        hi = min(n0 + block, policy.max_terms)
        n = np.arange(n0, hi, dtype=float)
        a = np.exp((n + 1.0) * lnq)  # q^(n+1)
        b = np.exp((n + x) * lnq)  # q^(n+x)
        total += float(np.sum(np.log1p((b - a) / (1.0 - b))))
        n0 = hi
        block = min(2 * block, _BLOCK_MAX)
        qN = math.exp(n0 * lnq)
        denom = (1.0 - math.exp((n0 + m) * lnq)) * (1.0 - q)
        tail = diff * qN / denom if denom > 0.0 else math.inf
        val = const + total
        if tail <= policy.eps * (1.0 + abs(val)):
            return val, tail, n0
        if n0 >= policy.max_terms:
            raise ConvergenceError(
                f"q-gamma product did not certify within {policy.max_terms} terms "
                f"(x={x}, q={q})"
            )


def q_ln_gamma(x: float, q, policy: TruncationPolicy | None = None) -> Enclosure:
    """log Gamma_q(x) with certified error; handles both q branches."""
    policy = policy or DEFAULT_POLICY
    _require_positive(x)
    qv = _as_q(q)
    if qv < 1.0:
        val, tail, terms = _q_ln_gamma_sub1(x, qv, policy)
    else:
        p = 1.0 / qv
        sub, tail, terms = _q_ln_gamma_sub1(x, p, policy)
        val = (x - 1.0) * (1.0 - 0.5 * x) * math.log(p) + sub
    return Enclosure(val, tail + _slop(terms, val), terms, warn_slow=terms > 10**5)


def q_gamma(x: float, q, policy: TruncationPolicy | None = None) -> Enclosure:
    """Gamma_q(x) for x > 0, q > 0, q != 1 (q = 1 callers use ln_gamma)."""
    enc = q_ln_gamma(x, q, policy)
    val = math.exp(enc.value)
    err = val * math.expm1(enc.abs_error) if enc.abs_error < 1.0 else math.inf
    return Enclosure(val, err + _slop(enc.terms_used, val), enc.terms_used, enc.warn_slow)


def _q_psi_sum(x: float, q: float, n: int, policy: TruncationPolicy):
    """sum_{k>=1} k^n q^(kx) / (1 - q^k) with a geometric tail certificate.

    Successive-term ratio is at most ((K+1)/K)^n * q^x once K terms are
    summed, which drops below 1 past the hump k ~ n/(x ln(1/q)).
    """
    lnq = math.log(q)
    total = 0.0
    k0 = 0
    last = math.inf
    block = _BLOCK
    while True:
        hi = min(k0 + block, policy.max_terms)
        k = np.arange(k0 + 1, hi + 1, dtype=float)
        logs = k * (x * lnq)
        if n:
            logs = logs + n * np.log(k)
        t = np.exp(logs) / (-np.expm1(k * lnq))
        total += float(np.sum(t))
        last = float(t[-1])
        k0 = hi
        block = min(2 * block, _BLOCK_MAX)
        ratio = ((k0 + 1.0) / k0) ** n * math.exp(x * lnq)
        if ratio < 1.0:
            tail = last * ratio / (1.0 - ratio)
            if tail <= policy.eps * (1.0 + total):
                return total, tail, k0
        if k0 >= policy.max_terms:
            raise ConvergenceError(
                f"q-series did not certify within {policy.max_terms} terms "
                f"(x={x}, q={q}, order={n})"
            )


def q_digamma(x: float, q, policy: TruncationPolicy | None = None) -> Enclosure:
    """psi_q(x) = -ln(1-q) + ln q * sum q^(nx)/(1-q^n) for 0 < q < 1.

    For q > 1 the value follows from differentiating the Gamma_{1/q}
    relation: psi_q(x) = (3/2 - x) ln p + psi_p(x) with p = 1/q.
    """
    policy = policy or DEFAULT_POLICY
    _require_positive(x)
    qv = _as_q(q)
    if qv > 1.0:
        p = 1.0 / qv
        s, tail, terms = _q_psi_sum(x, p, 0, policy)
        lnp = math.log(p)
        val = (1.5 - x) * lnp + (-math.log1p(-p) + lnp * s)
        err = abs(lnp) * tail
    else:
        s, tail, terms = _q_psi_sum(x, qv, 0, policy)
        lnq = math.log(qv)
        val = -math.log1p(-qv) + lnq * s
        err = abs(lnq) * tail
    return Enclosure(val, err + _slop(terms, val), terms, warn_slow=terms > 10**5)


def q_polygamma(n: int, x: float, q, policy: TruncationPolicy | None = None) -> Enclosure:
    """psi_q^(n)(x), n >= 1: term-wise derivative of the psi_q series.

    (-1)^(n+1) psi_q^(n)(x) = (-ln q)^(n+1) sum k^n q^(kx)/(1-q^k) > 0.
    For q > 1 only the first derivative picks up the extra -ln p term from
    the branch relation; higher orders agree with the p = 1/q values.
    """
    policy = policy or DEFAULT_POLICY
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"derivative order must be an integer >= 1, got {n!r}")
    _require_positive(x)
    qv = _as_q(q)
    extra = 0.0
    if qv > 1.0:
        p = 1.0 / qv
        if n == 1:
            extra = -math.log(p)
        qv = p
    s, tail, terms = _q_psi_sum(x, qv, n, policy)
    lnq = math.log(qv)
    scale = lnq ** (n + 1)
    val = scale * s + extra
    err = abs(scale) * tail
    return Enclosure(val, err + _slop(terms, val), terms, warn_slow=terms > 10**5)


# ---------------------------------------------------------------------------
# means, kernels, ball volumes
# ---------------------------------------------------------------------------


def log_mean(r, a: float, b: float) -> float:
    """Generalized logarithmic mean L_r(a, b) (a = b returns a by continuity).

    r = -1 is the geometric mean, r = 0 the logarithmic mean, r = 1 the
    identric mean and r = 2 the arithmetic mean; L_r is increasing in r.
    """
    if isinstance(r, LogMeanOrder):
        r = r.r
    _require_positive(a, "a")
    _require_positive(b, "b")
    if a == b:
        return a
    if r == 0.0:
        return (a - b) / (math.log(a) - math.log(b))
    if r == 1.0:
        return math.exp((a * math.log(a) - b * math.log(b)) / (a - b) - 1.0)
    base = (a**r - b**r) / (r * (a - b))
    return base ** (1.0 / (r - 1.0))


def kernel_h(t: float) -> float:
    """t / (1 - e^(-t)) for t > 0 (tends to 1 as t -> 0+)."""
    _require_positive(t, "t")
    return t / (-math.expm1(-t))


_KERNEL_ORDER_CAP = 20


def kernel_derivative(
    n: int, k: int, t: float, policy: TruncationPolicy | None = None
) -> Enclosure:
    """d^k/dt^k of t^n / (1 - e^(-t)) by term-wise differentiation.

    Expands 1/(1-e^(-t)) = sum_m e^(-mt); each t^n e^(-mt) differentiates in
    closed form by the product rule.  The tail over m is geometric with ratio
    at most e^(-t/2) once m >= 2k/t.
    """
    policy = policy or DEFAULT_POLICY
    if not isinstance(n, int) or n < 1 or not isinstance(k, int) or k < 0:
        raise DomainError(f"need integer n >= 1 and k >= 0, got n={n!r}, k={k!r}")
    if k > _KERNEL_ORDER_CAP:
        raise DomainError(f"derivative order {k} exceeds cap {_KERNEL_ORDER_CAP}")
    _require_positive(t, "t")

    jmax = min(k, n)
    coefs = []  # C(k,j) * n!/(n-j)! * t^(n-j) for j = 0..jmax
    for j in range(jmax + 1):
        c = math.comb(k, j) * math.perm(n, j) * t ** (n - j)
        coefs.append(c)
    # m = 0 contribution: d^k/dt^k t^n
    total = math.perm(n, k) * t ** (n - k) if k <= n else 0.0
    m0 = 0
    block = 512
    while True:
        hi = min(m0 + block, policy.max_terms)
        m = np.arange(m0 + 1, hi + 1, dtype=float)
        emt = np.exp(-m * t)
        acc = np.zeros_like(m)
        bound = np.zeros_like(m)
        for j, c in enumerate(coefs):
            mp = m ** (k - j)
            acc += c * ((-1.0) ** (k - j)) * mp
            bound += c * mp
        total += float(np.sum(acc * emt))
        m0 = hi
        block = min(2 * block, _BLOCK_MAX)
        ratio = math.exp(-t) * ((m0 + 2.0) / (m0 + 1.0)) ** k
        if ratio < 1.0:
            pb = sum(c * (m0 + 1.0) ** (k - j) for j, c in enumerate(coefs))
            tail = pb * math.exp(-(m0 + 1.0) * t) / (1.0 - ratio)
            if tail <= policy.eps * (1.0 + abs(total)):
                return Enclosure(total, tail + _slop(m0, total), m0)
        if m0 >= policy.max_terms:
            raise ConvergenceError(
                f"kernel derivative series did not certify within "
                f"{policy.max_terms} terms (n={n}, k={k}, t={t})"
            )


def unit_ball_volume(n: int, policy: TruncationPolicy | None = None) -> Enclosure:
    """Volume of the n-dimensional Euclidean unit ball, pi^(n/2)/Gamma(1+n/2)."""
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"dimension must be a nonnegative integer, got {n!r}")
    enc = ln_gamma(1.0 + 0.5 * n, policy)
    log_val = 0.5 * n * math.log(math.pi) - enc.value
    val = math.exp(log_val)
    err = val * math.expm1(enc.abs_error) if enc.abs_error < 1.0 else math.inf
    return Enclosure(val, err + _slop(enc.terms_used + 2, val), enc.terms_used)
