"""Closed-form constants, bounding functions and auxiliary functions.

Every two-sided bound is computable as a (lower, upper) pair for comparison
against the exact ratio; all ratio/bound arithmetic is done in log space and
exponentiated last, so large arguments and dimensions stay in range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, UsageError
from . import specfun
from .specfun import (
    EULER_GAMMA,
    TruncationPolicy,
    digamma,
    ln_gamma,
    polygamma,
    q_digamma,
    q_ln_gamma,
    q_polygamma,
    log_mean,
)

__all__ = [
    "RATIO_BOUND_METHODS",
    "BoundPair",
    "PolyProductSpec",
    "PolyConstants",
    "BallRatioBounds",
    "ChainTriple",
    "TwoSides",
    "alzer_u",
    "alzer_v",
    "gamma_ratio",
    "ratio_bounds",
    "g_q_function",
    "keckic_vasic_bounds",
    "ball_ratio_bounds",
    "auxiliary_function",
    "poly_product",
    "poly_constants",
    "w_qn",
    "lemma10_lhs_rhs",
    "a_poly",
    "a_poly_root",
    "psi_pair_inequality",
    "cor51_expr",
    "cor5_inequality",
]

RATIO_BOUND_METHODS = (
    "alzer_uv",
    "im_midpoint",
    "psi_average",
    "merkle",
    "kershaw",
    "logmean_refined",
    "geomean_refined",
)

_CLASSICAL_ONLY = ("merkle", "kershaw", "logmean_refined", "geomean_refined")


@dataclass(frozen=True)
class BoundPair:
    lower: float
    upper: float
    method: str = ""

    def __post_init__(self):
        if (
            math.isfinite(self.lower)
            and math.isfinite(self.upper)
            and self.lower > self.upper
        ):
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= value <= self.upper + tol


@dataclass(frozen=True)
class PolyProductSpec:
    """Index tuple p > m >= n > q_idx >= 0 with m + n = p + q_idx, plus c.

    q_idx is the fourth index of the polygamma product family (named so it
    cannot clash with the q-gamma deformation parameter).
    """

    p: int
    m: int
    n: int
    q_idx: int
    c: float

    def __post_init__(self):
        ok = (
            self.p > self.m >= self.n > self.q_idx >= 0
            and self.m + self.n == self.p + self.q_idx
        )
        if not ok:
            raise UsageError(
                f"indices must satisfy p > m >= n > q >= 0 and m+n = p+q, got "
                f"({self.p},{self.m},{self.n},{self.q_idx})"
            )


@dataclass(frozen=True)
class PolyConstants:
    c: float
    d: float


@dataclass(frozen=True)
class BallRatioBounds:
    thm51: BoundPair
    thm51_exact: float
    eq13: BoundPair | None
    eq13_exact: float | None


@dataclass(frozen=True)
class ChainTriple:
    lhs: float
    mid: float
    rhs: float


@dataclass(frozen=True)
class TwoSides:
    lhs: float
    rhs: float


def _check_s(s: float):
    if not (0.0 < s < 1.0):
        raise DomainError(f"s must lie in (0, 1), got {s}")


def _ln_gamma_q(x: float, q: float, policy=None) -> float:
    """log Gamma_q(x) with the classical-gamma reading at q = 1."""
    if q == 1.0:
        return ln_gamma(x, policy).value
    return q_ln_gamma(x, q, policy).value


def _psi_q(x: float, q: float, policy=None) -> float:
    if q == 1.0:
        return digamma(x, policy).value
    return q_digamma(x, q, policy).value


# ---------------------------------------------------------------------------
# sharp two-sided ratio bounds
# ---------------------------------------------------------------------------


def alzer_u(q: float, s: float) -> float:
    """Best lower shift u(q, s) = ln((q^s - q)/((1-s)(1-q))) / ln q."""
    _check_s(s)
    if not (0.0 < q < 1.0):
        raise DomainError(f"q must lie in (0, 1), got {q}")
    arg = (q**s - q) / ((1.0 - s) * (1.0 - q))
    if arg <= 0.0:
        raise DomainError(f"log argument is nonpositive at (q, s)=({q}, {s})")
    return math.log(arg) / math.log(q)


def alzer_v(q: float, s: float, policy: TruncationPolicy | None = None) -> float:
    """Best upper shift v(q, s) = ln(1 - (1-q) Gamma_q(s)^(1/(s-1))) / ln q."""
    _check_s(s)
    if not (0.0 < q < 1.0):
        raise DomainError(f"q must lie in (0, 1), got {q}")
    g = math.exp(q_ln_gamma(s, q, policy).value / (s - 1.0))
    arg = 1.0 - (1.0 - q) * g
    if arg <= 0.0:
        raise DomainError(f"log argument is nonpositive at (q, s)=({q}, {s})")
    return math.log(arg) / math.log(q)


def gamma_ratio(x: float, s: float, q: float, policy=None) -> float:
    """Gamma_q(x+1) / Gamma_q(x+s), computed in log space (q = 1 classical)."""
    specfun._require_positive(x)
    _check_s(s)
    return math.exp(_ln_gamma_q(x + 1.0, q, policy) - _ln_gamma_q(x + s, q, policy))


def _qbracket_log(y: float, q: float) -> float:
    """log((1 - q^y)/(1 - q)); reduces to log(y) as q -> 1."""
    return math.log1p(-(q**y)) - math.log1p(-q)


def ratio_bounds(
    x: float,
    s: float,
    q: float,
    method: str,
    policy: TruncationPolicy | None = None,
    u_override: float | None = None,
    v_override: float | None = None,
) -> BoundPair:
    """Two-sided bracket for Gamma_q(x+1)/Gamma_q(x+s) by the named method.

    Methods 'merkle', 'kershaw', 'logmean_refined' and 'geomean_refined'
    require q = 1.  'alzer_uv' uses the sharp shifted q-bracket (its q -> 1
    limits s/2 and Gamma(s)^(1/(s-1)) at q = 1); 'im_midpoint' and
    'psi_average' are the two sides of the same Hadamard chain for psi_q,
    named for the midpoint upper bound and the endpoint-average lower bound
    respectively.  u_override / v_override exist for sharpness experiments.
    """
    specfun._require_positive(x)
    _check_s(s)
    if method not in RATIO_BOUND_METHODS:
        raise UsageError(f"unknown ratio bound method {method!r}")
    if method in _CLASSICAL_ONLY and q != 1.0:
        raise UsageError(f"method {method!r} requires q = 1, got q={q}")
    if q <= 0.0:
        raise DomainError(f"q must be positive, got {q}")
    one_minus_s = 1.0 - s

    if method == "alzer_uv":
        if q == 1.0:
            u = 0.5 * s if u_override is None else u_override
            v = (
                math.exp(ln_gamma(s, policy).value / (s - 1.0))
                if v_override is None
                else v_override
            )
            return BoundPair(
                (x + u) ** one_minus_s, (x + v) ** one_minus_s, method
            )
        if q > 1.0:
            raise UsageError(
                "alzer_uv is implemented for 0 < q <= 1 (the displayed shift "
                "constants are stated for the sub-one branch)"
            )
        u = alzer_u(q, s) if u_override is None else u_override
        v = alzer_v(q, s, policy) if v_override is None else v_override
        lo = math.exp(one_minus_s * _qbracket_log(x + u, q))
        hi = math.exp(one_minus_s * _qbracket_log(x + v, q))
        return BoundPair(lo, hi, method)

    if method in ("im_midpoint", "psi_average"):
        lo = math.exp(
            0.5 * one_minus_s * (_psi_q(x + 1.0, q, policy) + _psi_q(x + s, q, policy))
        )
        hi = math.exp(one_minus_s * _psi_q(x + 0.5 * (1.0 + s), q, policy))
        return BoundPair(lo, hi, method)

    # classical q = 1 chains: exp((1-s) psi(point)) with method-specific points
    if method == "merkle":
        lo = math.exp(
            0.5 * one_minus_s * (digamma(x + 1.0, policy).value + digamma(x + s, policy).value)
        )
        hi = math.exp(one_minus_s * digamma(x + 0.5 * (1.0 + s), policy).value)
        return BoundPair(lo, hi, method)
    if method == "kershaw":
        lo_pt, hi_pt = x + math.sqrt(s), x + 0.5 * (1.0 + s)
    elif method == "logmean_refined":
        lo_pt = log_mean(0.0, x + 1.0, x + s)
        hi_pt = log_mean(1.0, x + 1.0, x + s)
    else:  # geomean_refined
        lo_pt = math.sqrt((x + 1.0) * (x + s))
        hi_pt = x + 0.5 * (1.0 + s)
    lo = math.exp(one_minus_s * digamma(lo_pt, policy).value)
    hi = math.exp(one_minus_s * digamma(hi_pt, policy).value)
    return BoundPair(lo, hi, method)


def g_q_function(x: float, a: float, b: float, c: float, q: float, policy=None) -> float:
    """Shifted-bracket ratio ((1-q^(x+c))/(1-q))^(a-b) Gamma_q(x+b)/Gamma_q(x+a).

    At q = 1 the prefactor is read as (x+c)^(a-b) with classical Gamma.
    """
    if q <= 0.0:
        raise DomainError(f"q must be positive, got {q}")
    if x <= max(-a, -c):
        raise DomainError(f"x must exceed max(-a, -c) = {max(-a, -c)}, got {x}")
    if q == 1.0:
        pre = (a - b) * math.log(x + c)
    else:
        pre = (a - b) * _qbracket_log(x + c, q)
    return math.exp(pre + _ln_gamma_q(x + b, q, policy) - _ln_gamma_q(x + a, q, policy))


def keckic_vasic_bounds(a: float, b: float, policy=None) -> BoundPair:
    """Keckic-Vasic bracket for Gamma(b)/Gamma(a), b > a > 0 (log space)."""
    specfun._require_positive(a, "a")
    if not (b > a):
        raise UsageError(f"need b > a, got a={a}, b={b}")
    base = a - b
    lo = math.exp((b - 1.0) * math.log(b) - (a - 1.0) * math.log(a) + base)
    hi = math.exp((b - 0.5) * math.log(b) - (a - 0.5) * math.log(a) + base)
    return BoundPair(lo, hi, "keckic_vasic")


def ball_ratio_bounds(n: int, policy=None) -> BallRatioBounds:
    """Closed-form brackets for the unit-ball volume ratios.

    thm51 brackets Omega_n^2/(Omega_{n-1} Omega_{n+1}) for n >= 1; eq13
    brackets (Omega_{n-1}/Omega_n)^2 for n >= 2 (upper attained at n = 2).
    """
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"need an integer n >= 1, got {n!r}")

    def log_omega(m: int) -> float:
        return 0.5 * m * math.log(math.pi) - ln_gamma(1.0 + 0.5 * m, policy).value

    thm51_exact = math.exp(2.0 * log_omega(n) - log_omega(n - 1) - log_omega(n + 1))
    thm51 = BoundPair(
        math.sqrt(1.0 + 1.0 / (n + 1.0)),
        math.sqrt(1.0 + 1.0 / (n + 0.5)),
        "thm51",
    )
    eq13 = None
    eq13_exact = None
    if n >= 2:
        alpha = 1.0
        beta = 2.0 * (math.log(8.0 / math.pi) + EULER_GAMMA - 1.0)
        psi_n = digamma(float(n), policy).value
        eq13 = BoundPair(
            math.exp(alpha / n + psi_n) / (2.0 * math.pi),
            math.exp(beta / n + psi_n) / (2.0 * math.pi),
            "eq13",
        )
        eq13_exact = math.exp(2.0 * (log_omega(n - 1) - log_omega(n)))
    return BallRatioBounds(thm51, thm51_exact, eq13, eq13_exact)


# ---------------------------------------------------------------------------
# auxiliary functions from the application corollaries
# ---------------------------------------------------------------------------

AUXILIARY_IDS = ("f_alpha", "G_c", "f_ILM", "f_qpow", "g_AG", "beta_scaled")


def auxiliary_function(fn_id: str, x: float, params: dict, policy=None) -> float:
    """Evaluate one of the named auxiliary functions.

    f_alpha:     -ln Gamma(x) + (x - 1/2) ln x - x + psi'(x + alpha)/12
    G_c:         ln Gamma(x) - x ln x + x - ln(2 pi)/2 + psi(x + c)/2
    f_ILM:       x^alpha Gamma(x) (e/x)^x
    f_qpow:      (1 - q)^x Gamma_q(x)
    g_AG:        f_qpow(x) f_qpow(x + 2a) / f_qpow(x + a)^2
    beta_scaled: Gamma_q(x) / Gamma_{q^(1/beta)}(beta x)^(1/beta)
    """
    specfun._require_positive(x)
    if fn_id not in AUXILIARY_IDS:
        raise UsageError(f"unknown auxiliary function id {fn_id!r}")

    def need(key):
        if key not in params:
            raise UsageError(f"{fn_id} requires parameter {key!r}")
        return float(params[key])

    if fn_id == "f_alpha":
        alpha = need("alpha")
        if alpha < 0.0:
            raise UsageError("alpha must be >= 0")
        return (
            -ln_gamma(x, policy).value
            + (x - 0.5) * math.log(x)
            - x
            + polygamma(1, x + alpha, policy).value / 12.0
        )
    if fn_id == "G_c":
        c = need("c")
        if c < 0.0:
            raise UsageError("c must be >= 0")
        return (
            ln_gamma(x, policy).value
            - x * math.log(x)
            + x
            - 0.5 * math.log(2.0 * math.pi)
            + 0.5 * digamma(x + c, policy).value
        )
    if fn_id == "f_ILM":
        alpha = need("alpha")
        return math.exp(
            alpha * math.log(x) + ln_gamma(x, policy).value + x - x * math.log(x)
        )
    if fn_id == "f_qpow":
        q = need("q")
        if not (0.0 < q < 1.0):
            raise UsageError("f_qpow requires 0 < q < 1")
        return math.exp(x * math.log1p(-q) + q_ln_gamma(x, q, policy).value)
    if fn_id == "g_AG":
        q, a = need("q"), need("a")
        if not (0.0 < q < 1.0) or a <= 0.0:
            raise UsageError("g_AG requires 0 < q < 1 and a > 0")
        lf = lambda y: y * math.log1p(-q) + q_ln_gamma(y, q, policy).value
        return math.exp(lf(x) + lf(x + 2.0 * a) - 2.0 * lf(x + a))
    # beta_scaled
    q, beta = need("q"), need("beta")
    if q <= 0.0 or q == 1.0 or beta <= 0.0 or beta == 1.0:
        raise UsageError("beta_scaled requires q > 0, q != 1, beta > 0, beta != 1")
    qb = q ** (1.0 / beta)
    return math.exp(
        _ln_gamma_q(x, q, policy) - _ln_gamma_q(beta * x, qb, policy) / beta
    )


# ---------------------------------------------------------------------------
# polygamma product family
# ---------------------------------------------------------------------------


def _psi_or_minus_one(order: int, x: float, policy=None) -> float:
    """psi^(order)(x) with the convention psi^(0) = -1 used by this family."""
    if order == 0:
        return -1.0
    return polygamma(order, x, policy).value


def poly_product(spec: PolyProductSpec, x: float, policy=None) -> float:
    """F(x; c) = (-1)^(m+n) psi^(m) psi^(n) - c (-1)^(p+q) psi^(p) psi^(q)."""
    specfun._require_positive(x)
    a = _psi_or_minus_one(spec.m, x, policy)
    b = _psi_or_minus_one(spec.n, x, policy)
    cc = _psi_or_minus_one(spec.p, x, policy)
    dd = _psi_or_minus_one(spec.q_idx, x, policy)
    sign_mn = -1.0 if (spec.m + spec.n) % 2 else 1.0
    sign_pq = -1.0 if (spec.p + spec.q_idx) % 2 else 1.0
    return sign_mn * a * b - spec.c * sign_pq * cc * dd


def poly_constants(p: int, m: int, n: int, q_idx: int) -> PolyConstants:
    """Critical constants of the polygamma product family.

    c = (m-1)!(n-1)!/((p-1)!(q-1)!) for q >= 1 (drop the (q-1)! at q = 0);
    d = m! n!/(p! q!).  Both lie in (0, 1) under the index constraints.
    """
    PolyProductSpec(p, m, n, q_idx, 0.5)  # validates indices
    num = math.factorial(m - 1) * math.factorial(n - 1)
    if q_idx >= 1:
        c = num / (math.factorial(p - 1) * math.factorial(q_idx - 1))
    else:
        c = num / math.factorial(p - 1)
    d = math.factorial(m) * math.factorial(n) / (
        math.factorial(p) * math.factorial(q_idx)
    )
    return PolyConstants(c, d)


# ---------------------------------------------------------------------------
# refinement machinery for the sharp lower shift
# ---------------------------------------------------------------------------


def w_qn(s: float, q: float, n: int) -> float:
    """w(s) = q^n - q^(ns) + (1-s) q^(n u(q,s)) (1 - q^n); nonnegative."""
    _check_s(s)
    if not (0.0 < q < 1.0):
        raise DomainError(f"q must lie in (0, 1), got {q}")
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    u = alzer_u(q, s)
    return q**n - q ** (n * s) + (1.0 - s) * q ** (n * u) * (1.0 - q**n)


def lemma10_lhs_rhs(s: float, q: float, n: int) -> BoundPair:
    """Power-mean comparison pair; lower = the n-th power side dominates.

    Returns (rhs, lhs) as BoundPair(lower=rhs, upper=lhs) so lower <= upper
    expresses ((q^s-q)/((1-s)(1-q)))^n >= (q^(ns)-q^n)/((1-s)(1-q^n)).
    """
    _check_s(s)
    if not (0.0 < q < 1.0):
        raise DomainError(f"q must lie in (0, 1), got {q}")
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    lhs = ((q**s - q) / ((1.0 - s) * (1.0 - q))) ** n
    rhs = (q ** (n * s) - q**n) / ((1.0 - s) * (1.0 - q**n))
    return BoundPair(rhs, lhs, "lemma10")


# ---------------------------------------------------------------------------
# root structure of the comparison polynomial
# ---------------------------------------------------------------------------


def a_poly(t: float, m: int, n: int, c: float) -> float:
    """a(t) = t^(m-n) + t^n - c (1 + t^m) for t >= 1, m > n >= 1, 0 < c < 1."""
    if not (isinstance(m, int) and isinstance(n, int) and m > n >= 1):
        raise UsageError(f"need integers m > n >= 1, got m={m!r}, n={n!r}")
    if not (0.0 < c < 1.0):
        raise DomainError(f"c must lie in (0, 1), got {c}")
    if t < 1.0:
        raise DomainError(f"t must be >= 1, got {t}")
    return t ** (m - n) + t**n - c * (1.0 + t**m)


def a_poly_root(m: int, n: int, c: float, tol: float = 1e-13) -> float:
    """The unique root of a(t) on [1, inf), by bracket growth and bisection."""
    lo, hi = 1.0, 2.0
    grow = 0
    while a_poly(hi, m, n, c) >= 0.0:
        hi *= 2.0
        grow += 1
        if grow > 60:
            raise ConvergenceError("root bracket exceeded 2^60")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if a_poly(mid, m, n, c) >= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# chained digamma-difference inequalities
# ---------------------------------------------------------------------------


def psi_pair_inequality(
    x: float, c: float, variant: str = "classical", q: float | None = None, policy=None
) -> ChainTriple:
    """The three chained quantities of the squared-difference inequality.

    classical:  (1/c)(psi(x+c)-psi(x))^2,  psi'(x)-psi'(x+c),  (psi(x+c)-psi(x))^2
    q_analogue: the same chain with psi_q, prefactor (1-q)/(1-q^c) and the
                middle term scaled by q^x.
    The chain is lhs > mid > rhs for 0 < c < 1 and reverses for c > 1.
    """
    specfun._require_positive(x)
    specfun._require_positive(c, "c")
    if c == 1.0:
        raise DomainError("c = 1 is the degenerate boundary; use c != 1")
    if variant == "classical":
        d = digamma(x + c, policy).value - digamma(x, policy).value
        mid = polygamma(1, x, policy).value - polygamma(1, x + c, policy).value
        return ChainTriple(d * d / c, mid, d * d)
    if variant != "q_analogue":
        raise UsageError(f"unknown variant {variant!r}")
    if q is None:
        raise UsageError("q_analogue requires q")
    if not (0.0 < q < 1.0):
        raise DomainError(f"q must lie in (0, 1), got {q}")
    d = q_digamma(x + c, q, policy).value - q_digamma(x, q, policy).value
    mid = (q**x) * (
        q_polygamma(1, x, q, policy).value - q_polygamma(1, x + c, q, policy).value
    )
    pref = (1.0 - q) / (1.0 - q**c)
    return ChainTriple(pref * d * d, mid, d * d)


def cor51_expr(x: float, q: float, policy=None) -> float:
    """(psi_q'(x))^2 + (ln(1/q) q^x / (1-q)) psi_q''(x); claimed >= 0."""
    specfun._require_positive(x)
    if not (0.0 < q < 1.0):
        raise DomainError(f"q must lie in (0, 1), got {q}")
    p1 = q_polygamma(1, x, q, policy).value
    p2 = q_polygamma(2, x, q, policy).value
    return p1 * p1 + math.log(1.0 / q) * (q**x) / (1.0 - q) * p2


def cor5_inequality(
    x: float, y: float, z: float, alpha: float, q: float, policy=None
) -> TwoSides:
    """Both sides of the power-scaled four-gamma inequality.

    lhs = (G_a(z+x) G_a(z+y) / (G_a(x+y+z) G_a(z)))^alpha with a = q^alpha;
    rhs = G_q(a(z+x)) G_q(a(z+y)) / (G_q(a z) G_q(a(x+y+z))) with a = alpha.
    lhs <= rhs for alpha > 1; reversed for alpha in (0, 1).
    """
    for name, v in (("x", x), ("y", y), ("z", z)):
        specfun._require_positive(v, name)
    if q <= 0.0:
        raise DomainError(f"q must be positive, got {q}")
    if alpha <= 0.0 or alpha == 1.0:
        raise UsageError("alpha must be positive and != 1")
    qa = q**alpha
    lhs = math.exp(
        alpha
        * (
            _ln_gamma_q(z + x, qa, policy)
            + _ln_gamma_q(z + y, qa, policy)
            - _ln_gamma_q(x + y + z, qa, policy)
            - _ln_gamma_q(z, qa, policy)
        )
    )
    rhs = math.exp(
        _ln_gamma_q(alpha * (z + x), q, policy)
        + _ln_gamma_q(alpha * (z + y), q, policy)
        - _ln_gamma_q(alpha * z, q, policy)
        - _ln_gamma_q(alpha * (x + y + z), q, policy)
    )
    return TwoSides(lhs, rhs)
