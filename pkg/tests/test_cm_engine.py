import math

import numpy as np
import pytest

from qgammakit import cm_engine as ce
from qgammakit import specfun as sf
from qgammakit.errors import DomainError, PreconditionError, UsageError

import oracles


# ---------------------------------------------------------------------------
# derivatives
# ---------------------------------------------------------------------------


def test_nth_derivative_cross_paths():
    a = ce.nth_derivative(ce.make_target("q_digamma", q=0.5), 1, 1.0)
    b = sf.q_polygamma(1, 1.0, 0.5)
    assert abs(a.value - b.value) <= a.abs_error + b.abs_error


def test_nth_derivative_ln_gamma():
    enc = ce.nth_derivative("ln_gamma", 2, 1.0)
    assert abs(enc.value - oracles.ZETA2) <= 1e-12


def test_nth_derivative_identity_at_order_zero():
    enc = ce.nth_derivative("digamma", 0, 2.0)
    assert enc.value == sf.digamma(2.0).value


def test_order_caps():
    with pytest.raises(UsageError):
        ce.nth_derivative("digamma", 13, 1.0)
    fd = ce.FiniteDifference(lambda x: math.exp(-x))
    with pytest.raises(UsageError):
        fd.deriv(9, 1.0)
    with pytest.raises(UsageError):
        ce.DerivativeSource("finite_difference", 10)


def test_unknown_target_family():
    with pytest.raises(UsageError):
        ce.make_target("not_a_family")


def test_fd_agreement_with_analytic():
    # within 1e-6 relative for k <= 4 on smooth targets over (0.5, 10]
    cases = [
        (lambda x: sf.digamma(x).value, ce.PolyGammaShift(0)),
        (lambda x: sf.polygamma(1, x).value, ce.PolyGammaShift(1)),
        (lambda x: sf.q_digamma(x, 0.5).value, ce.QPolyGammaShift(0, 0.5)),
    ]
    for fn, target in cases:
        fd = ce.FiniteDifference(fn)
        for k in (1, 2, 3, 4):
            for x in np.geomspace(0.55, 10.0, 12):
                a = target.deriv(k, float(x))
                f = fd.deriv(k, float(x))
                assert abs(a.value - f.value) <= 1e-6 * abs(a.value), (k, x)


def test_qseries_target_matches_q_polygamma():
    # the combined-series form of -(psi_q + ln(1-q)) has derivatives equal
    # to -psi_q^(k)
    q = 0.5
    lnq = math.log(q)
    target = ce.QSeriesTarget(q, [(0.0, lambda j: 1.0 / (-np.expm1(j * lnq)), 1.0 / (1.0 - q), 0)])
    for k in (1, 2, 4):
        for x in (0.3, 1.0, 8.0):
            a = target.deriv(k, x)
            b = sf.q_polygamma(k, x, q)
            assert abs(a.value + b.value) <= a.abs_error + b.abs_error + 1e-14


# ---------------------------------------------------------------------------
# sign-pattern checks
# ---------------------------------------------------------------------------

GRID = ce.GridSpec(1e-2, 10.0, 32, "log")


def test_cm_pass_on_trigamma():
    rep = ce.check_sign_pattern(ce.PolyGammaShift(1), 6, GRID, "completely_monotonic")
    assert rep.status == "pass" and not rep.violations
    assert rep.orders_checked == 6


def test_cm_pass_on_exp_neg():
    rep = ce.check_sign_pattern(ce.ExpNegX(), 8, GRID, "completely_monotonic")
    assert rep.status == "pass"


def test_cm_fails_on_identity():
    rep = ce.check_sign_pattern(ce.Affine(0.0, 1.0), 1, GRID, "completely_monotonic")
    assert rep.status == "fail"
    assert all(v.order == 1 for v in rep.violations)


def test_cm_fails_on_sin_plus_2():
    rep = ce.check_sign_pattern(ce.SinPlus2(), 8, GRID, "completely_monotonic")
    assert rep.status == "fail" and rep.violations


def test_lcm_requires_exp_form():
    with pytest.raises(UsageError):
        ce.check_sign_pattern(ce.PolyGammaShift(1), 4, GRID, "log_completely_monotonic")


def test_lcm_checks_neg_log_derivative():
    # f = exp(-x) has -(ln f)' = 1, trivially CM
    rep = ce.check_sign_pattern(
        ce.ExpNegForm(ce.Const(1.0)), 4, GRID, "log_completely_monotonic"
    )
    assert rep.status == "pass"


class _SwampedTarget(ce.AnalyticTarget):
    """Positive value drowned by its own certificate at every order."""

    def deriv(self, k, x, policy=None):
        return sf.Enclosure(1e-30, 1.0, 1)


def test_inconclusive_reported_not_passed():
    rep = ce.check_sign_pattern(_SwampedTarget(), 2, GRID, "completely_monotonic")
    assert rep.status == "inconclusive"
    assert not rep.violations


def test_sign_pattern_eval_failure_is_inconclusive():
    # grid extends past the target's domain; those points must not crash
    # the check, nor silently pass
    rep = ce.check_sign_pattern(
        ce.PowShift(-5.0, -1.0), 2, ce.GridSpec(1.0, 20.0, 16, "log"),
        "completely_monotonic",
    )
    assert rep.status == "inconclusive"


def test_probe_eval_failure_is_inconclusive():
    def partial(x):
        if x < 1.0:
            raise DomainError("outside")
        return -x

    rep = ce.monotonicity_probe(partial, [0.5, 1.5, 2.5], "decreasing")
    assert rep.status == "inconclusive"


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------


def _pts(vals):
    return [{"x": float(v)} for v in vals]


def test_chain_pass():
    rep = ce.check_chain(
        [lambda p: sf.digamma(p["x"]).value, lambda p: sf.digamma(p["x"] + 0.5).value],
        _pts(np.linspace(0.1, 10.0, 30)),
        "chain_lt",
    )
    assert rep.status == "pass"


def test_chain_reflexive_le():
    rep = ce.check_chain([lambda p: 2.0, lambda p: 2.0], _pts([1.0]), "chain_le")
    assert rep.status == "pass"


def test_chain_fail():
    rep = ce.check_chain([lambda p: 1.0, lambda p: 0.0], _pts(range(1, 6)), "chain_lt")
    assert rep.status == "fail"


def test_chain_strictness_spot_check():
    # equal expressions pass chain_le but fail the chain_lt spot check
    pts = _pts(range(1, 9))
    assert ce.check_chain([lambda p: 1.0, lambda p: 1.0], pts, "chain_le").status == "pass"
    rep = ce.check_chain([lambda p: 1.0, lambda p: 1.0], pts, "chain_lt")
    assert rep.status == "fail"


def test_chain_requires_two_exprs():
    with pytest.raises(UsageError):
        ce.check_chain([lambda p: 1.0], _pts([1.0]), "chain_le")


def test_chain_eval_failure_is_inconclusive():
    def boom(p):
        raise DomainError("outside")

    rep = ce.check_chain([boom, lambda p: 1.0], _pts([1.0, 2.0]), "chain_le")
    assert rep.status == "inconclusive"


# ---------------------------------------------------------------------------
# majorization
# ---------------------------------------------------------------------------


def test_majorization_basic():
    assert ce.check_majorization((1, 2), (1, 3)) is True
    assert ce.check_majorization((2, 2), (1, 2)) is False


def test_majorization_preconditions():
    with pytest.raises(PreconditionError):
        ce.check_majorization((1, 2), (2, 1))
    with pytest.raises(PreconditionError):
        ce.check_majorization((-1, 2), (1, 3))
    with pytest.raises(UsageError):
        ce.check_majorization((1, 2), (1, 2, 3))


# ---------------------------------------------------------------------------
# monotonicity probes
# ---------------------------------------------------------------------------


def test_probe_weighted_trigamma_increasing():
    rep = ce.monotonicity_probe(
        lambda x: x * sf.polygamma(1, x + 0.5).value,
        [float(v) for v in np.linspace(0.0, 20.0, 64)],
        "increasing",
    )
    assert rep.status == "pass"


def test_probe_weighted_trigamma_decreasing_at_zero_shift():
    rep = ce.monotonicity_probe(
        lambda x: x * sf.polygamma(1, x).value,
        ce.GridSpec(1e-2, 20.0, 64, "log"),
        "decreasing",
    )
    assert rep.status == "pass"


def test_probe_detects_below_threshold_shift():
    rep = ce.monotonicity_probe(
        lambda x: x * sf.polygamma(1, x + 0.4).value,
        ce.GridSpec(1e-2, 50.0, 64, "log"),
        "increasing",
    )
    assert rep.status == "fail" and len(rep.violations) >= 1


def test_probe_range_containment():
    n = 1
    rep = ce.monotonicity_probe(
        lambda x: -x * sf.polygamma(n + 1, x).value / sf.polygamma(n, x).value,
        ce.GridSpec(1e-2, 50.0, 64, "log"),
        "decreasing",
        value_range=(float(n), float(n + 1)),
    )
    assert rep.status == "pass"


def test_probe_direction_validation():
    with pytest.raises(UsageError):
        ce.monotonicity_probe(lambda x: x, [1.0, 2.0], "sideways")


# ---------------------------------------------------------------------------
# determinism and report structure
# ---------------------------------------------------------------------------


def test_reports_deterministic_across_jobs():
    def run(jobs):
        return ce.check_chain(
            [lambda p: sf.digamma(p["x"]).value, lambda p: sf.digamma(p["x"] + 0.3).value],
            _pts(np.linspace(0.1, 20.0, 64)),
            "chain_lt",
            jobs=jobs,
        )

    a, b = run(1), run(4)
    assert a.worst_margin == b.worst_margin
    assert a.status == b.status
    assert a.violations == b.violations


def test_violations_sorted():
    rep = ce.check_chain(
        [lambda p: p["x"], lambda p: -p["x"]],
        _pts([5.0, 1.0, 3.0]),
        "chain_le",
    )
    pts = [v.point for v in rep.violations]
    assert pts == sorted(pts)


def test_grid_spec_validation():
    with pytest.raises(UsageError):
        ce.GridSpec(2.0, 1.0, 8)
    with pytest.raises(UsageError):
        ce.GridSpec(1.0, 2.0, 1)
    with pytest.raises(UsageError):
        ce.GridSpec(0.0, 2.0, 8, "log")
    with pytest.raises(UsageError):
        ce.GridSpec(1.0, 2.0, 8, "cubic")
    g = ce.GridSpec(0.0, 2.0, 5, "linear")
    assert g.values() == [0.0, 0.5, 1.0, 1.5, 2.0]
