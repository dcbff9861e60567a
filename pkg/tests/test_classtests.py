import math

import numpy as np
import pytest

from blowup_lab.classtests import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    delta2_estimate,
    delta2_gc_probe,
    gc_alpha_test,
    gc_ratio_monotone_test,
    growth_check,
    h_convexity_test,
    hconvex_gc_premise,
    hh_check,
    keller_osserman_test,
    n_function_check,
    rv_index_estimate,
    rv_mean_ratio,
)
from blowup_lab.errors import InvalidH, InvalidWindow, NonPositiveValue
from blowup_lab.nonlinearity import resolve

# ---------------------------------------------------------------------------
# mean-value order tests


def test_gc_power_equality_frontier():
    nl = resolve("power:sigma=2")
    v = gc_alpha_test(nl, 2.0, 1.0, 100.0)
    assert v.status == HOLDS
    assert v.margin == pytest.approx(0.0, abs=1e-12)
    assert gc_alpha_test(nl, 3.0, 1.0, 100.0).status == FAILS


def test_gc_constant_fails_every_order():
    nl = resolve("const")
    for alpha in (0.25, 0.5, 1.0, 2.0):
        v = gc_alpha_test(nl, alpha, 1.0, 100.0)
        assert v.status == FAILS
        assert v.witness is not None and v.margin < 0


def test_gc_xsinx_order_one():
    assert gc_alpha_test(resolve("xsinx"), 1.0, 1.0, 200.0).status == HOLDS


def test_gc_window_validation():
    nl = resolve("powlog:sigma=2")  # domain starts at 1
    with pytest.raises(InvalidWindow):
        gc_alpha_test(nl, 1.0, 1.0, 100.0)
    with pytest.raises(InvalidWindow):
        gc_alpha_test(resolve("power:sigma=2"), 1.0, 5.0, 5.0)
    with pytest.raises(ValueError):
        gc_alpha_test(resolve("power:sigma=2"), 1.0, 1.0, 100.0, n_grid=8)


def test_gc_verdict_deterministic():
    nl = resolve("xsinx")
    a = gc_alpha_test(nl, 1.0, 1.0, 200.0)
    b = gc_alpha_test(nl, 1.0, 1.0, 200.0)
    assert a == b


def test_ratio_monotone_power():
    nl = resolve("power:sigma=2")
    assert gc_ratio_monotone_test(nl, 2.0, 1.0, 100.0).status == HOLDS  # R = 1/3
    assert gc_ratio_monotone_test(nl, 3.0, 1.0, 100.0).status == FAILS  # R ~ 1/(3t)


def test_ratio_monotone_glog():
    # nondecreasing factor times power: ratio nondecreasing
    assert gc_ratio_monotone_test(resolve("glog:alpha=2"), 2.0, 1.0, 50.0).status == HOLDS


@pytest.mark.parametrize(
    "cid,alpha,window",
    [
        ("power:sigma=0.5", 0.5, (1.0, 100.0)),
        ("power:sigma=2", 2.0, (1.0, 100.0)),
        ("xsinx", 1.0, (1.0, 200.0)),
        ("glog:alpha=2", 2.0, (1.0, 50.0)),
        ("exp", 3.0, (1.0, 30.0)),
    ],
)
def test_gc_implies_ratio_monotone(cid, alpha, window):
    # the one-directional equivalence actually asserted
    nl = resolve(cid)
    if gc_alpha_test(nl, alpha, *window).status == HOLDS:
        assert gc_ratio_monotone_test(nl, alpha, *window).status == HOLDS


@pytest.mark.parametrize(
    "cid",
    ["power:sigma=2", "power:sigma=3", "orlicz:xp:p=2", "glog:alpha=2", "orlicz:tlogt"],
)
def test_convex_zero_at_origin_entries_are_order_one(cid):
    # convex catalog entries with f(a) = 0: midpoint bracket and order 1
    nl = resolve(cid)
    assert hh_check(nl, nl.a, nl.a + 1.0).status == HOLDS
    assert gc_alpha_test(nl, 1.0, 1.0, 100.0).status == HOLDS


# ---------------------------------------------------------------------------
# midpoint/endpoint bracket


def test_hh_square():
    v = hh_check(resolve("power:sigma=2"), 0.0, 2.0)
    assert v.status == HOLDS  # 1 <= 4/3 <= 2


def test_hh_affine_equality():
    v = hh_check(resolve("power:sigma=1"), 0.0, 4.0)
    assert v.status == HOLDS
    assert v.margin == pytest.approx(0.0, abs=1e-12)


def test_hh_exp():
    v = hh_check(resolve("exp"), 0.0, 1.0)
    assert v.status == HOLDS
    # e^{1/2} <= e - 1 <= (1 + e)/2, strict on both sides
    assert v.margin > 1e-3


# ---------------------------------------------------------------------------
# h-convexity


def test_hconvex_square_with_identity_weight():
    assert h_convexity_test(resolve("power:sigma=2"), lambda l: l).status == HOLDS


def test_hconvex_premise_violation_raises():
    with pytest.raises(InvalidH):
        h_convexity_test(resolve("power:sigma=2"), lambda l: l * l)


def test_hconvex_p_function():
    assert h_convexity_test(resolve("const"), lambda l: 1.0).status == HOLDS


def test_hconvex_seed_recorded_and_deterministic():
    a = h_convexity_test(resolve("power:sigma=2"), lambda l: l, seed=0xABC)
    b = h_convexity_test(resolve("power:sigma=2"), lambda l: l, seed=0xABC)
    assert a == b
    assert "0xabc" in a.detail


def test_premise_integrals():
    assert hconvex_gc_premise(lambda l: l, 1.0).status == HOLDS  # 1/2 == 1/2
    assert hconvex_gc_premise(lambda l: l * l, 2.0).status == HOLDS  # 1/3 == 1/3
    v = hconvex_gc_premise(lambda l: 1.0, 1.0)
    assert v.status == FAILS and v.witness == pytest.approx(1.0)


@pytest.mark.parametrize(
    "cid,h,alpha",
    [
        ("power:sigma=2", lambda l: l, 1.0),
        ("power:sigma=0.5", lambda l: math.sqrt(l), 0.5),
    ],
)
def test_hconvex_weight_mass_implies_order(cid, h, alpha):
    # f(a)=0, h-convex, int h <= 1/(alpha+1)  =>  order-alpha class
    nl = resolve(cid)
    assert float(nl.eval(nl.a)) == 0.0
    assert hconvex_gc_premise(h, alpha).status == HOLDS
    assert h_convexity_test(nl, h).status == HOLDS
    assert gc_alpha_test(nl, alpha, 1.0, 100.0).status == HOLDS


# ---------------------------------------------------------------------------
# regular variation

RV_KNOWN = [
    ("power:sigma=0.5", 0.5),
    ("power:sigma=1", 1.0),
    ("power:sigma=2", 2.0),
    ("power:sigma=3", 3.0),
    ("powlog:sigma=2", 2.0),
    ("powlog:sigma=3", 3.0),
    ("powloglog:sigma=2", 2.0),
    ("glog:alpha=2", 2.0),
]

# slowly varying factors bias the fitted slope by ~1/log x, so the
# +-0.05 pin needs probes beyond the default three decades
RV_WIDE_PROBES = (1e4, 1e6, 1e10)


def test_rv_pure_power():
    est = rv_index_estimate(resolve("power:sigma=3"))
    assert est.sigma_hat == pytest.approx(3.0, abs=1e-10)
    assert est.residual < 1e-10
    assert est.is_rv


def test_rv_power_log():
    est = rv_index_estimate(resolve("powlog:sigma=2"), x_probes=RV_WIDE_PROBES)
    assert est.sigma_hat == pytest.approx(2.0, abs=0.05)


def test_rv_exp_is_not_rv():
    assert not rv_index_estimate(resolve("exp")).is_rv


def test_rv_rejects_nonpositive():
    with pytest.raises(NonPositiveValue):
        rv_index_estimate(resolve("zero"))


@pytest.mark.parametrize("cid,sigma", RV_KNOWN)
def test_rv_catalog_index_within_tolerance(cid, sigma):
    est = rv_index_estimate(resolve(cid), x_probes=RV_WIDE_PROBES)
    assert est.sigma_hat == pytest.approx(sigma, abs=0.05)


@pytest.mark.parametrize("cid,sigma", RV_KNOWN)
def test_rv_mean_ratio_limit(cid, sigma):
    nl = resolve(cid)
    assert rv_mean_ratio(nl, 1e6) == pytest.approx(1.0 / (sigma + 1.0), abs=1e-2)


def test_rv_mean_ratio_exact_for_powers():
    assert rv_mean_ratio(resolve("power:sigma=2"), 100.0) == pytest.approx(1.0 / 3.0, rel=1e-12)
    assert rv_mean_ratio(resolve("power:sigma=0.5"), 50.0) == pytest.approx(2.0 / 3.0, rel=1e-12)


def test_rv_mean_ratio_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        rv_mean_ratio(resolve("orlicz:tlogt"), 0.5)  # f vanishes on [0, 1]


# ---------------------------------------------------------------------------
# Keller-Osserman and growth

KO_TABLE = [
    ("power:sigma=2", 2.0, HOLDS),
    ("power:sigma=3", 2.0, HOLDS),
    ("power:sigma=0.5", 2.0, FAILS),
    ("power:sigma=1", 2.0, INCONCLUSIVE),  # designed borderline: F^{-1/2} ~ 1/t
    ("plog:p=3", 3.0, FAILS),
    ("exp", 2.0, HOLDS),
    ("glog:alpha=2", 2.0, HOLDS),
    ("const", 2.0, FAILS),
]


@pytest.mark.parametrize("cid,p,expected", KO_TABLE)
def test_ko_catalog_table(cid, p, expected):
    assert keller_osserman_test(resolve(cid), p).status == expected


def test_ko_rejects_bad_order():
    with pytest.raises(ValueError):
        keller_osserman_test(resolve("power:sigma=2"), 1.0)


@pytest.mark.parametrize("cid,p", [(c, p) for c, p, s in KO_TABLE if s == HOLDS])
def test_ko_implies_growth(cid, p):
    assert growth_check(resolve(cid), p).status == HOLDS


@pytest.mark.parametrize("cid,p", [("power:sigma=2", 2.0), ("power:sigma=3", 2.0), ("power:sigma=3", 3.0)])
def test_rv_shifted_index_satisfies_ko(cid, p):
    # index sigma+1 with sigma+2 > p: integrand decays like t^{-(sigma+2)/p}
    assert keller_osserman_test(resolve(cid), p).status == HOLDS


def test_growth_examples():
    assert growth_check(resolve("power:sigma=2"), 2.0).status == HOLDS
    assert growth_check(resolve("power:sigma=1"), 2.0).status == FAILS
    assert growth_check(resolve("exp"), 5.0).status == HOLDS


# ---------------------------------------------------------------------------
# N-functions and doubling


def test_nfunction_examples():
    assert n_function_check(resolve("orlicz:xp:p=2")).status == HOLDS
    assert n_function_check(resolve("orlicz:tlogt")).status == HOLDS
    v = n_function_check(resolve("orlicz:xp:p=1"))  # M = x: M(x)/x = 1 everywhere
    assert v.status == FAILS
    assert "M(x)/x" in v.detail


def test_delta2_square():
    k_hat, v = delta2_estimate(resolve("orlicz:xp:p=2"))
    assert k_hat == pytest.approx(4.0, rel=1e-12)
    assert v.status == HOLDS


def test_delta2_tlogt():
    k_hat, v = delta2_estimate(resolve("orlicz:tlogt"), x0=math.e)
    assert k_hat <= 2.0 * (1.0 + math.log(2.0)) + 1e-9
    assert k_hat == pytest.approx(2.0 * (1.0 + math.log(2.0)), rel=1e-6)
    assert v.status == HOLDS


def test_delta2_exponential_fails():
    k_hat, v = delta2_estimate(resolve("orlicz:expm1x"), x_max=300.0)
    assert v.status == FAILS
    assert k_hat > 1e6


def test_delta2_rejects_nonpositive():
    with pytest.raises(NonPositiveValue):
        delta2_estimate(resolve("orlicz:tlogt"), x0=0.5, x_max=0.9)


def test_delta2_gc_probe_frontier():
    # M = x^2/2, k = 4: claimed order range (0, 4) overshoots; true frontier is 2
    M = resolve("orlicz:xp:p=2")
    out = dict(delta2_gc_probe(M, 4.0, [2.0, 3.0], t_min=1.0, t_max=1e4))
    assert out[2.0].status == HOLDS
    assert out[3.0].status == FAILS
    M4 = resolve("orlicz:xp:p=4")
    out = dict(delta2_gc_probe(M4, 16.0, [4.0], t_min=1.0, t_max=1e4))
    assert out[4.0].status == HOLDS
