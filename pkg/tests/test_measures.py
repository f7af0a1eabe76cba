import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptmetric.canonical import (
    CanonicalD,
    ep_canonical_d,
    solve_canonical_d,
    two_angle_frame,
)
from ptmetric.errors import (
    ConditionNotMetError,
    DegenerateAngleError,
    DivisionByZeroError,
    ExceptionalPointError,
    NotInvertibleError,
    NotPositiveError,
)
from ptmetric.measures import (
    delta1,
    delta2,
    delta2_lower_bound,
    dilation_efficiency,
    efficiency_relation,
    l1_norm,
)
from ptmetric.metric import (
    HermitianMetric,
    MetricFamilyParams,
    family_gap,
    family_metric,
)
from ptmetric.model import PtParams


def test_l1_norm_values():
    assert l1_norm(np.eye(2)) == pytest.approx(2.0)
    assert l1_norm(np.array([[1, 3 - 4j], [3 + 4j, 1]])) == pytest.approx(12.0)
    assert l1_norm(np.zeros((2, 2))) == pytest.approx(0.0)


@given(
    re_a=st.lists(st.floats(-5, 5), min_size=4, max_size=4),
    im_a=st.lists(st.floats(-5, 5), min_size=4, max_size=4),
    re_b=st.lists(st.floats(-5, 5), min_size=4, max_size=4),
    im_b=st.lists(st.floats(-5, 5), min_size=4, max_size=4),
    alpha=st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
)
@settings(max_examples=200)
def test_l1_norm_axioms(re_a, im_a, re_b, im_b, alpha):
    a = (np.array(re_a) + 1j * np.array(im_a)).reshape(2, 2)
    b = (np.array(re_b) + 1j * np.array(im_b)).reshape(2, 2)
    scale = max(1.0, l1_norm(a) + l1_norm(b))
    assert l1_norm(a + b) <= l1_norm(a) + l1_norm(b) + 1e-12 * scale
    assert abs(l1_norm(alpha * a) - abs(alpha) * l1_norm(a)) <= 1e-12 * scale


def test_delta1_at_zero_angle():
    rep = delta1(0.0, MetricFamilyParams(1.0, 0.0), MetricFamilyParams(1.0, 1.0))
    # eta(0) = I, reference = [[1, 1-i], [1+i, 1]]; entrywise gap sqrt(2) twice
    assert rep.delta1_exact == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-12)
    assert rep.delta1_lower_bound == pytest.approx(2.0, abs=1e-12)
    # half-spectrum weight doubles the literal reciprocal eigenvalue
    assert rep.p_minus == pytest.approx(2.0, abs=1e-12)
    assert rep.p_minus_numeric == pytest.approx(1.0, abs=1e-12)
    assert rep.product == pytest.approx(4.0 * math.sqrt(2.0), abs=1e-11)
    assert rep.product_bound == pytest.approx(4.0, abs=1e-12)


def test_delta1_floor_toward_ep():
    params = MetricFamilyParams(1.0, 0.0)
    ep = MetricFamilyParams(1.0, 1.0)
    prev_p = -math.inf
    for k in range(1, 5):
        theta = math.pi / 2 - 10.0 ** (-k)
        rep = delta1(theta, params, ep)
        assert rep.delta1_lower_bound > 0
        assert rep.p_minus > prev_p
        prev_p = rep.p_minus
        assert rep.product_bound >= 4.0 - 1e-9
        assert rep.product >= rep.product_bound - 1e-9
    assert prev_p > 1e6


def test_delta1_rejects_bad_inputs():
    with pytest.raises(NotPositiveError):
        delta1(0.2, MetricFamilyParams(1.0, 0.99), MetricFamilyParams(1.0, 1.0))
    with pytest.raises(NotInvertibleError):
        delta1(0.0, MetricFamilyParams(1.0, 0.0), MetricFamilyParams(1.0, 0.0))
    with pytest.raises(ExceptionalPointError):
        delta1(math.pi / 2, MetricFamilyParams(1.0, 0.0), MetricFamilyParams(1.0, 1.0))


def test_dilation_efficiency_values():
    assert dilation_efficiency(
        HermitianMetric.from_matrix(np.eye(2))) == pytest.approx(1.0)
    m = family_metric(math.pi / 6, MetricFamilyParams(2.0, 0.0))
    assert dilation_efficiency(m) == pytest.approx(1.0 / 3.0, abs=1e-12)
    with pytest.raises(NotPositiveError):
        dilation_efficiency(
            HermitianMetric.from_matrix(np.array([[0, 1], [1, 0]], dtype=complex)))


def test_efficiency_relation_examples():
    rep = efficiency_relation(math.pi / 6, MetricFamilyParams(4.0, 0.0))
    assert rep.lambda_minus == pytest.approx(2.0, abs=1e-12)
    assert rep.e_d == pytest.approx(1.0 / 6.0, abs=1e-12)
    assert rep.ratio >= 4.0 - 1e-9
    assert rep.chain >= 4.0 - 1e-9
    assert rep.ratio == pytest.approx(12.0, abs=1e-9)

    scalar = efficiency_relation(0.0, MetricFamilyParams(2.0, 0.0))
    assert scalar.lambda_minus == pytest.approx(2.0, abs=1e-12)
    assert scalar.e_d == pytest.approx(0.5, abs=1e-12)
    assert scalar.ratio == pytest.approx(4.0, abs=1e-9)
    assert scalar.chain == pytest.approx(4.0, abs=1e-9)

    with pytest.raises(ConditionNotMetError):
        efficiency_relation(math.pi / 6, MetricFamilyParams(1.0, 0.0))


def test_efficiency_relation_floor_on_draws():
    rng = np.random.default_rng(29)
    done = 0
    while done < 500:
        theta = rng.uniform(-math.pi, math.pi)
        a = rng.uniform(-1.0, 1.0)
        gap = family_gap(theta, a)
        if gap < 1e-4:
            continue
        done += 1
        eta11 = 2.0 * (1.0 + rng.uniform(1e-6, 2.0)) / gap
        rep = efficiency_relation(theta, MetricFamilyParams(eta11, a))
        assert rep.ratio >= rep.chain - 1e-9
        assert rep.chain >= 4.0 - 1e-9


def test_delta2_canonical_chain():
    frame = two_angle_frame(PtParams(0.0, 1.0, math.pi / 3), math.pi / 3 - math.pi)
    # minimal admissible d22 = t*d11 with t = (sin/cos)^2 = 4
    d = solve_canonical_d(frame, 1.0, 4.0)
    rep = delta2(d)
    assert rep.ratio11 == pytest.approx(0.5, abs=1e-12)
    assert rep.ratio22 == pytest.approx(2.0, abs=1e-12)
    assert rep.delta2 == pytest.approx(2.5, abs=1e-12)
    assert rep.delta2 >= 2.0


def test_delta2_ep_branch_self_reference():
    frame = two_angle_frame(PtParams(0.0, 1.0, math.pi / 2), -math.pi / 2)
    d = ep_canonical_d(frame, 1.3, 0.7)
    rep = delta2(d, delta_ref=abs(d.d22) / abs(d.d12))
    assert rep.ratio11 == pytest.approx(0.0, abs=1e-15)
    assert rep.delta2 == pytest.approx(0.0, abs=1e-15)


def test_delta2_zero_denominator():
    with pytest.raises(DivisionByZeroError):
        delta2(CanonicalD(1.0, 0.0, 1.0))


def test_delta2_lower_bound_values():
    assert delta2_lower_bound(
        math.pi / 3, math.pi / 3 - math.pi) == pytest.approx(2.5, abs=1e-12)
    # equality configuration: |cos(theta)| = |sin((theta - theta')/2)|
    assert delta2_lower_bound(math.pi / 3, 0.0) == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(DegenerateAngleError):
        delta2_lower_bound(math.pi / 3, math.pi / 3)
    with pytest.raises(ExceptionalPointError):
        delta2_lower_bound(math.pi / 2, 0.0)
    assert delta2_lower_bound(1.0, -2.0) >= 2.0


def test_delta2_floor_on_positive_draws():
    rng = np.random.default_rng(31)
    done = 0
    while done < 500:
        th = rng.uniform(-math.pi, math.pi)
        tp = rng.uniform(-math.pi, math.pi)
        if (abs(math.cos(th)) < 1e-3 or abs(math.sin(0.5 * (th - tp))) < 1e-3
                or abs(math.cos(0.5 * (th + tp))) < 1e-4):
            continue
        done += 1
        frame = two_angle_frame(PtParams(0.0, 1.0, th), tp)
        k = math.sin(0.5 * (frame.theta - frame.theta_prime)) / math.cos(frame.theta)
        d11 = rng.uniform(0.1, 3.0)
        t = k * k * (1.0 + rng.uniform(1e-3, 4.0))
        rep = delta2(solve_canonical_d(frame, d11, t * d11))
        assert rep.delta2 >= 2.0 - 1e-9
        assert rep.delta2 >= delta2_lower_bound(th, tp) - 1e-9


def test_delta1_floor_on_random_draws():
    rng = np.random.default_rng(37)
    done = 0
    while done < 1000:
        theta = rng.uniform(-math.pi, math.pi)
        a = rng.uniform(-1.0, 1.0)
        if a * a + math.sin(theta) ** 2 > 1.0 - 1e-6:
            continue
        done += 1
        fam = MetricFamilyParams(rng.uniform(0.2, 3.0), a)
        ep = MetricFamilyParams(
            rng.uniform(0.2, 3.0) * rng.choice([-1.0, 1.0]),
            rng.uniform(0.1, 2.0) * rng.choice([-1.0, 1.0]))
        rep = delta1(theta, fam, ep)
        assert rep.delta1_exact >= rep.delta1_lower_bound - 1e-9
        assert rep.product >= 4.0 - 1e-9
        assert rep.product_bound >= 4.0 - 1e-9
