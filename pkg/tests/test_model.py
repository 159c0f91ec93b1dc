import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from targetrace.model import (
    INFINITE,
    ChannelParams,
    ClickModel,
    FirstClick,
    FixedShots,
    RClicks,
    TruncatedFirstClick,
    UnsupportedCombination,
    derive_click_model,
    rule_count,
    rule_name,
    validate_rule,
)


def test_derive_identity_case():
    model = derive_click_model(ChannelParams(eta=1.0, n_b=0.0, d=2, m=INFINITE))
    assert model.p_tp == 1.0
    assert model.p_fp == 0.0


def test_derive_scalar_substitution():
    model = derive_click_model(ChannelParams(eta=0.5, n_b=0.5, d=2, m=100))
    assert model.p_tp == pytest.approx(1.0 / 3.0, rel=1e-15)
    assert model.p_fp == pytest.approx(0.01, rel=1e-15)

    model = derive_click_model(ChannelParams(eta=0.2, n_b=1.0, d=3, m=10))
    assert model.p_tp == pytest.approx(0.1, rel=1e-15)
    assert model.p_fp == pytest.approx(0.1, rel=1e-15)


def test_eta_zero_rejected():
    with pytest.raises(ValueError, match="eta"):
        ChannelParams(eta=0.0, n_b=0.0, d=2, m=10)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(eta=1.5, n_b=0.0, d=2, m=10),
        dict(eta=0.5, n_b=-0.1, d=2, m=10),
        dict(eta=0.5, n_b=0.0, d=1, m=10),
        dict(eta=0.5, n_b=0.0, d=2, m=0),
        dict(eta=0.5, n_b=0.0, d=2, m=2.5),
    ],
)
def test_invalid_params_rejected(kwargs):
    with pytest.raises(ValueError):
        ChannelParams(**kwargs)


def test_click_model_bounds():
    with pytest.raises(ValueError):
        ClickModel(p_tp=0.0, p_fp=0.0)
    with pytest.raises(ValueError):
        ClickModel(p_tp=0.5, p_fp=1.0)
    ClickModel(p_tp=1.0, p_fp=0.0)  # boundary values allowed


@given(
    eta=st.floats(min_value=0.01, max_value=1.0),
    n_b=st.floats(min_value=0.0, max_value=50.0),
    deta=st.floats(min_value=1e-6, max_value=0.5),
    dnb=st.floats(min_value=1e-6, max_value=10.0),
)
def test_derive_monotone(eta, n_b, deta, dnb):
    base = derive_click_model(ChannelParams(eta=eta, n_b=n_b, d=2, m=INFINITE))
    if eta + deta <= 1.0:
        up = derive_click_model(ChannelParams(eta=eta + deta, n_b=n_b, d=2, m=INFINITE))
        assert up.p_tp > base.p_tp
    noisier = derive_click_model(ChannelParams(eta=eta, n_b=n_b + dnb, d=2, m=INFINITE))
    assert noisier.p_tp < base.p_tp


@pytest.mark.parametrize("m", [2, 3, 10, 100, 12345, 10**6])
def test_fp_times_m_is_one(m):
    model = derive_click_model(ChannelParams(eta=0.5, n_b=0.0, d=2, m=m))
    assert model.p_fp * m == pytest.approx(1.0, rel=1e-15)


def test_single_mode_is_degenerate():
    # m = 1 would force p_fp = 1 (every false position clicks every time),
    # which the click-model invariant excludes
    with pytest.raises(ValueError, match="p_fp"):
        derive_click_model(ChannelParams(eta=0.5, n_b=0.0, d=2, m=1))


def test_validate_rule():
    zero_fp = ClickModel(p_tp=0.5, p_fp=0.0)
    finite = ClickModel(p_tp=0.5, p_fp=0.01)
    validate_rule(FixedShots(10), zero_fp)
    validate_rule(RClicks(3), finite)
    validate_rule(FirstClick(), finite)
    validate_rule(TruncatedFirstClick(5), finite)
    with pytest.raises(UnsupportedCombination):
        validate_rule(FixedShots(10), finite)


def test_rule_counts_positive():
    for bad in (0, -1, 2.5):
        with pytest.raises(ValueError):
            FixedShots(bad)
        with pytest.raises(ValueError):
            RClicks(bad)
        with pytest.raises(ValueError):
            TruncatedFirstClick(bad)


def test_rule_names_and_counts():
    assert rule_name(FirstClick()) == "first_click"
    assert rule_count(FirstClick()) == 1
    assert rule_name(RClicks(4)) == "r_clicks"
    assert rule_count(RClicks(4)) == 4
    assert rule_count(FixedShots(7)) == 7
    assert rule_count(TruncatedFirstClick(9)) == 9


def test_infinite_is_symbolic():
    params = ChannelParams(eta=0.5, n_b=0.0, d=2, m=INFINITE)
    assert params.infinite_modes
    assert math.isinf(params.m)
    assert derive_click_model(params).p_fp == 0.0
