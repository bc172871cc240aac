"""Hardware cost, power draw and energy efficiency accounting."""

import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asymx.econ import (
    ARCHITECTURES,
    COMPONENTS,
    Architecture,
    HardwareProfile,
    cost,
    energy_efficiency,
    power,
)

M, N = 128, 16


def arch(kind, m=M, n=N):
    if kind == "dbm":
        return Architecture("dbm", m, m)
    return Architecture(kind, m, n)


# hand-derived from the per-architecture bill of materials at M=128, N=16
EXPECTED_COST = {
    "adbn": 52_432,
    "dbm": 124_672,
    "hbfn": 382_208,
    "hbsn": 55_808,
}


def test_cost_exact_integers():
    for kind, expected in EXPECTED_COST.items():
        assert cost(arch(kind)) == expected


def test_cost_ordering_at_m128_n16():
    c = {kind: cost(arch(kind)) for kind in ARCHITECTURES}
    assert c["adbn"] < c["hbsn"] < c["dbm"] < c["hbfn"]


def test_power_values_and_ordering():
    p = {kind: power(arch(kind)) for kind in ARCHITECTURES}
    assert p["adbn"] == pytest.approx(790.9333333, abs=1e-4)
    assert p["dbm"] > p["adbn"] > p["hbsn"]
    assert p["hbsn"] == pytest.approx(p["hbfn"], rel=1e-12)


def test_power_slot_ratio_limits():
    # all-uplink duty never powers the transmit chains and vice versa
    a = arch("adbn")
    rx_only = power(a, slot_ratio=1.0)
    tx_only = power(a, slot_ratio=0.0)
    assert rx_only < tx_only
    mid = power(a, slot_ratio=0.5)
    assert mid == pytest.approx(0.5 * (rx_only + tx_only), rel=1e-12)


def test_cost_scales_linearly_with_profile():
    base = HardwareProfile()
    doubled = HardwareProfile(
        cost_usd={k: 2.0 * v for k, v in base.cost_usd.items()},
        power_w=base.power_w,
    )
    for kind in ARCHITECTURES:
        assert cost(arch(kind), doubled) == pytest.approx(
            2.0 * cost(arch(kind), base), rel=1e-12)


def test_cost_sensitivity_to_adc_price():
    # each receive chain carries exactly one ADC
    base = HardwareProfile()
    bumped = HardwareProfile(
        cost_usd={**base.cost_usd, "adc": base.cost_usd["adc"] + 10.0},
        power_w=base.power_w,
    )
    assert cost(arch("adbn"), bumped) - cost(arch("adbn"), base) == \
        pytest.approx(10.0 * N)
    assert cost(arch("dbm"), bumped) - cost(arch("dbm"), base) == \
        pytest.approx(10.0 * M)
    assert cost(arch("hbfn"), bumped) - cost(arch("hbfn"), base) == \
        pytest.approx(10.0 * N)


def test_cost_sensitivity_to_phase_shifter_price():
    # fully and partially connected networks differ only in shifter count
    base = HardwareProfile()
    bumped = HardwareProfile(
        cost_usd={**base.cost_usd,
                  "phase_shifter": base.cost_usd["phase_shifter"] + 1.0},
        power_w=base.power_w,
    )
    assert cost(arch("hbfn"), bumped) - cost(arch("hbfn"), base) == \
        pytest.approx(float(M * N))
    assert cost(arch("hbsn"), bumped) - cost(arch("hbsn"), base) == \
        pytest.approx(float(M))
    assert cost(arch("adbn"), bumped) == cost(arch("adbn"), base)


def test_energy_efficiency_formula():
    ee = energy_efficiency(30.0, 60.0, 1.0 / 3.0, 500.0, 500e6)
    expected = (30.0 / 3.0 + 60.0 * 2.0 / 3.0) * 500e6 / 500.0
    assert ee == pytest.approx(expected, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(
    up=st.floats(0.0, 200.0),
    down=st.floats(0.0, 200.0),
    ratio=st.floats(0.0, 1.0),
)
def test_energy_efficiency_bounds(up, down, ratio):
    ee = energy_efficiency(up, down, ratio, 790.9, 500e6)
    lo, hi = sorted((up, down))
    assert lo * 500e6 / 790.9 - 1e-6 <= ee <= hi * 500e6 / 790.9 + 1e-6


def test_architecture_validation():
    with pytest.raises(ValueError):
        Architecture("warp", M, N)
    with pytest.raises(ValueError):
        Architecture("adbn", 16, 32)
    with pytest.raises(ValueError):
        Architecture("adbn", 0, 0)
    with pytest.raises(ValueError):
        Architecture("hbfn", M, 0)


def test_profile_validation():
    good = HardwareProfile()
    assert set(good.cost_usd) == set(COMPONENTS)
    with pytest.raises(ValueError):
        HardwareProfile(cost_usd={"pa": 1.0}, power_w=good.power_w)
    bad = dict(good.cost_usd)
    bad["pa"] = -1.0
    with pytest.raises(ValueError):
        HardwareProfile(cost_usd=bad, power_w=good.power_w)


def test_dbm_must_be_square():
    with pytest.raises(ValueError):
        Architecture("dbm", M, N)


def test_architecture_is_frozen():
    a = arch("adbn")
    with pytest.raises(dataclasses.FrozenInstanceError):
        a.num_transmit = 64


def test_power_is_positive_everywhere():
    for kind in ARCHITECTURES:
        for ratio in (0.0, 0.25, 0.5, 1.0):
            assert power(arch(kind), slot_ratio=ratio) > 0


def test_cost_monotone_in_receive_chains():
    assert cost(Architecture("adbn", M, 32)) > cost(Architecture("adbn", M, 16))
    assert cost(Architecture("hbfn", M, 32)) > cost(Architecture("hbfn", M, 16))
