"""Downlink precoding, SINR/SE and the NMSE metric."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asymx.channel import ArrayGeometry, ChannelMatrix, PathSet, user_channels
from asymx.downlink import (
    Precoder,
    downlink_se,
    downlink_sinr,
    mrt_precoder,
    nmse,
    nmse_db,
    zf_precoder,
)
from asymx.uplink import make_selection

M, K = 64, 6
GEOM = ArrayGeometry(M)


def random_downlink(seed, num_users=K):
    rng = np.random.default_rng(seed)
    sel = make_selection("successive", M, 16)
    paths = [
        PathSet(
            (rng.standard_normal(3) + 1j * rng.standard_normal(3))
            / np.sqrt(2),
            rng.uniform(-np.pi / 3, np.pi / 3, 3),
        )
        for _ in range(num_users)
    ]
    _, h_down = user_channels(paths, sel, GEOM)
    return h_down


def test_precoder_columns_unit_norm():
    h = random_downlink(0)
    for precoder in (mrt_precoder(h), zf_precoder(h)):
        norms = np.linalg.norm(precoder.matrix, axis=0)
        assert np.allclose(norms, 1.0, atol=1e-12)
        assert precoder.matrix.shape == (M, K)


def test_precoder_validation():
    with pytest.raises(ValueError):
        Precoder(np.eye(4)[:, :2] * 2.0, "zf")  # not unit norm
    with pytest.raises(ValueError):
        Precoder(np.eye(4)[:, :2], "dirty")
    with pytest.raises(ValueError):
        Precoder(np.ones(4), "mrt")


def test_mrt_matches_conjugate_rows():
    h = random_downlink(1)
    w = mrt_precoder(h).matrix
    for k in range(K):
        row = h.data[k]
        assert np.allclose(w[:, k], row.conj() / np.linalg.norm(row),
                           atol=1e-12)


def test_mrt_rejects_zero_row():
    data = random_downlink(2).data.copy()
    data[3] = 0.0
    with pytest.raises(ValueError):
        mrt_precoder(ChannelMatrix(data, "downlink"))


def test_zf_removes_interference():
    h = random_downlink(3)
    w = zf_precoder(h)
    cross = h.data @ w.matrix
    off = cross - np.diag(np.diag(cross))
    assert np.max(np.abs(off)) < 1e-9


def test_zf_sinr_equals_rho_times_gain():
    # with zero leakage, SINR_k = rho |h_k w_k|^2
    h = random_downlink(4)
    w = zf_precoder(h)
    rho = 5.0
    sinr = downlink_sinr(h, w, rho)
    direct = rho * np.abs(np.diag(h.data @ w.matrix)) ** 2
    assert np.allclose(sinr, direct, rtol=1e-9)


def test_downlink_sinr_manual_two_user():
    h = ChannelMatrix(np.array([[1.0 + 0j, 0.0], [0.6, 0.8]]), "downlink")
    w = Precoder(np.eye(2, dtype=complex), "zf")
    rho = 2.0
    sinr = downlink_sinr(h, w, rho)
    assert sinr[0] == pytest.approx(1.0 / (0.5), rel=1e-12)
    assert sinr[1] == pytest.approx(0.64 / (0.36 + 0.5), rel=1e-12)


def test_downlink_se_sums_rates():
    h = random_downlink(5)
    w = zf_precoder(h)
    rates, total = downlink_se(h, w, 10.0)
    assert rates.shape == (K,)
    assert total == pytest.approx(rates.sum())
    assert np.all(rates > 0)


def test_mrt_optimal_for_single_user():
    # with one user there is no interference and MRT is the matched filter
    h = random_downlink(6, num_users=1)
    rho = 3.0
    _, se_mrt = downlink_se(h, mrt_precoder(h), rho)
    expected = np.log2(1.0 + rho * np.linalg.norm(h.data[0]) ** 2)
    assert se_mrt == pytest.approx(expected, rel=1e-12)


def test_power_validated():
    h = random_downlink(7)
    with pytest.raises(ValueError):
        downlink_sinr(h, zf_precoder(h), 0.0)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), rho=st.floats(0.01, 1000.0))
def test_zf_beats_mrt_under_load(seed, rho):
    # ZF never loses to MRT by more than the noise-limited regime allows;
    # at minimum both produce positive finite rates
    h = random_downlink(seed)
    _, se_zf = downlink_se(h, zf_precoder(h), rho)
    _, se_mrt = downlink_se(h, mrt_precoder(h), rho)
    assert np.isfinite(se_zf) and np.isfinite(se_mrt)
    assert se_zf > 0 and se_mrt > 0


def test_nmse_values():
    truth = np.array([1.0 + 0j, 1.0j])
    assert nmse(truth, truth) == 0.0
    assert nmse(np.zeros(2, complex), truth) == pytest.approx(1.0)
    assert nmse(2.0 * truth, truth) == pytest.approx(1.0)
    assert nmse_db(np.array([1.001 + 0j, 1.0j]), truth) == pytest.approx(
        10 * np.log10(1e-6 / 2.0), abs=1e-6)


def test_nmse_rejects_zero_truth():
    with pytest.raises(ValueError):
        nmse(np.ones(3, complex), np.zeros(3, complex))


def test_downlink_accepts_plain_vector():
    # a single user's 1-D channel row is promoted to a 1 x M matrix
    h = random_downlink(8, num_users=1)
    vec = h.data[0]
    w = mrt_precoder(vec)
    assert w.matrix.shape == (M, 1)
    sinr_vec = downlink_sinr(vec, w, 1.0)
    sinr_mat = downlink_sinr(h, w, 1.0)
    assert sinr_vec[0] == pytest.approx(sinr_mat[0], rel=1e-12)


def test_uplink_orientation_rejected():
    h = random_downlink(9)
    flipped = ChannelMatrix(h.data.T, "uplink")
    with pytest.raises(ValueError):
        mrt_precoder(flipped)
