"""Parametric multipath channels and steering vectors."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asymx.channel import (
    ArrayGeometry,
    ChannelMatrix,
    PathSet,
    downlink_channel,
    draw_path_set,
    steering_downlink,
    steering_masked,
    steering_uplink,
    uplink_channel,
    user_channels,
)
from asymx.uplink import make_selection

M, N, P = 128, 32, 3
GEOM = ArrayGeometry(M)


def draw(seed, num_paths=P, powers=None):
    rng = np.random.default_rng(seed)
    return draw_path_set(num_paths, -np.pi / 3, np.pi / 3, rng, powers)


def test_steering_vectors_unit_norm():
    rng = np.random.default_rng(0)
    sel = make_selection("random", M, N, rng)
    for w in (-0.9, -0.3, 0.0, 0.7):
        assert np.linalg.norm(steering_downlink(GEOM, w)) == pytest.approx(1.0)
        assert np.linalg.norm(steering_uplink(sel, GEOM, w)) == \
            pytest.approx(1.0)


def test_steering_uplink_samples_downlink():
    # selected element a_n sees the same phase as physical element a_n
    rng = np.random.default_rng(1)
    sel = make_selection("random", M, N, rng)
    w = 0.37
    up = steering_uplink(sel, GEOM, w)
    down = steering_downlink(GEOM, w)
    assert np.allclose(up * np.sqrt(N), down[sel.indices - 1] * np.sqrt(M),
                       atol=1e-12)


def test_steering_masked_zero_fills():
    rng = np.random.default_rng(2)
    sel = make_selection("random", M, N, rng)
    w = -0.52
    masked = steering_masked(sel, GEOM, w)
    assert masked.shape == (M,)
    assert np.allclose(masked[sel.indices - 1],
                       steering_uplink(sel, GEOM, w), atol=1e-15)
    off = np.setdiff1d(np.arange(M), sel.indices - 1)
    assert np.all(masked[off] == 0)


def test_uplink_is_subsampled_downlink():
    # same paths, same physical element -> identical coefficient (factor 1)
    paths = draw(3)
    for kind in ("successive", "comb", "random"):
        sel = make_selection(kind, M, N, np.random.default_rng(4))
        h_up = uplink_channel(paths, sel, GEOM)
        h_down = downlink_channel(paths, GEOM)
        assert np.allclose(h_up, h_down[sel.indices - 1], rtol=1e-12,
                           atol=1e-14)


def test_channel_shapes_and_energy():
    paths = draw(5)
    sel = make_selection("successive", M, N)
    assert uplink_channel(paths, sel, GEOM).shape == (N,)
    assert downlink_channel(paths, GEOM).shape == (M,)
    # E||h_up||^2 = N: average over many draws
    energies = [
        np.linalg.norm(uplink_channel(draw(seed), sel, GEOM)) ** 2
        for seed in range(300)
    ]
    assert np.mean(energies) == pytest.approx(N, rel=0.15)


def test_uplink_channel_linear_in_gains():
    paths = draw(6)
    sel = make_selection("successive", M, N)
    h = uplink_channel(paths, sel, GEOM)
    scaled = PathSet(2.0 * paths.gains, paths.angles_rad)
    assert np.allclose(uplink_channel(scaled, sel, GEOM), 2.0 * h, atol=1e-12)


def test_draw_path_set_shapes_and_range():
    paths = draw(7, num_paths=5)
    assert paths.count == 5
    assert paths.gains.shape == (5,)
    assert np.all(np.abs(paths.angles_rad) <= np.pi / 3 + 1e-12)
    assert np.allclose(paths.spatial_freqs, np.sin(paths.angles_rad))


def test_draw_path_set_power_profile():
    # (0.9, 0.1) allocation: first gain carries 90% of the energy on average
    first, second = [], []
    for seed in range(4000):
        p = draw(seed, num_paths=2, powers=np.array([0.9, 0.1]))
        first.append(abs(p.gains[0]) ** 2)
        second.append(abs(p.gains[1]) ** 2)
    assert np.mean(first) == pytest.approx(2 * 0.9, rel=0.1)
    assert np.mean(second) == pytest.approx(2 * 0.1, rel=0.1)


def test_draw_path_set_power_profile_validation():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        draw_path_set(2, -1.0, 1.0, rng, powers=np.array([0.9, 0.2]))
    with pytest.raises(ValueError):
        draw_path_set(2, -1.0, 1.0, rng, powers=np.array([1.0]))
    with pytest.raises(ValueError):
        draw_path_set(2, -1.0, 1.0, rng, powers=np.array([1.5, -0.5]))


def test_user_channels_shapes():
    sel = make_selection("successive", M, N)
    path_sets = [draw(seed) for seed in range(10)]
    h_up, h_down = user_channels(path_sets, sel, GEOM)
    assert h_up.orientation == "uplink"
    assert h_down.orientation == "downlink"
    assert h_up.data.shape == (N, 10)
    assert h_down.data.shape == (10, M)
    assert h_up.num_users == h_down.num_users == 10
    # column k / row k correspond to the same user's paths
    for k in (0, 4, 9):
        assert np.allclose(h_up.data[:, k],
                           uplink_channel(path_sets[k], sel, GEOM))
        assert np.allclose(h_down.data[k],
                           downlink_channel(path_sets[k], GEOM))


def test_channel_matrix_validation():
    with pytest.raises(ValueError):
        ChannelMatrix(np.zeros((4, 4)), "sideways")
    with pytest.raises(ValueError):
        ChannelMatrix(np.zeros(4), "uplink")


def test_path_set_validation():
    with pytest.raises(ValueError):
        PathSet(np.array([1.0 + 0j]), np.array([0.1, 0.2]))
    with pytest.raises(ValueError):
        PathSet(np.array([]), np.array([]))


def test_geometry_validation():
    with pytest.raises(ValueError):
        ArrayGeometry(0)
    with pytest.raises(ValueError):
        ArrayGeometry(8, spacing=0.0)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1),
       w=st.floats(-0.99, 0.99))
def test_single_path_channel_matches_steering(seed, w):
    # one unit path at angle theta reduces to a scaled steering vector
    theta = float(np.arcsin(w))
    paths = PathSet(np.array([1.0 + 0j]), np.array([theta]))
    rng = np.random.default_rng(seed)
    sel = make_selection("random", M, N, rng)
    h = uplink_channel(paths, sel, GEOM)
    assert np.allclose(h, np.sqrt(N) * steering_uplink(sel, GEOM, w),
                       atol=1e-12)
    hd = downlink_channel(paths, GEOM)
    assert np.allclose(hd, np.sqrt(M) * steering_downlink(GEOM, w),
                       atol=1e-12)
