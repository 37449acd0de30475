import numpy as np
import pytest

from sfdm import channel, synthesis
from sfdm.channel import ChannelPath
from sfdm.errors import DelayExceedsCpp, DimensionMismatch
from sfdm.params import derive

T_CPP = 8.0


@pytest.mark.parametrize("realization", ["pc", "step"])
def test_zero_delay_identity(realization):
    p = derive(16, alpha=0.8, c2=0.09)
    h = channel.sampled_channel_matrix(
        realization, [ChannelPath(gain=1.0, delay=0.0)], p, T_CPP)
    assert np.max(np.abs(h.entries - synthesis.idaft_matrix(p))) < 1e-9


def test_integer_delays_make_realizations_identical():
    p = derive(16, alpha=0.8)
    paths = [ChannelPath(0.4 - 0.3j, 2.0), ChannelPath(0.2j, 5.0)]
    h_pc = channel.sampled_channel_matrix("pc", paths, p, T_CPP).entries
    h_st = channel.sampled_channel_matrix("step", paths, p, T_CPP).entries
    assert np.max(np.abs(h_pc - h_st)) < 1e-10


def test_fractional_delay_separates_realizations():
    p = derive(16, alpha=0.8)
    paths = [ChannelPath(1.0, 2.5)]
    h_pc = channel.sampled_channel_matrix("pc", paths, p, T_CPP).entries
    h_st = channel.sampled_channel_matrix("step", paths, p, T_CPP).entries
    assert np.linalg.norm(h_pc - h_st) > 1e-6


def test_doppler_is_receive_side_rotation():
    p = derive(16, alpha=0.8)
    nu = 0.021
    base = channel.sampled_channel_matrix(
        "pc", [ChannelPath(1.0, 1.5)], p, T_CPP).entries
    rotated = channel.sampled_channel_matrix(
        "pc", [ChannelPath(1.0, 1.5, nu)], p, T_CPP).entries
    t_n = np.arange(p.n) / p.bandwidth
    assert np.allclose(rotated,
                       np.exp(2j * np.pi * nu * t_n)[:, None] * base)


def test_superposition_over_paths():
    p = derive(16, alpha=0.8)
    p1 = ChannelPath(0.7, 1.3, 0.01)
    p2 = ChannelPath(-0.2 + 0.5j, 4.8, -0.02)
    both = channel.sampled_channel_matrix("step", [p1, p2], p, T_CPP).entries
    split = channel.sampled_channel_matrix("step", [p1], p, T_CPP).entries + \
        channel.sampled_channel_matrix("step", [p2], p, T_CPP).entries
    assert np.allclose(both, split)


def test_delay_validation():
    p = derive(16, alpha=0.8)
    with pytest.raises(DelayExceedsCpp):
        channel.sampled_channel_matrix(
            "pc", [ChannelPath(1.0, T_CPP)], p, T_CPP)
    with pytest.raises(DelayExceedsCpp):
        channel.sampled_channel_matrix(
            "pc", [ChannelPath(1.0, -0.1)], p, T_CPP)


def test_channel_nmse_dichotomy():
    p = derive(16, alpha=0.8)
    assert channel.channel_nmse([ChannelPath(1.0, 3.0)], p, T_CPP) < 1e-20
    assert channel.channel_nmse([ChannelPath(1.0, 3.5)], p, T_CPP) > 1e-10


def test_channel_nmse_c2_invariant():
    paths = [ChannelPath(0.8, 2.3, 0.015), ChannelPath(0.3j, 4.9)]
    a = channel.channel_nmse(paths, derive(16, alpha=0.8), T_CPP)
    b = channel.channel_nmse(paths, derive(16, alpha=0.8, c2=0.41), T_CPP)
    assert a == pytest.approx(b, rel=1e-9)


def test_nmse_positive_across_fractional_sweep():
    """Every fractional sampling offset separates the realizations; the
    integer offsets in the same sweep do not."""
    p = derive(64, alpha=0.8)
    for eps in np.linspace(0.1, 0.9, 9):
        assert channel.channel_nmse([ChannelPath(1.0, 4.0 + eps)], p,
                                    T_CPP) > 1e-12
    assert channel.channel_nmse([ChannelPath(1.0, 4.0)], p, T_CPP) < 1e-20


def test_daft_demod_inverts_modulation():
    p = derive(16, alpha=0.8, c2=0.2)
    rng = np.random.default_rng(9)
    x = rng.normal(size=16) + 1j * rng.normal(size=16)
    r = synthesis.idaft_modulate(x, p)
    assert np.allclose(channel.daft_demod(r, p), x, atol=1e-12)
    with pytest.raises(DimensionMismatch):
        channel.daft_demod(r[:5], p)
