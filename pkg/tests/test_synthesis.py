import numpy as np
import pytest

from sfdm import discontinuity, synthesis
from sfdm.errors import (DimensionMismatch, IndexOutOfRange, InvalidParam,
                         OutOfDomain)
from sfdm.params import derive


def grid_phase(m, p):
    """IDAFT time-domain phase of column m (cycles, without the c2 term)."""
    n = np.arange(p.n)
    return p.c1 * n**2 + m * n / p.n


def test_idaft_matrix_unitary():
    for p in (derive(8, alpha=0.8), derive(16, alpha=1.3, c2=0.21)):
        a = synthesis.idaft_matrix(p)
        assert np.allclose(a.conj().T @ a, np.eye(p.n), atol=1e-12)


def test_idaft_modulate_matches_matrix():
    p = derive(8, alpha=0.8, c2=0.1)
    rng = np.random.default_rng(0)
    x = rng.normal(size=8) + 1j * rng.normal(size=8)
    assert np.allclose(synthesis.idaft_modulate(x, p),
                       synthesis.idaft_matrix(p) @ x)
    with pytest.raises(DimensionMismatch):
        synthesis.idaft_modulate(x[:4], p)


@pytest.mark.parametrize("realization", ["pc", "step"])
def test_sampling_equivalence_random_alpha(realization):
    rng = np.random.default_rng(11)
    for n in (8, 16):
        t_n = np.arange(n)
        for _ in range(25):
            p = derive(n, alpha=float(rng.uniform(0.01, 2.0)))
            for m in range(n):
                w = synthesis.build_subcarrier(m, realization, p)
                target = np.exp(2j * np.pi * grid_phase(m, p))
                assert np.max(np.abs(w.value(t_n / p.bandwidth) - target)) \
                    < 1e-9


def test_theta_family_midpoint_unique():
    p = derive(16, alpha=0.733)
    t_n = np.arange(p.n) / p.bandwidth
    target = np.exp(2j * np.pi * grid_phase(5, p))
    for theta in (0.1, 0.3, 0.7, 0.9):
        w = synthesis.build_theta_subcarrier(5, theta, p)
        assert np.max(np.abs(w.value(t_n) - target)) > 1e-6
    w = synthesis.build_theta_subcarrier(5, 0.5, p)
    assert np.max(np.abs(w.value(t_n) - target)) < 1e-9


def test_step_waveform_is_continuous():
    p = derive(64, alpha=1.4)
    for m in (0, 31, 63):
        w = synthesis.build_step_subcarrier(m, p)
        t_b = np.arange(1, p.n) / p.bandwidth
        assert np.max(np.abs(w.value(t_b) - w.value_left(t_b))) < 1e-9


def test_pc_waveform_right_continuous_with_known_jumps():
    p = derive(64, alpha=0.8)
    w = synthesis.build_pc_subcarrier(63, p)
    ev = discontinuity.wrap_events(63, p)[0]
    eps = 1e-9
    # right-continuity: value just after the wrap matches the value at it
    assert abs(w.value(ev.t + eps) - w.value(ev.t)) < 1e-6
    # the left limit is genuinely different
    assert abs(w.value(ev.t) - w.value_left(ev.t)) ** 2 == pytest.approx(
        ev.jump_sq, abs=1e-9)


def test_pc_instantaneous_frequency_wrapped():
    p = derive(64, alpha=0.8)
    for m in (0, 13, 63):
        w = synthesis.build_pc_subcarrier(m, p)
        t = np.linspace(0.0, p.block_duration, 500, endpoint=False)
        f = w.inst_freq(t)
        assert np.all(f >= -1e-12) and np.all(f < p.bandwidth + 1e-12)
        # unwrapped frequency modulo B
        raw = p.chirp_rate * t + m / p.block_duration
        assert np.allclose(np.mod(raw, p.bandwidth), f, atol=1e-9)


def test_step_frequency_constant_per_interval():
    p = derive(64, alpha=0.8)
    w = synthesis.build_step_subcarrier(40, p)
    for n in (0, 20, 63):
        t = (n + np.array([0.1, 0.5, 0.9])) / p.bandwidth
        f = w.inst_freq(t)
        assert np.ptp(f) == 0.0
        raw = p.chirp_rate * (n + 0.5) / p.bandwidth + 40 / p.block_duration
        assert f[0] == pytest.approx(raw % p.bandwidth, abs=1e-9)
        assert 0.0 <= f[0] < p.bandwidth


def test_local_phase_relation_on_no_wrap_intervals():
    """On sampling intervals without a wrap instant, the two realizations
    differ by a constant rotation plus bounded quadratic phase curvature."""
    p = derive(64, alpha=0.8)
    bound = np.pi * p.alpha / (2.0 * p.n)
    wrap_times = {m: [ev.t for ev in discontinuity.wrap_events(m, p)]
                  for m in range(p.n)}
    offsets = np.linspace(0.0, 1.0, 21, endpoint=False) / p.bandwidth
    checked = 0
    for m in (0, 9, 33, 63):
        w_pc = synthesis.build_pc_subcarrier(m, p)
        w_st = synthesis.build_step_subcarrier(m, p)
        for n in range(p.n):
            t0, t1 = n / p.bandwidth, (n + 1) / p.bandwidth
            if any(t0 < t < t1 for t in wrap_times[m]):
                continue
            t_c = (n + 0.5) / p.bandwidth
            rot = np.exp(2j * np.pi * (w_pc.phase(t_c) - w_st.phase(t_c)))
            t = t0 + offsets
            sup = np.max(np.abs(w_pc.value(t) - rot * w_st.value(t)))
            assert sup <= bound + 1e-9
            checked += 1
    assert checked > 200


def test_out_of_domain():
    p = derive(8, alpha=0.8)
    w = synthesis.build_step_subcarrier(0, p)
    with pytest.raises(OutOfDomain):
        w.value(-0.1)
    with pytest.raises(OutOfDomain):
        w.value(p.block_duration)  # right-continuous value undefined at T
    with pytest.raises(OutOfDomain):
        w.value_left(0.0)
    # but the left limit at T exists
    assert abs(w.value_left(p.block_duration)) == pytest.approx(1.0)


def test_build_validation():
    p = derive(8, alpha=0.8)
    with pytest.raises(IndexOutOfRange):
        synthesis.build_pc_subcarrier(8, p)
    with pytest.raises(InvalidParam):
        synthesis.build_theta_subcarrier(0, 1.0, p)
    with pytest.raises(InvalidParam):
        synthesis.build_subcarrier(0, "bogus", p)
    with pytest.raises(InvalidParam):
        synthesis.build_subcarrier(0, "theta", p)


def test_parse_realization():
    assert synthesis.parse_realization("pc") == ("pc", None)
    assert synthesis.parse_realization("step") == ("step", None)
    assert synthesis.parse_realization("theta:0.25") == ("theta", 0.25)
    with pytest.raises(InvalidParam):
        synthesis.parse_realization("θ")


@pytest.mark.parametrize("realization", ["pc", "step"])
def test_cpp_copies_block_tail(realization):
    p = derive(64, alpha=0.8)
    t_cpp = 8.0 / p.bandwidth
    T = p.block_duration
    for m in (0, 17, 63):
        w = synthesis.build_subcarrier(m, realization, p)
        wc = synthesis.append_cpp(w, t_cpp, p)
        t = np.linspace(-t_cpp, 0.0, 200, endpoint=False)
        expected = w.value(t + T) * np.exp(
            -2j * np.pi * p.c1 * p.n * (p.n + 2.0 * p.bandwidth * t))
        assert np.max(np.abs(wc.value(t) - expected)) < 1e-9
        # block part untouched
        tb = np.linspace(0.0, T, 100, endpoint=False)
        assert np.allclose(wc.value(tb), w.value(tb), atol=1e-12)


def test_cpp_validation():
    p = derive(8, alpha=0.8)
    w = synthesis.build_step_subcarrier(0, p)
    with pytest.raises(InvalidParam):
        synthesis.append_cpp(w, p.block_duration, p)
    with pytest.raises(InvalidParam):
        synthesis.append_cpp(w, -1.0, p)
    wc = synthesis.append_cpp(w, 2.0, p)
    with pytest.raises(InvalidParam):
        synthesis.append_cpp(wc, 2.0, p)
    assert synthesis.append_cpp(w, 0.0, p) is w


def test_evaluate_block_matches_manual_sum():
    p = derive(8, alpha=0.8, c2=0.05)
    rng = np.random.default_rng(4)
    x = rng.normal(size=8) + 1j * rng.normal(size=8)
    t = np.linspace(0.0, p.block_duration, 37, endpoint=False)
    wavs = synthesis.subcarrier_waveforms("pc", p)
    manual = sum(
        x[m] * np.exp(2j * np.pi * p.c2 * m**2) * wavs[m].value(t)
        for m in range(8)) / np.sqrt(8)
    assert np.allclose(synthesis.evaluate_block(x, "pc", t, p), manual)


def test_evaluate_block_at_grid_matches_idaft():
    p = derive(16, alpha=1.1, c2=0.3)
    rng = np.random.default_rng(5)
    x = rng.normal(size=16) + 1j * rng.normal(size=16)
    samples = synthesis.idaft_modulate(x, p)
    t_n = np.arange(16) / p.bandwidth
    for realization in ("pc", "step"):
        values = synthesis.evaluate_block(x, realization, t_n, p)
        assert np.max(np.abs(values - samples)) < 1e-9
