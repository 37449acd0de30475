import pytest

from sfdm.errors import InvalidParam
from sfdm.params import WaveformParams, derive, load_config


def test_derived_quantities():
    p = WaveformParams(n=64, bandwidth=2.0, c1=0.0125)
    assert p.block_duration == 32.0
    assert p.sample_period == 0.5
    assert p.chirp_rate == pytest.approx(2 * 0.0125 * 4.0)
    assert p.alpha == pytest.approx(0.8)


def test_alpha_c1_roundtrip():
    p = derive(64, alpha=0.8)
    assert p.c1 == pytest.approx(0.8 / 64)
    q = derive(64, c1=p.c1)
    assert q.alpha == pytest.approx(0.8)


def test_derive_requires_exactly_one_rate():
    with pytest.raises(InvalidParam):
        derive(64)
    with pytest.raises(InvalidParam):
        derive(64, c1=0.01, alpha=0.8)


@pytest.mark.parametrize("kwargs", [
    dict(n=1, bandwidth=1.0, c1=0.01),
    dict(n=4.5, bandwidth=1.0, c1=0.01),
    dict(n=8, bandwidth=0.0, c1=0.01),
    dict(n=8, bandwidth=-1.0, c1=0.01),
    dict(n=8, bandwidth=1.0, c1=0.0),
    dict(n=8, bandwidth=1.0, c1=-0.2),
])
def test_invalid_fields_rejected(kwargs):
    with pytest.raises(InvalidParam):
        WaveformParams(**kwargs)


def test_c2_any_real_allowed():
    assert WaveformParams(n=8, bandwidth=1.0, c1=0.1, c2=-3.7).c2 == -3.7


def test_frozen():
    p = derive(8, alpha=0.5)
    with pytest.raises(Exception):
        p.n = 16


def test_load_config(tmp_path):
    cfg = tmp_path / "p.cfg"
    cfg.write_text("# comment\nn = 64\nalpha=0.8\nbandwidth = 2.0  # inline\n")
    p = load_config(cfg)
    assert (p.n, p.bandwidth) == (64, 2.0)
    assert p.alpha == pytest.approx(0.8)


def test_load_config_defaults(tmp_path):
    cfg = tmp_path / "p.cfg"
    cfg.write_text("n=8\nc1=0.05\n")
    p = load_config(cfg)
    assert p.bandwidth == 1.0 and p.c2 == 0.0


@pytest.mark.parametrize("text", [
    "alpha=0.8\n",                      # missing n
    "n=8\nalpha=0.8\nc1=0.1\n",         # both rates
    "n=8\nalpha=0.8\nalpha=0.9\n",      # duplicate
    "n=8\nalpha=0.8\nbogus=1\n",        # unknown key
    "n=8\nalpha 0.8\n",                 # not key=value
])
def test_load_config_rejects(tmp_path, text):
    cfg = tmp_path / "p.cfg"
    cfg.write_text(text)
    with pytest.raises(InvalidParam):
        load_config(cfg)
