import numpy as np
import pytest

from RISLocPython import channel
from RISLocPython.channel import SignalConfig, ChannelModelFlags
from RISLocPython.geometry import WaveModel, C
from RISLocPython.errors import InvalidArgumentError

from .helpers import small_geometry, small_signal, profile_for

FLAGS = [ChannelModelFlags(a, b) for a in WaveModel for b in WaveModel]


def test_subcarrier_grid():
    cfg = small_signal(n_subcarriers=4, bandwidth_hz=400e6)
    f = channel.frequencies(cfg)
    assert f.mean() == pytest.approx(cfg.carrier_hz)
    assert channel.subcarrier_freq(0, cfg) == pytest.approx(cfg.carrier_hz - 150e6)
    np.testing.assert_allclose(np.diff(f), 100e6)
    assert channel.subcarrier_freq(3, cfg) == f[3]
    with pytest.raises(InvalidArgumentError):
        channel.subcarrier_freq(4, cfg)
    assert channel.subcarrier_freq(0, small_signal(n_subcarriers=1, bandwidth_hz=0.0)) == cfg.carrier_hz


def test_signal_config_validation():
    with pytest.raises(InvalidArgumentError):
        SignalConfig(alpha=0.0)
    with pytest.raises(InvalidArgumentError):
        SignalConfig(noise_var=-1.0)
    with pytest.raises(InvalidArgumentError):
        SignalConfig(n_subcarriers=2, pilot=[[1.0], [0.5]])
    with pytest.raises(InvalidArgumentError):
        SignalConfig(n_subcarriers=2, pilot=np.ones((3, 1)))
    with pytest.raises(InvalidArgumentError):
        small_signal().copy(colour='red')
    cfg = SignalConfig(n_subcarriers=2, n_slots=2, pilot=np.exp(1j * np.ones((2, 2))), xi_seconds=2e-9)
    assert cfg.c_xi == pytest.approx(C * 2e-9)
    resized = cfg.copy(n_slots=3)
    assert resized.pilot.shape == (2, 3)
    assert np.all(resized.pilot == 1.0)
    assert cfg.copy(alpha=2.0).pilot[0, 0] == cfg.pilot[0, 0]


def test_flags():
    flags = ChannelModelFlags('far', 'near')
    assert flags.ris_ue is WaveModel.FAR and flags.bs_ris is WaveModel.NEAR
    assert flags.to_dict() == {'ris_ue': 'far', 'bs_ris': 'near'}
    with pytest.raises(InvalidArgumentError):
        ChannelModelFlags('nearish')


def test_unit_modulus_responses():
    g = small_geometry()
    cfg = small_signal()
    for model in WaveModel:
        np.testing.assert_allclose(np.abs(channel.h_ru(1, g, cfg, model=model)), 1.0)
        np.testing.assert_allclose(np.abs(channel.h_br(1, g, cfg, model)), 1.0)


def test_far_bs_ris_channel_is_rank_one():
    g = small_geometry()
    h = channel.h_br_far(2, g, small_signal())
    s = np.linalg.svd(h, compute_uv=False)
    assert s[1] < 1e-12 * s[0]
    assert np.linalg.matrix_rank(channel.h_br_near(2, g, small_signal())) > 1


@pytest.mark.parametrize('flags', FLAGS)
def test_cascaded_channel(flags):
    g = small_geometry()
    cfg = small_signal()
    h = channel.cascaded_channel(g, cfg, flags)
    assert h.shape == (4, 4, 16)
    for n in range(cfg.n_subcarriers):
        expected = channel.h_br(n, g, cfg, flags.bs_ris) * channel.h_ru(n, g, cfg, model=flags.ris_ue)[None, :]
        np.testing.assert_allclose(h[:, n, :], expected, atol=1e-12)


@pytest.mark.parametrize('flags', FLAGS)
def test_mean_tensor_matches_mu(flags):
    g = small_geometry()
    cfg = small_signal(n_slots=2, alpha=1.5, xi_seconds=3e-9)
    profile = profile_for(g, cfg)
    m = channel.mean_tensor(g, cfg, flags, profile)
    assert m.shape == (4, 4, 2)
    for b, n, t in [(0, 0, 0), (3, 1, 1), (2, 3, 0)]:
        assert m[b, n, t] == pytest.approx(channel.mu(b, n, t, g, cfg, flags, profile), rel=1e-12)
    with pytest.raises(InvalidArgumentError):
        channel.mu(4, 0, 0, g, cfg, flags, profile)
    with pytest.raises(InvalidArgumentError):
        channel.mean_tensor(g, small_signal(), flags, profile)


def test_received_snr_scaling():
    g = small_geometry()
    cfg = small_signal()
    flags = ChannelModelFlags()
    profile = profile_for(g, cfg)
    snr = channel.received_snr(g, cfg, flags, profile)
    assert channel.received_snr(g, cfg.copy(alpha=2.0), flags, profile) == pytest.approx(4.0 * snr)
    assert channel.received_snr(g, cfg.copy(noise_var=2.0), flags, profile) == pytest.approx(snr / 2.0)
    with pytest.raises(InvalidArgumentError):
        channel.received_snr(g, cfg, flags, profile, mask=np.zeros((4, 4, 1), dtype=bool))


def test_near_bs_ris_channel_has_full_row_rank():
    g = small_geometry()
    s = np.linalg.svd(channel.h_br_near(2, g, small_signal()), compute_uv=False)
    assert len(s) == g.n_bs
    assert s[-1] > 1e-6 * s[0]


@pytest.mark.parametrize('flags', FLAGS)
def test_mu_is_linear_in_alpha_and_pilot(flags):
    g = small_geometry()
    cfg = small_signal(n_slots=2, alpha=1.5)
    profile = profile_for(g, cfg)
    value = channel.mu(1, 2, 1, g, cfg, flags, profile)
    assert channel.mu(1, 2, 1, g, cfg.copy(alpha=4.5), flags, profile) == pytest.approx(3.0 * value, rel=1e-12)
    pilot = np.ones((4, 2), dtype=complex)
    pilot[2, 1] = np.exp(0.7j)
    turned = cfg.copy(pilot=pilot)
    assert channel.mu(1, 2, 1, g, turned, flags, profile) == pytest.approx(np.exp(0.7j) * value, rel=1e-12)
    assert channel.mu(1, 2, 0, g, turned, flags, profile) == pytest.approx(channel.mu(1, 2, 0, g, cfg, flags, profile),
                                                                            rel=1e-12)


@pytest.mark.parametrize('flags', FLAGS)
def test_clock_offset_only_turns_the_phase(flags):
    g = small_geometry()
    cfg = small_signal(n_slots=2, xi_seconds=1e-9)
    shift = 2.5e-10
    profile = profile_for(g, cfg)
    before = channel.mean_tensor(g, cfg, flags, profile)
    after = channel.mean_tensor(g, cfg.copy(xi_seconds=1e-9 + shift), flags, profile)
    turn = np.exp(-2j * np.pi * channel.frequencies(cfg) * shift)
    np.testing.assert_allclose(after, before * turn[None, :, None], rtol=1e-10)
