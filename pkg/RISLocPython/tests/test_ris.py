import numpy as np
import pytest

from RISLocPython import ris, channel
from RISLocPython.ris import RisProfile
from RISLocPython.channel import ChannelModelFlags, mu, mean_tensor, received_snr
from RISLocPython.fisher import SampleMask, sample_shape
from RISLocPython.geometry import WaveModel
from RISLocPython.errors import InvalidArgumentError, DegenerateGeometryError

from .helpers import small_geometry, small_signal, rng

FLAGS = [ChannelModelFlags(a, b) for a in WaveModel for b in WaveModel]


def test_random_profile():
    p = ris.random_profile(16, 3, 42)
    assert (p.n_slots, p.n_ris) == (3, 16)
    np.testing.assert_allclose(np.abs(p.coefficients), 1.0)
    assert p == ris.random_profile(16, 3, 42)
    assert not p == ris.random_profile(16, 3, 43)
    assert np.all((p.phases >= 0.0) & (p.phases < 2 * np.pi))
    with pytest.raises(InvalidArgumentError):
        ris.random_profile(0, 1, 1)


def test_profile_validation_and_json():
    with pytest.raises(InvalidArgumentError):
        RisProfile([[1.0, 0.5]])
    with pytest.raises(InvalidArgumentError):
        RisProfile.from_json('{"a": 1}')
    p = ris.random_profile(4, 2, 1)
    again = RisProfile.from_json(p.to_json())
    np.testing.assert_allclose(again.coefficients, p.coefficients, atol=1e-12)
    with pytest.raises(ValueError):
        p.coefficients[0, 0] = 1.0


@pytest.mark.parametrize('flags', FLAGS)
def test_focusing_aligns_the_reference_sample(flags):
    g = small_geometry()
    cfg = small_signal(alpha=1.3)
    focus = [1.2, 0.4, -0.3]
    p = ris.focusing_profile(g, focus, 2, 1, cfg, flags)
    value = mu(2, 1, 0, g.with_ue(focus), cfg, flags, p)
    assert abs(value) == pytest.approx(1.3 * g.n_ris, rel=1e-10)


def test_focusing_on_the_bs_reference_point():
    g = small_geometry()
    cfg = small_signal(n_subcarriers=1, bandwidth_hz=0.0)
    focus = [1.2, 0.4, -0.3]
    single = g.with_bs(bs_offsets=np.zeros((1, 3)))
    expected = ris.focusing_profile(single, focus, 0, 0, cfg)
    np.testing.assert_allclose(ris.focusing_profile(g, focus, None, None, cfg).coefficients, expected.coefficients)
    with pytest.raises(DegenerateGeometryError):
        ris.focusing_profile(g, [0.0, 0.0, 0.0], 0, 0, cfg)
    with pytest.raises(InvalidArgumentError):
        ris.focusing_profile(g, focus, 9, 0, cfg)


def test_focus_maximises_the_aligned_snr():
    g = small_geometry()
    cfg = small_signal()
    focus = np.array([1.2, 0.4, -0.3])
    flags = ChannelModelFlags()
    p = ris.focusing_profile(g, focus, 0, 2, cfg, flags)
    mask = SampleMask.single(sample_shape(g, cfg), 0, 2, 0)
    at_focus = received_snr(g.with_ue(focus), cfg, flags, p, mask)
    r = rng(3)
    for _ in range(100):
        nearby = focus + r.uniform(-0.3, 0.3, size=3)
        assert received_snr(g.with_ue(nearby), cfg, flags, p, mask) <= at_focus * (1 + 1e-12)


@pytest.mark.parametrize('flags', FLAGS)
def test_case_profiles(flags):
    g = small_geometry()
    cfg = small_signal(alpha=0.7)
    c1 = cfg.copy(n_slots=g.n_bs)
    p1 = ris.case1_profiles(g, c1, 1, flags)
    assert p1.n_slots == g.n_bs
    for t1 in range(g.n_bs):
        assert abs(mu(t1, 1, t1, g, c1, flags, p1)) == pytest.approx(0.7 * g.n_ris, rel=1e-10)
    c2 = cfg.copy(n_slots=cfg.n_subcarriers)
    p2 = ris.case2_profiles(g, c2, 3, flags)
    assert p2.n_slots == cfg.n_subcarriers
    for t2 in range(cfg.n_subcarriers):
        assert abs(mu(3, t2, t2, g, c2, flags, p2)) == pytest.approx(0.7 * g.n_ris, rel=1e-10)
    with pytest.raises(InvalidArgumentError):
        ris.case2_profiles(g, c2, 4, flags)


def test_equivalent_time_profile_identity():
    g = small_geometry()
    base = ris.random_profile(g.n_ris, 1, 5).slot(0)
    same = ris.equivalent_time_profile(base, g, 0, 2, 2, small_signal())
    np.testing.assert_array_equal(same, base)
    with pytest.raises(InvalidArgumentError):
        ris.equivalent_time_profile(base, g, 0, 2, 7, small_signal())
    with pytest.raises(InvalidArgumentError):
        ris.equivalent_time_profile(base[:3], g, 0, 2, 1, small_signal())


@pytest.mark.parametrize('flags', FLAGS)
def test_time_equivalent_samples(flags):
    g = small_geometry()
    cfg = small_signal()
    slot = ris.random_profile(g.n_ris, 1, 9).slot(0)
    space = mean_tensor(g, cfg, flags, slot[None, :])
    timed = cfg.copy(n_slots=g.n_bs)
    b0 = 1
    for n in range(cfg.n_subcarriers):
        profile = ris.time_equivalent_profiles(slot, g, n, b0, timed, flags)
        temporal = mean_tensor(g, timed, flags, profile)
        np.testing.assert_allclose(temporal[b0, n, :], space[:, n, 0], atol=1e-12 * g.n_ris)


def test_random_phases_are_centred_on_pi():
    phases = ris.random_profile(10000, 1, 2026).phases
    # uniform on [0, 2 pi): the mean has standard deviation pi / sqrt(3 * 10000)
    assert abs(phases.mean() - np.pi) < 3 * np.pi / np.sqrt(3 * 10000)


@pytest.mark.parametrize('flags', FLAGS)
def test_focusing_ignores_a_global_phase(flags):
    g = small_geometry()
    cfg = small_signal()
    focus = [1.2, 0.4, -0.3]
    p = ris.focusing_profile(g, focus, 1, 2, cfg, flags)
    h_tilde = channel.cascaded_channel(g.with_ue(focus), cfg, flags)[1, 2]
    aligned = abs(np.dot(p.slot(0), h_tilde))
    assert aligned == pytest.approx(g.n_ris, rel=1e-10)
    for gamma in (0.3, 1.7, -2.9):
        assert abs(np.dot(p.slot(0), np.exp(1j * gamma) * h_tilde)) == pytest.approx(aligned, rel=1e-12)
    # a clock offset turns every sample at the focus by a common phase only
    shifted = cfg.copy(alpha=1.0, xi_seconds=4e-10)
    assert abs(mu(1, 2, 0, g.with_ue(focus), shifted, flags, p)) == pytest.approx(g.n_ris, rel=1e-10)
