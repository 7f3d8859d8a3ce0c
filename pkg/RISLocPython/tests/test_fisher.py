import json
import math

import numpy as np
import pytest

from RISLocPython import fisher, numerics
from RISLocPython.fisher import Parameterization, SampleMask, FisherInformation, sample_shape
from RISLocPython.channel import ChannelModelFlags
from RISLocPython.geometry import WaveModel, intermediate_jacobian
from RISLocPython.ev import SingularFIM, UndefinedEFI, SingularNuisance
from RISLocPython.errors import InvalidArgumentError, EmptyMaskError

from .helpers import small_geometry, small_signal, profile_for, diverse_scenario, rng

FLAGS = [ChannelModelFlags(a, b) for a in WaveModel for b in WaveModel]
NAMES = ('alpha', 'c_xi', 'd', 'phi', 'theta')


def _rel(a, b):
    return(np.linalg.norm(np.asarray(a) - np.asarray(b)) / np.linalg.norm(b))


def _spd_factor(seed=0, rows=20):
    return(np.random.default_rng(seed).normal(size=(rows, 5)))


def test_sample_masks():
    shape = (3, 4, 2)
    assert SampleMask.full(shape).count == 24
    assert SampleMask.antenna(shape, 1).count == 8
    assert SampleMask.subcarrier(shape, 2).count == 6
    assert SampleMask.slot(shape, 0).count == 12
    assert SampleMask.case1(shape, 3).count == 2
    assert SampleMask.case2(shape, 0).count == 2
    single = SampleMask.single(shape, 2, 3, 1)
    assert single.issubset(SampleMask.antenna(shape, 2))
    assert (single | SampleMask.slot(shape, 0)).count == 13
    assert (SampleMask.antenna(shape, 0) & SampleMask.slot(shape, 1)).count == 4
    assert SampleMask.from_predicate(shape, lambda b, n, t: n == t).count == 6
    with pytest.raises(EmptyMaskError):
        SampleMask(np.zeros(shape, dtype=bool))
    with pytest.raises(EmptyMaskError):
        SampleMask.antenna(shape, 0) & SampleMask.antenna(shape, 1)
    with pytest.raises(InvalidArgumentError):
        SampleMask.single(shape, 3, 0, 0)


@pytest.mark.parametrize('flags', FLAGS)
def test_fim_is_the_sum_over_samples(flags):
    g = small_geometry()
    cfg = small_signal(n_slots=2, noise_var=0.5, alpha=1.2, xi_seconds=1e-9)
    profile = profile_for(g, cfg)
    j = fisher.fim(Parameterization.POSITION, g, cfg, flags, profile)
    expected = np.zeros((5, 5))
    for b in range(g.n_bs):
        for n in range(cfg.n_subcarriers):
            for t in range(cfg.n_slots):
                d = fisher.dmu_dtheta(b, n, t, g, cfg, flags, profile)
                expected += 2.0 / cfg.noise_var * np.real(np.outer(np.conj(d), d))
    assert _rel(j, expected) < 1e-10
    assert numerics.is_symmetric(j)
    assert np.min(np.linalg.eigvalsh(j)) > -1e-8 * np.max(np.abs(j))


@pytest.mark.parametrize('flags', FLAGS)
def test_mean_jacobian_matches_per_sample_derivatives(flags):
    g = small_geometry()
    cfg = small_signal()
    profile = profile_for(g, cfg)
    d = fisher.mean_jacobian(Parameterization.INTERMEDIATE, g, cfg, flags, profile)
    assert d.shape == (4, 4, 1, 5)
    np.testing.assert_allclose(d[3, 2, 0], fisher.dmu_dthetabar(3, 2, 0, g, cfg, flags, profile), rtol=1e-10)


@pytest.mark.parametrize('flags', FLAGS)
def test_derivatives_against_finite_differences(flags):
    g = small_geometry()
    cfg = small_signal(alpha=0.8, xi_seconds=5e-10)
    profile = profile_for(g, cfg)
    for parameterization, analytic in ((Parameterization.POSITION, fisher.dmu_dtheta),
                                       (Parameterization.INTERMEDIATE, fisher.dmu_dthetabar)):
        exact = analytic(1, 2, 0, g, cfg, flags, profile)
        estimate = numerics.central_diff(
            lambda v: fisher.mean_at_parameters(v, parameterization, 1, 2, 0, g, cfg, flags, profile),
            fisher.parameter_vector(parameterization, g, cfg))
        assert _rel(estimate, exact) < 1e-5


def test_single_sample_rank():
    g = small_geometry()
    cfg = small_signal()
    mask = SampleMask.single(sample_shape(g, cfg), 1, 1, 0)
    info = fisher.information_factor(Parameterization.POSITION, g, cfg, ChannelModelFlags(), profile_for(g, cfg), mask)
    assert info.rank == 2
    assert isinstance(fisher.peb(info), SingularFIM)
    assert fisher.peb(info).rank == 2


@pytest.mark.parametrize('flags', FLAGS)
def test_reparameterization(flags):
    g = small_geometry()
    cfg = small_signal()
    profile = profile_for(g, cfg)
    j = fisher.fim(Parameterization.POSITION, g, cfg, flags, profile)
    j_bar = fisher.fim(Parameterization.INTERMEDIATE, g, cfg, flags, profile)
    jac = intermediate_jacobian(g)
    assert _rel(jac.T @ j_bar @ jac, j) < 1e-8


@pytest.mark.parametrize('bs_ris', list(WaveModel))
def test_far_field_distance_information_collapses(bs_ris):
    g = small_geometry()
    cfg = small_signal()
    flags = ChannelModelFlags(WaveModel.FAR, bs_ris)
    profile = profile_for(g, cfg)
    info_bar = fisher.information_factor(Parameterization.INTERMEDIATE, g, cfg, flags, profile)
    j_bar = info_bar.matrix
    assert _rel(j_bar[2], j_bar[1]) < 1e-10
    assert info_bar.rank <= 4
    assert fisher.information_factor(Parameterization.POSITION, g, cfg, flags, profile).rank <= 4
    leak = fisher.efi(info_bar, 2)
    assert isinstance(leak, UndefinedEFI) or leak <= 1e-8 * j_bar[2, 2]
    assert isinstance(fisher.peb(info_bar), SingularFIM)
    reduced = fisher.fim_reduced_farfield(g, cfg, flags, profile)
    assert reduced.shape == (4, 4)
    np.testing.assert_allclose(reduced, j_bar[np.ix_([0, 1, 3, 4], [0, 1, 3, 4])], rtol=1e-9, atol=1e-10 * np.max(np.abs(reduced)))


def test_reduced_vector_requires_planar_model():
    g = small_geometry()
    cfg = small_signal()
    with pytest.raises(InvalidArgumentError):
        fisher.fim_reduced_farfield(g, cfg, ChannelModelFlags(), profile_for(g, cfg))


def test_near_field_distance_information_survives():
    g, cfg = diverse_scenario(rng(4))
    profile = profile_for(g, cfg)
    ratios = {}
    for ris_ue in WaveModel:
        info_bar = fisher.information_factor(Parameterization.INTERMEDIATE, g, cfg, ChannelModelFlags(ris_ue),
                                             profile)
        value = fisher.efi(info_bar, 2)
        ratios[ris_ue] = 0.0 if isinstance(value, UndefinedEFI) else value / info_bar.matrix[2, 2]
    # a ~0.5 m UE in front of a 0.08 m aperture keeps about 1e-7 of J_dd; the planar model keeps rounding noise
    assert ratios[WaveModel.NEAR] > 1e-9
    assert ratios[WaveModel.NEAR] > 1e8 * ratios[WaveModel.FAR]


@pytest.mark.parametrize('ris_ue', list(WaveModel))
def test_power_gain_fims(ris_ue):
    g = small_geometry()
    cfg = small_signal(n_slots=2)
    flags = ChannelModelFlags(ris_ue, WaveModel.FAR)
    profile = profile_for(g, cfg)
    per_antenna = [fisher.per_antenna_fim(b, Parameterization.POSITION, g, cfg, flags, profile) for b in range(g.n_bs)]
    for m in per_antenna[1:]:
        assert _rel(m, per_antenna[0]) < 1e-10
    j = fisher.fim(Parameterization.POSITION, g, cfg, flags, profile)
    assert _rel(j, g.n_bs * per_antenna[0]) < 1e-10


def test_spatial_gain_fims_differ():
    g = small_geometry()
    cfg = small_signal()
    profile = profile_for(g, cfg)
    a = fisher.per_antenna_fim(0, Parameterization.POSITION, g, cfg, ChannelModelFlags(), profile)
    b = fisher.per_antenna_fim(3, Parameterization.POSITION, g, cfg, ChannelModelFlags(), profile)
    assert _rel(a, b) > 1e-6


def test_efi_factor_and_matrix_paths_agree():
    a = _spd_factor()
    info = FisherInformation(a, NAMES)
    j = a.T @ a
    inv = np.linalg.inv(j)
    for k in range(5):
        assert fisher.efi(info, k) == pytest.approx(fisher.efi(j, k), rel=1e-9)
        assert fisher.efi(info, k) * inv[k, k] == pytest.approx(1.0, rel=1e-9)
    np.testing.assert_allclose(fisher.efim_eta(info), fisher.efim_eta(j), rtol=1e-9)
    np.testing.assert_allclose(np.linalg.inv(fisher.efim_eta(j)), inv[2:, 2:], rtol=1e-9)
    assert fisher.peb(info) == pytest.approx(math.sqrt(np.trace(inv[2:, 2:])), rel=1e-9)
    assert fisher.peb(j, [0, 1]) == pytest.approx(math.sqrt(inv[0, 0] + inv[1, 1]), rel=1e-9)
    with pytest.raises(InvalidArgumentError):
        fisher.efi(j, 5)


def test_peb_of_diagonal_fim():
    assert fisher.peb(np.diag([1.0, 1.0, 4.0, 4.0, 4.0])) == pytest.approx(math.sqrt(0.75))


def test_diagnostics():
    a = _spd_factor(1)
    a[:, 1] = a[:, 0]
    info = FisherInformation(a, NAMES)
    result = fisher.efi(info, 2)
    assert isinstance(result, UndefinedEFI)
    assert result.sentinel == 'UNDEFINED'
    assert isinstance(fisher.efim_eta(info), SingularNuisance)
    singular = fisher.peb(info)
    assert isinstance(singular, SingularFIM) and singular.rank == 4
    assert singular.to_dict()['diagnostic'] == 'Singular FIM'
    assert isinstance(fisher.crlb_intermediate(info), SingularFIM)
    with pytest.raises(InvalidArgumentError):
        fisher.efim_eta(np.eye(4))


def test_fisher_information_container():
    a = _spd_factor(2)
    info = FisherInformation(a, NAMES)
    np.testing.assert_allclose((info + info).matrix, 2 * info.matrix)
    np.testing.assert_allclose(info.scaled(3.0).matrix, 3 * info.matrix)
    restricted = info.restrict([2, 3, 4])
    assert restricted.params == ('d', 'phi', 'theta')
    np.testing.assert_allclose(restricted.matrix, info.matrix[2:, 2:])
    with pytest.raises(InvalidArgumentError):
        FisherInformation(a[:, :3], NAMES)
    with pytest.raises(InvalidArgumentError):
        info + restricted


def test_parallel_assembly_is_identical():
    g = small_geometry()
    cfg = small_signal()
    profile = profile_for(g, cfg)
    serial = fisher.information_factor(Parameterization.POSITION, g, cfg, ChannelModelFlags(), profile)
    threaded = fisher.information_factor(Parameterization.POSITION, g, cfg, ChannelModelFlags(), profile, workers=4)
    assert np.array_equal(serial.factor, threaded.factor)


@pytest.mark.parametrize('flags', FLAGS)
def test_time_space_trade(flags):
    g = small_geometry()
    cfg = small_signal()
    slot = profile_for(g, cfg).slot(0)
    space = fisher.fim_slot_all_antennas(g, cfg, flags, slot)
    for b0 in range(g.n_bs):
        assert _rel(fisher.fim_antenna_over_slots(g, cfg, flags, slot, b0), space) < 1e-10


@pytest.mark.parametrize('flags', FLAGS)
def test_selective_focusing_removes_position_information(flags):
    from RISLocPython.ris import case1_profiles, case2_profiles
    g = small_geometry()
    cfg = small_signal(noise_var=0.25)
    c1 = cfg.copy(n_slots=g.n_bs)
    info = fisher.information_factor(Parameterization.INTERMEDIATE, g, c1, flags, case1_profiles(g, c1, 2, flags),
                                     SampleMask.case1(sample_shape(g, c1), 2))
    eta = fisher.efim_eta(info)
    assert np.linalg.norm(eta) < 1e-8 * np.linalg.norm(info.matrix[2:, 2:])
    assert info.matrix[0, 0] == pytest.approx(2.0 * g.n_bs * g.n_ris ** 2 / 0.25, rel=1e-10)
    c2 = cfg.copy(n_slots=cfg.n_subcarriers)
    info = fisher.information_factor(Parameterization.INTERMEDIATE, g, c2, flags, case2_profiles(g, c2, 1, flags),
                                     SampleMask.case2(sample_shape(g, c2), 1))
    assert np.linalg.norm(fisher.efim_eta(info)) < 1e-8 * np.linalg.norm(info.matrix[2:, 2:])


def test_monotone_in_samples():
    g, cfg = diverse_scenario(rng(11), n_slots=2)
    profile = profile_for(g, cfg)
    shape = sample_shape(g, cfg)
    r = rng(12)
    small = r.random(shape) < 0.3
    large = small | (r.random(shape) < 0.3)
    flags = ChannelModelFlags()
    bounds = [fisher.peb(fisher.information_factor(Parameterization.POSITION, g, cfg, flags, profile, m))
              for m in (small, large)]
    assert all(isinstance(v, float) for v in bounds)
    assert bounds[1] <= bounds[0] * (1 + 1e-10)


def test_report():
    g = small_geometry()
    cfg = small_signal()
    report = fisher.fisher_report(g, cfg, ChannelModelFlags(WaveModel.FAR, WaveModel.NEAR), profile_for(g, cfg))
    data = json.loads(report.to_json())
    assert data['peb']['diagnostic'] == 'Singular FIM'
    assert set(data['efi']) == {'d_RU', 'phi_RU', 'theta_RU'}
    assert data['rank_diagnostics']['intermediate']['rank'] <= 4
    assert len(data['fim_position']) == 5
