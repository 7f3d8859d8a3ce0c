"""
Structural checks of the bound engine on randomised small scenarios.

Every check returns a verdict with the worst residual it measured, so a failing run
shows by how much an identity was missed. Failures are results, never exceptions.

Copyright 2026, The RISLocPython developers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import os
import math
import logging
import itertools
from dataclasses import dataclass, field, asdict

import numpy as np

from .ev import SingularMatrix, is_exceptional
from .geometry import ScenarioGeometry, SphericalDirection, WaveModel, build_ura, spherical_to_cartesian, \
    intermediate_jacobian
from .channel import SignalConfig, ChannelModelFlags
from .ris import random_profile, case1_profiles, case2_profiles
from .fisher import (Parameterization, SampleMask, sample_shape, information_factor, dmu_dtheta, dmu_dthetabar,
                     mean_at_parameters, parameter_vector, fim, per_antenna_fim, efi, efim_eta, peb,
                     fim_slot_all_antennas, fim_antenna_over_slots, ETA_BLOCK)
from .config import ExperimentConfig, half_wavelength
from .settings import VERSION, CARRIER_HZ
from . import numerics, utils

logger = logging.getLogger(__name__)

FLAG_COMBINATIONS = [ChannelModelFlags(a, b) for a, b in itertools.product(WaveModel, WaveModel)]

FD_TOL = 1e-5
IDENTITY_TOL = 1e-8
EXACT_TOL = 1e-10


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    evaluated: int
    skipped: int = 0
    details: dict = field(default_factory=dict)


def _rel(a, b) -> float:
    """
    Frobenius norm of a - b relative to that of b.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    scale = np.linalg.norm(b)
    if scale == 0.0:
        return(float(np.linalg.norm(a)))
    return(float(np.linalg.norm(a - b) / scale))


# scenarios ----------------------------------------------------------------------

def _front(rng, d_low, d_high, spread=math.pi / 3) -> SphericalDirection:
    """
    A direction in front of a YZ-plane array (positive x), away from the array's z axis.
    """
    return SphericalDirection(rng.uniform(d_low, d_high), rng.uniform(math.pi / 2 - spread, math.pi / 2 + spread),
                              rng.uniform(-spread, spread))


def random_scenario(rng, n_subcarriers: int = 4, n_slots: int = 1, bandwidth_hz: float = 100e6):
    """
    A 4x4 RIS at 5 half-wavelengths, a 2x2 BS at half a wavelength two to five metres away and
    a UE between 0.5 and 1.5 m from the RIS. Returns (geometry, signal).
    """
    hw = half_wavelength()
    ris_ref = np.zeros(3)
    geometry = ScenarioGeometry(bs_reference=spherical_to_cartesian(ris_ref, _front(rng, 2.0, 5.0)),
                                ris_reference=ris_ref,
                                ue_position=spherical_to_cartesian(ris_ref, _front(rng, 0.5, 1.5, math.pi / 4)),
                                bs_offsets=build_ura(2, 2, hw), ris_offsets=build_ura(4, 4, 5 * hw))
    cfg = SignalConfig(carrier_hz=CARRIER_HZ, n_subcarriers=n_subcarriers, bandwidth_hz=bandwidth_hz,
                       n_slots=n_slots, noise_var=rng.uniform(0.5, 2.0), alpha=rng.uniform(0.5, 2.0),
                       xi_seconds=rng.uniform(0.0, 1e-9))
    return(geometry, cfg)


def diverse_scenario(rng, n_subcarriers: int = 4, n_slots: int = 1, bandwidth_hz: float = 100e6):
    """
    A 4x4 BS at 5 half-wavelengths about 1 m from a 4x4 RIS and a UE about 0.5 m away, so
    that both links are deep in the near field.
    """
    geometry, cfg = random_scenario(rng, n_subcarriers, n_slots, bandwidth_hz)
    hw = half_wavelength()
    ris_ref = geometry.ris_reference
    geometry = ScenarioGeometry(bs_reference=spherical_to_cartesian(ris_ref, _front(rng, 0.9, 1.1)),
                                ris_reference=ris_ref,
                                ue_position=spherical_to_cartesian(ris_ref, _front(rng, 0.4, 0.6, math.pi / 4)),
                                bs_offsets=build_ura(4, 4, 5 * hw), ris_offsets=geometry.ris_offsets)
    return(geometry, cfg)


def _profile(rng, geometry, cfg):
    return random_profile(geometry.n_ris, cfg.n_slots, rng.integers(0, 2 ** 32))


# checks -------------------------------------------------------------------------

def check_derivatives(rngs) -> CheckResult:
    """
    Analytic derivatives of single samples against central differences, in all four flag combinations.
    """
    worst = 0.0
    for i, rng in enumerate(rngs):
        flags = FLAG_COMBINATIONS[i % len(FLAG_COMBINATIONS)]
        geometry, cfg = random_scenario(rng)
        profile = _profile(rng, geometry, cfg)
        b, n, t = int(rng.integers(geometry.n_bs)), int(rng.integers(cfg.n_subcarriers)), 0
        for parameterization, analytic in ((Parameterization.POSITION, dmu_dtheta),
                                           (Parameterization.INTERMEDIATE, dmu_dthetabar)):
            exact = analytic(b, n, t, geometry, cfg, flags, profile)
            estimate = numerics.central_diff(
                lambda v: mean_at_parameters(v, parameterization, b, n, t, geometry, cfg, flags, profile),
                parameter_vector(parameterization, geometry, cfg))
            worst = max(worst, _rel(estimate, exact))
    return CheckResult('derivatives', worst <= FD_TOL, worst, FD_TOL, len(rngs))


def check_single_sample_rank(rngs) -> CheckResult:
    ranks = []
    for rng in rngs:
        flags = FLAG_COMBINATIONS[int(rng.integers(len(FLAG_COMBINATIONS)))]
        geometry, cfg = random_scenario(rng)
        profile = _profile(rng, geometry, cfg)
        shape = sample_shape(geometry, cfg)
        mask = SampleMask.single(shape, int(rng.integers(shape[0])), int(rng.integers(shape[1])), 0)
        ranks.append(information_factor(Parameterization.POSITION, geometry, cfg, flags, profile, mask).rank)
    return CheckResult('single_sample_rank', max(ranks) <= 2 and min(ranks) == 2, float(max(ranks)), 2.0,
                       len(ranks), details={'rank_two': sum(1 for r in ranks if r == 2)})


def check_reparameterization(rngs) -> CheckResult:
    worst = 0.0
    for i, rng in enumerate(rngs):
        flags = FLAG_COMBINATIONS[i % len(FLAG_COMBINATIONS)]
        geometry, cfg = random_scenario(rng)
        profile = _profile(rng, geometry, cfg)
        j = fim(Parameterization.POSITION, geometry, cfg, flags, profile)
        j_bar = fim(Parameterization.INTERMEDIATE, geometry, cfg, flags, profile)
        g = intermediate_jacobian(geometry)
        worst = max(worst, _rel(g.T @ j_bar @ g, j))
    return CheckResult('reparameterization', worst <= IDENTITY_TOL, worst, IDENTITY_TOL, len(rngs))


def check_efi_identity(rngs) -> CheckResult:
    """
    efi(k) times the k-th diagonal entry of the inverse intermediate FIM is one.
    """
    worst = 0.0
    skipped = 0
    flags = ChannelModelFlags()
    for rng in rngs:
        geometry, cfg = diverse_scenario(rng)
        info = information_factor(Parameterization.INTERMEDIATE, geometry, cfg, flags, _profile(rng, geometry, cfg))
        inv = numerics.factor_inverse(info.factor)
        if isinstance(inv, SingularMatrix):
            skipped += 1
            continue
        for k in ETA_BLOCK:
            value = efi(info, k)
            residual = math.inf if is_exceptional(value) else abs(value * inv[k, k] - 1.0)
            worst = max(worst, residual)
    evaluated = len(rngs) - skipped
    return CheckResult('efi_identity', evaluated > 0 and worst <= IDENTITY_TOL, worst, IDENTITY_TOL, evaluated,
                       skipped)


def check_far_field_collapse(rngs, mis_flag: bool = False) -> CheckResult:
    """
    Under the planar RIS-UE model the distance and clock-offset rows of the intermediate FIM
    coincide, both FIMs lose rank and the distance carries no equivalent information.

    mis_flag evaluates the spherical model while asserting the planar one.
    """
    worst = 0.0
    ranks = []
    for i, rng in enumerate(rngs):
        model = WaveModel.NEAR if mis_flag else WaveModel.FAR
        flags = ChannelModelFlags(model, list(WaveModel)[i % 2])
        geometry, cfg = random_scenario(rng)
        profile = _profile(rng, geometry, cfg)
        info_bar = information_factor(Parameterization.INTERMEDIATE, geometry, cfg, flags, profile)
        info = information_factor(Parameterization.POSITION, geometry, cfg, flags, profile)
        j_bar = info_bar.matrix
        rows = _rel(j_bar[2], j_bar[1])
        value = efi(info_bar, 2)
        leak = 0.0 if is_exceptional(value) else value / j_bar[2, 2]
        ranks.append(max(info_bar.rank, info.rank))
        worst = max(worst, rows / EXACT_TOL, leak / IDENTITY_TOL)
    passed = worst <= 1.0 and max(ranks) <= 4
    return CheckResult('far_field_collapse', passed, worst, 1.0, len(rngs),
                       details={'max_rank': max(ranks), 'mis_flagged': mis_flag,
                                'note': 'residual is the worst of row mismatch / 1e-10 and EFI leak / 1e-8'})


def check_power_gain(rngs) -> CheckResult:
    """
    Under the planar BS-RIS model every antenna sees the same FIM, so J = N_B J_1 and the PEB
    falls as 1 / sqrt(N_B).

    The FIM identity alternates the RIS-UE model. The PEB half keeps the spherical RIS-UE model
    with six slots and a wide band, so that a single antenna already localizes the UE.
    """
    worst_fim = 0.0
    worst_peb = 0.0
    skipped = 0
    for i, rng in enumerate(rngs):
        geometry, cfg = diverse_scenario(rng, n_subcarriers=8, n_slots=6, bandwidth_hz=1e9)
        profile = _profile(rng, geometry, cfg)
        flags = ChannelModelFlags(list(WaveModel)[i % 2], WaveModel.FAR)
        per_antenna = [per_antenna_fim(b, Parameterization.POSITION, geometry, cfg, flags, profile)
                       for b in range(geometry.n_bs)]
        j = fim(Parameterization.POSITION, geometry, cfg, flags, profile)
        worst_fim = max([worst_fim, _rel(j, geometry.n_bs * per_antenna[0])]
                        + [_rel(m, per_antenna[0]) for m in per_antenna[1:]])
        near = ChannelModelFlags(WaveModel.NEAR, WaveModel.FAR)
        shape = sample_shape(geometry, cfg)
        one = peb(information_factor(Parameterization.POSITION, geometry, cfg, near, profile,
                                     SampleMask.antenna(shape, 0)))
        every = peb(information_factor(Parameterization.POSITION, geometry, cfg, near, profile))
        if is_exceptional(one) or is_exceptional(every):
            logger.info('power gain draw %d: single antenna FIM is singular (%s)', i, one)
            skipped += 1
            continue
        worst_peb = max(worst_peb, abs(every * math.sqrt(geometry.n_bs) / one - 1.0))
    evaluated = len(rngs) - skipped
    details = {'fim_residual': worst_fim, 'peb_residual': worst_peb, 'peb_evaluated': evaluated}
    if evaluated == 0:
        details['note'] = 'no invertible single antenna FIM drawn; the PEB scaling was not evaluated'
    passed = worst_fim <= EXACT_TOL and evaluated > 0 and worst_peb <= IDENTITY_TOL
    return CheckResult('power_gain', passed, max(worst_fim, worst_peb), IDENTITY_TOL, len(rngs), skipped,
                       details=details)


def check_single_carrier(rngs) -> CheckResult:
    """
    One sub-carrier, one slot: the planar BS-RIS FIM has rank 2, the spherical one with 16
    antennas is invertible.
    """
    far_ranks = []
    near_singular = 0
    for rng in rngs:
        geometry, cfg = diverse_scenario(rng, n_subcarriers=1, bandwidth_hz=0.0)
        profile = _profile(rng, geometry, cfg)
        far = information_factor(Parameterization.POSITION, geometry, cfg,
                                 ChannelModelFlags(WaveModel.NEAR, WaveModel.FAR), profile)
        far_ranks.append(far.rank if is_exceptional(peb(far)) else far.size)
        near = peb(information_factor(Parameterization.POSITION, geometry, cfg, ChannelModelFlags(), profile))
        near_singular += int(is_exceptional(near))
    passed = all(r == 2 for r in far_ranks) and near_singular == 0
    return CheckResult('single_carrier', passed, float(max(far_ranks)), 2.0, len(rngs),
                       details={'far_ranks': far_ranks, 'near_singular': near_singular})


def check_time_space(rngs) -> CheckResult:
    """
    One antenna over N_B slots of time-equivalent profiles collects the FIM of all antennas in one slot.
    """
    worst = 0.0
    for i, rng in enumerate(rngs):
        flags = FLAG_COMBINATIONS[i % len(FLAG_COMBINATIONS)]
        geometry, cfg = random_scenario(rng)
        slot = _profile(rng, geometry, cfg).slot(0)
        b0 = int(rng.integers(geometry.n_bs))
        space = fim_slot_all_antennas(geometry, cfg, flags, slot)
        time = fim_antenna_over_slots(geometry, cfg, flags, slot, b0)
        worst = max(worst, _rel(time, space))
    return CheckResult('time_space', worst <= EXACT_TOL, worst, EXACT_TOL, len(rngs))


def check_selective_focusing(rngs) -> CheckResult:
    """
    Case 1 and Case 2 focusing leave no equivalent information on the intermediate
    parameters, and the Case 1 amplitude information is 2 N_B N_R^2 / sigma^2.
    """
    worst_efim = 0.0
    worst_alpha = 0.0
    for i, rng in enumerate(rngs):
        flags = FLAG_COMBINATIONS[i % len(FLAG_COMBINATIONS)]
        geometry, cfg = random_scenario(rng)
        n0 = int(rng.integers(cfg.n_subcarriers))
        b0 = int(rng.integers(geometry.n_bs))
        c1 = cfg.copy(n_slots=geometry.n_bs)
        c2 = cfg.copy(n_slots=cfg.n_subcarriers)
        cases = ((c1, case1_profiles(geometry, c1, n0, flags), SampleMask.case1(sample_shape(geometry, c1), n0)),
                 (c2, case2_profiles(geometry, c2, b0, flags), SampleMask.case2(sample_shape(geometry, c2), b0)))
        for k, (signal, profile, mask) in enumerate(cases):
            info = information_factor(Parameterization.INTERMEDIATE, geometry, signal, flags, profile, mask)
            eta = efim_eta(info)
            block = info.matrix[np.ix_(ETA_BLOCK, ETA_BLOCK)]
            ratio = math.inf if is_exceptional(eta) else np.linalg.norm(eta) / np.linalg.norm(block)
            worst_efim = max(worst_efim, ratio)
            if k == 0:
                expected = 2.0 * geometry.n_bs * geometry.n_ris ** 2 / signal.noise_var
                worst_alpha = max(worst_alpha, abs(info.matrix[0, 0] / expected - 1.0))
    passed = worst_efim < IDENTITY_TOL and worst_alpha <= EXACT_TOL
    return CheckResult('selective_focusing', passed, max(worst_efim, worst_alpha), IDENTITY_TOL, len(rngs),
                       details={'efim_ratio': worst_efim, 'amplitude_residual': worst_alpha})


def check_monotonicity(rngs) -> CheckResult:
    """
    Adding samples never raises the PEB.
    """
    worst = -math.inf
    skipped = 0
    flags = ChannelModelFlags()
    for rng in rngs:
        geometry, cfg = diverse_scenario(rng, n_slots=2)
        profile = _profile(rng, geometry, cfg)
        shape = sample_shape(geometry, cfg)
        small = rng.random(shape) < 0.3
        large = small | (rng.random(shape) < 0.3)
        if not small.any():
            skipped += 1
            continue
        bounds = [peb(information_factor(Parameterization.POSITION, geometry, cfg, flags, profile, m))
                  for m in (small, large)]
        if any(is_exceptional(v) for v in bounds):
            skipped += 1
            continue
        worst = max(worst, (bounds[1] - bounds[0]) / bounds[0])
    evaluated = len(rngs) - skipped
    return CheckResult('monotonicity', evaluated > 0 and worst <= EXACT_TOL, worst, EXACT_TOL, evaluated, skipped)


def _streams(seed: int, check: int, count: int):
    return([utils.trial_rng(seed, 1000 * check + i) for i in range(count)])


def run_proposition_suite(config: ExperimentConfig, mis_flag: bool = False, threads: int = 1,
                          out_dir: str = None) -> dict:
    """
    Run every check and return the report as a dictionary; with out_dir it is also written as prop-suite.json.
    """
    sweep = config.sweep
    seeds = int(sweep.get('seeds', 20))
    plan = [
        (check_derivatives, seeds),
        (check_single_sample_rank, int(sweep.get('rank_draws', 50))),
        (check_reparameterization, seeds),
        (check_efi_identity, seeds),
        (lambda rngs: check_far_field_collapse(rngs, mis_flag), seeds),
        (check_power_gain, seeds),
        (check_single_carrier, seeds),
        (check_time_space, int(sweep.get('time_space_seeds', 10))),
        (check_selective_focusing, seeds),
        (check_monotonicity, int(sweep.get('monotonic_pairs', 20))),
    ]
    logger.info('prop-suite: %d checks, master seed %d', len(plan), config.seed)

    def run(item):
        index, (check, count) = item
        result = check(_streams(config.seed, index, count))
        logger.info('%s: %s (residual %.3e)', result.name, 'pass' if result.passed else 'FAIL', result.residual)
        return(result)

    results = utils.ordered_map(run, list(enumerate(plan)), threads)
    report = {'version': VERSION, 'seed': config.seed, 'config': config.to_dict(),
              'all_passed': all(r.passed for r in results), 'checks': [asdict(r) for r in results]}
    if out_dir:
        utils.write_json(os.path.join(out_dir, 'prop-suite.json'), report)
    return(report)
