"""
Experiment runners: PEB maps, EFI against distance, spatial against power gain and the
focusing evaluation.

Each runner takes an ExperimentConfig, returns its results in memory and, when an
output directory is given, writes CSV tables plus a JSON sidecar holding the resolved
configuration and the summary. Grid points and trials run on a thread pool; every
random draw is seeded from (master seed, trial index), so the outputs do not depend
on the number of threads.

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
from dataclasses import dataclass, field

import numpy as np

from .errors import NormalizationError, ConfigurationError, RISLocError
from .ev import ExceptionalValue, PointError, is_exceptional
from .geometry import ScenarioGeometry, SphericalDirection, WaveModel, build_ura, spherical_to_cartesian
from .channel import SignalConfig, ChannelModelFlags, mean_tensor, received_snr
from .ris import RisProfile, random_profile, focusing_profile, case1_profiles, case2_profiles
from .fisher import Parameterization, information_factor, peb, efi, crlb_intermediate
from .config import ExperimentConfig, half_wavelength
from .settings import VERSION
from . import utils

logger = logging.getLogger(__name__)


@dataclass
class RunResult:
    """
    In-memory outcome of a run: named tables (lists of row dicts with their column order) and a summary.
    """
    experiment: str
    tables: dict = field(default_factory=dict)
    columns: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def add_table(self, name, columns, rows):
        self.columns[name] = list(columns)
        self.tables[name] = rows


def _cell(v):
    return(v.sentinel if is_exceptional(v) else v)


# SNR normalisation --------------------------------------------------------------

def normalize_snr(geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags, profile,
                  target_snr_db: float) -> float:
    """
    The alpha that makes the average per-sample SNR sum |mu|^2 / (N_B N T sigma^2) equal target_snr_db.
    """
    power = np.abs(mean_tensor(geometry, cfg, flags, profile)) ** 2
    energy = float(np.sum(power))
    if not energy > 0.0 or not math.isfinite(energy):
        raise NormalizationError("the received signal carries no energy; the SNR cannot be normalised.")
    achieved = energy / (power.size * cfg.noise_var)
    target = 10.0 ** (target_snr_db / 10.0)
    return(cfg.alpha * math.sqrt(target / achieved))


def apply_snr_policy(policy: dict, geometry, cfg: SignalConfig, flags, profile) -> SignalConfig:
    if policy['kind'] == 'fixed-received-snr':
        return(cfg.copy(alpha=normalize_snr(geometry, cfg, flags, profile, policy['target_db'])))
    return(cfg)


# profiles -----------------------------------------------------------------------

def build_profile(config: ExperimentConfig, geometry: ScenarioGeometry, cfg: SignalConfig,
                  flags: ChannelModelFlags, trial: int = 0) -> RisProfile:
    spec = config.profile
    kind = spec['kind']
    if kind == 'random':
        return random_profile(geometry.n_ris, cfg.n_slots, utils.trial_seed(config.seed, trial))
    if kind == 'focusing':
        p = focusing_profile(geometry, spec['focus_point'], spec.get('ref_antenna'), spec.get('n0'), cfg, flags)
        return RisProfile(np.repeat(p.coefficients, cfg.n_slots, axis=0))
    if kind == 'case1':
        p = case1_profiles(geometry, cfg, spec.get('n0', 0), flags)
    else:
        p = case2_profiles(geometry, cfg, spec.get('b0', 0), flags)
    if p.n_slots != cfg.n_slots:
        raise ConfigurationError(kind + " needs signal.n_slots = " + str(p.n_slots))
    return p


def _bound_at(geometry, cfg, flags, profile, policy, parameterization=Parameterization.POSITION):
    """
    (PEB or diagnostic, average SNR in dB) at the UE position of geometry.
    """
    try:
        scaled = apply_snr_policy(policy, geometry, cfg, flags, profile)
        info = information_factor(parameterization, geometry, scaled, flags, profile)
        snr = received_snr(geometry, scaled, flags, profile)
    except RISLocError as e:
        logger.warning('point %s skipped: %s', geometry.ue_position.tolist(), e)
        return(PointError(str(e)), float('nan'))
    bound = peb(info)
    if is_exceptional(bound):
        logger.debug('point %s: %s', geometry.ue_position.tolist(), bound)
    return(bound, 10.0 * math.log10(snr) if snr > 0 else float('-inf'))


def _plane_points(sweep):
    xs = utils.linspace(sweep['x'])
    ys = utils.linspace(sweep['y'])
    return([(float(x), float(y)) for y in ys for x in xs])


def _sidecar(config: ExperimentConfig, result: RunResult, name: str):
    return({'experiment': result.experiment, 'version': VERSION, 'config': config.to_dict(),
            'summary': result.summary, 'tables': {k: name + '_' + k + '.csv' for k in result.tables}})


def write_outputs(config: ExperimentConfig, result: RunResult, out_dir: str, name: str = None):
    """
    Write every table as <name>_<table>.csv and the sidecar as <name>.json.
    """
    name = name or result.experiment
    paths = []
    for table, rows in result.tables.items():
        cols = result.columns[table]
        paths.append(utils.write_csv(os.path.join(out_dir, name + '_' + table + '.csv'), cols,
                                     [{k: _cell(r[k]) for k in cols} for r in rows]))
    paths.append(utils.write_json(os.path.join(out_dir, name + '.json'), _sidecar(config, result, name)))
    return(paths)


# PEB heatmap --------------------------------------------------------------------

def run_peb_heatmap(config: ExperimentConfig, threads: int = 1, out_dir: str = None) -> RunResult:
    """
    PEB over a horizontal grid at fixed height with one random profile and a fixed received SNR per point.
    """
    sweep = config.sweep
    base = config.geometry
    cfg = config.signal
    flags = config.flags
    profile = build_profile(config, base, cfg, flags)
    policy = config.snr_policy
    points = _plane_points(sweep)
    z = float(sweep['z'])
    logger.info('peb-map: %d points, flags %s', len(points), flags.to_dict())

    def evaluate(xy):
        try:
            geometry = base.with_ue([xy[0], xy[1], z])
        except RISLocError as e:
            return(PointError(str(e)), float('nan'), float('nan'))
        bound, _ = _bound_at(geometry, cfg, flags, profile, policy)
        return(bound, geometry.d_ru, None)

    values = utils.ordered_map(evaluate, points, threads)
    rows = [{'x_m': x, 'y_m': y, 'd_ru_m': v[1], 'peb_m': v[0]} for (x, y), v in zip(points, values)]
    near = [r['peb_m'] for r in rows if r['d_ru_m'] < sweep['near_radius']]
    far = [r['peb_m'] for r in rows if r['d_ru_m'] > sweep['far_radius']]
    result = RunResult('peb-map')
    result.add_table('grid', ['x_m', 'y_m', 'd_ru_m', 'peb_m'], rows)
    bounds = [r['peb_m'] for r in rows]
    result.summary = {
        'points': len(rows),
        'singular_points': sum(1 for v in bounds if isinstance(v, ExceptionalValue)),
        'error_points': sum(1 for v in bounds if isinstance(v, PointError)),
        'near_points': len(near),
        'far_points': len(far),
        'median_peb_near_m': utils.robust_median(near),
        'median_peb_far_m': utils.robust_median(far),
    }
    if out_dir:
        write_outputs(config, result, out_dir)
    logger.info('peb-map done: %s', result.summary)
    return(result)


# EFI against distance -----------------------------------------------------------

def run_efi_vs_distance(config: ExperimentConfig, threads: int = 1, out_dir: str = None) -> RunResult:
    """
    EFI of d_RU, phi_RU and theta_RU along a ray from the RIS for the spherical and the planar
    RIS-UE models. Far-field angle EFIs come from the reduced parameter vector.
    """
    sweep = config.sweep
    base = config.geometry
    cfg = config.signal
    policy = config.snr_policy
    distances = utils.geomspace(sweep['distance'])
    elevation = float(sweep['elevation'])
    azimuth = float(sweep['azimuth'])
    profile = build_profile(config, base, cfg, config.flags)
    near_flags = ChannelModelFlags(WaveModel.NEAR, config.flags.bs_ris)
    far_flags = ChannelModelFlags(WaveModel.FAR, config.flags.bs_ris)
    logger.info('efi-sweep: %d distances', len(distances))

    def evaluate(item):
        d, flags = item
        try:
            return(_efi_row(d, flags))
        except RISLocError as e:
            logger.warning('distance %g m (%s) skipped: %s', d, flags.ris_ue.value, e)
            failed = PointError(str(e))
            return({'d_ru_m': d, 'model': flags.ris_ue.value, 'efi_d_per_m2': failed, 'efi_phi_per_rad2': failed,
                    'efi_theta_per_rad2': failed, 'j_dd_per_m2': float('nan')})

    def _efi_row(d, flags):
        geometry = base.with_ue(spherical_to_cartesian(base.ris_reference, SphericalDirection(d, elevation, azimuth)))
        scaled = apply_snr_policy(policy, geometry, cfg, flags, profile)
        info_bar = information_factor(Parameterization.INTERMEDIATE, geometry, scaled, flags, profile)
        j33 = float(info_bar.matrix[2, 2])
        row = {'d_ru_m': d, 'model': flags.ris_ue.value, 'efi_d_per_m2': efi(info_bar, 2), 'j_dd_per_m2': j33}
        if flags.ris_ue is WaveModel.FAR:
            reduced = information_factor(Parameterization.REDUCED, geometry, scaled, flags, profile)
            row['efi_phi_per_rad2'] = efi(reduced, 2)
            row['efi_theta_per_rad2'] = efi(reduced, 3)
        else:
            row['efi_phi_per_rad2'] = efi(info_bar, 3)
            row['efi_theta_per_rad2'] = efi(info_bar, 4)
        return(row)

    items = [(float(d), f) for f in (near_flags, far_flags) for d in distances]
    rows = utils.ordered_map(evaluate, items, threads)
    near = [r for r in rows if r['model'] == 'near']
    far = [r for r in rows if r['model'] == 'far']
    near_efi_d = [utils.sort_key(r['efi_d_per_m2']) for r in near]
    angles = [r[k] for r in rows for k in ('efi_phi_per_rad2', 'efi_theta_per_rad2')]
    far_ratio = [utils.sort_key(r['efi_d_per_m2']) / r['j_dd_per_m2'] for r in far if r['j_dd_per_m2'] > 0]
    result = RunResult('efi-sweep')
    result.add_table('efi', ['d_ru_m', 'model', 'efi_d_per_m2', 'efi_phi_per_rad2', 'efi_theta_per_rad2',
                             'j_dd_per_m2'], rows)
    result.summary = {
        'near_efi_d_strictly_decreasing': all(b < a for a, b in zip(near_efi_d, near_efi_d[1:])),
        'near_efi_d_final_over_initial': near_efi_d[-1] / near_efi_d[0] if near_efi_d[0] > 0 else None,
        'far_max_efi_d_over_j_dd': max(far_ratio) if far_ratio else None,
        'angle_efis_positive': all(not is_exceptional(v) and v > 0 for v in angles),
    }
    if out_dir:
        write_outputs(config, result, out_dir)
    logger.info('efi-sweep done: %s', result.summary)
    return(result)


# spatial gain against power gain --------------------------------------------------

def _bs_geometry(base: ScenarioGeometry, config: ExperimentConfig, d_br: float = None, spacing_hw: float = None):
    bs = config.to_dict()['geometry']['bs_array']
    reference = base.bs_reference
    if d_br is not None:
        u = base.bs_reference - base.ris_reference
        reference = base.ris_reference + d_br * u / np.linalg.norm(u)
    offsets = base.bs_offsets
    if spacing_hw is not None:
        offsets = build_ura(bs['rows'], bs['cols'], spacing_hw * half_wavelength(config.signal.carrier_hz),
                            bs.get('plane', 'YZ'))
    return(base.with_bs(bs_reference=reference, bs_offsets=offsets))


def run_gain_comparison(config: ExperimentConfig, threads: int = 1, out_dir: str = None) -> RunResult:
    """
    Monte Carlo comparison of the near-field (spatial gain) and far-field (power gain) BS-RIS
    models over random profiles, swept over d_BR and the BS antenna spacing for each resource
    configuration. Trial t of every sweep point uses the same random profile.
    """
    sweep = config.sweep
    base = config.geometry
    trials = int(config.profile.get('trials', 1))
    policy = config.snr_policy
    spatial = ChannelModelFlags(config.flags.ris_ue, WaveModel.NEAR)
    power = ChannelModelFlags(config.flags.ris_ue, WaveModel.FAR)
    tasks = []
    for rc in sweep['configs']:
        cfg = config.signal.copy(bandwidth_hz=rc['bandwidth_hz'], n_slots=int(rc['n_slots']))
        tasks += [('base', rc['name'], 0.0, cfg, base)]
        tasks += [('d_br', rc['name'], float(v), cfg, _bs_geometry(base, config, d_br=v)) for v in sweep['d_br']]
        tasks += [('bs_spacing', rc['name'], float(v), cfg, _bs_geometry(base, config, spacing_hw=v))
                  for v in sweep['bs_spacing_half_wl']]
    logger.info('gain-compare: %d sweep points x %d trials', len(tasks), trials)

    def evaluate(item):
        (kind, name, value, cfg, geometry), trial = item
        profile = random_profile(geometry.n_ris, cfg.n_slots, utils.trial_seed(config.seed, trial))
        peb_spatial, _ = _bound_at(geometry, cfg, spatial, profile, policy)
        peb_power, _ = _bound_at(geometry, cfg, power, profile, policy)
        return({'sweep': kind, 'config': name, 'value': value, 'trial': trial, 'peb_spatial_m': peb_spatial,
                'peb_power_m': peb_power})

    rows = utils.ordered_map(evaluate, [(task, t) for task in tasks for t in range(trials)], threads)
    aggregates = []
    for kind, name, value, _, _ in tasks:
        group = [r for r in rows if r['sweep'] == kind and r['config'] == name and r['value'] == value]
        mean_s, bad_s = utils.finite_mean(r['peb_spatial_m'] for r in group)
        mean_p, bad_p = utils.finite_mean(r['peb_power_m'] for r in group)
        both = [r for r in group if not is_exceptional(r['peb_spatial_m']) and not is_exceptional(r['peb_power_m'])]
        wins = sum(1 for r in both if r['peb_power_m'] < r['peb_spatial_m'])
        aggregates.append({'sweep': kind, 'config': name, 'value': value,
                           'mean_peb_spatial_m': mean_s, 'mean_peb_power_m': mean_p,
                           'spatial_over_power': mean_s / mean_p if mean_s is not None and mean_p else None,
                           'singular_spatial': bad_s, 'singular_power': bad_p,
                           'power_win_ratio': wins / len(both) if both else None})
    result = RunResult('gain-compare')
    result.add_table('trials', ['sweep', 'config', 'value', 'trial', 'peb_spatial_m', 'peb_power_m'], rows)
    result.add_table('summary', ['sweep', 'config', 'value', 'mean_peb_spatial_m', 'mean_peb_power_m',
                                 'spatial_over_power', 'singular_spatial', 'singular_power', 'power_win_ratio'],
                     [{k: ('' if v is None else v) for k, v in a.items()} for a in aggregates])
    result.summary = {
        'trials': trials,
        'win_ratio': {a['config']: a['power_win_ratio'] for a in aggregates if a['sweep'] == 'base'},
        'spatial_over_power_vs_d_br': {c['name']: {str(a['value']): a['spatial_over_power'] for a in aggregates
                                                     if a['sweep'] == 'd_br' and a['config'] == c['name']}
                                       for c in sweep['configs']},
    }
    if out_dir:
        write_outputs(config, result, out_dir)
    logger.info('gain-compare done: win ratios %s', result.summary['win_ratio'])
    return(result)


# focusing evaluation ------------------------------------------------------------

def _reference_row(cut_rows, focus_x, min_offset, key):
    """
    The cut point at least min_offset from the focus with the smallest bound among those
    whose SNR is below the SNR at the focus.
    """
    focus = min(cut_rows, key=lambda r: abs(r['x_m'] - focus_x))
    others = [r for r in cut_rows if abs(r['x_m'] - focus_x) >= min_offset and r['snr_db'] < focus['snr_db']
              and not is_exceptional(r[key])]
    return(min(others, key=lambda r: r[key]) if others else None)


def _peak_ratios(cuts: dict, focus_x, min_offset, key):
    """
    Peak height of every cut: the largest bound over the off-focus points within min_offset of
    the focus, divided by the bound at the reference point of that cut. The window keeps only
    the x positions where every cut has a number, so the heights compare the same points.

    Returns ({label: ratio or None}, {label: (peak row, reference row)}).
    """
    first = next(iter(cuts.values()))
    window = [r['x_m'] for r in first if 0.0 < abs(r['x_m'] - focus_x) < min_offset]
    window = [x for x in window if all(not is_exceptional(_row_at(rows, x)[key]) for rows in cuts.values())]
    ratios, rows_used = {}, {}
    for label, rows in cuts.items():
        reference = _reference_row(rows, focus_x, min_offset, key)
        if reference is None or not window:
            ratios[label], rows_used[label] = None, (None, reference)
            continue
        peak = max((_row_at(rows, x) for x in window), key=lambda r: r[key])
        ratios[label] = peak[key] / reference[key]
        rows_used[label] = (peak, reference)
    return(ratios, rows_used)


def _row_at(rows, x):
    return(next(r for r in rows if r['x_m'] == x))


def _cut_positions(sweep, focus):
    xs = [float(x) for x in utils.linspace(sweep['cut_x'])] + [float(focus[0])]
    xs += [float(focus[0]) + s * float(o) for o in sweep.get('focus_offsets', []) for s in (-1.0, 1.0)]
    return(sorted(set(xs)))


def run_focusing_eval(config: ExperimentConfig, threads: int = 1, out_dir: str = None) -> RunResult:
    """
    PEB (asynchronous and synchronous) and received SNR around a focusing profile, with a cut
    through the focus and square-root CRLB tables at the focus against bandwidth and N_B.

    The cut is refined by focus_offsets around the focus. The peak height is measured on those
    off-focus points since the exact focus can be singular when the samples are fully aligned.
    """
    sweep = config.sweep
    base = config.geometry
    cfg = config.signal
    flags = config.flags
    policy = config.snr_policy
    spec = config.profile
    focus = spec['focus_point']
    z = float(sweep['z'])
    bs = config.to_dict()['geometry']['bs_array']
    hw_spacing = bs['spacing']

    def evaluate_with(geometry_base, signal):
        profile = build_profile(config, geometry_base, signal, flags)

        def evaluate(xy):
            try:
                geometry = geometry_base.with_ue([xy[0], xy[1], z])
            except RISLocError as e:
                return({'async': PointError(str(e)), 'sync': PointError(str(e)), 'snr_db': float('nan')})
            a, snr = _bound_at(geometry, signal, flags, profile, policy)
            s, _ = _bound_at(geometry, signal, flags, profile, policy, Parameterization.SYNC)
            return({'async': a, 'sync': s, 'snr_db': snr})
        return(evaluate)

    points = _plane_points(sweep)
    grid = utils.ordered_map(evaluate_with(base, cfg), points, threads)
    grid_rows = [{'x_m': x, 'y_m': y, 'peb_async_m': v['async'], 'peb_sync_m': v['sync'], 'snr_db': v['snr_db']}
                 for (x, y), v in zip(points, grid)]

    xs = _cut_positions(sweep, focus)

    def cut(geometry_base, signal):
        values = utils.ordered_map(evaluate_with(geometry_base, signal), [(x, float(focus[1])) for x in xs], threads)
        return([{'x_m': x, 'peb_async_m': v['async'], 'peb_sync_m': v['sync'], 'snr_db': v['snr_db']}
                for x, v in zip(xs, values)])

    # peak height under more antennas and more bandwidth
    rows_, cols_ = sweep['peak_bs']
    more_bs = base.with_bs(bs_offsets=build_ura(int(rows_), int(cols_), hw_spacing, bs.get('plane', 'YZ')))
    wider = cfg.copy(bandwidth_hz=cfg.bandwidth_hz * float(sweep['peak_bandwidth_factor']))
    settings = (('base', base, cfg), ('more_antennas', more_bs, cfg), ('more_bandwidth', base, wider))
    cuts = {label: cut(g, s) for label, g, s in settings}
    ratios, used = _peak_ratios(cuts, focus[0], sweep['min_offset'], 'peb_async_m')
    peak_rows = [{'setting': label, 'n_bs': g.n_bs, 'bandwidth_hz': s.bandwidth_hz, 'peak_ratio': ratios[label]}
                 for label, g, s in settings]

    cut_rows = cuts['base']
    focus_row = min(cut_rows, key=lambda r: abs(r['x_m'] - focus[0]))
    peak_row, ref_row = used['base']
    sync_ratio = None
    if peak_row is not None and not is_exceptional(peak_row['peb_sync_m']) and not is_exceptional(ref_row['peb_sync_m']):
        sync_ratio = peak_row['peb_sync_m'] / ref_row['peb_sync_m']

    # square-root CRLBs of the intermediate parameters at the focus
    at_focus = base.with_ue(focus)

    def crlb_row(item):
        geometry, signal = item
        try:
            profile = build_profile(config, geometry, signal, flags)
            scaled = apply_snr_policy(policy, geometry, signal, flags, profile)
            info = information_factor(Parameterization.INTERMEDIATE, geometry, scaled, flags, profile)
            bounds = crlb_intermediate(info)
        except RISLocError as e:
            logger.warning('CRLB at the focus skipped: %s', e)
            bounds = PointError(str(e))
        if not isinstance(bounds, dict):
            bounds = {k: bounds for k in ('d_RU', 'phi_RU', 'theta_RU')}
        return({'n_bs': geometry.n_bs, 'bandwidth_hz': signal.bandwidth_hz, 'crlb_d_m': bounds['d_RU'],
                'crlb_phi_rad': bounds['phi_RU'], 'crlb_theta_rad': bounds['theta_RU']})

    bandwidths = [(at_focus, cfg.copy(bandwidth_hz=float(b))) for b in sweep['bandwidths_hz']]
    crlb_bw = utils.ordered_map(crlb_row, bandwidths, threads)
    nb_geoms = [at_focus.with_bs(bs_offsets=build_ura(int(r), int(c), hw_spacing, bs.get('plane', 'YZ')))
                for r, c in sweep['bs_sizes']]
    crlb_nb = utils.ordered_map(crlb_row, [(g, cfg) for g in nb_geoms], threads)

    result = RunResult('focus-eval')
    result.add_table('grid', ['x_m', 'y_m', 'peb_async_m', 'peb_sync_m', 'snr_db'], grid_rows)
    result.add_table('cut', ['x_m', 'peb_async_m', 'peb_sync_m', 'snr_db'], cut_rows)
    result.add_table('peak', ['setting', 'n_bs', 'bandwidth_hz', 'peak_ratio'],
                     [{k: ('' if v is None else v) for k, v in r.items()} for r in peak_rows])
    crlb_cols = ['n_bs', 'bandwidth_hz', 'crlb_d_m', 'crlb_phi_rad', 'crlb_theta_rad']
    result.add_table('crlb_bandwidth', crlb_cols, crlb_bw)
    result.add_table('crlb_nbs', crlb_cols, crlb_nb)
    result.summary = {
        'focus_point': list(focus),
        'peak_x_m': None if peak_row is None else peak_row['x_m'],
        'reference_x_m': None if ref_row is None else ref_row['x_m'],
        'peb_async_focus_m': _cell(focus_row['peb_async_m']),
        'peb_sync_focus_m': _cell(focus_row['peb_sync_m']),
        'snr_focus_db': focus_row['snr_db'],
        'peb_async_peak_m': None if peak_row is None else _cell(peak_row['peb_async_m']),
        'peb_sync_peak_m': None if peak_row is None else _cell(peak_row['peb_sync_m']),
        'snr_peak_db': None if peak_row is None else peak_row['snr_db'],
        'peb_async_reference_m': None if ref_row is None else _cell(ref_row['peb_async_m']),
        'peb_sync_reference_m': None if ref_row is None else _cell(ref_row['peb_sync_m']),
        'snr_reference_db': None if ref_row is None else ref_row['snr_db'],
        'async_peak_ratio': ratios['base'],
        'sync_peak_ratio': sync_ratio,
        'peak_ratio': ratios,
    }
    if out_dir:
        write_outputs(config, result, out_dir)
    logger.info('focus-eval done: async peak %s, sync peak %s', ratios['base'], sync_ratio)
    return(result)
