"""
Experiment configuration.

A configuration is a JSON document mirroring ExperimentConfig. Anything it leaves out
is taken from the defaults of the experiment at the selected scale, so an empty
document ({}) is a complete configuration.

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
import copy
import json
import math
import logging

from validator_collection import checkers

from .errors import ConfigurationError, RISLocError
from .geometry import C, ScenarioGeometry, build_ura, cartesian_to_spherical
from .channel import SignalConfig, ChannelModelFlags
from .settings import CARRIER_HZ, SCALES, scale_preset
from .utils import fetch_text

logger = logging.getLogger(__name__)

EXPERIMENTS = ('peb-map', 'efi-sweep', 'gain-compare', 'focus-eval', 'prop-suite')
PROFILE_KINDS = ('random', 'focusing', 'case1', 'case2')
SNR_POLICIES = ('fixed-received-snr', 'fixed-alpha')

RIS_REFERENCE = [0.0, 0.0, 0.0]
BS_REFERENCE = [8.0, -12.0, 2.0]
UE_POSITION = [4.0, 2.1, -1.0]
FOCUS_POINT = [4.0, 2.5, -1.0]

RESOURCE_CONFIGS = [{'name': 'Config1', 'bandwidth_hz': 300e6, 'n_slots': 1},
                    {'name': 'Config2', 'bandwidth_hz': 2500e6, 'n_slots': 1},
                    {'name': 'Config3', 'bandwidth_hz': 2500e6, 'n_slots': 3}]


def half_wavelength(carrier_hz: float = CARRIER_HZ) -> float:
    return(C / carrier_hz / 2.0)


def _deep_merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for k, v in override.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _deep_merge(out[k], v)
        else:
            out[k] = copy.deepcopy(v)
    return(out)


def default_config(experiment: str, scale: str = 'desk') -> dict:
    """
    The built-in configuration of an experiment as a plain dictionary.
    """
    if experiment not in EXPERIMENTS:
        raise ConfigurationError("unknown experiment " + repr(experiment) + "; expected one of " + str(EXPERIMENTS))
    try:
        preset = scale_preset(scale)
    except ValueError as e:
        raise ConfigurationError(str(e))
    hw = half_wavelength()
    gp = preset['grid_points']
    d = {
        'experiment': experiment,
        'scale': scale,
        'seed': 0,
        'geometry': {
            'bs_reference': list(BS_REFERENCE),
            'ris_reference': list(RIS_REFERENCE),
            'ue_position': list(UE_POSITION),
            'bs_array': {'rows': preset['bs_rows'], 'cols': preset['bs_cols'],
                         'spacing': preset['bs_spacing_half_wl'] * hw, 'plane': 'YZ'},
            'ris_array': {'rows': preset['ris_rows'], 'cols': preset['ris_cols'],
                          'spacing': preset['ris_spacing_half_wl'] * hw, 'plane': 'YZ'},
        },
        'signal': {'carrier_hz': CARRIER_HZ, 'n_subcarriers': preset['n_subcarriers'], 'bandwidth_hz': 400e6,
                   'n_slots': 1, 'noise_var': 1.0, 'alpha': 1.0, 'xi_seconds': 0.0},
        'flags': {'ris_ue': 'near', 'bs_ris': 'near'},
        'profile': {'kind': 'random', 'trials': 1},
        'snr_policy': {'kind': 'fixed-received-snr', 'target_db': 0.0},
        'sweep': {},
    }
    if experiment == 'peb-map':
        d['sweep'] = {'x': [0.5, 12.0, gp], 'y': [-6.0, 6.0, gp], 'z': -1.0, 'near_radius': 3.0,
                      'far_radius': 8.0}
    elif experiment == 'efi-sweep':
        direction = cartesian_to_spherical(RIS_REFERENCE, UE_POSITION)
        d['sweep'] = {'distance': [1.0, 100.0, max(gp // 2, 2)], 'elevation': direction.elevation,
                      'azimuth': direction.azimuth}
        if scale == 'desk':
            # a half wavelength 12x12 RIS puts the whole sweep beyond its Fraunhofer distance
            d['geometry']['ris_array']['spacing'] = hw
            d['signal']['n_slots'] = 8
    elif experiment == 'gain-compare':
        d['profile']['trials'] = preset['trials']
        d['sweep'] = {'d_br': [2.0, 5.0, 10.0, 20.0, 50.0], 'bs_spacing_half_wl': [0.1, 0.5, 1.0, 2.0, 4.0, 8.0],
                      'configs': copy.deepcopy(RESOURCE_CONFIGS)}
    elif experiment == 'focus-eval':
        d['profile'] = {'kind': 'focusing', 'focus_point': list(FOCUS_POINT), 'ref_antenna': None, 'n0': None}
        d['snr_policy'] = {'kind': 'fixed-alpha'}
        d['signal']['bandwidth_hz'] = 40e6
        d['geometry']['bs_array'].update({'rows': 2, 'cols': 2})
        d['sweep'] = {'x': [1.0, 8.0, gp], 'y': [-1.0, 6.0, gp], 'z': -1.0, 'cut_x': [0.5, 8.0, 2 * gp],
                      'focus_offsets': [0.02, 0.05, 0.1, 0.2], 'min_offset': 0.5,
                      'bandwidths_hz': [10e6, 20e6, 40e6, 80e6, 160e6],
                      'bs_sizes': [[1, 1], [2, 2], [3, 3], [4, 4]], 'peak_bs': [4, 4], 'peak_bandwidth_factor': 4}
    elif experiment == 'prop-suite':
        d['sweep'] = {'seeds': 20, 'rank_draws': 50, 'time_space_seeds': 10, 'monotonic_pairs': 20}
    return(d)


def _vec3(v, where):
    if not (isinstance(v, (list, tuple)) and len(v) == 3 and all(checkers.is_numeric(x) for x in v)):
        raise ConfigurationError(where + " must be a list of three numbers (metres).")
    return([float(x) for x in v])


def _count(v, where, minimum=1):
    if not checkers.is_integer(v, minimum=minimum):
        raise ConfigurationError(where + " must be an integer >= " + str(minimum) + ".")
    return(int(v))


def _number(v, where, minimum=None):
    if not checkers.is_numeric(v, minimum=minimum) or not math.isfinite(v):
        raise ConfigurationError(where + " must be a finite number" + ("" if minimum is None else " >= " + str(minimum)) + ".")
    return(float(v))


def _grid(v, where):
    if not (isinstance(v, (list, tuple)) and len(v) == 3):
        raise ConfigurationError(where + " must be [start, stop, points].")
    _number(v[0], where + "[0]")
    _number(v[1], where + "[1]")
    _count(v[2], where + "[2]")
    return(list(v))


class ExperimentConfig(object):
    """
    A validated experiment configuration with the scenario objects it describes.
    """

    def __init__(self, data: dict):
        self._data = copy.deepcopy(data)
        self._validate()
        g = self._data['geometry']
        bs = g['bs_array']
        ris = g['ris_array']
        try:
            self._geometry = ScenarioGeometry(g['bs_reference'], g['ris_reference'], g['ue_position'],
                                              build_ura(bs['rows'], bs['cols'], bs['spacing'], bs.get('plane', 'YZ')),
                                              build_ura(ris['rows'], ris['cols'], ris['spacing'], ris.get('plane', 'YZ')))
            self._signal = SignalConfig(**self._data['signal'])
            self._flags = ChannelModelFlags(**self._data['flags'])
        except (RISLocError, TypeError) as e:
            raise ConfigurationError("invalid scenario: " + str(e))

    def __str__(self):
        return(self.__class__.__name__ + ' : ' + self.experiment + ' (' + self.scale + ', seed ' + str(self.seed) + ')')

    def _validate(self):
        d = self._data
        if d.get('experiment') not in EXPERIMENTS:
            raise ConfigurationError("unknown experiment: " + repr(d.get('experiment')))
        if d.get('scale') not in SCALES:
            raise ConfigurationError("unknown scale: " + repr(d.get('scale')))
        _count(d.get('seed'), 'seed', minimum=0)
        g = d['geometry']
        for k in ('bs_reference', 'ris_reference', 'ue_position'):
            g[k] = _vec3(g.get(k), 'geometry.' + k)
        for k in ('bs_array', 'ris_array'):
            a = g.get(k, {})
            _count(a.get('rows'), 'geometry.' + k + '.rows')
            _count(a.get('cols'), 'geometry.' + k + '.cols')
            if _number(a.get('spacing'), 'geometry.' + k + '.spacing') <= 0.0:
                raise ConfigurationError('geometry.' + k + '.spacing must be positive.')
        p = d['profile']
        if p.get('kind') not in PROFILE_KINDS:
            raise ConfigurationError("profile.kind must be one of " + str(PROFILE_KINDS))
        _count(p.get('trials', 1), 'profile.trials')
        if p['kind'] == 'focusing':
            p['focus_point'] = _vec3(p.get('focus_point'), 'profile.focus_point')
        s = d['snr_policy']
        if s.get('kind') not in SNR_POLICIES:
            raise ConfigurationError("snr_policy.kind must be one of " + str(SNR_POLICIES))
        if s['kind'] == 'fixed-received-snr':
            _number(s.get('target_db'), 'snr_policy.target_db')
        for k, v in d['sweep'].items():
            if k in ('x', 'y', 'cut_x', 'distance'):
                _grid(v, 'sweep.' + k)
            elif k in ('d_br', 'bs_spacing_half_wl', 'bandwidths_hz', 'focus_offsets'):
                if not (isinstance(v, list) and v and all(checkers.is_numeric(x, minimum=0) for x in v)):
                    raise ConfigurationError('sweep.' + k + ' must be a non-empty list of non-negative numbers.')
            elif k in ('seeds', 'rank_draws', 'time_space_seeds', 'monotonic_pairs'):
                _count(v, 'sweep.' + k)

    @property
    def experiment(self):
        return self._data['experiment']

    @property
    def scale(self):
        return self._data['scale']

    @property
    def seed(self):
        return int(self._data['seed'])

    @property
    def geometry(self) -> ScenarioGeometry:
        return self._geometry

    @property
    def signal(self) -> SignalConfig:
        return self._signal

    @property
    def flags(self) -> ChannelModelFlags:
        return self._flags

    @property
    def profile(self) -> dict:
        return copy.deepcopy(self._data['profile'])

    @property
    def snr_policy(self) -> dict:
        return copy.deepcopy(self._data['snr_policy'])

    @property
    def sweep(self) -> dict:
        return copy.deepcopy(self._data['sweep'])

    def to_dict(self) -> dict:
        """
        The fully resolved configuration, as written to the JSON sidecar of a run.
        """
        return copy.deepcopy(self._data)

    def to_json(self) -> str:
        return(json.dumps(self._data, indent=2, sort_keys=True))


def make_config(experiment: str, scale: str = 'desk', overrides: dict = None, seed: int = None) -> ExperimentConfig:
    """
    Defaults of the experiment at the given scale with overrides merged on top.
    """
    data = default_config(experiment, scale)
    if overrides:
        if 'experiment' in overrides and overrides['experiment'] != experiment:
            raise ConfigurationError("the configuration is for " + repr(overrides['experiment'])
                                     + ", not " + repr(experiment))
        data = _deep_merge(data, {k: v for k, v in overrides.items() if k != 'scale'})
    if seed is not None:
        data['seed'] = seed
    return ExperimentConfig(data)


def load_config(path_or_url: str, experiment: str, scale: str = None, seed: int = None) -> ExperimentConfig:
    """
    Load a JSON experiment configuration from a local file or an http(s) URL.

    The scale is taken from the argument, then from the document, then defaults to 'desk'.
    """
    text = fetch_text(path_or_url)
    try:
        overrides = json.loads(text)
    except ValueError as e:
        raise ConfigurationError("the configuration is not valid JSON: " + str(e))
    if not isinstance(overrides, dict):
        raise ConfigurationError("the configuration must be a JSON object.")
    scale = scale or overrides.get('scale', 'desk')
    logger.info('loaded configuration from %s', path_or_url)
    return make_config(experiment, scale, overrides, seed)
