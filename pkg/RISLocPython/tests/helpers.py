"""
Scenario builders shared by the tests.
"""
import numpy as np

from RISLocPython.geometry import ScenarioGeometry, build_ura
from RISLocPython.channel import SignalConfig
from RISLocPython.ris import random_profile
from RISLocPython.config import half_wavelength, make_config
from RISLocPython.suite import random_scenario, diverse_scenario

HW = half_wavelength()


def small_geometry(ue=(1.0, 0.3, -0.2), bs_rows=2, bs_cols=2):
    """
    A 4x4 RIS at 5 half-wavelengths and a BS three metres away.
    """
    return ScenarioGeometry(bs_reference=[2.0, -2.0, 1.0], ris_reference=[0.0, 0.0, 0.0], ue_position=list(ue),
                            bs_offsets=build_ura(bs_rows, bs_cols, HW), ris_offsets=build_ura(4, 4, 5 * HW))


def small_signal(n_subcarriers=4, n_slots=1, bandwidth_hz=100e6, **kw):
    return SignalConfig(n_subcarriers=n_subcarriers, n_slots=n_slots, bandwidth_hz=bandwidth_hz, **kw)


def profile_for(geometry, cfg, seed=7):
    return random_profile(geometry.n_ris, cfg.n_slots, seed)


def rng(seed=0):
    return np.random.default_rng(seed)


def tiny_config(experiment, **overrides):
    """
    The desk configuration shrunk to a 4x4 RIS, a 2x2 BS and four sub-carriers.
    """
    base = {'geometry': {'ris_array': {'rows': 4, 'cols': 4}, 'bs_array': {'rows': 2, 'cols': 2}},
            'signal': {'n_subcarriers': 4}}
    for k, v in overrides.items():
        if isinstance(v, dict) and isinstance(base.get(k), dict):
            base[k] = dict(base[k], **v)
        else:
            base[k] = v
    return make_config(experiment, 'desk', base)


__all__ = ['HW', 'small_geometry', 'small_signal', 'profile_for', 'rng', 'tiny_config', 'random_scenario',
           'diverse_scenario']
