"""
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
# Global settings for the RISLocPython library
# User editable settings are in conf/RISLocPython.conf
import os
import logging
import configparser

logger = logging.getLogger(__name__)

CONF_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'conf', 'RISLocPython.conf')

_DEFAULTS = {
    'PHYSICS': {'speed_of_light': '299792458.0', 'carrier_hz': '28e9'},
    'NUMERICS': {'rank_tol': '1e-10', 'symmetry_tol': '1e-10', 'fd_rel_step': '1e-6', 'fd_abs_step': '1e-7'},
    'DESK': {'ris_rows': '12', 'ris_cols': '12', 'ris_spacing_half_wl': '5', 'bs_rows': '4', 'bs_cols': '4',
             'bs_spacing_half_wl': '1', 'n_subcarriers': '16', 'grid_points': '30', 'trials': '100'},
    'PAPER': {'ris_rows': '60', 'ris_cols': '60', 'ris_spacing_half_wl': '1', 'bs_rows': '8', 'bs_cols': '8',
              'bs_spacing_half_wl': '1', 'n_subcarriers': '64', 'grid_points': '100', 'trials': '100'},
    'SYSTEM': {'version': '1.0.0'},
}

config = configparser.ConfigParser()
config.read_dict(_DEFAULTS)
if os.path.isfile(CONF_FILE):
    config.read(CONF_FILE)
else:
    logger.warning('Configuration file not found at: %s; using built-in defaults.', CONF_FILE)

VERSION = config['SYSTEM']['version']

SPEED_OF_LIGHT = config.getfloat('PHYSICS', 'speed_of_light')
CARRIER_HZ = config.getfloat('PHYSICS', 'carrier_hz')

RANK_TOL = config.getfloat('NUMERICS', 'rank_tol')
SYMMETRY_TOL = config.getfloat('NUMERICS', 'symmetry_tol')
FD_REL_STEP = config.getfloat('NUMERICS', 'fd_rel_step')
FD_ABS_STEP = config.getfloat('NUMERICS', 'fd_abs_step')

SCALES = ('desk', 'paper')


def scale_preset(name):
    """
    Return the array-size preset for the named scale ('desk' or 'paper') as a dictionary.

    Spacings are given in units of half the carrier wavelength.
    """
    if name not in SCALES:
        raise ValueError("the scale must be one of " + str(SCALES) + ", not " + repr(name))
    section = config[name.upper()]
    preset = {k: section.getint(k) for k in ('ris_rows', 'ris_cols', 'bs_rows', 'bs_cols',
                                             'n_subcarriers', 'grid_points', 'trials')}
    preset['ris_spacing_half_wl'] = section.getfloat('ris_spacing_half_wl')
    preset['bs_spacing_half_wl'] = section.getfloat('bs_spacing_half_wl')
    return(preset)
