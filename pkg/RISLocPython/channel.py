"""
Cascaded BS-RIS-UE channel and the noise-free received signal.

Indices of BS antennas (b), sub-carriers (n), time slots (t) and RIS elements (r)
are zero based throughout the package.

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
import math
import logging
from dataclasses import dataclass

import numpy as np
from validator_collection import checkers

from .errors import InvalidArgumentError
from .geometry import (C, WaveModel, ScenarioGeometry, SphericalDirection, ris_distances, bs_ris_distances,
                       bs_ris_far_offsets)
from .settings import CARRIER_HZ

logger = logging.getLogger(__name__)

PILOT_TOL = 1e-12


class SignalConfig(object):
    """
    OFDM signal parameters and the two nuisance parameters of the RIS link.

    The sub-carrier count and the slot count fix the shape of the pilot grid, so they
    are read-only; derive a config with other sizes through copy().
    """

    def __init__(self, carrier_hz: float = CARRIER_HZ, n_subcarriers: int = 1, bandwidth_hz: float = 0.0,
                 n_slots: int = 1, pilot=None, noise_var: float = 1.0, alpha: float = 1.0,
                 xi_seconds: float = 0.0):
        if not checkers.is_integer(n_subcarriers, minimum=1):
            raise InvalidArgumentError("n_subcarriers must be an integer >= 1.")
        if not checkers.is_integer(n_slots, minimum=1):
            raise InvalidArgumentError("n_slots must be an integer >= 1.")
        self._n_subcarriers = int(n_subcarriers)
        self._n_slots = int(n_slots)
        self.carrier_hz = carrier_hz
        self.bandwidth_hz = bandwidth_hz
        self.pilot = pilot
        self.noise_var = noise_var
        self.alpha = alpha
        self.xi_seconds = xi_seconds

    def __str__(self):
        return(self.__class__.__name__ + ' : f_c=' + str(self._carrier_hz) + ' Hz, N=' + str(self._n_subcarriers)
               + ', BW=' + str(self._bandwidth_hz) + ' Hz, T=' + str(self._n_slots))

    @property
    def carrier_hz(self):
        return self._carrier_hz

    @carrier_hz.setter
    def carrier_hz(self, v):
        if checkers.is_numeric(v) and v > 0 and math.isfinite(v):
            self._carrier_hz = float(v)
        else:
            raise InvalidArgumentError("the carrier frequency must be a positive number.")

    @property
    def n_subcarriers(self):
        return self._n_subcarriers

    @property
    def n_slots(self):
        return self._n_slots

    @property
    def bandwidth_hz(self):
        """
        Total occupied bandwidth; the sub-carrier spacing is bandwidth_hz / n_subcarriers.
        """
        return self._bandwidth_hz

    @bandwidth_hz.setter
    def bandwidth_hz(self, v):
        if checkers.is_numeric(v, minimum=0) and math.isfinite(v):
            self._bandwidth_hz = float(v)
        else:
            raise InvalidArgumentError("the bandwidth must be a non-negative number.")

    @property
    def pilot(self):
        """
        (N, T) complex pilot symbols x_{n,t}. Defaults to all ones.
        """
        return self._pilot

    @pilot.setter
    def pilot(self, v):
        if v is None:
            p = np.ones((self._n_subcarriers, self._n_slots), dtype=complex)
        else:
            p = np.array(v, dtype=complex)
            if p.shape != (self._n_subcarriers, self._n_slots):
                raise InvalidArgumentError("the pilot grid must have shape (n_subcarriers, n_slots).")
            if not np.all(np.abs(np.abs(p) - 1.0) < PILOT_TOL):
                raise InvalidArgumentError("pilot symbols must have unit modulus.")
        p.flags.writeable = False
        self._pilot = p

    @property
    def noise_var(self):
        return self._noise_var

    @noise_var.setter
    def noise_var(self, v):
        if checkers.is_numeric(v) and v > 0 and math.isfinite(v):
            self._noise_var = float(v)
        else:
            raise InvalidArgumentError("the noise variance must be a positive number.")

    @property
    def alpha(self):
        return self._alpha

    @alpha.setter
    def alpha(self, v):
        if checkers.is_numeric(v) and v > 0 and math.isfinite(v):
            self._alpha = float(v)
        else:
            raise InvalidArgumentError("alpha must be a positive number.")

    @property
    def xi_seconds(self):
        return self._xi_seconds

    @xi_seconds.setter
    def xi_seconds(self, v):
        if checkers.is_numeric(v) and math.isfinite(v):
            self._xi_seconds = float(v)
        else:
            raise InvalidArgumentError("the clock offset must be a finite number of seconds.")

    @property
    def c_xi(self):
        """
        The clock offset expressed in metres, the coordinate used in the parameter vectors.
        """
        return C * self._xi_seconds

    def copy(self, **changes):
        """
        Return a new SignalConfig with the given fields replaced.

        Changing n_subcarriers or n_slots resets the pilot grid unless a new pilot is supplied.
        """
        fields = {'carrier_hz': self._carrier_hz, 'n_subcarriers': self._n_subcarriers,
                  'bandwidth_hz': self._bandwidth_hz, 'n_slots': self._n_slots, 'pilot': self._pilot,
                  'noise_var': self._noise_var, 'alpha': self._alpha, 'xi_seconds': self._xi_seconds}
        unknown = set(changes) - set(fields)
        if unknown:
            raise InvalidArgumentError("unknown SignalConfig fields: " + ', '.join(sorted(unknown)))
        if ('n_subcarriers' in changes or 'n_slots' in changes) and 'pilot' not in changes:
            changes['pilot'] = None
        fields.update(changes)
        return SignalConfig(**fields)

    def to_dict(self):
        d = {'carrier_hz': self._carrier_hz, 'n_subcarriers': self._n_subcarriers, 'bandwidth_hz': self._bandwidth_hz,
             'n_slots': self._n_slots, 'noise_var': self._noise_var, 'alpha': self._alpha,
             'xi_seconds': self._xi_seconds}
        if not np.all(self._pilot == 1.0):
            d['pilot_phases'] = np.angle(self._pilot).tolist()
        return(d)


@dataclass(frozen=True)
class ChannelModelFlags:
    """
    Wavefront model selection for the RIS-UE and the BS-RIS links.
    """
    ris_ue: WaveModel = WaveModel.NEAR
    bs_ris: WaveModel = WaveModel.NEAR

    def __post_init__(self):
        try:
            object.__setattr__(self, 'ris_ue', WaveModel(self.ris_ue))
            object.__setattr__(self, 'bs_ris', WaveModel(self.bs_ris))
        except ValueError:
            raise InvalidArgumentError("each channel model flag must be 'near' or 'far'.")

    def to_dict(self):
        return({'ris_ue': self.ris_ue.value, 'bs_ris': self.bs_ris.value})


def _check_subcarrier(n, cfg: SignalConfig):
    if not checkers.is_integer(n, minimum=0, maximum=cfg.n_subcarriers - 1):
        raise InvalidArgumentError("sub-carrier index out of range: " + str(n))


def subcarrier_freq(n: int, cfg: SignalConfig) -> float:
    """
    Frequency of sub-carrier n on a grid centred on the carrier with spacing bandwidth/N.
    """
    _check_subcarrier(n, cfg)
    N = cfg.n_subcarriers
    return(cfg.carrier_hz + (n - (N - 1) / 2.0) * cfg.bandwidth_hz / N)


def frequencies(cfg: SignalConfig) -> np.ndarray:
    N = cfg.n_subcarriers
    return(cfg.carrier_hz + (np.arange(N) - (N - 1) / 2.0) * cfg.bandwidth_hz / N)


def phase_response(freq_hz, distance) -> np.ndarray:
    return(np.exp(-2j * np.pi * np.multiply.outer(freq_hz, distance) / C))


def h_ru(n: int, geometry: ScenarioGeometry, cfg: SignalConfig, direction: SphericalDirection = None,
         model=WaveModel.NEAR) -> np.ndarray:
    """
    RIS-UE phase response at sub-carrier n, one unit-modulus entry per RIS element.
    """
    return(phase_response(subcarrier_freq(n, cfg), ris_distances(geometry, direction, model)))


def h_br_near(n: int, geometry: ScenarioGeometry, cfg: SignalConfig) -> np.ndarray:
    """
    (N_B, N_R) BS-RIS response with exact antenna-to-element distances.
    """
    return(phase_response(subcarrier_freq(n, cfg), bs_ris_distances(geometry)))


def h_br_far(n: int, geometry: ScenarioGeometry, cfg: SignalConfig) -> np.ndarray:
    """
    (N_B, N_R) rank one BS-RIS response: a common delay times the BS and RIS steering vectors.
    """
    f = subcarrier_freq(n, cfg)
    gamma_b, gamma_r = bs_ris_far_offsets(geometry)
    a_b = phase_response(f, gamma_b)
    a_rb = phase_response(f, gamma_r)
    return(phase_response(f, geometry.d_br) * np.outer(a_b, a_rb))


def h_br(n: int, geometry: ScenarioGeometry, cfg: SignalConfig, model=WaveModel.NEAR) -> np.ndarray:
    if WaveModel(model) is WaveModel.FAR:
        return(h_br_far(n, geometry, cfg))
    return(h_br_near(n, geometry, cfg))


def bs_ris_path_lengths(geometry: ScenarioGeometry, model=WaveModel.NEAR) -> np.ndarray:
    """
    (N_B, N_R) path lengths from each BS antenna to each RIS element under the link model.
    """
    if WaveModel(model) is WaveModel.FAR:
        gamma_b, gamma_r = bs_ris_far_offsets(geometry)
        return(geometry.d_br + gamma_b[:, None] + gamma_r[None, :])
    return(bs_ris_distances(geometry))


def cascaded_channel(geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags,
                     direction: SphericalDirection = None) -> np.ndarray:
    """
    (N_B, N, N_R) tensor of the cascaded channel h_bR,n * h_RU,n for every antenna and sub-carrier.
    """
    path = bs_ris_path_lengths(geometry, flags.bs_ris) + ris_distances(geometry, direction, flags.ris_ue)[None, :]
    f = frequencies(cfg)
    return(np.exp(-2j * np.pi * f[None, :, None] * path[:, None, :] / C))


def profile_coefficients(profile) -> np.ndarray:
    """
    The (T, N_R) coefficient matrix of a RisProfile or of a plain array.
    """
    return(np.asarray(getattr(profile, 'coefficients', profile), dtype=complex))


def _check_profile(coeffs: np.ndarray, geometry: ScenarioGeometry, cfg: SignalConfig):
    if coeffs.shape != (cfg.n_slots, geometry.n_ris):
        raise InvalidArgumentError("the RIS profile must have shape (n_slots, n_ris) = "
                                   + str((cfg.n_slots, geometry.n_ris)) + ", got " + str(coeffs.shape))


def signal_prefactor(cfg: SignalConfig) -> np.ndarray:
    """
    (N, T) factor alpha * x_{n,t} * exp(-j 2 pi f_n xi) shared by every antenna.
    """
    f = frequencies(cfg)
    return(cfg.alpha * cfg.pilot * np.exp(-2j * np.pi * f * cfg.xi_seconds)[:, None])


def mean_tensor(geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags, profile) -> np.ndarray:
    """
    (N_B, N, T) noise-free received samples mu_{b,n,t}.
    """
    coeffs = profile_coefficients(profile)
    _check_profile(coeffs, geometry, cfg)
    combined = np.einsum('tr,bnr->bnt', coeffs, cascaded_channel(geometry, cfg, flags))
    return(signal_prefactor(cfg)[None, :, :] * combined)


def mu(b: int, n: int, t: int, geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags,
       profile) -> complex:
    """
    Noise-free received sample at antenna b, sub-carrier n and slot t.
    """
    if not checkers.is_integer(b, minimum=0, maximum=geometry.n_bs - 1):
        raise InvalidArgumentError("BS antenna index out of range: " + str(b))
    if not checkers.is_integer(t, minimum=0, maximum=cfg.n_slots - 1):
        raise InvalidArgumentError("slot index out of range: " + str(t))
    f = subcarrier_freq(n, cfg)
    coeffs = profile_coefficients(profile)
    _check_profile(coeffs, geometry, cfg)
    h_tilde = h_br(n, geometry, cfg, flags.bs_ris)[b] * h_ru(n, geometry, cfg, model=flags.ris_ue)
    prefactor = cfg.alpha * cfg.pilot[n, t] * np.exp(-2j * np.pi * f * cfg.xi_seconds)
    return(complex(prefactor * np.dot(coeffs[t], h_tilde)))


def received_snr(geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags, profile,
                 mask=None) -> float:
    """
    Average per-sample SNR sum |mu|^2 / (count * sigma^2) over the selected samples (all by default).
    """
    power = np.abs(mean_tensor(geometry, cfg, flags, profile)) ** 2
    if mask is not None:
        selected = np.asarray(getattr(mask, 'selected', mask), dtype=bool)
        if not selected.any():
            raise InvalidArgumentError("the sample selection is empty.")
        power = power[selected]
    return(float(np.mean(power) / cfg.noise_var))
