"""
RIS reflection profiles: random, focusing, the selective focusing cases and the
time-domain profiles that trade BS antennas for time slots.

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
import json
import logging

import numpy as np
from validator_collection import checkers

from .errors import InvalidArgumentError, DegenerateGeometryError
from .geometry import C, ScenarioGeometry, ris_distances
from .channel import (SignalConfig, ChannelModelFlags, subcarrier_freq, cascaded_channel, bs_ris_path_lengths,
                      profile_coefficients)

logger = logging.getLogger(__name__)

MODULUS_TOL = 1e-12


class RisProfile(object):
    """
    Per-slot unit-modulus reflection coefficients, a (T, N_R) complex matrix.
    """

    def __init__(self, coefficients):
        c = np.array(coefficients, dtype=complex)
        if c.ndim == 1:
            c = c[None, :]
        if c.ndim != 2 or c.shape[0] < 1 or c.shape[1] < 1:
            raise InvalidArgumentError("RIS coefficients must form a non-empty (T, N_R) matrix.")
        if not np.all(np.isfinite(c)):
            raise InvalidArgumentError("RIS coefficients must be finite.")
        if np.max(np.abs(np.abs(c) - 1.0)) > MODULUS_TOL:
            raise InvalidArgumentError("RIS coefficients must have unit modulus.")
        c.flags.writeable = False
        self._coefficients = c

    def __str__(self):
        return(self.__class__.__name__ + ' : T=' + str(self.n_slots) + ', N_R=' + str(self.n_ris))

    def __eq__(self, other):
        return(isinstance(other, RisProfile) and self._coefficients.shape == other._coefficients.shape
               and bool(np.all(self._coefficients == other._coefficients)))

    __hash__ = None

    @property
    def coefficients(self):
        return self._coefficients

    @property
    def n_slots(self):
        return self._coefficients.shape[0]

    @property
    def n_ris(self):
        return self._coefficients.shape[1]

    @property
    def phases(self):
        """
        Phases in [0, 2*pi), one row per slot.
        """
        return np.mod(np.angle(self._coefficients), 2.0 * np.pi)

    def slot(self, t: int) -> np.ndarray:
        return self._coefficients[t]

    @classmethod
    def from_phases(cls, phases):
        return cls(np.exp(1j * np.asarray(phases, dtype=float)))

    def to_json(self) -> str:
        """
        A JSON array of per-slot phase lists in radians.
        """
        return(json.dumps(self.phases.tolist()))

    @classmethod
    def from_json(cls, text: str):
        try:
            phases = json.loads(text)
        except ValueError as e:
            raise InvalidArgumentError("the RIS profile is not valid JSON: " + str(e))
        if not isinstance(phases, list) or not all(isinstance(row, list) for row in phases):
            raise InvalidArgumentError("the RIS profile must be a JSON array of per-slot phase lists.")
        return cls.from_phases(phases)


def random_profile(n_r: int, t: int, seed) -> RisProfile:
    """
    Phases drawn i.i.d. uniform on [0, 2*pi). seed is anything numpy.random.default_rng accepts.
    """
    if not checkers.is_integer(n_r, minimum=1) or not checkers.is_integer(t, minimum=1):
        raise InvalidArgumentError("n_r and t must be integers >= 1.")
    rng = np.random.default_rng(seed)
    return RisProfile.from_phases(rng.uniform(0.0, 2.0 * np.pi, size=(t, n_r)))


def _bs_side_lengths(geometry: ScenarioGeometry, ref_antenna, model) -> np.ndarray:
    """
    Path lengths from the chosen BS antenna (or the BS reference point when ref_antenna is None) to every RIS element.
    """
    if ref_antenna is None:
        sink = geometry.with_bs(bs_offsets=np.zeros((1, 3)))
        return(bs_ris_path_lengths(sink, model)[0])
    if not checkers.is_integer(ref_antenna, minimum=0, maximum=geometry.n_bs - 1):
        raise InvalidArgumentError("BS antenna index out of range: " + str(ref_antenna))
    return(bs_ris_path_lengths(geometry, model)[ref_antenna])


def focusing_profile(geometry: ScenarioGeometry, focus_point, ref_antenna, n0: int, cfg: SignalConfig,
                     flags: ChannelModelFlags = None) -> RisProfile:
    """
    Single-slot profile conjugating the cascaded channel of a UE placed at focus_point, seen by
    ref_antenna at sub-carrier n0. ref_antenna=None focuses on the BS reference point and
    n0=None on the carrier frequency.

    The distances follow flags (exact spherical by default), so with matching flags the aligned
    sample combines coherently to alpha * N_R.
    """
    flags = ChannelModelFlags() if flags is None else flags
    f = cfg.carrier_hz if n0 is None else subcarrier_freq(n0, cfg)
    try:
        at_focus = geometry.with_ue(focus_point)
    except DegenerateGeometryError:
        raise DegenerateGeometryError("the focus point coincides with the RIS reference point.")
    path = _bs_side_lengths(geometry, ref_antenna, flags.bs_ris) + ris_distances(at_focus, model=flags.ris_ue)
    return RisProfile(np.exp(2j * np.pi * f * path / C))


def case1_profiles(geometry: ScenarioGeometry, cfg: SignalConfig, n0: int,
                   flags: ChannelModelFlags = None) -> RisProfile:
    """
    N_B slots; slot t1 conjugates the cascaded channel of antenna t1 at sub-carrier n0.
    """
    flags = ChannelModelFlags() if flags is None else flags
    subcarrier_freq(n0, cfg)
    h = cascaded_channel(geometry, cfg, flags)
    return RisProfile(np.conj(h[:, n0, :]))


def case2_profiles(geometry: ScenarioGeometry, cfg: SignalConfig, b0: int,
                   flags: ChannelModelFlags = None) -> RisProfile:
    """
    N slots; slot t2 conjugates the cascaded channel of antenna b0 at sub-carrier t2.
    """
    flags = ChannelModelFlags() if flags is None else flags
    if not checkers.is_integer(b0, minimum=0, maximum=geometry.n_bs - 1):
        raise InvalidArgumentError("BS antenna index out of range: " + str(b0))
    h = cascaded_channel(geometry, cfg, flags)
    return RisProfile(np.conj(h[b0, :, :]))


def equivalent_time_profile(base_profile_slot, geometry: ScenarioGeometry, n: int, ref_antenna: int,
                            target_slot_offset: int, cfg: SignalConfig, flags: ChannelModelFlags = None) -> np.ndarray:
    """
    Coefficients that make antenna ref_antenna, in the slot target_slot_offset slots after the base
    slot, receive at sub-carrier n what antenna target_slot_offset receives in the base slot.

    The correction exp(-j 2 pi f_n (d_br - d_b0r) / c) depends on f_n, so the equivalence is exact
    for sub-carrier n only.
    """
    flags = ChannelModelFlags() if flags is None else flags
    base = profile_coefficients(base_profile_slot).reshape(-1)
    if base.shape != (geometry.n_ris,):
        raise InvalidArgumentError("the base slot must hold one coefficient per RIS element.")
    for name, b in (('ref_antenna', ref_antenna), ('target_slot_offset', target_slot_offset)):
        if not checkers.is_integer(b, minimum=0, maximum=geometry.n_bs - 1):
            raise InvalidArgumentError(name + " does not map to a BS antenna: " + str(b))
    if target_slot_offset == ref_antenna:
        return(base.copy())
    f = subcarrier_freq(n, cfg)
    path = bs_ris_path_lengths(geometry, flags.bs_ris)
    return(base * np.exp(-2j * np.pi * f * (path[target_slot_offset] - path[ref_antenna]) / C))


def time_equivalent_profiles(base_profile_slot, geometry: ScenarioGeometry, n: int, ref_antenna: int,
                             cfg: SignalConfig, flags: ChannelModelFlags = None) -> RisProfile:
    """
    N_B-slot profile whose slot t replays, at ref_antenna, the base-slot signal of antenna t.
    """
    rows = [equivalent_time_profile(base_profile_slot, geometry, n, ref_antenna, t, cfg, flags)
            for t in range(geometry.n_bs)]
    return RisProfile(np.vstack(rows))
