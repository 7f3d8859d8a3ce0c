"""
Scenario geometry: array layouts, spherical coordinates and the element distances
the channel models consume.

All distances are in metres and all angles in radians. The elevation is measured
from the +z axis and the azimuth from the +x axis in the x-y plane.

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
from enum import Enum

import numpy as np
from validator_collection import checkers

from .errors import InvalidArgumentError, DegenerateGeometryError
from .settings import SPEED_OF_LIGHT

logger = logging.getLogger(__name__)

C = SPEED_OF_LIGHT

PLANES = {'YZ': (1, 2), 'XY': (0, 1), 'XZ': (0, 2)}


class WaveModel(str, Enum):
    """
    Wavefront model of a link: exact spherical (near) or first-order planar (far).
    """
    NEAR = 'near'
    FAR = 'far'


def wavelength(freq_hz: float) -> float:
    return(C / freq_hz)


def _vec3(v, name: str) -> np.ndarray:
    a = np.asarray(v, dtype=float).reshape(-1)
    if a.shape != (3,) or not np.all(np.isfinite(a)):
        raise InvalidArgumentError(name + " must be a finite 3-vector.")
    return(a)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return(a)


@dataclass(frozen=True)
class SphericalDirection:
    """
    Distance, elevation and azimuth of a point seen from a reference point.
    """
    distance: float
    elevation: float
    azimuth: float

    def __post_init__(self):
        if not checkers.is_numeric(self.distance, minimum=0.0) or self.distance == 0.0:
            raise InvalidArgumentError("the distance must be a positive number.")
        if not checkers.is_numeric(self.elevation, minimum=0.0, maximum=math.pi):
            raise InvalidArgumentError("the elevation must lie in [0, pi].")
        if not checkers.is_numeric(self.azimuth) or not math.isfinite(self.azimuth):
            raise InvalidArgumentError("the azimuth must be a finite number.")

    @property
    def unit(self) -> np.ndarray:
        """
        Unit vector pointing from the reference point to the described point.
        """
        st = math.sin(self.elevation)
        return(np.array([st * math.cos(self.azimuth), st * math.sin(self.azimuth), math.cos(self.elevation)]))


def build_ura(rows: int, cols: int, spacing: float, plane: str = 'YZ') -> np.ndarray:
    """
    Offsets of a uniform rectangular array centred on its reference point.

    Elements are ordered row-major; the row index runs along the first axis of the
    plane and the column index along the second. Returns a (rows*cols, 3) array.
    """
    if not checkers.is_integer(rows, minimum=1) or not checkers.is_integer(cols, minimum=1):
        raise InvalidArgumentError("rows and cols must be integers >= 1.")
    if not checkers.is_numeric(spacing) or not spacing > 0.0:
        raise InvalidArgumentError("the element spacing must be positive.")
    if plane not in PLANES:
        raise InvalidArgumentError("plane must be one of " + str(sorted(PLANES)))
    ax1, ax2 = PLANES[plane]
    i = (np.arange(rows) - (rows - 1) / 2.0) * spacing
    j = (np.arange(cols) - (cols - 1) / 2.0) * spacing
    ii, jj = np.meshgrid(i, j, indexing='ij')
    offsets = np.zeros((rows * cols, 3))
    offsets[:, ax1] = ii.reshape(-1)
    offsets[:, ax2] = jj.reshape(-1)
    return(offsets)


def spherical_to_cartesian(ref, direction: SphericalDirection) -> np.ndarray:
    ref = _vec3(ref, 'ref')
    return(ref + direction.distance * direction.unit)


def cartesian_to_spherical(ref, point) -> SphericalDirection:
    """
    Inverse of spherical_to_cartesian. The azimuth is normalised to [-pi, pi) and set to 0 on the z axis.
    """
    v = _vec3(point, 'point') - _vec3(ref, 'ref')
    d = float(np.linalg.norm(v))
    if d == 0.0:
        raise DegenerateGeometryError("the point coincides with the reference point.")
    elevation = math.acos(max(-1.0, min(1.0, v[2] / d)))
    rho_xy = math.hypot(v[0], v[1])
    if rho_xy <= 1e-15 * d:
        azimuth = 0.0
    else:
        azimuth = math.atan2(v[1], v[0])
        if azimuth >= math.pi:
            azimuth -= 2.0 * math.pi
    return(SphericalDirection(d, elevation, azimuth))


def far_field_direction(source, sink) -> SphericalDirection:
    """
    Plane-wave direction of sink seen from source, computed between reference points only.
    """
    return(cartesian_to_spherical(source, sink))


def gamma_ru(ris_offset, direction: SphericalDirection) -> float:
    """
    Path-length offset of an element relative to the reference point for a plane wave
    arriving from direction: minus the projection of the offset onto the unit direction.
    """
    return(float(-np.dot(_vec3(ris_offset, 'ris_offset'), direction.unit)))


class ScenarioGeometry(object):
    """
    Positions of the BS, the RIS and the UE, with the element offsets of both arrays.

    Instances are immutable; use with_ue() or with_bs() to derive a modified scenario.
    """

    def __init__(self, bs_reference, ris_reference, ue_position, bs_offsets, ris_offsets):
        self._bs_reference = _readonly(_vec3(bs_reference, 'bs_reference'))
        self._ris_reference = _readonly(_vec3(ris_reference, 'ris_reference'))
        self._ue_position = _readonly(_vec3(ue_position, 'ue_position'))
        bs = np.asarray(bs_offsets, dtype=float).reshape(-1, 3)
        ris = np.asarray(ris_offsets, dtype=float).reshape(-1, 3)
        if bs.shape[0] < 1 or ris.shape[0] < 1:
            raise InvalidArgumentError("both arrays need at least one element.")
        if not (np.all(np.isfinite(bs)) and np.all(np.isfinite(ris))):
            raise InvalidArgumentError("array offsets must be finite.")
        self._bs_offsets = _readonly(bs)
        self._ris_offsets = _readonly(ris)
        if np.linalg.norm(self._ue_position - self._ris_reference) == 0.0:
            raise DegenerateGeometryError("the UE coincides with the RIS reference point.")

    def __str__(self):
        return(self.__class__.__name__ + ' : N_B=' + str(self.n_bs) + ', N_R=' + str(self.n_ris)
               + ', p_U=' + str(self._ue_position.tolist()))

    @property
    def bs_reference(self):
        return self._bs_reference

    @property
    def ris_reference(self):
        return self._ris_reference

    @property
    def ue_position(self):
        return self._ue_position

    @property
    def bs_offsets(self):
        """
        (N_B, 3) offsets of the BS antennas from the BS reference point.
        """
        return self._bs_offsets

    @property
    def ris_offsets(self):
        """
        (N_R, 3) offsets of the RIS elements from the RIS reference point.
        """
        return self._ris_offsets

    @property
    def n_bs(self):
        return self._bs_offsets.shape[0]

    @property
    def n_ris(self):
        return self._ris_offsets.shape[0]

    @property
    def bs_positions(self):
        return self._bs_reference + self._bs_offsets

    @property
    def ris_positions(self):
        return self._ris_reference + self._ris_offsets

    @property
    def d_ru(self):
        return float(np.linalg.norm(self._ue_position - self._ris_reference))

    @property
    def d_br(self):
        return float(np.linalg.norm(self._bs_reference - self._ris_reference))

    @property
    def direction(self) -> SphericalDirection:
        """
        The UE seen from the RIS reference point.
        """
        return cartesian_to_spherical(self._ris_reference, self._ue_position)

    def with_ue(self, ue_position):
        return ScenarioGeometry(self._bs_reference, self._ris_reference, ue_position, self._bs_offsets, self._ris_offsets)

    def with_bs(self, bs_reference=None, bs_offsets=None):
        return ScenarioGeometry(self._bs_reference if bs_reference is None else bs_reference, self._ris_reference,
                                self._ue_position, self._bs_offsets if bs_offsets is None else bs_offsets,
                                self._ris_offsets)

    def to_dict(self):
        return({'bs_reference': self._bs_reference.tolist(), 'ris_reference': self._ris_reference.tolist(),
                'ue_position': self._ue_position.tolist(), 'bs_offsets': self._bs_offsets.tolist(),
                'ris_offsets': self._ris_offsets.tolist()})


def _direction_of(geometry: ScenarioGeometry, direction):
    return(geometry.direction if direction is None else direction)


def ris_distances(geometry: ScenarioGeometry, direction: SphericalDirection = None, model=WaveModel.NEAR) -> np.ndarray:
    """
    Distances d_rU from every RIS element to the UE under the selected wavefront model.
    """
    model = WaveModel(model)
    direction = _direction_of(geometry, direction)
    d = direction.distance
    gamma = -geometry.ris_offsets @ direction.unit
    if model is WaveModel.FAR:
        return(d + gamma)
    rho2 = np.sum(geometry.ris_offsets ** 2, axis=1)
    radicand = rho2 + d * d + 2.0 * d * gamma
    if np.any(radicand <= 0.0):
        raise DegenerateGeometryError("the UE sits on a RIS element.")
    return(np.sqrt(radicand))


def distance_ru(ris_index: int, geometry: ScenarioGeometry, direction: SphericalDirection = None,
                model=WaveModel.NEAR) -> float:
    if not checkers.is_integer(ris_index, minimum=0, maximum=geometry.n_ris - 1):
        raise InvalidArgumentError("RIS element index out of range: " + str(ris_index))
    model = WaveModel(model)
    direction = _direction_of(geometry, direction)
    offset = geometry.ris_offsets[ris_index]
    d = direction.distance
    gamma = gamma_ru(offset, direction)
    if model is WaveModel.FAR:
        return(d + gamma)
    radicand = float(offset @ offset) + d * d + 2.0 * d * gamma
    if radicand <= 0.0:
        raise DegenerateGeometryError("the UE sits on RIS element " + str(ris_index))
    return(math.sqrt(radicand))


def bs_ris_distances(geometry: ScenarioGeometry) -> np.ndarray:
    """
    (N_B, N_R) matrix of exact antenna-to-element distances d_br.
    """
    diff = geometry.bs_positions[:, None, :] - geometry.ris_positions[None, :, :]
    d = np.linalg.norm(diff, axis=2)
    if np.any(d == 0.0):
        raise DegenerateGeometryError("a BS antenna coincides with a RIS element.")
    return(d)


def bs_ris_far_offsets(geometry: ScenarioGeometry):
    """
    Plane-wave path offsets of the BS-RIS link: (Gamma_B,b for every antenna, Gamma_rB for every element).

    The arrival direction at the BS points from p_B to p_R and the departure direction at
    the RIS points from p_R to p_B; both come from the reference points only.
    """
    at_bs = far_field_direction(geometry.bs_reference, geometry.ris_reference)
    at_ris = far_field_direction(geometry.ris_reference, geometry.bs_reference)
    return(-geometry.bs_offsets @ at_bs.unit, -geometry.ris_offsets @ at_ris.unit)


def position_gradients(geometry: ScenarioGeometry, model=WaveModel.NEAR) -> np.ndarray:
    """
    (N_R, 3) Jacobian of the element distances d_rU with respect to p_U.

    Near: rows (p_U - p_r)^T / d_rU. Far: exact gradient of d_RU + Gamma_rU.
    """
    model = WaveModel(model)
    if model is WaveModel.NEAR:
        diff = geometry.ue_position[None, :] - geometry.ris_positions
        d = np.linalg.norm(diff, axis=1)
        if np.any(d == 0.0):
            raise DegenerateGeometryError("the UE sits on a RIS element.")
        return(diff / d[:, None])
    direction = geometry.direction
    u = direction.unit
    rho = geometry.ris_offsets
    along = rho @ u
    return(u[None, :] - (rho - along[:, None] * u[None, :]) / direction.distance)


def intermediate_gradients(geometry: ScenarioGeometry, direction: SphericalDirection = None,
                           model=WaveModel.NEAR) -> np.ndarray:
    """
    (N_R, 3) Jacobian of the element distances d_rU with respect to eta = [d_RU, phi_RU, theta_RU].
    """
    model = WaveModel(model)
    direction = _direction_of(geometry, direction)
    d, th, ph = direction.distance, direction.elevation, direction.azimuth
    x, y, z = geometry.ris_offsets[:, 0], geometry.ris_offsets[:, 1], geometry.ris_offsets[:, 2]
    st, ct, sp, cp = math.sin(th), math.cos(th), math.sin(ph), math.cos(ph)
    dgamma_dphi = x * st * sp - y * st * cp
    dgamma_dtheta = -x * ct * cp - y * ct * sp + z * st
    if model is WaveModel.FAR:
        return(np.column_stack([np.ones_like(x), dgamma_dphi, dgamma_dtheta]))
    gamma = -geometry.ris_offsets @ direction.unit
    d_ru = ris_distances(geometry, direction, WaveModel.NEAR)
    return(np.column_stack([(d + gamma) / d_ru, d * dgamma_dphi / d_ru, d * dgamma_dtheta / d_ru]))


def intermediate_jacobian(geometry: ScenarioGeometry) -> np.ndarray:
    """
    5x5 Jacobian of [alpha, c*xi, d_RU, phi_RU, theta_RU] with respect to [alpha, c*xi, x_U, y_U, z_U].
    """
    direction = geometry.direction
    d, th, ph = direction.distance, direction.elevation, direction.azimuth
    st, ct, sp, cp = math.sin(th), math.cos(th), math.sin(ph), math.cos(ph)
    if abs(st) < 1e-12:
        raise DegenerateGeometryError("the azimuth is not differentiable on the RIS z axis.")
    g = np.zeros((5, 5))
    g[0, 0] = 1.0
    g[1, 1] = 1.0
    g[2, 2:] = direction.unit
    g[3, 2:] = np.array([-sp, cp, 0.0]) / (d * st)
    g[4, 2:] = np.array([ct * cp, ct * sp, -st]) / d
    return(g)
