"""
Fisher information of the RIS-reflected signal.

Four parameter vectors are supported:

    position      [alpha, c*xi, x_U, y_U, z_U]
    intermediate  [alpha, c*xi, d_RU, phi_RU, theta_RU]
    sync          [alpha, x_U, y_U, z_U]                    (clock offset known)
    reduced       [alpha, c*xi + d_RU, phi_RU, theta_RU]    (far-field RIS-UE only)

Every FIM is assembled as J = A^T A from the real factor A = sqrt(2/sigma^2) [Re D; Im D],
where the rows of D are the derivatives of the selected samples mu_{b,n,t}. Bounds derived
from a FisherInformation use the factor (QR / SVD); bounds derived from a plain matrix use
the matrix kernels of the numerics module.

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
import json
import logging
from enum import Enum
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, Union

import numpy as np
from validator_collection import checkers

from .errors import InvalidArgumentError, EmptyMaskError, NonFiniteError
from .ev import SingularMatrix, SingularFIM, UndefinedEFI, SingularNuisance, is_exceptional
from .geometry import (C, WaveModel, ScenarioGeometry, SphericalDirection, spherical_to_cartesian,
                       position_gradients, intermediate_gradients, ris_distances)
from .channel import (SignalConfig, ChannelModelFlags, frequencies, subcarrier_freq, h_br, h_ru,
                      bs_ris_path_lengths, signal_prefactor, profile_coefficients, mu)
from .ris import time_equivalent_profiles
from . import numerics, utils

logger = logging.getLogger(__name__)


class Parameterization(str, Enum):
    POSITION = 'position'
    INTERMEDIATE = 'intermediate'
    SYNC = 'sync'
    REDUCED = 'reduced'


PARAMETER_NAMES = {
    Parameterization.POSITION: ('alpha', 'c_xi', 'x_U', 'y_U', 'z_U'),
    Parameterization.INTERMEDIATE: ('alpha', 'c_xi', 'd_RU', 'phi_RU', 'theta_RU'),
    Parameterization.SYNC: ('alpha', 'x_U', 'y_U', 'z_U'),
    Parameterization.REDUCED: ('alpha', 'c_xi_plus_d_RU', 'phi_RU', 'theta_RU'),
}

POSITION_BLOCK = (2, 3, 4)
ETA_BLOCK = (2, 3, 4)
NUISANCE_BLOCK = (0, 1)


# sample selection ---------------------------------------------------------------

def sample_shape(geometry: ScenarioGeometry, cfg: SignalConfig):
    return((geometry.n_bs, cfg.n_subcarriers, cfg.n_slots))


class SampleMask(object):
    """
    Boolean selection over the (b, n, t) samples that contribute to a FIM.
    """

    def __init__(self, selected):
        s = np.array(selected, dtype=bool)
        if s.ndim != 3:
            raise InvalidArgumentError("a sample mask is a 3-D (N_B, N, T) boolean array.")
        if not s.any():
            raise EmptyMaskError("the sample mask selects no samples.")
        s.flags.writeable = False
        self._selected = s

    def __str__(self):
        return(self.__class__.__name__ + ' : ' + str(self.count) + ' of ' + str(self._selected.size) + ' samples')

    def __or__(self, other):
        return SampleMask(self._selected | other.selected)

    def __and__(self, other):
        return SampleMask(self._selected & other.selected)

    @property
    def selected(self):
        return self._selected

    @property
    def shape(self):
        return self._selected.shape

    @property
    def count(self):
        return int(self._selected.sum())

    def issubset(self, other) -> bool:
        return(bool(np.all(other.selected[self._selected])))

    @classmethod
    def full(cls, shape):
        return cls(np.ones(shape, dtype=bool))

    @classmethod
    def from_predicate(cls, shape, predicate: Callable[[int, int, int], bool]):
        s = np.zeros(shape, dtype=bool)
        for b, n, t in np.ndindex(*shape):
            s[b, n, t] = bool(predicate(b, n, t))
        return cls(s)

    @classmethod
    def single(cls, shape, b: int, n: int, t: int):
        s = np.zeros(shape, dtype=bool)
        try:
            s[b, n, t] = True
        except IndexError:
            raise InvalidArgumentError("sample index out of range: " + str((b, n, t)))
        return cls(s)

    @classmethod
    def antenna(cls, shape, b: int):
        s = np.zeros(shape, dtype=bool)
        if not checkers.is_integer(b, minimum=0, maximum=shape[0] - 1):
            raise InvalidArgumentError("BS antenna index out of range: " + str(b))
        s[b] = True
        return cls(s)

    @classmethod
    def subcarrier(cls, shape, n: int):
        s = np.zeros(shape, dtype=bool)
        if not checkers.is_integer(n, minimum=0, maximum=shape[1] - 1):
            raise InvalidArgumentError("sub-carrier index out of range: " + str(n))
        s[:, n] = True
        return cls(s)

    @classmethod
    def slot(cls, shape, t: int):
        s = np.zeros(shape, dtype=bool)
        if not checkers.is_integer(t, minimum=0, maximum=shape[2] - 1):
            raise InvalidArgumentError("slot index out of range: " + str(t))
        s[:, :, t] = True
        return cls(s)

    @classmethod
    def case1(cls, shape, n0: int):
        """
        Antenna t1 is the only one active in slot t1, on sub-carrier n0 only.
        """
        if not checkers.is_integer(n0, minimum=0, maximum=shape[1] - 1):
            raise InvalidArgumentError("sub-carrier index out of range: " + str(n0))
        s = np.zeros(shape, dtype=bool)
        for t1 in range(min(shape[0], shape[2])):
            s[t1, n0, t1] = True
        return cls(s)

    @classmethod
    def case2(cls, shape, b0: int):
        """
        Antenna b0 only; sub-carrier t2 is the only one used in slot t2.
        """
        if not checkers.is_integer(b0, minimum=0, maximum=shape[0] - 1):
            raise InvalidArgumentError("BS antenna index out of range: " + str(b0))
        s = np.zeros(shape, dtype=bool)
        for t2 in range(min(shape[1], shape[2])):
            s[b0, t2, t2] = True
        return cls(s)


def _resolve_mask(mask, geometry, cfg) -> np.ndarray:
    shape = sample_shape(geometry, cfg)
    if mask is None:
        return(np.ones(shape, dtype=bool))
    selected = mask.selected if isinstance(mask, SampleMask) else SampleMask(mask).selected
    if selected.shape != shape:
        raise InvalidArgumentError("the sample mask shape " + str(selected.shape) + " does not match " + str(shape))
    return(selected)


# fisher information container ---------------------------------------------------

class FisherInformation(object):
    """
    A FIM held in square-root form: J = factor^T factor.
    """

    def __init__(self, factor, params: Sequence[str]):
        a = numerics.as_matrix(factor).astype(float)
        if a.shape[1] != len(params):
            raise InvalidArgumentError("the factor has " + str(a.shape[1]) + " columns for "
                                       + str(len(params)) + " parameters.")
        a.flags.writeable = False
        self._factor = a
        self._params = tuple(params)

    def __str__(self):
        return(self.__class__.__name__ + ' : ' + str(self._params))

    def __add__(self, other):
        if self._params != other.params:
            raise InvalidArgumentError("cannot add FIMs over different parameter vectors.")
        return FisherInformation(np.vstack([self._factor, other.factor]), self._params)

    @property
    def factor(self):
        return self._factor

    @property
    def params(self):
        return self._params

    @property
    def size(self):
        return len(self._params)

    @property
    def matrix(self):
        return numerics.factor_gram(self._factor)

    @property
    def rank(self):
        return numerics.factor_rank(self._factor)

    @property
    def condition(self):
        return numerics.factor_condition(self._factor)

    def scaled(self, k: float):
        """
        The FIM multiplied by k >= 0.
        """
        if not checkers.is_numeric(k, minimum=0):
            raise InvalidArgumentError("the scale factor must be non-negative.")
        return FisherInformation(math.sqrt(k) * self._factor, self._params)

    def restrict(self, indices: Sequence[int]):
        """
        The FIM of a sub-vector of the parameters, the others being known.
        """
        indices = list(indices)
        return FisherInformation(self._factor[:, indices], [self._params[i] for i in indices])


FimLike = Union[np.ndarray, FisherInformation]


# derivative engine --------------------------------------------------------------

@dataclass
class _Context:
    parameterization: Parameterization
    freqs: np.ndarray
    wavenumbers: np.ndarray
    bs_paths: np.ndarray
    ris_paths: np.ndarray
    gradients: np.ndarray
    coeffs: np.ndarray
    prefactor: np.ndarray
    alpha: float


def _gradients(parameterization: Parameterization, geometry: ScenarioGeometry, flags: ChannelModelFlags):
    if parameterization in (Parameterization.POSITION, Parameterization.SYNC):
        return(position_gradients(geometry, flags.ris_ue))
    return(intermediate_gradients(geometry, model=flags.ris_ue))


def _context(parameterization, geometry, cfg, flags, coeffs) -> _Context:
    parameterization = Parameterization(parameterization)
    if parameterization is Parameterization.REDUCED and flags.ris_ue is not WaveModel.FAR:
        raise InvalidArgumentError("the reduced parameter vector is defined for the far-field RIS-UE model only.")
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.ndim == 2:
        coeffs = np.broadcast_to(coeffs, (cfg.n_subcarriers,) + coeffs.shape)
    if coeffs.shape != (cfg.n_subcarriers, cfg.n_slots, geometry.n_ris):
        raise InvalidArgumentError("the RIS profile must have shape (n_slots, n_ris) = "
                                   + str((cfg.n_slots, geometry.n_ris)) + ", got " + str(coeffs.shape[1:]))
    f = frequencies(cfg)
    return(_Context(parameterization=parameterization, freqs=f, wavenumbers=2.0 * np.pi * f / C,
                    bs_paths=bs_ris_path_lengths(geometry, flags.bs_ris),
                    ris_paths=ris_distances(geometry, model=flags.ris_ue),
                    gradients=_gradients(parameterization, geometry, flags), coeffs=coeffs,
                    prefactor=signal_prefactor(cfg), alpha=cfg.alpha))


def _antenna_jacobian(ctx: _Context, b: int) -> np.ndarray:
    """
    (N, T, P) complex derivatives of mu_{b,n,t} for one antenna.
    """
    path = ctx.bs_paths[b] + ctx.ris_paths
    h = np.exp(-1j * np.multiply.outer(ctx.wavenumbers, path))
    s = np.einsum('ntr,nr->nt', ctx.coeffs, h)
    v = np.einsum('ntr,nr,rk->ntk', ctx.coeffs, h, ctx.gradients)
    jk = -1j * ctx.wavenumbers[:, None]
    mean = ctx.prefactor * s
    geo = (jk * ctx.prefactor)[:, :, None] * v
    cols = [mean / ctx.alpha]
    if ctx.parameterization is Parameterization.SYNC:
        return(np.concatenate([cols[0][:, :, None], geo], axis=2))
    cols.append(jk * mean)
    d = np.concatenate([np.stack(cols, axis=2), geo], axis=2)
    if ctx.parameterization is Parameterization.REDUCED:
        # the far-field distance column duplicates the clock-offset column
        d = d[:, :, [0, 1, 3, 4]]
    return(d)


def mean_jacobian(parameterization, geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags,
                  profile) -> np.ndarray:
    """
    (N_B, N, T, P) complex tensor of the derivatives of every sample mu_{b,n,t}.
    """
    ctx = _context(parameterization, geometry, cfg, flags, profile_coefficients(profile))
    return(np.stack([_antenna_jacobian(ctx, b) for b in range(geometry.n_bs)], axis=0))


def information_factor(parameterization, geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags,
                       profile, mask=None, workers: int = None) -> FisherInformation:
    """
    Fisher information of the selected samples in square-root form.

    profile may also be an (N, T, N_R) array giving per sub-carrier coefficients. With workers > 1
    the antennas are processed by a thread pool; the rows are stacked in antenna order either way,
    so the result does not depend on scheduling.
    """
    ctx = _context(parameterization, geometry, cfg, flags, profile_coefficients(profile))
    selected = _resolve_mask(mask, geometry, cfg)
    antennas = [b for b in range(geometry.n_bs) if selected[b].any()]

    def rows(b):
        return(_antenna_jacobian(ctx, b)[selected[b]])

    if workers is not None and workers > 1 and len(antennas) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(rows, antennas))
    else:
        blocks = [rows(b) for b in antennas]
    d = np.concatenate(blocks, axis=0)
    if not np.all(np.isfinite(d)):
        raise NonFiniteError("non-finite derivatives in the FIM assembly.")
    factor = math.sqrt(2.0 / cfg.noise_var) * np.vstack([d.real, d.imag])
    logger.debug('assembled %s FIM from %d samples', ctx.parameterization.value, d.shape[0])
    return FisherInformation(factor, PARAMETER_NAMES[ctx.parameterization])


# per-sample derivatives ---------------------------------------------------------

def _sample_derivative(grad_rows: np.ndarray, b, n, t, geometry, cfg, flags, profile):
    f = subcarrier_freq(n, cfg)
    k = 2.0 * np.pi * f / C
    coeffs = profile_coefficients(profile)
    value = mu(b, n, t, geometry, cfg, flags, profile)
    h_tilde = h_br(n, geometry, cfg, flags.bs_ris)[b] * h_ru(n, geometry, cfg, model=flags.ris_ue)
    prefactor = cfg.alpha * cfg.pilot[n, t] * np.exp(-2j * np.pi * f * cfg.xi_seconds)
    weighted = coeffs[t] * h_tilde
    geo = -1j * k * prefactor * (weighted @ grad_rows)
    head = np.array([value / cfg.alpha, -1j * k * value], dtype=complex)
    return(np.concatenate([head, geo]))


def dmu_dtheta(b: int, n: int, t: int, geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags,
               profile) -> np.ndarray:
    """
    Derivatives of mu_{b,n,t} with respect to [alpha, c*xi, x_U, y_U, z_U].
    """
    return(_sample_derivative(position_gradients(geometry, flags.ris_ue), b, n, t, geometry, cfg, flags, profile))


def dmu_dthetabar(b: int, n: int, t: int, geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags,
                  profile) -> np.ndarray:
    """
    Derivatives of mu_{b,n,t} with respect to [alpha, c*xi, d_RU, phi_RU, theta_RU].
    """
    grads = intermediate_gradients(geometry, model=flags.ris_ue)
    return(_sample_derivative(grads, b, n, t, geometry, cfg, flags, profile))


def mean_at_parameters(values, parameterization, b: int, n: int, t: int, geometry: ScenarioGeometry,
                       cfg: SignalConfig, flags: ChannelModelFlags, profile) -> complex:
    """
    mu_{b,n,t} re-evaluated with the parameter vector replaced by values.

    Only the position and intermediate vectors are accepted. Used as the function under
    test when the analytic derivatives are checked against finite differences.
    """
    parameterization = Parameterization(parameterization)
    values = np.asarray(values, dtype=float)
    if values.shape != (5,):
        raise InvalidArgumentError("a five-entry parameter vector is required.")
    if parameterization is Parameterization.POSITION:
        p = values[2:]
    elif parameterization is Parameterization.INTERMEDIATE:
        p = spherical_to_cartesian(geometry.ris_reference,
                                   SphericalDirection(values[2], values[4], values[3]))
    else:
        raise InvalidArgumentError("mean_at_parameters supports the position and intermediate vectors only.")
    moved = cfg.copy(alpha=values[0], xi_seconds=values[1] / C)
    return(mu(b, n, t, geometry.with_ue(p), moved, flags, profile))


def parameter_vector(parameterization, geometry: ScenarioGeometry, cfg: SignalConfig) -> np.ndarray:
    parameterization = Parameterization(parameterization)
    if parameterization is Parameterization.POSITION:
        return(np.concatenate([[cfg.alpha, cfg.c_xi], geometry.ue_position]))
    if parameterization is Parameterization.INTERMEDIATE:
        d = geometry.direction
        return(np.array([cfg.alpha, cfg.c_xi, d.distance, d.azimuth, d.elevation]))
    raise InvalidArgumentError("parameter_vector supports the position and intermediate vectors only.")


# FIM assembly -------------------------------------------------------------------

def fim(parameterization, geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags, profile,
        mask=None, workers: int = None) -> np.ndarray:
    """
    The FIM sum of (2/sigma^2) Re{conj(dmu) dmu^T} over the selected samples.
    """
    return(information_factor(parameterization, geometry, cfg, flags, profile, mask, workers).matrix)


def fim_sync(geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags, profile, mask=None,
             workers: int = None) -> np.ndarray:
    """
    4x4 FIM over [alpha, x_U, y_U, z_U] for a synchronized UE (xi known).
    """
    return(fim(Parameterization.SYNC, geometry, cfg, flags, profile, mask, workers))


def fim_reduced_farfield(geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags, profile,
                         mask=None, workers: int = None) -> np.ndarray:
    """
    4x4 FIM over [alpha, c*xi + d_RU, phi_RU, theta_RU] under the planar RIS-UE model.
    """
    return(fim(Parameterization.REDUCED, geometry, cfg, flags, profile, mask, workers))


def per_antenna_fim(b: int, parameterization, geometry: ScenarioGeometry, cfg: SignalConfig,
                    flags: ChannelModelFlags, profile, mask=None) -> np.ndarray:
    """
    FIM of the samples received by antenna b alone.
    """
    selected = SampleMask.antenna(sample_shape(geometry, cfg), b).selected & _resolve_mask(mask, geometry, cfg)
    return(fim(parameterization, geometry, cfg, flags, profile, selected))


# bounds -------------------------------------------------------------------------

def _as_info(m):
    """
    Split a FisherInformation or matrix argument into (factor or None, matrix or None, size).
    """
    if isinstance(m, FisherInformation):
        return(m.factor, None, m.size)
    a = numerics.as_matrix(m, square=True).astype(float)
    return(None, a, a.shape[0])


def _index(k, size):
    if not checkers.is_integer(k, minimum=0, maximum=size - 1):
        raise InvalidArgumentError("parameter index out of range: " + str(k))
    return(int(k))


def efi(fim_bar: FimLike, k: int):
    """
    Equivalent Fisher information of parameter k: the Schur complement of J[k, k] after
    eliminating every other parameter. UndefinedEFI when that complement block is singular.
    """
    factor, matrix, size = _as_info(fim_bar)
    k = _index(k, size)
    others = [j for j in range(size) if j != k]
    if factor is not None:
        s = numerics.factor_schur(factor, [k])
    else:
        s = numerics.schur_complement(matrix, [k], others)
    if isinstance(s, SingularMatrix):
        logger.debug('EFI of parameter %d undefined: complement rank %d of %d', k, s.rank, s.size)
        return(UndefinedEFI(s.rank, s.size, s.condition))
    return(max(float(s[0, 0]), 0.0))


def efim_eta(fim_bar: FimLike):
    """
    3x3 EFIM of [d_RU, phi_RU, theta_RU] after eliminating [alpha, c*xi].
    """
    factor, matrix, size = _as_info(fim_bar)
    if size != 5:
        raise InvalidArgumentError("efim_eta requires the 5x5 intermediate FIM.")
    if factor is not None:
        s = numerics.factor_schur(factor, list(ETA_BLOCK))
    else:
        s = numerics.schur_complement(matrix, list(ETA_BLOCK), list(NUISANCE_BLOCK))
    if isinstance(s, SingularMatrix):
        return(SingularNuisance(s.rank, s.size, s.condition))
    return(s)


def _inverse(fim_like: FimLike):
    factor, matrix, size = _as_info(fim_like)
    if factor is not None:
        inv = numerics.factor_inverse(factor)
    else:
        inv = numerics.sym_inverse(matrix)
    if isinstance(inv, SingularMatrix):
        return(SingularFIM(inv.rank, inv.size, inv.condition))
    return(inv)


def peb(fim: FimLike, position_block: Sequence[int] = None):
    """
    Position error bound sqrt(trace([J^-1] over the position block)), in metres.

    The position block defaults to the last three parameters. A rank deficient FIM yields a
    SingularFIM diagnostic carrying its numerical rank.
    """
    _, _, size = _as_info(fim)
    block = list(range(size - 3, size)) if position_block is None else [_index(i, size) for i in position_block]
    inv = _inverse(fim)
    if is_exceptional(inv):
        return(inv)
    return(math.sqrt(max(float(np.trace(inv[np.ix_(block, block)])), 0.0)))


def crlb_intermediate(fim_bar: FimLike):
    """
    Square-root CRLBs of d_RU, phi_RU and theta_RU, or SingularFIM.
    """
    inv = _inverse(fim_bar)
    if is_exceptional(inv):
        return(inv)
    return({name: math.sqrt(max(float(inv[i, i]), 0.0))
            for name, i in zip(('d_RU', 'phi_RU', 'theta_RU'), ETA_BLOCK)})


# time-space trade ---------------------------------------------------------------

def fim_slot_all_antennas(geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags, slot_coefficients,
                          parameterization=Parameterization.POSITION) -> np.ndarray:
    """
    FIM of a single slot received by every BS antenna with the given RIS coefficients.
    """
    single = cfg.copy(n_slots=1)
    coeffs = profile_coefficients(slot_coefficients).reshape(1, -1)
    return(fim(parameterization, geometry, single, flags, coeffs))


def fim_antenna_over_slots(geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags,
                           slot_coefficients, ref_antenna: int,
                           parameterization=Parameterization.POSITION) -> np.ndarray:
    """
    FIM of antenna ref_antenna alone over N_B slots, slot t carrying the time-equivalent
    profile of antenna t. The profile is corrected per sub-carrier.
    """
    slots = cfg.copy(n_slots=geometry.n_bs)
    coeffs = np.stack([time_equivalent_profiles(slot_coefficients, geometry, n, ref_antenna, slots, flags).coefficients
                       for n in range(cfg.n_subcarriers)], axis=0)
    mask = SampleMask.antenna(sample_shape(geometry, slots), ref_antenna)
    return(fim(parameterization, geometry, slots, flags, coeffs, mask))


# reports ------------------------------------------------------------------------

@dataclass
class FisherReport:
    """
    FIMs of one scenario with the bounds derived from them.
    """
    fim_position: np.ndarray
    fim_intermediate: np.ndarray
    peb: object
    efi: dict
    efim_eta: object
    rank_diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        return(utils.jsonable({'fim_position': self.fim_position, 'fim_intermediate': self.fim_intermediate,
                               'peb': self.peb, 'efi': self.efi, 'efim_eta': self.efim_eta,
                               'rank_diagnostics': self.rank_diagnostics}))

    def to_json(self, indent=None) -> str:
        return(json.dumps(self.to_dict(), indent=indent))


def fisher_report(geometry: ScenarioGeometry, cfg: SignalConfig, flags: ChannelModelFlags, profile, mask=None,
                  workers: int = None) -> FisherReport:
    info = information_factor(Parameterization.POSITION, geometry, cfg, flags, profile, mask, workers)
    info_bar = information_factor(Parameterization.INTERMEDIATE, geometry, cfg, flags, profile, mask, workers)
    diagnostics = {}
    for name, i in (('position', info), ('intermediate', info_bar)):
        cond = i.condition
        diagnostics[name] = {'rank': i.rank, 'condition': None if math.isinf(cond) else cond}
    return FisherReport(fim_position=info.matrix, fim_intermediate=info_bar.matrix, peb=peb(info),
                        efi={name: efi(info_bar, k) for name, k in zip(('d_RU', 'phi_RU', 'theta_RU'), ETA_BLOCK)},
                        efim_eta=efim_eta(info_bar), rank_diagnostics=diagnostics)
