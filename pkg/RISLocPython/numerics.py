"""
Dense linear algebra and validation kernels for the bound engine.

The matrices involved are tiny (at most 5x5 FIMs, or tall real factors with five
columns), so everything is a thin wrapper over numpy.linalg with the rank cutoff
and the diagnostics the fisher module needs.

Two forms of Fisher information are supported:

    * the matrix J itself, and
    * a real factor A with J = A^T A (square-root information form).

Schur complements and inverses computed from the factor keep their relative
accuracy when J is badly conditioned, which is the normal case for the distance
parameter of a small RIS.

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
import logging
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidArgumentError, NonFiniteError
from .ev import SingularMatrix
from .settings import RANK_TOL, SYMMETRY_TOL, FD_ABS_STEP, FD_REL_STEP

logger = logging.getLogger(__name__)


def as_matrix(m, square: bool = False) -> np.ndarray:
    """
    Return m as a 2-D numpy array after checking its shape and that every entry is finite.
    """
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise InvalidArgumentError("a matrix with positive dimensions is required, got shape " + str(a.shape))
    if square and a.shape[0] != a.shape[1]:
        raise InvalidArgumentError("a square matrix is required, got shape " + str(a.shape))
    if not np.all(np.isfinite(a)):
        raise NonFiniteError("the matrix contains NaN or Inf entries.")
    return(a)


def is_symmetric(m, rel_tol: float = SYMMETRY_TOL) -> bool:
    a = as_matrix(m, square=True)
    scale = np.max(np.abs(a))
    if scale == 0.0:
        return(True)
    return(bool(np.max(np.abs(a - a.T)) <= rel_tol * scale))


def singular_values(m) -> np.ndarray:
    return(np.linalg.svd(as_matrix(m), compute_uv=False))


def numerical_rank(m, rel_tol: float = RANK_TOL) -> int:
    """
    Count of singular values above rel_tol times the largest singular value.
    """
    s = singular_values(m)
    if s[0] == 0.0:
        return(0)
    return(int(np.sum(s > rel_tol * s[0])))


def condition_number(m) -> float:
    s = singular_values(m)
    if s[-1] == 0.0:
        return(float('inf'))
    return(float(s[0] / s[-1]))


def sym_inverse(m, rel_tol: float = RANK_TOL):
    """
    Inverse of a real symmetric matrix, or a SingularMatrix diagnostic when its
    numerical rank is below full.
    """
    a = as_matrix(m, square=True).astype(float)
    if not is_symmetric(a):
        raise InvalidArgumentError("sym_inverse requires a symmetric matrix.")
    n = a.shape[0]
    rank = numerical_rank(a, rel_tol)
    if rank < n:
        return(SingularMatrix(rank, n, condition_number(a)))
    inv = np.linalg.solve(a, np.eye(n))
    return(0.5 * (inv + inv.T))


def schur_complement(m, keep: Sequence[int], eliminate: Sequence[int], rel_tol: float = RANK_TOL):
    """
    Return M[keep,keep] - M[keep,elim] M[elim,elim]^-1 M[elim,keep].

    A SingularMatrix diagnostic for the eliminated block is returned when it cannot be inverted.
    """
    a = as_matrix(m, square=True).astype(float)
    keep = list(keep)
    eliminate = list(eliminate)
    if len(eliminate) == 0:
        return(a[np.ix_(keep, keep)].copy())
    ee = a[np.ix_(eliminate, eliminate)]
    inv = sym_inverse(ee, rel_tol)
    if isinstance(inv, SingularMatrix):
        return(inv)
    ke = a[np.ix_(keep, eliminate)]
    s = a[np.ix_(keep, keep)] - ke @ inv @ ke.T
    return(0.5 * (s + s.T))


# square-root information kernels ------------------------------------------------

def factor_gram(factor) -> np.ndarray:
    """
    J = A^T A for a real factor A.
    """
    a = as_matrix(factor)
    g = a.T @ a
    return(0.5 * (g + g.T))


def factor_rank(factor, rel_tol: float = RANK_TOL) -> int:
    """
    Numerical rank of A^T A evaluated through the singular values of A.

    The cutoff rel_tol applies to the singular values of A^T A, that is to the squares of those of A.
    """
    s = singular_values(factor)
    if s[0] == 0.0:
        return(0)
    return(int(np.sum(s * s > rel_tol * s[0] * s[0])))


def factor_condition(factor) -> float:
    s = singular_values(factor)
    if s[-1] == 0.0:
        return(float('inf'))
    return(float((s[0] / s[-1]) ** 2))


def factor_schur(factor, keep: Sequence[int], rel_tol: float = RANK_TOL):
    """
    Schur complement of A^T A onto the columns in keep, computed from a QR factorisation of A.

    Returns a SingularMatrix diagnostic when the eliminated columns are rank deficient. The
    cutoff applies to the singular values of A itself: the QR path stays accurate down to that
    level, well below the point where A^T A loses rank under the same cutoff.
    """
    a = as_matrix(factor).astype(float)
    keep = list(keep)
    eliminate = [j for j in range(a.shape[1]) if j not in keep]
    if len(eliminate) > 0:
        ae = a[:, eliminate]
        s = singular_values(ae)
        rank = 0 if s[0] == 0.0 else int(np.sum(s > rel_tol * s[0]))
        if rank < len(eliminate):
            return(SingularMatrix(rank, len(eliminate), factor_condition(ae)))
    r = np.linalg.qr(a[:, eliminate + keep], mode='r')
    k = len(eliminate)
    r22 = r[k:, k:]
    s = r22.T @ r22
    return(0.5 * (s + s.T))


def factor_inverse(factor, rel_tol: float = RANK_TOL):
    """
    (A^T A)^-1 through the SVD of A, or a SingularMatrix diagnostic.
    """
    a = as_matrix(factor).astype(float)
    n = a.shape[1]
    if a.shape[0] < n:
        return(SingularMatrix(min(factor_rank(a, rel_tol), a.shape[0]), n))
    _, s, vt = np.linalg.svd(a, full_matrices=False)
    rank = 0 if s[0] == 0.0 else int(np.sum(s * s > rel_tol * s[0] * s[0]))
    if rank < n:
        cond = float('inf') if s[-1] == 0.0 else float((s[0] / s[-1]) ** 2)
        return(SingularMatrix(rank, n, cond))
    w = vt.T / s
    inv = w @ w.T
    return(0.5 * (inv + inv.T))


# finite differences -------------------------------------------------------------

def default_steps(x) -> np.ndarray:
    """
    Per-parameter central-difference steps: max(abs_step, rel_step * |x|).
    """
    x = np.asarray(x, dtype=float)
    return(np.maximum(FD_ABS_STEP, FD_REL_STEP * np.abs(x)))


def central_diff(f: Callable, x, steps=None) -> np.ndarray:
    """
    Central-difference Jacobian estimate of f at x.

    f may return a scalar or an array (real or complex). The result has shape
    f(x).shape + (len(x),); for scalar f it is a vector of partials.
    """
    x0 = np.asarray(x, dtype=float).copy()
    if x0.ndim != 1 or x0.size == 0:
        raise InvalidArgumentError("x must be a non-empty parameter vector.")
    h = default_steps(x0) if steps is None else np.broadcast_to(np.asarray(steps, dtype=float), x0.shape)
    if np.any(h <= 0.0):
        raise InvalidArgumentError("finite-difference steps must be positive.")
    cols = []
    for j in range(x0.size):
        xp = x0.copy()
        xm = x0.copy()
        xp[j] += h[j]
        xm[j] -= h[j]
        fp = np.asarray(f(xp))
        fm = np.asarray(f(xm))
        if not (np.all(np.isfinite(fp)) and np.all(np.isfinite(fm))):
            raise NonFiniteError("non-finite evaluation at parameter " + str(j))
        cols.append((fp - fm) / (2.0 * h[j]))
    return(np.stack(cols, axis=-1))
