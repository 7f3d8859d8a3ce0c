"""
Exceptional Values

Bounds that cannot be evaluated are reported in-band with one of these values
instead of a number, an infinity or a pseudo-inverse result.

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
from abc import ABC, abstractmethod

from validator_collection import checkers


class ExceptionalValue(ABC):
    """
    Subtypes are used to indicate why a bound is missing.

    Every exceptional value carries the numerical rank and size of the matrix that
    could not be inverted and, when available, its condition number.
    """

    @abstractmethod
    def __init__(self, rank: int, size: int, condition: float = float('inf')):
        self._ev_name = ''
        self._sentinel = ''
        if not checkers.is_integer(rank, minimum=0) or not checkers.is_integer(size, minimum=1):
            raise ValueError("rank must be a non-negative integer and size a positive integer.")
        self._rank = int(rank)
        self._size = int(size)
        self._condition = float(condition)

    @property
    def ev_name(self):
        """
        A short title for the exceptional value.
        """
        return self._ev_name

    @property
    def sentinel(self):
        """
        The string written in place of a number in CSV outputs.
        """
        return self._sentinel

    @property
    def rank(self):
        """
        Numerical rank of the offending matrix.
        """
        return self._rank

    @property
    def size(self):
        return self._size

    @property
    def condition(self):
        """
        Ratio of the largest to the smallest singular value, infinite for an exactly singular matrix.
        """
        return self._condition

    def to_dict(self):
        cond = self._condition if self._condition != float('inf') else None
        return({'diagnostic': self._ev_name, 'rank': self._rank, 'size': self._size, 'condition': cond})

    def __eq__(self, other):
        return(type(self) is type(other) and self._rank == other._rank and self._size == other._size)

    def __hash__(self):
        return(hash((type(self).__name__, self._rank, self._size)))

    def __str__(self):
        return(self.__class__.__name__ + ' : ' + self._ev_name + ' (rank ' + str(self._rank) + ' of ' + str(self._size) + ')')

    __repr__ = __str__


class SingularMatrix(ExceptionalValue):
    """
    Singular : a matrix handed to an inversion kernel is rank deficient under the rank cutoff.
    """

    def __init__(self, rank, size, condition=float('inf')):
        super().__init__(rank, size, condition)
        self._ev_name = 'Singular Matrix'
        self._sentinel = 'SINGULAR'


class SingularFIM(ExceptionalValue):
    """
    Singular FIM : the Fisher information matrix is rank deficient, so the position
    cannot be localized and no position error bound exists.
    """

    def __init__(self, rank, size, condition=float('inf')):
        super().__init__(rank, size, condition)
        self._ev_name = 'Singular FIM'
        self._sentinel = 'SINGULAR'


class UndefinedEFI(ExceptionalValue):
    """
    Undefined EFI : the complement block of the requested parameter is singular,
    so the equivalent Fisher information is not defined.
    """

    def __init__(self, rank, size, condition=float('inf')):
        super().__init__(rank, size, condition)
        self._ev_name = 'Undefined EFI'
        self._sentinel = 'UNDEFINED'


class SingularNuisance(ExceptionalValue):
    """
    Singular Nuisance : the nuisance block [alpha, c*xi] is singular and the EFIM of
    the position related intermediate parameters cannot be formed.
    """

    def __init__(self, rank, size, condition=float('inf')):
        super().__init__(rank, size, condition)
        self._ev_name = 'Singular Nuisance Block'
        self._sentinel = 'UNDEFINED'


class PointError(object):
    """
    Stand-in for a bound at a point that could not be evaluated at all (degenerate geometry, no signal).
    """
    sentinel = 'ERROR'

    def __init__(self, reason: str):
        self.reason = reason

    def to_dict(self):
        return({'diagnostic': 'Point Error', 'reason': self.reason})

    def __str__(self):
        return(self.__class__.__name__ + ' : ' + self.reason)

    __repr__ = __str__


def is_exceptional(v):
    """
    True for anything reported in place of a number: a diagnostic or a point error.
    """
    return(isinstance(v, (ExceptionalValue, PointError)))
