# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

from math import factorial
from typing import Iterable, Optional, Union

import numpy as np

from .utils.exceptions import DomainError

Scalar = Union[int, float, complex]


class NilpotentSeries:
    """
    Truncated polynomial sum_m c_m c^m in a degree-2 class c with c^{2k} = 0.

    Coefficients are stored as a complex array of length exactly 2k.
    """

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients: Iterable[Scalar], k: Optional[int] = None):
        coefficients = np.array(list(coefficients), dtype=complex)
        if k is not None:
            length = 2 * int(k)
            if len(coefficients) > length:
                raise DomainError("NilpotentSeries", f"{len(coefficients)} coefficients exceed 2k={length}")
            coefficients = np.concatenate([coefficients, np.zeros(length - len(coefficients), dtype=complex)])
        if len(coefficients) == 0 or len(coefficients) % 2:
            raise DomainError("NilpotentSeries", f"length {len(coefficients)} is not a positive even number")
        self._coefficients = coefficients

    # ==================== Constructors ====================

    @classmethod
    def constant(cls, k: int, value: Scalar = 1.0) -> "NilpotentSeries":
        return cls([value], k=k)

    @classmethod
    def generator(cls, k: int) -> "NilpotentSeries":
        """The class c itself."""
        return cls([0.0, 1.0], k=k)

    # ==================== Accessors ====================

    @property
    def k(self) -> int:
        return len(self._coefficients) // 2

    @property
    def coefficients(self) -> np.ndarray:
        return self._coefficients.copy()

    def __getitem__(self, m: int) -> complex:
        return complex(self._coefficients[m])

    def __len__(self) -> int:
        return len(self._coefficients)

    def __repr__(self) -> str:
        return f"NilpotentSeries(k={self.k}, coefficients={self._coefficients.tolist()})"

    # ==================== Arithmetic ====================

    def _coerce(self, other: Union["NilpotentSeries", Scalar]) -> "NilpotentSeries":
        if isinstance(other, NilpotentSeries):
            if other.k != self.k:
                raise DomainError("NilpotentSeries", f"mismatched k: {self.k} and {other.k}")
            return other
        return NilpotentSeries.constant(self.k, other)

    def __add__(self, other):
        return NilpotentSeries(self._coefficients + self._coerce(other)._coefficients)

    __radd__ = __add__

    def __neg__(self):
        return NilpotentSeries(-self._coefficients)

    def __sub__(self, other):
        return NilpotentSeries(self._coefficients - self._coerce(other)._coefficients)

    def __rsub__(self, other):
        return NilpotentSeries(self._coerce(other)._coefficients - self._coefficients)

    def __mul__(self, other):
        if not isinstance(other, NilpotentSeries):
            return NilpotentSeries(self._coefficients * complex(other))
        other = self._coerce(other)
        length = len(self._coefficients)
        return NilpotentSeries(np.convolve(self._coefficients, other._coefficients)[:length])

    __rmul__ = __mul__

    def _nilpotent_powers(self) -> Iterable["NilpotentSeries"]:
        """Powers N^j, j = 0..2k-1, of the part above degree zero."""
        nil = NilpotentSeries(np.concatenate([[0.0], self._coefficients[1:]]))
        power = NilpotentSeries.constant(self.k)
        for _ in range(len(self._coefficients)):
            yield power
            power = power * nil

    def exp(self) -> "NilpotentSeries":
        """e^{a + N} = e^a sum_j N^j / j!, finite since N^{2k} = 0."""
        result = NilpotentSeries.constant(self.k, 0.0)
        for j, power in enumerate(self._nilpotent_powers()):
            result = result + power * (1.0 / factorial(j))
        return result * np.exp(self._coefficients[0])

    def reciprocal(self) -> "NilpotentSeries":
        """1 / (a + N) = (1/a) sum_j (-N/a)^j."""
        a = self._coefficients[0]
        if a == 0:
            raise DomainError("NilpotentSeries.reciprocal", "constant term is zero")
        result = NilpotentSeries.constant(self.k, 0.0)
        for j, power in enumerate(self._nilpotent_powers()):
            result = result + power * ((-1.0 / a) ** j)
        return result * (1.0 / a)

    def rescale(self, factor: Scalar) -> "NilpotentSeries":
        """Substitute c -> factor * c."""
        m = np.arange(len(self._coefficients))
        return NilpotentSeries(self._coefficients * np.power(complex(factor), m))

    def allclose(self, other: "NilpotentSeries", atol: float = 1e-12, rtol: float = 0.0) -> bool:
        other = self._coerce(other)
        return bool(np.allclose(self._coefficients, other._coefficients, atol=atol, rtol=rtol))
