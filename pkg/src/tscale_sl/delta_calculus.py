"""Delta calculus on realized grids.

Every grid point except ``b`` is right-scattered, so the delta derivative is
the forward divided difference and the delta integral is the graininess
weighted left sum. Both are exact on the grid, which makes the classical
time-scale identities (sigma-shift, product and quotient rules, telescoping)
hold to roundoff.

A :class:`GridFunction` may be shorter than its grid: a function with
``N + 1`` values lives on T, one with ``N`` values on T^k (the domain of a
delta derivative) and one with ``N - 1`` values on T^{k^2}.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass

import numpy as np

from .timescale import Grid

__all__ = [
    "GridFunction",
    "sigma_shift",
    "delta_derivative",
    "second_delta_derivative",
    "delta_integral",
]


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of a real function on the leading points of ``grid``."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1:
            raise ValueError("grid function values must be one-dimensional")
        if not 1 <= len(vals) <= self.grid.size:
            raise ValueError(
                f"grid function has {len(vals)} values for a grid of {self.grid.size} points"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("grid function values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_callable(cls, grid: Grid, f) -> "GridFunction":
        return cls(grid, np.array([f(t) for t in grid.points], dtype=float))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def _binary(self, other, op):
        if isinstance(other, GridFunction):
            if other.grid is not self.grid:
                raise ValueError("grid functions live on different grids")
            n = min(len(self), len(other))
            return GridFunction(self.grid, op(self.values[:n], other.values[:n]))
        if isinstance(other, numbers.Real):
            return GridFunction(self.grid, op(self.values, float(other)))
        return NotImplemented

    def __add__(self, other):
        return self._binary(other, np.add)

    def __radd__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __rsub__(self, other):
        return self._binary(other, lambda x, y: y - x)

    def __mul__(self, other):
        return self._binary(other, np.multiply)

    def __rmul__(self, other):
        return self._binary(other, np.multiply)

    def __truediv__(self, other):
        return self._binary(other, np.divide)

    def __neg__(self):
        return GridFunction(self.grid, -self.values)


def sigma_shift(f: GridFunction) -> GridFunction:
    """f^sigma: value at i is f_{i+1}; the last point maps to itself."""
    v = f.values
    n = len(v)
    if n == f.grid.size:
        return GridFunction(f.grid, np.append(v[1:], v[-1]))
    # off T the shift is only known where i + 1 is sampled
    return GridFunction(f.grid, v[1:])


def delta_derivative(f: GridFunction) -> GridFunction:
    """Forward divided difference (f_{i+1} - f_i) / mu_i, one value shorter than ``f``."""
    if len(f) < 2:
        raise ValueError("delta derivative needs at least two samples")
    mu = f.grid.graininess[: len(f) - 1]
    assert np.all(mu > 0), "grid graininess must be positive"
    return GridFunction(f.grid, np.diff(f.values) / mu)


def second_delta_derivative(f: GridFunction) -> GridFunction:
    if len(f) < 3:
        raise ValueError("second delta derivative needs at least three samples")
    return delta_derivative(delta_derivative(f))


def delta_integral(f: GridFunction, from_index: int, to_index: int) -> float:
    """Cauchy delta integral from t_from to t_to: sum of mu_i f_i over from <= i < to."""
    if not 0 <= from_index <= to_index <= f.grid.N:
        raise IndexError(
            f"integration range [{from_index}, {to_index}] outside 0..{f.grid.N}"
        )
    if to_index - 1 >= len(f):
        raise IndexError(
            f"integrand has {len(f)} samples, cannot integrate up to index {to_index}"
        )
    mu = f.grid.graininess[from_index:to_index]
    return float(np.dot(mu, f.values[from_index:to_index]))
