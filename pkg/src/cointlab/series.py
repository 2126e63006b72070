"""Annual time series and aligned multi-series datasets.

Everything downstream (unit-root tests, VAR/VECM estimation, break
search) consumes these two immutable containers.  A :class:`Series` is a
named run of consecutive annual observations; a :class:`Dataset` is an
ordered collection of role-tagged series sharing one sample window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .errors import AlignmentError, DomainError, InsufficientDataError, ParameterError


@dataclass(frozen=True)
class Series:
    """A named annual series starting at ``start_year`` with no gaps."""

    name: str
    start_year: int
    values: NDArray[np.float64] = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ParameterError(f"series {self.name!r} must hold a nonempty 1-d vector")
        if not np.all(np.isfinite(vals)):
            raise ParameterError(f"series {self.name!r} contains non-finite values")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return self.values.size

    @property
    def end_year(self) -> int:
        return self.start_year + len(self) - 1

    @property
    def years(self) -> NDArray[np.int64]:
        return np.arange(self.start_year, self.end_year + 1)

    def value_in(self, year: int) -> float:
        if not self.start_year <= year <= self.end_year:
            raise ParameterError(f"year {year} outside sample {self.start_year}-{self.end_year}")
        return float(self.values[year - self.start_year])

    def window(self, start_year: int, end_year: int) -> "Series":
        if start_year < self.start_year or end_year > self.end_year or start_year > end_year:
            raise ParameterError(
                f"window {start_year}-{end_year} not inside {self.start_year}-{self.end_year}"
            )
        lo = start_year - self.start_year
        return Series(self.name, start_year, self.values[lo : lo + end_year - start_year + 1])


def diff(s: Series, order: int = 1) -> Series:
    """Apply the first-difference operator ``order`` times.

    The result starts ``order`` years later and is ``order`` observations
    shorter; differencing a constant series yields zeros.
    """
    if order < 1:
        raise ParameterError("differencing order must be a positive integer")
    if order >= len(s):
        raise InsufficientDataError(
            f"cannot difference {len(s)} observations {order} times"
        )
    return Series(s.name, s.start_year + order, np.diff(s.values, n=order))


def natural_log(s: Series) -> Series:
    """Elementwise natural logarithm; every value must be positive."""
    bad = np.nonzero(s.values <= 0.0)[0]
    if bad.size:
        year = s.start_year + int(bad[0])
        raise DomainError(
            f"log undefined for {s.name!r}: value {s.values[bad[0]]} in {year}"
        )
    return Series(s.name, s.start_year, np.log(s.values))


def cumulative_sum(s: Series, initial_value: float, start_year: int | None = None) -> Series:
    """Invert :func:`diff`: prepend ``initial_value`` and cumulate."""
    start = s.start_year - 1 if start_year is None else start_year
    levels = initial_value + np.concatenate(([0.0], np.cumsum(s.values)))
    return Series(s.name, start, levels)


@dataclass(frozen=True)
class Dataset:
    """Ordered (role, Series) pairs aligned on a single sample window."""

    variables: tuple[tuple[str, Series], ...]
    sample: tuple[int, int]

    def __post_init__(self):
        roles = [r for r, _ in self.variables]
        if len(set(roles)) != len(roles):
            raise ParameterError(f"duplicate roles in dataset: {roles}")
        lo, hi = self.sample
        for role, s in self.variables:
            if s.start_year != lo or s.end_year != hi:
                raise AlignmentError(
                    f"series for role {role!r} spans {s.start_year}-{s.end_year}, "
                    f"dataset sample is {lo}-{hi}"
                )

    @property
    def roles(self) -> tuple[str, ...]:
        return tuple(r for r, _ in self.variables)

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    @property
    def n_obs(self) -> int:
        return self.sample[1] - self.sample[0] + 1

    @property
    def start_year(self) -> int:
        return self.sample[0]

    @property
    def end_year(self) -> int:
        return self.sample[1]

    def series(self, role: str) -> Series:
        for r, s in self.variables:
            if r == role:
                return s
        raise ParameterError(f"role {role!r} not in dataset (have {self.roles})")

    def role_index(self, role: str) -> int:
        for i, (r, _) in enumerate(self.variables):
            if r == role:
                return i
        raise ParameterError(f"role {role!r} not in dataset (have {self.roles})")

    def matrix(self) -> NDArray[np.float64]:
        """Observations stacked column-wise, one column per role."""
        return np.column_stack([s.values for _, s in self.variables])

    def subset(self, roles: tuple[str, ...]) -> "Dataset":
        return Dataset(tuple((r, self.series(r)) for r in roles), self.sample)

    def differenced(self) -> "Dataset":
        pairs = tuple((r, diff(s, 1)) for r, s in self.variables)
        return Dataset(pairs, (self.sample[0] + 1, self.sample[1]))


def align(series_list: list[tuple[str, Series]]) -> Dataset:
    """Truncate the given role-tagged series to their common sample.

    Raises :class:`AlignmentError` if the year ranges do not overlap.
    """
    if len(series_list) < 2:
        raise ParameterError("alignment needs at least two series")
    lo = max(s.start_year for _, s in series_list)
    hi = min(s.end_year for _, s in series_list)
    if lo > hi:
        spans = {r: (s.start_year, s.end_year) for r, s in series_list}
        raise AlignmentError(f"series have no common sample: {spans}")
    pairs = tuple((r, s.window(lo, hi)) for r, s in series_list)
    return Dataset(pairs, (lo, hi))
