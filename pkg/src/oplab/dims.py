"""Exact integer dimension sequences with indexing metadata."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

INDEX_KINDS = ("arity", "weight", "degree")


@dataclass(frozen=True)
class DimSeries:
    """A truncated sequence of nonnegative integer dimensions.

    ``values[i]`` is the dimension at index ``i``, where the index counts
    arity, weight, or degree according to ``index_kind``.  ``exact`` is False
    when the counts had to be weight-capped (a unary generator makes
    arity-indexed counts infinite without a cap).
    """

    values: tuple[int, ...]
    index_kind: str
    exact: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.index_kind not in INDEX_KINDS:
            raise ValueError(f"unknown index kind {self.index_kind!r}")
        if any(v < 0 for v in self.values):
            raise ValueError("dimensions must be nonnegative")

    @property
    def truncation(self) -> int:
        """Largest index that was computed."""
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def partial_sums(self) -> tuple[int, ...]:
        """Running sums S(n) = values[0] + ... + values[n]."""
        out = []
        acc = 0
        for v in self.values:
            acc += v
            out.append(acc)
        return tuple(out)


def as_dim_values(dims: "DimSeries | Sequence[int]") -> tuple[int, ...]:
    """Coerce either a DimSeries or a plain sequence to a value tuple."""
    if isinstance(dims, DimSeries):
        return dims.values
    return tuple(int(v) for v in dims)
