"""Loop-quiver reindexing of the transformation matrix entries.

The (s, t) entry of the transformation matrix depends only on the
ratio n = s/t and the product m + 1 = t*w, so it can be read as a
Donaldson-Thomas-type invariant of the quiver with one vertex and m
loops, indexed by the codimension n.  This module tabulates those
values, cross-checks that every realization (s, t, w) of the same
(n, m) yields the same integer, and flags (but does not reject)
negative values, which are not expected to occur.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import divisors
from .matrices import transform_entry

__all__ = ["DTValue", "DTInconsistency", "DTTable", "dt_value", "dt_table", "table_to_tsv"]


@dataclass(frozen=True)
class DTValue:
    """DT-type invariant of the m-loop quiver at codimension n."""

    n: int
    m: int
    value: int


@dataclass(frozen=True)
class DTInconsistency:
    """Realizations of one (n, m) cell that disagree; should never occur."""

    n: int
    m: int
    realizations: tuple[tuple[tuple[int, int, int], Fraction], ...]


@dataclass
class DTTable:
    """Tabulated DT values with well-definedness and sign diagnostics."""

    n_max: int
    m_max: int
    values: list[DTValue]
    inconsistencies: list[DTInconsistency]
    negatives: list[DTValue]

    @property
    def consistent(self) -> bool:
        return not self.inconsistencies


def dt_value(s: int, t: int, w: int) -> DTValue:
    """Read one transformation entry as a loop-quiver DT invariant.

    Requires t | s and t*w >= 2; returns the invariant at codimension
    n = s/t with m = t*w - 1 loops.  The entry is an integer whenever
    t*w >= 2, so a non-integer value indicates a bug and raises.
    """
    if s < 1 or t < 1 or w < 1:
        raise ValueError("s, t and w must be positive")
    if s % t:
        raise ValueError(f"{t} does not divide {s}")
    if t * w < 2:
        raise ValueError("t*w must be at least 2")
    entry = transform_entry(s, t, w)
    if entry.denominator != 1:
        raise ArithmeticError(
            f"entry ({s}, {t}) at w={w} is {entry}, not an integer"
        )
    return DTValue(s // t, t * w - 1, int(entry))


def _realizations(n: int, m: int) -> list[tuple[int, int, int]]:
    """All (s, t, w) with s/t = n and t*w = m + 1."""
    return [(n * t, t, (m + 1) // t) for t in divisors(m + 1)]


def dt_table(n_max: int, m_max: int) -> DTTable:
    """Tabulate DT values for 1 <= n <= n_max, 1 <= m <= m_max.

    Every realization of a cell is evaluated; disagreement between
    realizations is recorded as an inconsistency (never raised), and
    the cell keeps the value of the smallest-t realization.  Negative
    values are collected separately for reporting.
    """
    if n_max < 1 or m_max < 1:
        raise ValueError("n_max and m_max must be positive")
    values = []
    inconsistencies = []
    negatives = []
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            seen = [
                ((s, t, w), transform_entry(s, t, w))
                for s, t, w in _realizations(n, m)
            ]
            reference = seen[0][1]
            if any(entry != reference for _, entry in seen):
                inconsistencies.append(DTInconsistency(n, m, tuple(seen)))
            if reference.denominator != 1:
                raise ArithmeticError(
                    f"cell (n={n}, m={m}) is {reference}, not an integer"
                )
            cell = DTValue(n, m, int(reference))
            values.append(cell)
            if cell.value < 0:
                negatives.append(cell)
    return DTTable(n_max, m_max, values, inconsistencies, negatives)


def table_to_tsv(table: DTTable) -> str:
    """Serialize a DT table as TSV with header ``n\\tm\\tvalue``."""
    lines = ["n\tm\tvalue"]
    for cell in table.values:
        lines.append(f"{cell.n}\t{cell.m}\t{cell.value}")
    return "\n".join(lines) + "\n"
