"""Divisor-indexed lower-triangular matrices over exact rationals.

The degree-d coupled systems of the series module become N x N
matrices supported on the divisibility relation j | i.  The star of
the module is the transformation matrix sending relative BPS counts
to sign-scaled local BPS counts; it is built two independent ways,
from a closed-form entry formula and as a product of simpler factors,
and the two constructions must agree entrywise.  Every entry of the
transformation matrix and of its inverse is an integer, which the
congruence module re-proves arithmetically.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .arith import binomial, divisors, mobius, omega, squarefree_cofactor_divisors
from .series import degree_sign_factor, exact, relative_multiple_cover

__all__ = [
    "MatrixKind",
    "TransformMethod",
    "DimensionError",
    "SingularMatrixError",
    "DivisorMatrix",
    "identity",
    "build_matrix",
    "transform_entry",
    "build_transform_matrix",
    "matmul",
    "determinant",
    "triangular_inverse",
    "apply",
    "to_tsv",
]


class MatrixKind(Enum):
    RELATIVE_COVER = "relative-cover"  # cover(i/j, j*w) on j | i
    DEGREE_SCALING = "degree-scaling"  # diagonal (-1)**(i*w+1) * i*w
    LOCAL_COVER = "local-cover"  # (i/j)**-3 on j | i
    CUBE_SCALING = "cube-scaling"  # diagonal i**-3
    DIVISOR_ONES = "divisor-ones"  # 1 on j | i
    MOBIUS = "mobius"  # mobius(i/j) on j | i
    TRANSFORM = "transform"  # relative-to-local BPS transformation
    CUSTOM = "custom"


class TransformMethod(Enum):
    CLOSED_FORM = "closed-form"
    PRODUCT = "product"


#: kinds whose entries depend on the tangency weight w
_NEEDS_W = frozenset(
    {MatrixKind.RELATIVE_COVER, MatrixKind.DEGREE_SCALING, MatrixKind.TRANSFORM}
)

#: kinds whose support must lie on the divisibility relation j | i
_DIVISOR_SUPPORTED = frozenset(
    {
        MatrixKind.RELATIVE_COVER,
        MatrixKind.LOCAL_COVER,
        MatrixKind.DIVISOR_ONES,
        MatrixKind.MOBIUS,
        MatrixKind.TRANSFORM,
    }
)


class DimensionError(ValueError):
    """Operand sizes do not match."""


class SingularMatrixError(ValueError):
    """A zero diagonal entry makes the triangular matrix non-invertible."""


class DivisorMatrix:
    """Immutable N x N lower-triangular matrix with sparse exact entries.

    Entries are keyed by 1-based (row, column) pairs; absent pairs are
    zero.  Stored entries form the structural support and may hold the
    value zero.  Equality is entrywise with absent treated as zero;
    ``kind`` and ``w`` are construction metadata and do not take part.
    """

    __slots__ = ("size", "kind", "w", "_entries", "_rows")

    def __init__(
        self,
        size: int,
        entries: Mapping[tuple[int, int], int | str | Fraction],
        kind: MatrixKind = MatrixKind.CUSTOM,
        w: int | None = None,
    ) -> None:
        if size < 1:
            raise ValueError("size must be a positive integer")
        stored: dict[tuple[int, int], Fraction] = {}
        for (i, j), value in entries.items():
            if not (1 <= j <= i <= size):
                raise ValueError(f"entry ({i}, {j}) outside the lower triangle")
            if kind in _DIVISOR_SUPPORTED and i % j:
                raise ValueError(f"entry ({i}, {j}) off the divisibility support")
            stored[(i, j)] = exact(value)
        self.size = size
        self.kind = kind
        self.w = w
        self._entries = stored
        rows: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, j), value in stored.items():
            rows.setdefault(i, []).append((j, value))
        for row in rows.values():
            row.sort()
        self._rows = rows

    def entry(self, i: int, j: int) -> Fraction:
        """Value at 1-based (i, j); zero when not stored."""
        if not (1 <= i <= self.size and 1 <= j <= self.size):
            raise IndexError(f"index ({i}, {j}) outside a {self.size}x{self.size} matrix")
        return self._entries.get((i, j), Fraction(0))

    def row(self, i: int) -> list[tuple[int, Fraction]]:
        """Stored (column, value) pairs of row i, ascending by column."""
        return list(self._rows.get(i, ()))

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        """Stored entries sorted by (row, column)."""
        return iter(sorted(self._entries.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DivisorMatrix):
            return NotImplemented
        if self.size != other.size:
            return False
        keys = self._entries.keys() | other._entries.keys()
        zero = Fraction(0)
        return all(
            self._entries.get(k, zero) == other._entries.get(k, zero) for k in keys
        )

    def __repr__(self) -> str:
        return (
            f"DivisorMatrix(size={self.size}, kind={self.kind.value!r}, "
            f"w={self.w}, stored={len(self._entries)})"
        )


def identity(size: int) -> DivisorMatrix:
    """The size x size identity matrix."""
    return DivisorMatrix(size, {(i, i): Fraction(1) for i in range(1, size + 1)})


def build_matrix(kind: MatrixKind, size: int, w: int | None = None) -> DivisorMatrix:
    """Construct one of the named factor matrices.

    ``w`` is required (and must be >= 1) for the cover and scaling
    kinds that depend on the tangency weight; it is ignored otherwise.
    The transformation matrix itself is built by
    :func:`build_transform_matrix`.
    """
    if size < 1:
        raise ValueError("size must be a positive integer")
    needs_w = kind in _NEEDS_W
    if needs_w:
        if w is None or w < 1:
            raise ValueError(f"kind {kind.value} requires w >= 1")
    entries: dict[tuple[int, int], Fraction] = {}
    if kind is MatrixKind.RELATIVE_COVER:
        for i in range(1, size + 1):
            for j in divisors(i):
                entries[(i, j)] = relative_multiple_cover(i // j, j * w)
    elif kind is MatrixKind.DEGREE_SCALING:
        for i in range(1, size + 1):
            entries[(i, i)] = Fraction(degree_sign_factor(i, w))
    elif kind is MatrixKind.LOCAL_COVER:
        for i in range(1, size + 1):
            for j in divisors(i):
                entries[(i, j)] = Fraction(1, (i // j) ** 3)
    elif kind is MatrixKind.CUBE_SCALING:
        for i in range(1, size + 1):
            entries[(i, i)] = Fraction(1, i**3)
    elif kind is MatrixKind.DIVISOR_ONES:
        for i in range(1, size + 1):
            for j in divisors(i):
                entries[(i, j)] = Fraction(1)
    elif kind is MatrixKind.MOBIUS:
        for i in range(1, size + 1):
            for j in divisors(i):
                mu = mobius(i // j)
                if mu:
                    entries[(i, j)] = Fraction(mu)
    else:
        raise ValueError(f"build_matrix does not construct kind {kind.value}")
    return DivisorMatrix(size, entries, kind, w if needs_w else None)


def transform_entry(s: int, t: int, w: int) -> Fraction:
    """Closed-form (s, t) entry of the BPS transformation matrix.

    For t | s the value is

        (-1)**(s*w) / (s/t)**2 * sum over k with k | s/t, (s/t)/k
        square-free, of (-1)**omega(s/(k*t)) * (-1)**(k*t*w)
        * binomial(k*(t*w - 1) - 1, k - 1),

    and 0 when t does not divide s.  The diagonal is always 1.  The
    value depends on (s, t, w) only through s/t and t*w, which is what
    makes the loop-quiver reindexing in the dtlink module well posed.
    """
    if s < 1 or t < 1 or w < 1:
        raise ValueError("s, t and w must be positive")
    if s % t:
        return Fraction(0)
    ratio = s // t
    total = 0
    for k in squarefree_cofactor_divisors(ratio):
        term = binomial(k * (t * w - 1) - 1, k - 1)
        if omega(s // (k * t)) % 2:
            term = -term
        if (k * t * w) % 2:
            term = -term
        total += term
    if (s * w) % 2:
        total = -total
    return Fraction(total, ratio * ratio)


def build_transform_matrix(method: TransformMethod, size: int, w: int) -> DivisorMatrix:
    """Build the transformation matrix by the chosen construction.

    CLOSED_FORM evaluates :func:`transform_entry` on the divisor
    support.  PRODUCT multiplies the factor matrices
    D * M * D⁻¹ * R with D the product of the degree and cube
    scalings, M the Möbius matrix and R the relative cover matrix.
    The two constructions agree entrywise.
    """
    if size < 1 or w < 1:
        raise ValueError("size and w must be positive")
    if method is TransformMethod.CLOSED_FORM:
        entries = {
            (i, j): transform_entry(i, j, w)
            for i in range(1, size + 1)
            for j in divisors(i)
        }
        return DivisorMatrix(size, entries, MatrixKind.TRANSFORM, w)
    if method is TransformMethod.PRODUCT:
        scaling = matmul(
            build_matrix(MatrixKind.DEGREE_SCALING, size, w),
            build_matrix(MatrixKind.CUBE_SCALING, size),
        )
        product = matmul(
            matmul(
                matmul(scaling, build_matrix(MatrixKind.MOBIUS, size)),
                triangular_inverse(scaling),
            ),
            build_matrix(MatrixKind.RELATIVE_COVER, size, w),
        )
        return DivisorMatrix(size, dict(product.items()), MatrixKind.TRANSFORM, w)
    raise ValueError(f"unknown method {method!r}")


def matmul(a: DivisorMatrix, b: DivisorMatrix) -> DivisorMatrix:
    """Exact matrix product of two equally sized triangular matrices."""
    if a.size != b.size:
        raise DimensionError(f"size mismatch: {a.size} vs {b.size}")
    acc: dict[tuple[int, int], Fraction] = {}
    for i in range(1, a.size + 1):
        for k, va in a.row(i):
            for j, vb in b.row(k):
                key = (i, j)
                acc[key] = acc.get(key, Fraction(0)) + va * vb
    return DivisorMatrix(a.size, acc)


def determinant(m: DivisorMatrix) -> Fraction:
    """Product of the diagonal entries (every stored kind is triangular)."""
    out = Fraction(1)
    for i in range(1, m.size + 1):
        out *= m.entry(i, i)
    return out


def triangular_inverse(m: DivisorMatrix) -> DivisorMatrix:
    """Exact inverse of a lower-triangular matrix by forward substitution.

    Requires every diagonal entry to be nonzero; the result satisfies
    m * result == identity exactly.
    """
    diag = []
    for i in range(1, m.size + 1):
        d = m.entry(i, i)
        if d == 0:
            raise SingularMatrixError(f"zero diagonal entry at ({i}, {i})")
        diag.append(d)
    entries: dict[tuple[int, int], Fraction] = {}
    for j in range(1, m.size + 1):
        column: dict[int, Fraction] = {j: 1 / diag[j - 1]}
        entries[(j, j)] = column[j]
        for i in range(j + 1, m.size + 1):
            s = Fraction(0)
            for k, v in m.row(i):
                if j <= k < i and k in column:
                    s += v * column[k]
            if s:
                value = -s / diag[i - 1]
                column[i] = value
                entries[(i, j)] = value
    return DivisorMatrix(m.size, entries)


def apply(m: DivisorMatrix, vector: Iterable[int | str | Fraction]) -> list[Fraction]:
    """Exact matrix-vector product m * vector."""
    vec = [exact(v) for v in vector]
    if len(vec) != m.size:
        raise DimensionError(f"vector length {len(vec)} != matrix size {m.size}")
    out = [Fraction(0)] * m.size
    for i in range(1, m.size + 1):
        acc = Fraction(0)
        for j, v in m.row(i):
            acc += v * vec[j - 1]
        out[i - 1] = acc
    return out


def to_tsv(m: DivisorMatrix) -> str:
    """Serialize the stored entries as TSV.

    Header ``i\\tj\\tvalue``, rows sorted by (i, j), rationals in the
    canonical p/q form with the denominator omitted when it is 1.
    """
    lines = ["i\tj\tvalue"]
    for (i, j), value in m.items():
        lines.append(f"{i}\t{j}\t{value}")
    return "\n".join(lines) + "\n"
