"""Transforms between Gromov-Witten invariants and BPS state counts.

A sequence of exact rationals indexed by degree d = 1..N is tagged
with one of four kinds.  The local pair is coupled by the cube cover
sum I(d) = sum_{k|d} n(d/k) / k**3, the relative pair by the tangency
cover sum N(d) = sum_{k|d} cover(k, (d/k)*w) * n(d/k), and the two GW
kinds by the entrywise degree-sign scaling (-1)**(d*w+1) * d*w.  All
three systems are lower triangular with unit diagonal, so each has an
exact inverse on finite truncations and composing them transports
local BPS counts to relative BPS counts and back.

Sequences index a fixed primitive curve class; non-primitive classes
are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .arith import binomial, divisors

__all__ = [
    "SequenceKind",
    "BridgeDirection",
    "KindMismatchError",
    "InvariantSequence",
    "local_bps_to_gw",
    "local_gw_to_bps",
    "relative_multiple_cover",
    "relative_bps_to_gw",
    "relative_gw_to_bps",
    "degree_sign_factor",
    "bridge_gw",
    "pipeline_local_bps_to_relative_bps",
    "pipeline_relative_bps_to_local_bps",
]


class SequenceKind(Enum):
    LOCAL_GW = "local_gw"
    LOCAL_BPS = "local_bps"
    RELATIVE_GW = "relative_gw"
    RELATIVE_BPS = "relative_bps"


class BridgeDirection(Enum):
    LOCAL_GW_TO_RELATIVE_GW = "local_gw_to_relative_gw"
    RELATIVE_GW_TO_LOCAL_GW = "relative_gw_to_local_gw"


class KindMismatchError(ValueError):
    """A transform received a sequence of the wrong kind."""


def exact(value: int | str | Fraction) -> Fraction:
    """Coerce to Fraction, rejecting floats (rounding would poison everything)."""
    if isinstance(value, float):
        raise TypeError("floating point input is not exact; pass int, str or Fraction")
    return Fraction(value)


@dataclass(frozen=True)
class InvariantSequence:
    """Finite sequence of exact rationals indexed by degree d = 1..N.

    ``w`` is the intersection number of the primitive curve class with
    the anticanonical curve; entry d of a relative-kind sequence holds
    the degree-d data at maximal tangency d*w.
    """

    kind: SequenceKind
    w: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.kind, SequenceKind):
            raise TypeError("kind must be a SequenceKind")
        if not isinstance(self.w, int) or isinstance(self.w, bool) or self.w < 1:
            raise ValueError("w must be a positive integer")
        object.__setattr__(self, "values", tuple(exact(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)


def _require_kind(seq: InvariantSequence, kind: SequenceKind) -> None:
    if seq.kind is not kind:
        raise KindMismatchError(f"expected a {kind.value} sequence, got {seq.kind.value}")


def local_bps_to_gw(bps: InvariantSequence) -> InvariantSequence:
    """Assemble local GW invariants from local BPS counts.

    I(d) = sum over k | d of n(d/k) / k**3.
    """
    _require_kind(bps, SequenceKind.LOCAL_BPS)
    values = tuple(
        sum((bps.values[d // k - 1] / k**3 for k in divisors(d)), Fraction(0))
        for d in range(1, len(bps) + 1)
    )
    return InvariantSequence(SequenceKind.LOCAL_GW, bps.w, values)


def local_gw_to_bps(gw: InvariantSequence) -> InvariantSequence:
    """Extract local BPS counts: the unique inverse of local_bps_to_gw.

    Solved by forward substitution in ascending d; the system is lower
    triangular with unit diagonal.
    """
    _require_kind(gw, SequenceKind.LOCAL_GW)
    out: list[Fraction] = []
    for d in range(1, len(gw) + 1):
        covered = sum(
            (out[d // k - 1] / k**3 for k in divisors(d) if k > 1), Fraction(0)
        )
        out.append(gw.values[d - 1] - covered)
    return InvariantSequence(SequenceKind.LOCAL_BPS, gw.w, tuple(out))


def relative_multiple_cover(k: int, w: int) -> Fraction:
    """Contribution of k-fold covers of a maximal-tangency-w curve.

    Equals binomial(k*(w-1)-1, k-1) / k**2, which is 1 at k = 1 for
    every w (the generalized binomial makes w = 1 well defined).
    """
    if k < 1 or w < 1:
        raise ValueError("k and w must be positive")
    return Fraction(binomial(k * (w - 1) - 1, k - 1), k * k)


def relative_bps_to_gw(bps: InvariantSequence) -> InvariantSequence:
    """Assemble relative GW invariants from relative BPS counts.

    N(d) = sum over k | d of cover(k, (d/k)*w) * n(d/k), where the
    covered curve sits in degree d/k at tangency (d/k)*w.
    """
    _require_kind(bps, SequenceKind.RELATIVE_BPS)
    values = tuple(
        sum(
            (
                relative_multiple_cover(k, (d // k) * bps.w) * bps.values[d // k - 1]
                for k in divisors(d)
            ),
            Fraction(0),
        )
        for d in range(1, len(bps) + 1)
    )
    return InvariantSequence(SequenceKind.RELATIVE_GW, bps.w, values)


def relative_gw_to_bps(gw: InvariantSequence) -> InvariantSequence:
    """Extract relative BPS counts: the unique inverse of relative_bps_to_gw."""
    _require_kind(gw, SequenceKind.RELATIVE_GW)
    out: list[Fraction] = []
    for d in range(1, len(gw) + 1):
        covered = sum(
            (
                relative_multiple_cover(k, (d // k) * gw.w) * out[d // k - 1]
                for k in divisors(d)
                if k > 1
            ),
            Fraction(0),
        )
        out.append(gw.values[d - 1] - covered)
    return InvariantSequence(SequenceKind.RELATIVE_BPS, gw.w, tuple(out))


def degree_sign_factor(d: int, w: int) -> int:
    """Entrywise scaling between local and relative GW: (-1)**(d*w+1) * d*w."""
    if d < 1 or w < 1:
        raise ValueError("d and w must be positive")
    dw = d * w
    return dw if dw % 2 else -dw


def bridge_gw(seq: InvariantSequence, direction: BridgeDirection) -> InvariantSequence:
    """Rescale between local and relative GW invariants, entry by entry.

    Forward: N(d) = (-1)**(d*w+1) * d*w * I(d); the reverse direction
    divides by the same nonzero factor.
    """
    if direction is BridgeDirection.LOCAL_GW_TO_RELATIVE_GW:
        _require_kind(seq, SequenceKind.LOCAL_GW)
        values = tuple(
            degree_sign_factor(d, seq.w) * v for d, v in enumerate(seq.values, 1)
        )
        return InvariantSequence(SequenceKind.RELATIVE_GW, seq.w, values)
    if direction is BridgeDirection.RELATIVE_GW_TO_LOCAL_GW:
        _require_kind(seq, SequenceKind.RELATIVE_GW)
        values = tuple(
            v / degree_sign_factor(d, seq.w) for d, v in enumerate(seq.values, 1)
        )
        return InvariantSequence(SequenceKind.LOCAL_GW, seq.w, values)
    raise ValueError(f"unknown bridge direction {direction!r}")


def pipeline_local_bps_to_relative_bps(bps: InvariantSequence) -> InvariantSequence:
    """Transport local BPS counts to relative BPS counts.

    Composition of the three unit-triangular maps: local BPS -> local
    GW -> relative GW -> relative BPS.
    """
    gw = local_bps_to_gw(bps)
    rel = bridge_gw(gw, BridgeDirection.LOCAL_GW_TO_RELATIVE_GW)
    return relative_gw_to_bps(rel)


def pipeline_relative_bps_to_local_bps(bps: InvariantSequence) -> InvariantSequence:
    """Transport relative BPS counts back to local BPS counts (exact inverse)."""
    gw = relative_bps_to_gw(bps)
    loc = bridge_gw(gw, BridgeDirection.RELATIVE_GW_TO_LOCAL_GW)
    return local_gw_to_bps(loc)
