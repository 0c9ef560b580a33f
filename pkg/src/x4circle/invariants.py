"""Exact invariant tuples of circle actions with three or more fixed points.

An action with n isolated fixed points is encoded by an ordered tuple of
rationals (b1/a1, ..., bn/an), one fraction per arc of finite isotropy in
the cyclic arrangement around the orbit 2-sphere (order 1 arcs contribute
integer entries).  Two tuples describe the same action when they differ by
a composition of three moves:

  * Rotation   -- cyclic shift of the entries,
  * Reversal   -- reversal of the order with a sign change on every entry,
  * Translation(k) -- adding the same integer k to every entry.

Everything here is exact rational arithmetic (`fractions.Fraction`); no
floats appear anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Union


Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into an exact rational."""
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    """Render a rational as "p/q" with q > 0 reduced, or "p" for integers."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class InvariantTuple:
    """Ordered tuple of rational invariants, length >= 2."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Union[Fraction, int, str]]):
        parsed = []
        for e in entries:
            if isinstance(e, str):
                parsed.append(parse_rational(e))
            else:
                parsed.append(Fraction(e))
        if len(parsed) < 2:
            raise ValueError("an invariant tuple needs at least two entries")
        object.__setattr__(self, "entries", tuple(parsed))

    def __setattr__(self, name, value):
        raise AttributeError("InvariantTuple is immutable")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, InvariantTuple) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        inner = ", ".join(format_rational(e) for e in self.entries)
        return f"InvariantTuple({inner})"

    def as_strings(self) -> list[str]:
        return [format_rational(e) for e in self.entries]


@dataclass(frozen=True)
class Rotation:
    """(t1, t2, ..., tn) -> (t2, ..., tn, t1)."""


@dataclass(frozen=True)
class Reversal:
    """(t1, ..., tn) -> (-tn, ..., -t1)."""


@dataclass(frozen=True)
class Translation:
    """(t1, ..., tn) -> (t1 + k, ..., tn + k) for an integer k."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, int):
            raise ValueError("translation amount must be an integer")


EquivalenceMove = Union[Rotation, Reversal, Translation]


def apply_move(t: InvariantTuple, move: EquivalenceMove) -> InvariantTuple:
    """Apply a single equivalence move, exactly."""
    e = t.entries
    if isinstance(move, Rotation):
        return InvariantTuple(e[1:] + e[:1])
    if isinstance(move, Reversal):
        return InvariantTuple(tuple(-x for x in reversed(e)))
    if isinstance(move, Translation):
        return InvariantTuple(tuple(x + move.k for x in e))
    raise TypeError(f"unknown move: {move!r}")


def _dihedral_images(t: InvariantTuple) -> list[tuple[Fraction, ...]]:
    """All rotations of t and of its reversal (at most 2n distinct tuples)."""
    e = t.entries
    n = len(e)
    rev = tuple(-x for x in reversed(e))
    out = []
    for base in (e, rev):
        for s in range(n):
            out.append(base[s:] + base[:s])
    return out


def canonicalize(t: InvariantTuple) -> InvariantTuple:
    """Canonical representative of the equivalence class of t.

    Among the <= 2n rotation/reversal images, each translated by the unique
    integer putting its first entry into [0, 1), the lexicographically least
    tuple is returned.  The map is idempotent and constant on classes.
    """
    best = None
    for image in _dihedral_images(t):
        k = -floor(image[0])
        shifted = tuple(x + k for x in image)
        if best is None or shifted < best:
            best = shifted
    return InvariantTuple(best)


def are_equivalent(a: InvariantTuple, b: InvariantTuple) -> bool:
    """Whether a and b differ by rotations, reversals, and integer translations."""
    if len(a) != len(b):
        return False
    return canonicalize(a) == canonicalize(b)


def is_realizable(t: InvariantTuple) -> bool:
    """Whether the tuple can occur for an action with isolated fixed points.

    Cyclically consecutive entries must be unequal: equal neighbours would
    merge the two fixed points joined by the corresponding arc.  For n = 3
    this is the same as all entries being pairwise unequal.
    """
    e = t.entries
    n = len(e)
    return all(e[i] != e[(i + 1) % n] for i in range(n))


def euler_sum(t: InvariantTuple) -> Fraction:
    """Generalized Euler number e = -(t1 + ... + tn), exact."""
    return -sum(t.entries, Fraction(0))


def cyclic_differences(t: InvariantTuple) -> tuple[Fraction, ...]:
    """Multiset of consecutive differences t_{i+1} - t_i (indices mod n).

    Returned sorted so that equal multisets compare equal.  The multiset is
    invariant under all three equivalence moves and always sums to zero.
    """
    e = t.entries
    n = len(e)
    diffs = [e[(i + 1) % n] - e[i] for i in range(n)]
    return tuple(sorted(diffs))
