"""Integer partitions: canonical form, statistics, enumeration and rearrangements.

Partitions are stored as nonincreasing tuples of positive integers. The
empty partition indexes the constant polynomial 1.
"""

from __future__ import annotations

import math
import re
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "Partition",
    "PartitionStats",
    "partition_stats",
    "scale_partition",
    "enumerate_partitions",
    "distinct_permutations",
    "orbit_size",
    "graded_lex_key",
    "parse_partition",
]

MAX_WEIGHT = 10**6


class PartitionStats(NamedTuple):
    length: int
    weight: int
    lp: int
    lm: int
    multiplicity_form: tuple[tuple[int, int], ...]


class Partition(tuple):
    """A nonincreasing tuple of positive integers.

    Trailing zeroes are accepted on input and dropped, so ``Partition((2, 1, 0))``
    equals ``Partition((2, 1))``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(int(x) for x in parts)
        if any(x < 0 for x in parts):
            raise ValueError(f"partition parts must be nonnegative: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be nonincreasing: {parts}")
        parts = tuple(x for x in parts if x)
        if sum(parts) > MAX_WEIGHT:
            raise ValueError(f"partition weight exceeds {MAX_WEIGHT}")
        return tuple.__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts: tuple) -> "Partition":
        # caller guarantees canonical form
        return tuple.__new__(cls, parts)

    @classmethod
    def from_composition(cls, comp: Iterable[int]) -> "Partition":
        """Sort an exponent vector into the partition it is a rearrangement of."""
        return cls._trusted(tuple(sorted((x for x in comp if x), reverse=True)))

    @classmethod
    def power(cls, value: int, multiplicity: int) -> "Partition":
        """The partition ``(value^multiplicity)``."""
        if value < 0 or multiplicity < 0:
            raise ValueError("value and multiplicity must be nonnegative")
        if value == 0 or multiplicity == 0:
            return cls._trusted(())
        return cls((value,) * multiplicity)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def lp(self) -> int:
        """Leading (largest) part, 0 for the empty partition."""
        return self[0] if self else 0

    @property
    def lm(self) -> int:
        """Multiplicity of the leading part, 0 for the empty partition."""
        if not self:
            return 0
        top = self[0]
        k = 0
        for x in self:
            if x != top:
                break
            k += 1
        return k

    def multiplicity_form(self) -> tuple[tuple[int, int], ...]:
        out: list[list[int]] = []
        for x in self:
            if out and out[-1][0] == x:
                out[-1][1] += 1
            else:
                out.append([x, 1])
        return tuple((v, m) for v, m in out)

    def scale(self, c: int) -> "Partition":
        return scale_partition(self, c)

    def power_form(self) -> str:
        return ",".join(f"{v}^{m}" if m > 1 else str(v) for v, m in self.multiplicity_form())

    def comma_form(self) -> str:
        return ",".join(str(x) for x in self)

    def __str__(self) -> str:
        return self.power_form()

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


def partition_stats(lam: Partition) -> PartitionStats:
    return PartitionStats(lam.length, lam.weight, lam.lp, lam.lm, lam.multiplicity_form())


def scale_partition(lam: Partition, c: int) -> Partition:
    """Multiply every part by the positive integer ``c``."""
    if c < 1:
        raise ValueError(f"scale factor must be positive, got {c}")
    return Partition(x * c for x in lam)


def graded_lex_key(lam: Sequence[int]) -> tuple:
    """Sort key: weight ascending, then lexicographically descending parts."""
    return (sum(lam), tuple(-x for x in lam))


@lru_cache(maxsize=4096)
def _partitions(weight: int, max_length: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if weight == 0:
        return ((),)
    if max_length == 0:
        return ()
    out = []
    for first in range(min(weight, max_part), 0, -1):
        # remaining parts can absorb at most first*(max_length-1)
        if first * max_length < weight:
            break
        for rest in _partitions(weight - first, max_length - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(weight: int, max_length: int, min_lp: int = 0) -> list[Partition]:
    """All partitions of ``weight`` with at most ``max_length`` parts and leading
    part at least ``min_lp``, in graded-lex order (lexicographically descending).

    ``min_lp=0`` leaves the leading part unconstrained, which also admits the
    empty partition when ``weight == 0``.
    """
    if weight < 0 or max_length < 0:
        return []
    if weight > MAX_WEIGHT:
        raise ValueError(f"weight exceeds {MAX_WEIGHT}")
    return [
        Partition._trusted(p)
        for p in _partitions(weight, max_length, weight)
        if (p[0] if p else 0) >= min_lp
    ]


def orbit_size(lam: Sequence[int], n: int) -> int:
    """Number of distinct rearrangements of ``lam`` padded with zeroes to length ``n``."""
    if len(lam) > n:
        return 0
    denom = math.factorial(n - len(lam))
    run = 0
    for i, x in enumerate(lam):
        run = run + 1 if i and lam[i - 1] == x else 1
        denom *= run
    return math.factorial(n) // denom


def distinct_permutations(lam: Sequence[int], n: int) -> Iterator[tuple[int, ...]]:
    """Yield each distinct length-``n`` rearrangement of ``lam`` (zero padded) once.

    Output is in lexicographically increasing order. Raises ``ValueError`` when
    ``lam`` has more than ``n`` parts.
    """
    if len(lam) > n:
        raise ValueError(f"partition {tuple(lam)} has more than n={n} parts")
    a = sorted(list(lam) + [0] * (n - len(lam)))
    yield tuple(a)
    while True:
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])
        yield tuple(a)


_POWER_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_partition(text: str) -> Partition:
    """Parse ``"3,3,2,1"`` or ``"3^2,2,1"``; the empty string gives the empty partition.

    Parts may be given in any order and are sorted.
    """
    text = text.strip()
    if not text:
        return Partition()
    parts: list[int] = []
    for token in text.split(","):
        tok = token.strip()
        m = _POWER_TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad partition token {tok!r}")
        value = int(m.group(1))
        mult = int(m.group(2)) if m.group(2) is not None else 1
        parts.extend([value] * mult)
    return Partition(sorted(parts, reverse=True))
