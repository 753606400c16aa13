"""Integer partitions and Young diagrams."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import factorial, prod


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive parts.  Any iterable is sorted on construction."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if parts and parts[-1] <= 0:
            raise ValueError(f"parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        return cls(tuple(int(s) for s in text.replace(";", ",").split(",") if s.strip()))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return ",".join(map(str, self.parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @cached_property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    @property
    def aut(self) -> int:
        """|Aut(mu)| = product of factorials of part multiplicities."""
        return prod(factorial(m) for m in self.multiplicities.values())

    @property
    def z(self) -> int:
        """Centralizer order z_mu = prod k^{m_k} m_k!."""
        return prod(k**m * factorial(m) for k, m in self.multiplicities.items())

    def transpose(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def boxes(self):
        """Boxes (row, col), 0-based."""
        for r, p in enumerate(self.parts):
            for c in range(p):
                yield r, c

    def contents(self) -> list[int]:
        """Content col - row of every box; a one-row diagram has contents 0, 1, ..."""
        return [c - r for r, c in self.boxes()]


def partitions(n: int, max_part: int | None = None):
    """All partitions of n, in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition(())
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield Partition((first,) + rest.parts)


def partitions_upto(w: int):
    """All partitions of size 0..w, by size then reverse lexicographic."""
    for n in range(w + 1):
        yield from partitions(n)
