"""Monotone orbifold Hurwitz numbers by direct enumeration.

A tuple (tau_0, tau_1, ..., tau_m) is counted when tau_0 has all cycles of
length q, tau_i = (a_i, b_i) with a_i < b_i are transpositions with
b_1 <= ... <= b_m, and the product has cycle type mu.  Products are applied
left to right (tau_0 first); the count does not depend on this convention.

Two enumerators are provided.  :func:`monotone_counts` is a dynamic program
over b-blocks: for b = 2, ..., d it applies any number of transpositions
(a, b), keeping a table {(product, connectivity, m): multiplicity}.  One
pass yields every (m, mu) for a given degree.  :func:`naive_count` walks the
tuples one by one and exists only to cross-check the dynamic program.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import SizeGuard
from .partitions import Partition

DEFAULT_MAX_SIZE = 7
DEFAULT_MAX_M = 8


@dataclass(frozen=True)
class Permutation:
    """One-line notation on {0, ..., d-1}: i maps to images[i]."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(tuple(range(d)))

    @classmethod
    def transposition(cls, d: int, a: int, b: int) -> "Permutation":
        im = list(range(d))
        im[a], im[b] = b, a
        return cls(tuple(im))

    @property
    def degree(self) -> int:
        return len(self.images)

    def then(self, other: "Permutation") -> "Permutation":
        """Left-to-right product: apply self, then other."""
        return Permutation(tuple(other.images[i] for i in self.images))

    __mul__ = then

    def cycle_type(self) -> Partition:
        return cycle_type(self.images)


def cycle_type(images) -> Partition:
    seen = [False] * len(images)
    lengths = []
    for i in range(len(images)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = images[j]
                n += 1
            lengths.append(n)
    return Partition(tuple(lengths))


def transposition_count(g: int, mu: Partition, q: int) -> int | None:
    """m = 2g - 2 + l(mu) + |mu|/q, or None when the count is forced to vanish."""
    mu = Partition(mu)
    if g < 0 or q < 1:
        raise ValueError("need g >= 0 and q >= 1")
    if mu.size % q:
        return None
    m = 2 * g - 2 + mu.length + mu.size // q
    return m if m >= 0 else None


def uniform_class(d: int, q: int):
    """All permutations of {0..d-1} whose cycles all have length q."""
    if d % q:
        return

    def rec(remaining: tuple, images: list):
        if not remaining:
            yield tuple(images)
            return
        head, rest = remaining[0], remaining[1:]
        yield from _cycles_from(head, rest, q - 1, [head], images, rec)

    yield from rec(tuple(range(d)), [None] * d)


def _cycles_from(head, pool, need, cycle, images, cont):
    if need == 0:
        for i, a in enumerate(cycle):
            images[a] = cycle[(i + 1) % len(cycle)]
        left = tuple(x for x in pool)
        yield from cont(left, images)
        return
    for k, x in enumerate(pool):
        yield from _cycles_from(head, pool[:k] + pool[k + 1 :], need - 1, cycle + [x], images, cont)


def _merge(blocks: tuple, a: int, b: int) -> tuple:
    la, lb = blocks[a], blocks[b]
    if la == lb:
        return blocks
    lo, hi = min(la, lb), max(la, lb)
    return tuple(lo if x == hi else x for x in blocks)


def _blocks_of(images) -> tuple:
    """Orbit labels (minimum element of the orbit) of a permutation."""
    lab = [None] * len(images)
    for i in range(len(images)):
        if lab[i] is None:
            j = i
            orbit = []
            while lab[j] is None:
                lab[j] = -1
                orbit.append(j)
                j = images[j]
            m = min(orbit)
            for j in orbit:
                lab[j] = m
    return tuple(lab)


def _apply(images: tuple, a: int, b: int) -> tuple:
    # left to right: new(i) = swap(old(i))
    return tuple(b if v == a else a if v == b else v for v in images)


@lru_cache(maxsize=None)
def monotone_counts(d: int, q: int, m_max: int, connected: bool) -> dict:
    """{(m, mu): number of tuples} for all m <= m_max and mu |- d."""
    states: dict = defaultdict(int)
    for tau0 in uniform_class(d, q):
        blocks = _blocks_of(tau0) if connected else None
        states[(tau0, blocks, 0)] += 1
    for b in range(1, d):
        total = defaultdict(int, states)
        frontier = states
        while frontier:
            nxt: dict = defaultdict(int)
            for (perm, blocks, used), n in frontier.items():
                if used == m_max:
                    continue
                for a in range(b):
                    nb = _merge(blocks, a, b) if connected else None
                    nxt[(_apply(perm, a, b), nb, used + 1)] += n
            for key, n in nxt.items():
                total[key] += n
            frontier = nxt
        states = total
    out: dict = defaultdict(int)
    for (perm, blocks, used), n in states.items():
        if connected and any(x != 0 for x in blocks):
            continue
        out[(used, cycle_type(perm))] += n
    return dict(out)


def _guard(mu: Partition, m: int, max_size: int, max_m: int):
    if mu.size > max_size:
        raise SizeGuard(f"|mu| = {mu.size} exceeds the size guard {max_size}")
    if m > max_m:
        raise SizeGuard(f"m = {m} exceeds the transposition guard {max_m}")


def _count(g, mu, q, connected, max_size, max_m) -> Fraction:
    mu = Partition(mu)
    m = transposition_count(g, mu, q)
    if m is None:
        return Fraction(0)
    _guard(mu, m, max_size, max_m)
    if mu.size == 0:
        # the empty tuple on zero letters; only m = 0 is possible
        return Fraction(int(m == 0 and not connected))
    n = monotone_counts(mu.size, q, m, connected).get((m, mu), 0)
    return Fraction(mu.aut * n, factorial(mu.size))


def count_disconnected(g: int, mu, q: int, *, max_size: int = DEFAULT_MAX_SIZE, max_m: int = DEFAULT_MAX_M) -> Fraction:
    """h^bullet_{g,mu}: |Aut mu| / |mu|! times the number of monotone tuples."""
    return _count(g, mu, q, False, max_size, max_m)


def count_connected(g: int, mu, q: int, *, max_size: int = DEFAULT_MAX_SIZE, max_m: int = DEFAULT_MAX_M) -> Fraction:
    """h^circ_{g,mu}: as :func:`count_disconnected`, transitive tuples only."""
    return _count(g, mu, q, True, max_size, max_m)


def naive_count(g: int, mu, q: int, connected: bool = False) -> Fraction:
    """Tuple-by-tuple enumeration, lexicographic in (b, a).  Small cases only."""
    mu = Partition(mu)
    m = transposition_count(g, mu, q)
    if m is None:
        return Fraction(0)
    d = mu.size
    trans = [(a, b) for b in range(d) for a in range(b)]
    hits = 0

    def walk(perm, blocks, start, left):
        nonlocal hits
        if left == 0:
            if cycle_type(perm) == mu and (not connected or len(set(blocks)) == 1):
                hits += 1
            return
        for k in range(start, len(trans)):
            a, b = trans[k]
            # the next transposition may reuse the same b with any a
            nstart = next(i for i, (_, bb) in enumerate(trans) if bb == b)
            walk(_apply(perm, a, b), _merge(blocks, a, b) if connected else blocks, nstart, left - 1)

    for tau0 in uniform_class(d, q):
        walk(tau0, _blocks_of(tau0), 0, m)
    return Fraction(mu.aut * hits, factorial(d))
