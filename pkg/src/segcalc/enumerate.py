"""Exhaustive enumeration of single-line multisegments and words."""

from __future__ import annotations

import itertools
from typing import Iterator

from .core import CuspidalLine, Multisegment, Segment, support
from .genext import Word, word


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` into non-increasing parts."""
    max_part = n if max_part is None else max_part
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def multisegments(line: CuspidalLine, total_length: int, starts=None) -> Iterator[Multisegment]:
    """All multisegments on ``line`` with the given total length.

    ``starts`` bounds the start exponents for infinite lines (default
    ``range(total_length)``); on finite lines every residue is used.
    """
    if starts is None:
        starts = range(line.order) if line.finite else range(total_length)
    segs = [(a, l) for l in range(1, total_length + 1) for a in starts]

    def rec(idx: int, remaining: int, acc: list) -> Iterator[Multisegment]:
        if remaining == 0:
            yield Multisegment(Segment(line, a, l) for a, l in acc)
            return
        for j in range(idx, len(segs)):
            a, l = segs[j]
            if l <= remaining:
                acc.append((a, l))
                yield from rec(j, remaining - l, acc)
                acc.pop()

    yield from rec(0, total_length, [])


def words(line: CuspidalLine, length: int) -> Iterator[Word]:
    for t in itertools.product(range(line.order), repeat=length):
        yield word(line, t)


def by_support(items) -> dict:
    groups: dict = {}
    for m in items:
        key = tuple((k, tuple(v.items())) for k, v in support(m).items())
        groups.setdefault(key, []).append(m)
    return groups
