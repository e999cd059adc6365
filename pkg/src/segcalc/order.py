"""Degeneration order on multisegments via elementary operations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import (
    Context,
    Multisegment,
    SegcalcError,
    Segment,
    is_aperiodic,
    support,
)


class DifferentLines(SegcalcError):
    pass


class PreconditionViolated(SegcalcError):
    pass


@dataclass(frozen=True)
class ElemMove:
    source: Multisegment
    first: Segment
    second: Segment
    result: Multisegment


def _link_shifts(d1: Segment, d2: Segment) -> Iterator[int]:
    """Starts ``a'`` of representatives of ``d2`` with ``a+1 <= a' <= b+1 <= b'``."""
    a, b = d1.a, d1.b
    o = d1.line.order
    if o is None:
        if a + 1 <= d2.a <= b + 1 <= d2.b:
            yield d2.a
        return
    # representatives d2.a + k*o landing in [a+1, b+1]
    start = d2.a + ((a + 1 - d2.a) // o) * o
    if start < a + 1:
        start += o
    for a2 in range(start, b + 2, o):
        if b + 1 <= a2 + d2.length - 1:
            yield a2


def is_linked(d1: Segment, d2: Segment) -> bool:
    if d1.line.id != d2.line.id:
        raise DifferentLines(f"{d1} and {d2} lie on different lines")
    return any(True for _ in _link_shifts(d1, d2)) or any(True for _ in _link_shifts(d2, d1))


def _merge(d1: Segment, a2: int, len2: int) -> tuple[Segment, Optional[Segment]]:
    """``[a,b] + [a2,b2]  ->  [a,b2] + [a2,b]`` with ``[a2,b]`` dropped if empty."""
    b2 = a2 + len2 - 1
    top = Segment.from_ends(d1.line, d1.a, b2)
    rest = Segment.from_ends(d1.line, a2, d1.b) if a2 <= d1.b else None
    return top, rest


def iter_moves(m: Multisegment) -> Iterator[ElemMove]:
    segs = m.segments
    seen_pairs = set()
    for i, d1 in enumerate(segs):
        for j, d2 in enumerate(segs):
            if i == j or d1.line.id != d2.line.id:
                continue
            pair = (d1.key(), d2.key())
            if pair in seen_pairs:
                continue
            seen_pairs.add(pair)
            for a2 in _link_shifts(d1, d2):
                top, rest = _merge(d1, a2, d2.length)
                yield ElemMove(m, d1, d2, (m - d1 - d2) + Multisegment([top, rest]))


def elementary_moves(m: Multisegment) -> set[Multisegment]:
    return {mv.result for mv in iter_moves(m)}


def is_unlinked(m: Multisegment) -> bool:
    return next(iter_moves(m), None) is None


def down_set(m: Multisegment, cache: Optional[dict] = None) -> frozenset[Multisegment]:
    """All multisegments reachable from ``m`` by elementary moves, ``m`` included.

    ``cache`` maps already explored sources to their down-sets and may be
    shared by the caller across queries.
    """
    if cache is not None and m in cache:
        return cache[m]
    seen = {m}
    queue = deque([m])
    while queue:
        cur = queue.popleft()
        if cache is not None and cur in cache and cur is not m:
            seen |= cache[cur]
            continue
        for nxt in elementary_moves(cur):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    result = frozenset(seen)
    if cache is not None:
        cache[m] = result
    return result


def leq(n: Multisegment, m: Multisegment, cache: Optional[dict] = None) -> bool:
    """``n`` is obtained from ``m`` by a (possibly empty) chain of elementary moves."""
    if n == m:
        return True
    if support(n) != support(m) or len(n) > len(m):
        return False
    return n in down_set(m, cache)


def maximal_elements(items, cache: Optional[dict] = None) -> set[Multisegment]:
    items = set(items)
    out = set()
    for x in items:
        if not any(y != x and leq(x, y, cache) for y in items):
            out.add(x)
    return out


def aperiodic_below(m: Multisegment, ctx: Optional[Context] = None, *, maximal_only: bool = True,
                    cache: Optional[dict] = None) -> set[Multisegment]:
    """Aperiodic multisegments below ``m``; only the maximal ones by default."""
    if is_aperiodic(m):
        if maximal_only:
            return {m}
    cache = {} if cache is None else cache
    below = {x for x in down_set(m, cache) if is_aperiodic(x)}
    return maximal_elements(below, cache) if maximal_only else below


def periodic_pair_moves(m: Multisegment) -> Iterator[Multisegment]:
    """Results of ``[a,b] + [a+1,b+1] -> [a,b+1] + [a+1,b]`` on ``m``."""
    done = set()
    for seg in m:
        if seg.key() in done:
            continue
        done.add(seg.key())
        nxt = Segment(seg.line, seg.a + 1, seg.length)
        if nxt not in m or (nxt == seg and m.count(seg) < 2):
            continue
        top = Segment(seg.line, seg.a, seg.length + 1)
        inner = Segment(seg.line, seg.a + 1, seg.length - 1) if seg.length > 1 else None
        yield (m - seg - nxt) + Multisegment([top, inner])


def elemopap_step(m1: Multisegment, m2: Multisegment, n: Multisegment) -> Optional[Multisegment]:
    """Find ``m2'`` one periodic-pair move below ``m2`` with ``n <= m1 + m2'``.

    Returns ``None`` when no such move exists.
    """
    if not is_aperiodic(m1) or not is_aperiodic(n):
        raise PreconditionViolated("m1 and n must be aperiodic")
    if is_aperiodic(m2):
        raise PreconditionViolated("m2 must not be aperiodic")
    cache: dict = {}
    if not leq(n, m1 + m2, cache):
        raise PreconditionViolated(f"{n} is not below {m1 + m2}")
    for cand in sorted(set(periodic_pair_moves(m2))):
        if leq(n, m1 + cand, cache):
            return cand
    return None
