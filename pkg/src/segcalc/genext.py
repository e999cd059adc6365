"""Generic-extension monoid of the cyclic quiver on words and multisegments.

A word is a tuple of letters ``(line, residue)``.  ``m_gen`` folds the
right simple product over the word; ``word_of`` runs the extraction that
inverts it on aperiodic multisegments.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .core import (
    Context,
    CuspidalLine,
    EMPTY,
    Mode,
    Multisegment,
    ParseError,
    SegcalcError,
    Segment,
    dual_segment,
    is_aperiodic,
    shrink_left,
)


class NotAperiodic(SegcalcError):
    pass


class LengthMismatch(SegcalcError):
    pass


class ModularContext(SegcalcError):
    pass


class Letter(NamedTuple):
    line: CuspidalLine
    i: int

    def __str__(self):
        return f"{self.line.id}:{self.i}"


Word = tuple[Letter, ...]


def letter(line: CuspidalLine, i: int) -> Letter:
    return Letter(line, line.residue(i))


def word(line: CuspidalLine, residues: Iterable[int] | str) -> Word:
    """``word(L, "012")`` or ``word(L, [0, 1, 2])``."""
    return tuple(letter(line, int(r)) for r in residues)


def format_word(w: Sequence[Letter]) -> str:
    return ",".join(str(x) for x in w)


def parse_word(text: str, resolve) -> Word:
    """Parse ``"L:0,L:1,L:2"``; ``resolve(line_id, column)`` returns the line."""
    text = text.strip()
    if not text:
        return ()
    out = []
    col = 1
    for chunk in text.split(","):
        lid, sep, res = chunk.partition(":")
        if not sep or not lid.strip():
            raise ParseError(f"expected LINE:residue, found {chunk.strip()!r}", col)
        try:
            i = int(res)
        except ValueError:
            raise ParseError(f"bad residue {res.strip()!r}", col + len(lid) + 1) from None
        out.append(letter(resolve(lid.strip(), col), i))
        col += len(chunk) + 1
    return tuple(out)


def _longest(m: Multisegment, pred) -> Optional[Segment]:
    best = None
    for seg in m:
        if pred(seg) and (best is None or seg.length > best.length):
            best = seg
    return best


def left_add(i: int, m: Multisegment, line: CuspidalLine) -> Multisegment:
    """Generic extension ``[i,i] * m``."""
    start = line.residue(i + 1)
    target = _longest(m, lambda s: s.line.id == line.id and s.a == start)
    if target is None:
        return m + Segment(line, i, 1)
    return m.replace(target, Segment(line, i, target.length + 1))


def right_add(m: Multisegment, i: int, line: CuspidalLine) -> Multisegment:
    """Generic extension ``m * [i,i]``."""
    end = line.residue(i - 1)
    target = _longest(m, lambda s: s.line.id == line.id and s.end == end)
    if target is None:
        return m + Segment(line, i, 1)
    return m.replace(target, Segment(line, target.a, target.length + 1))


def m_gen(w: Sequence[Letter]) -> Multisegment:
    m = EMPTY
    for x in w:
        m = right_add(m, x.i, x.line)
    return m


def m_gen_left(w: Sequence[Letter]) -> Multisegment:
    """Same value as :func:`m_gen`, folding ``left_add`` from the right."""
    m = EMPTY
    for x in reversed(w):
        m = left_add(x.i, m, x.line)
    return m


def _extract(m: Multisegment) -> Optional[Segment]:
    """Shortest segment ``[a,b]`` whose length beats every segment ending at ``b-1``."""
    best = None
    for seg in m:
        prev_end = seg.line.residue(seg.b - 1)
        if any(t.line.id == seg.line.id and t.end == prev_end and t.length >= seg.length for t in m):
            continue
        if best is None or (seg.length, seg.line.id, seg.a) < (best.length, best.line.id, best.a):
            best = seg
    return best


def word_of(m: Multisegment) -> Word:
    """A word ``w`` with ``m_gen(w) == m``; ``m`` must be aperiodic."""
    if not is_aperiodic(m):
        raise NotAperiodic(f"{m} is not aperiodic")
    letters = []
    while m:
        seg = _extract(m)
        if seg is None:
            raise NotAperiodic(f"no extractable segment in {m}")
        letters.append(Letter(seg.line, seg.end))
        m = m.replace(seg, Segment(seg.line, seg.a, seg.length - 1) if seg.length > 1 else None)
    return tuple(reversed(letters))


def star(m: Multisegment, n: Multisegment) -> Multisegment:
    """Product of aperiodic multisegments through their words."""
    return m_gen(word_of(m) + word_of(n))


def word_dual(w: Sequence[Letter], ctx: Optional[Context] = None) -> Word:
    out = []
    for x in reversed(w):
        seg = dual_segment(Segment(x.line, x.i, 1), ctx)
        out.append(Letter(seg.line, seg.a))
    return tuple(out)


# ---------------------------------------------------------------------------
# Degenerate Serre relations
# ---------------------------------------------------------------------------


def _neighbours(i: int, j: int, line: CuspidalLine) -> bool:
    return line.residue(i + 1) == j or line.residue(j + 1) == i


def serre_templates(line: CuspidalLine, relations: str = "cyclic") -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Non-commutation rewrite pairs as offsets from a base residue ``i``.

    ``((0, 1, 0), (0, 0, 1))`` reads ``i(i+1)i = ii(i+1)``; both directions
    are applied.  Relation sets:

    ``"cyclic"`` (default)
        the two neighbour relations for order > 2 plus, on a line of order
        ``n``, the full-cycle relation
        ``i (i-1) ... (i-n+1) i i = i i (i-1) ... (i-n+1) i``.
        For ``n == 2`` this is ``i(i+1)ii = ii(i+1)i``.
    ``"printed"``
        neighbour relations for order > 2 and ``i(i+1)ii = ii(i+1)i`` for
        order 2 only.  Incomplete from word length ``n + 2`` on when ``n > 2``.
    ``"literal"``
        as ``"printed"`` but with no order-2 relation at all (the order-2
        relation read verbatim is an identity).

    No set is complete for words of length 7 and more (see the test suite).
    """
    if relations not in ("cyclic", "printed", "literal"):
        raise ValueError(f"unknown relation set {relations!r}")
    n = line.order
    out = []
    if n is None or n > 2:
        out += [((0, 1, 0), (0, 0, 1)), ((0, 1, 1), (1, 0, 1))]
    if n is not None and (n == 2 and relations != "literal" or n > 2 and relations == "cyclic"):
        down = tuple(-k for k in range(1, n))
        out.append(((0,) + down + (0, 0), (0, 0) + down + (0,)))
    return out


def _rewrites(w: tuple[int, ...], line: CuspidalLine, templates) -> Iterator[tuple[int, ...]]:
    n = len(w)
    for k in range(n - 1):
        i, j = w[k], w[k + 1]
        if i != j and not _neighbours(i, j, line):
            yield w[:k] + (j, i) + w[k + 2:]
    for lhs, rhs in templates:
        for src, dst in ((lhs, rhs), (rhs, lhs)):
            L = len(src)
            for k in range(n - L + 1):
                base = w[k] - src[0]
                if all(w[k + t] == line.residue(base + src[t]) for t in range(L)):
                    yield w[:k] + tuple(line.residue(base + d) for d in dst) + w[k + L:]


def _project(w: Sequence[Letter], line_id: str) -> tuple[int, ...]:
    return tuple(x.i for x in w if x.line.id == line_id)


def serre_class(w: Sequence[Letter], relations: str = "cyclic", limit: int = 200_000) -> set[tuple[int, ...]]:
    """Closure of a single-line word under the degenerate Serre rewrites."""
    if not w:
        return {()}
    line = w[0].line
    start = _project(w, line.id)
    templates = serre_templates(line, relations)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in _rewrites(cur, line, templates):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise RuntimeError("rewrite class exceeds search limit")
                queue.append(nxt)
    return seen


def serre_equivalent(w1: Sequence[Letter], w2: Sequence[Letter], relations: str = "cyclic") -> bool:
    """Words related by commutations of distinct lines and the degenerate Serre relations."""
    if len(w1) != len(w2):
        raise LengthMismatch(f"words of lengths {len(w1)} and {len(w2)}")
    lines = {x.line.id: x.line for x in tuple(w1) + tuple(w2)}
    for lid, line in lines.items():
        p1, p2 = _project(w1, lid), _project(w2, lid)
        if len(p1) != len(p2):
            return False
        if p1 == p2:
            continue
        if p2 not in serre_class(tuple(Letter(line, i) for i in p1), relations):
            return False
    return True


# ---------------------------------------------------------------------------
# Words below a multisegment
# ---------------------------------------------------------------------------


def words_below(m: Multisegment) -> Iterator[Word]:
    """Words ``w`` with ``m_gen(w)`` below ``m``, each produced once.

    Built by choosing a start residue occurring in ``m``, shrinking the
    longest segment with that start from the left, and recursing.
    """
    seen: set = set()

    def rec(cur: Multisegment, prefix: tuple) -> Iterator[Word]:
        if not cur:
            if prefix not in seen:
                seen.add(prefix)
                yield prefix
            return
        starts = sorted({(s.line.id, s.a): s.line for s in cur}.items())
        for (lid, a), line in starts:
            longest = max((s for s in cur if s.line.id == lid and s.a == a), key=lambda s: s.length)
            yield from rec(cur.replace(longest, shrink_left(longest)), prefix + (Letter(line, a),))

    yield from rec(m, ())


# ---------------------------------------------------------------------------
# Arranged forms (characteristic zero)
# ---------------------------------------------------------------------------


def precedes(d1: Segment, d2: Segment) -> bool:
    return d1.line.id == d2.line.id and d1.a + 1 <= d2.a <= d1.b + 1 <= d2.b


def arranged_form(m: Multisegment, ctx: Optional[Context] = None) -> list[Segment]:
    """Order so that no segment precedes a later one."""
    if (ctx is not None and ctx.mode is Mode.MODULAR) or any(s.line.finite for s in m):
        raise ModularContext("arranged forms are defined over infinite lines only")
    return sorted(m, key=lambda s: (-s.b, -s.a, s.line.id))


def is_arranged(segs: Sequence[Segment]) -> bool:
    return not any(precedes(segs[i], segs[j]) for i in range(len(segs)) for j in range(i + 1, len(segs)))
