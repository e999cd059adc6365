"""Arithmetic contexts, cuspidal lines, segments and multisegments.

A cuspidal line is modelled by its combinatorial data only: an identifier,
the integer ``f``, a dual line, a twist and a degree.  Its order ``o`` is
the multiplicative order of ``q**f`` modulo ``ell`` (``None`` stands for an
infinite line in characteristic zero).  Segments on a line of finite order
are stored as ``(a mod o, length)``; the length is unbounded, so a segment
may wrap around the line several times.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence, Union


class SegcalcError(Exception):
    """Base class for every error raised by this package."""


class NonPrimeEll(SegcalcError):
    pass


class QDivisibleByEll(SegcalcError):
    pass


class InfiniteOrder(SegcalcError):
    pass


class MissingDualLine(SegcalcError):
    pass


class InconsistentLines(SegcalcError):
    pass


class BadResidue(SegcalcError):
    pass


class UnknownLine(SegcalcError):
    pass


class ParseError(SegcalcError):
    """Malformed multisegment or word text; ``column`` is 1-based."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.reason = message
        self.column = column


class Mode(str, Enum):
    CHAR_ZERO = "char_zero"
    MODULAR = "modular"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def multiplicative_order(x: int, ell: int) -> int:
    x %= ell
    if x == 0:
        raise QDivisibleByEll(f"{x} is not a unit modulo {ell}")
    k, y = 1, x
    while y != 1:
        y = (y * x) % ell
        k += 1
    return k


# ---------------------------------------------------------------------------
# Lines and contexts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CuspidalLine:
    """Combinatorial data of a cuspidal line.

    ``order`` is ``None`` for an infinite line.  ``period`` is the length of a
    full period used by the aperiodicity test: the order when it exceeds 1,
    otherwise ``ell``.
    """

    id: str
    order: Optional[int] = None
    f: int = 1
    dual_id: Optional[str] = None
    twist: Union[int, str] = 1
    deg: int = 1
    period: Optional[int] = None

    def __post_init__(self):
        if self.order is not None and self.order < 1:
            raise ValueError("line order must be positive")
        if self.f < 1 or self.deg < 1:
            raise ValueError("f and deg must be positive")
        if self.dual_id is None:
            object.__setattr__(self, "dual_id", self.id)
        if self.period is None and self.order is not None:
            if self.order == 1:
                raise ValueError("a line of order 1 needs an explicit period (ell)")
            object.__setattr__(self, "period", self.order)

    @property
    def finite(self) -> bool:
        return self.order is not None

    @property
    def banal(self) -> bool:
        """True when the order exceeds one (infinite lines included)."""
        return self.order is None or self.order > 1

    def residue(self, i: int) -> int:
        return i % self.order if self.order is not None else i


def cyclic_line(n: Optional[int], id: str = "L", **kwargs) -> CuspidalLine:
    """A self-dual line of order ``n`` for purely combinatorial work.

    ``n = None`` gives an infinite line.  For ``n == 1`` pass ``period``.
    """
    return CuspidalLine(id=id, order=n, **kwargs)


@dataclass(frozen=True)
class Context:
    """Global arithmetic mode together with the declared cuspidal lines."""

    mode: Mode
    ell: Optional[int] = None
    q: Optional[int] = None
    lines: Mapping[str, CuspidalLine] = field(default_factory=dict, compare=False)

    @property
    def modular(self) -> bool:
        return self.mode is Mode.MODULAR

    def line(self, line_id: str) -> CuspidalLine:
        try:
            return self.lines[line_id]
        except KeyError:
            raise UnknownLine(f"line {line_id!r} is not declared") from None

    def dual_line(self, line: CuspidalLine) -> CuspidalLine:
        try:
            return self.lines[line.dual_id]
        except KeyError:
            if line.dual_id == line.id:
                return line
            raise MissingDualLine(f"dual {line.dual_id!r} of line {line.id!r} is not declared") from None

    def with_line(self, id: str, f: int = 1, dual: Optional[str] = None,
                  twist: Union[int, str] = 1, deg: int = 1) -> "Context":
        """Return a new context with one more line declared.

        The order of the line is derived from ``q``, ``ell`` and ``f``.  When
        the dual line is already declared, ``f`` and the twist must agree.
        """
        dual = id if dual is None else dual
        if self.modular:
            if not isinstance(twist, int) or twist % self.ell == 0:
                raise InconsistentLines(f"twist of {id!r} must be a unit modulo {self.ell}")
            twist %= self.ell
            order = line_order_from(f, self)
            line = CuspidalLine(id, order, f, dual, twist, deg, period=e_from(order, self.ell))
        else:
            line = CuspidalLine(id, None, f, dual, str(twist), deg)
        other = self.lines.get(dual)
        if other is not None and dual != id:
            if other.dual_id != id:
                raise InconsistentLines(f"{dual!r} is declared dual to {other.dual_id!r}, not {id!r}")
            if other.f != line.f or other.twist != line.twist:
                raise InconsistentLines(f"lines {id!r} and {dual!r} must share f and twist")
        lines = dict(self.lines)
        lines[id] = line
        return replace(self, lines=lines)

    def check_duals(self) -> None:
        """Raise unless duality is an involution on the declared lines."""
        for line in self.lines.values():
            dual = self.dual_line(line)
            if dual.dual_id != line.id:
                raise InconsistentLines(f"dual of dual of {line.id!r} is {dual.dual_id!r}")


def make_context(mode: Union[Mode, str], ell: Optional[int] = None, q: Optional[int] = None) -> Context:
    mode = Mode(mode.lower() if isinstance(mode, str) else mode)
    if mode is Mode.CHAR_ZERO:
        return Context(Mode.CHAR_ZERO)
    if ell is None or q is None:
        raise ValueError("modular context needs ell and q")
    if not is_prime(ell):
        raise NonPrimeEll(f"ell={ell} is not prime")
    if q % ell == 0:
        raise QDivisibleByEll(f"q={q} is divisible by ell={ell}")
    return Context(Mode.MODULAR, ell, q % ell)


def line_order_from(f: int, ctx: Context) -> Optional[int]:
    if not ctx.modular:
        return None
    return multiplicative_order(pow(ctx.q, f, ctx.ell), ctx.ell)


def e_from(order: Optional[int], ell: int) -> int:
    return order if order is not None and order > 1 else ell


def line_order(line: Union[CuspidalLine, int], ctx: Context) -> Optional[int]:
    """Order of ``q**f`` modulo ``ell``; ``None`` (infinity) in characteristic zero.

    ``line`` may be a declared line or just its ``f``.
    """
    f = line.f if isinstance(line, CuspidalLine) else line
    return line_order_from(f, ctx)


def e_of(line: Union[CuspidalLine, int], ctx: Context) -> int:
    if not ctx.modular:
        raise InfiniteOrder("e is only defined for lines of finite order")
    return e_from(line_order(line, ctx), ctx.ell)


def load_context(doc: Union[str, Mapping]) -> Context:
    """Build a context from its JSON document (text or parsed mapping)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    ctx = make_context(doc.get("mode", "char_zero").replace("-", "_"), doc.get("ell"), doc.get("q"))
    for entry in doc.get("lines", []):
        ctx = ctx.with_line(entry["id"], entry.get("f", 1), entry.get("dual"),
                            entry.get("twist", 1), entry.get("deg", 1))
    ctx.check_duals()
    return ctx


def context_to_json(ctx: Context) -> dict:
    doc = {"mode": ctx.mode.value}
    if ctx.modular:
        doc.update(ell=ctx.ell, q=ctx.q)
    doc["lines"] = [{"id": L.id, "f": L.f, "dual": L.dual_id, "twist": L.twist, "deg": L.deg}
                    for L in ctx.lines.values()]
    return doc


# ---------------------------------------------------------------------------
# Segments
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=False)
class Segment:
    """The segment ``[a, a+length-1]`` on ``line``, start reduced mod the order."""

    line: CuspidalLine
    a: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("segments have positive length; use None for the empty segment")
        object.__setattr__(self, "a", self.line.residue(self.a))

    @classmethod
    def from_ends(cls, line: CuspidalLine, a: int, b: int) -> "Segment":
        return cls(line, a, b - a + 1)

    @property
    def b(self) -> int:
        return self.a + self.length - 1

    @property
    def end(self) -> int:
        """End exponent reduced modulo the line order."""
        return self.line.residue(self.b)

    def key(self):
        return (self.line.id, self.a, self.length)

    def __lt__(self, other: "Segment") -> bool:
        return self.key() < other.key()

    def exponents(self) -> range:
        return range(self.a, self.b + 1)

    def __str__(self) -> str:
        return f"{self.line.id}[{self.a},{self.b}]"

    __repr__ = __str__


def shrink_left(seg: Segment) -> Optional[Segment]:
    return None if seg.length == 1 else Segment(seg.line, seg.a + 1, seg.length - 1)


def shrink_right(seg: Segment) -> Optional[Segment]:
    return None if seg.length == 1 else Segment(seg.line, seg.a, seg.length - 1)


def grow_left(seg: Segment) -> Segment:
    return Segment(seg.line, seg.a - 1, seg.length + 1)


def grow_right(seg: Segment) -> Segment:
    return Segment(seg.line, seg.a, seg.length + 1)


# ---------------------------------------------------------------------------
# Multisegments
# ---------------------------------------------------------------------------


class Multisegment:
    """Finite multiset of segments kept in canonical sorted order.

    Instances are immutable and hashable; two multisegments are equal iff
    their canonical forms agree.
    """

    __slots__ = ("segments", "_hash")

    def __init__(self, segments: Iterable[Optional[Segment]] = ()):
        segs = tuple(sorted((s for s in segments if s is not None), key=Segment.key))
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "_hash", hash(tuple(s.key() for s in segs)))

    def __setattr__(self, name, value):
        raise AttributeError("Multisegment is immutable")

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    def __bool__(self) -> bool:
        return bool(self.segments)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multisegment):
            return NotImplemented
        return self._hash == other._hash and self.segments == other.segments

    def __lt__(self, other: "Multisegment") -> bool:
        return [s.key() for s in self] < [s.key() for s in other]

    def __add__(self, other: Union["Multisegment", Segment]) -> "Multisegment":
        if isinstance(other, Segment):
            return Multisegment(self.segments + (other,))
        return Multisegment(self.segments + other.segments)

    def __sub__(self, other: Union["Multisegment", Segment]) -> "Multisegment":
        """Remove one copy of each segment of ``other``; raise if absent."""
        remaining = list(self.segments)
        for seg in [other] if isinstance(other, Segment) else other:
            try:
                remaining.remove(seg)
            except ValueError:
                raise ValueError(f"{seg} does not occur in {self}") from None
        return Multisegment(remaining)

    def __contains__(self, seg) -> bool:
        return seg in self.segments

    def count(self, seg: Segment) -> int:
        return self.segments.count(seg)

    def contains(self, other: "Multisegment") -> bool:
        """Multiset containment."""
        mine = Counter(self.segments)
        return all(mine[s] >= k for s, k in Counter(other.segments).items())

    def replace(self, old: Segment, *new: Optional[Segment]) -> "Multisegment":
        return (self - old) + Multisegment(new)

    def lines(self) -> list[CuspidalLine]:
        seen = {}
        for s in self:
            seen.setdefault(s.line.id, s.line)
        return list(seen.values())

    def on_line(self, line: Union[CuspidalLine, str]) -> "Multisegment":
        lid = line if isinstance(line, str) else line.id
        return Multisegment(s for s in self if s.line.id == lid)

    @property
    def total_length(self) -> int:
        return sum(s.length for s in self)

    def __str__(self) -> str:
        return "+".join(str(s) for s in self) if self.segments else "0"

    def __repr__(self) -> str:
        return f"Multisegment({self})"


EMPTY = Multisegment()


def ms(line: CuspidalLine, *ends: tuple[int, int]) -> Multisegment:
    """Shorthand: ``ms(L, (0, 1), (1, 1))`` is ``L[0,1] + L[1,1]``."""
    return Multisegment(Segment.from_ends(line, a, b) for a, b in ends)


def degree(m: Multisegment) -> int:
    return sum(s.length * s.line.deg for s in m)


def dual_segment(seg: Segment, ctx: Optional[Context] = None) -> Segment:
    line = seg.line
    if line.dual_id != line.id:
        if ctx is None:
            raise MissingDualLine(f"a context is needed to resolve the dual of {line.id!r}")
        line = ctx.dual_line(line)
    return Segment.from_ends(line, -seg.b, -seg.a)


def dual(m: Multisegment, ctx: Optional[Context] = None) -> Multisegment:
    return Multisegment(dual_segment(s, ctx) for s in m)


def is_aperiodic(m: Multisegment, ctx: Optional[Context] = None) -> bool:
    """No full period ``[a,b] + [a+1,b+1] + ... + [a+e-1,b+e-1]`` inside ``m``.

    Infinite lines never contain a period.  ``ctx`` is accepted for symmetry
    with the other queries; the period is carried by each line.
    """
    counts = Counter(m.segments)
    for seg in counts:
        line = seg.line
        if not line.finite:
            continue
        period = [Segment(line, seg.a + k, seg.length) for k in range(line.period)]
        need = Counter(period)
        if all(counts[s] >= c for s, c in need.items()):
            return False
    return True


def banal_split(m: Multisegment, ctx: Optional[Context] = None) -> tuple[Multisegment, Multisegment]:
    """Split into the part on lines of order > 1 and the rest."""
    banal = [s for s in m if s.line.banal]
    rest = [s for s in m if not s.line.banal]
    return Multisegment(banal), Multisegment(rest)


def lift(m: Multisegment, reps: Sequence[int], lift_lines: Mapping[str, CuspidalLine]) -> Multisegment:
    """Lift to characteristic zero.

    ``reps[k]`` is the chosen start of the ``k``-th segment (canonical order)
    and must agree with it modulo the line order.  ``lift_lines`` maps each
    modular line id to an infinite line.
    """
    if len(reps) != len(m):
        raise ValueError("one representative per segment is required")
    out = []
    for seg, a in zip(m, reps):
        if seg.line.residue(a) != seg.a:
            raise BadResidue(f"{a} is not congruent to {seg.a} modulo {seg.line.order}")
        target = lift_lines[seg.line.id]
        if target.finite:
            raise ValueError("lift lines must be infinite")
        out.append(Segment(target, a, seg.length))
    return Multisegment(out)


def reduce_lift(m: Multisegment, lines: Mapping[str, CuspidalLine]) -> Multisegment:
    """Inverse direction of :func:`lift`: reduce starts modulo the target order."""
    return Multisegment(Segment(lines[s.line.id], s.a, s.length) for s in m)


def support(m: Multisegment) -> dict[str, dict[int, int]]:
    """Cuspidal support: per line, multiplicity of each exponent (residue).

    On finite lines every residue ``0..o-1`` appears, zeros included.
    """
    out: dict[str, dict[int, int]] = {}
    for seg in m:
        line = seg.line
        counts = out.setdefault(line.id, {i: 0 for i in range(line.order)} if line.finite else {})
        for x in seg.exponents():
            r = line.residue(x)
            counts[r] = counts.get(r, 0) + 1
    return {lid: dict(sorted(c.items())) for lid, c in sorted(out.items())}


def dimension_vector(m: Multisegment, line: CuspidalLine) -> tuple[int, ...]:
    if not line.finite:
        raise InfiniteOrder("dimension vectors need a finite line")
    counts = support(m.on_line(line)).get(line.id, {})
    return tuple(counts.get(i, 0) for i in range(line.order))


# ---------------------------------------------------------------------------
# Text grammar:  expr := term ("+" term)* ;  term := LINEID "[" int "," int "]"
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<id>[A-Za-z_][A-Za-z0-9_']*)|(?P<int>[+-]?\d+)|(?P<sym>[\[\],+]))")


def _tokens(text: str):
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            return
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                             len(text[:pos]) + (len(text[pos:]) - len(text[pos:].lstrip())) + 1)
        kind = m.lastgroup
        yield kind, m.group(kind), m.start(kind) + 1
        pos = m.end()


class LineResolver(NamedTuple):
    """Maps a line id to a line; ``default`` builds undeclared lines on demand."""

    ctx: Optional[Context] = None
    default_order: Optional[int] = None
    auto: bool = False

    def __call__(self, line_id: str, column: int) -> CuspidalLine:
        if self.ctx is not None and line_id in self.ctx.lines:
            return self.ctx.lines[line_id]
        if self.auto:
            return cyclic_line(self.default_order, line_id)
        raise ParseError(f"unknown line {line_id!r}", column)


def _resolver(ctx) -> LineResolver:
    if isinstance(ctx, LineResolver):
        return ctx
    if isinstance(ctx, CuspidalLine):
        return LineResolver(Context(Mode.CHAR_ZERO, lines={ctx.id: ctx}))
    return LineResolver(ctx)


def parse_multisegment(text: str, ctx) -> Multisegment:
    """Parse ``"L[0,2]+L[1,1]"``; ``"0"`` or blank text is the empty multisegment."""
    resolve = _resolver(ctx)
    toks = list(_tokens(text))
    if not toks or (len(toks) == 1 and toks[0][:2] == ("int", "0")):
        return EMPTY
    segs = []
    i = 0
    end_col = len(text.rstrip()) + 1

    def expect(kind, value=None):
        nonlocal i
        if i >= len(toks):
            raise ParseError(f"expected {value or kind}, found end of input", end_col)
        k, v, col = toks[i]
        if k != kind or (value is not None and v != value):
            raise ParseError(f"expected {value or kind}, found {v!r}", col)
        i += 1
        return v, col

    while True:
        lid, col = expect("id")
        expect("sym", "[")
        a, _ = expect("int")
        expect("sym", ",")
        b, bcol = expect("int")
        expect("sym", "]")
        line = resolve(lid, col)
        a, b = int(a), int(b)
        if b < a:
            raise ParseError(f"segment end {b} precedes start {a}", bcol)
        segs.append(Segment.from_ends(line, a, b))
        if i == len(toks):
            break
        expect("sym", "+")
    return Multisegment(segs)
