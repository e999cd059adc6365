"""Rankin-Selberg L-factors of C'-parameters attached to multisegments.

An inverse L-factor is kept in factored form: a multiset of inverse roots,
each standing for the polynomial ``1 - (beta X)^f``.  Only ``beta^f`` enters
that polynomial, and ``beta`` itself depends on the representative chosen for
a residue, so modular roots are stored through ``beta^f``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

from .core import (
    Context,
    CuspidalLine,
    Multisegment,
    SegcalcError,
    Segment,
    shrink_left,
)
from .polymod import PolyModEll, divides as poly_divides, gcd_poly

__all__ = [
    "Cuspidal", "InverseRoot", "LFactorInv", "l_cuspidal", "l_segment", "l_multisegment",
    "expand", "ratio_aperiodic", "ratio_red", "predicted_ratio", "divides", "gcd_poly",
    "MissingPeriodicPair", "RatioMismatch", "NotDivisible",
]


class MissingPeriodicPair(SegcalcError):
    pass


class NotDivisible(SegcalcError):
    pass


class RatioMismatch(SegcalcError):
    """A direct quotient of L-factors disagrees with its closed form."""


class SymbolicFactor(SegcalcError):
    pass


class Cuspidal(NamedTuple):
    """The cuspidal ``rho_line |-|^shift``."""

    line: CuspidalLine
    shift: int


@dataclass(frozen=True, order=True)
class InverseRoot:
    """The factor ``1 - (beta X)^f``.

    ``value`` is ``beta^f`` reduced mod ell in the modular case, and the pair
    ``(twist symbol, power of q)`` describing ``beta`` in characteristic zero.
    """

    value: Union[int, tuple[str, int]]
    f: int

    @property
    def symbolic(self) -> bool:
        return isinstance(self.value, tuple)

    def polynomial(self, ell: int) -> PolyModEll:
        if self.symbolic:
            raise SymbolicFactor("characteristic-zero factors have no expansion over GF(ell)")
        return PolyModEll.binomial(self.value, self.f, ell)

    def __str__(self) -> str:
        if self.symbolic:
            t, k = self.value
            parts = ([] if t == "1" else [t]) + ([] if k == 0 else [f"q^{k}"])
            beta = "*".join(parts) or "1"
            x = "X" if beta == "1" else f"{beta}*X"
            inner = x if self.f == 1 else f"({x})^{self.f}"
            return f"(1 - {inner})"
        c = "" if self.value == 1 else f"{self.value}*"
        x = "X" if self.f == 1 else f"X^{self.f}"
        return f"(1 - {c}{x})"


def root(beta: int, f: int, ell: int) -> InverseRoot:
    """Inverse root for a concrete ``beta`` in GF(ell)^x."""
    if beta % ell == 0:
        raise ValueError("inverse roots are units")
    return InverseRoot(pow(beta, f, ell), f)


class LFactorInv:
    """Multiset of inverse roots; the empty multiset is ``L = 1``."""

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[InverseRoot] = ()):
        c = Counter(factors)
        self.factors = c

    def __mul__(self, other: "LFactorInv") -> "LFactorInv":
        return LFactorInv((self.factors + other.factors).elements())

    def quotient(self, other: "LFactorInv") -> "LFactorInv":
        """Exact multiset difference ``self / other``."""
        missing = other.factors - self.factors
        if missing:
            raise NotDivisible(f"{LFactorInv(missing.elements())} does not divide {self}")
        return LFactorInv((self.factors - other.factors).elements())

    def contains(self, other: "LFactorInv") -> bool:
        return not (other.factors - self.factors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LFactorInv):
            return NotImplemented
        return +self.factors == +other.factors

    def __hash__(self):
        return hash(frozenset((+self.factors).items()))

    def __len__(self) -> int:
        return sum(self.factors.values())

    def sorted(self) -> list[InverseRoot]:
        return sorted(self.factors.elements(), key=lambda r: (r.f, str(r.value)), reverse=True)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{r}^-1" for r in self.sorted())

    def __repr__(self) -> str:
        return f"LFactorInv({self})"

    def to_json(self) -> list[dict]:
        return [{"value": list(r.value) if r.symbolic else r.value, "f": r.f} for r in self.sorted()]


ONE = LFactorInv()


def _beta(rho: Cuspidal, rho_p: Cuspidal, ctx: Optional[Context]) -> InverseRoot:
    line = rho.line
    k = -(rho.shift + rho_p.shift)
    if ctx is not None and ctx.modular:
        beta = line.twist * pow(ctx.q, k, ctx.ell)
        return root(beta, line.f, ctx.ell)
    return InverseRoot((str(line.twist), k), line.f)


def _pairs(line: CuspidalLine, other: CuspidalLine) -> bool:
    return other.id == line.dual_id and line.banal


def l_cuspidal(rho: Cuspidal, rho_p: Cuspidal, ctx: Optional[Context]) -> LFactorInv:
    """One factor when ``rho'`` is an unramified twist of the dual of ``rho`` on a line of order > 1."""
    if not _pairs(rho.line, rho_p.line):
        return ONE
    return LFactorInv([_beta(rho, rho_p, ctx)])


def l_segment(d: Segment, d_p: Segment, ctx: Optional[Context]) -> LFactorInv:
    if not _pairs(d.line, d_p.line):
        return ONE
    if d.length <= d_p.length:
        pairs = [(Cuspidal(d.line, i), Cuspidal(d_p.line, d_p.b)) for i in d.exponents()]
    else:
        pairs = [(Cuspidal(d.line, d.b), Cuspidal(d_p.line, i)) for i in d_p.exponents()]
    return LFactorInv(_beta(r, rp, ctx) for r, rp in pairs)


def l_multisegment(m: Multisegment, n: Multisegment, ctx: Optional[Context]) -> LFactorInv:
    out = Counter()
    for d in m:
        for d_p in n:
            out += l_segment(d, d_p, ctx).factors
    return LFactorInv(out.elements())


def expand(L: LFactorInv, ctx: Context) -> PolyModEll:
    """The inverse L-factor as a polynomial over GF(ell)."""
    if not ctx.modular:
        raise SymbolicFactor("expansion needs a modular context")
    p = PolyModEll.one(ctx.ell)
    for r in L.factors.elements():
        p = p * r.polynomial(ctx.ell)
    return p


def predicted_ratio(d: Segment, n: Multisegment, ctx: Optional[Context], *, same_length: bool) -> LFactorInv:
    """Product over segments ``[c,d]`` of ``n`` on the dual line of the factor with ``beta = twist q^(-a-d)``.

    Only segments of the same length as ``d`` count when ``same_length``;
    otherwise those at least as long.
    """
    chosen = [t for t in n if t.line.id == d.line.dual_id
              and (t.length == d.length if same_length else t.length >= d.length)]
    return LFactorInv(_beta(Cuspidal(d.line, d.a), Cuspidal(t.line, t.b), ctx) for t in chosen)


def ratio_aperiodic(m: Multisegment, n: Multisegment, d: Segment, ctx: Optional[Context]) -> LFactorInv:
    """``L(m, n) / L(m', n)`` where ``m'`` merges ``[a,b] + [a+1,b+1]`` into ``[a,b+1] + [a+1,b]``."""
    nxt = Segment(d.line, d.a + 1, d.length)
    if d not in m or nxt not in m or (nxt == d and m.count(d) < 2):
        raise MissingPeriodicPair(f"{m} does not contain {d} + {nxt}")
    if not d.line.banal:
        raise MissingPeriodicPair(f"line {d.line.id!r} has order 1")
    inner = Segment(d.line, d.a + 1, d.length - 1) if d.length > 1 else None
    m2 = (m - d - nxt) + Multisegment([Segment(d.line, d.a, d.length + 1), inner])
    direct = l_multisegment(m, n, ctx).quotient(l_multisegment(m2, n, ctx))
    predicted = predicted_ratio(d, n, ctx, same_length=True)
    if direct != predicted:
        raise RatioMismatch(f"L({m},{n})/L({m2},{n}) = {direct}, expected {predicted}")
    return direct


def ratio_red(m: Multisegment, n: Multisegment, ctx: Optional[Context],
              d: Optional[Segment] = None) -> LFactorInv:
    """``L(m, n) / L(m - D + ^-D, n)`` for a longest segment ``D`` of ``m`` on a line of order > 1."""
    if not m:
        raise ValueError("empty multisegment has no longest segment")
    longest = max(s.length for s in m)
    if d is None:
        cands = [s for s in m if s.length == longest and s.line.banal]
        if not cands:
            raise ValueError(f"no longest segment of {m} lies on a line of order > 1")
        d = cands[0]
    elif d not in m or d.length != longest or not d.line.banal:
        raise ValueError(f"{d} is not a longest segment of {m} on a line of order > 1")
    m2 = m.replace(d, shrink_left(d))
    direct = l_multisegment(m, n, ctx).quotient(l_multisegment(m2, n, ctx))
    predicted = predicted_ratio(d, n, ctx, same_length=False)
    if direct != predicted:
        raise RatioMismatch(f"L({m},{n})/L({m2},{n}) = {direct}, expected {predicted}")
    return direct


def divides(L1: Union[LFactorInv, PolyModEll], L2: Union[LFactorInv, PolyModEll], ctx: Context) -> bool:
    """Divisibility of inverse L-factors as polynomials over GF(ell)."""
    p1 = expand(L1, ctx) if isinstance(L1, LFactorInv) else L1
    p2 = expand(L2, ctx) if isinstance(L2, LFactorInv) else L2
    return poly_divides(p1, p2)
