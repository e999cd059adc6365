"""Dense polynomials over the prime field GF(ell).

Coefficients are stored constant term first with no trailing zeros; the
zero polynomial has no coefficients.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class PolyModEll:
    __slots__ = ("ell", "coeffs")

    def __init__(self, coeffs: Iterable[int], ell: int):
        c = [x % ell for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.ell = ell
        self.coeffs = tuple(c)

    @classmethod
    def one(cls, ell: int) -> "PolyModEll":
        return cls([1], ell)

    @classmethod
    def binomial(cls, coeff: int, power: int, ell: int) -> "PolyModEll":
        """``1 - coeff * X**power``."""
        c = [0] * (power + 1)
        c[0] = 1
        c[power] -= coeff
        return cls(c, ell)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, PolyModEll):
            return NotImplemented
        return self.ell == other.ell and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ell, self.coeffs))

    def _check(self, other: "PolyModEll"):
        if self.ell != other.ell:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "PolyModEll") -> "PolyModEll":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return PolyModEll([x + y for x, y in zip(a, b)], self.ell)

    def __neg__(self) -> "PolyModEll":
        return PolyModEll([-x for x in self.coeffs], self.ell)

    def __sub__(self, other: "PolyModEll") -> "PolyModEll":
        return self + (-other)

    def __mul__(self, other: "PolyModEll") -> "PolyModEll":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return PolyModEll([], self.ell)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return PolyModEll(out, self.ell)

    def scale(self, c: int) -> "PolyModEll":
        return PolyModEll([c * x for x in self.coeffs], self.ell)

    def __divmod__(self, other: "PolyModEll") -> tuple["PolyModEll", "PolyModEll"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.ell
        rem = list(self.coeffs)
        inv = pow(other.coeffs[-1], -1, p)
        dq = len(rem) - len(other.coeffs)
        quot = [0] * max(dq + 1, 0)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv % p
            quot[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] = (rem[k + j] - c * y) % p
        return PolyModEll(quot, p), PolyModEll(rem, p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def normalized(self) -> "PolyModEll":
        """Constant term 1 when the constant term is a unit, monic otherwise."""
        if self.is_zero():
            return self
        lead = self.coeffs[0] if self.coeffs[0] else self.coeffs[-1]
        return self.scale(pow(lead, -1, self.ell))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.ell
        return acc

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            if k == 0:
                terms.append(str(c))
            else:
                terms.append(mon if c == 1 else f"{c}{mon}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"PolyModEll({list(self.coeffs)}, {self.ell})"


def poly(coeffs: Sequence[int], ell: int) -> PolyModEll:
    return PolyModEll(coeffs, ell)


def gcd_poly(a: PolyModEll, b: PolyModEll) -> PolyModEll:
    """Greatest common divisor by Euclid, normalized as in :meth:`PolyModEll.normalized`."""
    a._check(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.normalized()


def divides(a: PolyModEll, b: PolyModEll) -> bool:
    if a.is_zero():
        return b.is_zero()
    return (b % a).is_zero()
