"""Brute-force oracle on explicit nilpotent representations of the cyclic quiver.

Representations live over a prime field GF(p) with ``p`` independent of
``ell``.  Vertex ``i`` carries a space of dimension ``dims[i]`` and
``maps[i]`` is the matrix of the arrow ``i -> i+1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .core import CuspidalLine, Multisegment, SegcalcError, Segment, cyclic_line, support


class NotNilpotent(SegcalcError):
    pass


class SupportMismatch(SegcalcError):
    pass


DEFAULT_P = 101


# ---------------------------------------------------------------------------
# Linear algebra over GF(p)
# ---------------------------------------------------------------------------


def row_reduce(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod ``p`` and its pivot columns."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod_p(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return len(row_reduce(A, p)[1])


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuiverRep:
    n: int
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]
    p: int = DEFAULT_P

    def __post_init__(self):
        if len(self.dims) != self.n or len(self.maps) != self.n:
            raise ValueError("one dimension and one arrow per vertex")
        for i, T in enumerate(self.maps):
            if T.shape != (self.dims[(i + 1) % self.n], self.dims[i]):
                raise ValueError(f"arrow {i} has shape {T.shape}")

    @classmethod
    def zero(cls, dims: Sequence[int], p: int = DEFAULT_P) -> "QuiverRep":
        n = len(dims)
        return cls(n, tuple(dims), tuple(np.zeros((dims[(i + 1) % n], dims[i]), dtype=np.int64)
                                         for i in range(n)), p)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def path(self, i: int, length: int) -> np.ndarray:
        """Matrix of ``T^length`` restricted to vertex ``i``."""
        n = self.n
        P = np.eye(self.dims[i % n], dtype=np.int64)
        for k in range(length):
            P = (self.maps[(i + k) % n] @ P) % self.p
        return P

    def is_nilpotent(self) -> bool:
        D = self.total_dim
        return all(not self.path(i, D).any() for i in range(self.n))

    def direct_sum(self, other: "QuiverRep") -> "QuiverRep":
        if self.n != other.n or self.p != other.p:
            raise ValueError("direct sums need the same quiver and field")
        maps = []
        for i in range(self.n):
            A, B = self.maps[i], other.maps[i]
            M = np.zeros((A.shape[0] + B.shape[0], A.shape[1] + B.shape[1]), dtype=np.int64)
            M[:A.shape[0], :A.shape[1]] = A
            M[A.shape[0]:, A.shape[1]:] = B
            maps.append(M)
        return QuiverRep(self.n, tuple(a + b for a, b in zip(self.dims, other.dims)), tuple(maps), self.p)


def build_rep(m: Multisegment, p: int = DEFAULT_P, n: Optional[int] = None) -> QuiverRep:
    """Direct sum of the string modules of the segments of ``m``.

    Segment ``[a,b]`` contributes basis vectors at vertices ``a, ..., b`` (mod
    n) with ``T`` moving each to the next and killing the last.
    """
    lines = m.lines()
    if len(lines) > 1:
        raise ValueError("build_rep takes a single-line multisegment")
    if n is None:
        if not lines:
            raise ValueError("pass n for the empty multisegment")
        n = lines[0].order
    if n is None:
        raise ValueError("the cyclic quiver needs a line of finite order")
    dims = [0] * n
    index = []  # per segment, per position: (vertex, local index)
    for seg in m:
        pos = []
        for x in seg.exponents():
            v = x % n
            pos.append((v, dims[v]))
            dims[v] += 1
        index.append(pos)
    maps = [np.zeros((dims[(i + 1) % n], dims[i]), dtype=np.int64) for i in range(n)]
    for pos in index:
        for (v, k), (w, l) in zip(pos, pos[1:]):
            maps[v][l, k] = 1
    return QuiverRep(n, tuple(dims), tuple(maps), p)


def _delta(A: QuiverRep, B: QuiverRep) -> tuple[np.ndarray, int, int]:
    """Matrix of ``phi -> (phi_{i+1} T^A_i - T^B_i phi_i)_i`` from Hom-spaces to arrow spaces.

    Returns the matrix and the dimensions of its source and target.
    """
    if A.n != B.n or A.p != B.p:
        raise ValueError("representations of different quivers or fields")
    n, p = A.n, A.p
    src_off, off = [], 0
    for i in range(n):
        src_off.append(off)
        off += B.dims[i] * A.dims[i]
    src = off
    tgt_off, off = [], 0
    for i in range(n):
        tgt_off.append(off)
        off += B.dims[(i + 1) % n] * A.dims[i]
    tgt = off
    D = np.zeros((tgt, src), dtype=np.int64)
    for i in range(n):
        j = (i + 1) % n
        rows = slice(tgt_off[i], tgt_off[i] + B.dims[j] * A.dims[i])
        if B.dims[j] * A.dims[i] == 0:
            continue
        # row-major vec: vec(X B) = kron(I, B^T) vec(X), vec(A X) = kron(A, I) vec(X)
        if B.dims[j] * A.dims[j]:
            D[rows, src_off[j]:src_off[j] + B.dims[j] * A.dims[j]] += np.kron(
                np.eye(B.dims[j], dtype=np.int64), A.maps[i].T)
        if B.dims[i] * A.dims[i]:
            D[rows, src_off[i]:src_off[i] + B.dims[i] * A.dims[i]] -= np.kron(
                B.maps[i], np.eye(A.dims[i], dtype=np.int64))
    return D % p, src, tgt


def hom_dim(M: QuiverRep, N: QuiverRep) -> int:
    """Dimension of the space of quiver morphisms ``M -> N``."""
    D, src, _ = _delta(M, N)
    return src - rank_mod_p(D, M.p)


def orbit_dim(M: QuiverRep) -> int:
    return sum(d * d for d in M.dims) - hom_dim(M, M)


@dataclass(frozen=True)
class ExtSpace:
    """Cocycle basis of Ext^1(A, B); cocycle ``c_i`` maps ``A_i`` to ``B_{i+1}``."""

    A: QuiverRep
    B: QuiverRep
    basis: tuple[tuple[np.ndarray, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _unvec(v: np.ndarray, A: QuiverRep, B: QuiverRep) -> tuple[np.ndarray, ...]:
    out, off = [], 0
    for i in range(A.n):
        r, c = B.dims[(i + 1) % A.n], A.dims[i]
        out.append(v[off:off + r * c].reshape(r, c) % A.p)
        off += r * c
    return tuple(out)


def ext_space(A: QuiverRep, B: QuiverRep) -> ExtSpace:
    """Extensions ``0 -> B -> X -> A -> 0`` modulo coboundaries."""
    D, src, tgt = _delta(A, B)
    p = A.p
    span = D.T.copy() if src else np.zeros((0, tgt), dtype=np.int64)
    rank = rank_mod_p(span, p) if span.size else 0
    basis = []
    for k in range(tgt):
        e = np.zeros((1, tgt), dtype=np.int64)
        e[0, k] = 1
        trial = np.vstack([span, e])
        r = rank_mod_p(trial, p)
        if r > rank:
            span, rank = trial, r
            basis.append(_unvec(e[0], A, B))
    return ExtSpace(A, B, tuple(basis))


def extension(A: QuiverRep, B: QuiverRep, cocycle: Sequence[np.ndarray]) -> QuiverRep:
    """Total space on ``B + A`` with arrows ``[[T^B, c], [0, T^A]]``."""
    n = A.n
    maps = []
    for i in range(n):
        j = (i + 1) % n
        M = np.zeros((B.dims[j] + A.dims[j], B.dims[i] + A.dims[i]), dtype=np.int64)
        M[:B.dims[j], :B.dims[i]] = B.maps[i]
        M[:B.dims[j], B.dims[i]:] = cocycle[i]
        M[B.dims[j]:, B.dims[i]:] = A.maps[i]
        maps.append(M % A.p)
    return QuiverRep(n, tuple(b + a for a, b in zip(A.dims, B.dims)), tuple(maps), A.p)


def recover_multisegment(M: QuiverRep, line: Optional[CuspidalLine] = None) -> Multisegment:
    """The multisegment whose string module is isomorphic to ``M``.

    With ``r(i, l)`` the rank of ``T^l`` leaving vertex ``i``, the number of
    strings starting at ``i`` of length greater than ``l`` is
    ``g(i, l) = r(i, l) - r(i-1, l+1)``, and strings of length exactly ``l``
    number ``g(i, l-1) - g(i, l)``.
    """
    if not M.is_nilpotent():
        raise NotNilpotent("the cyclic composite of the arrows is not nilpotent")
    n = M.n
    line = line if line is not None else cyclic_line(n, period=n)
    if line.order != n:
        raise ValueError("line order and quiver size differ")
    D = M.total_dim
    r = {}
    for i in range(n):
        for l in range(D + 2):
            r[i, l] = M.dims[i] if l == 0 else rank_mod_p(M.path(i, l), M.p)

    def g(i, l):
        return r[i % n, l] - r[(i - 1) % n, l + 1]

    segs = []
    for i in range(n):
        for l in range(1, D + 1):
            k = g(i, l - 1) - g(i, l)
            segs.extend([Segment(line, i, l)] * k)
    return Multisegment(segs)


# ---------------------------------------------------------------------------
# Order and generic extensions
# ---------------------------------------------------------------------------


def _string(line: CuspidalLine, a: int, length: int, p: int) -> QuiverRep:
    return build_rep(Multisegment([Segment(line, a, length)]), p)


def hom_profile(m: Multisegment, line: CuspidalLine, max_len: int, p: int = DEFAULT_P) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Hom dimensions from and into every string of length <= ``max_len``."""
    M = build_rep(m, p, line.order)
    into, out = [], []
    for a in range(line.order):
        for length in range(1, max_len + 1):
            S = _string(line, a, length, p)
            into.append(hom_dim(S, M))
            out.append(hom_dim(M, S))
    return tuple(into), tuple(out)


def hom_leq(n: Multisegment, m: Multisegment, p: int = DEFAULT_P, line: Optional[CuspidalLine] = None,
            max_len: Optional[int] = None, cache: Optional[dict] = None) -> bool:
    """``lambda(m)`` lies in the orbit closure of ``lambda(n)``, tested by Hom dimensions.

    Degeneration raises every ``dim Hom(S, -)`` and ``dim Hom(-, S)``; both
    families are checked against all strings ``S`` up to length ``max_len``.
    """
    if support(n) != support(m):
        raise SupportMismatch(f"{n} and {m} have different supports")
    if line is None:
        lines = m.lines() or n.lines()
        if not lines:
            return True
        line = lines[0]
    if max_len is None:
        max_len = m.total_length + line.order

    def profile(x):
        key = (x, max_len, p)
        if cache is not None and key in cache:
            return cache[key]
        val = hom_profile(x, line, max_len, p)
        if cache is not None:
            cache[key] = val
        return val

    (in_n, out_n), (in_m, out_m) = profile(n), profile(m)
    into_ok = all(x >= y for x, y in zip(in_m, in_n))
    out_ok = all(x >= y for x, y in zip(out_m, out_n))
    return into_ok and out_ok


def sample_extensions(m: Multisegment, n: Multisegment, p: int = DEFAULT_P, samples: int = 32,
                      seed: int = 0, line: Optional[CuspidalLine] = None) -> Iterator[tuple[Multisegment, int]]:
    """Recovered middle terms ``X`` of ``0 -> lambda(n) -> X -> lambda(m) -> 0`` with their orbit dimensions.

    Candidates: the split extension, every basis cocycle, then ``samples``
    random cocycles drawn with ``numpy.random.default_rng(seed)``.
    """
    lines = m.lines() or n.lines()
    line = line if line is not None else (lines[0] if lines else None)
    if line is None:
        yield Multisegment(), 0
        return
    A, B = build_rep(m, p, line.order), build_rep(n, p, line.order)
    ext = ext_space(A, B)
    rng = np.random.default_rng(seed)
    zero = tuple(np.zeros((B.dims[(i + 1) % A.n], A.dims[i]), dtype=np.int64) for i in range(A.n))
    cocycles = [zero] + list(ext.basis)
    for _ in range(samples if ext.dimension else 0):
        coeffs = rng.integers(0, p, size=ext.dimension)
        cocycles.append(tuple(sum(int(c) * b[i] for c, b in zip(coeffs, ext.basis)) % p
                              for i in range(A.n)))
    for c in cocycles:
        X = extension(A, B, c)
        yield recover_multisegment(X, line), orbit_dim(X)


def generic_ext_oracle(m: Multisegment, n: Multisegment, p: int = DEFAULT_P, samples: int = 32,
                       seed: int = 0, line: Optional[CuspidalLine] = None) -> Multisegment:
    """Extension of ``lambda(m)`` by ``lambda(n)`` (``n`` the submodule) of maximal orbit dimension."""
    best = None
    for x, d in sample_extensions(m, n, p, samples, seed, line):
        if best is None or d > best[1] or (d == best[1] and x < best[0]):
            best = (x, d)
    return best[0]
