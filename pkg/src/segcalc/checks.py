"""Property suites shared by the test suite and ``segcalc check``.

Every suite returns a :class:`SuiteResult`: per-row case and failure counts
plus the first counterexample met.  Progress messages go through an optional
callback so the command line can stream them to stderr.
"""

from __future__ import annotations

import random
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .core import (
    Context,
    CuspidalLine,
    EMPTY,
    Multisegment,
    Segment,
    banal_split,
    cyclic_line,
    dual,
    is_aperiodic,
    make_context,
    shrink_left,
    shrink_right,
)
from .enumerate import by_support, multisegments, words
from .genext import left_add, m_gen, right_add, serre_class, star, word, word_dual, word_of
from .lfactor import l_multisegment, ratio_aperiodic, ratio_red
from .order import down_set, leq
from .polymod import PolyModEll, gcd_poly
from .quiver_oracle import (
    DEFAULT_P,
    build_rep,
    generic_ext_oracle,
    hom_leq,
    recover_multisegment,
    sample_extensions,
)

Progress = Callable[[str], None]


def _quiet(_msg: str) -> None:
    pass


@dataclass
class Row:
    label: str
    cases: int = 0
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class SuiteResult:
    name: str
    rows: list[Row] = field(default_factory=list)
    counterexample: Optional[str] = None
    elapsed: float = 0.0

    @property
    def cases(self) -> int:
        return sum(r.cases for r in self.rows)

    @property
    def failures(self) -> int:
        return sum(r.failures for r in self.rows)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def row(self, label: str) -> Row:
        r = Row(label)
        self.rows.append(r)
        return r

    def record(self, row: Row, ok: bool, witness: Callable[[], str]) -> None:
        row.cases += 1
        if not ok:
            row.failures += 1
            if self.counterexample is None:
                self.counterexample = f"{row.label}: {witness()}"

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "failures": self.failures,
            "counterexample": self.counterexample,
            "rows": [{"label": r.label, "cases": r.cases, "failures": r.failures} for r in self.rows],
        }


def _all_multisegments(line: CuspidalLine, max_deg: int, min_deg: int = 0) -> Iterable[Multisegment]:
    for d in range(min_deg, max_deg + 1):
        yield from (multisegments(line, d) if d else [EMPTY])


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.elapsed = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------
# Words and the generic-extension map
# ---------------------------------------------------------------------------


def _relation_rows(res: SuiteResult, line: CuspidalLine, max_len: int, relations: str) -> None:
    row = res.row(f"relations={relations} o={line.order} |w|<={max_len}")
    for k in range(1, max_len + 1):
        groups: dict[Multisegment, set] = defaultdict(set)
        for w in words(line, k):
            groups[m_gen(w)].add(tuple(x.i for x in w))
        for m, group in groups.items():
            rep = min(group)
            cls = serre_class(word(line, rep), relations)
            ok = cls == group
            res.record(row, ok, lambda: _relation_witness(line, rep, cls, group, m))


def _relation_witness(line, rep, cls, group, m) -> str:
    extra = sorted(cls - group)
    missing = sorted(group - cls)
    if extra:
        w = extra[0]
        return f"{_s(rep)} ~ {_s(w)} but m_gen differs ({m} vs {m_gen(word(line, w))})"
    return f"{_s(rep)} and {_s(missing[0])} both give {m} but are not related"


def _s(t) -> str:
    return "".join(str(i) for i in t)


@_timed
def serre_suite(orders=(2, 3), image_len: int = 6, relation_len: int = 5,
                relations: str = "cyclic", progress: Progress = _quiet) -> SuiteResult:
    """Image of ``m_gen`` and completeness of the rewrite relations.

    For every order: the set of ``m_gen(w)`` over words of length ``k`` equals
    the aperiodic multisegments of degree ``k``, and two words of length at
    most ``relation_len`` are rewrite-equivalent exactly when their
    multisegments agree.  On order 2 the verbatim reading of the relation,
    which adds nothing, is shown to be incomplete.
    """
    res = SuiteResult("serre")
    for o in orders:
        line = cyclic_line(o)
        row = res.row(f"image o={o} |w|<={image_len}")
        for k in range(image_len + 1):
            progress(f"serre: image o={o} |w|={k}")
            image = {m_gen(w) for w in words(line, k)}
            aperiodic = {m for m in (multisegments(line, k) if k else [EMPTY]) if is_aperiodic(m)}
            res.record(row, image == aperiodic,
                       lambda: f"|w|={k}: {len(image ^ aperiodic)} multisegments differ, e.g. "
                               f"{min(image ^ aperiodic)}")
        progress(f"serre: relations o={o}")
        _relation_rows(res, line, relation_len, relations)
        if o == 2:
            literal = SuiteResult("literal")
            _relation_rows(literal, line, relation_len, "literal")
            row = res.row(f"verbatim order-2 relation rejected |w|<={relation_len}")
            res.record(row, not literal.passed,
                       lambda: "the verbatim relation set is already complete")
    return res


@_timed
def order_oracle_suite(orders=(2, 3), max_deg: int = 6, p: int = DEFAULT_P,
                       progress: Progress = _quiet) -> SuiteResult:
    """``leq`` agrees with the Hom-dimension order on same-support pairs."""
    res = SuiteResult("order-oracle")
    for o in orders:
        line = cyclic_line(o)
        oc: dict = {}
        hc: dict = {}
        for d in range(1, max_deg + 1):
            row = res.row(f"o={o} deg={d}")
            progress(f"order-oracle: o={o} deg={d}")
            for group in by_support(multisegments(line, d)).values():
                for m in group:
                    for n in group:
                        a = leq(n, m, oc)
                        b = hom_leq(n, m, p=p, line=line, cache=hc)
                        res.record(row, a == b, lambda: f"{n} <= {m}: combinatorial {a}, hom {b}")
    return res


@_timed
def genext_oracle_suite(orders=(2, 3), max_deg: int = 5, p: int = DEFAULT_P, samples: int = 32,
                        seed: int = 0, progress: Progress = _quiet) -> SuiteResult:
    """Simple products against sampled extensions over GF(p)."""
    res = SuiteResult("genext-oracle")
    for o in orders:
        line = cyclic_line(o)
        for d in range(max_deg + 1):
            row = res.row(f"o={o} deg={d}")
            progress(f"genext-oracle: o={o} deg={d}")
            for m in (multisegments(line, d) if d else [EMPTY]):
                for i in range(o):
                    s = Multisegment([Segment(line, i, 1)])
                    got = left_add(i, m, line)
                    want = generic_ext_oracle(s, m, p=p, samples=samples, seed=seed, line=line)
                    res.record(row, got == want, lambda: f"[{i}] * ({m}): recursion {got}, oracle {want}")
                    got = right_add(m, i, line)
                    want = generic_ext_oracle(m, s, p=p, samples=samples, seed=seed, line=line)
                    res.record(row, got == want, lambda: f"({m}) * [{i}]: recursion {got}, oracle {want}")
    return res


@_timed
def monotonicity_suite(orders=(2, 3), max_deg: int = 5, star_deg: int = 5, oracle_deg: int = 4,
                       p: int = DEFAULT_P, samples: int = 8, seed: int = 0,
                       progress: Progress = _quiet) -> SuiteResult:
    """Products respect the order, and shortening then re-adding a letter goes down.

    The oracle rows check, for all pairs of total degree at most
    ``oracle_deg``, that the extension of maximal orbit dimension lies below
    every sampled extension and equals ``star`` on aperiodic pairs.
    """
    res = SuiteResult("monotonicity")
    for o in orders:
        line = cyclic_line(o)
        cache: dict = {}
        row = res.row(f"simple products monotone o={o} deg<={max_deg}")
        progress(f"monotonicity: simple products o={o}")
        for big in _all_multisegments(line, max_deg - 1):
            for small in down_set(big, cache):
                for i in range(o):
                    ok = leq(left_add(i, small, line), left_add(i, big, line), cache) and \
                        leq(right_add(small, i, line), right_add(big, i, line), cache)
                    res.record(row, ok, lambda: f"{small} <= {big} but products with [{i}] are not ordered")

        row = res.row(f"star monotone o={o} deg(m)+deg(n)<={star_deg}")
        progress(f"monotonicity: star o={o}")
        aper = [m for m in _all_multisegments(line, star_deg) if is_aperiodic(m)]
        below = {m: [x for x in down_set(m, cache) if is_aperiodic(x)] for m in aper}
        for m2 in aper:
            for n2 in aper:
                if m2.total_length + n2.total_length > star_deg:
                    continue
                top = star(m2, n2)
                for m1 in below[m2]:
                    for n1 in below[n2]:
                        ok = leq(star(m1, n1), top, cache)
                        res.record(row, ok, lambda: f"{m1} <= {m2}, {n1} <= {n2}, but star not ordered")

        row = res.row(f"shorten and re-add stays below o={o} deg<={max_deg}")
        progress(f"monotonicity: shortened segments o={o}")
        for m in _all_multisegments(line, max_deg, 1):
            for seg in set(m):
                left = left_add(seg.a, m.replace(seg, shrink_left(seg)), line)
                right = right_add(m.replace(seg, shrink_right(seg)), seg.end, line)
                ok = leq(left, m, cache) and leq(right, m, cache)
                res.record(row, ok, lambda: f"{m} with {seg}: {left}, {right}")

        row = res.row(f"oracle: generic extension below sampled ones o={o} deg<={oracle_deg}")
        progress(f"monotonicity: oracle extensions o={o}")
        small = list(_all_multisegments(line, oracle_deg))
        for m in small:
            for n in small:
                if m.total_length + n.total_length > oracle_deg:
                    continue
                found = list(sample_extensions(m, n, p=p, samples=samples, seed=seed, line=line))
                best = generic_ext_oracle(m, n, p=p, samples=samples, seed=seed, line=line)
                ok = all(leq(best, x, cache) for x, _ in found)
                if ok and is_aperiodic(m) and is_aperiodic(n):
                    ok = best == star(m, n)
                res.record(row, ok, lambda: f"extensions of {m} by {n}: generic {best}, sampled "
                                            f"{sorted({str(x) for x, _ in found})}")
    return res


# ---------------------------------------------------------------------------
# Roundtrips
# ---------------------------------------------------------------------------


@_timed
def roundtrip_suite(max_deg: int = 6, quiver_orders=(1, 2, 3), word_orders=(2, 3),
                    dual_orders=(2, 3, 4), word_len: int = 6, p: int = DEFAULT_P,
                    progress: Progress = _quiet) -> SuiteResult:
    res = SuiteResult("roundtrips")
    for n in quiver_orders:
        line = cyclic_line(n, period=n if n == 1 else None)
        row = res.row(f"recover(build(m)) n={n} deg<={max_deg}")
        progress(f"roundtrips: quiver n={n}")
        for m in _all_multisegments(line, max_deg, 1):
            back = recover_multisegment(build_rep(m, p=p), line)
            res.record(row, back == m, lambda: f"{m} came back as {back}")
    for o in word_orders:
        line = cyclic_line(o)
        row = res.row(f"m_gen(word_of(m)) o={o} deg<={max_deg}")
        progress(f"roundtrips: words o={o}")
        for m in _all_multisegments(line, max_deg):
            if is_aperiodic(m):
                back = m_gen(word_of(m))
                res.record(row, back == m, lambda: f"{m} came back as {back}")
    for o in dual_orders:
        line = cyclic_line(o)
        row = res.row(f"duality o={o}")
        progress(f"roundtrips: duality o={o}")
        for m in _all_multisegments(line, max_deg):
            res.record(row, dual(dual(m)) == m, lambda: f"dual(dual({m})) = {dual(dual(m))}")
        for k in range(word_len + 1):
            for w in words(line, k):
                ok = word_dual(word_dual(w)) == w and m_gen(word_dual(w)) == dual(m_gen(w))
                res.record(row, ok, lambda: f"word {_s(x.i for x in w)}: m_gen(word_dual) = "
                                            f"{m_gen(word_dual(w))}, dual(m_gen) = {dual(m_gen(w))}")
    return res


# ---------------------------------------------------------------------------
# L-factors
# ---------------------------------------------------------------------------


def lfactor_contexts(ells=(3, 5, 7), max_f: int = 3, orders=(2, 3, 4)) -> list[Context]:
    """Contexts with a self-dual line ``A`` and a dual pair ``B``/``C`` of the given orders."""
    out = []
    for ell in ells:
        for q in range(2, ell):
            for f in range(1, max_f + 1):
                o = _order(pow(q, f, ell), ell)
                if o not in orders:
                    continue
                for twist in range(1, ell):
                    ctx = make_context("modular", ell, q)
                    ctx = ctx.with_line("A", f=f, twist=twist)
                    ctx = ctx.with_line("B", f=f, dual="C", twist=twist)
                    ctx = ctx.with_line("C", f=f, dual="B", twist=twist)
                    out.append(ctx)
    return out


def _order(x: int, ell: int) -> int:
    k, y = 1, x % ell
    while y != 1:
        y = y * x % ell
        k += 1
    return k


def random_multisegment(rng: random.Random, lines: list[CuspidalLine], max_segments: int = 4,
                        max_len: int = 4, span: int = 8) -> Multisegment:
    segs = []
    for _ in range(rng.randint(0, max_segments)):
        line = rng.choice(lines)
        segs.append(Segment(line, rng.randrange(-span, span), rng.randint(1, max_len)))
    return Multisegment(segs)


def _nonbanal_context(ctx: Context) -> tuple[Context, Optional[int]]:
    """Add a self-dual order-1 line ``Z`` (``f`` is the order of ``q``)."""
    f = _order(ctx.q, ctx.ell)
    return ctx.with_line("Z", f=f), f


@_timed
def lfactor_suite(cases: int = 10_000, seed: int = 0, gcd_ells=(3, 5, 7), gcd_max_f: int = 4,
                  progress: Progress = _quiet) -> SuiteResult:
    """Ratio identities on random pairs, banal reduction and coprimality of distinct factors."""
    res = SuiteResult("lfactor-ratios")
    rng = random.Random(seed)
    contexts = lfactor_contexts()
    r_ap = res.row(f"periodic-pair ratio ({cases} cases)")
    r_red = res.row(f"longest-segment ratio ({cases} cases)")
    r_sym = res.row(f"symmetry ({cases} cases)")
    progress(f"lfactor-ratios: {cases} random cases over {len(contexts)} contexts")
    for _ in range(cases):
        ctx = rng.choice(contexts)
        lines = list(ctx.lines.values())
        m = random_multisegment(rng, lines)
        n = random_multisegment(rng, lines, max_segments=5)
        d = Segment(rng.choice(lines), rng.randrange(-4, 4), rng.randint(1, 4))
        with_pair = m + d + Segment(d.line, d.a + 1, d.length)
        ok, why = _attempt(lambda: ratio_aperiodic(with_pair, n, d, ctx))
        res.record(r_ap, ok, lambda: f"m={with_pair} n={n} D={d} ell={ctx.ell} q={ctx.q}: {why}")
        if m:
            ok, why = _attempt(lambda: ratio_red(m, n, ctx))
            res.record(r_red, ok, lambda: f"m={m} n={n} ell={ctx.ell} q={ctx.q}: {why}")
        ok = l_multisegment(m, n, ctx) == l_multisegment(n, m, ctx)
        res.record(r_sym, ok, lambda: f"m={m} n={n} ell={ctx.ell} q={ctx.q}")

    row = res.row(f"banal reduction, mixed lines ({cases // 10} cases)")
    progress("lfactor-ratios: banal reduction")
    for _ in range(cases // 10):
        ctx, _f = _nonbanal_context(rng.choice(contexts))
        lines = list(ctx.lines.values())
        m = random_multisegment(rng, lines, max_segments=6)
        n = random_multisegment(rng, lines, max_segments=6)
        full = l_multisegment(m, n, ctx)
        reduced = l_multisegment(banal_split(m)[0], banal_split(n)[0], ctx)
        res.record(row, full == reduced, lambda: f"m={m} n={n}: {full} vs {reduced}")

    row = res.row(f"coprime factors, ell in {set(gcd_ells)}, f<={gcd_max_f}")
    progress("lfactor-ratios: coprimality")
    for ell in gcd_ells:
        for f in range(1, gcd_max_f + 1):
            for a in range(1, ell):
                for b in range(1, ell):
                    if pow(a, f, ell) == pow(b, f, ell):
                        continue
                    g = gcd_poly(PolyModEll.binomial(pow(a, f, ell), f, ell),
                                 PolyModEll.binomial(pow(b, f, ell), f, ell))
                    res.record(row, g == PolyModEll.one(ell),
                               lambda: f"gcd(1-({a}X)^{f}, 1-({b}X)^{f}) = {g} mod {ell}")
    return res


def _attempt(fn) -> tuple[bool, str]:
    try:
        fn()
    except Exception as exc:  # noqa: BLE001 - any failure is a counterexample
        return False, f"{type(exc).__name__}: {exc}"
    return True, ""


SUITES = {
    "serre": serre_suite,
    "order-oracle": order_oracle_suite,
    "genext-oracle": genext_oracle_suite,
    "lfactor-ratios": lfactor_suite,
    "roundtrips": roundtrip_suite,
    "monotonicity": monotonicity_suite,
}
