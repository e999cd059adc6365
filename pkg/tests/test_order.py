import itertools

import pytest

from segcalc.core import EMPTY, Segment, cyclic_line, is_aperiodic, ms, support
from segcalc.enumerate import by_support, multisegments
from segcalc.order import (
    DifferentLines,
    PreconditionViolated,
    aperiodic_below,
    down_set,
    elementary_moves,
    elemopap_step,
    is_linked,
    is_unlinked,
    iter_moves,
    leq,
)


def seg(line, a, b):
    return Segment.from_ends(line, a, b)


class TestLinked:
    def test_adjacent(self, Linf):
        assert is_linked(seg(Linf, 0, 0), seg(Linf, 1, 1))

    def test_nested(self, Linf, L4):
        assert not is_linked(seg(Linf, 0, 0), seg(Linf, 0, 1))
        assert not is_linked(seg(L4, 0, 0), seg(L4, 0, 1))

    def test_wraps(self, L3):
        assert is_linked(seg(L3, 2, 2), seg(L3, 0, 0))

    def test_symmetric(self, L3):
        for a, b in itertools.product(range(3), repeat=2):
            for la, lb in itertools.product(range(1, 4), repeat=2):
                x, y = Segment(L3, a, la), Segment(L3, b, lb)
                assert is_linked(x, y) == is_linked(y, x)

    def test_different_lines(self):
        with pytest.raises(DifferentLines):
            is_linked(Segment(cyclic_line(3), 0, 1), Segment(cyclic_line(3, "M"), 1, 1))


class TestMoves:
    def test_merge_drops_empty(self, Linf):
        assert elementary_moves(ms(Linf, (0, 0), (1, 1))) == {ms(Linf, (0, 1))}

    def test_overlap(self, Linf):
        assert elementary_moves(ms(Linf, (0, 1), (1, 2))) == {ms(Linf, (0, 2), (1, 1))}

    def test_single_segment(self, L3):
        assert elementary_moves(ms(L3, (0, 4))) == set()

    def test_unlinked(self, Linf):
        assert is_unlinked(ms(Linf, (0, 0), (0, 0)))
        assert not is_unlinked(ms(Linf, (0, 0), (1, 1)))
        assert is_unlinked(EMPTY)

    def test_move_records(self, Linf):
        (move,) = list(iter_moves(ms(Linf, (0, 1), (1, 2))))
        assert move.result == ms(Linf, (0, 2), (1, 1))
        assert {move.first, move.second} == {seg(Linf, 0, 1), seg(Linf, 1, 2)}

    @pytest.mark.parametrize("o", [2, 3, 4])
    def test_termination_measure(self, o):
        L = cyclic_line(o)
        for d in range(1, 6):
            for m in multisegments(L, d):
                for n in elementary_moves(m):
                    assert len(n) < len(m) or sum(s.length ** 2 for s in n) > sum(s.length ** 2 for s in m)
                    assert support(n) == support(m)


class TestLeq:
    def test_examples(self, Linf):
        assert leq(ms(Linf, (0, 1)), ms(Linf, (0, 0), (1, 1)))
        assert not leq(ms(Linf, (0, 0), (1, 1)), ms(Linf, (0, 1)))
        m = ms(Linf, (0, 2), (1, 1))
        assert leq(m, m)

    def test_support_mismatch(self, L3):
        assert not leq(ms(L3, (0, 0)), ms(L3, (1, 1)))

    @pytest.mark.parametrize("o", [2, 3])
    def test_partial_order(self, o):
        """Reflexive, antisymmetric and transitive on every support class up to degree 6."""
        L = cyclic_line(o)
        cache = {}
        for d in range(1, 7):
            for group in by_support(multisegments(L, d)).values():
                below = {m: down_set(m, cache) for m in group}
                for m in group:
                    assert m in below[m]
                    for n in below[m]:
                        assert n == m or m not in below[n]
                        assert below[n] <= below[m]


class TestAperiodicBelow:
    def test_three_merges(self, L3):
        got = aperiodic_below(ms(L3, (0, 0), (1, 1), (2, 2)))
        assert got == {ms(L3, (0, 1), (2, 2)), ms(L3, (1, 2), (0, 0)), ms(L3, (2, 3), (1, 1))}

    def test_aperiodic_input(self, L3):
        m = ms(L3, (0, 1), (0, 0))
        assert aperiodic_below(m) == {m}

    def test_empty(self):
        assert aperiodic_below(EMPTY) == {EMPTY}

    def test_full_set(self, L2):
        m = ms(L2, (0, 0), (1, 1), (0, 0), (1, 1))
        everything = aperiodic_below(m, maximal_only=False)
        maxima = aperiodic_below(m)
        assert maxima <= everything
        assert all(is_aperiodic(x) and leq(x, m) for x in everything)
        assert all(any(leq(x, y) for y in maxima) for x in everything)


class TestElemopap:
    def test_pair_order_two(self, L2):
        assert elemopap_step(EMPTY, ms(L2, (0, 0), (1, 1)), ms(L2, (0, 1))) == ms(L2, (0, 1))

    def test_three_moves(self, L3):
        n = ms(L3, (0, 1), (2, 2))
        got = elemopap_step(EMPTY, ms(L3, (0, 0), (1, 1), (2, 2)), n)
        assert got == n

    def test_preconditions(self, L3):
        with pytest.raises(PreconditionViolated):
            elemopap_step(EMPTY, ms(L3, (0, 0), (1, 1), (2, 2)), ms(L3, (0, 1), (0, 0)))
        with pytest.raises(PreconditionViolated):
            elemopap_step(EMPTY, ms(L3, (0, 1)), ms(L3, (0, 1)))

    def test_never_exhausts(self, L2):
        """Every admissible triple in a small range has a witness."""
        aper = [m for d in range(0, 4) for m in (multisegments(L2, d) if d else [EMPTY]) if is_aperiodic(m)]
        periodic = [m for d in range(2, 5) for m in multisegments(L2, d) if not is_aperiodic(m)]
        checked = 0
        for m1 in aper:
            for m2 in periodic:
                for n in aperiodic_below(m1 + m2, maximal_only=False):
                    assert elemopap_step(m1, m2, n) is not None
                    checked += 1
        assert checked > 100
