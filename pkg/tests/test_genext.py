from collections import defaultdict

import pytest
from hypothesis import given, strategies as st

from segcalc.core import (
    EMPTY,
    LineResolver,
    Multisegment,
    ParseError,
    Segment,
    cyclic_line,
    dual,
    is_aperiodic,
    make_context,
    ms,
)
from segcalc.enumerate import multisegments, words
from segcalc.genext import (
    LengthMismatch,
    ModularContext,
    NotAperiodic,
    arranged_form,
    format_word,
    is_arranged,
    left_add,
    m_gen,
    m_gen_left,
    parse_word,
    right_add,
    serre_class,
    serre_equivalent,
    serre_templates,
    star,
    word,
    word_dual,
    word_of,
    words_below,
)
from segcalc.order import leq


def residues(w):
    return "".join(str(x.i) for x in w)


class TestSimpleProducts:
    def test_left(self, L3, Linf):
        assert left_add(0, ms(Linf, (1, 1)), Linf) == ms(Linf, (0, 1))
        assert left_add(0, ms(L3, (2, 2)), L3) == ms(L3, (0, 0), (2, 2))
        assert left_add(2, ms(L3, (0, 0)), L3) == Multisegment([Segment(L3, 2, 2)])

    def test_right(self, L3, Linf):
        assert right_add(ms(Linf, (0, 0)), 1, Linf) == ms(Linf, (0, 1))
        assert right_add(ms(L3, (0, 0)), 0, L3) == ms(L3, (0, 0), (0, 0))
        assert right_add(EMPTY, 2, L3) == ms(L3, (2, 2))

    def test_longest_is_extended(self, L3):
        m = ms(L3, (1, 1), (1, 3))
        assert left_add(0, m, L3) == ms(L3, (1, 1), (0, 3))
        assert right_add(ms(L3, (2, 3), (0, 3)), 1, L3) == ms(L3, (2, 3), (0, 4))

    def test_other_lines_untouched(self, L3):
        M = cyclic_line(3, "M")
        m = ms(M, (1, 1))
        assert left_add(0, m, L3) == m + Segment(L3, 0, 1)


class TestMGen:
    @pytest.mark.parametrize("w, expected", [("01", [(0, 1)]), ("012", [(0, 2)]),
                                             ("010", [(0, 1), (0, 0)]), ("001", [(0, 1), (0, 0)]),
                                             ("", [])])
    def test_examples(self, L3, w, expected):
        assert m_gen(word(L3, w)) == ms(L3, *expected)

    @pytest.mark.parametrize("o", [2, 3, 4])
    def test_left_right_consistent(self, o):
        L = cyclic_line(o)
        for k in range(7):
            for w in words(L, k):
                assert m_gen(w) == m_gen_left(w)

    def test_multi_line_words(self, L3):
        M = cyclic_line(2, "M")
        w = word(L3, "01") + word(M, "1") + word(L3, "2")
        assert m_gen(w) == ms(L3, (0, 2)) + ms(M, (1, 1))

    @given(st.lists(st.integers(0, 10), max_size=9), st.sampled_from([2, 3, 4, 5]))
    def test_always_aperiodic(self, rs, o):
        assert is_aperiodic(m_gen(word(cyclic_line(o), rs)))


class TestWordOf:
    def test_examples(self, L3):
        assert residues(word_of(ms(L3, (0, 1)))) == "01"
        assert residues(word_of(ms(L3, (0, 0), (1, 1)))) == "10"

    def test_periodic_rejected(self, L3):
        with pytest.raises(NotAperiodic):
            word_of(ms(L3, (0, 0), (1, 1), (2, 2)))

    def test_infinite_line(self, Linf):
        m = ms(Linf, (0, 0), (1, 1), (2, 2), (-3, 5))
        assert m_gen(word_of(m)) == m

    def test_multi_line(self, L3):
        M = cyclic_line(2, "M")
        m = ms(L3, (0, 1), (2, 2)) + ms(M, (0, 2))
        assert m_gen(word_of(m)) == m


class TestStar:
    def test_examples(self, L3):
        a, b, c = ms(L3, (0, 0)), ms(L3, (1, 1)), ms(L3, (2, 2))
        assert star(a, b) == ms(L3, (0, 1))
        assert star(a, EMPTY) == a == star(EMPTY, a)
        assert star(star(a, b), c) == star(a, star(b, c)) == ms(L3, (0, 2))

    def test_needs_aperiodic(self, L2):
        with pytest.raises(NotAperiodic):
            star(ms(L2, (0, 0), (1, 1)), EMPTY)

    @pytest.mark.parametrize("o", [2, 3])
    def test_associative(self, o):
        L = cyclic_line(o)
        aper = [m for d in range(5) for m in (multisegments(L, d) if d else [EMPTY]) if is_aperiodic(m)]
        for a in aper:
            for b in aper:
                if a.total_length + b.total_length > 4:
                    continue
                ab = star(a, b)
                for c in aper:
                    if a.total_length + b.total_length + c.total_length <= 6:
                        assert star(ab, c) == star(a, star(b, c))


class TestSerre:
    def test_examples(self, L3, L4):
        assert serre_equivalent(word(L4, "02"), word(L4, "20"))
        assert serre_equivalent(word(L3, "010"), word(L3, "001"))
        assert not serre_equivalent(word(L3, "01"), word(L3, "10"))

    def test_length_mismatch(self, L3):
        with pytest.raises(LengthMismatch):
            serre_equivalent(word(L3, "01"), word(L3, "0"))

    def test_lines_commute(self, L3):
        M = cyclic_line(3, "M")
        assert serre_equivalent(word(L3, "0") + word(M, "1"), word(M, "1") + word(L3, "0"))
        assert not serre_equivalent(word(L3, "01"), word(L3, "0") + word(M, "1"))

    def test_order_two_relation(self, L2):
        assert serre_equivalent(word(L2, "0100"), word(L2, "0010"))
        assert not serre_equivalent(word(L2, "0100"), word(L2, "0010"), relations="literal")

    def test_templates(self, L2, L3, Linf):
        assert serre_templates(L2) == serre_templates(L2, "printed") == [((0, -1, 0, 0), (0, 0, -1, 0))]
        assert serre_templates(L2, "literal") == []
        assert len(serre_templates(L3)) == 3 and len(serre_templates(L3, "printed")) == 2
        assert len(serre_templates(Linf)) == 2

    @staticmethod
    def _agreement(o, max_len, relations):
        L = cyclic_line(o)
        for k in range(1, max_len + 1):
            groups = defaultdict(set)
            for w in words(L, k):
                groups[m_gen(w)].add(tuple(x.i for x in w))
            for group in groups.values():
                if serre_class(word(L, min(group)), relations) != group:
                    return False
        return True

    @pytest.mark.parametrize("o, max_len", [(2, 6), (3, 6), (4, 6), (5, 6)])
    def test_complete_up_to_six(self, o, max_len):
        assert self._agreement(o, max_len, "cyclic")

    def test_cycle_relation_needed(self, L3):
        """Without the full-cycle relation two words with equal multisegments stay apart."""
        a, b = word(L3, "00210"), word(L3, "02100")
        assert m_gen(a) == m_gen(b)
        assert not serre_equivalent(a, b, relations="printed")
        assert serre_equivalent(a, b)

    @pytest.mark.parametrize("o, a, b", [(2, "0001100", "0011000"), (3, "0002110", "0021100"),
                                         (4, "2100322", "2210032")])
    def test_incomplete_at_seven(self, o, a, b):
        L = cyclic_line(o)
        assert m_gen(word(L, a)) == m_gen(word(L, b))
        assert not serre_equivalent(word(L, a), word(L, b))

    @pytest.mark.parametrize("relations", ["cyclic", "printed", "literal"])
    @pytest.mark.parametrize("o", [2, 3, 4])
    def test_sound(self, o, relations):
        L = cyclic_line(o)
        for k in range(1, 7):
            for w in words(L, k):
                target = m_gen(w)
                assert all(m_gen(word(L, v)) == target for v in serre_class(w, relations))


class TestWordsBelow:
    def test_examples(self, L3):
        assert {residues(w) for w in words_below(ms(L3, (0, 1)))} == {"01"}
        assert {residues(w) for w in words_below(ms(L3, (0, 0), (1, 1)))} == {"10", "01"}
        assert list(words_below(EMPTY)) == [()]

    @pytest.mark.parametrize("o", [2, 3])
    def test_matches_brute_force(self, o):
        L = cyclic_line(o)
        cache = {}
        for d in range(1, 6):
            gens = {w: m_gen(w) for w in words(L, d)}
            for m in multisegments(L, d):
                got = list(words_below(m))
                assert len(got) == len(set(got))
                assert set(got) == {w for w, g in gens.items() if leq(g, m, cache)}


class TestWordDual:
    def test_example(self, L4):
        w = word(L4, "01")
        assert residues(word_dual(w)) == "30"
        assert m_gen(word_dual(w)) == dual(m_gen(w)) == Multisegment([Segment(L4, 3, 2)])

    def test_empty(self):
        assert word_dual(()) == ()

    @given(st.lists(st.integers(0, 9), max_size=8), st.sampled_from([2, 3, 4, None]))
    def test_involution_and_compatibility(self, rs, o):
        w = word(cyclic_line(o), rs)
        assert word_dual(word_dual(w)) == w
        assert m_gen(word_dual(w)) == dual(m_gen(w))


class TestArranged:
    def test_examples(self, Linf):
        assert arranged_form(ms(Linf, (0, 0), (1, 1))) == [Segment(Linf, 1, 1), Segment(Linf, 0, 1)]
        assert arranged_form(ms(Linf, (0, 1), (1, 2))) == [Segment.from_ends(Linf, 1, 2), Segment(Linf, 0, 2)]

    def test_modular_rejected(self, L3):
        with pytest.raises(ModularContext):
            arranged_form(ms(L3, (0, 0)))
        with pytest.raises(ModularContext):
            arranged_form(EMPTY, make_context("modular", 5, 3))

    @given(st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 5)), max_size=8))
    def test_predicate(self, segs):
        L = cyclic_line(None)
        assert is_arranged(arranged_form(Multisegment(Segment(L, a, n) for a, n in segs)))


class TestWordText:
    def test_parse_and_format(self, L3):
        w = parse_word("L:0, L:4,L:-1", LineResolver(auto=True, default_order=3))
        assert format_word(w) == "L:0,L:1,L:2"

    @pytest.mark.parametrize("text, column", [("L0", 1), ("L:0,L:x", 7), ("L:0,:1", 5)])
    def test_errors(self, text, column):
        with pytest.raises(ParseError) as err:
            parse_word(text, LineResolver(auto=True, default_order=3))
        assert err.value.column == column
